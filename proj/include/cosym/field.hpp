#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cosym/jet.hpp"
#include "cosym/tensor.hpp"

namespace cosym {

using ChartPoint = std::vector<double>;

// Tensor field on one chart, defined by a rule mapping coordinate jets to
// component jets (row-major, dim^rank of them). Coordinates are always seeded
// at order 2; rules built from derivatives of other fields simply return
// lower-order jets, and partial()/partial2() demand the order they need.
class ChartField {
public:
    using Rule = std::function<std::vector<Jet>(std::span<const Jet>)>;

    ChartField() = default;
    ChartField(int dim, Signature sig, Rule rule);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(sig_.size()); }
    const Signature& signature() const { return sig_; }
    const Rule& rule() const { return rule_; }

    std::vector<Jet> jets(const ChartPoint& x) const;

    Tensor eval(const ChartPoint& x) const;
    // One extra lower slot in front: result[k][...] = d_k T[...].
    Tensor partial(const ChartPoint& x) const;
    // Two extra lower slots in front: result[k][j][...] = d_k d_j T[...].
    Tensor partial2(const ChartPoint& x) const;

private:
    int dim_ = 0;
    Signature sig_;
    Rule rule_;
};

ChartField constant_field(int dim, Tensor value);

} // namespace cosym
