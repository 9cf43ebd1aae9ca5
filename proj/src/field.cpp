#include "cosym/field.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace cosym {

ChartField::ChartField(int dim, Signature sig, Rule rule)
    : dim_(dim), sig_(std::move(sig)), rule_(std::move(rule)) {
    if (dim_ < 1 || dim_ > 32) throw ShapeError("chart dimension must be in [1, 32]");
    if (!rule_) throw ParameterError("chart field needs a rule");
}

std::vector<Jet> ChartField::jets(const ChartPoint& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw ShapeError("point has " + std::to_string(x.size()) + " coordinates, chart needs " +
                         std::to_string(dim_));
    for (double c : x)
        if (!std::isfinite(c)) throw DomainError("point has a non-finite coordinate");

    std::vector<Jet> coords;
    coords.reserve(x.size());
    for (int i = 0; i < dim_; ++i) coords.push_back(Jet::variable(x[i], i, dim_, 2));

    std::vector<Jet> out = rule_(coords);
    if (out.size() != detail::pow_size(dim_, rank()))
        throw ShapeError("field rule returned wrong component count");
    for (const Jet& j : out) {
        if (j.nvars() != dim_) throw ShapeError("field rule returned jet with wrong variable count");
        if (!j.finite()) throw DomainError("field evaluation produced a non-finite value");
    }
    return out;
}

Tensor ChartField::eval(const ChartPoint& x) const {
    std::vector<Jet> js = jets(x);
    std::vector<double> vals;
    vals.reserve(js.size());
    for (const Jet& j : js) vals.push_back(j.value());
    return Tensor(dim_, sig_, std::move(vals));
}

Tensor ChartField::partial(const ChartPoint& x) const {
    std::vector<Jet> js = jets(x);
    Signature out_sig;
    out_sig.push_back(Variance::Lower);
    out_sig.insert(out_sig.end(), sig_.begin(), sig_.end());
    Tensor r(dim_, std::move(out_sig));
    const std::size_t stride = js.size();
    for (int k = 0; k < dim_; ++k)
        for (std::size_t c = 0; c < stride; ++c) {
            if (js[c].order() < 1)
                throw ParameterError("field does not carry first derivatives");
            r.values()[static_cast<std::size_t>(k) * stride + c] = js[c].d(k);
        }
    return r;
}

Tensor ChartField::partial2(const ChartPoint& x) const {
    std::vector<Jet> js = jets(x);
    Signature out_sig;
    out_sig.push_back(Variance::Lower);
    out_sig.push_back(Variance::Lower);
    out_sig.insert(out_sig.end(), sig_.begin(), sig_.end());
    Tensor r(dim_, std::move(out_sig));
    const std::size_t stride = js.size();
    for (int k = 0; k < dim_; ++k)
        for (int j = 0; j < dim_; ++j)
            for (std::size_t c = 0; c < stride; ++c) {
                if (js[c].order() < 2)
                    throw ParameterError("field does not carry second derivatives");
                r.values()[(static_cast<std::size_t>(k) * dim_ + j) * stride + c] =
                    js[c].d2(k, j);
            }
    return r;
}

ChartField constant_field(int dim, Tensor value) {
    Signature sig = value.signature(); // before the move below; argument order is unspecified
    return ChartField(dim, std::move(sig),
                      [v = std::move(value)](std::span<const Jet> x) {
                          std::vector<Jet> out;
                          out.reserve(v.size());
                          for (double c : v.values()) out.push_back(Jet::constant_like(x[0], c));
                          return out;
                      });
}

} // namespace cosym
