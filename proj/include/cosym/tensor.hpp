#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cosym/errors.hpp"

namespace cosym {

enum class Variance : unsigned char { Upper, Lower };
using Signature = std::vector<Variance>;

enum class Parity { Plus, Minus };

// Dense tensor over one chart, row-major, all slots sharing one dimension.
// Rank 0 is a scalar (one component). Desk scale: rank <= 6, dim <= 32.
class Tensor {
public:
    Tensor() = default;
    Tensor(int dim, Signature sig);
    Tensor(int dim, Signature sig, std::vector<double> data);

    // Kronecker delta, slots (upper, lower).
    static Tensor delta(int dim);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(sig_.size()); }
    const Signature& signature() const { return sig_; }
    std::size_t size() const { return data_.size(); }
    const std::vector<double>& values() const { return data_; }
    std::vector<double>& values() { return data_; }

    double at(std::span<const int> idx) const { return data_[offset(idx)]; }
    double& at(std::span<const int> idx) { return data_[offset(idx)]; }

    template <class... I>
    double operator()(I... is) const {
        const int idx[] = {static_cast<int>(is)...};
        return data_[offset(std::span<const int>(idx, sizeof...(is)))];
    }
    template <class... I>
    double& operator()(I... is) {
        const int idx[] = {static_cast<int>(is)...};
        return data_[offset(std::span<const int>(idx, sizeof...(is)))];
    }
    double operator()() const { return data_[0]; }
    double& operator()() { return data_[0]; }

    double max_abs() const;
    bool finite() const;

private:
    std::size_t offset(std::span<const int> idx) const;

    int dim_ = 0;
    Signature sig_;
    std::vector<double> data_;
};

// Metric with its inverse, validated symmetric positive definite on construction.
class MetricPair {
public:
    explicit MetricPair(Tensor g);

    const Tensor& lower() const { return g_; }   // g_ij
    const Tensor& upper() const { return inv_; } // g^ij
    int dim() const { return g_.dim(); }

private:
    Tensor g_;
    Tensor inv_;
};

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
Tensor outer(const Tensor& a, const Tensor& b);

// Sum over one upper and one lower slot. Result keeps remaining slots in order.
Tensor contract(const Tensor& a, int slot_a, int slot_b);

Tensor raise_slot(const Tensor& a, int slot, const MetricPair& m);
Tensor lower_slot(const Tensor& a, int slot, const MetricPair& m);

Tensor swap_slots(const Tensor& a, int s1, int s2);

// max |a[..i..j..] -+ a[..j..i..]| over all components; raw, not normalized.
double symmetry_defect(const Tensor& a, int s1, int s2, Parity parity);

inline Tensor operator+(const Tensor& a, const Tensor& b) { return add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return sub(a, b); }
inline Tensor operator*(const Tensor& a, double s) { return scale(a, s); }
inline Tensor operator*(double s, const Tensor& a) { return scale(a, s); }
inline Tensor operator-(const Tensor& a) { return scale(a, -1.0); }

namespace detail {
// Odometer step over a multi-index; false once it wraps back to all zeros.
bool next_index(std::span<int> idx, int dim);
std::size_t pow_size(int dim, int rank);
} // namespace detail

} // namespace cosym
