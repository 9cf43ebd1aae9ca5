#include "cosym/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cosym/linalg.hpp"

namespace cosym {

namespace detail {

std::size_t pow_size(int dim, int rank) {
    std::size_t s = 1;
    for (int i = 0; i < rank; ++i) s *= static_cast<std::size_t>(dim);
    return s;
}

bool next_index(std::span<int> idx, int dim) {
    for (int s = static_cast<int>(idx.size()) - 1; s >= 0; --s) {
        if (++idx[s] < dim) return true;
        idx[s] = 0;
    }
    return false;
}

} // namespace detail

static void check_shape(int dim, const Signature& sig) {
    if (sig.size() > 6) throw ShapeError("tensor rank above desk-scale cap of 6");
    if (!sig.empty() && (dim < 1 || dim > 32))
        throw ShapeError("tensor dimension must be in [1, 32], got " + std::to_string(dim));
}

Tensor::Tensor(int dim, Signature sig) : dim_(dim), sig_(std::move(sig)) {
    check_shape(dim_, sig_);
    data_.assign(detail::pow_size(dim_, rank()), 0.0);
}

Tensor::Tensor(int dim, Signature sig, std::vector<double> data)
    : dim_(dim), sig_(std::move(sig)), data_(std::move(data)) {
    check_shape(dim_, sig_);
    if (data_.size() != detail::pow_size(dim_, rank()))
        throw ShapeError("component count does not match dim^rank");
}

Tensor Tensor::delta(int dim) {
    Tensor d(dim, {Variance::Upper, Variance::Lower});
    for (int i = 0; i < dim; ++i) d(i, i) = 1.0;
    return d;
}

std::size_t Tensor::offset(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank())
        throw BoundsError("index count " + std::to_string(idx.size()) + " for rank " +
                          std::to_string(rank()));
    std::size_t flat = 0;
    for (int i : idx) {
        if (i < 0 || i >= dim_) throw BoundsError("index " + std::to_string(i) + " out of range");
        flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return flat;
}

double Tensor::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

bool Tensor::finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

static void check_same_shape(const Tensor& a, const Tensor& b) {
    if (a.dim() != b.dim() || a.rank() != b.rank())
        throw ShapeError("tensor shape mismatch");
    if (a.signature() != b.signature())
        throw VarianceError("tensor variance mismatch");
}

Tensor add(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b);
    Tensor r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.values()[i] += b.values()[i];
    return r;
}

Tensor sub(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b);
    Tensor r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.values()[i] -= b.values()[i];
    return r;
}

Tensor scale(const Tensor& a, double s) {
    Tensor r = a;
    for (double& v : r.values()) v *= s;
    return r;
}

Tensor outer(const Tensor& a, const Tensor& b) {
    if (a.rank() > 0 && b.rank() > 0 && a.dim() != b.dim())
        throw ShapeError("outer product dimension mismatch");
    const int dim = a.rank() > 0 ? a.dim() : b.dim();
    Signature sig = a.signature();
    sig.insert(sig.end(), b.signature().begin(), b.signature().end());
    Tensor r(dim, std::move(sig));
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r.values()[k++] = a.values()[i] * b.values()[j];
    return r;
}

static void check_slot(const Tensor& a, int s) {
    if (s < 0 || s >= a.rank()) throw BoundsError("slot " + std::to_string(s) + " out of range");
}

Tensor contract(const Tensor& a, int slot_a, int slot_b) {
    check_slot(a, slot_a);
    check_slot(a, slot_b);
    if (slot_a == slot_b) throw BoundsError("contraction needs two distinct slots");
    if (a.signature()[slot_a] == a.signature()[slot_b])
        throw VarianceError("contraction needs one upper and one lower slot");
    const int n = a.dim();
    const int lo = std::min(slot_a, slot_b), hi = std::max(slot_a, slot_b);
    Signature sig;
    for (int s = 0; s < a.rank(); ++s)
        if (s != lo && s != hi) sig.push_back(a.signature()[s]);
    Tensor r(n, std::move(sig));

    std::vector<int> out(static_cast<std::size_t>(r.rank()), 0);
    std::vector<int> in(static_cast<std::size_t>(a.rank()), 0);
    do {
        int k = 0;
        for (int s = 0; s < a.rank(); ++s)
            if (s != lo && s != hi) in[s] = out[k++];
        double sum = 0.0;
        for (int t = 0; t < n; ++t) {
            in[lo] = t;
            in[hi] = t;
            sum += a.at(in);
        }
        r.at(out) = sum;
    } while (detail::next_index(out, n));
    return r;
}

static Tensor metric_slot_product(const Tensor& a, int slot, const Tensor& m2, Variance to) {
    check_slot(a, slot);
    const int n = a.dim();
    Signature sig = a.signature();
    sig[slot] = to;
    Tensor r(n, std::move(sig));
    std::vector<int> out(static_cast<std::size_t>(a.rank()), 0);
    std::vector<int> in = out;
    do {
        in = out;
        double sum = 0.0;
        for (int t = 0; t < n; ++t) {
            in[slot] = t;
            sum += m2(out[slot], t) * a.at(in);
        }
        r.at(out) = sum;
    } while (detail::next_index(out, n));
    return r;
}

Tensor raise_slot(const Tensor& a, int slot, const MetricPair& m) {
    check_slot(a, slot);
    if (a.signature()[slot] != Variance::Lower)
        throw VarianceError("raise needs a lower slot");
    if (a.dim() != m.dim()) throw ShapeError("metric dimension mismatch");
    return metric_slot_product(a, slot, m.upper(), Variance::Upper);
}

Tensor lower_slot(const Tensor& a, int slot, const MetricPair& m) {
    check_slot(a, slot);
    if (a.signature()[slot] != Variance::Upper)
        throw VarianceError("lower needs an upper slot");
    if (a.dim() != m.dim()) throw ShapeError("metric dimension mismatch");
    return metric_slot_product(a, slot, m.lower(), Variance::Lower);
}

Tensor swap_slots(const Tensor& a, int s1, int s2) {
    check_slot(a, s1);
    check_slot(a, s2);
    Signature sig = a.signature();
    std::swap(sig[s1], sig[s2]);
    Tensor r(a.dim(), std::move(sig));
    std::vector<int> out(static_cast<std::size_t>(a.rank()), 0);
    std::vector<int> in = out;
    do {
        in = out;
        std::swap(in[s1], in[s2]);
        r.at(out) = a.at(in);
    } while (detail::next_index(out, a.dim()));
    return r;
}

double symmetry_defect(const Tensor& a, int s1, int s2, Parity parity) {
    check_slot(a, s1);
    check_slot(a, s2);
    if (s1 == s2) throw BoundsError("symmetry defect needs two distinct slots");
    if (a.signature()[s1] != a.signature()[s2])
        throw VarianceError("symmetry defect needs slots of equal variance");
    const double sign = parity == Parity::Plus ? 1.0 : -1.0;
    double worst = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(a.rank()), 0);
    std::vector<int> swp = idx;
    do {
        swp = idx;
        std::swap(swp[s1], swp[s2]);
        worst = std::max(worst, std::fabs(a.at(idx) - sign * a.at(swp)));
    } while (detail::next_index(idx, a.dim()));
    return worst;
}

namespace detail {

bool cholesky_spd(std::vector<double> a, int n) {
    for (int c = 0; c < n; ++c) {
        double d = a[static_cast<std::size_t>(c) * n + c];
        for (int k = 0; k < c; ++k) {
            const double l = a[static_cast<std::size_t>(c) * n + k];
            d -= l * l;
        }
        if (!(d > 0.0)) return false;
        const double lcc = std::sqrt(d);
        a[static_cast<std::size_t>(c) * n + c] = lcc;
        for (int r = c + 1; r < n; ++r) {
            double v = a[static_cast<std::size_t>(r) * n + c];
            for (int k = 0; k < c; ++k)
                v -= a[static_cast<std::size_t>(r) * n + k] * a[static_cast<std::size_t>(c) * n + k];
            a[static_cast<std::size_t>(r) * n + c] = v / lcc;
        }
    }
    return true;
}

} // namespace detail

MetricPair::MetricPair(Tensor g) : g_(std::move(g)), inv_() {
    if (g_.rank() != 2) throw ShapeError("metric must have rank 2");
    if (g_.signature() != Signature{Variance::Lower, Variance::Lower})
        throw VarianceError("metric slots must both be lower");
    const int n = g_.dim();
    const double scale = std::max(1.0, g_.max_abs());
    if (symmetry_defect(g_, 0, 1, Parity::Plus) > 1e-12 * scale)
        throw InvalidInputError("metric is not symmetric");
    if (!detail::cholesky_spd(g_.values(), n))
        throw InvalidInputError("metric is not positive definite");
    std::vector<double> inv = detail::gauss_jordan_inverse(g_.values(), n);
    inv_ = Tensor(n, {Variance::Upper, Variance::Upper}, std::move(inv));
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int t = 0; t < n; ++t) s += g_(i, t) * inv_(t, j);
            worst = std::max(worst, std::fabs(s - (i == j ? 1.0 : 0.0)));
        }
    if (worst > 1e-10) throw SingularMatrixError("metric inverse check failed");
}

} // namespace cosym
