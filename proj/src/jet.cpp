#include "cosym/jet.hpp"

#include <cmath>
#include <string>

namespace cosym {

Jet::Jet(int nvars, int order, double v) : v_(v), n_(nvars), order_(order) {
    if (nvars < 0 || order < 0 || order > 2)
        throw ParameterError("jet order must be 0, 1, or 2");
    if (order_ >= 1) g_.assign(static_cast<std::size_t>(n_), 0.0);
    if (order_ == 2) h_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
}

Jet Jet::constant(double v, int nvars, int order) { return Jet(nvars, order, v); }

Jet Jet::variable(double v, int index, int nvars, int order) {
    Jet j(nvars, order, v);
    if (index < 0 || index >= nvars) throw BoundsError("jet variable index out of range");
    if (order >= 1) j.g_[static_cast<std::size_t>(index)] = 1.0;
    return j;
}

Jet Jet::constant_like(const Jet& proto, double v) { return Jet(proto.n_, proto.order_, v); }

double Jet::d(int j) const {
    if (order_ < 1) throw ParameterError("jet carries no gradient");
    if (j < 0 || j >= n_) throw BoundsError("gradient index out of range");
    return g_[static_cast<std::size_t>(j)];
}

double Jet::d2(int j, int i) const {
    if (order_ < 2) throw ParameterError("jet carries no Hessian");
    if (j < 0 || j >= n_ || i < 0 || i >= n_) throw BoundsError("Hessian index out of range");
    return h_[static_cast<std::size_t>(j) * n_ + i];
}

bool Jet::finite() const {
    if (!std::isfinite(v_)) return false;
    for (double x : g_)
        if (!std::isfinite(x)) return false;
    for (double x : h_)
        if (!std::isfinite(x)) return false;
    return true;
}

static void check_vars(const Jet& a, const Jet& b, int na, int nb) {
    (void)a;
    (void)b;
    if (na != nb) throw ShapeError("jet variable-count mismatch");
}

Jet operator+(const Jet& a, const Jet& b) {
    check_vars(a, b, a.n_, b.n_);
    const int ord = std::min(a.order_, b.order_);
    Jet r(a.n_, ord, a.v_ + b.v_);
    if (ord >= 1)
        for (int j = 0; j < r.n_; ++j) r.g_[j] = a.g_[j] + b.g_[j];
    if (ord == 2)
        for (std::size_t k = 0; k < r.h_.size(); ++k) r.h_[k] = a.h_[k] + b.h_[k];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    check_vars(a, b, a.n_, b.n_);
    const int ord = std::min(a.order_, b.order_);
    Jet r(a.n_, ord, a.v_ - b.v_);
    if (ord >= 1)
        for (int j = 0; j < r.n_; ++j) r.g_[j] = a.g_[j] - b.g_[j];
    if (ord == 2)
        for (std::size_t k = 0; k < r.h_.size(); ++k) r.h_[k] = a.h_[k] - b.h_[k];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    check_vars(a, b, a.n_, b.n_);
    const int ord = std::min(a.order_, b.order_);
    const int n = a.n_;
    Jet r(n, ord, a.v_ * b.v_);
    if (ord >= 1)
        for (int j = 0; j < n; ++j) r.g_[j] = a.v_ * b.g_[j] + b.v_ * a.g_[j];
    if (ord == 2) {
        for (int j = 0; j < n; ++j)
            for (int i = j; i < n; ++i) {
                const double v = a.v_ * b.h_[static_cast<std::size_t>(j) * n + i] +
                                 b.v_ * a.h_[static_cast<std::size_t>(j) * n + i] +
                                 a.g_[j] * b.g_[i] + a.g_[i] * b.g_[j];
                r.h_[static_cast<std::size_t>(j) * n + i] = v;
                r.h_[static_cast<std::size_t>(i) * n + j] = v;
            }
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    check_vars(a, b, a.n_, b.n_);
    if (b.v_ == 0.0) throw NumericError("jet division by zero");
    const int ord = std::min(a.order_, b.order_);
    const int n = a.n_;
    Jet r(n, ord, a.v_ / b.v_);
    if (ord >= 1)
        for (int j = 0; j < n; ++j) r.g_[j] = (a.g_[j] - r.v_ * b.g_[j]) / b.v_;
    if (ord == 2) {
        // a = r*b  =>  a_ji = r_ji b + r_j b_i + r_i b_j + r b_ji
        for (int j = 0; j < n; ++j)
            for (int i = j; i < n; ++i) {
                const double v = (a.h_[static_cast<std::size_t>(j) * n + i] -
                                  r.g_[j] * b.g_[i] - r.g_[i] * b.g_[j] -
                                  r.v_ * b.h_[static_cast<std::size_t>(j) * n + i]) /
                                 b.v_;
                r.h_[static_cast<std::size_t>(j) * n + i] = v;
                r.h_[static_cast<std::size_t>(i) * n + j] = v;
            }
    }
    return r;
}

Jet operator+(const Jet& a, double b) {
    Jet r = a;
    r.v_ += b;
    return r;
}
Jet operator+(double a, const Jet& b) { return b + a; }

Jet operator-(const Jet& a, double b) {
    Jet r = a;
    r.v_ -= b;
    return r;
}
Jet operator-(double a, const Jet& b) { return -(b - a); }

Jet operator*(const Jet& a, double b) {
    Jet r = a;
    r.v_ *= b;
    for (double& x : r.g_) x *= b;
    for (double& x : r.h_) x *= b;
    return r;
}
Jet operator*(double a, const Jet& b) { return b * a; }

Jet operator/(const Jet& a, double b) {
    if (b == 0.0) throw NumericError("jet division by zero");
    return a * (1.0 / b);
}
Jet operator/(double a, const Jet& b) { return Jet::constant_like(b, a) / b; }

Jet operator-(const Jet& a) { return a * -1.0; }

Jet Jet::chain(const Jet& u, double f, double df, double ddf) {
    const int n = u.n_;
    Jet r(n, u.order_, f);
    if (u.order_ >= 1)
        for (int j = 0; j < n; ++j) r.g_[j] = df * u.g_[j];
    if (u.order_ == 2) {
        for (int j = 0; j < n; ++j)
            for (int i = j; i < n; ++i) {
                const double v =
                    df * u.h_[static_cast<std::size_t>(j) * n + i] + ddf * u.g_[j] * u.g_[i];
                r.h_[static_cast<std::size_t>(j) * n + i] = v;
                r.h_[static_cast<std::size_t>(i) * n + j] = v;
            }
    }
    return r;
}

Jet exp(const Jet& u) {
    const double e = std::exp(u.v_);
    return Jet::chain(u, e, e, e);
}

Jet sin(const Jet& u) {
    const double s = std::sin(u.v_), c = std::cos(u.v_);
    return Jet::chain(u, s, c, -s);
}

Jet cos(const Jet& u) {
    const double s = std::sin(u.v_), c = std::cos(u.v_);
    return Jet::chain(u, c, -s, -c);
}

Jet pow(const Jet& u, int k) {
    if (k == 0) return Jet::constant_like(u, 1.0);
    if (k < 0) {
        if (u.value() == 0.0) throw NumericError("jet negative power of zero");
        return 1.0 / pow(u, -k);
    }
    const double f = std::pow(u.value(), k);
    const double df = k * std::pow(u.value(), k - 1);
    const double ddf = k > 1 ? static_cast<double>(k) * (k - 1) * std::pow(u.value(), k - 2) : 0.0;
    return Jet::chain(u, f, df, ddf);
}

Jet derivative(const Jet& f, int j) {
    if (f.order_ < 2) throw ParameterError("derivative extraction needs an order-2 jet");
    if (j < 0 || j >= f.n_) throw BoundsError("derivative index out of range");
    Jet r(f.n_, 1, f.g_[static_cast<std::size_t>(j)]);
    for (int i = 0; i < f.n_; ++i) r.g_[i] = f.h_[static_cast<std::size_t>(j) * f.n_ + i];
    return r;
}

} // namespace cosym
