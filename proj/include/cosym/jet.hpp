#pragma once

#include <vector>

#include "cosym/errors.hpp"

namespace cosym {

// Truncated Taylor scalar: value, gradient, and (at order 2) Hessian with
// respect to the chart coordinates. Binary operations propagate at the
// minimum order of the operands. Hessians stay exactly symmetric: only the
// upper triangle is computed, then mirrored.
class Jet {
public:
    Jet() = default;

    static Jet constant(double v, int nvars, int order);
    static Jet variable(double v, int index, int nvars, int order);
    static Jet constant_like(const Jet& proto, double v);

    double value() const { return v_; }
    double d(int j) const;
    double d2(int j, int i) const;
    int nvars() const { return n_; }
    int order() const { return order_; }
    bool finite() const;

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator+(const Jet& a, double b);
    friend Jet operator+(double a, const Jet& b);
    friend Jet operator-(const Jet& a, double b);
    friend Jet operator-(double a, const Jet& b);
    friend Jet operator*(const Jet& a, double b);
    friend Jet operator*(double a, const Jet& b);
    friend Jet operator/(const Jet& a, double b);
    friend Jet operator/(double a, const Jet& b);
    friend Jet operator-(const Jet& a);

    friend Jet exp(const Jet& u);
    friend Jet sin(const Jet& u);
    friend Jet cos(const Jet& u);
    friend Jet pow(const Jet& u, int k);

    // Order-1 jet of the partial derivative d_j f; needs an order-2 input.
    friend Jet derivative(const Jet& f, int j);

private:
    Jet(int nvars, int order, double v);
    static Jet chain(const Jet& u, double f, double df, double ddf);

    double v_ = 0.0;
    int n_ = 0;
    int order_ = 0;
    std::vector<double> g_; // size n_ when order_ >= 1
    std::vector<double> h_; // size n_*n_ when order_ == 2

    friend double value_of(const Jet& j);
};

inline double value_of(const Jet& j) { return j.v_; }

} // namespace cosym
