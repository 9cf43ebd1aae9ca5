#include "doctest.h"

#include <cmath>
#include <span>
#include <vector>

#include "cosym/field.hpp"
#include "cosym/sample.hpp"

using namespace cosym;

namespace {
constexpr auto U = Variance::Upper;
constexpr auto L = Variance::Lower;
} // namespace

namespace {

// Rank-1 covector field w_i = (x0^2 * x1, sin(x0)) on a 2-chart.
ChartField test_covector() {
    return ChartField(2, {L}, [](std::span<const Jet> x) {
        return std::vector<Jet>{pow(x[0], 2) * x[1], sin(x[0])};
    });
}

} // namespace

TEST_CASE("field evaluation and partials match hand derivatives") {
    ChartField w = test_covector();
    ChartPoint x{0.5, -1.2};

    Tensor v = w.eval(x);
    CHECK(v(0) == doctest::Approx(0.25 * -1.2).epsilon(1e-14));
    CHECK(v(1) == doctest::Approx(std::sin(0.5)).epsilon(1e-14));

    // partial prepends the derivative slot: dw(k, i) = d_k w_i.
    Tensor dw = w.partial(x);
    CHECK(dw.rank() == 2);
    CHECK(dw(0, 0) == doctest::Approx(2.0 * 0.5 * -1.2).epsilon(1e-13));
    CHECK(dw(1, 0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(dw(0, 1) == doctest::Approx(std::cos(0.5)).epsilon(1e-13));
    CHECK(dw(1, 1) == 0.0);

    Tensor d2w = w.partial2(x);
    CHECK(d2w.rank() == 3);
    CHECK(d2w(0, 0, 0) == doctest::Approx(2.0 * -1.2).epsilon(1e-13));
    CHECK(d2w(0, 1, 0) == doctest::Approx(2.0 * 0.5).epsilon(1e-13));
    CHECK(d2w(1, 0, 0) == d2w(0, 1, 0));
    CHECK(d2w(0, 0, 1) == doctest::Approx(-std::sin(0.5)).epsilon(1e-13));
    CHECK(d2w(1, 1, 1) == 0.0);
}

TEST_CASE("derived rules drop one derivative order") {
    ChartField w = test_covector();
    // Field whose components are first derivatives of w: order drops to 1,
    // so eval and partial work but partial2 must refuse.
    ChartField dw_field(2, {L, L}, [w](std::span<const Jet> x) {
        std::vector<Jet> base = w.rule()(x);
        std::vector<Jet> out;
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i) out.push_back(derivative(base[i], k));
        return out;
    });
    ChartPoint x{0.3, 0.9};
    Tensor a = dw_field.eval(x);
    Tensor b = test_covector().partial(x);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i) CHECK(a(k, i) == b(k, i));
    CHECK(dw_field.partial(x).rank() == 3);
    CHECK_THROWS_AS(dw_field.partial2(x), ParameterError);
}

TEST_CASE("constant fields have vanishing derivatives") {
    Tensor c(3, {U, L});
    c(0, 1) = 2.5;
    c(2, 2) = -1.0;
    ChartField f = constant_field(3, c);
    ChartPoint x{0.1, 0.2, 0.3};
    Tensor v = f.eval(x);
    CHECK(v(0, 1) == 2.5);
    CHECK(v(2, 2) == -1.0);
    CHECK(f.partial(x).max_abs() == 0.0);
    CHECK(f.partial2(x).max_abs() == 0.0);
}

TEST_CASE("field input validation") {
    ChartField w = test_covector();
    CHECK_THROWS_AS(w.eval(ChartPoint{1.0}), ShapeError);
    CHECK_THROWS_AS(w.eval(ChartPoint{1.0, std::nan("")}), DomainError);
    CHECK_THROWS_AS(ChartField(2, {L}, ChartField::Rule{}), ParameterError);
    ChartField bad(2, {L}, [](std::span<const Jet> x) {
        return std::vector<Jet>{x[0]};
    });
    CHECK_THROWS_AS(bad.eval(ChartPoint{0.0, 0.0}), ShapeError);
}

TEST_CASE("sampler is deterministic and respects the box") {
    SampleSpec spec;
    spec.box = {{-1.0, 2.0}, {0.0, 0.5}};
    spec.count = 40;
    spec.seed = 99;
    std::vector<ChartPoint> a = sample(spec);
    std::vector<ChartPoint> b = sample(spec);
    REQUIRE(a.size() == 40);
    CHECK(a == b); // same seed, bitwise identical points
    for (const ChartPoint& p : a) {
        REQUIRE(p.size() == 2);
        CHECK(p[0] >= -1.0);
        CHECK(p[0] <= 2.0);
        CHECK(p[1] >= 0.0);
        CHECK(p[1] <= 0.5);
    }
    spec.seed = 100;
    CHECK(sample(spec) != a);
}

TEST_CASE("sampler mean converges on the box center") {
    SampleSpec spec;
    spec.box = {{0.0, 1.0}};
    spec.count = 10000;
    spec.seed = 7;
    double mean = 0.0;
    for (const ChartPoint& p : sample(spec)) mean += p[0];
    mean /= spec.count;
    CHECK(std::abs(mean - 0.5) < 0.02);
}

TEST_CASE("sampler rejection and parameter errors") {
    SampleSpec spec;
    spec.box = {{0.0, 1.0}};
    spec.count = 3;
    spec.seed = 1;
    // Excluding everything must trip the rejection cap, not hang.
    CHECK_THROWS_AS(sample(spec, [](const ChartPoint&) { return true; }), SamplingError);

    // Excluding half the box still works.
    std::vector<ChartPoint> pts =
        sample(spec, [](const ChartPoint& p) { return p[0] < 0.5; });
    for (const ChartPoint& p : pts) CHECK(p[0] >= 0.5);

    spec.count = 0;
    CHECK_THROWS_AS(sample(spec), ParameterError);
    spec.count = 1;
    spec.box = {{2.0, 1.0}};
    CHECK_THROWS_AS(sample(spec), ParameterError);
}
