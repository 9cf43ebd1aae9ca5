#include "doctest.h"

#include <cmath>

#include "cosym/sample.hpp"
#include "cosym/tensor.hpp"

using namespace cosym;

namespace {

constexpr auto U = Variance::Upper;
constexpr auto L = Variance::Lower;

Tensor random_tensor(int dim, Signature sig, SplitMix64& rng) {
    Tensor t(dim, std::move(sig));
    for (double& v : t.values()) v = 2.0 * rng.next_unit() - 1.0;
    return t;
}

} // namespace

TEST_CASE("row-major layout and delta") {
    Tensor t(3, {U, L});
    t(1, 2) = 5.0;
    CHECK(t.values()[1 * 3 + 2] == 5.0);
    CHECK(t(0, 0) == 0.0);

    const Tensor d = Tensor::delta(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(d(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("contract matches a naive loop") {
    SplitMix64 rng(11);
    const Tensor a = random_tensor(4, {U, L, L}, rng);
    const Tensor c = contract(a, 0, 2);
    REQUIRE(c.rank() == 1);
    for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int t = 0; t < 4; ++t) s += a(t, j, t);
        CHECK(c(j) == doctest::Approx(s).epsilon(1e-15));
    }
}

TEST_CASE("contract refuses two slots of the same variance") {
    Tensor a(3, {L, L});
    CHECK_THROWS_AS(contract(a, 0, 1), VarianceError);
}

TEST_CASE("outer product shapes and values") {
    SplitMix64 rng(3);
    const Tensor a = random_tensor(3, {U}, rng);
    const Tensor b = random_tensor(3, {L, L}, rng);
    const Tensor o = outer(a, b);
    REQUIRE(o.rank() == 3);
    CHECK(o.signature() == Signature{U, L, L});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) CHECK(o(i, j, k) == a(i) * b(j, k));
}

TEST_CASE("raise and lower are inverse") {
    SplitMix64 rng(17);
    Tensor g(3, {L, L});
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const double v = (i == j) ? 2.0 + rng.next_unit() : 0.3 * (rng.next_unit() - 0.5);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    MetricPair mp(g);
    const Tensor a = random_tensor(3, {L, L}, rng);
    const Tensor back = lower_slot(raise_slot(a, 1, mp), 1, mp);
    CHECK(sub(a, back).max_abs() < 1e-12);
}

TEST_CASE("swap_slots and symmetry_defect") {
    SplitMix64 rng(5);
    const Tensor a = random_tensor(3, {L, L}, rng);
    const Tensor at = swap_slots(a, 0, 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(at(i, j) == a(j, i));

    Tensor sym = add(a, at);
    CHECK(symmetry_defect(sym, 0, 1, Parity::Plus) == 0.0);
    Tensor skew = sub(a, at);
    CHECK(symmetry_defect(skew, 0, 1, Parity::Minus) == 0.0);
    CHECK(symmetry_defect(a, 0, 1, Parity::Plus) > 0.0);
}

TEST_CASE("shape errors") {
    Tensor a(3, {L, L});
    Tensor b(4, {L, L});
    CHECK_THROWS_AS(add(a, b), ShapeError);
    CHECK_THROWS_AS((Tensor{3, {L}, {1.0, 2.0}}), ShapeError);
    const int idx[] = {3, 0};
    CHECK_THROWS_AS(a.at(idx), BoundsError);
}

TEST_CASE("metric validation") {
    Tensor notsym(2, {L, L});
    notsym(0, 0) = 1.0;
    notsym(1, 1) = 1.0;
    notsym(0, 1) = 0.5;
    notsym(1, 0) = -0.5;
    CHECK_THROWS_AS(MetricPair{notsym}, InvalidInputError);

    Tensor indef(2, {L, L});
    indef(0, 0) = 1.0;
    indef(1, 1) = -1.0;
    CHECK_THROWS_AS(MetricPair{indef}, InvalidInputError);

    Tensor wrong(2, {U, L});
    CHECK_THROWS_AS(MetricPair{wrong}, VarianceError);

    Tensor good(2, {L, L});
    good(0, 0) = 4.0;
    good(1, 1) = 9.0;
    good(0, 1) = good(1, 0) = 1.0;
    MetricPair mp(good);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (int t = 0; t < 2; ++t) s += mp.lower()(i, t) * mp.upper()(t, j);
            CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
}
