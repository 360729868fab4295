#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/exponents.hpp"

using namespace tricomi;
using namespace tricomi::exponents;

TEST_CASE("critical exponent matches closed forms and a bisection oracle") {
    CHECK(critical_exponent(2) == doctest::Approx((3.0 + std::sqrt(33.0)) / 4.0).epsilon(1e-15));
    CHECK(critical_exponent(2) == doctest::Approx(2.186140662).epsilon(1e-9));
    // frozen from the bisection oracle on the quadratic residual
    const double n3 = oracle::bisect([](double p) { return critical_residual(3, p); }, 1.0, 3.0);
    CHECK(std::abs(critical_exponent(3) - n3) < 1e-13);
    CHECK(critical_exponent(3) == doctest::Approx((9.0 + std::sqrt(249.0)) / 14.0).epsilon(1e-15));
    for (int n = 2; n <= 20; ++n) {
        const ExponentReport r = exponent_report(n);
        CHECK(std::abs(r.residual) <= 1e-12);
        CHECK(r.p_crit > 1.0);
        CHECK(r.p_crit < r.p_conf);
        if (n > 2) {
            CHECK(critical_exponent(n) < critical_exponent(n - 1));
            CHECK(conformal_exponent(n) < conformal_exponent(n - 1));
        }
    }
    CHECK_THROWS_AS(critical_exponent(1), DomainError);
}

TEST_CASE("conformal exponent") {
    CHECK(conformal_exponent(2) == 3.0);
    CHECK(conformal_exponent(3) == doctest::Approx(15.0 / 7.0).epsilon(1e-15));
    CHECK(conformal_exponent(4) == doctest::Approx(1.8).epsilon(1e-15));
    CHECK_THROWS_AS(conformal_exponent(0), DomainError);
}

TEST_CASE("regime classification") {
    CHECK(classify_regime(2, 1.5) == Regime::subcritical);
    CHECK(classify_regime(2, (3.0 + std::sqrt(33.0)) / 4.0) == Regime::critical);
    CHECK(classify_regime(2, 2.5) == Regime::supercritical_subconformal);
    CHECK(classify_regime(2, 3.0) == Regime::conformal_or_above);
    CHECK(classify_regime(2, 4.0) == Regime::conformal_or_above);
    CHECK_THROWS_AS(classify_regime(2, 1.0), DomainError);
    // regimes partition (1, inf): ordered and monotone along a sweep
    for (int n = 2; n <= 6; ++n) {
        int prev = 0;
        for (double p = 1.001; p < 6.0; p += 0.001) {
            const int cur = static_cast<int>(classify_regime(n, p));
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("global existence indices") {
    auto a = global_existence_indices(2.2);
    CHECK(a.case_tag == IndexCase::I);
    CHECK(a.q == doctest::Approx(3.3).epsilon(1e-14));
    CHECK(a.r == doctest::Approx(2.2).epsilon(1e-14));
    auto c = global_existence_indices(3.0);
    CHECK(c.case_tag == IndexCase::III);
    CHECK(c.q == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(c.r == doctest::Approx(4.0).epsilon(1e-14));
    auto b = global_existence_indices(2.5);
    CHECK(b.case_tag == IndexCase::II);
    CHECK(b.q == doctest::Approx(8.5 * 1.5 / 3.5).epsilon(1e-14));
    CHECK_THROWS_AS(global_existence_indices(2.1), DomainError);
    CHECK_THROWS_AS(global_existence_indices(3.0001), DomainError);

    // the printed case ranges overlap and jointly cover (p_crit(2), 3]
    CHECK(case_two_lower() < case_one_upper());
    CHECK(case_three_lower() < case_two_upper());
    const double pc = critical_exponent(2);
    for (int i = 1; i <= 4000; ++i) {
        const double p = pc + (3.0 - pc) * i / 4000.0;
        const auto s = global_existence_indices(p);
        CHECK(std::abs(1.0 / s.q + 3.0 / s.r - 2.0 / (p - 1.0)) <= 1e-12);
        CHECK(std::abs(1.0 / s.q + 3.0 / s.r - 1.5 * (1.0 - s.s)) <= 1e-12);
        CHECK(1.0 / s.q + 1.5 / s.r <= 1.0 + 1e-12);
        CHECK(s.q >= 2.0);
        CHECK(admissible_check(s.q, s.r));
    }
}

TEST_CASE("admissibility and regularity") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(admissible_check(inf, 2.0));
    CHECK_FALSE(admissible_check(2.0, 2.0));
    CHECK(admissible_check(4.0, 4.0));
    CHECK_THROWS_AS(admissible_check(1.5, 4.0), DomainError);
    CHECK(strichartz_regularity(inf, 5.0) == doctest::Approx(1.0 - 2.0 / 5.0));
    CHECK(strichartz_regularity(6.0, 2.0) == doctest::Approx(-2.0 / 18.0));
    CHECK(strichartz_regularity(7.5, 2.5) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
}
