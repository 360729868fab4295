#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tricomi/blowup.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/exponents.hpp"
#include "tricomi/specfun.hpp"

using namespace tricomi;
using namespace tricomi::blowup;
using propagator::GridSpec;
constexpr double kPi = std::numbers::pi;

namespace {
double r2(const std::array<double, 3>& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }

Field bump(const GridSpec& g, double amp) {
    return Field::sample(g, [&](const std::array<double, 3>& x) {
        const double s = r2(x);
        return s < 1.0 ? amp * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
    });
}

// Blowup time of G'' = K1 (t+M)^-q G^p with G as the independent variable:
// s = ln G, dt/ds = G/v, dv/ds = K1 (t+M)^-q G^(p+1)/v, v = G'.
double riccati_tstar_oracle(const RiccatiConfig& c, double G0, double V0) {
    struct S {
        double t, v;
    };
    auto f = [&](double s, const S& y) {
        const double G = std::exp(s);
        return S{G / y.v, c.K1 * std::pow(y.t + c.M, -c.q) * std::pow(G, c.p + 1.0) / y.v};
    };
    const double s0 = std::log(G0), s1 = std::log(1e40);
    const int n = 400000;
    const double h = (s1 - s0) / n;
    S y{c.T0, V0};
    for (int i = 0; i < n; ++i) {
        const double s = s0 + i * h;
        const S k1 = f(s, y);
        const S k2 = f(s + h / 2, {y.t + h / 2 * k1.t, y.v + h / 2 * k1.v});
        const S k3 = f(s + h / 2, {y.t + h / 2 * k2.t, y.v + h / 2 * k2.v});
        const S k4 = f(s + h, {y.t + h * k3.t, y.v + h * k3.v});
        y.t += h / 6 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t);
        y.v += h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
    }
    return y.t;
}
}  // namespace

TEST_CASE("spherical mean") {
    const GridSpec g{2, 4.0, 256};
    const std::vector<double> radii{0.0, 0.5, 1.0, 1.7, 2.5, 3.5};
    const auto sq = spherical_mean(Field::sample(g, r2), radii);
    for (std::size_t i = 0; i < radii.size(); ++i) CHECK(std::abs(sq.values[i] - radii[i] * radii[i]) < 1e-3);
    const auto odd = spherical_mean(Field::sample(g, [](const std::array<double, 3>& x) { return x[0]; }), radii);
    for (double v : odd.values) CHECK(std::abs(v) < 1e-12);
    const auto rad = spherical_mean(Field::sample(g, [](const std::array<double, 3>& x) { return std::exp(-r2(x)); }), radii);
    for (std::size_t i = 0; i < radii.size(); ++i) CHECK(std::abs(rad.values[i] - std::exp(-radii[i] * radii[i])) < 1e-3);
    CHECK_THROWS_AS(spherical_mean(Field::zeros(g), std::vector<double>{4.5}), RangeError);

    const GridSpec g3{3, 4.0, 64};
    const auto rad3 = spherical_mean(Field::sample(g3, [](const std::array<double, 3>& x) { return std::exp(-r2(x)); }),
                                     std::vector<double>{0.0, 0.8, 1.5, 2.5});
    for (std::size_t i = 0; i < rad3.radii.size(); ++i)
        CHECK(std::abs(rad3.values[i] - std::exp(-rad3.radii[i] * rad3.radii[i])) < 3e-3);
    const auto odd3 = spherical_mean(Field::sample(g3, [](const std::array<double, 3>& x) { return x[2] * x[0]; }),
                                     std::vector<double>{0.8, 1.5, 2.5});
    for (double v : odd3.values) CHECK(std::abs(v) < 1e-12);
    CHECK_THROWS_AS(spherical_mean(Field::zeros(GridSpec{1, 4.0, 64})), DomainError);
}

TEST_CASE("jensen check") {
    const GridSpec g{2, 4.0, 256};
    const auto radial = jensen_check(Field::sample(g, [](const std::array<double, 3>& x) { return std::exp(-r2(x)); }), 2.5);
    CHECK(radial.pass);
    double scale = 0.0;
    for (double v : radial.rhs) scale = std::max(scale, v);
    for (std::size_t i = 0; i < radial.rhs.size(); ++i) CHECK(std::abs(radial.rhs[i] - radial.lhs[i]) <= 1e-6 * scale);

    const auto mode = jensen_check(Field::sample(g, [](const std::array<double, 3>& x) {
                                       const double th = std::atan2(x[1], x[0]);
                                       return r2(x) * std::exp(-r2(x)) * std::cos(3 * th);
                                   }), 2.0);
    CHECK(mode.pass);
    for (std::size_t i = 1; i < mode.radii.size(); ++i)
        if (mode.radii[i] > 0.3 && mode.radii[i] < 2.5) CHECK(mode.rhs[i] - mode.lhs[i] > 1e-6);

    const auto zero = jensen_check(Field::zeros(g), 2.0);
    CHECK(zero.pass);
    CHECK(zero.max_violation == 0.0);

    const GridSpec gs{2, 4.0, 64};
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 6> c;
        for (double& v : c) v = nd(rng);
        const Field u = Field::sample(gs, [&](const std::array<double, 3>& x) {
            return std::exp(-r2(x)) * (c[0] + c[1] * x[0] + c[2] * x[1] + c[3] * x[0] * x[1] + c[4] * std::sin(2 * x[0]) + c[5] * std::cos(3 * x[1]));
        });
        CHECK(jensen_check(u, 1.5 + 0.02 * trial).pass);
    }
}

TEST_CASE("radon transform of radial profiles") {
    RadialProfile ball{3, {0.0, 1.0, 1.0, 2.0}, {1.0, 1.0, 0.0, 0.0}};
    for (int i = 0; i < 100; ++i) {
        const double rho = -1.0 + 2.0 * (i + 0.5) / 100;
        CHECK(std::abs(radon_radial(ball, 3, rho) - kPi * (1 - rho * rho)) < 1e-6);
    }
    CHECK(radon_radial(ball, 3, 1.5) == 0.0);
    CHECK(radon_radial(ball, 3, 7.0) == 0.0);

    RadialProfile gauss{2, {}, {}};
    for (int i = 0; i <= 8000; ++i) {
        gauss.radii.push_back(i * 1e-3);
        gauss.values.push_back(std::exp(-gauss.radii.back() * gauss.radii.back()));
    }
    for (double rho : {0.0, 0.3, -0.9, 1.7, 2.6}) {
        // direct line integral in the plane: trapezoid in y along x = rho
        double direct = 0.0;
        const double hy = 1e-3;
        for (int j = -8000; j <= 8000; ++j) direct += hy * gauss(std::hypot(rho, j * hy));
        CHECK(std::abs(radon_radial(gauss, 2, rho) - direct) < 1e-5);
        CHECK(std::abs(radon_radial(gauss, 2, rho) - std::sqrt(kPi) * std::exp(-rho * rho)) < 1e-5);
        CHECK(std::abs(radon_radial(gauss, 3, rho) - kPi * std::exp(-rho * rho)) < 1e-5);
    }
    CHECK(sphere_area(0) == doctest::Approx(2.0));
    CHECK(sphere_area(1) == doctest::Approx(2 * kPi));
    CHECK(sphere_area(2) == doctest::Approx(4 * kPi));
}

TEST_CASE("G functional and Hölder ratio") {
    const GridSpec g{2, 4.0, 64};
    const auto z = G_functional(Field::zeros(g), 2.0, 1.0);
    CHECK(z.G == 0.0);
    CHECK(std::isinf(z.holder_ratio));

    const Field disk = Field::sample(g, [](const std::array<double, 3>& x) { return r2(x) <= 1.5 * 1.5 ? 0.7 : 0.0; });
    CHECK(std::abs(G_functional_measure(disk, 2.3, support_measure(disk)).holder_ratio - 1.0) < 1e-6);
    CHECK(G_functional(disk, 2.3, 1.5 + 2 * g.h()).holder_ratio >= 1.0);

    const Field b = bump(g, 2.0);
    for (double p : {1.3, 2.0, 3.5}) CHECK(G_functional(b, p, 1.0).holder_ratio >= 1.0 - 1e-6);
    CHECK_THROWS_AS(G_functional(Field::sample(g, [](const std::array<double, 3>&) { return 1.0; }), 2.0, 1.0), SupportViolation);
}

TEST_CASE("riccati comparison ODE") {
    RiccatiConfig c;  // (p, a, q) = (2, 1, 3), K1 = M = T0 = 1
    c.K0 = 5.0;
    c.horizon = 100.0;
    const double G0 = c.K0 * (c.T0 + c.M), V0 = c.K0;
    const auto r = riccati_integrate(c, G0, V0);
    REQUIRE(r.blew_up);
    CHECK(r.t_star > c.T0);
    CHECK(r.t_star == doctest::Approx(riccati_tstar_oracle(c, G0, V0)).epsilon(1e-7));

    double prev = 1e300;
    for (double K0 : {3.0, 5.0, 8.0, 15.0, 40.0}) {
        c.K0 = K0;
        const auto rr = riccati_integrate(c, K0 * 2.0, K0);
        CHECK(rr.blew_up);
        CHECK(rr.t_star <= prev);
        prev = rr.t_star;
    }
    prev = 1e300;
    c.K0 = 5.0;
    for (double K1 : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        c.K1 = K1;
        const auto rr = riccati_integrate(c, 10.0, 5.0);
        CHECK(rr.t_star <= prev);
        prev = rr.t_star;
    }
    c.K1 = 1.0;
    CHECK_THROWS_AS(riccati_integrate(c, 1.0, 1.0), DomainError);
    auto bad = c;
    bad.q = 3.5;
    CHECK_THROWS_AS(riccati_integrate(bad, 10.0, 5.0), DomainError);
    c.K0 = 1e-3;
    const auto slow = riccati_integrate(c, 2e-3, 1e-3);
    CHECK(!slow.blew_up);
    CHECK(slow.t_star == c.horizon);
}

TEST_CASE("c0 estimate") {
    const auto rep = c0_estimate(2, 1, 3, 1, 1, 1, 100.0);
    CHECK(rep.c0 > 0.0);
    CHECK((rep.hi - rep.lo) / rep.hi <= 1e-3);
    RiccatiConfig c;
    c.horizon = 100.0;
    c.K0 = rep.hi;
    CHECK(riccati_integrate(c, 2 * rep.hi, rep.hi).blew_up);
    c.K0 = rep.lo;
    CHECK(!riccati_integrate(c, 2 * rep.lo, rep.lo).blew_up);
    const auto strong = c0_estimate(2, 1, 3, 10, 1, 1, 100.0);
    CHECK(strong.c0 <= rep.c0 * (1 + 1e-3));
    CHECK_THROWS_AS(c0_estimate(1.0, 1, 2, 1, 1, 1, 100.0), DomainError);
}

TEST_CASE("T operator") {
    const double t = 2.0, M = 1.0, R = specfun::phase(t) + M;
    const int m = 1000;
    std::vector<double> zero(m + 1, 0.0), one(m + 1, 3.25), sq(m + 1);
    for (int i = 0; i <= m; ++i) sq[i] = std::pow(R * i / m, 2);
    const auto z = T_operator(zero, 2, t, M, 2.0, 3);
    for (double v : z.Tf) CHECK(v == 0.0);
    const auto c3 = T_operator(one, 3, t, M, 2.0, 3);
    for (double v : c3.Tf) CHECK(std::abs(v - 3.25) <= 1e-10);
    for (double rho : {0.0, 0.7, 1.9, R - 0.3}) {
        const double D = R - rho;
        const double exact = (2 * rho * rho * std::sqrt(D) + 4.0 / 3.0 * rho * std::pow(D, 1.5) + 0.4 * std::pow(D, 2.5)) / std::sqrt(D);
        CHECK(std::abs(apply_T_at(sq, 2, t, M, rho) - exact) < 1e-4);
    }
    CHECK_THROWS_AS(apply_T_at(sq, 2, t, M, R + 0.1), RangeError);
    CHECK_THROWS_AS(apply_T_at(sq, 2, t, M, -0.1), RangeError);

    const auto coarse = T_operator(std::vector<double>(257, 1.0), 2, t, M, 2.0, 50, 3);
    const auto fine = T_operator(std::vector<double>(513, 1.0), 2, t, M, 2.0, 50, 3);
    CHECK(std::isfinite(coarse.measured_norm));
    CHECK(coarse.measured_norm > 0.0);
    CHECK(std::max(coarse.measured_norm, fine.measured_norm) <= 1.5 * std::min(coarse.measured_norm, fine.measured_norm));
}

TEST_CASE("chain witness") {
    const double s2 = chain_sigma(2, exponents::critical_exponent(2));
    CHECK(std::abs(s2 - (3 - std::sqrt(33.0)) / 4) < 1e-9);
    CHECK(s2 > -1.0);
    CHECK(chain_sigma(3, exponents::critical_exponent(3)) > -0.75);

    nonlinear::SimulationConfig cfg;
    cfg.p = 2.0;
    cfg.grid = GridSpec{2, 8.0, 128};
    cfg.dt = 0.02;
    cfg.T = 4.0;
    cfg.store_fields = true;
    const Field f = bump(cfg.grid, 0.1);
    const auto tr = nonlinear::evolve(f, f, cfg);
    REQUIRE(tr.completed);
    const auto rep = chain_witness(tr, cfg.p, 2, 1.0);
    CHECK(!rep.points.empty());
    CHECK(rep.min_r6 > 0.0);
    CHECK(rep.min_r12 > 0.0);
    CHECK(rep.min_r18 > 0.0);
    CHECK(rep.min_r20 > 0.0);
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        CHECK(G_functional(tr.fields[i], cfg.p, 1.0 + specfun::phase(tr.times[i]), false).holder_ratio >= 1.0 - 1e-6);

    auto short_cfg = cfg;
    short_cfg.T = 1.0;
    CHECK_THROWS_AS(chain_witness(nonlinear::evolve(f, f, short_cfg), cfg.p, 2, 1.0), DomainError);
}
