// Acceptance suite: one PASS/FAIL line per criterion. `acceptance` runs all of them,
// `acceptance --only N` runs one (that is how ctest registers them).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"
#include "tricomi/blowup.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/exponents.hpp"
#include "tricomi/nonlinear.hpp"
#include "tricomi/propagator.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/strichartz.hpp"

using namespace tricomi;
using propagator::Field;
using propagator::GridSpec;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double budget_s;  // runtime bound, 0 when none is imposed
    std::function<Outcome()> run;
};

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

double fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

Field bump(const GridSpec& g, double amp, double radius = 1.0) {
    return Field::sample(g, [&](const std::array<double, 3>& x) {
        const double s = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (radius * radius);
        return s < 1.0 ? amp * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
    });
}

// ---- 1 ----
Outcome exponent_algebra() {
    const double pc = exponents::critical_exponent(2), pf = exponents::conformal_exponent(2);
    const double e_crit = std::abs(pc - (3.0 + std::sqrt(33.0)) / 4.0), e_conf = std::abs(pf - 3.0);
    double res = 0.0;
    for (int n = 2; n <= 20; ++n) res = std::max(res, std::abs(exponents::critical_residual(n, exponents::critical_exponent(n))));
    // consecutive case ranges must touch or overlap, and together span (p_crit, 3]
    const double tol = 1e-9;
    bool cover = exponents::case_two_lower() <= exponents::case_one_upper() + tol &&
                 exponents::case_three_lower() <= exponents::case_two_upper() + tol;
    int sampled = 0;
    for (int i = 1; i <= 2000; ++i) {
        const double p = pc + (3.0 - pc) * i / 2000.0;
        try {
            (void)exponents::global_existence_indices(p);
            ++sampled;
        } catch (const DomainError&) {
            cover = false;
        }
    }
    for (double p : {pc - 1e-6, 3.0 + 1e-6}) {
        try {
            (void)exponents::global_existence_indices(p);
            cover = false;
        } catch (const DomainError&) {
        }
    }
    const bool pass = e_crit <= 1e-12 && e_conf <= 1e-12 && res <= 1e-10 && cover && sampled == 2000;
    return {pass, "|p_crit err| " + fmt(e_crit) + ", |p_conf err| " + fmt(e_conf) + ", max residual " + fmt(res) +
                      ", case union " + (cover ? "= (p_crit,3]" : "has gaps")};
}

// ---- 2 ----
Outcome multiplier_cross() {
    // the long double Kummer series stays accurate for |z| = 2 phase lam <= 16, so lam <= min(8, 8/phase)
    double worst = 0.0;
    int points = 0;
    for (double t : {0.25, 1.0, 2.0, 3.5, 5.0})
        for (double frac : {0.05, 0.2, 0.4, 0.6, 0.8, 1.0}) {
            const double phi = specfun::phase(t);
            const double lam = frac * std::min(8.0, 8.0 / phi);
            const std::complex<oracle::ld> z(0.0L, 2.0L * phi * lam);
            const auto ref = std::exp(-z / 2.0L) * oracle::kummer_series(1.0L / 6, 1.0L / 3, z);
            worst = std::max(worst, std::abs(double(ref.real()) - specfun::tricomi_multipliers(t, lam).v1));
            ++points;
        }
    double wr = 0.0;
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 160; ++j) {
            const auto m = specfun::tricomi_multipliers(0.05 * i, 0.05 * j);
            wr = std::max(wr, std::abs(m.v1 * m.v2_dt - m.v2 * m.v1_dt - 1.0));
        }
    return {points == 30 && worst <= 1e-7 && wr <= 1e-9,
            std::to_string(points) + " points, max |v1 - series| " + fmt(worst) + " (tol 1e-7), max Wronskian error " +
                fmt(wr) + " (tol 1e-9)"};
}

// ---- 3 ----
Outcome propagator_oracles() {
    const GridSpec g{2, kPi, 32};  // unit lattice spacing: modes are integer vectors
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> kd(-10, 10);
    std::uniform_real_distribution<double> U(-1.0, 1.0), Ut(0.05, 3.0);
    double worst_h = 0.0, worst_d = 0.0;
    for (int m = 0; m < 64; ++m) {
        const int k1 = kd(rng), k2 = kd(rng);
        const double th = kPi * U(rng), a = U(rng), b = U(rng), t = Ut(rng);
        const double c0 = U(rng), c1 = 2.0 * U(rng), c2 = U(rng);
        const double lam = std::hypot(double(k1), double(k2));
        const double omega = std::max(1.0, lam * std::sqrt(t));  // local frequency, scales u_t against u
        const Field mode = Field::sample(g, [&](const std::array<double, 3>& x) { return std::cos(k1 * x[0] + k2 * x[1] + th); });
        auto rel = [&](const Field& u, const Field& ut, const oracle::Second& ref) {
            double e = 0.0;
            for (std::size_t i = 0; i < u.values.size(); ++i)
                e = std::max({e, std::abs(u.values[i] - ref.y * mode.values[i]),
                              std::abs(ut.values[i] - ref.yp * mode.values[i]) / omega});
            return e / std::hypot(ref.y, ref.yp / omega);
        };
        // homogeneous
        Field f = mode, gv = mode;
        for (double& v : f.values) v *= a;
        for (double& v : gv.values) v *= b;
        const auto st = propagator::homogeneous_state(f, gv, t);
        auto acc = [&](double s, double w, double) { return -s * lam * lam * w; };
        worst_h = std::max(worst_h, rel(st.u, st.u_dt, oracle::rk4_refined(acc, 0.0, t, {a, b}, 1e-12)));
        // Duhamel with F = c(tau) mode
        auto c = [&](double tau) { return c0 + std::sin(c1 * tau + c2); };
        propagator::TimeSource src{g, t, {}, [&](double tau) {
                                       Field s = mode;
                                       for (double& v : s.values) v *= c(tau);
                                       return s;
                                   }};
        const auto ds = propagator::duhamel_states(src, {t}).front();
        auto accf = [&](double s, double w, double) { return -s * lam * lam * w + c(s); };
        worst_d = std::max(worst_d, rel(propagator::inverse_transform(ds.u), propagator::inverse_transform(ds.u_dt),
                                        oracle::rk4_refined(accf, 0.0, t, {0.0, 0.0}, 1e-12)));
    }
    return {worst_h <= 1e-6 && worst_d <= 1e-6,
            "64 modes, max relative error homogeneous " + fmt(worst_h) + ", Duhamel " + fmt(worst_d) + " (tol 1e-6)"};
}

// ---- 4 ----
Outcome manufactured_order() {
    const GridSpec g{2, 8.0, 128};
    const double p = 3.0;
    std::vector<double> dts{0.04, 0.02, 0.01, 0.005}, errs;
    for (double dt : dts) {
        nonlinear::SimulationConfig cfg;
        cfg.p = p;
        cfg.grid = g;
        cfg.dt = dt;
        cfg.T = 1.0;
        cfg.dealias = false;
        cfg.output_every = 1000000;
        cfg.store_fields = true;
        // u*(t, x) = (2 + cos t) exp(-|x|^2)
        cfg.extra_forcing = [p](double t, const std::array<double, 3>& x) {
            const double r2 = x[0] * x[0] + x[1] * x[1], G = std::exp(-r2), a = 2.0 + std::cos(t);
            return -std::cos(t) * G - t * a * (4.0 * r2 - 4.0) * G - std::pow(a * G, p);
        };
        auto gauss = [&](double amp) {
            return Field::sample(g, [&](const std::array<double, 3>& x) { return amp * std::exp(-(x[0] * x[0] + x[1] * x[1])); });
        };
        const auto tr = nonlinear::evolve(gauss(3.0), Field::zeros(g), cfg);
        if (!tr.completed) return {false, "manufactured run did not reach T at dt " + fmt(dt)};
        const Field exact = gauss(2.0 + std::cos(1.0));
        double e = 0.0;
        for (std::size_t i = 0; i < exact.values.size(); ++i) e = std::max(e, std::abs(tr.fields.back().values[i] - exact.values[i]));
        errs.push_back(e);
    }
    const double slope = fit_loglog(dts, errs);
    return {std::abs(slope - 2.0) <= 0.3, "fitted order " + fmt(slope) + " (target 2 +- 0.3), errors " + fmt(errs[0]) +
                                              " .. " + fmt(errs.back())};
}

// ---- 5 ----
Outcome propagation_speed() {
    double worst = 0.0;
    // each bump is resolved by its grid; the 3-D grid is coarser, so its bump is wider
    for (auto [g, M] : {std::pair{GridSpec{1, 8.0, 1024}, 1.0}, std::pair{GridSpec{2, 8.0, 256}, 1.0},
                        std::pair{GridSpec{3, 8.0, 128}, 2.0}}) {
        const Field f = bump(g, 1.0, M), z = Field::zeros(g);
        for (double t : {0.5, 1.0, 2.0, 3.0}) {
            const double radius = M + specfun::phase(t) + 3.0 * g.h();
            if (radius >= g.L) continue;
            for (int which = 0; which < 2; ++which) {
                const Field u = which == 0 ? propagator::homogeneous_solve(f, z, t) : propagator::homogeneous_solve(z, f, t);
                double out = 0.0, tot = 0.0;
                for (std::size_t i = 0; i < u.values.size(); ++i) {
                    const auto x = propagator::position(g, i);
                    const double v2 = u.values[i] * u.values[i];
                    tot += v2;
                    if (std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) > radius) out += v2;
                }
                worst = std::max(worst, out / tot);
            }
        }
    }
    return {worst <= 1e-6, "max relative L2 mass outside the cone " + fmt(worst) + " (tol 1e-6), n = 1, 2, 3"};
}

// ---- 6 ----
Outcome blowup_and_survival() {
    std::ostringstream d;
    bool pass = true;
    for (int N : {64, 128}) {
        nonlinear::SimulationConfig cfg;
        cfg.p = 1.8;
        cfg.grid = GridSpec{2, 8.0, N};
        cfg.dt = 0.01;
        cfg.T = 4.0;
        const Field f = bump(cfg.grid, 5.0), z = Field::zeros(cfg.grid);
        const auto v = nonlinear::detect_blowup(nonlinear::evolve(f, z, cfg), f, z, cfg);
        pass = pass && v.outcome == nonlinear::Outcome::blew_up;
        d << "p=1.8 N=" << N << ": " << nonlinear::to_string(v.outcome) << " at t=" << fmt(v.time) << "; ";
    }
    nonlinear::SimulationConfig cfg;
    cfg.p = 4.0;
    cfg.grid = GridSpec{2, 64.0, 512};  // cone radius 1 + phase(20) = 60.6 stays inside
    cfg.dt = 0.05;
    cfg.T = 20.0;
    const double eps = 1e-3;
    const Field f = bump(cfg.grid, eps), z = Field::zeros(cfg.grid);
    const auto tr = nonlinear::evolve(f, z, cfg);
    const auto v = nonlinear::detect_blowup(tr, f, z, cfg);
    const double sup = *std::max_element(tr.sup_norm.begin(), tr.sup_norm.end());
    pass = pass && v.outcome == nonlinear::Outcome::survived && tr.completed && sup <= 10.0 * eps;
    d << "p=4 eps=1e-3: " << nonlinear::to_string(v.outcome) << " to T=" << fmt(v.time) << ", max sup " << fmt(sup)
      << " (bound " << fmt(10 * eps) << ")";
    return {pass, d.str()};
}

// ---- 7 ----
Outcome riccati_suite() {
    blowup::RiccatiConfig c;  // (p, a, q) = (2, 1, 3), K1 = M = T0 = 1
    const auto est = blowup::c0_estimate(c.p, c.a, c.q, c.K1, c.M, c.T0, c.horizon, 1e-3);
    const double width = (est.hi - est.lo) / est.hi;
    bool mono = true;
    double prev = INFINITY;
    std::ostringstream ts;
    for (double K0 : {3.0, 5.0, 8.0, 15.0, 40.0}) {
        c.K0 = K0;
        const auto r = blowup::riccati_integrate(c, K0 * (c.T0 + c.M), c.a * K0);
        mono = mono && r.blew_up && r.t_star < prev;
        prev = r.t_star;
        ts << fmt(r.t_star) << " ";
    }
    return {width <= 1e-3 && est.c0 > 0.0 && mono, "c0 = " + fmt(est.c0) + ", relative width " + fmt(width) +
                                                         "; t* over K0 = 3..40: " + ts.str()};
}

// ---- 8 ----
Outcome hypergeometric_bound() {
    double min_f = INFINITY, worst_drop = 0.0, prev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double z = (1.0 - 1e-6) * i / 999.0;
        const double f = specfun::hypergeom_F16(z);
        min_f = std::min(min_f, f);
        if (i) worst_drop = std::max(worst_drop, prev - f);
        prev = f;
    }
    return {min_f >= 1.0 - 1e-12 && worst_drop <= 0.0,
            "min F = " + fmt(min_f) + ", largest decrease " + fmt(worst_drop) + " over 1000 points"};
}

// ---- 9 ----
Outcome radon_exactness() {
    blowup::RadialProfile ball{3, {0.0, 1.0, 1.0, 2.0}, {1.0, 1.0, 0.0, 0.0}};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double rho = -1.0 + 2.0 * (i + 0.5) / 100;
        worst = std::max(worst, std::abs(blowup::radon_radial(ball, 3, rho) - kPi * (1 - rho * rho)));
    }
    const std::vector<double> one(1001, 3.25);
    const auto T = blowup::T_operator(one, 3, 2.0, 1.0, 2.0, 3);
    double tw = 0.0;
    for (double v : T.Tf) tw = std::max(tw, std::abs(v - 3.25));
    return {worst <= 1e-6 && tw <= 1e-10,
            "max |R chi - pi(1-rho^2)| " + fmt(worst) + " (tol 1e-6), max |T c - c| " + fmt(tw) + " (tol 1e-10)"};
}

// ---- 10 ----
Outcome littlewood_paley() {
    const strichartz::LittlewoodPaleyBank bank;
    const double dev = strichartz::partition_deviation(bank, std::exp2(-10), std::exp2(10), 200001);
    const auto a = strichartz::square_function_constants({2, 8.0, 128}, 50, 4.0, 1.5, 7);
    const auto b = strichartz::square_function_constants({2, 8.0, 256}, 50, 4.0, 1.5, 7);
    const double du = std::max(a.upper, b.upper) / std::min(a.upper, b.upper);
    const double dl = std::max(a.lower, b.lower) / std::min(a.lower, b.lower);
    return {dev <= 1e-12 && du <= 2.0 && dl <= 2.0,
            "partition deviation " + fmt(dev) + " (tol 1e-12); square-function constants N=128 (" + fmt(a.lower) +
                ", " + fmt(a.upper) + ") vs N=256 (" + fmt(b.lower) + ", " + fmt(b.upper) + "), drift " +
                fmt(std::max(du, dl)) + " (tol 2)"};
}

// ---- 11 ----
Outcome knapp_scaling() {
    const auto c3 = exponents::global_existence_indices(2.9);
    bool pass = true;
    std::ostringstream d;
    for (auto [q, r] : {std::pair{7.5, 2.5}, std::pair{c3.q, c3.r}}) {
        strichartz::KnappConfig cfg;
        cfg.q = q;
        cfg.r = r;
        cfg.deltas = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
        const auto rep = strichartz::knapp_experiment(cfg);
        const bool ok = std::abs(rep.fitted_slope - rep.theory_slope) <= 0.08;
        pass = pass && ok;
        d << "(q,r)=(" << fmt(q) << "," << fmt(r) << "): slope " << fmt(rep.fitted_slope) << " vs " << fmt(rep.theory_slope)
          << " (tol 0.08)" << (ok ? "" : " MISS") << "; ";
    }
    return {pass, d.str()};
}

// ---- 12 ----
Outcome strichartz_stability() {
    bool pass = true;
    std::ostringstream d;
    for (double p : {2.25, 2.5, 2.9}) {  // one exponent per index case
        const auto ix = exponents::global_existence_indices(p);
        strichartz::EnsembleConfig cfg;
        cfg.members = 100;
        cfg.ladder = {128, 256};
        const auto h = strichartz::empirical_homogeneous_ratio(cfg, ix.q, ix.r);
        const auto i = strichartz::empirical_inhomogeneous_ratio(cfg, ix.q, ix.r, ix.q, ix.r);
        auto drift = [](const strichartz::RatioReport& r) {
            return std::max(r.max_ratio[0], r.max_ratio[1]) / std::min(r.max_ratio[0], r.max_ratio[1]);
        };
        const double dh = drift(h), di = drift(i);
        pass = pass && dh <= 2.0 && di <= 2.0 && h.max_ratio[0] > 0.0 && i.max_ratio[0] > 0.0;
        d << "case " << exponents::to_string(*ix.case_tag) << " p=" << p << ": drift hom " << fmt(dh) << ", inhom "
          << fmt(di) << "; ";
    }
    d << "(tol 2)";
    return {pass, d.str()};
}

// ---- 13 ----
Outcome sigma_values() {
    auto witness = [](int n, double p, int N) {
        nonlinear::SimulationConfig cfg;
        cfg.p = p;
        cfg.grid = GridSpec{n, 8.0, N};
        cfg.dt = 0.02;
        cfg.T = 4.0;
        cfg.store_fields = true;
        const Field f = bump(cfg.grid, 0.1);
        return blowup::chain_witness(nonlinear::evolve(f, f, cfg), p, n, 1.0);
    };
    const auto w2 = witness(2, exponents::critical_exponent(2), 128);
    const auto w3 = witness(3, exponents::critical_exponent(3), 32);
    const double e2 = std::abs(w2.sigma - (3.0 - std::sqrt(33.0)) / 4.0);
    return {e2 <= 1e-9 && w3.sigma > -0.75,
            "sigma(2, p_crit) = " + fmt(w2.sigma) + " (err " + fmt(e2) + "), sigma(3, p_crit) = " + fmt(w3.sigma) +
                " (> -0.75)"};
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "exponent algebra", 1, exponent_algebra},
        {2, "multiplier cross-representation", 10, multiplier_cross},
        {3, "linear propagator oracle equivalence", 60, propagator_oracles},
        {4, "manufactured-solution convergence", 300, manufactured_order},
        {5, "finite propagation speed", 60, propagation_speed},
        {6, "blowup and global witnesses", 600, blowup_and_survival},
        {7, "Riccati suite", 60, riccati_suite},
        {8, "hypergeometric bound", 1, hypergeometric_bound},
        {9, "Radon exactness", 0, radon_exactness},
        {10, "Littlewood-Paley", 0, littlewood_paley},
        {11, "Knapp scaling", 300, knapp_scaling},
        {12, "empirical Strichartz stability", 0, strichartz_stability},
        {13, "sigma values", 0, sigma_values},
    };
    return all;
}

bool run_one(const Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    std::printf("%s %2d %s: %s | %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs,
                c.budget_s > 0 ? (" of " + fmt(c.budget_s) + " s" + (in_time ? "" : " OVER BUDGET")).c_str() : "");
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--list")) {
            for (const auto& c : criteria()) std::printf("%d %s\n", c.id, c.title);
            return 0;
        } else {
            std::fprintf(stderr, "usage: acceptance [--only N] [--list]\n");
            return 2;
        }
    }
    int failed = 0, ran = 0;
    for (const auto& c : criteria()) {
        if (only && c.id != only) continue;
        ++ran;
        if (!run_one(c)) ++failed;
    }
    if (!ran) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    if (!only) std::printf("%d of %d criteria passed\n", ran - failed, ran);
    return failed ? 1 : 0;
}
