#include "tricomi/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tricomi/errors.hpp"
#include "tricomi/quadrature.hpp"
#include "tricomi/specfun.hpp"

namespace tricomi::blowup {

using namespace propagator;
constexpr double kPi = std::numbers::pi;

double RadialProfile::operator()(double r) const {
    if (radii.empty() || r > radii.back() || r < radii.front()) return 0.0;
    auto it = std::upper_bound(radii.begin(), radii.end(), r);
    if (it == radii.end()) return values.back();
    const std::size_t j = it - radii.begin();
    const double r0 = radii[j - 1], r1 = radii[j];
    if (r1 == r0) return values[j];
    return values[j - 1] + (values[j] - values[j - 1]) * (r - r0) / (r1 - r0);
}

double interpolate_linear(const Field& u, const std::array<double, 3>& x) {
    const GridSpec& g = u.grid;
    const double h = g.h();
    std::array<int, 3> j0{0, 0, 0};
    std::array<double, 3> w{0, 0, 0};
    for (int d = 0; d < g.n; ++d) {
        const double s = (x[d] + g.L) / h;
        const double fl = std::floor(s);
        j0[d] = static_cast<int>(fl);
        w[d] = s - fl;
    }
    auto wrap = [&](int j) { return ((j % g.N) + g.N) % g.N; };
    double acc = 0.0;
    const int corners = 1 << g.n;
    for (int c = 0; c < corners; ++c) {
        std::array<int, 3> idx{0, 0, 0};
        double wt = 1.0;
        for (int d = 0; d < g.n; ++d) {
            const int bit = (c >> d) & 1;
            idx[d] = wrap(j0[d] + bit);
            wt *= bit ? w[d] : 1.0 - w[d];
        }
        if (wt != 0.0) acc += wt * u.values[flatten(g, idx)];
    }
    return acc;
}

RadialProfile spherical_mean(const Field& u, const std::vector<double>& radii, double p) {
    const GridSpec& g = u.grid;
    if (g.n != 2 && g.n != 3) throw DomainError("spherical mean needs n = 2 or 3");
    const double h = g.h();
    auto val = [&](const std::array<double, 3>& x) {
        const double v = interpolate_linear(u, x);
        return p > 0.0 ? nonlinear::abs_pow(v, p) : v;
    };
    RadialProfile out;
    out.n = g.n;
    out.radii = radii;
    for (double r : radii) {
        if (r < 0.0 || r > g.L - h) throw RangeError("spherical mean radius beyond the grid");
        double mean = 0.0;
        if (g.n == 2) {
            const int m = std::max(64, 4 * static_cast<int>(std::ceil(2.0 * kPi * r / h)));
            for (int k = 0; k < m; ++k) {
                const double th = 2.0 * kPi * k / m;
                mean += val({r * std::cos(th), r * std::sin(th), 0.0});
            }
            mean /= m;
        } else {
            const int k = std::max(16, 2 * static_cast<int>(std::ceil(kPi * r / h)));
            const quad::Rule gl = quad::gauss_legendre(k);
            const int m = 2 * k;
            for (int i = 0; i < k; ++i) {
                const double c = gl.nodes[i], s = std::sqrt(std::max(0.0, 1.0 - c * c));
                double ring = 0.0;
                for (int j = 0; j < m; ++j) {
                    const double ph = 2.0 * kPi * j / m;
                    ring += val({r * s * std::cos(ph), r * s * std::sin(ph), r * c});
                }
                mean += 0.5 * gl.weights[i] * ring / m;
            }
        }
        out.values.push_back(mean);
    }
    return out;
}

RadialProfile spherical_mean(const Field& u, double p) {
    const GridSpec& g = u.grid;
    const double rmax = g.L - 2.0 * g.h();
    std::vector<double> radii(g.N);
    for (int i = 0; i < g.N; ++i) radii[i] = rmax * i / (g.N - 1);
    return spherical_mean(u, radii, p);
}

JensenReport jensen_check(const Field& u, double p, double tol) {
    if (!(p > 1.0)) throw DomainError("jensen_check needs p > 1");
    const RadialProfile m = spherical_mean(u);
    const RadialProfile mp = spherical_mean(u, m.radii, p);
    JensenReport rep;
    rep.radii = m.radii;
    rep.min_gap = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (double v : mp.values) scale = std::max(scale, v);
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        rep.lhs.push_back(nonlinear::abs_pow(m.values[i], p));
        rep.rhs.push_back(mp.values[i]);
        rep.min_gap = std::min(rep.min_gap, rep.rhs.back() - rep.lhs.back());
        if (scale > 0.0) rep.max_violation = std::max(rep.max_violation, (rep.lhs.back() - rep.rhs.back()) / scale);
    }
    rep.pass = rep.max_violation <= tol;
    return rep;
}

double sphere_area(int dim) {
    const double k = 0.5 * (dim + 1);
    return 2.0 * std::pow(kPi, k) / std::tgamma(k);
}

double ball_volume(int n, double R) { return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(R, n); }

double radon_radial(const RadialProfile& prof, int n, double rho) {
    if (n != 2 && n != 3) throw DomainError("radon_radial needs n = 2 or 3");
    const double a = std::abs(rho);
    if (prof.radii.size() < 2 || a >= prof.r_max()) return 0.0;
    static const quad::Rule gl = quad::gauss_legendre(8);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < prof.radii.size(); ++i) {
        const double r0 = prof.radii[i], r1 = prof.radii[i + 1];
        if (r1 <= a || r1 == r0) continue;
        const double lo = std::max(r0, a);
        const double slope = (prof.values[i + 1] - prof.values[i]) / (r1 - r0);
        auto lin = [&](double r) { return prof.values[i] + slope * (r - r0); };
        if (n == 3) {
            const quad::Rule rr = quad::mapped(gl, lo, r1);
            for (std::size_t k = 0; k < rr.nodes.size(); ++k) acc += rr.weights[k] * lin(rr.nodes[k]) * rr.nodes[k];
        } else {
            // r = sqrt(a^2 + s^2) removes the inverse square root at r = a
            const double s0 = std::sqrt(std::max(0.0, lo * lo - a * a)), s1 = std::sqrt(r1 * r1 - a * a);
            const quad::Rule rr = quad::mapped(gl, s0, s1);
            for (std::size_t k = 0; k < rr.nodes.size(); ++k)
                acc += rr.weights[k] * lin(std::sqrt(a * a + rr.nodes[k] * rr.nodes[k]));
        }
    }
    return sphere_area(n - 2) * acc;
}

namespace {
GReport g_report(const Field& u, double p, double volume, bool check_support = true) {
    if (check_support) require_interior_support(u);
    GReport r;
    r.G = integral(u);
    double s = 0.0;
    for (double v : u.values) s += nonlinear::abs_pow(v, p);
    r.Gpp = s * u.grid.cell_volume();
    if (r.G == 0.0) {
        r.holder_ratio = std::numeric_limits<double>::infinity();
        return r;
    }
    r.holder_ratio = r.Gpp / (std::pow(volume, -(p - 1.0)) * std::pow(std::abs(r.G), p));
    return r;
}
}  // namespace

GReport G_functional(const Field& u, double p, double R, bool check_support) {
    if (!(p > 1.0)) throw DomainError("G_functional needs p > 1");
    if (!(R > 0.0)) throw DomainError("support radius must be positive");
    return g_report(u, p, ball_volume(u.grid.n, R), check_support);
}

GReport G_functional_measure(const Field& u, double p, double measure) {
    if (!(p > 1.0)) throw DomainError("G_functional needs p > 1");
    if (!(measure > 0.0)) throw DomainError("support measure must be positive");
    return g_report(u, p, measure);
}

double support_measure(const Field& u) {
    std::size_t cnt = 0;
    for (double v : u.values) cnt += v != 0.0;
    return cnt * u.grid.cell_volume();
}

// ---- Riccati comparison ODE ----

void RiccatiConfig::validate() const {
    if (!(p > 1.0)) throw DomainError("Riccati: p must be > 1");
    if (!(a >= 1.0)) throw DomainError("Riccati: a must be >= 1");
    if (std::abs((p - 1.0) * a - (q - 2.0)) > 1e-12) throw DomainError("Riccati: scaling constraint (p-1)a = q-2 violated");
    if (!(K0 > 0.0 && K1 > 0.0 && M > 0.0 && T0 > 0.0)) throw DomainError("Riccati: K0, K1, M, T0 must be positive");
    if (!(horizon > T0)) throw DomainError("Riccati: horizon must exceed T0");
    if (!(rtol > 0.0)) throw DomainError("Riccati: rtol must be positive");
}

namespace {
struct Y {
    double g, gp;
};

RiccatiResult riccati_run(const RiccatiConfig& c, Y y, double h) {
    auto rhs = [&](double t, const Y& s) { return Y{s.gp, c.K1 * std::pow(t + c.M, -c.q) * nonlinear::abs_pow(s.g, c.p)}; };
    auto rk4 = [&](double t, const Y& s, double dt) {
        const Y k1 = rhs(t, s);
        const Y k2 = rhs(t + dt / 2, {s.g + dt / 2 * k1.g, s.gp + dt / 2 * k1.gp});
        const Y k3 = rhs(t + dt / 2, {s.g + dt / 2 * k2.g, s.gp + dt / 2 * k2.gp});
        const Y k4 = rhs(t + dt, {s.g + dt * k3.g, s.gp + dt * k3.gp});
        return Y{s.g + dt / 6 * (k1.g + 2 * k2.g + 2 * k3.g + k4.g), s.gp + dt / 6 * (k1.gp + 2 * k2.gp + 2 * k3.gp + k4.gp)};
    };
    RiccatiResult res;
    double t = c.T0;
    while (t < c.horizon) {
        if (++res.steps > 50'000'000) throw NumericalFailure("Riccati integration exceeded the step budget");
        if (y.g > 1e12 && (h < 1e-12 * std::max(1.0, t) || y.g > 1e250)) {
            res.blew_up = true;
            res.t_star = t;
            res.G_end = y.g;
            return res;
        }
        if (h < 1e-15 * std::max(1.0, t)) throw NumericalFailure("Riccati step collapsed below the blowup cap");
        const double dt = std::min(h, c.horizon - t);
        const Y full = rk4(t, y, dt);
        const Y half = rk4(t + dt / 2, rk4(t, y, dt / 2), dt / 2);
        const double err = std::max(std::abs(half.g - full.g) / (std::abs(half.g) + 1e-300),
                                    std::abs(half.gp - full.gp) / (std::abs(half.gp) + std::abs(half.g) / (t + c.M))) / 15.0;
        const bool finite = std::isfinite(half.g) && std::isfinite(half.gp) && std::isfinite(err);
        if (finite && err <= c.rtol) {
            t += dt;
            y = {half.g + (half.g - full.g) / 15.0, half.gp + (half.gp - full.gp) / 15.0};
            h = dt * std::min(4.0, 0.9 * std::pow(c.rtol / std::max(err, 1e-300), 0.2));
        } else {
            h = finite ? dt * std::max(0.1, 0.9 * std::pow(c.rtol / err, 0.2)) : dt * 0.1;
        }
    }
    res.t_star = c.horizon;
    res.G_end = y.g;
    return res;
}
}  // namespace

RiccatiResult riccati_integrate(const RiccatiConfig& cfg, double G_init, double G_slope_init) {
    cfg.validate();
    const double floor = cfg.K0 * std::pow(cfg.T0 + cfg.M, cfg.a);
    if (!(G_init >= floor * (1.0 - 1e-14))) throw DomainError("Riccati: G(T0) below the K0 (T0+M)^a bound");
    const double h0 = 1e-3 * std::min(1.0, cfg.horizon - cfg.T0);
    const RiccatiResult first = riccati_run(cfg, {G_init, G_slope_init}, h0);
    if (!first.blew_up) return first;
    // a blowup event has to survive a restart with half the initial step
    const RiccatiResult second = riccati_run(cfg, {G_init, G_slope_init}, h0 / 2);
    if (!second.blew_up) throw NumericalFailure("Riccati blowup event not reproduced at half the initial step");
    return second;
}

C0Report c0_estimate(double p, double a, double q, double K1, double M, double T0, double horizon, double rel_width,
                     double slope_factor) {
    RiccatiConfig cfg{p, a, q, 1.0, K1, M, T0, horizon};
    cfg.validate();
    if (!(rel_width > 0.0 && rel_width < 1.0)) throw DomainError("c0_estimate: rel_width must be in (0, 1)");
    C0Report rep;
    rep.slope_factor = slope_factor;
    auto blows = [&](double K0) {
        cfg.K0 = K0;
        ++rep.runs;
        const double base = std::pow(T0 + M, a);
        return riccati_integrate(cfg, K0 * base, slope_factor * a * K0 * base / (T0 + M)).blew_up;
    };
    double hi = 1.0;
    while (!blows(hi)) {
        hi *= 2.0;
        if (hi > 1e12) throw BracketError("c0_estimate: no blowup below K0 = 1e12");
    }
    double lo = hi;
    while (blows(lo)) {
        lo /= 2.0;
        if (lo < 1e-12) throw BracketError("c0_estimate: every K0 down to 1e-12 blows up before the horizon");
    }
    hi = std::min(hi, 2.0 * lo);
    while ((hi - lo) / hi > rel_width) {
        const double mid = std::sqrt(lo * hi);
        (blows(mid) ? hi : lo) = mid;
    }
    rep.lo = lo;
    rep.hi = hi;
    rep.c0 = hi;
    return rep;
}

// ---- averaging operator ----

double apply_T_at(const std::vector<double>& f, int n, double t, double M, double rho) {
    if (n != 2 && n != 3) throw DomainError("T operator needs n = 2 or 3");
    if (f.size() < 2) throw DomainError("T operator needs at least two samples");
    const double R = specfun::phase(t) + M;
    if (rho < -1e-12 * R || rho > R * (1.0 + 1e-12)) throw RangeError("T operator: rho outside [0, phase(t) + M]");
    rho = std::clamp(rho, 0.0, R);
    const std::size_t m = f.size() - 1;
    const double h = R / m;
    const double e = 0.5 * (n - 3);
    if (R - rho <= 1e-14 * R) return 2.0 * f.back() / (n - 1);
    std::size_t i = std::min(static_cast<std::size_t>(rho / h), m - 1);
    double acc = 0.0;
    for (; i < m; ++i) {
        const double r0 = i * h, r1 = (i + 1) * h;
        const double lo = std::max(r0, rho);
        if (r1 <= lo) continue;
        const double beta = (f[i + 1] - f[i]) / h;
        const double s0 = lo - rho, s1 = r1 - rho;
        const double alpha = f[i] + beta * (lo - r0) - beta * s0;
        acc += alpha * (std::pow(s1, e + 1) - std::pow(s0, e + 1)) / (e + 1) +
               beta * (std::pow(s1, e + 2) - std::pow(s0, e + 2)) / (e + 2);
    }
    return acc * std::pow(R - rho, -0.5 * (n - 1));
}

namespace {
double lp_trapezoid(const std::vector<double>& v, double h, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i == 0 || i + 1 == v.size() ? 0.5 : 1.0) * std::pow(std::abs(v[i]), p);
    return std::pow(s * h, 1.0 / p);
}
}  // namespace

TReport T_operator(const std::vector<double>& f, int n, double t, double M, double p, int ensemble, std::uint64_t seed) {
    if (!(p >= 1.0)) throw DomainError("T operator norm needs p >= 1");
    if (ensemble < 1) throw DomainError("T operator ensemble must be nonempty");
    const double R = specfun::phase(t) + M;
    const std::size_t m = f.size() - 1;
    auto apply = [&](const std::vector<double>& v) {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i <= m; ++i) out[i] = apply_T_at(v, n, t, M, R * i / m);
        return out;
    };
    TReport rep;
    for (std::size_t i = 0; i <= m; ++i) rep.rho.push_back(R * i / m);
    rep.Tf = apply(f);
    // smooth random nonnegative functions, defined independently of the sampling grid
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (int e = 0; e < ensemble; ++e) {
        std::vector<double> a(9), b(9);
        for (int k = 0; k < 9; ++k) {
            a[k] = nd(rng);
            b[k] = nd(rng);
        }
        std::vector<double> g(m + 1);
        for (std::size_t i = 0; i <= m; ++i) {
            const double x = kPi * rep.rho[i] / R;
            double s = 0.0;
            for (int k = 0; k < 9; ++k) s += a[k] * std::cos(k * x) + b[k] * std::sin(k * x);
            g[i] = std::abs(s);
        }
        const double nf = lp_trapezoid(g, R / m, p);
        if (nf > 0.0) rep.measured_norm = std::max(rep.measured_norm, lp_trapezoid(apply(g), R / m, p) / nf);
    }
    return rep;
}

// ---- chain witness ----

double chain_sigma(int n, double p) { return 1.5 * (n - 1.0 - 0.5 * n * p + p / 3.0); }

ChainWitnessReport chain_witness(const nonlinear::SimulationTrace& trace, double p, int n, double M, int rho_samples) {
    if (n != 2 && n != 3) throw DomainError("chain witness needs n = 2 or 3");
    if (trace.fields.size() != trace.times.size() || trace.fields.empty())
        throw DomainError("chain witness needs a trace with stored fields");
    if (trace.fields.front().grid.n != n) throw DomainError("chain witness: trace dimension differs from n");
    if (rho_samples < 1) throw DomainError("chain witness needs rho samples");

    const std::size_t nt = trace.times.size();
    std::vector<RadialProfile> U, P;
    for (const auto& f : trace.fields) {
        U.push_back(spherical_mean(f));
        P.push_back(spherical_mean(f, U.back().radii, p));
    }
    // Radon transform of the |u|^p mean on a rho grid, per stored time
    const double rmax = U.front().r_max();
    const int K = 401;
    std::vector<std::vector<double>> RP(nt, std::vector<double>(K));
    for (std::size_t i = 0; i < nt; ++i)
        for (int k = 0; k < K; ++k) RP[i][k] = radon_radial(P[i], n, -rmax + 2.0 * rmax * k / (K - 1));
    auto rp_at = [&](std::size_t i, double r1) {
        const double s = (r1 + rmax) / (2.0 * rmax) * (K - 1);
        if (s <= 0.0 || s >= K - 1) return 0.0;
        const int k = static_cast<int>(s);
        return RP[i][k] + (s - k) * (RP[i][k + 1] - RP[i][k]);
    };

    ChainWitnessReport rep;
    rep.sigma = chain_sigma(n, p);
    rep.sigma_ok = rep.sigma > -1.0;
    const double e12 = n - 1.0 - 0.5 * n * p + (p + 2.0) / 3.0;
    const double e18 = n - 1.0 - 0.5 * n * p + p / 3.0;
    const double e20 = 0.5 * p + 2.0 + 1.5 * (n - 1.0 - 0.5 * n * p);
    static const quad::Rule gl = quad::gauss_legendre(64);
    const double inf = std::numeric_limits<double>::infinity();
    rep.min_r6 = rep.min_r12 = rep.min_r18 = rep.min_r20 = inf;

    for (std::size_t i = 0; i < nt; ++i) {
        const double t = trace.times[i], ph = specfun::phase(t);
        if (!(ph > 2.0 * (M + 1.0))) continue;
        for (int j = 0; j < rho_samples; ++j) {
            const double rho = (j + 0.5) / rho_samples * (ph - M - 1.0);
            const double lhs = radon_radial(U[i], n, rho);
            // trapezoid over the stored times s <= t of the inner rho_1 integral
            std::vector<double> inner(i + 1);
            for (std::size_t k = 0; k <= i; ++k) {
                const double ps = specfun::phase(trace.times[k]);
                const double half = ph - ps;
                if (half <= 0.0) continue;
                const quad::Rule rr = quad::mapped(gl, rho - half, rho + half);
                double acc = 0.0;
                for (std::size_t q = 0; q < rr.nodes.size(); ++q) {
                    const double d = rho - rr.nodes[q];
                    acc += rr.weights[q] * std::pow((ph + ps) * (ph + ps) - d * d, -1.0 / 6.0) * rp_at(k, rr.nodes[q]);
                }
                inner[k] = acc;
            }
            double rhs6 = 0.0;
            for (std::size_t k = 0; k < i; ++k) rhs6 += 0.5 * (trace.times[k + 1] - trace.times[k]) * (inner[k] + inner[k + 1]);
            const double rhs12 = std::pow(ph - rho, -1.0 / 6.0) * std::pow(ph, -1.0 / 6.0) * std::pow(ph - rho - M, e12);
            ChainPoint pt{t, rho, rhs6 > 0.0 ? lhs / rhs6 : inf, lhs / rhs12};
            rep.points.push_back(pt);
            rep.min_r6 = std::min(rep.min_r6, pt.r6);
            rep.min_r12 = std::min(rep.min_r12, pt.r12);
        }
        // evolved fields carry small spectral tails, so the support test is geometric: the cone ball must fit
        if (M + ph > trace.fields[i].grid.L - 2.0 * trace.fields[i].grid.h())
            throw SupportViolation("chain witness: support cone leaves the box at t = " + std::to_string(t));
        const GReport g = g_report(trace.fields[i], p, ball_volume(n, M + ph), false);
        rep.times.push_back(t);
        rep.r18.push_back(g.Gpp / (std::pow(ph, e18) * std::log(ph - M + 1.0)));
        rep.r20.push_back(g.G / std::pow(t + M, e20));
        rep.min_r18 = std::min(rep.min_r18, rep.r18.back());
        rep.min_r20 = std::min(rep.min_r20, rep.r20.back());
    }
    if (rep.points.empty()) throw DomainError("chain witness: empty sample region, horizon too short for phase(t) > 2(M+1)");
    return rep;
}

}  // namespace tricomi::blowup
