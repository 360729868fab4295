#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "tricomi/errors.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/strichartz.hpp"

namespace tricomi::strichartz {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
std::mutex knapp_plan_mutex;

double keys(double s) {
    s = std::abs(s);
    if (s < 1.0) return (1.5 * s - 2.5) * s * s + 1.0;
    if (s < 2.0) return ((-0.5 * s + 2.5) * s - 4.0) * s + 2.0;
    return 0.0;
}

// Envelope B(X1, x2) on a periodic anisotropic lattice, X1 = x1 - phase(t).
struct Envelope {
    int n1, n2;
    double p1, p2;  // periods
    std::vector<cplx> v;  // row-major [X1][x2], index 0 at the origin

    cplx at(double X1, double x2) const {
        const double f1 = X1 / (p1 / n1), f2 = x2 / (p2 / n2);
        const int i1 = static_cast<int>(std::floor(f1)), i2 = static_cast<int>(std::floor(f2));
        const double a1 = f1 - i1, a2 = f2 - i2;
        cplx acc = 0.0;
        for (int a = -1; a <= 2; ++a) {
            const int r = ((i1 + a) % n1 + n1) % n1;
            cplx row = 0.0;
            for (int b = -1; b <= 2; ++b) row += keys(a2 - b) * v[std::size_t(r) * n2 + ((i2 + b) % n2 + n2) % n2];
            acc += keys(a1 - a) * row;
        }
        return acc;
    }
};

// Pairs of theta sub-intervals of [0, pi] where the circle of radius rad lies in the window.
std::vector<std::pair<double, double>> window_arcs(double rad, double ph, double w1, double w2) {
    std::vector<std::pair<double, double>> out;
    if (rad <= 0.0) return out;
    const double c_hi = std::min(1.0, (ph + w1) / rad), c_lo = std::max(-1.0, (ph - w1) / rad);
    if (c_lo > c_hi) return out;
    const double ta = std::acos(c_hi), tb = std::acos(c_lo);
    if (w2 >= rad) {
        out.emplace_back(ta, tb);
        return out;
    }
    const double s = std::asin(w2 / rad);
    for (auto [lo, hi] : {std::pair{0.0, s}, std::pair{kPi - s, kPi}}) {
        const double a = std::max(lo, ta), b = std::min(hi, tb);
        if (b > a) out.emplace_back(a, b);
    }
    return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

struct DeltaResult {
    double ratio, cartesian, lower_c, indicator;
};

DeltaResult run_delta(const KnappConfig& cfg, double delta) {
    const ModelAmplitude amp;
    const int n1 = cfg.fft_n1, n2 = cfg.fft_n2;
    const double w1 = cfg.window_x1, w2 = cfg.window_x2_factor / delta;
    const double p1 = 8.0 * w1, p2 = 64.0 / delta;
    const double d1 = p1 / n1, d2 = p2 / n2;
    const double de1 = 2.0 * kPi / p1, de2 = 2.0 * kPi / p2;
    if (d1 > 0.5 || d2 * delta > 0.5 || 2.0 * delta / de2 < 16.0 || 0.5 / de1 < 16.0)
        throw RangeError("Knapp lattice cannot resolve delta");
    if (2.0 * w2 > 0.5 * p2) throw RangeError("Knapp window wider than the lattice period allows");

    std::vector<cplx> buf(std::size_t(n1) * n2);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(knapp_plan_mutex);
        plan = fftw_plan_dft_2d(n1, n2, reinterpret_cast<fftw_complex*>(buf.data()),
                                reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw NumericalFailure("FFTW planning failed");

    // lattice sum over D replaces the integral; |D| uses the same lattice
    const int m1 = static_cast<int>(std::ceil(0.5 / de1)), m2 = static_cast<int>(std::ceil(delta / de2));
    double area = 0.0;
    for (int a = -m1; a <= m1; ++a)
        for (int b = -m2; b <= m2; ++b)
            if (std::abs(a * de1) < 0.5 && std::abs(b * de2) < delta) area += de1 * de2;
    const double f_norm = std::sqrt(area) / (2.0 * kPi);

    const double t_end = std::pow(1.5 / delta, 2.0 / 3.0);
    const int nt = cfg.n_t;
    std::vector<double> times(nt), polar(nt), cart(nt), indic(nt);
    double lower = std::numeric_limits<double>::infinity();
    Envelope env{n1, n2, p1, p2, {}};
    for (int k = 0; k < nt; ++k) {
        const double t = t_end * k / (nt - 1), ph = specfun::phase(t);
        times[k] = t;
        std::fill(buf.begin(), buf.end(), cplx(0.0));
        for (int a = -m1; a <= m1; ++a)
            for (int b = -m2; b <= m2; ++b) {
                const double e1 = a * de1, e2 = b * de2;
                if (std::abs(e1) >= 0.5 || std::abs(e2) >= delta) continue;
                const double x1 = 1.0 + e1, rho = std::hypot(x1, e2);
                const std::size_t idx = std::size_t((a + n1) % n1) * n2 + (b + n2) % n2;
                buf[idx] = std::polar(amp(t, rho) * de1 * de2, -ph * (rho - x1));
            }
        fftw_execute(plan);
        env.v = buf;

        // lower bound on R: |X1| <= 1/4, |x2| <= 1/(4 delta), phase <= 1/delta
        if (ph <= 1.0 / delta) {
            const int j1 = static_cast<int>(std::floor(0.25 / d1)), j2 = static_cast<int>(std::floor(0.25 / delta / d2));
            for (int a = -j1; a <= j1; ++a)
                for (int b = -j2; b <= j2; ++b)
                    lower = std::min(lower, std::abs(env.v[std::size_t((a + n1) % n1) * n2 + (b + n2) % n2]));
        }

        // Cartesian L^r over the window
        {
            const int j1 = static_cast<int>(std::floor(w1 / d1)), j2 = static_cast<int>(std::floor(w2 / d2));
            double acc = 0.0;
            for (int a = -j1; a <= j1; ++a)
                for (int b = -j2; b <= j2; ++b)
                    acc += std::pow(std::abs(env.v[std::size_t((a + n1) % n1) * n2 + (b + n2) % n2]), cfg.r);
            cart[k] = std::pow(acc * d1 * d2, 1.0 / cfg.r);
        }

        // polar L^r_{|x|} L^2_theta with the dr measure, restricted to the window
        const double r_top = std::hypot(ph + w1, w2);
        const double dr = 0.5, ds = 0.5;
        const int nr = static_cast<int>(std::ceil(r_top / dr));
        double acc = 0.0;
        for (int i = 0; i <= nr; ++i) {
            const double rad = r_top * i / nr;
            double g = 0.0;
            for (auto [lo, hi] : window_arcs(rad, ph, w1, w2)) {
                const int m = std::max(2, static_cast<int>(std::ceil((hi - lo) * rad / ds)) + 1);
                double s = 0.0;
                for (int j = 0; j < m; ++j) {
                    const double th = lo + (hi - lo) * j / (m - 1);
                    const double v = std::norm(env.at(rad * std::cos(th) - ph, rad * std::sin(th)));
                    s += (j == 0 || j == m - 1 ? 0.5 : 1.0) * v;
                }
                g += s * (hi - lo) / (m - 1);
            }
            g *= 2.0;  // B is even in x2
            acc += (i == 0 || i == nr ? 0.5 : 1.0) * std::pow(g, 0.5 * cfg.r);
        }
        polar[k] = std::pow(acc * r_top / nr, 1.0 / cfg.r);

        // same norm of the indicator of R (arc measure is exact, the r-integrand has an
        // integrable singularity at the inner edge, so the radial step is fine)
        const double ir_lo = std::max(0.0, ph - 0.25), ir_hi = std::hypot(ph + 0.25, 0.25 / delta);
        const int ni = 20000;
        double iacc = 0.0;
        for (int i = 0; i <= ni; ++i) {
            const double rad = ir_lo + (ir_hi - ir_lo) * i / ni;
            double meas = 0.0;
            for (auto [lo, hi] : window_arcs(rad, ph, 0.25, 0.25 / delta)) meas += hi - lo;
            iacc += (i == 0 || i == ni ? 0.5 : 1.0) * std::pow(2.0 * meas, 0.5 * cfg.r);
        }
        indic[k] = std::pow(iacc * (ir_hi - ir_lo) / ni, 1.0 / cfg.r);
    }
    {
        std::lock_guard<std::mutex> lock(knapp_plan_mutex);
        fftw_destroy_plan(plan);
    }
    return {time_norm(polar, times, cfg.q) / f_norm, time_norm(cart, times, cfg.q) / f_norm,
            lower / (area * std::pow(delta, 1.0 / 6.0)),
            area * std::pow(delta, 1.0 / 6.0) * time_norm(indic, times, cfg.q) / f_norm};
}
}  // namespace

void KnappConfig::validate() const {
    if (deltas.size() < 5) throw DomainError("Knapp fit needs at least five delta values");
    for (double d : deltas)
        if (!(d > 0.0 && d <= 0.25)) throw DomainError("delta must lie in (0, 1/4]");
    for (std::size_t i = 2; i < deltas.size(); ++i)
        if (std::abs(deltas[i] / deltas[i - 1] - deltas[1] / deltas[0]) > 1e-9 * deltas[1] / deltas[0])
            throw DomainError("delta values must form a geometric sequence");
    if (!(q >= 1.0) || !(r >= 1.0) || std::isinf(q) || std::isinf(r)) throw DomainError("bad Knapp indices");
    if (n_t < 3 || !(window_x1 > 0.25) || !(window_x2_factor > 0.25)) throw DomainError("bad Knapp window");
    if (fft_n1 < 8 || fft_n2 < 8) throw DomainError("bad Knapp lattice");
}

double knapp_theory_slope(double q, double r) { return 2.0 / 3.0 - 2.0 / (3.0 * q) - 1.0 / r; }

KnappReport knapp_experiment(const KnappConfig& cfg) {
    cfg.validate();
    KnappReport rep;
    rep.deltas = cfg.deltas;
    for (double d : cfg.deltas) {
        const DeltaResult res = run_delta(cfg, d);
        rep.ratios.push_back(res.ratio);
        rep.cartesian_ratios.push_back(res.cartesian);
        rep.lower_c.push_back(res.lower_c);
        rep.indicator_ratios.push_back(res.indicator);
    }
    rep.fitted_slope = fit_slope(rep.deltas, rep.ratios);
    rep.cartesian_slope = fit_slope(rep.deltas, rep.cartesian_ratios);
    rep.indicator_slope = fit_slope(rep.deltas, rep.indicator_ratios);
    rep.theory_slope = knapp_theory_slope(cfg.q, cfg.r);
    return rep;
}

}  // namespace tricomi::strichartz
