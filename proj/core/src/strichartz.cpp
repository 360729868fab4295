#include "tricomi/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "tricomi/errors.hpp"
#include "tricomi/propagator.hpp"
#include "tricomi/quadrature.hpp"
#include "tricomi/specfun.hpp"

namespace tricomi::strichartz {

using propagator::frequency;
using propagator::frequency_norm;
using specfun::phase;

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// Runs body(i) for i in [0, n) on all hardware threads. Results must be written by index.
template <class Fn>
void parallel_for(int n, Fn&& body) {
    const int workers = std::max(1, std::min<int>(n, static_cast<int>(std::thread::hardware_concurrency())));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += workers) body(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

std::mt19937_64 member_rng(std::uint64_t seed, int member) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(member)};
    return std::mt19937_64(seq);
}

template <class FieldT>
HdotResult hdot_impl(const FieldT& f, double s) {
    if (!std::isfinite(s)) throw DomainError("Sobolev order must be finite");
    const SpectralField c = propagator::transform(f);
    double acc = 0.0, peak = 0.0;
    HdotResult out;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) peak = std::max(peak, std::abs(c.coeffs[i]));
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
        const double k = frequency_norm(c.grid, i);
        const double a2 = std::norm(c.coeffs[i]);
        if (k == 0.0) {
            if (s == 0.0) acc += a2;
            else if (s < 0.0 && std::abs(c.coeffs[i]) > 1e-14 * peak) out.mean_dropped = true;
            continue;
        }
        acc += std::pow(k, 2.0 * s) * a2;
    }
    out.value = std::sqrt(c.grid.box_volume() * acc);
    return out;
}

double lq_norm(const std::vector<double>& v, double cell, double q) {
    double acc = 0.0;
    for (double x : v) acc += std::pow(std::abs(x), q);
    return std::pow(cell * acc, 1.0 / q);
}

// Bump with support inside [1/2, 1] used to localize random data.
double inner_bump(double rho) {
    return smooth_step((rho - 0.5) / 0.2) * (1.0 - smooth_step((rho - 0.8) / 0.2));
}

// Random Gaussian wave packets; parameters depend only on rng, never on the grid.
struct Packet {
    double cx, cy, kx, ky, w, amp, ph;
};
std::vector<Packet> draw_packets(std::mt19937_64& rng, int count, double centre_radius, double k_lo, double k_hi,
                                 double w_lo, double w_hi) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<Packet> out;
    for (int m = 0; m < count; ++m) {
        Packet p{};
        const double cr = centre_radius * std::sqrt(U(rng)), ca = 2.0 * kPi * U(rng);
        p.cx = cr * std::cos(ca);
        p.cy = cr * std::sin(ca);
        const double km = k_lo * std::pow(k_hi / k_lo, U(rng)), ka = 2.0 * kPi * U(rng);
        p.kx = km * std::cos(ka);
        p.ky = km * std::sin(ka);
        p.w = w_lo + (w_hi - w_lo) * U(rng);
        p.amp = 2.0 * U(rng) - 1.0;
        p.ph = 2.0 * kPi * U(rng);
        out.push_back(p);
    }
    return out;
}

Field sample_packets(const GridSpec& g, const std::vector<Packet>& ps) {
    return Field::sample(g, [&](const std::array<double, 3>& x) {
        double v = 0.0;
        for (const auto& p : ps) {
            const double dx = x[0] - p.cx, dy = x[1] - p.cy;
            v += p.amp * std::cos(p.kx * x[0] + p.ky * x[1] + p.ph) *
                 std::exp(-(dx * dx + dy * dy) / (2.0 * p.w * p.w));
        }
        return v;
    });
}

Field localized_member(const GridSpec& g, std::uint64_t seed, int member) {
    auto rng = member_rng(seed, member);
    const int count = 1 + static_cast<int>(rng() % 4);
    const auto ps = draw_packets(rng, count, 6.0, 0.55, 0.95, 2.0, 4.0);
    SpectralField s = propagator::transform(sample_packets(g, ps));
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= inner_bump(frequency_norm(g, i));
    return propagator::inverse_transform(s);
}

void require_localized(const Field& f) {
    const SpectralField s = propagator::transform(f);
    double in = 0.0, out = 0.0;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        const double k = frequency_norm(s.grid, i);
        (k >= 0.5 && k <= 1.0 ? in : out) += std::norm(s.coeffs[i]);
    }
    if (out > 1e-20 * (in + out)) throw DomainError("data spectrum is not inside [1/2, 1]");
}

MixedNormSpec ratio_spec(const GridSpec& g, double q, double r) {
    MixedNormSpec spec;
    spec.q = q;
    spec.r = r;
    spec.n_r = 2 * g.N + 1;
    spec.n_theta = 128;
    spec.r_max = g.L - 2.0 * g.h();
    return spec;
}

std::vector<double> uniform_times(double T, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = T * i / (n - 1);
    return t;
}

void validate_ensemble(const EnsembleConfig& cfg) {
    if (cfg.members < 1) throw DomainError("ensemble needs at least one member");
    if (!(cfg.L > 0.0) || !(cfg.T > 0.0) || cfg.n_t < 2) throw DomainError("bad ensemble box or time grid");
    if (cfg.ladder.empty()) throw DomainError("empty resolution ladder");
    if (phase(cfg.T) + 6.0 + 8.0 > cfg.L - 2.0)
        throw SupportViolation("waves reach the box edge before the final time");
}

double dual(double x) { return std::isinf(x) ? 1.0 : x / (x - 1.0); }

// 1-D C^1 cubic (Catmull-Rom) interpolation of a uniform table.
struct Table {
    double x0 = 0.0, dx = 1.0;
    std::vector<double> v;
    double operator()(double x) const {
        const double f = (x - x0) / dx;
        int i = static_cast<int>(std::floor(f));
        if (i < 1 || i + 2 >= static_cast<int>(v.size())) throw RangeError("table lookup out of range");
        const double t = f - i;
        const double p0 = v[i - 1], p1 = v[i], p2 = v[i + 1], p3 = v[i + 2];
        return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
    }
};

Table abs_alpha_hat_table(double t, double half_width, const ModelAmplitude& amp) {
    Table tab;
    tab.dx = 0.01;
    const int n = static_cast<int>(std::ceil(2.0 * half_width / tab.dx)) + 5;
    tab.x0 = -half_width - 2.0 * tab.dx;
    tab.v.resize(n);
    // same panel rule as alpha_hat at the widest argument; exponentials advanced by rotation
    const quad::Rule gl = quad::gauss_legendre(16);
    const double xmax = std::max(std::abs(tab.x0), std::abs(tab.x0 + (n - 1) * tab.dx));
    const int panels = std::max(8, static_cast<int>(std::ceil(xmax * 1.75 / 2.0)));
    const double w = 1.75 / panels;
    std::vector<double> wa;
    std::vector<cplx> e, step;
    for (int p = 0; p < panels; ++p)
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double rho = 0.25 + p * w + 0.5 * w * (gl.nodes[i] + 1.0);
            wa.push_back(0.5 * w * gl.weights[i] * rho * annulus_cutoff(rho) * amp(t, rho));
            e.push_back(std::polar(1.0, -rho * tab.x0));
            step.push_back(std::polar(1.0, -rho * tab.dx));
        }
    for (int k = 0; k < n; ++k) {
        if (k % 512 == 0) {  // re-anchor to keep the recurrence drift at rounding level
            std::size_t m = 0;
            for (int p = 0; p < panels; ++p)
                for (std::size_t i = 0; i < gl.nodes.size(); ++i, ++m) {
                    const double rho = 0.25 + p * w + 0.5 * w * (gl.nodes[i] + 1.0);
                    e[m] = std::polar(1.0, -rho * (tab.x0 + k * tab.dx));
                }
        }
        cplx acc = 0.0;
        for (std::size_t m = 0; m < wa.size(); ++m) {
            acc += wa[m] * e[m];
            e[m] *= step[m];
        }
        tab.v[k] = std::abs(acc);
    }
    return tab;
}

// int_0^{2pi} g(b - r cos theta) d theta by the periodic trapezoid rule.
template <class G>
double angular_integral(G&& g, double b, double r) {
    const int m = std::max(256, static_cast<int>(std::ceil(64.0 * r)));
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += g(b - r * std::cos(2.0 * kPi * j / m));
    return acc * 2.0 * kPi / m;
}
}  // namespace

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

HdotResult hdot_norm(const Field& f, double s) { return hdot_impl(f, s); }
HdotResult hdot_norm(const ComplexField& f, double s) { return hdot_impl(f, s); }

double LittlewoodPaleyBank::beta(double tau) {
    if (!(tau > 0.0)) return 0.0;
    const double l = std::log2(tau);
    return smooth_step(l + 1.0) - smooth_step(l);
}

double LittlewoodPaleyBank::partition(double tau) const {
    double acc = 0.0;
    for (int j = j_min; j <= j_max; ++j) acc += beta(std::ldexp(tau, -j));
    return acc;
}

void LittlewoodPaleyBank::validate() const {
    if (j_min > j_max) throw DomainError("empty Littlewood-Paley bank");
}

double partition_deviation(const LittlewoodPaleyBank& bank, double tau_lo, double tau_hi, int samples) {
    bank.validate();
    if (!(tau_lo > 0.0) || !(tau_hi >= tau_lo) || samples < 2) throw DomainError("bad partition sample range");
    double worst = 0.0;
    const double a = std::log2(tau_lo), b = std::log2(tau_hi);
    for (int i = 0; i < samples; ++i) {
        const double tau = std::exp2(a + (b - a) * i / (samples - 1));
        worst = std::max(worst, std::abs(bank.partition(tau) - 1.0));
    }
    return worst;
}

Field lp_project(const Field& f, int j, const LittlewoodPaleyBank& bank) {
    bank.validate();
    if (j < bank.j_min || j > bank.j_max) throw DomainError("dyadic index outside the bank");
    SpectralField s = propagator::transform(f);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
        s.coeffs[i] *= LittlewoodPaleyBank::beta(std::ldexp(frequency_norm(s.grid, i), -j));
    return propagator::inverse_transform(s);
}

SquareFunctionReport square_function_constants(const GridSpec& g, int ensemble, double q, double p,
                                               std::uint64_t seed) {
    g.validate();
    if (g.n != 2) throw DomainError("square-function bench runs in 2-D");
    if (!(q >= 2.0) || !(p > 1.0 && p <= 2.0)) throw DomainError("need q >= 2 and 1 < p <= 2");
    if (ensemble < 1) throw DomainError("ensemble needs at least one member");
    // bank covering every nonzero lattice frequency
    LittlewoodPaleyBank bank;
    bank.j_min = static_cast<int>(std::floor(std::log2(g.dk()))) - 1;
    bank.j_max = static_cast<int>(std::ceil(std::log2(std::sqrt(2.0) * g.dk() * g.N / 2))) + 1;
    const double cell = g.cell_volume();
    std::vector<double> up(ensemble), lo(ensemble);
    parallel_for(ensemble, [&](int m) {
        auto rng = member_rng(seed, m);
        const int count = 1 + static_cast<int>(rng() % 5);
        const auto ps = draw_packets(rng, count, g.L / 3.0, 0.5, std::min(8.0, g.dk() * g.N / 8), 0.4, 1.5);
        Field f = sample_packets(g, ps);
        double mean = 0.0;
        for (double v : f.values) mean += v;
        mean /= static_cast<double>(f.values.size());
        for (double& v : f.values) v -= mean;
        double sq_q = 0.0, sq_p = 0.0;
        for (int j = bank.j_min; j <= bank.j_max; ++j) {
            const Field fj = lp_project(f, j, bank);
            sq_q += std::pow(lq_norm(fj.values, cell, q), 2);
            sq_p += std::pow(lq_norm(fj.values, cell, p), 2);
        }
        up[m] = lq_norm(f.values, cell, q) / std::sqrt(sq_q);
        lo[m] = std::sqrt(sq_p) / lq_norm(f.values, cell, p);
    });
    return {*std::max_element(up.begin(), up.end()), *std::max_element(lo.begin(), lo.end()), ensemble};
}

double annulus_cutoff(double rho) {
    if (rho <= 0.25 || rho >= 2.0) return 0.0;
    if (rho < 0.5) return smooth_step((rho - 0.25) / 0.25);
    if (rho <= 1.0) return 1.0;
    return 1.0 - smooth_step(rho - 1.0);
}

double ModelAmplitude::operator()(double t, double rho) const {
    return std::pow(1.0 + phase(t) * rho, -1.0 / 6.0) * annulus_cutoff(rho);
}

std::vector<double> amplitude_symbol_constants(const ModelAmplitude& amp, const std::vector<double>& times,
                                               int max_order) {
    if (max_order < 0 || max_order > 4) throw DomainError("derivative order must be in [0, 4]");
    const double h = 2e-3;
    std::vector<double> worst(max_order + 1, 0.0);
    for (double t : times) {
        if (!(t >= 0.0)) throw DomainError("times must be >= 0");
        const double ph = phase(t);
        for (int i = 0; i <= 2000; ++i) {
            const double rho = 0.2 + 1.9 * i / 2000.0;
            const double w = std::pow(1.0 + ph * rho, 1.0 / 6.0);
            for (int k = 0; k <= max_order; ++k) {
                // k-th central difference, spacing h
                double d = 0.0, binom = 1.0;
                for (int m = 0; m <= k; ++m) {
                    d += ((m % 2) ? -1.0 : 1.0) * binom * amp(t, rho + (0.5 * k - m) * h);
                    binom = binom * (k - m) / (m + 1);
                }
                d /= std::pow(h, k);
                worst[k] = std::max(worst[k], std::abs(d) * std::pow(rho, k) * w);
            }
        }
    }
    return worst;
}

SpectralField A_spectrum(const Field& f, double t, const ModelAmplitude& amp) {
    if (!(t >= 0.0)) throw DomainError("A needs t >= 0");
    SpectralField s = propagator::transform(f);
    const double ph = phase(t);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        const double k = frequency_norm(s.grid, i);
        s.coeffs[i] *= std::polar(amp(t, k), -ph * k);
    }
    return s;
}

ComplexField apply_A(const Field& f, double t, const ModelAmplitude& amp) {
    return propagator::inverse_transform_complex(A_spectrum(f, t, amp));
}

std::complex<double> evaluate_series(const SpectralField& s, double x, double y) {
    if (s.grid.n != 2) throw DomainError("series evaluation is 2-D only");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        if (s.coeffs[i] == cplx(0.0)) continue;
        const auto k = frequency(s.grid, i);
        acc += s.coeffs[i] * std::polar(1.0, k[0] * x + k[1] * y);
    }
    return acc;
}

double AngularCoefficients::energy(int k) const {
    const int idx = ((k % n_omega) + n_omega) % n_omega;
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) acc += rho_weights[i] * std::norm(c[idx][i]) * rho[i];
    return acc;
}

namespace {
template <class T>
AngularCoefficients angular_impl(const GridSpec& g, const std::vector<T>& vals, double rho_lo, double rho_hi,
                                 int n_rho, int n_omega) {
    if (g.n != 2) throw DomainError("angular expansion needs a 2-D field");
    if (!(rho_lo >= 0.0) || !(rho_hi > rho_lo) || n_rho < 2 || n_omega < 4 || n_omega % 2)
        throw DomainError("bad angular sampling");
    if (rho_hi > g.dk() * g.N / 2) throw RangeError("radius beyond the sampled frequency band");
    const int N = g.N;
    const double h = g.h();
    AngularCoefficients out;
    const auto rule = quad::mapped(quad::gauss_legendre(n_rho), rho_lo, rho_hi);
    out.rho = rule.nodes;
    out.rho_weights = rule.weights;
    out.n_omega = n_omega;
    out.c.assign(n_omega, std::vector<cplx>(n_rho));
    std::vector<cplx> ex(N), ey(N), col(N);
    std::vector<cplx> fhat(n_omega);
    for (int i = 0; i < n_rho; ++i) {
        for (int j = 0; j < n_omega; ++j) {
            const double om = 2.0 * kPi * j / n_omega;
            const double k1 = out.rho[i] * std::cos(om), k2 = out.rho[i] * std::sin(om);
            for (int a = 0; a < N; ++a) {
                const double x = -g.L + a * h;
                ex[a] = std::polar(1.0, -k1 * x);
                ey[a] = std::polar(1.0, -k2 * x);
            }
            cplx acc = 0.0;
            for (int a = 0; a < N; ++a) {
                cplx row = 0.0;
                const T* v = &vals[std::size_t(a) * N];
                for (int b = 0; b < N; ++b) row += v[b] * ey[b];
                acc += ex[a] * row;
            }
            fhat[j] = acc * h * h;
        }
        for (int k = 0; k < n_omega; ++k) {
            cplx acc = 0.0;
            for (int j = 0; j < n_omega; ++j) acc += fhat[j] * std::polar(1.0, -2.0 * kPi * k * j / n_omega);
            out.c[k][i] = acc / static_cast<double>(n_omega);
        }
    }
    for (int k = 0; k < n_omega; ++k)
        for (int i = 0; i < n_rho; ++i) {
            out.sum_weighted += out.rho_weights[i] * std::norm(out.c[k][i]) * out.rho[i];
            out.sum_unweighted += out.rho_weights[i] * std::norm(out.c[k][i]);
        }
    out.sum_weighted /= 2.0 * kPi;
    double l2 = 0.0;
    for (const auto& v : vals) l2 += std::norm(cplx(v));
    out.l2_sq = l2 * g.cell_volume();
    return out;
}
}  // namespace

AngularCoefficients angular_coefficients(const Field& f, double rho_lo, double rho_hi, int n_rho, int n_omega) {
    return angular_impl(f.grid, f.values, rho_lo, rho_hi, n_rho, n_omega);
}
AngularCoefficients angular_coefficients(const ComplexField& f, double rho_lo, double rho_hi, int n_rho,
                                         int n_omega) {
    return angular_impl(f.grid, f.values, rho_lo, rho_hi, n_rho, n_omega);
}

std::complex<double> alpha_hat(double t, double xi, const ModelAmplitude& amp) {
    if (!std::isfinite(xi) || !(t >= 0.0)) throw DomainError("alpha_hat needs finite xi and t >= 0");
    static const quad::Rule gl = quad::gauss_legendre(16);
    const int panels = std::max(8, static_cast<int>(std::ceil(std::abs(xi) * 1.75 / 2.0)));
    const double a = 0.25, b = 2.0, w = (b - a) / panels;
    cplx acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double rho = lo + 0.5 * w * (gl.nodes[i] + 1.0);
            acc += 0.5 * w * gl.weights[i] * rho * annulus_cutoff(rho) * amp(t, rho) * std::polar(1.0, -rho * xi);
        }
    }
    return acc;
}

KernelBoundReport kernel_bound_check(double t, double r, double b, const ModelAmplitude& amp, int N) {
    if (!std::isfinite(t) || !std::isfinite(r) || !std::isfinite(b) || t < 0.0 || r < 0.0)
        throw DomainError("kernel bound needs finite t, r >= 0, b");
    KernelBoundReport rep;
    rep.integral = angular_integral([&](double x) { return std::abs(alpha_hat(t, x, amp)); }, b, r);
    // quadrature check: halve the angular step
    const int m = 2 * std::max(256, static_cast<int>(std::ceil(64.0 * r)));
    double fine = 0.0;
    for (int j = 0; j < m; ++j) fine += std::abs(alpha_hat(t, b - r * std::cos(2.0 * kPi * j / m), amp));
    fine *= 2.0 * kPi / m;
    if (std::abs(fine - rep.integral) > 1e-8 * std::max(fine, 1e-300) + 1e-300)
        throw NumericalFailure("angular quadrature did not converge");
    const double decay = std::pow(1.0 + phase(t), -1.0 / 6.0);
    rep.small_r_case = r <= 1.0 || std::abs(b) >= 2.0 * r;
    if (rep.small_r_case) {
        rep.rhs = std::pow(1.0 + b * b, -0.5 * N) * decay;
    } else {
        const double gap = r - std::abs(b);
        rep.rhs = (1.0 / r + std::pow(r, -0.5) * std::pow(1.0 + gap * gap, -0.25)) * decay;
    }
    rep.ratio = rep.integral / rep.rhs;
    return rep;
}

double claim_integral(double t, double r, double delta, const ModelAmplitude& amp) {
    if (!(t >= 0.0) || !(r >= 0.0) || !(delta > 0.0 && delta < 0.5)) throw DomainError("claim needs delta in (0, 1/2)");
    const double B = 2.0 * r + 60.0;
    const Table tab = abs_alpha_hat_table(t, B + r + 1.0, amp);
    const double lift = std::pow(1.0 + phase(t), 1.0 / 6.0);
    const double db = 0.05;
    const int nb = static_cast<int>(std::ceil(2.0 * B / db));
    double acc = 0.0;
    for (int i = 0; i <= nb; ++i) {
        const double b = -B + 2.0 * B * i / nb;
        const double inner = lift * std::pow(1.0 + b * b, 0.5 * (0.5 - delta)) * angular_integral(tab, b, r);
        acc += (i == 0 || i == nb ? 0.5 : 1.0) * inner * inner;
    }
    return acc * 2.0 * B / nb;
}

void require_inhomogeneous_indices(double q, double r, double qt, double rt) {
    for (double x : {q, r, qt, rt})
        if (!(x >= 2.0)) throw DomainError("indices must be >= 2");
    if (std::isinf(q) || std::isinf(qt)) throw DomainError("time indices must be finite");
    const double lhs = 1.0 / q + 3.0 / r, rhs = 1.0 / qt + 3.0 / rt;
    if (std::abs(lhs - rhs) > 1e-9) throw DomainError("indices violate the scaling identity");
    if (!exponents::admissible_check(q, r) || !exponents::admissible_check(qt, rt))
        throw DomainError("indices violate the Knapp condition");
}

std::optional<double> homogeneous_ratio(const Field& f, double q, double r, const EnsembleConfig& cfg) {
    if (f.grid.n != 2) throw DomainError("Strichartz bench runs in 2-D");
    const double f2 = propagator::l2_norm(f);
    if (f2 == 0.0) return std::nullopt;
    require_localized(f);
    const ModelAmplitude amp;
    const auto spec = ratio_spec(f.grid, q, r);
    const auto times = uniform_times(cfg.T, cfg.n_t);
    std::vector<PolarSamples> slices;
    for (double t : times) slices.push_back(polar_resample(apply_A(f, t, amp), spec));
    return mixed_norm(slices, times, spec) / f2;
}

RatioReport empirical_homogeneous_ratio(const EnsembleConfig& cfg, double q, double r) {
    if (!(q >= 2.0) || std::isinf(q) || !(r >= 2.0) || !exponents::admissible_check(q, r))
        throw DomainError("inadmissible Strichartz indices");
    validate_ensemble(cfg);
    RatioReport rep;
    for (int N : cfg.ladder) {
        const GridSpec g{2, cfg.L, N};
        g.validate();
        std::vector<double> ratios(cfg.members, -1.0);
        parallel_for(cfg.members, [&](int m) {
            const auto v = homogeneous_ratio(localized_member(g, cfg.seed, m), q, r, cfg);
            if (v) ratios[m] = *v;
        });
        rep.resolutions.push_back(N);
        rep.max_ratio.push_back(*std::max_element(ratios.begin(), ratios.end()));
        rep.skipped += static_cast<int>(std::count(ratios.begin(), ratios.end(), -1.0));
    }
    return rep;
}

RatioReport empirical_inhomogeneous_ratio(const EnsembleConfig& cfg, double q, double r, double qt, double rt) {
    require_inhomogeneous_indices(q, r, qt, rt);
    validate_ensemble(cfg);
    const double qd = dual(qt), rd = dual(rt);
    const auto times = uniform_times(cfg.T, cfg.n_t);
    auto pulse = [&](double tau) {
        const double s = std::sin(kPi * tau / cfg.T);
        return s * s;
    };
    RatioReport rep;
    for (int N : cfg.ladder) {
        const GridSpec g{2, cfg.L, N};
        g.validate();
        // per-mode response to the pulse with unit spatial coefficients on the annulus
        propagator::SpectralField unit = propagator::SpectralField::zeros(g);
        for (std::size_t i = 0; i < unit.coeffs.size(); ++i) {
            const double k = frequency_norm(g, i);
            if (k >= 0.45 && k <= 1.05) unit.coeffs[i] = 1.0;
        }
        const Field unit_field = propagator::inverse_transform(unit);
        propagator::TimeSource src{g, cfg.T, {}, [&](double tau) {
                                       Field f = unit_field;
                                       const double a = pulse(tau);
                                       for (double& v : f.values) v *= a;
                                       return f;
                                   }};
        const auto resp = propagator::duhamel_states(src, times);
        const auto wspec = ratio_spec(g, q, r);
        auto fspec = ratio_spec(g, qd, rd);
        std::vector<double> ratios(cfg.members, -1.0);
        parallel_for(cfg.members, [&](int m) {
            const Field h = localized_member(g, cfg.seed, m);
            if (propagator::l2_norm(h) == 0.0) return;
            require_localized(h);
            const SpectralField hs = propagator::transform(h);
            std::vector<PolarSamples> slices;
            for (const auto& st : resp) {
                SpectralField w = hs;
                for (std::size_t i = 0; i < w.coeffs.size(); ++i) w.coeffs[i] *= st.u.coeffs[i];
                slices.push_back(polar_resample(propagator::inverse_transform(w), wspec));
            }
            const double num = mixed_norm(slices, times, wspec);
            const double h_norm = radial_angular_norm(polar_resample(h, fspec), fspec);
            std::vector<double> per_time;
            for (double t : times) per_time.push_back(pulse(t) * h_norm);
            ratios[m] = num / time_norm(per_time, times, qd);
        });
        rep.resolutions.push_back(N);
        rep.max_ratio.push_back(*std::max_element(ratios.begin(), ratios.end()));
        rep.skipped += static_cast<int>(std::count(ratios.begin(), ratios.end(), -1.0));
    }
    return rep;
}

std::vector<double> random_smooth_kernel(int n, std::uint64_t seed) {
    if (n < 2) throw DomainError("kernel needs n >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    struct Term {
        double a, b, c, d;
    };
    std::vector<Term> terms;
    for (int m = 0; m < 4; ++m) terms.push_back({U(rng), 6.0 * U(rng), 6.0 * U(rng), kPi * U(rng)});
    std::vector<double> K(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double t = double(i) / (n - 1), s = double(j) / (n - 1);
            double v = 0.0;
            for (const auto& tm : terms) v += tm.a * std::cos(tm.b * t + tm.c * s + tm.d);
            K[std::size_t(i) * n + j] = v;
        }
    return K;
}

ChristKiselevReport christ_kiselev_check(const std::vector<double>& K, int n, double p, double q, int ensemble,
                                         std::uint64_t seed) {
    if (!(p >= 1.0) || !(q >= 1.0) || !(p < q)) throw DomainError("truncation estimate needs p < q");
    if (n < 2 || K.size() != std::size_t(n) * n) throw DomainError("kernel must be n x n");
    if (ensemble < 1) throw DomainError("ensemble needs at least one member");
    const double h = 1.0 / (n - 1);
    auto norm = [&](const std::vector<double>& v, double e) { return lq_norm(v, h, e); };
    auto apply = [&](const std::vector<double>& f, bool trunc, bool transpose) {
        std::vector<double> g(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const bool keep = !trunc || (transpose ? i <= j : j <= i);
                if (!keep) continue;
                const double k = transpose ? K[std::size_t(j) * n + i] : K[std::size_t(i) * n + j];
                g[i] += k * f[j] * h;
            }
        return g;
    };
    auto sign_pow = [](double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); };
    const double pd = dual(p);
    // random starts refined by the nonlinear power iteration for the p -> q norm
    auto estimate = [&](bool trunc) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> nd;
        double best = 0.0;
        for (int m = 0; m < ensemble; ++m) {
            std::vector<double> f(n);
            for (double& x : f) x = nd(rng);
            for (int it = 0; it < 30; ++it) {
                const double fn = norm(f, p);
                if (fn == 0.0) break;
                const auto g = apply(f, trunc, false);
                best = std::max(best, norm(g, q) / fn);
                std::vector<double> y(n);
                for (int i = 0; i < n; ++i) y[i] = sign_pow(g[i], q - 1.0);
                const auto z = apply(y, trunc, true);
                for (int i = 0; i < n; ++i) f[i] = sign_pow(z[i], pd - 1.0);
            }
        }
        return best;
    };
    ChristKiselevReport rep;
    rep.norm_T = estimate(false);
    rep.norm_trunc = estimate(true);
    rep.ratio = rep.norm_T > 0.0 ? rep.norm_trunc / rep.norm_T : 0.0;
    return rep;
}

AngularSobolevReport angular_sobolev_check(const std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    const GridSpec g{1, kPi, n};
    g.validate();
    Field f = Field::zeros(g);
    f.values = v;
    AngularSobolevReport rep;
    for (double x : v) {
        if (!std::isfinite(x)) throw DomainError("non-finite angular sample");
        rep.sup = std::max(rep.sup, std::abs(x));
    }
    rep.l2 = propagator::l2_norm(f);
    SpectralField s = propagator::transform(f);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        const int k = propagator::signed_index(static_cast<int>(i), n);
        s.coeffs[i] *= (k == -n / 2) ? cplx(0.0) : cplx(0.0, k);
    }
    rep.dtheta_l2 = propagator::l2_norm(propagator::inverse_transform(s));
    const double den = rep.l2 + rep.dtheta_l2;
    rep.constant = den > 0.0 ? rep.sup / den : 0.0;
    return rep;
}

}  // namespace tricomi::strichartz
