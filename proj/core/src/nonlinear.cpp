#include "tricomi/nonlinear.hpp"

#include <algorithm>
#include <cmath>

#include "tricomi/errors.hpp"
#include "tricomi/exponents.hpp"
#include "tricomi/mixed_norm.hpp"
#include "tricomi/propagator.hpp"
#include "tricomi/quadrature.hpp"

namespace tricomi::nonlinear {

using namespace propagator;
using specfun::MultiplierValue;

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::blew_up: return "blew_up";
        case Outcome::survived: return "survived";
        case Outcome::inconclusive: return "inconclusive";
    }
    return "?";
}

void SimulationConfig::validate() const {
    grid.validate();
    if (!(p > 1.0)) throw DomainError("p must be > 1");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("horizon T must be positive");
    if (!(blowup_threshold > 0.0)) throw DomainError("blowup threshold must be positive");
    if (output_every < 1) throw DomainError("output cadence must be >= 1");
}

double abs_pow(double u, double p) { return std::exp(p * std::log(std::max(std::abs(u), 1e-300))); }

namespace {

void dealias_inplace(SpectralField& s) {
    const GridSpec& g = s.grid;
    const int cut = g.N / 3;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        const auto idx = unflatten(g, i);
        for (int d = 0; d < g.n; ++d)
            if (std::abs(signed_index(idx[d], g.N)) > cut) {
                s.coeffs[i] = 0.0;
                break;
            }
    }
}

SpectralField source_hat(const Field& u, double t, const SimulationConfig& cfg) {
    Field src = Field::zeros(u.grid);
    if (cfg.nonlinearity_coeff != 0.0)
        for (std::size_t i = 0; i < src.values.size(); ++i)
            src.values[i] = cfg.nonlinearity_coeff * abs_pow(u.values[i], cfg.p);
    if (cfg.extra_forcing)
        for (std::size_t i = 0; i < src.values.size(); ++i) src.values[i] += cfg.extra_forcing(t, position(u.grid, i));
    SpectralField s = transform(src);
    if (cfg.dealias) dealias_inplace(s);
    return s;
}

strichartz::MixedNormSpec polar_spec(const GridSpec& g, double q, double r) {
    strichartz::MixedNormSpec s;
    s.q = q;
    s.r = r;
    s.n_r = std::max(8, g.N / 2);
    s.n_theta = 64;
    s.r_max = g.L - 2.0 * g.h();
    return s;
}

double lp_norm(const Field& u, double p) {
    double s = 0.0;
    for (double v : u.values) s += abs_pow(v, p);
    return std::pow(s * u.grid.cell_volume(), 1.0 / p);
}

// Space part of the diagnostic norm: angular mixed norm in 2-D, plain L^r otherwise.
double space_norm(const Field& u, double q, double r) {
    if (u.grid.n == 2) return strichartz::radial_angular_norm(strichartz::polar_resample(u, polar_spec(u.grid, q, r)), polar_spec(u.grid, q, r));
    return lp_norm(u, r);
}

double energy(const SpectralState& s, double t) {
    const GridSpec& g = s.u.grid;
    double acc = 0.0;
    for (std::size_t i = 0; i < s.u.coeffs.size(); ++i) {
        const double lam = frequency_norm(g, i);
        acc += std::norm(s.u_dt.coeffs[i]) + t * lam * lam * std::norm(s.u.coeffs[i]);
    }
    return std::sqrt(acc * g.box_volume());
}

}  // namespace

Field power_source(const Field& u, double p, bool dealias) {
    if (!dealias) {
        Field out = u;
        for (double& v : out.values) v = abs_pow(v, p);
        return out;
    }
    SimulationConfig cfg;
    cfg.p = p;
    cfg.dealias = dealias;
    return inverse_transform(source_hat(u, 0.0, cfg));
}

std::pair<double, double> diagnostic_indices(const SimulationConfig& cfg) {
    if (cfg.mixed_q && cfg.mixed_r) return {*cfg.mixed_q, *cfg.mixed_r};
    const double pc = exponents::critical_exponent(2);
    if (cfg.p > pc && cfg.p <= 3.0) {
        const auto idx = exponents::global_existence_indices(cfg.p);
        return {idx.q, idx.r};
    }
    return {4.0, 4.0};
}

SimulationTrace evolve(const Field& f, const Field& g, const SimulationConfig& cfg) {
    cfg.validate();
    require_same_grid(f.grid, cfg.grid);
    require_same_grid(g.grid, cfg.grid);
    require_interior_support(f);
    require_interior_support(g);

    SimulationTrace tr;
    tr.initial_sup = sup_norm(f);
    if (!(cfg.blowup_threshold > tr.initial_sup)) throw DomainError("blowup threshold must exceed the initial sup norm");
    const auto [q, r] = diagnostic_indices(cfg);
    tr.mixed_q = q;
    tr.mixed_r = r;

    const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.T / cfg.dt - 1e-9)));
    const double dt = cfg.T / steps;
    tr.dt = dt;

    const ShellTable shells(cfg.grid);
    const std::size_t S = shells.shell_count();
    static const quad::Rule gl = quad::gauss_legendre(4);

    SpectralState st{transform(f), transform(g)};
    auto record = [&](double t, const Field& u) {
        tr.times.push_back(t);
        tr.sup_norm.push_back(sup_norm(u));
        tr.G.push_back(integral(u));
        tr.Lp_norm.push_back(lp_norm(u, cfg.p));
        if (cfg.grid.n == 2) tr.radial_norm.push_back(space_norm(u, q, r));
        if (cfg.store_fields) tr.fields.push_back(u);
    };
    record(0.0, f);

    SpectralField F_prev = source_hat(f, 0.0, cfg);
    std::vector<MultiplierValue> m_prev = shells.multipliers(0.0);
    std::vector<double> I1(S), I2(S);
    for (long k = 0; k < steps; ++k) {
        const double a = k * dt, b = (k + 1) * dt, mid = 0.5 * (a + b);
        const auto m_mid = shells.multipliers(mid);
        const auto m_b = shells.multipliers(b);
        std::fill(I1.begin(), I1.end(), 0.0);
        std::fill(I2.begin(), I2.end(), 0.0);
        const quad::Rule rr = quad::mapped(gl, a, b);
        for (std::size_t j = 0; j < rr.nodes.size(); ++j) {
            const auto m = shells.multipliers(rr.nodes[j]);
            for (std::size_t s = 0; s < S; ++s) {
                I1[s] += rr.weights[j] * m[s].v1;
                I2[s] += rr.weights[j] * m[s].v2;
            }
        }
        // predictor at the midpoint: exact half-step flow plus the Taylor source term
        SpectralField u_mid_hat = SpectralField::zeros(cfg.grid);
        for (std::size_t i = 0; i < u_mid_hat.coeffs.size(); ++i) {
            const int s = shells.shell_of(i);
            const MultiplierValue &m1 = m_prev[s], &m2 = m_mid[s];
            const double ta = m2.v1 * m1.v2_dt - m2.v2 * m1.v1_dt, tb = -m2.v1 * m1.v2 + m2.v2 * m1.v1;
            u_mid_hat.coeffs[i] = ta * st.u.coeffs[i] + tb * st.u_dt.coeffs[i] + 0.125 * dt * dt * F_prev.coeffs[i];
        }
        const Field u_mid = inverse_transform(u_mid_hat);
        const double sup_mid = sup_norm(u_mid);
        if (!std::isfinite(sup_mid)) throw NumericalFailure("non-finite solution at t = " + std::to_string(mid));
        if (sup_mid > cfg.blowup_threshold) {
            tr.flagged = true;
            tr.flag_time = mid;
            record(mid, u_mid);
            return tr;
        }
        const SpectralField F_mid = source_hat(u_mid, mid, cfg);
        for (std::size_t i = 0; i < st.u.coeffs.size(); ++i) {
            const int s = shells.shell_of(i);
            const MultiplierValue &m1 = m_prev[s], &m2 = m_b[s];
            const double ta = m2.v1 * m1.v2_dt - m2.v2 * m1.v1_dt, tb = -m2.v1 * m1.v2 + m2.v2 * m1.v1;
            const double tc = m2.v1_dt * m1.v2_dt - m2.v2_dt * m1.v1_dt, td = -m2.v1_dt * m1.v2 + m2.v2_dt * m1.v1;
            const auto u = st.u.coeffs[i], v = st.u_dt.coeffs[i];
            st.u.coeffs[i] = ta * u + tb * v + (m2.v2 * I1[s] - m2.v1 * I2[s]) * F_mid.coeffs[i];
            st.u_dt.coeffs[i] = tc * u + td * v + (m2.v2_dt * I1[s] - m2.v1_dt * I2[s]) * F_mid.coeffs[i];
        }
        F_prev = F_mid;
        m_prev = m_b;
        if ((k + 1) % cfg.output_every == 0 || k + 1 == steps) {
            const Field u = inverse_transform(st.u);
            const double sup = sup_norm(u);
            if (!std::isfinite(sup)) throw NumericalFailure("non-finite solution at t = " + std::to_string(b));
            record(b, u);
            if (sup > cfg.blowup_threshold) {
                tr.flagged = true;
                tr.flag_time = b;
                return tr;
            }
        }
    }
    tr.completed = true;
    if (!tr.radial_norm.empty()) tr.mixed_norm = strichartz::time_norm(tr.radial_norm, tr.times, q);
    return tr;
}

BlowupVerdict detect_blowup(const SimulationTrace& trace, const Field& f, const Field& g,
                            const SimulationConfig& cfg) {
    if (trace.flagged) {
        SimulationConfig half = cfg;
        half.dt = trace.dt / 2.0;
        half.store_fields = false;
        const SimulationTrace again = evolve(f, g, half);
        if (again.flagged)
            return {Outcome::blew_up, again.flag_time, "threshold crossing reproduced at dt/2"};
        return {Outcome::inconclusive, trace.flag_time, "threshold crossing not reproduced at dt/2"};
    }
    if (trace.completed) {
        double peak = 0.0;
        for (double s : trace.sup_norm) peak = std::max(peak, s);
        if (peak <= 10.0 * trace.initial_sup)
            return {Outcome::survived, trace.times.back(), "horizon reached with sup norm within 10x of initial"};
        return {Outcome::inconclusive, trace.times.back(), "sup norm grew beyond 10x initial without crossing"};
    }
    return {Outcome::inconclusive, trace.times.empty() ? 0.0 : trace.times.back(), "trace incomplete"};
}

PicardResult picard_iterate(const Field& f, const Field& g, const SimulationConfig& cfg, int K) {
    cfg.validate();
    if (cfg.method != Method::picard) throw DomainError("picard_iterate needs method = picard");
    if (K < 1) throw DomainError("Picard iteration count must be >= 1");
    require_same_grid(f.grid, cfg.grid);
    require_same_grid(g.grid, cfg.grid);

    const int m = std::max(1, static_cast<int>(std::ceil(cfg.T / cfg.dt - 1e-9)));
    std::vector<double> times(m + 1);
    for (int i = 0; i <= m; ++i) times[i] = cfg.T * i / m;

    const ShellTable shells(cfg.grid);
    std::vector<SpectralState> hom;
    {
        SpectralState st{transform(f), transform(g)};
        hom.push_back(st);
        for (int i = 1; i <= m; ++i) {
            propagate(st, shells, times[i - 1], times[i]);
            hom.push_back(st);
        }
    }
    const auto [q, r] = diagnostic_indices(cfg);

    auto to_fields = [](const std::vector<SpectralState>& s) {
        std::vector<Field> out;
        for (const auto& x : s) out.push_back(inverse_transform(x.u));
        return out;
    };
    auto norm_of = [&](const std::vector<Field>& u) {
        std::vector<double> inner;
        for (const auto& x : u) inner.push_back(space_norm(x, q, r));
        return strichartz::time_norm(inner, times, q);
    };
    auto bound_of = [&](const std::vector<SpectralState>& s, const std::vector<Field>& u) {
        double e = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) e = std::max(e, energy(s[i], times[i]));
        return norm_of(u) + e;
    };

    PicardResult res;
    res.times = times;
    std::vector<SpectralState> cur = hom;
    std::vector<Field> u = to_fields(cur);
    res.final_iterates.push_back(u.back());
    res.diagnostics.M.push_back(bound_of(cur, u));
    res.diagnostics.A.push_back(0.0);

    for (int k = 1; k <= K; ++k) {
        std::vector<Field> S;
        for (std::size_t i = 0; i < u.size(); ++i) {
            Field s = Field::zeros(cfg.grid);
            for (std::size_t j = 0; j < s.values.size(); ++j)
                s.values[j] = cfg.nonlinearity_coeff * abs_pow(u[i].values[j], cfg.p);
            S.push_back(std::move(s));
        }
        // piecewise cubic Lagrange in time through the stored nodes
        TimeSource src{cfg.grid, cfg.T, times, [&](double tau) {
                           const int j = std::clamp(static_cast<int>(std::floor(tau / cfg.T * m)), 0, m - 1);
                           const int order = std::min(m, 3);
                           const int j0 = std::clamp(j - 1, 0, m - order);
                           Field out = Field::zeros(cfg.grid);
                           for (int a = j0; a <= j0 + order; ++a) {
                               double w = 1.0;
                               for (int b = j0; b <= j0 + order; ++b)
                                   if (b != a) w *= (tau - times[b]) / (times[a] - times[b]);
                               for (std::size_t x = 0; x < out.values.size(); ++x) out.values[x] += w * S[a].values[x];
                           }
                           if (cfg.extra_forcing)
                               for (std::size_t x = 0; x < out.values.size(); ++x)
                                   out.values[x] += cfg.extra_forcing(tau, position(cfg.grid, x));
                           return out;
                       }};
        const auto duh = duhamel_states(src, times);
        std::vector<SpectralState> next = hom;
        for (std::size_t i = 0; i < next.size(); ++i)
            for (std::size_t x = 0; x < next[i].u.coeffs.size(); ++x) {
                next[i].u.coeffs[x] += duh[i].u.coeffs[x];
                next[i].u_dt.coeffs[x] += duh[i].u_dt.coeffs[x];
            }
        std::vector<Field> un = to_fields(next);
        std::vector<Field> diff;
        for (std::size_t i = 0; i < un.size(); ++i) {
            if (!std::isfinite(sup_norm(un[i])))
                throw IterationDiverged("Picard iterate became non-finite", k - 1);
            Field d = un[i];
            for (std::size_t x = 0; x < d.values.size(); ++x) d.values[x] -= u[i].values[x];
            diff.push_back(std::move(d));
        }
        const double A = norm_of(diff);
        res.diagnostics.A.push_back(A);
        res.diagnostics.M.push_back(bound_of(next, un));
        res.final_iterates.push_back(un.back());
        res.iterations = k;
        cur = std::move(next);
        u = std::move(un);
        if (A < cfg.picard_tol) break;
    }
    res.last_iterate = u;
    return res;
}

}  // namespace tricomi::nonlinear
