#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tricomi/blowup.hpp"
#include "tricomi/exponents.hpp"
#include "tricomi/nonlinear.hpp"
#include "tricomi/propagator.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/strichartz.hpp"

namespace tricomi::cli {

namespace {
using json = nlohmann::json;
using propagator::Field;
using propagator::GridSpec;
constexpr double kPi = std::numbers::pi;

// ---- shared config fragments ----
std::vector<KeySpec> grid_keys(const std::string& L, const std::string& N) {
    return {{"grid.n", "2", "spatial dimension (1, 2 or 3)"},
            {"grid.L", L, "half-width of the periodic box [-L, L)^n"},
            {"grid.N", N, "points per axis, power of two >= 8"}};
}

std::vector<KeySpec> data_keys(const std::string& which, const std::string& kind, const std::string& amplitude) {
    const std::string p = "data." + which + ".";
    return {{p + "kind", kind, "zero | bump | gaussian | random"},
            {p + "amplitude", amplitude, "peak value"},
            {p + "radius", "1", "support radius (bump, random) or width (gaussian)"},
            {p + "center", "", "comma list of n coordinates; empty means the origin"}};
}

std::vector<KeySpec> concat(std::vector<std::vector<KeySpec>> parts) {
    std::vector<KeySpec> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

GridSpec grid_from(const Config& c) {
    GridSpec g{static_cast<int>(c.integer("grid.n")), c.num("grid.L"), static_cast<int>(c.integer("grid.N"))};
    g.validate();
    return g;
}

Field data_from(const Config& c, const std::string& which, const GridSpec& g, unsigned long long seed) {
    const std::string p = "data." + which + ".";
    const std::string kind = c.str(p + "kind");
    const double amp = c.num(p + "amplitude"), rad = c.num(p + "radius");
    std::vector<double> ctr = c.list(p + "center");
    if (ctr.empty()) ctr.assign(g.n, 0.0);
    if (static_cast<int>(ctr.size()) != g.n) throw ConfigError(p + "center needs " + std::to_string(g.n) + " entries");
    if (!(rad > 0.0)) throw ConfigError(p + "radius must be positive");
    auto dist2 = [&](const std::array<double, 3>& x) {
        double s = 0.0;
        for (int i = 0; i < g.n; ++i) s += (x[i] - ctr[i]) * (x[i] - ctr[i]);
        return s / (rad * rad);
    };
    auto bump = [&](const std::array<double, 3>& x) {
        const double s = dist2(x);
        return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
    };
    if (kind == "zero") return Field::zeros(g);
    if (kind == "bump") return Field::sample(g, [&](const std::array<double, 3>& x) { return amp * bump(x); });
    if (kind == "gaussian")
        return Field::sample(g, [&](const std::array<double, 3>& x) { return amp * std::exp(-dist2(x)); });
    if (kind == "random") {
        std::seed_seq seq{static_cast<unsigned>(seed), static_cast<unsigned>(seed >> 32), which == "f" ? 1u : 2u};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        struct Mode {
            double a, k[3], ph;
        };
        std::vector<Mode> modes(4);
        for (auto& m : modes) {
            m.a = 0.5 * U(rng);
            for (double& k : m.k) k = 3.0 * U(rng) / rad;
            m.ph = kPi * U(rng);
        }
        return Field::sample(g, [&](const std::array<double, 3>& x) {
            double mod = 1.0;
            for (const auto& m : modes) {
                double arg = m.ph;
                for (int i = 0; i < g.n; ++i) arg += m.k[i] * x[i];
                mod += m.a * std::cos(arg);
            }
            return amp * bump(x) * mod;
        });
    }
    throw ConfigError(p + "kind must be zero, bump, gaussian or random");
}

// Outer radius of the support cone at time T for compactly supported data, checked against the box.
void require_cone_inside(const Config& c, const GridSpec& g, double T) {
    double reach = 0.0;
    for (const std::string which : {"f", "g"}) {
        const std::string p = "data." + which + ".";
        const std::string kind = c.str(p + "kind");
        if (kind == "zero") continue;
        if (kind == "gaussian") continue;  // not compactly supported; the edge test on the data still applies
        double ctr = 0.0;
        for (double x : c.list(p + "center")) ctr = std::max(ctr, std::abs(x));
        reach = std::max(reach, ctr + c.num(p + "radius"));
    }
    if (reach > 0.0 && reach + specfun::phase(T) + 2.0 * g.h() >= g.L)
        throw SupportViolation("support cone of radius " + fmt17(reach + specfun::phase(T)) +
                               " at the horizon reaches the box edge at L = " + fmt17(g.L));
}

json indices_json(const exponents::StrichartzIndices& ix) {
    json j{{"q", ix.q}, {"r", ix.r}, {"q_dual_src", ix.q_dual_src}, {"r_dual_src", ix.r_dual_src}, {"s", ix.s}};
    if (ix.case_tag) j["case"] = exponents::to_string(*ix.case_tag);
    return j;
}

// ---- exponents ----
json run_exponents(const Config& c, const RunContext& ctx) {
    const int n = static_cast<int>(c.integer("n"));
    const auto rep = exponents::exponent_report(n);
    json out{{"n", n}, {"p_crit", rep.p_crit}, {"p_conf", rep.p_conf}, {"residual", rep.residual}};
    if (c.has("p")) {
        const double p = c.num("p");
        out["p"] = p;
        out["regime"] = exponents::to_string(exponents::classify_regime(n, p));
        if (n == 2 && p > exponents::critical_exponent(2) && p <= 3.0)
            out["indices"] = indices_json(exponents::global_existence_indices(p));
    }
    ctx.write_metadata(c.resolved(), out);
    return out;
}

// ---- specfun-test ----
json run_specfun_test(const Config& c, const RunContext& ctx) {
    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& name, double value, double expected, double error, double tol) {
        const bool pass = std::isfinite(error) && error <= tol;
        all = all && pass;
        checks.push_back({{"name", name}, {"value", value}, {"expected", expected}, {"error", error},
                          {"tolerance", tol}, {"pass", pass}});
    };
    for (const auto& id : specfun::gamma_beta_identities()) {
        all = all && id.pass;
        checks.push_back({{"name", id.name}, {"value", id.value}, {"expected", id.expected}, {"error", id.error},
                          {"pass", id.pass}});
    }
    double w_airy = 0.0;
    for (int i = 0; i <= 800; ++i) {
        const double x = -40.0 + 0.1 * i;
        const auto a = specfun::airy(x);
        w_airy = std::max(w_airy, std::abs((a.ai * a.bi_prime - a.ai_prime * a.bi) * kPi - 1.0));
    }
    add("airy_wronskian_max_rel_error", w_airy, 0.0, w_airy, 1e-9);
    double w_mult = 0.0;
    for (int i = 1; i <= 50; ++i)
        for (int j = 0; j <= 40; ++j) {
            const auto m = specfun::tricomi_multipliers(0.1 * i, 0.2 * j);
            w_mult = std::max(w_mult, std::abs(m.v1 * m.v2_dt - m.v2 * m.v1_dt - 1.0));
        }
    add("multiplier_wronskian_max_error", w_mult, 0.0, w_mult, 1e-9);
    double min_f = INFINITY, worst_drop = 0.0, prev = 0.0, fast_gap = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double z = (1.0 - 1e-6) * i / 999.0;
        const double f = specfun::hypergeom_F16(z);
        min_f = std::min(min_f, f);
        if (i) worst_drop = std::max(worst_drop, prev - f);
        prev = f;
        fast_gap = std::max(fast_gap, std::abs(specfun::hypergeom_F16_fast(z) - f));
    }
    add("F16_min_minus_one", min_f - 1.0, 0.0, std::max(0.0, 1.0 - min_f), 1e-12);
    add("F16_max_decrease", worst_drop, 0.0, std::max(0.0, worst_drop), 0.0);
    add("F16_fast_vs_integral", fast_gap, 0.0, fast_gap, 1e-10);
    json out{{"checks", checks}, {"pass", all}};
    ctx.write_metadata(c.resolved(), out);
    if (!all) throw NumericalFailure("special-function identity suite failed");
    return out;
}

// ---- propagate ----
json run_propagate(const Config& c, const RunContext& ctx) {
    const GridSpec g = grid_from(c);
    const Field f = data_from(c, "f", g, ctx.seed), gv = data_from(c, "g", g, ctx.seed);
    propagator::require_interior_support(f);
    propagator::require_interior_support(gv);
    const auto times = c.list("times");
    if (times.empty()) throw ConfigError("times must list at least one time");
    CsvWriter csv(ctx.path("propagate.csv"), {"t", "x", "u"});
    json slices = json::array();
    for (double t : times) {
        const auto st = propagator::homogeneous_state(f, gv, t);
        // line through the origin along the first axis
        std::array<int, 3> idx{0, g.N / 2, g.N / 2};
        for (int d = g.n; d < 3; ++d) idx[d] = 0;
        for (int i = 0; i < g.N; ++i) {
            idx[0] = i;
            const std::size_t flat = propagator::flatten(g, idx);
            csv.row(std::vector<double>{t, propagator::position(g, flat)[0], st.u.values[flat]});
        }
        double energy = 0.0;
        {
            auto s = propagator::transform(st.u);
            for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
                const double k = propagator::frequency_norm(g, i);
                energy += t * k * k * std::norm(s.coeffs[i]);
            }
            energy *= g.box_volume();
            const double ut = propagator::l2_norm(st.u_dt);
            energy = std::sqrt(energy + ut * ut);
        }
        slices.push_back({{"t", t}, {"l2", propagator::l2_norm(st.u)}, {"sup", propagator::sup_norm(st.u)},
                          {"energy", energy}});
    }
    json out{{"grid", {{"n", g.n}, {"L", g.L}, {"N", g.N}}}, {"slices", slices}};
    ctx.write_metadata(c.resolved(), out);
    return out;
}

// ---- simulate ----
nonlinear::SimulationConfig simulation_from(const Config& c, const GridSpec& g) {
    nonlinear::SimulationConfig s;
    s.p = c.num("p");
    s.grid = g;
    s.dt = c.num("dt");
    s.T = c.num("T");
    s.dealias = c.flag("dealias");
    s.blowup_threshold = c.num("threshold");
    const std::string m = c.str("method");
    if (m == "stepper") s.method = nonlinear::Method::stepper;
    else if (m == "picard") s.method = nonlinear::Method::picard;
    else throw ConfigError("method must be stepper or picard");
    s.output_every = static_cast<int>(c.integer("output_every"));
    s.nonlinearity_coeff = c.num("nonlinearity");
    s.amplitude = c.num("data.f.amplitude");
    if (c.has("mixed.q")) s.mixed_q = c.num("mixed.q");
    if (c.has("mixed.r")) s.mixed_r = c.num("mixed.r");
    s.validate();
    return s;
}

json run_simulate(const Config& c, const RunContext& ctx) {
    const GridSpec g = grid_from(c);
    const auto cfg = simulation_from(c, g);
    require_cone_inside(c, g, cfg.T);
    const Field f = data_from(c, "f", g, ctx.seed), gv = data_from(c, "g", g, ctx.seed);
    json out;
    if (cfg.method == nonlinear::Method::picard) {
        const auto res = nonlinear::picard_iterate(f, gv, cfg, static_cast<int>(c.integer("picard.iterations")));
        CsvWriter csv(ctx.path("simulate.csv"), {"k", "M", "A"});
        for (std::size_t k = 0; k < res.diagnostics.M.size(); ++k)
            csv.row(std::vector<double>{double(k), res.diagnostics.M[k],
                                        k < res.diagnostics.A.size() && k > 0 ? res.diagnostics.A[k] : 0.0});
        out = {{"method", "picard"}, {"iterations", res.iterations}, {"M", res.diagnostics.M}, {"A", res.diagnostics.A}};
    } else {
        const auto trace = nonlinear::evolve(f, gv, cfg);
        CsvWriter csv(ctx.path("simulate.csv"), {"t", "sup_norm", "G", "Lp_norm"});
        for (std::size_t i = 0; i < trace.times.size(); ++i)
            csv.row(std::vector<double>{trace.times[i], trace.sup_norm[i], trace.G[i], trace.Lp_norm[i]});
        out = {{"method", "stepper"},
               {"flagged", trace.flagged},
               {"completed", trace.completed},
               {"initial_sup", trace.initial_sup},
               {"mixed_norm", {{"q", trace.mixed_q}, {"r", trace.mixed_r}, {"value", trace.mixed_norm}}}};
        if (trace.flagged) out["flag_time"] = trace.flag_time;
        if (c.flag("verdict")) {
            const auto v = nonlinear::detect_blowup(trace, f, gv, cfg);
            out["verdict"] = {{"outcome", nonlinear::to_string(v.outcome)}, {"time", v.time}, {"reason", v.reason}};
        }
    }
    ctx.write_metadata(c.resolved(), out);
    return out;
}

// ---- riccati ----
json run_riccati(const Config& c, const RunContext& ctx) {
    blowup::RiccatiConfig rc;
    rc.p = c.num("p");
    rc.a = c.num("a");
    rc.q = c.num("q");
    rc.K1 = c.num("K1");
    rc.M = c.num("M");
    rc.T0 = c.num("T0");
    rc.horizon = c.num("horizon");
    rc.rtol = c.num("rtol");
    const double slope_factor = c.num("c0.slope_factor");
    std::vector<double> K0s = c.list("K0_scan");
    if (K0s.empty()) K0s.push_back(c.num("K0"));
    CsvWriter csv(ctx.path("riccati.csv"), {"K0", "verdict", "t_star", "G_end"});
    json runs = json::array();
    for (double K0 : K0s) {
        rc.K0 = K0;
        rc.validate();
        const double G0 = c.has("G_init") ? c.num("G_init") : K0 * std::pow(rc.T0 + rc.M, rc.a);
        const double V0 = c.has("G_slope") ? c.num("G_slope")
                                           : slope_factor * rc.a * K0 * std::pow(rc.T0 + rc.M, rc.a - 1.0);
        const auto r = blowup::riccati_integrate(rc, G0, V0);
        const std::string verdict = r.blew_up ? "blew_up" : "survived";
        csv.row(std::vector<std::string>{fmt17(K0), verdict, fmt17(r.t_star), fmt17(r.G_end)});
        runs.push_back({{"K0", K0}, {"verdict", verdict}, {"t_star", r.t_star}, {"steps", r.steps}});
    }
    json out{{"runs", runs}};
    if (c.flag("c0")) {
        const auto e = blowup::c0_estimate(rc.p, rc.a, rc.q, rc.K1, rc.M, rc.T0, rc.horizon, c.num("c0.rel_width"),
                                           slope_factor);
        out["c0"] = {{"c0", e.c0}, {"lo", e.lo}, {"hi", e.hi}, {"runs", e.runs}, {"slope_factor", e.slope_factor}};
    }
    ctx.write_metadata(c.resolved(), out);
    return out;
}

// ---- blowup-scan ----
json run_blowup_scan(const Config& c, const RunContext& ctx) {
    const int n = static_cast<int>(c.integer("n"));
    const auto ps = c.list("p_grid");
    if (ps.empty()) throw ConfigError("p_grid is empty");
    const GridSpec g{n, c.num("grid.L"), static_cast<int>(c.integer("grid.N"))};
    g.validate();
    const double amp = c.num("amplitude"), rad = c.num("radius");
    if (rad + specfun::phase(c.num("T")) + 2.0 * g.h() >= g.L)
        throw SupportViolation("support cone at the horizon reaches the box edge");
    const Field f = Field::sample(g, [&](const std::array<double, 3>& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += x[i] * x[i];
        s /= rad * rad;
        return s < 1.0 ? amp * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
    });
    const Field zero = Field::zeros(g);
    CsvWriter csv(ctx.path("blowup-scan.csv"), {"p", "regime", "verdict", "t_star", "sigma", "min_holder_ratio"});
    json rows = json::array();
    for (double p : ps) {
        nonlinear::SimulationConfig s;
        s.p = p;
        s.grid = g;
        s.dt = c.num("dt");
        s.T = c.num("T");
        s.blowup_threshold = c.num("threshold");
        s.output_every = static_cast<int>(c.integer("output_every"));
        s.amplitude = amp;
        s.store_fields = true;
        s.validate();
        const auto trace = nonlinear::evolve(f, zero, s);
        const auto v = nonlinear::detect_blowup(trace, f, zero, s);
        double holder = INFINITY;
        if (n >= 2) {
            for (std::size_t i = 0; i < trace.fields.size(); ++i) {
                const double R = std::min(rad + specfun::phase(trace.times[i]), g.L);
                holder = std::min(holder, blowup::G_functional(trace.fields[i], p, R, false).holder_ratio);
            }
        }
        const double sigma = blowup::chain_sigma(n, p);
        const std::string regime = exponents::to_string(exponents::classify_regime(std::max(n, 2), p));
        csv.row(std::vector<std::string>{fmt17(p), regime, nonlinear::to_string(v.outcome), fmt17(v.time), fmt17(sigma),
                                         fmt17(holder)});
        rows.push_back({{"p", p}, {"regime", regime}, {"verdict", nonlinear::to_string(v.outcome)}, {"t_star", v.time},
                        {"sigma", sigma}, {"reason", v.reason}});
    }
    json out{{"n", n}, {"rows", rows}};
    ctx.write_metadata(c.resolved(), out);
    return out;
}

// ---- strichartz ----
json run_strichartz(const Config& c, const RunContext& ctx) {
    double q, r;
    json idx;
    if (c.has("q") || c.has("r")) {
        q = c.num("q");
        r = c.num("r");
    } else {
        const auto ix = exponents::global_existence_indices(c.num("p"));
        q = ix.q;
        r = ix.r;
        idx = indices_json(ix);
    }
    strichartz::EnsembleConfig e;
    e.members = static_cast<int>(c.integer("members"));
    e.L = c.num("L");
    e.T = c.num("T");
    e.n_t = static_cast<int>(c.integer("n_t"));
    e.seed = ctx.seed;
    e.ladder.clear();
    for (double N : c.list("ladder")) e.ladder.push_back(static_cast<int>(N));
    const std::string kind = c.str("kind");
    if (kind != "homogeneous" && kind != "inhomogeneous" && kind != "both")
        throw ConfigError("kind must be homogeneous, inhomogeneous or both");
    json out{{"q", q}, {"r", r}};
    if (!idx.is_null()) out["indices"] = idx;
    auto emit = [&](const std::string& name, const strichartz::RatioReport& rep) {
        CsvWriter csv(ctx.path("strichartz_" + name + ".csv"), {"resolution", "max_ratio"});
        for (std::size_t i = 0; i < rep.resolutions.size(); ++i)
            csv.row(std::vector<double>{double(rep.resolutions[i]), rep.max_ratio[i]});
        const auto [lo, hi] = std::minmax_element(rep.max_ratio.begin(), rep.max_ratio.end());
        out[name] = {{"resolutions", rep.resolutions}, {"max_ratio", rep.max_ratio}, {"skipped", rep.skipped},
                     {"drift", *hi / *lo}};
    };
    if (kind != "inhomogeneous") emit("homogeneous", strichartz::empirical_homogeneous_ratio(e, q, r));
    if (kind != "homogeneous") emit("inhomogeneous", strichartz::empirical_inhomogeneous_ratio(e, q, r, q, r));
    ctx.write_metadata(c.resolved(), out);
    return out;
}

// ---- knapp ----
json run_knapp(const Config& c, const RunContext& ctx) {
    strichartz::KnappConfig k;
    k.q = c.num("q");
    k.r = c.num("r");
    k.deltas = c.list("deltas");
    k.n_t = static_cast<int>(c.integer("n_t"));
    k.window_x1 = c.num("window_x1");
    k.window_x2_factor = c.num("window_x2_factor");
    k.fft_n1 = static_cast<int>(c.integer("fft_n1"));
    k.fft_n2 = static_cast<int>(c.integer("fft_n2"));
    const auto rep = strichartz::knapp_experiment(k);
    CsvWriter csv(ctx.path("knapp.csv"), {"delta", "ratio", "fitted_slope", "theory_slope"});
    for (std::size_t i = 0; i < rep.deltas.size(); ++i)
        csv.row(std::vector<double>{rep.deltas[i], rep.ratios[i], rep.fitted_slope, rep.theory_slope});
    json out{{"fitted_slope", rep.fitted_slope},
             {"theory_slope", rep.theory_slope},
             {"cartesian_slope", rep.cartesian_slope},
             {"indicator_slope", rep.indicator_slope},
             {"lower_bound_c", rep.lower_c},
             {"ratios", rep.ratios}};
    ctx.write_metadata(c.resolved(), out);
    return out;
}

// ---- radon ----
json run_radon(const Config& c, const RunContext& ctx) {
    const int n = static_cast<int>(c.integer("n"));
    if (n != 2 && n != 3) throw ConfigError("radon supports n = 2 or 3");
    const std::string prof = c.str("profile");
    const int samples = static_cast<int>(c.integer("samples"));
    if (samples < 2) throw ConfigError("samples must be >= 2");
    blowup::RadialProfile P;
    P.n = n;
    std::function<double(double)> exact;
    double rho_max = 1.0;
    if (prof == "indicator") {
        P.radii = {0.0, 1.0, 1.0};
        P.values = {1.0, 1.0, 0.0};
        exact = [n](double rho) { return n == 3 ? kPi * (1.0 - rho * rho) : 2.0 * std::sqrt(std::max(0.0, 1.0 - rho * rho)); };
    } else if (prof == "gaussian") {
        const int m = 4001;
        for (int i = 0; i < m; ++i) {
            const double r = 8.0 * i / (m - 1);
            P.radii.push_back(r);
            P.values.push_back(std::exp(-r * r));
        }
        rho_max = 3.0;
        exact = [n](double rho) { return (n == 3 ? kPi : std::sqrt(kPi)) * std::exp(-rho * rho); };
    } else {
        throw ConfigError("profile must be indicator or gaussian");
    }
    CsvWriter csv(ctx.path("radon.csv"), {"rho", "radon", "closed_form"});
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double rho = rho_max * i / samples;
        const double v = blowup::radon_radial(P, n, rho), e = exact(rho);
        worst = std::max(worst, std::abs(v - e));
        csv.row(std::vector<double>{rho, v, e});
    }
    json out{{"n", n}, {"profile", prof}, {"max_abs_error", worst}};
    ctx.write_metadata(c.resolved(), out);
    return out;
}
}  // namespace

const std::vector<Command>& commands() {
    static const std::vector<Command> all{
        {"exponents", "critical and conformal exponents, regime and index tuple",
         {{"n", "2", "spatial dimension >= 2"}, {"p", "", "optional exponent to classify"}}, run_exponents},
        {"specfun-test", "special-function identity suite", {}, run_specfun_test},
        {"propagate", "linear homogeneous solve, field slices along the first axis",
         concat({grid_keys("8", "64"), data_keys("f", "bump", "1"), data_keys("g", "zero", "1"),
                 {{"times", "0,0.5,1", "output times (list or start:stop:count)"}}}),
         run_propagate},
        {"simulate", "nonlinear run with trace and blowup verdict",
         concat({grid_keys("8", "64"), data_keys("f", "bump", "1"), data_keys("g", "zero", "1"),
                 {{"p", "2", "nonlinearity exponent"},
                  {"dt", "0.01", "time step"},
                  {"T", "1", "horizon"},
                  {"dealias", "true", "2/3-rule dealiasing of the source"},
                  {"threshold", "1e6", "blowup flag on sup norm"},
                  {"method", "stepper", "stepper | picard"},
                  {"output_every", "10", "trace cadence in steps"},
                  {"nonlinearity", "1", "coefficient of |u|^p"},
                  {"verdict", "true", "rerun at dt/2 to classify the outcome"},
                  {"picard.iterations", "5", "Picard iterates (method = picard)"},
                  {"mixed.q", "", "time index of the recorded mixed norm"},
                  {"mixed.r", "", "radial index of the recorded mixed norm"}}}),
         run_simulate},
        {"riccati", "comparison ODE runs and the threshold constant",
         {{"p", "2", "power of G"},
          {"a", "1", "growth exponent of the lower bound"},
          {"q", "3", "time-weight exponent"},
          {"K0", "1", "lower-bound constant"},
          {"K1", "1", "source constant"},
          {"M", "1", "support radius"},
          {"T0", "1", "start time"},
          {"horizon", "1000", "integration horizon"},
          {"rtol", "1e-10", "step-doubling tolerance"},
          {"G_init", "", "G(T0); default K0 (T0+M)^a"},
          {"G_slope", "", "G'(T0); default slope_factor a K0 (T0+M)^(a-1)"},
          {"K0_scan", "", "list of K0 values to run instead of K0"},
          {"c0", "true", "also estimate the threshold constant"},
          {"c0.rel_width", "1e-3", "relative bracket width"},
          {"c0.slope_factor", "1", "G'(T0) scale"}},
         run_riccati},
        {"blowup-scan", "verdicts and chain exponents over a p grid",
         {{"n", "2", "spatial dimension (2 or 3)"},
          {"p_grid", "1.5,2,2.5,3", "exponents (list or start:stop:count)"},
          {"grid.L", "8", "box half-width"},
          {"grid.N", "64", "points per axis"},
          {"dt", "0.01", "time step"},
          {"T", "4", "horizon"},
          {"amplitude", "5", "bump peak"},
          {"radius", "1", "bump support radius"},
          {"threshold", "1e6", "blowup flag on sup norm"},
          {"output_every", "10", "trace cadence in steps"}},
         run_blowup_scan},
        {"strichartz", "empirical Strichartz ratio maxima per resolution",
         {{"kind", "both", "homogeneous | inhomogeneous | both"},
          {"p", "2.9", "exponent selecting the index tuple"},
          {"q", "", "explicit time index (overrides p)"},
          {"r", "", "explicit radial index (overrides p)"},
          {"members", "20", "ensemble size"},
          {"L", "32", "box half-width"},
          {"T", "8", "horizon"},
          {"n_t", "33", "time nodes"},
          {"ladder", "64,128", "grid resolutions"}},
         run_strichartz},
        {"knapp", "Knapp scaling experiment",
         {{"q", "7.5", "time index"},
          {"r", "2.5", "radial index"},
          {"deltas", "0.125,0.0625,0.03125,0.015625,0.0078125", "geometric delta sequence"},
          {"n_t", "32", "time nodes on phase(t) <= 1/delta"},
          {"window_x1", "32", "half-width in x1 - phase(t)"},
          {"window_x2_factor", "2", "half-width in x2 times delta"},
          {"fft_n1", "512", "lattice size along x1"},
          {"fft_n2", "256", "lattice size along x2"}},
         run_knapp},
        {"radon", "radial Radon transform against closed forms",
         {{"n", "3", "dimension (2 or 3)"},
          {"profile", "indicator", "indicator | gaussian"},
          {"samples", "100", "number of rho values"}},
         run_radon},
    };
    return all;
}

}  // namespace tricomi::cli
