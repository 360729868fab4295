#include "tricomi/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tricomi/errors.hpp"
#include "tricomi/quadrature.hpp"

namespace tricomi::propagator {

using specfun::MultiplierValue;
using specfun::tricomi_multipliers;

namespace {
Transfer compose(const MultiplierValue& m2, const MultiplierValue& m1) {
    // adj(M1) = [[v2_dt, -v2], [-v1_dt, v1]]
    return {m2.v1 * m1.v2_dt - m2.v2 * m1.v1_dt, -m2.v1 * m1.v2 + m2.v2 * m1.v1,
            m2.v1_dt * m1.v2_dt - m2.v2_dt * m1.v1_dt, -m2.v1_dt * m1.v2 + m2.v2_dt * m1.v1};
}
}  // namespace

Transfer transfer_matrix(double lam, double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw DomainError("propagation times must be >= 0");
    if (t1 == t2) return {1.0, 0.0, 0.0, 1.0};
    return compose(tricomi_multipliers(t2, lam), tricomi_multipliers(t1, lam));
}

ModeState two_point_propagate(ModeState s, double lam, double t1, double t2) {
    const Transfer T = transfer_matrix(lam, t1, t2);
    return {T.a * s.u + T.b * s.u_dt, T.c * s.u + T.d * s.u_dt};
}

ShellTable::ShellTable(const GridSpec& g) : grid_(g) {
    g.validate();
    shell_of_.resize(g.size());
    std::unordered_map<int, int> index;
    std::vector<int> ksq;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int k2 = wavenumber_sq(g, i);
        auto [it, fresh] = index.emplace(k2, static_cast<int>(ksq.size()));
        if (fresh) ksq.push_back(k2);
        shell_of_[i] = it->second;
    }
    lambda_.resize(ksq.size());
    for (std::size_t s = 0; s < ksq.size(); ++s) lambda_[s] = g.dk() * std::sqrt(double(ksq[s]));
}

std::vector<MultiplierValue> ShellTable::multipliers(double t) const {
    std::vector<MultiplierValue> out(lambda_.size());
    for (std::size_t s = 0; s < lambda_.size(); ++s) out[s] = tricomi_multipliers(t, lambda_[s]);
    return out;
}

std::vector<Transfer> ShellTable::transfers(double t1, double t2) const {
    if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw DomainError("propagation times must be >= 0");
    const auto m1 = multipliers(t1), m2 = multipliers(t2);
    std::vector<Transfer> out(lambda_.size());
    for (std::size_t s = 0; s < lambda_.size(); ++s) out[s] = compose(m2[s], m1[s]);
    return out;
}

void propagate(SpectralState& st, const std::vector<Transfer>& per_shell, const ShellTable& shells) {
    for (std::size_t i = 0; i < st.u.coeffs.size(); ++i) {
        const Transfer& T = per_shell[shells.shell_of(i)];
        const auto u = st.u.coeffs[i], v = st.u_dt.coeffs[i];
        st.u.coeffs[i] = T.a * u + T.b * v;
        st.u_dt.coeffs[i] = T.c * u + T.d * v;
    }
}

void propagate(SpectralState& st, const ShellTable& shells, double t1, double t2) {
    if (t1 == t2) return;
    propagate(st, shells.transfers(t1, t2), shells);
}

FieldState homogeneous_state(const Field& f, const Field& g, double t) {
    require_same_grid(f.grid, g.grid);
    if (!(t >= 0.0)) throw DomainError("homogeneous_solve needs t >= 0");
    if (t == 0.0) return {f, g};
    const ShellTable shells(f.grid);
    const auto m = shells.multipliers(t);
    const SpectralField fh = transform(f), gh = transform(g);
    SpectralField u = SpectralField::zeros(f.grid), ut = SpectralField::zeros(f.grid);
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
        const MultiplierValue& mv = m[shells.shell_of(i)];
        u.coeffs[i] = mv.v1 * fh.coeffs[i] + mv.v2 * gh.coeffs[i];
        ut.coeffs[i] = mv.v1_dt * fh.coeffs[i] + mv.v2_dt * gh.coeffs[i];
    }
    return {inverse_transform(u), inverse_transform(ut)};
}

Field homogeneous_solve(const Field& f, const Field& g, double t) { return homogeneous_state(f, g, t).u; }

namespace {

using cvec = std::vector<std::complex<double>>;

// int_a^b V1(tau) F(tau), int_a^b V2(tau) F(tau) per mode, composite Gauss-Legendre with `panels` panels.
void segment_integrals(const TimeSource& F, const ShellTable& shells, const quad::Rule& gl, double a, double b,
                       int panels, cvec& A, cvec& B) {
    const std::size_t M = shells.grid().size();
    A.assign(M, 0.0);
    B.assign(M, 0.0);
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const quad::Rule r = quad::mapped(gl, a + p * w, a + (p + 1) * w);
        for (std::size_t q = 0; q < r.nodes.size(); ++q) {
            const double tau = r.nodes[q];
            const Field src = F.eval(tau);
            require_same_grid(src.grid, shells.grid());
            const SpectralField fh = transform(src);
            const auto m = shells.multipliers(tau);
            for (std::size_t i = 0; i < M; ++i) {
                const MultiplierValue& mv = m[shells.shell_of(i)];
                A[i] += r.weights[q] * mv.v1 * fh.coeffs[i];
                B[i] += r.weights[q] * mv.v2 * fh.coeffs[i];
            }
        }
    }
}

double max_abs(const cvec& v) {
    double s = 0.0;
    for (auto z : v) s = std::max(s, std::abs(z));
    return s;
}

}  // namespace

std::vector<SpectralState> duhamel_states(const TimeSource& F, const std::vector<double>& times) {
    F.grid.validate();
    if (!F.eval) throw DomainError("source has no evaluator");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0)) throw DomainError("duhamel_solve needs t >= 0");
        if (i > 0 && times[i] < times[i - 1]) throw DomainError("duhamel times must be increasing");
        if (times[i] > F.t_end) throw DomainError("source undefined on the requested interval");
    }
    const ShellTable shells(F.grid);
    static const quad::Rule gl = quad::gauss_legendre(8);
    const std::size_t M = F.grid.size();

    std::vector<double> cuts{0.0};
    for (double b : F.breakpoints)
        if (b > 0.0 && (times.empty() || b < times.back())) cuts.push_back(b);
    for (double t : times) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    cvec A(M, 0.0), B(M, 0.0), Aseg, Bseg, Aref, Bref;
    std::vector<SpectralState> out;
    std::size_t next = 0;
    auto emit = [&](double t) {
        const auto m = shells.multipliers(t);
        SpectralState st{SpectralField::zeros(F.grid), SpectralField::zeros(F.grid)};
        for (std::size_t i = 0; i < M; ++i) {
            const MultiplierValue& mv = m[shells.shell_of(i)];
            st.u.coeffs[i] = mv.v2 * A[i] - mv.v1 * B[i];
            st.u_dt.coeffs[i] = mv.v2_dt * A[i] - mv.v1_dt * B[i];
        }
        out.push_back(std::move(st));
    };
    while (next < times.size() && times[next] == 0.0) {
        emit(0.0);
        ++next;
    }
    for (std::size_t c = 1; c < cuts.size(); ++c) {
        const double a = cuts[c - 1], b = cuts[c];
        int panels = 1;
        segment_integrals(F, shells, gl, a, b, panels, Aref, Bref);
        bool converged = false;
        while (panels < 4096) {
            panels *= 2;
            segment_integrals(F, shells, gl, a, b, panels, Aseg, Bseg);
            double diff = 0.0;
            for (std::size_t i = 0; i < M; ++i)
                diff = std::max(diff, std::abs(Aseg[i] - Aref[i]) + std::abs(Bseg[i] - Bref[i]));
            const double scale = max_abs(Aseg) + max_abs(Bseg);
            std::swap(Aseg, Aref);
            std::swap(Bseg, Bref);
            if (diff <= kDuhamelTol * scale) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NumericalFailure("Duhamel quadrature did not converge");
        for (std::size_t i = 0; i < M; ++i) {
            A[i] += Aref[i];
            B[i] += Bref[i];
        }
        while (next < times.size() && times[next] == b) {
            emit(b);
            ++next;
        }
    }
    return out;
}

Field duhamel_solve(const TimeSource& F, double t) {
    auto st = duhamel_states(F, {t});
    return inverse_transform(st.front().u);
}

}  // namespace tricomi::propagator
