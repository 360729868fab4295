#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "tricomi/grid.hpp"
#include "tricomi/specfun.hpp"

namespace tricomi::propagator {

struct ModeState {
    std::complex<double> u, u_dt;
};

// 2x2 real matrix [[a, b], [c, d]] acting on (u, u_dt).
struct Transfer {
    double a, b, c, d;
    double det() const { return a * d - b * c; }
};

// M(t2) adj(M(t1)) with M = [[v1, v2], [v1_dt, v2_dt]].
Transfer transfer_matrix(double lam, double t1, double t2);
ModeState two_point_propagate(ModeState s, double lam, double t1, double t2);

// Multipliers are radial, so they are evaluated once per distinct integer |k|^2.
class ShellTable {
public:
    explicit ShellTable(const GridSpec& g);
    const GridSpec& grid() const { return grid_; }
    std::size_t shell_count() const { return lambda_.size(); }
    int shell_of(std::size_t flat) const { return shell_of_[flat]; }
    double lambda(int shell) const { return lambda_[shell]; }
    std::vector<specfun::MultiplierValue> multipliers(double t) const;
    std::vector<Transfer> transfers(double t1, double t2) const;

private:
    GridSpec grid_;
    std::vector<int> shell_of_;
    std::vector<double> lambda_;
};

struct SpectralState {
    SpectralField u, u_dt;
};
struct FieldState {
    Field u, u_dt;
};

// u(t) = V1(t,D) f + V2(t,D) g.
Field homogeneous_solve(const Field& f, const Field& g, double t);
FieldState homogeneous_state(const Field& f, const Field& g, double t);
void propagate(SpectralState& s, const ShellTable& shells, double t1, double t2);
void propagate(SpectralState& s, const std::vector<Transfer>& per_shell, const ShellTable& shells);

// Source F(tau, x) known on [0, t_end]. Breakpoints mark where F is only
// piecewise smooth in time; quadrature panels never straddle them.
struct TimeSource {
    GridSpec grid;
    double t_end = 0.0;
    std::vector<double> breakpoints;
    std::function<Field(double)> eval;
};

constexpr double kDuhamelTol = 1e-8;

// w(t) = int_0^t (V2(t)V1(tau) - V1(t)V2(tau)) F(tau) dtau with zero data.
Field duhamel_solve(const TimeSource& F, double t);
// Same at an increasing list of times, sharing the accumulated integrals; also returns w_t.
std::vector<SpectralState> duhamel_states(const TimeSource& F, const std::vector<double>& times);

}  // namespace tricomi::propagator
