#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "tricomi/grid.hpp"
#include "tricomi/nonlinear.hpp"

namespace tricomi::blowup {

using propagator::Field;

// Piecewise-linear radial function. Radii are nondecreasing; a repeated radius encodes a jump.
struct RadialProfile {
    int n = 2;
    std::vector<double> radii, values;
    double r_max() const { return radii.empty() ? 0.0 : radii.back(); }
    double operator()(double r) const;  // 0 beyond r_max
};

// Grid interpolation used by the angular averages (bilinear / trilinear).
double interpolate_linear(const Field& u, const std::array<double, 3>& x);

// Average of u (or of |u|^p when p > 0) over the sphere of each radius. n in {2, 3}.
RadialProfile spherical_mean(const Field& u, const std::vector<double>& radii, double p = 0.0);
// Uniform radii on [0, L - 2h].
RadialProfile spherical_mean(const Field& u, double p = 0.0);

struct JensenReport {
    std::vector<double> radii, lhs, rhs;  // |mean u|^p and mean |u|^p
    double max_violation = 0.0;           // max(lhs - rhs, 0) relative to max rhs
    double min_gap = 0.0;                 // min(rhs - lhs)
    bool pass = true;
};
JensenReport jensen_check(const Field& u, double p, double tol = 1e-12);

// Radon transform of a radial function along any hyperplane at distance rho.
double radon_radial(const RadialProfile& profile, int n, double rho);
double sphere_area(int dim);  // |S^dim|
double ball_volume(int n, double R);

struct GReport {
    double G = 0.0, Gpp = 0.0;
    double holder_ratio = 0.0;  // +inf when G = 0
};
// Hölder ratio against the ball of radius R (the support cone M + phase(t)).
// check_support = false skips the edge test, for evolved fields with small spectral tails.
GReport G_functional(const Field& u, double p, double R, bool check_support = true);
// Same, with an explicit support measure in place of the ball volume.
GReport G_functional_measure(const Field& u, double p, double support_measure);
double support_measure(const Field& u);  // cells with u != 0 times cell volume

struct RiccatiConfig {
    double p = 2.0, a = 1.0, q = 3.0;
    double K0 = 1.0, K1 = 1.0, M = 1.0, T0 = 1.0;
    double horizon = 1e3;
    double rtol = 1e-10;
    void validate() const;
};
struct RiccatiResult {
    bool blew_up = false;
    double t_star = 0.0;  // blowup time, or the horizon
    double G_end = 0.0;
    long steps = 0;
};
RiccatiResult riccati_integrate(const RiccatiConfig& cfg, double G_init, double G_slope_init);

struct C0Report {
    double c0 = 0.0, lo = 0.0, hi = 0.0;
    int runs = 0;
    double slope_factor = 1.0;  // G'(T0) = slope_factor * a * K0 * (T0+M)^(a-1)
};
C0Report c0_estimate(double p, double a, double q, double K1, double M, double T0, double horizon,
                     double rel_width = 1e-3, double slope_factor = 1.0);

// Averaging operator of the L^p step on [0, R], R = phase(t) + M, f given at R*i/(size-1).
double apply_T_at(const std::vector<double>& f, int n, double t, double M, double rho);
struct TReport {
    std::vector<double> rho, Tf;
    double measured_norm = 0.0;  // max ||Tf||_p / ||f||_p over a random nonnegative ensemble
};
TReport T_operator(const std::vector<double>& f, int n, double t, double M, double p, int ensemble = 50,
                   std::uint64_t seed = 1);

double chain_sigma(int n, double p);

struct ChainPoint {
    double t, rho;
    double r6, r12;  // ratios of the two Radon lower bounds
};
struct ChainWitnessReport {
    std::vector<ChainPoint> points;
    std::vector<double> times, r18, r20;  // per-time ratios of the |u|^p and G lower bounds
    double min_r6 = 0, min_r12 = 0, min_r18 = 0, min_r20 = 0;
    double sigma = 0.0;
    bool sigma_ok = false;
};
// Needs a trace run with store_fields. Samples times with phase(t) > 2(M+1) and rho in (0, phase(t)-M-1).
ChainWitnessReport chain_witness(const nonlinear::SimulationTrace& trace, double p, int n, double M,
                                 int rho_samples = 6);

}  // namespace tricomi::blowup
