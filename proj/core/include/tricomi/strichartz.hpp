#pragma once
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tricomi/exponents.hpp"
#include "tricomi/grid.hpp"
#include "tricomi/mixed_norm.hpp"

namespace tricomi::strichartz {

using propagator::GridSpec;
using propagator::SpectralField;

// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);

// ---- homogeneous Sobolev norm ----
struct HdotResult {
    double value = 0.0;
    bool mean_dropped = false;  // s < 0 and the zero mode was nonzero
};
HdotResult hdot_norm(const Field& f, double s);
HdotResult hdot_norm(const ComplexField& f, double s);

// ---- Littlewood-Paley bank ----
// beta(tau) = S(log2 tau + 1) - S(log2 tau) with S = smooth_step; supported in (1/2, 2),
// and sum_j beta(2^-j tau) telescopes to 1 on [2^j_min, 2^j_max].
struct LittlewoodPaleyBank {
    int j_min = -10, j_max = 10;
    static double beta(double tau);
    double partition(double tau) const;  // sum over the bank
    void validate() const;
};
double partition_deviation(const LittlewoodPaleyBank& bank, double tau_lo, double tau_hi, int samples);
Field lp_project(const Field& f, int j, const LittlewoodPaleyBank& bank);

struct SquareFunctionReport {
    double upper = 0.0;  // max ||f||_q / (sum_j ||f_j||_q^2)^{1/2}, q >= 2
    double lower = 0.0;  // max (sum_j ||f_j||_p^2)^{1/2} / ||f||_p, 1 < p <= 2
    int samples = 0;
};
// Random zero-mean wave packets on the 2-D grid, fixed by seed and independent of N.
SquareFunctionReport square_function_constants(const GridSpec& g, int ensemble, double q, double p, std::uint64_t seed);

// ---- model amplitude ----
// annulus cutoff: 1 on [1/2, 1], 0 outside [1/4, 2]
double annulus_cutoff(double rho);
struct ModelAmplitude {
    double operator()(double t, double rho) const;  // (1 + phase(t) rho)^{-1/6} annulus_cutoff(rho)
};
// max over the sample grid of |d^k a/d rho^k| rho^k (1 + phase(t) rho)^{1/6}, k = 0..max_order,
// by central differences
std::vector<double> amplitude_symbol_constants(const ModelAmplitude& amp, const std::vector<double>& times,
                                               int max_order = 3);

// A f at time t: multiply by exp(-i phase(t)|xi|) a(t, |xi|).
SpectralField A_spectrum(const Field& f, double t, const ModelAmplitude& amp);
ComplexField apply_A(const Field& f, double t, const ModelAmplitude& amp);
// Direct evaluation of the trigonometric series at an off-grid point (2-D).
std::complex<double> evaluate_series(const SpectralField& s, double x, double y);

// ---- angular Fourier analysis of the continuous transform ----
struct AngularCoefficients {
    std::vector<double> rho, rho_weights;           // Gauss-Legendre nodes on [rho_lo, rho_hi]
    int n_omega = 0;
    std::vector<std::vector<std::complex<double>>> c;  // c[k index][rho index], k = 0..n_omega-1 (FFT order)
    double sum_weighted = 0.0;    // (2 pi)^-1 sum_k int |c_k|^2 rho d rho  (= ||f||_2^2)
    double sum_unweighted = 0.0;  // sum_k int |c_k|^2 d rho
    double l2_sq = 0.0;           // ||f||_2^2 on the grid
    double energy(int k) const;   // int |c_k|^2 rho d rho, signed k
};
AngularCoefficients angular_coefficients(const Field& f, double rho_lo, double rho_hi, int n_rho = 64, int n_omega = 64);
AngularCoefficients angular_coefficients(const ComplexField& f, double rho_lo, double rho_hi, int n_rho = 64,
                                         int n_omega = 64);

// ---- kernel bounds ----
// alpha_t(rho) = rho * annulus_cutoff(rho) * a(t, rho); its 1-D Fourier transform at xi.
std::complex<double> alpha_hat(double t, double xi, const ModelAmplitude& amp);
struct KernelBoundReport {
    double integral = 0.0;      // int_0^{2pi} |alpha_hat(b - r cos theta)| d theta
    double rhs = 0.0;           // right-hand side of the applicable bound with C = 1
    bool small_r_case = false;  // r <= 1 or |b| >= 2r
    double ratio = 0.0;
};
KernelBoundReport kernel_bound_check(double t, double r, double b, const ModelAmplitude& amp, int N = 3);
// s-integral of the squared weighted angular integral, with weight <phase(t) - s>^{1/2 - delta}.
double claim_integral(double t, double r, double delta, const ModelAmplitude& amp);

// ---- Knapp scaling ----
struct KnappConfig {
    std::vector<double> deltas;
    double q = 7.5, r = 2.5;
    int n_t = 32;
    double window_x1 = 32.0;        // half-width in x1 - phase(t) of the evaluated region
    double window_x2_factor = 2.0;  // half-width in x2 is factor / delta
    int fft_n1 = 512, fft_n2 = 256;
    void validate() const;
};
struct KnappReport {
    std::vector<double> deltas, ratios, lower_c;
    double fitted_slope = 0.0, theory_slope = 0.0;
    double cartesian_slope = 0.0;  // same fit for the Cartesian L^q_t L^r_x norm
    std::vector<double> cartesian_ratios;
    // |D| delta^{1/6} times the mixed norm of the indicator of R, over ||f||_2
    double indicator_slope = 0.0;
    std::vector<double> indicator_ratios;
};
double knapp_theory_slope(double q, double r);
KnappReport knapp_experiment(const KnappConfig& cfg);

// ---- empirical Strichartz ratios ----
struct RatioReport {
    std::vector<int> resolutions;
    std::vector<double> max_ratio;
    int skipped = 0;  // zero members
};
struct EnsembleConfig {
    int members = 100;
    double L = 32.0;
    double T = 8.0;
    int n_t = 33;
    std::vector<int> ladder{128, 256};
    std::uint64_t seed = 1;
};
// ||A f||_{L^q_t L^r_{|x|} L^2_theta} / ||f||_2 for one f with spectrum in [1/2, 1]; empty for f = 0.
std::optional<double> homogeneous_ratio(const Field& f, double q, double r, const EnsembleConfig& cfg);
RatioReport empirical_homogeneous_ratio(const EnsembleConfig& cfg, double q, double r);
// Checks the scaling identity and both Knapp conditions for (q, r) and (q~, r~).
void require_inhomogeneous_indices(double q, double r, double qt, double rt);
RatioReport empirical_inhomogeneous_ratio(const EnsembleConfig& cfg, double q, double r, double qt, double rt);

// ---- Christ-Kiselev truncation ----
struct ChristKiselevReport {
    double norm_T = 0.0, norm_trunc = 0.0, ratio = 0.0;
};
// K is n x n row-major samples on a uniform grid of [0, 1].
ChristKiselevReport christ_kiselev_check(const std::vector<double>& K, int n, double p, double q, int ensemble,
                                         std::uint64_t seed);
std::vector<double> random_smooth_kernel(int n, std::uint64_t seed);

// ---- angular Sobolev embedding ----
struct AngularSobolevReport {
    double sup = 0.0, l2 = 0.0, dtheta_l2 = 0.0;
    double constant = 0.0;  // sup / (l2 + dtheta_l2), 0 for v = 0
};
AngularSobolevReport angular_sobolev_check(const std::vector<double>& v);

}  // namespace tricomi::strichartz
