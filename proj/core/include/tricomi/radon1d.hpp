#pragma once
#include <functional>
#include <optional>
#include <vector>

namespace tricomi::propagator {

// Data of the 1-D problem obtained by Radon-transforming a radial solution:
// initial position/velocity on the line and the source RF(s, rho1).
struct RadialLineData {
    std::function<double(double)> Rf;
    std::function<double(double)> Rg;
    std::function<double(double, double)> RF;
};

struct KernelConstants {
    double c_f, c_g, c_F;
};

// Unscaled integrals of the three-term representation at (t, rho).
struct KernelTerms {
    double f_term, g_term, F_term;
};

// Hypergeometric argument of the source kernel; lies in [0,1] inside the cone.
double kernel_z(double t, double s, double rho, double rho1);

KernelTerms kernel_terms(const RadialLineData& d, double t, double rho);

struct CalibrationReport {
    KernelConstants constants;
    double max_abs_residual;   // over all samples of all data sets
    double max_rel_residual;   // relative to the largest spectral value
    double homogeneous_max_abs;  // residual restricted to data sets without source
    int samples;
};

class RadonKernel {
public:
    bool calibrated() const { return constants_.has_value(); }
    const KernelConstants& constants() const;  // UncalibratedError before calibration
    void set_constants(const KernelConstants& c) { constants_ = c; }

    // Least-squares fit of the three constants against the 1-D spectral solver on
    // five smooth data sets; the constants are frozen afterwards.
    CalibrationReport calibrate();

    double evaluate(const RadialLineData& d, double t, double rho) const;

private:
    std::optional<KernelConstants> constants_;
};

// Calibration inputs, exposed so tests can rebuild the comparison.
std::vector<RadialLineData> calibration_data();

}  // namespace tricomi::propagator
