#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "tricomi/grid.hpp"

namespace tricomi::strichartz {

using propagator::ComplexField;
using propagator::Field;

// Polar grid: radii r_i = i r_max/(n_r - 1), angles 2 pi j / n_theta.
struct MixedNormSpec {
    double q = 2.0;
    double r = 2.0;
    int n_r = 64;
    int n_theta = 64;
    double r_max = 1.0;
    bool weighted_r = false;  // use r dr instead of the plain dr measure
    void validate() const;
};

// |u|^2 on the polar grid, row-major [radius][angle].
struct PolarSamples {
    int n_r = 0, n_theta = 0;
    double r_max = 0.0;
    std::vector<double> abs2;
};

// Bicubic (Keys, a = -1/2) interpolation of a periodic 2-D field.
double interpolate(const Field& u, double x, double y);
std::complex<double> interpolate(const ComplexField& u, double x, double y);

PolarSamples polar_resample(const Field& u, const MixedNormSpec& spec);
PolarSamples polar_resample(const ComplexField& u, const MixedNormSpec& spec);
PolarSamples polar_from_function(const std::function<double(double, double)>& abs2_of_r_theta,
                                 const MixedNormSpec& spec);

// (int (int |u|^2 dtheta)^{r/2} dr)^{1/r}; r = inf gives the max over radii.
double radial_angular_norm(const PolarSamples& s, const MixedNormSpec& spec);
// Time norm of the radial-angular norm over the given nodes (trapezoid; q = inf gives the max).
double time_norm(const std::vector<double>& values, const std::vector<double>& times, double q);
double mixed_norm(const std::vector<PolarSamples>& slices, const std::vector<double>& times,
                  const MixedNormSpec& spec);
double mixed_norm(const std::vector<Field>& slices, const std::vector<double>& times, const MixedNormSpec& spec);
double mixed_norm(const std::vector<ComplexField>& slices, const std::vector<double>& times,
                  const MixedNormSpec& spec);

}  // namespace tricomi::strichartz
