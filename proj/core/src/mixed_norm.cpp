#include "tricomi/mixed_norm.hpp"

#include <cmath>
#include <numbers>

#include "tricomi/errors.hpp"

namespace tricomi::strichartz {

namespace {
constexpr double kPi = std::numbers::pi;

double keys(double s) {
    s = std::abs(s);
    if (s < 1.0) return (1.5 * s - 2.5) * s * s + 1.0;
    if (s < 2.0) return ((-0.5 * s + 2.5) * s - 4.0) * s + 2.0;
    return 0.0;
}

template <class T>
T interp2(const propagator::GridSpec& g, const std::vector<T>& v, double x, double y) {
    if (g.n != 2) throw DomainError("polar resampling needs a 2-D field");
    const double fx = (x + g.L) / g.h(), fy = (y + g.L) / g.h();
    const int ix = static_cast<int>(std::floor(fx)), iy = static_cast<int>(std::floor(fy));
    const double ax = fx - ix, ay = fy - iy;
    T acc{};
    for (int a = -1; a <= 2; ++a) {
        const double wx = keys(ax - a);
        const int xi = ((ix + a) % g.N + g.N) % g.N;
        T row{};
        for (int b = -1; b <= 2; ++b) {
            const int yi = ((iy + b) % g.N + g.N) % g.N;
            row += keys(ay - b) * v[static_cast<std::size_t>(xi) * g.N + yi];
        }
        acc += wx * row;
    }
    return acc;
}

template <class F>
PolarSamples resample(const propagator::GridSpec& g, const MixedNormSpec& spec, F&& abs2_at) {
    spec.validate();
    if (g.n != 2) throw DomainError("polar resampling needs a 2-D field");
    if (spec.r_max > g.L) throw RangeError("polar grid radius exceeds the box");
    PolarSamples s{spec.n_r, spec.n_theta, spec.r_max, std::vector<double>(std::size_t(spec.n_r) * spec.n_theta)};
    for (int i = 0; i < spec.n_r; ++i) {
        const double rad = spec.r_max * i / (spec.n_r - 1);
        for (int j = 0; j < spec.n_theta; ++j) {
            const double th = 2.0 * kPi * j / spec.n_theta;
            const double v = abs2_at(rad * std::cos(th), rad * std::sin(th));
            if (!std::isfinite(v)) throw NumericalFailure("non-finite sample in mixed norm");
            s.abs2[std::size_t(i) * spec.n_theta + j] = v;
        }
    }
    return s;
}
}  // namespace

void MixedNormSpec::validate() const {
    if (!(q >= 1.0) || !(r >= 1.0)) throw DomainError("mixed norm indices must be >= 1");
    if (n_r < 2 || n_theta < 2 || n_theta % 2 != 0) throw DomainError("polar grid needs n_r >= 2 and even n_theta");
    if (!(r_max > 0.0)) throw DomainError("polar grid radius must be positive");
}

double interpolate(const Field& u, double x, double y) { return interp2(u.grid, u.values, x, y); }
std::complex<double> interpolate(const ComplexField& u, double x, double y) { return interp2(u.grid, u.values, x, y); }

PolarSamples polar_resample(const Field& u, const MixedNormSpec& spec) {
    return resample(u.grid, spec, [&](double x, double y) {
        const double v = interpolate(u, x, y);
        return v * v;
    });
}

PolarSamples polar_resample(const ComplexField& u, const MixedNormSpec& spec) {
    return resample(u.grid, spec, [&](double x, double y) { return std::norm(interpolate(u, x, y)); });
}

PolarSamples polar_from_function(const std::function<double(double, double)>& abs2_of_r_theta,
                                 const MixedNormSpec& spec) {
    spec.validate();
    PolarSamples s{spec.n_r, spec.n_theta, spec.r_max, std::vector<double>(std::size_t(spec.n_r) * spec.n_theta)};
    for (int i = 0; i < spec.n_r; ++i)
        for (int j = 0; j < spec.n_theta; ++j)
            s.abs2[std::size_t(i) * spec.n_theta + j] =
                abs2_of_r_theta(spec.r_max * i / (spec.n_r - 1), 2.0 * kPi * j / spec.n_theta);
    return s;
}

double radial_angular_norm(const PolarSamples& s, const MixedNormSpec& spec) {
    const double dr = s.r_max / (s.n_r - 1), dth = 2.0 * kPi / s.n_theta;
    double acc = 0.0;
    for (int i = 0; i < s.n_r; ++i) {
        double ang = 0.0;
        for (int j = 0; j < s.n_theta; ++j) ang += s.abs2[std::size_t(i) * s.n_theta + j];
        const double l2 = std::sqrt(ang * dth);
        if (std::isinf(spec.r)) {
            acc = std::max(acc, l2);
            continue;
        }
        double w = (i == 0 || i == s.n_r - 1) ? 0.5 * dr : dr;
        if (spec.weighted_r) w *= dr * i;
        acc += w * std::pow(l2, spec.r);
    }
    return std::isinf(spec.r) ? acc : std::pow(acc, 1.0 / spec.r);
}

double time_norm(const std::vector<double>& values, const std::vector<double>& times, double q) {
    if (values.size() != times.size() || values.empty()) throw DomainError("time nodes and values disagree");
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, v);
        return m;
    }
    if (values.size() == 1) return values.front();
    double acc = 0.0;
    for (std::size_t k = 1; k < values.size(); ++k)
        acc += 0.5 * (times[k] - times[k - 1]) * (std::pow(values[k], q) + std::pow(values[k - 1], q));
    return std::pow(acc, 1.0 / q);
}

double mixed_norm(const std::vector<PolarSamples>& slices, const std::vector<double>& times,
                  const MixedNormSpec& spec) {
    spec.validate();
    std::vector<double> inner;
    inner.reserve(slices.size());
    for (const auto& s : slices) inner.push_back(radial_angular_norm(s, spec));
    return time_norm(inner, times, spec.q);
}

double mixed_norm(const std::vector<Field>& slices, const std::vector<double>& times, const MixedNormSpec& spec) {
    std::vector<PolarSamples> s;
    for (const auto& f : slices) s.push_back(polar_resample(f, spec));
    return mixed_norm(s, times, spec);
}

double mixed_norm(const std::vector<ComplexField>& slices, const std::vector<double>& times,
                  const MixedNormSpec& spec) {
    std::vector<PolarSamples> s;
    for (const auto& f : slices) s.push_back(polar_resample(f, spec));
    return mixed_norm(s, times, spec);
}

}  // namespace tricomi::strichartz
