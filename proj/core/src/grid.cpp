#include "tricomi/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "tricomi/errors.hpp"

namespace tricomi::propagator {

double GridSpec::dk() const { return std::numbers::pi / L; }

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int d = 0; d < n; ++d) s *= static_cast<std::size_t>(N);
    return s;
}

double GridSpec::cell_volume() const { return std::pow(h(), n); }
double GridSpec::box_volume() const { return std::pow(2.0 * L, n); }

void GridSpec::validate() const {
    if (n < 1 || n > 3) throw DomainError("grid dimension must be 1, 2 or 3");
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("grid half width must be positive");
    if (N < 8 || (N & (N - 1)) != 0) throw DomainError("points per axis must be a power of two >= 8");
}

bool operator==(const GridSpec& a, const GridSpec& b) { return a.n == b.n && a.L == b.L && a.N == b.N; }

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw DomainError("grid mismatch");
}

int signed_index(int m, int N) { return m < N / 2 ? m : m - N; }

std::array<int, 3> unflatten(const GridSpec& g, std::size_t flat) {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = g.n - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % g.N);
        flat /= g.N;
    }
    return idx;
}

std::size_t flatten(const GridSpec& g, const std::array<int, 3>& idx) {
    std::size_t flat = 0;
    for (int d = 0; d < g.n; ++d) flat = flat * g.N + static_cast<std::size_t>(idx[d]);
    return flat;
}

std::array<double, 3> position(const GridSpec& g, std::size_t flat) {
    const auto idx = unflatten(g, flat);
    std::array<double, 3> x{0, 0, 0};
    for (int d = 0; d < g.n; ++d) x[d] = -g.L + idx[d] * g.h();
    return x;
}

std::array<double, 3> frequency(const GridSpec& g, std::size_t flat) {
    const auto idx = unflatten(g, flat);
    std::array<double, 3> k{0, 0, 0};
    for (int d = 0; d < g.n; ++d) k[d] = signed_index(idx[d], g.N) * g.dk();
    return k;
}

int wavenumber_sq(const GridSpec& g, std::size_t flat) {
    const auto idx = unflatten(g, flat);
    int s = 0;
    for (int d = 0; d < g.n; ++d) {
        const int k = signed_index(idx[d], g.N);
        s += k * k;
    }
    return s;
}

double frequency_norm(const GridSpec& g, std::size_t flat) { return g.dk() * std::sqrt(double(wavenumber_sq(g, flat))); }

Field Field::zeros(const GridSpec& g) {
    g.validate();
    return {g, std::vector<double>(g.size(), 0.0)};
}
ComplexField ComplexField::zeros(const GridSpec& g) {
    g.validate();
    return {g, std::vector<std::complex<double>>(g.size(), 0.0)};
}
SpectralField SpectralField::zeros(const GridSpec& g) {
    g.validate();
    return {g, std::vector<std::complex<double>>(g.size(), 0.0)};
}

namespace {

// FFTW planning is not thread safe; execution with new-array calls is.
std::mutex plan_mutex;

fftw_plan get_plan(const GridSpec& g, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    const auto key = std::make_tuple(g.n, g.N, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<int> dims(g.n, g.N);
    std::vector<std::complex<double>> scratch(g.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft(g.n, dims.data(), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw NumericalFailure("FFTW planning failed");
    cache.emplace(key, p);
    return p;
}

// The box starts at -L, so the phase of mode k relative to the origin is (-1)^{sum k}.
double origin_phase(const GridSpec& g, std::size_t flat) {
    const auto idx = unflatten(g, flat);
    int s = 0;
    for (int d = 0; d < g.n; ++d) s += idx[d];
    return (s % 2 == 0) ? 1.0 : -1.0;
}

void forward_inplace(const GridSpec& g, std::vector<std::complex<double>>& data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(get_plan(g, FFTW_FORWARD), buf, buf);
    const double scale = 1.0 / double(g.size());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] *= scale * origin_phase(g, i);
}

void inverse_inplace(const GridSpec& g, std::vector<std::complex<double>>& data) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] *= origin_phase(g, i);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(get_plan(g, FFTW_BACKWARD), buf, buf);
}

}  // namespace

SpectralField transform(const Field& f) {
    f.grid.validate();
    if (f.values.size() != f.grid.size()) throw DomainError("field size does not match its grid");
    SpectralField s{f.grid, std::vector<std::complex<double>>(f.values.begin(), f.values.end())};
    forward_inplace(f.grid, s.coeffs);
    return s;
}

SpectralField transform(const ComplexField& f) {
    f.grid.validate();
    if (f.values.size() != f.grid.size()) throw DomainError("field size does not match its grid");
    SpectralField s{f.grid, f.values};
    forward_inplace(f.grid, s.coeffs);
    return s;
}

ComplexField inverse_transform_complex(const SpectralField& s) {
    s.grid.validate();
    if (s.coeffs.size() != s.grid.size()) throw DomainError("spectrum size does not match its grid");
    ComplexField f{s.grid, s.coeffs};
    inverse_inplace(s.grid, f.values);
    return f;
}

Field inverse_transform(const SpectralField& s) {
    const ComplexField c = inverse_transform_complex(s);
    Field f{s.grid, std::vector<double>(c.values.size())};
    for (std::size_t i = 0; i < c.values.size(); ++i) f.values[i] = c.values[i].real();
    return f;
}

void require_interior_support(const Field& f, int margin, double tol) {
    const double peak = sup_norm(f);
    if (peak == 0.0) return;
    const GridSpec& g = f.grid;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const auto idx = unflatten(g, i);
        bool edge = false;
        for (int d = 0; d < g.n; ++d) edge = edge || idx[d] < margin || idx[d] >= g.N - margin;
        if (edge && std::abs(f.values[i]) > tol * peak)
            throw SupportViolation("support violation: data reaches the edge of the periodic box");
    }
}

double integral(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.cell_volume();
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s * f.grid.cell_volume());
}

double l2_norm(const ComplexField& f) {
    double s = 0.0;
    for (auto v : f.values) s += std::norm(v);
    return std::sqrt(s * f.grid.cell_volume());
}

double sup_norm(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace tricomi::propagator
