#pragma once
#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace tricomi::propagator {

// Periodic box [-L, L)^n sampled with N points per axis.
struct GridSpec {
    int n = 2;
    double L = 1.0;
    int N = 64;

    double h() const { return 2.0 * L / N; }
    double dk() const;  // pi / L
    std::size_t size() const;
    double cell_volume() const;
    double box_volume() const;
    void validate() const;  // DomainError unless n in {1,2,3}, L > 0, N a power of two >= 8
};
bool operator==(const GridSpec& a, const GridSpec& b);

// Signed wavenumber of FFT index m (Nyquist maps to -N/2).
int signed_index(int m, int N);

// Axis indices of a flat row-major index (unused trailing entries are 0).
std::array<int, 3> unflatten(const GridSpec& g, std::size_t flat);
std::size_t flatten(const GridSpec& g, const std::array<int, 3>& idx);

std::array<double, 3> position(const GridSpec& g, std::size_t flat);
std::array<double, 3> frequency(const GridSpec& g, std::size_t flat);
double frequency_norm(const GridSpec& g, std::size_t flat);
// Integer |k|^2 of a mode; frequency_norm = dk * sqrt(k2).
int wavenumber_sq(const GridSpec& g, std::size_t flat);

struct Field {
    GridSpec grid;
    std::vector<double> values;

    static Field zeros(const GridSpec& g);
    template <class Fn>
    static Field sample(const GridSpec& g, Fn&& fn) {
        Field f = zeros(g);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(position(g, i));
        return f;
    }
};

struct ComplexField {
    GridSpec grid;
    std::vector<std::complex<double>> values;
    static ComplexField zeros(const GridSpec& g);
};

// coeffs[k] multiplies exp(i xi_k . x), so the inverse is a plain sum over modes.
struct SpectralField {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs;
    static SpectralField zeros(const GridSpec& g);
};

SpectralField transform(const Field& f);
SpectralField transform(const ComplexField& f);
Field inverse_transform(const SpectralField& s);
ComplexField inverse_transform_complex(const SpectralField& s);

// Discrete integrals over the box.
double integral(const Field& f);
double l2_norm(const Field& f);
double l2_norm(const ComplexField& f);
double sup_norm(const Field& f);

void require_same_grid(const GridSpec& a, const GridSpec& b);

// SupportViolation if |f| exceeds tol * max|f| within `margin` cells of the box edge.
void require_interior_support(const Field& f, int margin = 2, double tol = 1e-10);

}  // namespace tricomi::propagator
