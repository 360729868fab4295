#include "tricomi/radon1d.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tricomi/errors.hpp"
#include "tricomi/propagator.hpp"
#include "tricomi/quadrature.hpp"
#include "tricomi/specfun.hpp"

namespace tricomi::propagator {

using specfun::phase;

double kernel_z(double t, double s, double rho, double rho1) {
    const double pt = phase(t), ps = phase(s), d = rho - rho1;
    const double den = (pt + ps) * (pt + ps) - d * d;
    if (den <= 0.0) return 0.0;
    return std::clamp(((pt - ps) * (pt - ps) - d * d) / den, 0.0, 1.0);
}

namespace {

struct Rules {
    quad::Rule w56;   // (1-x)^{-5/6} on [-1,1]
    quad::Rule w16;   // (1-x)^{-1/6}
    quad::Rule gl;
};
const Rules& rules() {
    static const Rules r{quad::gauss_jacobi(64, -5.0 / 6.0, 0.0), quad::gauss_jacobi(64, -1.0 / 6.0, 0.0),
                         quad::gauss_legendre(16)};
    return r;
}

// int_0^1 v(phi s) (1-s^2)^{-expo} ds with s = (1+x)/2, 1-s = (1-x)/2.
double homogeneous_integral(const std::function<double(double)>& data, double t, double rho, const quad::Rule& r,
                            double expo) {
    const double pt = phase(t);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double s = 0.5 * (1.0 + r.nodes[i]);
        const double v = 0.5 * (data(rho + pt * s) + data(rho - pt * s));  // d'Alembert, zero velocity
        sum += r.weights[i] * std::pow(1.0 + s, -expo) * v;
    }
    return sum * std::pow(0.5, 1.0 - expo);
}

}  // namespace

KernelTerms kernel_terms(const RadialLineData& d, double t, double rho) {
    if (!(t >= 0.0)) throw DomainError("kernel representation needs t >= 0");
    const Rules& R = rules();
    KernelTerms out{0.0, 0.0, 0.0};
    if (d.Rf) out.f_term = homogeneous_integral(d.Rf, t, rho, R.w56, 5.0 / 6.0);
    if (d.Rg) out.g_term = t * homogeneous_integral(d.Rg, t, rho, R.w16, 1.0 / 6.0);
    if (d.RF && t > 0.0) {
        const double pt = phase(t);
        // s-panels graded geometrically toward s = 0, where the kernel degenerates
        double sum = 0.0;
        double hi = t;
        for (int panel = 0; panel < 16; ++panel) {
            const double lo = (panel == 15) ? 0.0 : 0.5 * hi;
            const quad::Rule rs = quad::mapped(R.gl, lo, hi);
            for (std::size_t i = 0; i < rs.nodes.size(); ++i) {
                const double s = rs.nodes[i], ps = phase(s);
                const double a = pt + ps, delta = pt - ps;
                if (delta <= 0.0) continue;
                // (a - delta|y|) approaches 2 ps near |y| = 1: grade u = 1 - |y| down to that width
                const double eps = std::max(2.0 * ps / delta, 1e-12);
                auto integrand = [&](double y) {
                    const double prod = a * a - delta * delta * y * y;
                    const double z = std::min(delta * delta * (1.0 - y * y) / prod, 1.0);
                    return std::pow(prod, -1.0 / 6.0) * specfun::hypergeom_F16_fast(z) * d.RF(s, rho + delta * y);
                };
                double inner = 0.0;
                double uhi = 1.0;
                while (true) {
                    const bool last = uhi <= 2.0 * eps;
                    const double ulo = last ? 0.0 : 0.5 * uhi;
                    const quad::Rule ru = quad::mapped(R.gl, ulo, uhi);
                    for (std::size_t j = 0; j < ru.nodes.size(); ++j) {
                        const double y = 1.0 - ru.nodes[j];
                        inner += ru.weights[j] * (integrand(y) + integrand(-y));
                    }
                    if (last) break;
                    uhi = ulo;
                }
                sum += rs.weights[i] * delta * inner;
            }
            hi = lo;
        }
        out.F_term = sum;
    }
    return out;
}

const KernelConstants& RadonKernel::constants() const {
    if (!constants_) throw UncalibratedError("kernel constants are uncalibrated; call calibrate() first");
    return *constants_;
}

double RadonKernel::evaluate(const RadialLineData& d, double t, double rho) const {
    const KernelConstants& c = constants();
    const KernelTerms k = kernel_terms(d, t, rho);
    return c.c_f * k.f_term + c.c_g * k.g_term + c.c_F * k.F_term;
}

std::vector<RadialLineData> calibration_data() {
    auto bump = [](double c, double w) { return [c, w](double x) { return std::exp(-w * (x - c) * (x - c)); }; };
    std::vector<RadialLineData> out;
    out.push_back({bump(0.0, 4.0), nullptr, nullptr});
    out.push_back({nullptr, bump(0.3, 4.0), nullptr});
    out.push_back({nullptr, nullptr, [](double s, double x) { return (1.0 + s) * std::exp(-4.0 * x * x); }});
    out.push_back({bump(-0.2, 3.0), [](double x) { return 0.5 * std::exp(-3.0 * x * x); },
                   [](double s, double x) { return std::cos(s) * std::exp(-3.0 * (x - 0.2) * (x - 0.2)); }});
    out.push_back({[](double x) { return (1.0 + x) * std::exp(-5.0 * x * x); }, bump(0.0, 6.0),
                   [](double s, double x) { return s * s * std::exp(-5.0 * (x + 0.1) * (x + 0.1)); }});
    return out;
}

CalibrationReport RadonKernel::calibrate() {
    const GridSpec grid{1, 16.0, 1024};
    const std::vector<double> times{0.5, 1.0, 1.5};
    const std::vector<double> rhos{-1.0, -0.5, 0.0, 0.5, 1.0};
    const auto data = calibration_data();

    struct Row {
        KernelTerms k;
        double target;
        bool homogeneous;
    };
    std::vector<Row> rows;
    for (const auto& d : data) {
        auto on_grid = [&](const std::function<double(double)>& fn) {
            return Field::sample(grid, [&](const std::array<double, 3>& x) { return fn ? fn(x[0]) : 0.0; });
        };
        const Field f = on_grid(d.Rf), g = on_grid(d.Rg);
        std::vector<Field> us;
        std::vector<Field> ws;
        for (double t : times) us.push_back(homogeneous_solve(f, g, t));
        if (d.RF) {
            TimeSource src{grid, times.back(), {}, [&](double s) {
                               return Field::sample(grid, [&](const std::array<double, 3>& x) { return d.RF(s, x[0]); });
                           }};
            for (auto& st : duhamel_states(src, times)) ws.push_back(inverse_transform(st.u));
        }
        for (std::size_t ti = 0; ti < times.size(); ++ti)
            for (double rho_req : rhos) {
                // sample at the nearest grid node so no interpolation enters the comparison
                const std::size_t idx = static_cast<std::size_t>(std::lround((rho_req + grid.L) / grid.h()));
                const double rho = position(grid, idx)[0];
                double target = us[ti].values[idx];
                if (d.RF) target += ws[ti].values[idx];
                rows.push_back({kernel_terms(d, times[ti], rho), target, !d.RF});
            }
    }
    Eigen::MatrixXd A(rows.size(), 3);
    Eigen::VectorXd b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        A(i, 0) = rows[i].k.f_term;
        A(i, 1) = rows[i].k.g_term;
        A(i, 2) = rows[i].k.F_term;
        b(i) = rows[i].target;
    }
    const Eigen::Vector3d c = A.colPivHouseholderQr().solve(b);
    constants_ = KernelConstants{c(0), c(1), c(2)};

    CalibrationReport rep{*constants_, 0.0, 0.0, 0.0, static_cast<int>(rows.size())};
    double scale = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double r = std::abs(A.row(i).dot(c) - b(i));
        rep.max_abs_residual = std::max(rep.max_abs_residual, r);
        if (rows[i].homogeneous) rep.homogeneous_max_abs = std::max(rep.homogeneous_max_abs, r);
        scale = std::max(scale, std::abs(b(i)));
    }
    rep.max_rel_residual = scale > 0.0 ? rep.max_abs_residual / scale : 0.0;
    return rep;
}

}  // namespace tricomi::propagator
