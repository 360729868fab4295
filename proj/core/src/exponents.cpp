#include "tricomi/exponents.hpp"

#include <cmath>
#include <limits>

#include "tricomi/errors.hpp"

namespace tricomi::exponents {

namespace {
void require_dim(int n) {
    if (n < 2) throw DomainError("dimension must be >= 2, got " + std::to_string(n));
}
void require_index(double v, const char* name) {
    if (std::isnan(v) || v < 2.0)
        throw DomainError(std::string(name) + " must be >= 2 (infinity allowed)");
}
double recip(double v) { return std::isinf(v) ? 0.0 : 1.0 / v; }
}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::subcritical: return "subcritical";
        case Regime::critical: return "critical";
        case Regime::supercritical_subconformal: return "supercritical_subconformal";
        case Regime::conformal_or_above: return "conformal_or_above";
    }
    return "?";
}

const char* to_string(IndexCase c) {
    switch (c) {
        case IndexCase::I: return "I";
        case IndexCase::II: return "II";
        case IndexCase::III: return "III";
    }
    return "?";
}

double critical_residual(int n, double p) {
    return (3.0 * n - 2.0) * p * p - 3.0 * n * p - 6.0;
}

double critical_exponent(int n) {
    require_dim(n);
    const double a = 3.0 * n - 2.0, b = -3.0 * n, c = -6.0;
    return (-b + std::sqrt(b * b - 4.0 * a * c)) / (2.0 * a);
}

double conformal_exponent(int n) {
    require_dim(n);
    return (3.0 * n + 6.0) / (3.0 * n - 2.0);
}

ExponentReport exponent_report(int n) {
    const double pc = critical_exponent(n);
    return {n, pc, conformal_exponent(n), critical_residual(n, pc)};
}

Regime classify_regime(int n, double p) {
    if (!(p > 1.0)) throw DomainError("p must be > 1");
    const double pc = critical_exponent(n), pf = conformal_exponent(n);
    if (std::abs(p - pc) <= kRegimeTol) return Regime::critical;
    if (p < pc) return Regime::subcritical;
    if (p < pf - kRegimeTol) return Regime::supercritical_subconformal;
    return Regime::conformal_or_above;
}

double case_one_upper() { return 7.0 / 3.0; }
double case_two_upper() { return (4.0 + std::sqrt(17.0)) / 3.0; }
double case_two_lower() { return (7.0 + std::sqrt(409.0)) / 12.0; }
double case_three_lower() { return (5.0 + std::sqrt(33.0)) / 4.0; }

StrichartzIndices global_existence_indices(double p) {
    const double pc = critical_exponent(2);
    if (!(p > pc && p <= 3.0))
        throw DomainError("p must lie in (p_crit(2), 3]");
    StrichartzIndices out{};
    out.s = 1.0 - 4.0 / (3.0 * (p - 1.0));
    if (p <= case_one_upper()) {
        out.r = p;
        out.q = p * (p - 1.0) / (3.0 - p);
        out.case_tag = IndexCase::I;
    } else if (p <= case_two_upper()) {
        // derived from the scaling relation with r = p + 1/3; the factor is (p-1)
        out.r = p + 1.0 / 3.0;
        out.q = (3.0 * p + 1.0) * (p - 1.0) / (11.0 - 3.0 * p);
        out.case_tag = IndexCase::II;
    } else {
        out.r = p + 1.0;
        out.q = (p * p - 1.0) / (5.0 - p);
        out.case_tag = IndexCase::III;
    }
    out.q_dual_src = out.q / p;
    out.r_dual_src = out.r / p;
    return out;
}

bool admissible_check(double q, double r) {
    require_index(q, "q");
    require_index(r, "r");
    return recip(q) <= 1.0 - 1.5 * recip(r);
}

double strichartz_regularity(double q, double r) {
    require_index(q, "q");
    require_index(r, "r");
    return 2.0 * (0.5 - recip(r)) - (2.0 / 3.0) * recip(q);
}

}  // namespace tricomi::exponents
