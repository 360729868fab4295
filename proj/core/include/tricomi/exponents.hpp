#pragma once
#include <optional>
#include <string>

namespace tricomi::exponents {

struct ExponentReport {
    int n;
    double p_crit;
    double p_conf;
    double residual;  // (3n-2)p^2 - 3np - 6 at p_crit
};

enum class Regime { subcritical, critical, supercritical_subconformal, conformal_or_above };
const char* to_string(Regime r);

enum class IndexCase { I = 1, II = 2, III = 3 };
const char* to_string(IndexCase c);

// Lebesgue indices of a Strichartz-type estimate. Dual indices are kept for
// reporting; for the global-existence tuples they are (q', r') of the source.
struct StrichartzIndices {
    double q;
    double r;
    double q_dual_src;
    double r_dual_src;
    double s;
    std::optional<IndexCase> case_tag;
};

constexpr double kRegimeTol = 1e-12;

double critical_residual(int n, double p);
double critical_exponent(int n);
double conformal_exponent(int n);
ExponentReport exponent_report(int n);
Regime classify_regime(int n, double p);

// Upper ends of the case ranges used for selection.
double case_one_upper();   // 7/3
double case_two_upper();   // (4+sqrt 17)/3
// Lower ends as printed for the overlapping ranges.
double case_two_lower();   // (7+sqrt 409)/12
double case_three_lower(); // (5+sqrt 33)/4

// Index tuple for the small-data existence argument, p in (p_crit(2), 3].
StrichartzIndices global_existence_indices(double p);

// Both accept +infinity.
bool admissible_check(double q, double r);
double strichartz_regularity(double q, double r);

}  // namespace tricomi::exponents
