#pragma once
#include <complex>
#include <string>
#include <vector>

namespace tricomi::specfun {

struct AiryPair {
    double ai, bi, ai_prime, bi_prime;
};

// Fundamental system of w'' + t*lam^2*w = 0 at (t, lam).
struct MultiplierValue {
    double v1, v2, v1_dt, v2_dt;
    std::complex<double> z;  // 2i*phase(t)*lam
};

constexpr double kAiryMaxArg = 40.0;

// Characteristic phase (2/3) t^{3/2}.
double phase(double t);

// |x| <= 40, RangeError otherwise.
AiryPair airy(double x);
// Same kernel without the range guard; used by the multipliers for large |x|.
AiryPair airy_unbounded(double x);

MultiplierValue tricomi_multipliers(double t, double lam);

// F(1/6,1/6;1;z) for 0 <= z < 1.
double hypergeom_F16(double z);
// Chebyshev interpolant of F16 in w = (1-z)^{1/3}, in which F16 is analytic on
// [0,1] (F16 = analytic(1-z) + (1-z)^{2/3} analytic(1-z)). Built once from
// hypergeom_F16; valid on [0,1] including z = 1.
double hypergeom_F16_fast(double z);
// Gauss summation value Gamma(2/3)/Gamma(5/6)^2, the z -> 1 limit.
double hypergeom_F16_at_one();

// J_k(y) for |k| <= 256, |y| <= 1e4.
double bessel_j(int k, double y);

struct IdentityCheck {
    std::string name;
    double value;
    double expected;
    double error;
    bool pass;
};
std::vector<IdentityCheck> gamma_beta_identities();

}  // namespace tricomi::specfun
