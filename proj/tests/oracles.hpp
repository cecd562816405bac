#pragma once

// Closed-form reference values written out independently of the library.

#include <cmath>
#include <numbers>

namespace oracle {

inline double sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

inline double ball_volume(int n) {
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Image-ring modulus of the extremal map after substituting the image radii:
// omega q0 ((alpha+p-n)/(p-1))^{p-1} (r2^e - r1^e)^{1-p}, e = (alpha+p-n)/(p-1).
inline double power_law_modulus(int n, double p, double q0, double alpha, double r1, double r2) {
    const double e = (alpha + p - n) / (p - 1.0);
    return sphere_area(n) * q0 * std::pow(e, p - 1.0) * std::pow(std::pow(r2, e) - std::pow(r1, e), 1.0 - p);
}

inline double gehring_modulus(int n, double p, double r1, double r2) {
    return power_law_modulus(n, p, 1.0, 0.0, r1, r2);
}

inline double conformal_modulus(int n, double r1, double r2) {
    return sphere_area(n) * std::pow(std::log(r2 / r1), 1.0 - n);
}

inline double rel(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

} // namespace oracle
