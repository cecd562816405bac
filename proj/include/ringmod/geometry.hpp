#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ringmod {

/// Ambient dimension n >= 2.
class Dimension {
public:
    explicit Dimension(int n);

    int value() const noexcept { return n_; }
    friend bool operator==(Dimension, Dimension) = default;

private:
    int n_;
};

using Point = std::vector<double>;

/// Spherical annulus A(x0, r1, r2) = { r1 < |x - x0| < r2 }.
class RingCondenser {
public:
    RingCondenser(Dimension dim, double r1, double r2);
    RingCondenser(Point center, double r1, double r2);

    const Point& center() const noexcept { return center_; }
    double inner() const noexcept { return r1_; }
    double outer() const noexcept { return r2_; }
    Dimension dim() const noexcept { return dim_; }

private:
    Point center_;
    double r1_;
    double r2_;
    Dimension dim_;
};

/// Gamma function, Lanczos approximation (g = 7, 9 terms), about 15 digits.
double gamma_function(double x);

/// omega_{n-1} = 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(Dimension dim);

/// Omega_n = pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(Dimension dim);

/// Unit vectors stored row-major, one point per row of length n.
class SphereSampleSet {
public:
    SphereSampleSet(Dimension dim, std::uint64_t seed, std::vector<double> coords);

    Dimension dim() const noexcept { return dim_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::size_t count() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_.value()); }
    std::span<const double> point(std::size_t i) const;
    const std::vector<double>& coordinates() const noexcept { return coords_; }

private:
    Dimension dim_;
    std::uint64_t seed_;
    std::vector<double> coords_;
};

/// Normalized isotropic Gaussian draws; identical output for identical (dim, count, seed).
SphereSampleSet sample_unit_sphere(Dimension dim, std::size_t count, std::uint64_t seed);

/// Points lo, lo*q, ..., hi with a constant ratio q; both endpoints exact.
std::vector<double> geometric_grid(double lo, double hi, std::size_t points);

} // namespace ringmod
