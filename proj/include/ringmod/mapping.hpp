#pragma once

#include "ringmod/geometry.hpp"
#include "ringmod/table.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ringmod {

using RadialProfile = std::function<double(double)>;

/// x -> rho(|x|) x/|x| on the ball |x| < domain_radius, with 0 -> 0.
class RadialMap {
public:
    RadialMap(Dimension dim, RadialProfile profile, std::string description, double domain_radius = 1.0);

    Dimension dim() const noexcept { return dim_; }
    const std::string& description() const noexcept { return description_; }
    double domain_radius() const noexcept { return domain_radius_; }

    /// rho(r) for r in [0, domain_radius); rho(0) = 0.
    double profile(double r) const;
    Point apply(std::span<const double> x) const;

    /// rho scaled by a constant factor, e.g. to build maps violating a bound.
    RadialMap scaled(double factor) const;

private:
    Dimension dim_;
    RadialProfile profile_;
    std::string description_;
    double domain_radius_;
};

/// Parameters of the extremal map rho(r) = c r^beta.
struct ExtremalParams {
    int n;
    double p;
    double q0;
    double alpha;

    void validate() const;
    /// beta = (alpha + p - n) / (p - n)
    double exponent() const;
    /// c = q0^{1/(n-p)} ((p-n)/(alpha+p-n))^{(p-1)/(p-n)}
    double scale() const;
};

RadialMap extremal_map(const ExtremalParams& params);

/// Radii of the image of A(0, r1, r2) under the extremal map; 0 < r1 < r2 < 1.
std::pair<double, double> image_ring_radii(const ExtremalParams& params, double r1, double r2);

/// Radial profile read from a (r, rho) table with log-log interpolation.
/// The table must be strictly increasing and positive.
RadialMap radial_map_from_table(Dimension dim, LogLogTable table, std::string description,
                                double domain_radius = 1.0);

using PointMap = std::function<Point(std::span<const double>)>;

struct MaxModulus {
    double value = 0.0;
    bool exact = true; ///< false: sampled maximum, a lower estimate of L_f(r)
    std::size_t samples = 0;
};

/// L_f(r) = max_{|x| = r} |f(x)|; exact for radial maps.
MaxModulus max_modulus(const RadialMap& map, double r);

/// Sampled lower estimate of L_f(r) for an arbitrary map on the ball.
MaxModulus max_modulus(const PointMap& map, Dimension dim, double r, std::size_t samples,
                       std::uint64_t seed, double domain_radius = 1.0);

/// m(f B(0, r)) = Omega_n rho(r)^n for a monotone radial map.
double image_ball_volume(const RadialMap& map, double r);

} // namespace ringmod
