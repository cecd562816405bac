#pragma once

#include "ringmod/mapping.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ringmod {

/// Growth hypothesis q(t) <= q0 t^{-alpha} in dimension n with p > n.
struct BoundParams {
    int n;
    double p;
    double q0;
    double alpha;
    double domain_radius = 1.0; ///< d0 = dist(x0, boundary)

    void validate() const;
    double exponent() const; ///< (alpha + p - n) / (p - n)
};

/// Omega_n ((p-n)/(alpha+p-n))^{n(p-1)/(p-n)} q0^{n/(n-p)} r^{n(alpha+p-n)/(p-n)}, 0 < r < d0.
double volume_lower_bound(const BoundParams& bp, double r);

/// ((p-n)/(alpha+p-n))^{(p-1)/(p-n)} q0^{1/(n-p)}
double limsup_lower_bound(const BoundParams& bp);

enum class BoundKind { volume, limsup_ratio };

std::string_view to_string(BoundKind kind);

/// Relative slack allowed on a margin before a radius counts as violating.
inline constexpr double bound_tolerance = 1e-9;

struct BoundReport {
    BoundKind kind = BoundKind::volume;
    BoundParams params{};
    std::vector<double> radii;
    std::vector<double> bound_values;
    std::vector<double> observed_values;
    std::vector<double> margins; ///< observed - bound
    bool passed = false;
    /// false when a failing verdict only reflects a finite-grid estimate
    bool conclusive = true;
    /// volume: min relative margin; limsup: max ratio over the grid
    double observed_summary = 0.0;
    std::string map_description;
};

/// Compares image_ball_volume with volume_lower_bound at each radius.
/// Passes iff every margin >= -bound_tolerance * |bound|.
BoundReport check_volume_bound(const RadialMap& map, const BoundParams& bp, std::span<const double> radii);

/// Ratios L_f(r) / r^beta on a geometric grid against limsup_lower_bound.
/// The grid maximum stands in for the limsup: a pass is conclusive for that
/// estimate, a fail is advisory.
BoundReport check_limsup_bound(const RadialMap& map, const BoundParams& bp, double r_min, double r_max,
                               std::size_t grid_points);

inline constexpr double default_limsup_r_min = 1e-6;
inline constexpr double default_limsup_r_max = 1e-1;
inline constexpr std::size_t default_limsup_points = 64;

enum class CorollaryKind {
    pointwise_majorant, ///< Q(x) <= K |x|^{-alpha}
    mean_bounded,       ///< q(t) <= q0
    pointwise_bounded,  ///< Q(x) <= K
};

struct CorollaryParams {
    int n;
    double p;
    double constant;    ///< K or q0
    double alpha = 0.0; ///< only read by pointwise_majorant
};

double corollary_bound(CorollaryKind kind, const CorollaryParams& params);

} // namespace ringmod
