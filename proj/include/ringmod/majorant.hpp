#pragma once

#include "ringmod/geometry.hpp"
#include "ringmod/table.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace ringmod {

/// q(t) = q0 * t^{-alpha}
struct PowerLaw {
    double q0;
    double alpha;
};

/// Tabulated radial mean q(t), log-log interpolated.
struct RadialTable {
    LogLogTable table;
};

/// Point function Q(x) >= 0, possibly +infinity. Must be reentrant.
using FieldEvaluator = std::function<double(std::span<const double>)>;

struct Field {
    FieldEvaluator evaluator;
    Point center;
};

/// Dilatation majorant Q in one of three radial models.
class Majorant {
public:
    using Model = std::variant<PowerLaw, RadialTable, Field>;

    static Majorant power_law(double q0, double alpha);
    static Majorant radial_table(LogLogTable table);
    static Majorant field(Point center, FieldEvaluator evaluator);

    const Model& model() const noexcept { return model_; }
    bool is_exact() const noexcept { return !std::holds_alternative<Field>(model_); }

    /// c * Q for c > 0.
    Majorant scaled(double c) const;

private:
    explicit Majorant(Model m) : model_(std::move(m)) {}
    Model model_;
};

struct MeanEstimate {
    double value = 0.0;
    double std_error = 0.0;           ///< zero for exact models
    std::size_t samples = 0;          ///< zero for exact models
    std::size_t infinite_samples = 0; ///< samples where Q evaluated to +inf
    bool exact = true;
};

inline constexpr std::size_t default_mean_samples = 100000;
inline constexpr std::uint64_t default_seed = 42;

/// Mean of Q over the sphere S(x0, r).
///
/// PowerLaw and RadialTable evaluate exactly. Field averages Q over uniform
/// points x0 + r*u. If any sample is infinite the mean is +inf; if more than
/// half are, InfiniteMeanError is raised instead.
MeanEstimate integral_mean(const Majorant& q, double r, std::size_t samples = default_mean_samples,
                           std::uint64_t seed = default_seed);

/// Same, with caller-supplied directions (common random numbers across radii).
MeanEstimate integral_mean(const Majorant& q, double r, const SphereSampleSet& directions);

struct GrowthFit {
    double q0_hat = 0.0;
    double alpha_hat = 0.0;
    double max_residual = 0.0; ///< largest relative gap between envelope and a sampled mean
    bool alpha_clamped = false;
    std::vector<double> radii_used;
    std::vector<double> means;
};

/// Upper power-law envelope q(r) <= q0_hat r^{-alpha_hat} over a geometric grid.
///
/// Least squares in log-log coordinates gives the slope; alpha_hat is clamped
/// at zero, then q0_hat is raised until the envelope dominates every sample.
/// This certifies the grid radii only, not almost every radius.
GrowthFit fit_growth(const Majorant& q, double r_lo, double r_hi, std::size_t grid_points,
                     std::size_t samples = default_mean_samples, std::uint64_t seed = default_seed);

} // namespace ringmod
