#include "ringmod/majorant.hpp"

#include "ringmod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace ringmod {

Majorant Majorant::power_law(double q0, double alpha) {
    if (!(std::isfinite(q0) && q0 > 0.0)) throw ValidationError("q0", "must be in (0, inf)");
    if (!(std::isfinite(alpha) && alpha >= 0.0)) throw ValidationError("alpha", "must be in [0, inf)");
    return Majorant(PowerLaw{q0, alpha});
}

Majorant Majorant::radial_table(LogLogTable table) {
    return Majorant(RadialTable{std::move(table)});
}

Majorant Majorant::field(Point center, FieldEvaluator evaluator) {
    if (!evaluator) throw ValidationError("evaluator", "must be callable");
    Dimension dim(static_cast<int>(center.size()));
    (void)dim;
    for (double c : center) {
        if (!std::isfinite(c)) throw ValidationError("center", "coordinates must be finite");
    }
    return Majorant(Field{std::move(evaluator), std::move(center)});
}

Majorant Majorant::scaled(double c) const {
    if (!(std::isfinite(c) && c > 0.0)) throw ValidationError("scale", "must be in (0, inf)");
    struct Visitor {
        double c;
        Majorant operator()(const PowerLaw& m) const { return Majorant(PowerLaw{c * m.q0, m.alpha}); }
        Majorant operator()(const RadialTable& m) const {
            auto values = m.table.values();
            for (double& v : values) v *= c;
            return Majorant(RadialTable{LogLogTable(m.table.radii(), std::move(values))});
        }
        Majorant operator()(const Field& m) const {
            auto inner = m.evaluator;
            const double k = c;
            return Majorant(Field{[inner, k](std::span<const double> x) { return k * inner(x); }, m.center});
        }
    };
    return std::visit(Visitor{c}, model_);
}

namespace {

MeanEstimate field_mean(const Field& f, double r, const SphereSampleSet& dirs) {
    const auto n = f.center.size();
    if (static_cast<std::size_t>(dirs.dim().value()) != n) {
        throw ValidationError("directions", "sample dimension does not match the field center");
    }
    const std::size_t count = dirs.count();
    std::vector<double> x(n);
    // Welford accumulation over finite samples.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t finite = 0;
    std::size_t infinite = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const auto u = dirs.point(i);
        for (std::size_t k = 0; k < n; ++k) x[k] = f.center[k] + r * u[k];
        const double v = f.evaluator(x);
        if (std::isnan(v) || v < 0.0) {
            throw ValidationError("Q", "field evaluator returned a negative or NaN value");
        }
        if (std::isinf(v)) {
            ++infinite;
            continue;
        }
        ++finite;
        const double d = v - mean;
        mean += d / static_cast<double>(finite);
        m2 += d * (v - mean);
    }
    if (2 * infinite > count) {
        throw InfiniteMeanError("essentially infinite mean: Q = inf on " + std::to_string(infinite) +
                                " of " + std::to_string(count) + " samples at r = " + std::to_string(r));
    }
    MeanEstimate est;
    est.exact = false;
    est.samples = count;
    est.infinite_samples = infinite;
    if (infinite > 0) {
        est.value = std::numeric_limits<double>::infinity();
        est.std_error = std::numeric_limits<double>::infinity();
        return est;
    }
    est.value = mean;
    est.std_error = count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count)) : 0.0;
    return est;
}

void check_radius(double r) {
    if (!(std::isfinite(r) && r > 0.0)) throw ValidationError("r", "radius must be finite and > 0");
}

} // namespace

MeanEstimate integral_mean(const Majorant& q, double r, const SphereSampleSet& directions) {
    check_radius(r);
    if (const auto* pl = std::get_if<PowerLaw>(&q.model())) {
        return {pl->q0 * std::pow(r, -pl->alpha), 0.0, 0, 0, true};
    }
    if (const auto* tab = std::get_if<RadialTable>(&q.model())) {
        return {tab->table(r), 0.0, 0, 0, true};
    }
    return field_mean(std::get<Field>(q.model()), r, directions);
}

MeanEstimate integral_mean(const Majorant& q, double r, std::size_t samples, std::uint64_t seed) {
    check_radius(r);
    if (const auto* f = std::get_if<Field>(&q.model())) {
        const auto dirs = sample_unit_sphere(Dimension(static_cast<int>(f->center.size())), samples, seed);
        return field_mean(*f, r, dirs);
    }
    if (const auto* pl = std::get_if<PowerLaw>(&q.model())) {
        return {pl->q0 * std::pow(r, -pl->alpha), 0.0, 0, 0, true};
    }
    return {std::get<RadialTable>(q.model()).table(r), 0.0, 0, 0, true};
}

GrowthFit fit_growth(const Majorant& q, double r_lo, double r_hi, std::size_t grid_points,
                     std::size_t samples, std::uint64_t seed) {
    if (!(r_lo > 0.0 && r_lo < r_hi)) throw ValidationError("r_lo", "requires 0 < r_lo < r_hi");
    if (grid_points < 3) throw ValidationError("grid_points", "must be >= 3");

    GrowthFit fit;
    fit.radii_used = geometric_grid(r_lo, r_hi, grid_points);
    fit.means.reserve(grid_points);

    std::optional<SphereSampleSet> dirs;
    if (const auto* f = std::get_if<Field>(&q.model())) {
        dirs.emplace(sample_unit_sphere(Dimension(static_cast<int>(f->center.size())), samples, seed));
    }
    for (double r : fit.radii_used) {
        const double m = dirs ? integral_mean(q, r, *dirs).value : integral_mean(q, r).value;
        if (!(std::isfinite(m) && m > 0.0)) {
            throw DegenerateMajorantError("growth fit: mean " + std::to_string(m) +
                                          " is not finite and positive at r = " + std::to_string(r));
        }
        fit.means.push_back(m);
    }

    // log q = log c - alpha * log r
    const auto k = static_cast<double>(grid_points);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        sx += std::log(fit.radii_used[i]);
        sy += std::log(fit.means[i]);
    }
    const double mx = sx / k;
    const double my = sy / k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double dx = std::log(fit.radii_used[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(fit.means[i]) - my);
    }
    double alpha = -sxy / sxx;
    if (alpha < 0.0) {
        alpha = 0.0;
        fit.alpha_clamped = true;
    }
    fit.alpha_hat = alpha;

    double q0 = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        q0 = std::max(q0, fit.means[i] * std::pow(fit.radii_used[i], alpha));
    }
    fit.q0_hat = q0;

    double gap = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double envelope = q0 * std::pow(fit.radii_used[i], -alpha);
        gap = std::max(gap, 1.0 - fit.means[i] / envelope);
    }
    fit.max_residual = gap;
    return fit;
}

} // namespace ringmod
