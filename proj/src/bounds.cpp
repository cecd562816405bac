#include "ringmod/bounds.hpp"

#include "ringmod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ringmod {

void BoundParams::validate() const {
    if (n < 2) throw ValidationError("n", "dimension must be >= 2");
    if (!(std::isfinite(p) && p > n)) throw ValidationError("p", "bounds require p > n");
    if (!(std::isfinite(q0) && q0 > 0.0)) throw ValidationError("q0", "must be in (0, inf)");
    if (!(std::isfinite(alpha) && alpha >= 0.0)) throw ValidationError("alpha", "must be in [0, inf)");
    if (!(domain_radius > 0.0)) throw ValidationError("domain_radius", "must be > 0");
}

double BoundParams::exponent() const {
    return (alpha + p - n) / (p - n);
}

double limsup_lower_bound(const BoundParams& bp) {
    bp.validate();
    const double n = bp.n;
    return std::pow((bp.p - n) / (bp.alpha + bp.p - n), (bp.p - 1.0) / (bp.p - n)) *
           std::pow(bp.q0, 1.0 / (n - bp.p));
}

double volume_lower_bound(const BoundParams& bp, double r) {
    bp.validate();
    if (!(r > 0.0 && r < bp.domain_radius)) {
        throw DomainError("radius " + std::to_string(r) + " outside (0, " + std::to_string(bp.domain_radius) + ")");
    }
    const double n = bp.n;
    const double p = bp.p;
    return unit_ball_volume(Dimension(bp.n)) *
           std::pow((p - n) / (bp.alpha + p - n), n * (p - 1.0) / (p - n)) * std::pow(bp.q0, n / (n - p)) *
           std::pow(r, n * (bp.alpha + p - n) / (p - n));
}

std::string_view to_string(BoundKind kind) {
    return kind == BoundKind::volume ? "volume" : "limsup-ratio";
}

namespace {

void check_map(const RadialMap& map, const BoundParams& bp) {
    if (map.dim().value() != bp.n) throw ValidationError("n", "map dimension differs from bound dimension");
}

} // namespace

BoundReport check_volume_bound(const RadialMap& map, const BoundParams& bp, std::span<const double> radii) {
    bp.validate();
    check_map(map, bp);
    if (radii.empty()) throw ValidationError("radii", "grid must be non-empty");

    BoundReport rep;
    rep.kind = BoundKind::volume;
    rep.params = bp;
    rep.map_description = map.description();
    rep.radii.assign(radii.begin(), radii.end());
    rep.passed = true;
    rep.observed_summary = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        const double bound = volume_lower_bound(bp, r);
        const double observed = image_ball_volume(map, r);
        const double margin = observed - bound;
        rep.bound_values.push_back(bound);
        rep.observed_values.push_back(observed);
        rep.margins.push_back(margin);
        if (margin < -bound_tolerance * std::abs(bound)) rep.passed = false;
        rep.observed_summary = std::min(rep.observed_summary, margin / bound);
    }
    return rep;
}

BoundReport check_limsup_bound(const RadialMap& map, const BoundParams& bp, double r_min, double r_max,
                               std::size_t grid_points) {
    bp.validate();
    check_map(map, bp);
    if (!(r_max < bp.domain_radius)) throw ValidationError("r_max", "must lie inside the domain");

    BoundReport rep;
    rep.kind = BoundKind::limsup_ratio;
    rep.params = bp;
    rep.map_description = map.description();
    rep.radii = geometric_grid(r_min, r_max, grid_points);
    const double bound = limsup_lower_bound(bp);
    const double beta = bp.exponent();
    double best = 0.0;
    for (double r : rep.radii) {
        const double ratio = max_modulus(map, r).value / std::pow(r, beta);
        rep.bound_values.push_back(bound);
        rep.observed_values.push_back(ratio);
        rep.margins.push_back(ratio - bound);
        best = std::max(best, ratio);
    }
    rep.observed_summary = best;
    rep.passed = best - bound >= -bound_tolerance * bound;
    rep.conclusive = rep.passed;
    return rep;
}

double corollary_bound(CorollaryKind kind, const CorollaryParams& params) {
    if (params.n < 2) throw ValidationError("n", "dimension must be >= 2");
    if (!(std::isfinite(params.p) && params.p > params.n)) throw ValidationError("p", "bounds require p > n");
    if (!(std::isfinite(params.constant) && params.constant > 0.0)) {
        throw ValidationError(kind == CorollaryKind::mean_bounded ? "q0" : "K", "must be in (0, inf)");
    }
    const double exponent = 1.0 / (params.n - params.p);
    switch (kind) {
    case CorollaryKind::pointwise_majorant:
        // Q <= K|x|^{-alpha} gives q(t) <= K t^{-alpha}
        return limsup_lower_bound(BoundParams{params.n, params.p, params.constant, params.alpha});
    case CorollaryKind::mean_bounded:
    case CorollaryKind::pointwise_bounded:
        return std::pow(params.constant, exponent);
    }
    return 0.0;
}

} // namespace ringmod
