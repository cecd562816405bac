#include "ringmod/mapping.hpp"

#include "ringmod/errors.hpp"

#include <cmath>

namespace ringmod {

namespace {

void check_domain(double r, double domain_radius) {
    if (!(r >= 0.0 && r < domain_radius)) {
        throw DomainError("radius " + std::to_string(r) + " outside [0, " + std::to_string(domain_radius) + ")");
    }
}

} // namespace

RadialMap::RadialMap(Dimension dim, RadialProfile profile, std::string description, double domain_radius)
    : dim_(dim), profile_(std::move(profile)), description_(std::move(description)),
      domain_radius_(domain_radius) {
    if (!profile_) throw ValidationError("profile", "must be callable");
    if (!(domain_radius > 0.0)) throw ValidationError("domain_radius", "must be > 0");
}

double RadialMap::profile(double r) const {
    check_domain(r, domain_radius_);
    if (r == 0.0) return 0.0;
    return profile_(r);
}

Point RadialMap::apply(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(dim_.value())) {
        throw ValidationError("x", "point dimension does not match the map");
    }
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    const double r = std::sqrt(r2);
    Point y(x.size(), 0.0);
    if (r == 0.0) return y;
    const double s = profile(r) / r;
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = s * x[k];
    return y;
}

RadialMap RadialMap::scaled(double factor) const {
    if (!(std::isfinite(factor) && factor > 0.0)) throw ValidationError("factor", "must be in (0, inf)");
    auto inner = profile_;
    return RadialMap(dim_, [inner, factor](double r) { return factor * inner(r); },
                     std::to_string(factor) + " * (" + description_ + ")", domain_radius_);
}

void ExtremalParams::validate() const {
    if (n < 2) throw ValidationError("n", "dimension must be >= 2");
    if (!(std::isfinite(p) && p > n)) throw ValidationError("p", "extremal map requires p > n");
    if (!(std::isfinite(q0) && q0 > 0.0)) throw ValidationError("q0", "must be in (0, inf)");
    if (!(std::isfinite(alpha) && alpha >= 0.0)) throw ValidationError("alpha", "must be in [0, inf)");
    const double c = scale();
    if (!(std::isfinite(c) && c > 0.0)) throw ValidationError("q0", "scale constant is not finite and positive");
}

double ExtremalParams::exponent() const {
    return (alpha + p - n) / (p - n);
}

double ExtremalParams::scale() const {
    return std::pow(q0, 1.0 / (n - p)) * std::pow((p - n) / (alpha + p - n), (p - 1.0) / (p - n));
}

RadialMap extremal_map(const ExtremalParams& params) {
    params.validate();
    const double c = params.scale();
    const double beta = params.exponent();
    std::string desc = "extremal f0 (n=" + std::to_string(params.n) + ", p=" + std::to_string(params.p) +
                       ", q0=" + std::to_string(params.q0) + ", alpha=" + std::to_string(params.alpha) + ")";
    return RadialMap(Dimension(params.n), [c, beta](double r) { return c * std::pow(r, beta); },
                     std::move(desc));
}

std::pair<double, double> image_ring_radii(const ExtremalParams& params, double r1, double r2) {
    params.validate();
    if (!(r1 > 0.0 && r1 < r2 && r2 < 1.0)) throw ValidationError("r1, r2", "requires 0 < r1 < r2 < 1");
    const double c = params.scale();
    const double beta = params.exponent();
    return {c * std::pow(r1, beta), c * std::pow(r2, beta)};
}

RadialMap radial_map_from_table(Dimension dim, LogLogTable table, std::string description, double domain_radius) {
    for (std::size_t i = 0; i < table.values().size(); ++i) {
        if (!(table.values()[i] > 0.0)) throw ValidationError("profile", "values must be > 0");
        if (i > 0 && !(table.values()[i] > table.values()[i - 1])) {
            throw ValidationError("profile", "values must be strictly increasing");
        }
    }
    return RadialMap(dim, [t = std::move(table)](double r) { return t(r); }, std::move(description), domain_radius);
}

MaxModulus max_modulus(const RadialMap& map, double r) {
    return {map.profile(r), true, 0};
}

MaxModulus max_modulus(const PointMap& map, Dimension dim, double r, std::size_t samples, std::uint64_t seed,
                       double domain_radius) {
    check_domain(r, domain_radius);
    const auto dirs = sample_unit_sphere(dim, samples, seed);
    const auto n = static_cast<std::size_t>(dim.value());
    Point x(n);
    double best = 0.0;
    for (std::size_t i = 0; i < dirs.count(); ++i) {
        const auto u = dirs.point(i);
        for (std::size_t k = 0; k < n; ++k) x[k] = r * u[k];
        const Point y = map(x);
        double s = 0.0;
        for (double c : y) s += c * c;
        best = std::max(best, std::sqrt(s));
    }
    return {best, false, samples};
}

double image_ball_volume(const RadialMap& map, double r) {
    return unit_ball_volume(map.dim()) * std::pow(map.profile(r), map.dim().value());
}

} // namespace ringmod
