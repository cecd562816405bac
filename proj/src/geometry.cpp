#include "ringmod/geometry.hpp"

#include "ringmod/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace ringmod {

Dimension::Dimension(int n) : n_(n) {
    if (n < 2) {
        throw ValidationError("n", "dimension must be >= 2, got " + std::to_string(n));
    }
}

namespace {

void check_radii(double r1, double r2) {
    if (!(std::isfinite(r1) && r1 > 0.0)) {
        throw ValidationError("r1", "inner radius must be finite and > 0");
    }
    if (!(std::isfinite(r2) && r1 < r2)) {
        throw ValidationError("r2", "ring requires r1 < r2 with r2 finite");
    }
}

} // namespace

RingCondenser::RingCondenser(Dimension dim, double r1, double r2)
    : center_(static_cast<std::size_t>(dim.value()), 0.0), r1_(r1), r2_(r2), dim_(dim) {
    check_radii(r1, r2);
}

RingCondenser::RingCondenser(Point center, double r1, double r2)
    : center_(std::move(center)), r1_(r1), r2_(r2),
      dim_(static_cast<int>(center_.size())) {
    for (double c : center_) {
        if (!std::isfinite(c)) throw ValidationError("center", "coordinates must be finite");
    }
    check_radii(r1, r2);
}

double gamma_function(double x) {
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

    if (x < 0.5) {
        // reflection
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_function(1.0 - x));
    }
    x -= 1.0;
    double a = coef[0];
    const double t = x + g + 0.5;
    for (std::size_t i = 1; i < coef.size(); ++i) a += coef[i] / (x + static_cast<double>(i));
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double unit_sphere_area(Dimension dim) {
    const double half = 0.5 * dim.value();
    return 2.0 * std::pow(std::numbers::pi, half) / gamma_function(half);
}

double unit_ball_volume(Dimension dim) {
    const double half = 0.5 * dim.value();
    return std::pow(std::numbers::pi, half) / gamma_function(half + 1.0);
}

SphereSampleSet::SphereSampleSet(Dimension dim, std::uint64_t seed, std::vector<double> coords)
    : dim_(dim), seed_(seed), coords_(std::move(coords)) {
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim.value()) != 0) {
        throw ValidationError("coords", "sample set needs a positive multiple of n coordinates");
    }
}

std::span<const double> SphereSampleSet::point(std::size_t i) const {
    const auto n = static_cast<std::size_t>(dim_.value());
    return std::span<const double>(coords_).subspan(i * n, n);
}

SphereSampleSet sample_unit_sphere(Dimension dim, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw ValidationError("count", "must be >= 1");
    const auto n = static_cast<std::size_t>(dim.value());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> coords(count * n);
    for (std::size_t i = 0; i < count; ++i) {
        double* x = coords.data() + i * n;
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                x[k] = normal(rng);
                norm2 += x[k] * x[k];
            }
        } while (norm2 < 1e-200);
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t k = 0; k < n; ++k) x[k] *= inv;
    }
    return SphereSampleSet(dim, seed, std::move(coords));
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0 && lo < hi && std::isfinite(hi))) {
        throw ValidationError("grid", "geometric grid requires 0 < lo < hi");
    }
    if (points < 2) throw ValidationError("grid_points", "must be >= 2");
    std::vector<double> grid(points);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / static_cast<double>(points - 1);
    grid.front() = lo;
    for (std::size_t i = 1; i + 1 < points; ++i) {
        grid[i] = std::exp(log_lo + step * static_cast<double>(i));
    }
    grid.back() = hi;
    return grid;
}

} // namespace ringmod
