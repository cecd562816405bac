#include "ringmod/bounds.hpp"
#include "ringmod/errors.hpp"
#include "ringmod/modulus.hpp"
#include "ringmod/report.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace ringmod;

namespace {

std::vector<BoundParams> sweep() {
    std::vector<BoundParams> out;
    for (int n : {2, 3, 4})
        for (double p : {n + 0.5, n + 1.0, 2.0 * n})
            for (double alpha : {0.0, 1.0, 2.5})
                for (double q0 : {0.1, 1.0, 16.0}) out.push_back({n, p, q0, alpha});
    return out;
}

RadialMap f0_for(const BoundParams& bp) {
    return extremal_map({bp.n, bp.p, bp.q0, bp.alpha});
}

} // namespace

TEST_CASE("volume bound worked values") {
    CHECK(oracle::rel(volume_lower_bound({3, 5.0, 1.0, 0.0}, 0.5), std::numbers::pi / 6.0) <= 1e-14);
    CHECK(oracle::rel(volume_lower_bound({3, 5.0, 1.0, 2.0}, 0.2), 4.0 * std::numbers::pi / 3.0 * 1e-6) <= 1e-13);
    const auto f0 = extremal_map({3, 5.0, 1.0, 2.0});
    CHECK(oracle::rel(volume_lower_bound({3, 5.0, 1.0, 2.0}, 0.2), image_ball_volume(f0, 0.2)) <= 1e-13);
}

TEST_CASE("limsup bound worked values") {
    CHECK(limsup_lower_bound({3, 5.0, 1.0, 0.0}) == 1.0);
    CHECK(oracle::rel(limsup_lower_bound({3, 5.0, 9.0, 0.0}), std::pow(9.0, -0.5)) <= 1e-15);
    CHECK(limsup_lower_bound({2, 4.0, 1.0, 2.0}) == doctest::Approx(0.353553390593).epsilon(1e-11));
    CHECK(oracle::rel(limsup_lower_bound({2, 4.0, 1.0, 2.0}), std::pow(0.5, 1.5)) <= 1e-15);
}

TEST_CASE("bounds reject p <= n and bad parameters") {
    CHECK_THROWS_AS(limsup_lower_bound({3, 3.0, 1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(limsup_lower_bound({3, 2.0, 1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(volume_lower_bound({3, 2.0, 1.0, 0.0}, 0.5), ValidationError);
    CHECK_THROWS_AS(volume_lower_bound({3, 5.0, 0.0, 0.0}, 0.5), ValidationError);
    CHECK_THROWS_AS(volume_lower_bound({3, 5.0, 1.0, -1.0}, 0.5), ValidationError);
    CHECK_THROWS_AS(volume_lower_bound({3, 5.0, 1.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(volume_lower_bound({3, 5.0, 1.0, 0.0}, 0.0), DomainError);
    CHECK_NOTHROW(volume_lower_bound({3, 5.0, 1.0, 0.0, 2.0}, 1.5));
}

TEST_CASE("volume bound = Omega_n * limsup bound^n * r^{n beta}") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const int n = 2 + static_cast<int>(u(rng) * 4);
        const BoundParams bp{n, n + 0.5 + 4.0 * u(rng), 0.05 + 20.0 * u(rng), 3.0 * u(rng)};
        const double r = 1e-3 + 0.9 * u(rng);
        const double chain =
            unit_ball_volume(Dimension(n)) * std::pow(limsup_lower_bound(bp), n) * std::pow(r, n * bp.exponent());
        CHECK(oracle::rel(volume_lower_bound(bp, r), chain) <= 1e-12);
    }
}

TEST_CASE("limsup bound strictly decreases in alpha") {
    for (const BoundParams base : {BoundParams{2, 3.0, 1.0, 0.0}, BoundParams{4, 9.0, 0.1, 0.0}}) {
        double previous = limsup_lower_bound(base);
        for (double alpha = 0.25; alpha < 6.0; alpha += 0.25) {
            auto bp = base;
            bp.alpha = alpha;
            const double v = limsup_lower_bound(bp);
            CHECK(v < previous);
            previous = v;
        }
    }
}

TEST_CASE("extremal map attains the volume bound") {
    const auto radii = geometric_grid(1e-6, 0.1, 64);
    for (const auto& bp : sweep()) {
        const auto rep = check_volume_bound(f0_for(bp), bp, radii);
        CHECK(rep.passed);
        for (std::size_t i = 0; i < radii.size(); ++i) {
            CHECK(std::abs(rep.margins[i]) <= 1e-9 * rep.bound_values[i]);
        }
    }
}

TEST_CASE("scaled extremal maps pass or fail the volume bound") {
    const BoundParams bp{3, 5.0, 1.0, 2.0};
    const auto radii = geometric_grid(1e-4, 0.9, 20);
    const auto doubled = check_volume_bound(f0_for(bp).scaled(2.0), bp, radii);
    CHECK(doubled.passed);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(doubled.margins[i] > 0.0);
        CHECK(oracle::rel(doubled.observed_values[i], 8.0 * doubled.bound_values[i]) <= 1e-12);
    }
    const auto halved = check_volume_bound(f0_for(bp).scaled(0.5), bp, radii);
    CHECK_FALSE(halved.passed);
    CHECK(halved.conclusive);
    for (double m : halved.margins) CHECK(m < 0.0);
    CHECK(halved.observed_summary == doctest::Approx(-0.875).epsilon(1e-12));
}

TEST_CASE("extremal map attains the limsup bound at every radius") {
    for (const auto& bp : sweep()) {
        const auto rep = check_limsup_bound(f0_for(bp), bp, default_limsup_r_min, default_limsup_r_max,
                                            default_limsup_points);
        CHECK(rep.passed);
        CHECK(rep.kind == BoundKind::limsup_ratio);
        REQUIRE(rep.radii.size() == default_limsup_points);
        for (std::size_t i = 0; i < rep.radii.size(); ++i) {
            CHECK(std::abs(rep.observed_values[i] - rep.bound_values[i]) <= 1e-9 * rep.bound_values[i]);
        }
    }
}

TEST_CASE("identity map ratio is one") {
    const BoundParams bp{3, 4.0, 1.0, 0.0};
    const auto rep = check_limsup_bound(f0_for(bp), bp, 1e-6, 0.1, 16);
    for (double v : rep.observed_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rep.bound_values.front() == 1.0);
}

TEST_CASE("perturbed profile approaches the bound from above") {
    const BoundParams bp{3, 5.0, 1.0, 2.0};
    const ExtremalParams ep{3, 5.0, 1.0, 2.0};
    const double c = ep.scale(), beta = ep.exponent();
    const RadialMap bumped(Dimension(3), [=](double r) { return c * std::pow(r, beta) * (1.0 + r); }, "f0 (1+r)");
    const auto rep = check_limsup_bound(bumped, bp, 1e-6, 0.1, 32);
    CHECK(rep.passed);
    CHECK(rep.observed_summary > rep.bound_values.front());
    for (std::size_t i = 1; i < rep.radii.size(); ++i) CHECK(rep.observed_values[i] > rep.observed_values[i - 1]);
    CHECK(std::abs(rep.observed_values.front() - rep.bound_values.front()) <= 2e-6 * rep.bound_values.front());
}

TEST_CASE("halved profile fails the limsup check as an advisory") {
    const BoundParams bp{3, 5.0, 1.0, 2.0};
    const auto rep = check_limsup_bound(f0_for(bp).scaled(0.5), bp, 1e-6, 0.1, 64);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(rep.conclusive);
    CHECK(oracle::rel(rep.observed_summary, 0.5 * rep.bound_values.front()) <= 1e-12);
}

TEST_CASE("check validation") {
    const BoundParams bp{3, 5.0, 1.0, 2.0};
    const auto f2 = extremal_map({2, 5.0, 1.0, 2.0});
    CHECK_THROWS_AS(check_volume_bound(f2, bp, std::vector<double>{0.1}), ValidationError);
    CHECK_THROWS_AS(check_volume_bound(f0_for(bp), bp, std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(check_limsup_bound(f0_for(bp), bp, 0.1, 1e-3, 8), ValidationError);
    CHECK_THROWS_AS(check_limsup_bound(f0_for(bp), bp, 1e-3, 1.0, 8), ValidationError);
}

TEST_CASE("corollary specializations") {
    CHECK(corollary_bound(CorollaryKind::pointwise_bounded, {3, 5.0, 1.0}) == 1.0);
    CHECK(corollary_bound(CorollaryKind::mean_bounded, {3, 5.0, 32.0}) == doctest::Approx(0.176776695297).epsilon(1e-11));
    for (const auto& bp : sweep()) {
        const double k1 = corollary_bound(CorollaryKind::pointwise_majorant, {bp.n, bp.p, bp.q0, bp.alpha});
        CHECK(oracle::rel(k1, limsup_lower_bound(bp)) <= 1e-12);
        const BoundParams flat{bp.n, bp.p, bp.q0, 0.0};
        CHECK(oracle::rel(corollary_bound(CorollaryKind::mean_bounded, {bp.n, bp.p, bp.q0}), limsup_lower_bound(flat)) <= 1e-12);
        CHECK(oracle::rel(corollary_bound(CorollaryKind::pointwise_bounded, {bp.n, bp.p, bp.q0}), limsup_lower_bound(flat)) <=
              1e-12);
    }
    CHECK_THROWS_AS(corollary_bound(CorollaryKind::pointwise_bounded, {3, 3.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(corollary_bound(CorollaryKind::mean_bounded, {3, 5.0, 0.0}), ValidationError);
}

TEST_CASE("criterion equality for the extremal map") {
    for (const auto& bp : sweep()) {
        const ExtremalParams ep{bp.n, bp.p, bp.q0, bp.alpha};
        const auto [t1, t2] = image_ring_radii(ep, 0.3, 0.8);
        const double image = ring_modulus_closed_form(ModulusProblem(RingCondenser(Dimension(bp.n), t1, t2), bp.p));
        const double crit = criterion_upper_bound(ModulusProblem(RingCondenser(Dimension(bp.n), 0.3, 0.8), bp.p),
                                                  Majorant::power_law(bp.q0, bp.alpha));
        CHECK(oracle::rel(image, crit) <= 1e-10);
    }
}

TEST_CASE("report serialization") {
    const BoundParams bp{3, 5.0, 1.0, 2.0};
    const auto rep = check_limsup_bound(f0_for(bp).scaled(0.5), bp, 1e-3, 0.1, 4);
    const auto j = to_json(rep);
    CHECK(j["kind"] == "limsup-ratio");
    CHECK(j["verdict"] == "fail");
    CHECK(j["conclusive"] == false);
    CHECK(j["radii"].size() == 4);
    CHECK(j["params"]["alpha"] == 2.0);

    std::ostringstream os;
    write_csv_header(os);
    write_csv_rows(os, rep);
    const std::string csv = os.str();
    CHECK(csv.rfind("kind,r,bound,observed,margin,relative_margin\r\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
