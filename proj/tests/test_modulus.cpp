#include "ringmod/modulus.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ringmod;

namespace {

ModulusProblem problem(int n, double p, double r1, double r2) {
    return ModulusProblem(RingCondenser(Dimension(n), r1, r2), p);
}

} // namespace

TEST_CASE("closed form reproduces the worked values") {
    CHECK(ring_modulus_closed_form(problem(2, 3.0, 0.25, 1.0)) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
    CHECK(ring_modulus_closed_form(problem(3, 4.0, 0.125, 1.0)) ==
          doctest::Approx(32.0 * std::numbers::pi / 27.0).epsilon(1e-14));
}

TEST_CASE("closed form rejects degenerate input") {
    CHECK_THROWS_AS(problem(3, 4.0, 0.5, 0.5), ValidationError);
    CHECK_THROWS_AS(ring_modulus_closed_form(problem(3, 3.0, 0.5, 1.0)), ConformalExponentError);
    CHECK_THROWS_AS(problem(3, 1.0, 0.5, 1.0), ValidationError);
    CHECK_THROWS_AS(problem(3, 0.5, 0.5, 1.0), ValidationError);
}

TEST_CASE("closed form covers 1 < p < n") {
    // ((p-n)/(p-1)) and (r2^a - r1^a) are both negative there.
    const double v = ring_modulus_closed_form(problem(3, 2.0, 0.5, 1.0));
    // n=3, p=2: omega_2 / (1/r1 - 1/r2) = 4 pi
    CHECK(v == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("scaling law lambda^{n-p}") {
    for (int n : {2, 3, 4}) {
        for (double p : {n + 0.5, n + 1.0, 2.0 * n}) {
            const double base = ring_modulus_closed_form(problem(n, p, 0.2, 0.7));
            for (double lambda : {0.5, 2.0, 10.0}) {
                const double scaled = ring_modulus_closed_form(problem(n, p, lambda * 0.2, lambda * 0.7));
                CHECK(oracle::rel(scaled, std::pow(lambda, n - p) * base) <= 1e-10);
            }
        }
    }
}

TEST_CASE("modulus decreases as the inner radius shrinks") {
    double previous = ring_modulus_closed_form(problem(3, 4.5, 0.9, 1.0));
    for (double r1 = 0.8; r1 > 0.01; r1 *= 0.8) {
        const double v = ring_modulus_closed_form(problem(3, 4.5, r1, 1.0));
        CHECK(v < previous);
        previous = v;
    }
}

TEST_CASE("variational solver agrees with the closed form") {
    const auto res = ring_modulus_variational(problem(2, 3.0, 0.25, 1.0), 4096);
    CHECK(res.converged);
    CHECK(res.residual <= 1e-10);
    CHECK(oracle::rel(res.value, 2.0 * std::numbers::pi) <= 1e-3);
    CHECK(res.density.admissible());
    CHECK(res.density.radii.front() == 0.25);
    CHECK(res.density.radii.back() == 1.0);
    CHECK(res.density.cells() == 4096);
    for (double v : res.density.values) CHECK(v >= 0.0);
}

TEST_CASE("variational solver handles the conformal exponent") {
    const double expected = 4.0 * std::numbers::pi / (std::log(2.0) * std::log(2.0));
    CHECK(oracle::rel(conformal_ring_modulus(RingCondenser(Dimension(3), 0.5, 1.0)), expected) <= 1e-14);
    const auto coarse = ring_modulus_variational(problem(3, 3.0, 0.5, 1.0), 1024);
    const auto fine = ring_modulus_variational(problem(3, 3.0, 0.5, 1.0), 4096);
    CHECK(oracle::rel(coarse.value, expected) <= 1e-3);
    CHECK(oracle::rel(fine.value, expected) <= 1e-3);
    CHECK(oracle::rel(fine.value, expected) < oracle::rel(coarse.value, expected));
}

TEST_CASE("coarse mesh is still within ten percent") {
    const auto res = ring_modulus_variational(problem(2, 3.0, 0.25, 1.0), 4);
    CHECK(res.converged);
    CHECK(oracle::rel(res.value, 2.0 * std::numbers::pi) <= 0.1);
    CHECK_THROWS_AS(ring_modulus_variational(problem(2, 3.0, 0.25, 1.0), 3), ValidationError);
}

TEST_CASE("error shrinks under mesh refinement") {
    for (int n : {2, 3, 4}) {
        const double p = n + 1.0;
        const double exact = oracle::gehring_modulus(n, p, 0.25, 1.0);
        const double e1 = oracle::rel(ring_modulus_variational(problem(n, p, 0.25, 1.0), 1024).value, exact);
        const double e2 = oracle::rel(ring_modulus_variational(problem(n, p, 0.25, 1.0), 4096).value, exact);
        CHECK(e2 < e1);
        CHECK(e2 <= 1e-3);
    }
}

TEST_CASE("minimizing density follows r^{-(n-1)/(p-1)}") {
    const int n = 3;
    const double p = 4.5;
    const auto res = ring_modulus_variational(problem(n, p, 0.25, 1.0), 4096);
    const auto& g = res.density;
    const double k = (n - 1.0) / (p - 1.0);
    const std::size_t ref = g.cells() / 2;
    const double mid_ref = 0.5 * (g.radii[ref] + g.radii[ref + 1]);
    const std::size_t skip = g.cells() / 20;
    for (std::size_t i = skip; i + skip < g.cells(); ++i) {
        const double mid = 0.5 * (g.radii[i] + g.radii[i + 1]);
        const double predicted = std::pow(mid / mid_ref, -k);
        const double observed = g.values[i] / g.values[ref];
        CHECK(std::abs(observed - predicted) / predicted <= 0.01);
    }
}

TEST_CASE("iteration cap surfaces the best iterate") {
    VariationalOptions opts;
    opts.max_iterations = 1;
    try {
        (void)ring_modulus_variational(problem(3, 4.0, 0.25, 1.0), 256, opts);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK_FALSE(e.best().converged);
        CHECK(e.best().iterations == 1);
        CHECK(e.best().density.admissible());
        CHECK(e.best().value > 0.0);
    }
}

TEST_CASE("criterion with Q = 1 is the closed form") {
    for (int n : {2, 3, 4}) {
        for (double p : {n + 0.5, n + 1.0}) {
            for (auto [r1, r2] : {std::pair{0.25, 1.0}, std::pair{0.5, 0.9}}) {
                const auto prob = problem(n, p, r1, r2);
                const double crit = criterion_upper_bound(prob, Majorant::power_law(1.0, 0.0));
                CHECK(oracle::rel(crit, ring_modulus_closed_form(prob)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("criterion with a power-law majorant matches the substituted formula") {
    for (int n : {2, 3, 4}) {
        for (double p : {n + 0.5, n + 1.0, 2.0 * n}) {
            for (double alpha : {0.0, 1.0, 2.5}) {
                for (double q0 : {0.1, 1.0, 16.0}) {
                    const double crit = criterion_upper_bound(problem(n, p, 0.1, 0.6), Majorant::power_law(q0, alpha));
                    CHECK(oracle::rel(crit, oracle::power_law_modulus(n, p, q0, alpha, 0.1, 0.6)) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("constant q0 scales the Q = 1 value") {
    const auto prob = problem(3, 5.0, 0.2, 0.8);
    const double one = criterion_upper_bound(prob, Majorant::power_law(1.0, 0.0));
    CHECK(oracle::rel(criterion_upper_bound(prob, Majorant::power_law(7.0, 0.0)), 7.0 * one) <= 1e-10);
}

TEST_CASE("criterion is homogeneous of degree one in Q") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c_dist(0.05, 20.0);
    const auto prob = problem(3, 4.5, 0.2, 0.9);
    const auto q = Majorant::power_law(2.0, 1.5);
    const double base = criterion_upper_bound(prob, q);
    for (int i = 0; i < 20; ++i) {
        const double c = c_dist(rng);
        CHECK(oracle::rel(criterion_upper_bound(prob, q.scaled(c)), c * base) <= 1e-12);
    }
}

TEST_CASE("criterion on a tabulated power law") {
    std::vector<double> r, v;
    for (int i = 0; i <= 40; ++i) {
        const double t = 0.05 * std::pow(20.0, i / 40.0);
        r.push_back(t);
        v.push_back(3.0 * std::pow(t, -1.2));
    }
    r.back() = 1.0;
    v.back() = 3.0;
    const auto prob = problem(2, 3.5, 0.1, 0.9);
    const double crit = criterion_upper_bound(prob, Majorant::radial_table(LogLogTable(r, v)));
    CHECK(oracle::rel(crit, oracle::power_law_modulus(2, 3.5, 3.0, 1.2, 0.1, 0.9)) <= 1e-9);
}

TEST_CASE("criterion with a field majorant uses common directions") {
    // Q(x) = 2|x|^{-1} is constant on spheres, so sampling is exact.
    const auto q = Majorant::field(Point{0.0, 0.0, 0.0}, [](std::span<const double> x) {
        return 2.0 / std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    });
    CriterionOptions opts;
    opts.samples = 64;
    const double crit = criterion_upper_bound(problem(3, 4.0, 0.2, 0.7), q, opts);
    CHECK(oracle::rel(crit, oracle::power_law_modulus(3, 4.0, 2.0, 1.0, 0.2, 0.7)) <= 1e-10);

    const auto off_center = Majorant::field(Point{1.0, 0.0, 0.0}, [](std::span<const double>) { return 1.0; });
    CHECK_THROWS_AS(criterion_upper_bound(problem(3, 4.0, 0.2, 0.7), off_center, opts), ValidationError);
}

TEST_CASE("vanishing majorant is reported as degenerate") {
    const LogLogTable zeros({0.1, 0.3, 0.6, 1.0}, {1.0, 0.0, 0.0, 1.0});
    CHECK_THROWS_AS(criterion_upper_bound(problem(2, 3.0, 0.2, 0.9), Majorant::radial_table(zeros)),
                    DegenerateMajorantError);
}
