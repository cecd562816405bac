#include "ringmod/modulus.hpp"

#include "ringmod/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

namespace ringmod {

ModulusProblem::ModulusProblem(RingCondenser ring, double p) : ring_(std::move(ring)), p_(p) {
    if (!(std::isfinite(p) && p > 1.0)) throw ValidationError("p", "exponent must be finite and > 1");
}

double ring_modulus_closed_form(const ModulusProblem& prob) {
    const double n = prob.n();
    const double p = prob.p();
    if (p == n) throw ConformalExponentError();
    const double a = (p - n) / (p - 1.0);
    const double r1 = prob.ring().inner();
    const double r2 = prob.ring().outer();
    // r2^a - r1^a, written to avoid cancellation when a is small
    const double diff = std::pow(r1, a) * std::expm1(a * std::log(r2 / r1));
    return unit_sphere_area(prob.ring().dim()) * std::pow(a / diff, p - 1.0);
}

double conformal_ring_modulus(const RingCondenser& ring) {
    const int n = ring.dim().value();
    return unit_sphere_area(ring.dim()) * std::pow(std::log(ring.outer() / ring.inner()), 1.0 - n);
}

double RadialDensityGrid::line_integral() const {
    long double s = 0.0L;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += static_cast<long double>(values[i]) * (radii[i + 1] - radii[i]);
    }
    return static_cast<double>(s);
}

ConvergenceError::ConvergenceError(VariationalResult best)
    : Error("variational solver did not converge in " + std::to_string(best.iterations) +
            " iterations (residual " + std::to_string(best.residual) + ")"),
      best_(std::move(best)) {}

namespace {

// Euclidean projection onto { u >= 0, sum u = 1 }.
void project_to_simplex(std::vector<double>& y, std::vector<double>& scratch) {
    scratch = y;
    std::sort(scratch.begin(), scratch.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (std::size_t k = 0; k < scratch.size(); ++k) {
        cumulative += scratch[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (scratch[k] - t > 0.0) tau = t;
    }
    for (double& v : y) v = std::max(v - tau, 0.0);
}

struct RadialEnergy {
    double omega;
    double p;
    std::vector<double> coeff; // omega-free weight of u_i^p

    double value(const std::vector<double>& u) const {
        long double s = 0.0L;
        for (std::size_t i = 0; i < u.size(); ++i) {
            s += static_cast<long double>(coeff[i]) * std::pow(u[i], p);
        }
        return omega * static_cast<double>(s);
    }

    // E(v) - E(u), accurate when v is close to u
    double delta(const std::vector<double>& u, const std::vector<double>& v) const {
        long double s = 0.0L;
        for (std::size_t i = 0; i < u.size(); ++i) {
            double term = 0.0;
            if (u[i] > 0.0) {
                term = std::pow(u[i], p) * std::expm1(p * std::log1p((v[i] - u[i]) / u[i]));
            } else {
                term = std::pow(v[i], p);
            }
            s += static_cast<long double>(coeff[i]) * term;
        }
        return omega * static_cast<double>(s);
    }

    void gradient(const std::vector<double>& u, std::vector<double>& g) const {
        for (std::size_t i = 0; i < u.size(); ++i) g[i] = omega * p * coeff[i] * std::pow(u[i], p - 1.0);
    }
};

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

VariationalResult ring_modulus_variational(const ModulusProblem& prob, std::size_t cells,
                                           const VariationalOptions& opts) {
    if (cells < 4) throw ValidationError("cells", "must be >= 4");
    if (!(opts.tol > 0.0)) throw ValidationError("tol", "must be > 0");
    if (opts.max_iterations < 1) throw ValidationError("max_iterations", "must be >= 1");

    const int n = prob.n();
    const double p = prob.p();
    const double r1 = prob.ring().inner();
    const double r2 = prob.ring().outer();
    const std::size_t m = cells;

    std::vector<double> radii(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        radii[i] = r1 + (r2 - r1) * static_cast<double>(i) / static_cast<double>(m);
    }
    radii.back() = r2;

    RadialEnergy energy{unit_sphere_area(prob.ring().dim()), p, std::vector<double>(m)};
    for (std::size_t i = 0; i < m; ++i) {
        const double lo = radii[i];
        const double hi = radii[i + 1];
        const double dr = hi - lo;
        // int_lo^hi r^{n-1} dr = lo^n ((hi/lo)^n - 1) / n
        const double shell = std::pow(lo, n) * std::expm1(n * std::log1p(dr / lo)) / n;
        energy.coeff[i] = shell / std::pow(dr, p);
    }

    std::vector<double> u(m, 1.0 / static_cast<double>(m));
    std::vector<double> g(m), trial(m), scratch;
    double step = 1.0 / (energy.omega * p * sup_norm(energy.coeff) * std::pow(1.0 / static_cast<double>(m), p - 1.0) * static_cast<double>(m));
    double residual = std::numeric_limits<double>::infinity();
    int it = 0;
    bool converged = false;

    for (; it < opts.max_iterations; ++it) {
        energy.gradient(u, g);
        const double g_scale = sup_norm(g);

        // backtracking on the sufficient-decrease condition of the gradient mapping
        for (int bt = 0; bt < 200; ++bt) {
            for (std::size_t i = 0; i < m; ++i) trial[i] = u[i] - step * g[i];
            project_to_simplex(trial, scratch);
            long double lin = 0.0L, quad = 0.0L;
            for (std::size_t i = 0; i < m; ++i) {
                const double d = trial[i] - u[i];
                lin += static_cast<long double>(g[i]) * d;
                quad += static_cast<long double>(d) * d;
            }
            if (energy.delta(u, trial) <= static_cast<double>(lin) + static_cast<double>(quad) / (2.0 * step)) break;
            step *= 0.5;
        }

        double move = 0.0;
        for (std::size_t i = 0; i < m; ++i) move = std::max(move, std::abs(trial[i] - u[i]));
        residual = move / (step * g_scale);

        u.swap(trial);
        if (residual <= opts.tol) {
            converged = true;
            ++it;
            break;
        }
        step *= 2.0;
    }

    VariationalResult result;
    result.iterations = it;
    result.residual = residual;
    result.converged = converged;

    // v_i = u_i / dr_i, rescaled so the line integral is at least one
    const long double total = std::accumulate(u.begin(), u.end(), 0.0L);
    result.density.radii = radii;
    result.density.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        result.density.values[i] = static_cast<double>(u[i] / total) / (radii[i + 1] - radii[i]);
    }
    for (int guard = 0; guard < 8 && result.density.line_integral() < 1.0; ++guard) {
        for (double& v : result.density.values) v *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    }
    long double value = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
        const double dr = radii[i + 1] - radii[i];
        value += static_cast<long double>(energy.coeff[i]) * std::pow(result.density.values[i] * dr, p);
    }
    result.value = energy.omega * static_cast<double>(value);

    if (!converged) throw ConvergenceError(std::move(result));
    return result;
}

double criterion_upper_bound(const ModulusProblem& prob, const Majorant& q, const CriterionOptions& opts) {
    const double n = prob.n();
    const double p = prob.p();
    const double k = (n - 1.0) / (p - 1.0);
    const double inv = 1.0 / (p - 1.0);

    std::optional<SphereSampleSet> dirs;
    if (const auto* f = std::get_if<Field>(&q.model())) {
        if (f->center != prob.ring().center()) {
            throw ValidationError("center", "field majorant must be centered at the ring center");
        }
        dirs.emplace(sample_unit_sphere(prob.ring().dim(), opts.samples, opts.seed));
    }

    auto integrand = [&](double r) {
        const double mean = dirs ? integral_mean(q, r, *dirs).value : integral_mean(q, r).value;
        if (std::isnan(mean) || mean < 0.0) {
            throw DegenerateMajorantError("q(" + std::to_string(r) + ") is negative or NaN");
        }
        if (mean == 0.0) {
            throw DegenerateMajorantError("degenerate majorant: q vanishes at r = " + std::to_string(r) +
                                          ", the inner integral diverges");
        }
        return std::pow(r, -k) * std::pow(mean, -inv);
    };

    const double integral = integrate_log_grid(integrand, prob.ring().inner(), prob.ring().outer()).value;
    if (!(std::isfinite(integral) && integral > 0.0)) {
        throw DegenerateMajorantError("degenerate majorant: inner integral is " + std::to_string(integral));
    }
    return unit_sphere_area(prob.ring().dim()) / std::pow(integral, p - 1.0);
}

} // namespace ringmod
