#pragma once

#include "ringmod/errors.hpp"
#include "ringmod/geometry.hpp"
#include "ringmod/majorant.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ringmod {

/// Ring condenser with a modulus exponent p > 1.
class ModulusProblem {
public:
    ModulusProblem(RingCondenser ring, double p);

    const RingCondenser& ring() const noexcept { return ring_; }
    double p() const noexcept { return p_; }
    int n() const noexcept { return ring_.dim().value(); }

private:
    RingCondenser ring_;
    double p_;
};

/// p-modulus of the curves joining the boundary spheres of the ring:
///   omega_{n-1} ((p-n)/(p-1))^{p-1} (r2^{(p-n)/(p-1)} - r1^{(p-n)/(p-1)})^{1-p}.
/// Valid for any p > 1 except p == n, which raises ConformalExponentError.
double ring_modulus_closed_form(const ModulusProblem& prob);

/// p == n case: omega_{n-1} (ln(r2/r1))^{1-n}.
double conformal_ring_modulus(const RingCondenser& ring);

/// Piecewise-constant radial density on [r1, r2].
struct RadialDensityGrid {
    std::vector<double> radii;  ///< M+1 increasing nodes, radii.front() == r1, radii.back() == r2
    std::vector<double> values; ///< M nonnegative cell values

    std::size_t cells() const noexcept { return values.size(); }
    /// Integral of the density along a radial segment from r1 to r2.
    double line_integral() const;
    bool admissible() const { return line_integral() >= 1.0; }
};

struct VariationalResult {
    double value = 0.0;
    RadialDensityGrid density;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Raised when the solver hits its iteration cap; carries the best iterate.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(VariationalResult best);
    const VariationalResult& best() const noexcept { return best_; }

private:
    VariationalResult best_;
};

struct VariationalOptions {
    double tol = 1e-10;
    int max_iterations = 100000;
};

inline constexpr std::size_t default_cells = 4096;

/// Minimizes omega_{n-1} sum_i v_i^p int_{cell i} r^{n-1} dr over cell values
/// v_i >= 0 with sum_i v_i dr_i = 1, by projected gradient with backtracking.
/// Works on u_i = v_i dr_i, which lives on the probability simplex.
/// The residual is the sup norm of the gradient mapping relative to the
/// gradient scale.
VariationalResult ring_modulus_variational(const ModulusProblem& prob, std::size_t cells = default_cells,
                                           const VariationalOptions& opts = {});

struct CriterionOptions {
    std::size_t samples = default_mean_samples; ///< Field majorants only
    std::uint64_t seed = default_seed;
};

/// Right-hand side of the ring Q-homeomorphism criterion:
///   omega_{n-1} / (int_{r1}^{r2} dr / (r^{(n-1)/(p-1)} q(r)^{1/(p-1)}))^{p-1}.
/// Field majorants reuse one direction set for every radius, so the integrand
/// stays smooth in r. Raises DegenerateMajorantError when the inner integral
/// is zero or not finite.
double criterion_upper_bound(const ModulusProblem& prob, const Majorant& q, const CriterionOptions& opts = {});

} // namespace ringmod
