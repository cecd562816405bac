#pragma once

#include <cstddef>
#include <functional>

namespace ringmod {

struct QuadratureOptions {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    std::size_t base_cells = 32; ///< log-spaced cells before adaptive refinement
    int max_depth = 40;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Adaptive composite Simpson on a log-spaced base grid over [a, b], 0 < a < b.
/// The error budget is max(abs_tol, rel_tol * |plain Simpson estimate|), split
/// across base cells by width.
QuadratureResult integrate_log_grid(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts = {});

} // namespace ringmod
