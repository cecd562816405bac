#include "ringmod/quadrature.hpp"

#include "ringmod/errors.hpp"
#include "ringmod/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ringmod {

namespace {

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;
    std::size_t evaluations = 0;
    double error = 0.0;

    double eval(double x) {
        ++evaluations;
        return f(x);
    }

    // Returns the refined integral over [a, b]; fa, fm, fb are f at a, mid, b.
    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                  int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        const double sum = left + right;
        if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) {
            error += std::abs(delta) / 15.0;
            return sum + delta / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

} // namespace

QuadratureResult integrate_log_grid(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts) {
    if (!(a > 0.0 && a < b)) throw ValidationError("interval", "requires 0 < a < b");
    if (opts.base_cells < 1) throw ValidationError("base_cells", "must be >= 1");

    const auto nodes = geometric_grid(a, b, opts.base_cells + 1);
    Simpson s{f, opts.max_depth};

    // First pass: plain Simpson per base cell, which also fixes the tolerance.
    const std::size_t cells = nodes.size() - 1;
    std::vector<double> f_nodes(nodes.size()), f_mids(cells), coarse(cells);
    for (std::size_t i = 0; i < nodes.size(); ++i) f_nodes[i] = s.eval(nodes[i]);
    double estimate = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        f_mids[i] = s.eval(0.5 * (nodes[i] + nodes[i + 1]));
        coarse[i] = (nodes[i + 1] - nodes[i]) / 6.0 * (f_nodes[i] + 4.0 * f_mids[i] + f_nodes[i + 1]);
        estimate += coarse[i];
    }
    const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(estimate));

    double total = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double share = tol * (nodes[i + 1] - nodes[i]) / (b - a);
        total += s.refine(nodes[i], nodes[i + 1], f_nodes[i], f_mids[i], f_nodes[i + 1], coarse[i], share, 0);
    }
    return {total, s.error, s.evaluations};
}

} // namespace ringmod
