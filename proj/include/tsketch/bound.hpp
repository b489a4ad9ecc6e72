#pragma once

#include <cstddef>
#include <vector>

#include "tsketch/tsvd.hpp"

namespace tsketch {

/// f(s, t) = s / (t - s - 1).
double f_ratio(double s, double t);

struct BoundRow {
    std::size_t rho = 0;
    double tail = 0.0;       // tau_{rho+1}^2
    double product = 0.0;    // (1 + f(k, l)) (1 + f(rho, k)) tau_{rho+1}^2
    double ratio_form = 0.0;  // (k / (l - k - 1)) (k / (k - rho - 1)) tau_{rho+1}^2
};

/// Expected squared-error bound for the single-pass sketch, minimized over
/// rho in [0, k-2].
struct BoundReport {
    std::size_t rho_star = 0;
    double bound_product = 0.0;
    /// The alternative closed form evaluated at rho_star. It does not equal
    /// bound_product in general; both are reported.
    double bound_ratio_form = 0.0;
    std::vector<BoundRow> table;
};

/// Requires k >= 2 and l > k + 1 (InvalidParams otherwise). Ties in the
/// minimization go to the smaller rho.
BoundReport theoretical_bound(std::size_t k, std::size_t l, const TSingularValues& sigma);

}  // namespace tsketch
