#include "tsketch/bound.hpp"

#include <string>

#include "tsketch/error.hpp"

namespace tsketch {

double f_ratio(double s, double t) { return s / (t - s - 1.0); }

BoundReport theoretical_bound(std::size_t k, std::size_t l, const TSingularValues& sigma) {
    if (k < 2) throw Error(ErrorKind::InvalidParams, "bound needs k >= 2");
    if (l <= k + 1) {
        throw Error(ErrorKind::InvalidParams,
                    "bound needs l > k + 1, got k = " + std::to_string(k) + ", l = " + std::to_string(l));
    }
    const double kd = static_cast<double>(k), ld = static_cast<double>(l);
    const double corange_factor = 1.0 + f_ratio(kd, ld);

    // tau_{j}^2 for j = rho + 1; indices past the spectrum contribute nothing.
    std::vector<double> tails(k, 0.0);
    double running = 0.0;
    for (std::size_t i = sigma.size(); i-- > 0;) {
        running += sigma[i] * sigma[i];
        if (i < tails.size()) tails[i] = running;
    }

    BoundReport report;
    report.table.reserve(k - 1);
    for (std::size_t rho = 0; rho + 2 <= k; ++rho) {
        const double r = static_cast<double>(rho);
        BoundRow row;
        row.rho = rho;
        row.tail = tails[rho];
        row.product = corange_factor * (1.0 + f_ratio(r, kd)) * row.tail;
        row.ratio_form = (kd / (ld - kd - 1.0)) * (kd / (kd - r - 1.0)) * row.tail;
        if (report.table.empty() || row.product < report.bound_product) {
            report.rho_star = rho;
            report.bound_product = row.product;
            report.bound_ratio_form = row.ratio_form;
        }
        report.table.push_back(row);
    }
    return report;
}

}  // namespace tsketch
