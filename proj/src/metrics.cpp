#include "tsketch/metrics.hpp"

#include <cmath>
#include <limits>

#include "tsketch/error.hpp"
#include "tsketch/tensor_ops.hpp"

namespace tsketch {

namespace {

double squared_distance(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw Error(ErrorKind::ShapeMismatch, "metric inputs differ in shape");
    double total = 0.0;
    const auto x = a.data();
    const auto y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        total += d * d;
    }
    return total;
}

}  // namespace

double relative_error(const Tensor3& a, const Tensor3& ahat) {
    const double err = squared_distance(a, ahat);
    const double ref = squared_norm(a);
    if (ref == 0.0) throw Error(ErrorKind::ZeroReference, "relative error against a zero tensor");
    return err / ref;
}

double psnr(const Tensor3& a, const Tensor3& ahat) {
    const double err = squared_distance(a, ahat);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    const double peak = inf_norm(a);
    const double count = static_cast<double>(a.size());
    return 10.0 * std::log10(count * peak * peak / err);
}

}  // namespace tsketch
