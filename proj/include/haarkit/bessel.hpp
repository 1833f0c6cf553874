#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "haarkit/errors.hpp"

namespace haarkit {

/// Modified Bessel function of the first kind, orders 0 and 1.
/// Power series sum (x/2)^(2m+j) / (m! (m+j)!) for |x| <= 30, terms summed
/// until they fall below 1e-17 of the partial sum; the standard asymptotic
/// expansion e^x/sqrt(2 pi x) (1 - (4j^2-1)/(8x) + ...) beyond that.
/// I0 is even and I1 is odd; |x| <= 700 to stay clear of overflow.
inline double bessel_i(int order, double x) {
    if (order != 0 && order != 1) throw Error("bessel_i: order must be 0 or 1");
    if (std::abs(x) > 700.0) throw RangeError("bessel_i: |x| <= 700 required");
    const double ax = std::abs(x);
    double value;
    if (ax <= 30.0) {
        const double q = ax * ax / 4.0;  // (x/2)^2
        double term = order == 0 ? 1.0 : ax / 2.0;
        double sum = term;
        for (int m = 1; m < 500; ++m) {
            term *= q / (static_cast<double>(m) * (m + order));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        value = sum;
    } else {
        const double mu = 4.0 * order * order;
        double term = 1.0, sum = 1.0;
        double prev_mag = std::numeric_limits<double>::infinity();
        for (int k = 1; k < 40; ++k) {
            term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * ax * k);
            const double mag = std::abs(term);
            if (mag >= prev_mag) break;  // asymptotic tail started to diverge
            sum += term;
            if (mag < 1e-17 * std::abs(sum)) break;
            prev_mag = mag;
        }
        value = std::exp(ax) / std::sqrt(2.0 * std::numbers::pi * ax) * sum;
    }
    if (order == 1 && x < 0.0) value = -value;
    return value;
}

}  // namespace haarkit
