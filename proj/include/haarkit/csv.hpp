#pragma once

#include <cstdio>
#include <string>

#include "haarkit/convergence.hpp"
#include "haarkit/rate_distortion.hpp"

namespace haarkit {

/// Fixed 12-significant-digit scientific formatting, '.' decimal point.
/// All CSV output goes through here so reruns diff byte for byte.
inline std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return std::string(buf);
}

/// Columns beta, delta, rate_nats (rate_bits when bits = true, converted at
/// output only).
inline std::string rd_curve_csv(const RDCurve& curve, bool bits = false) {
    std::string out = bits ? "beta,delta,rate_bits\n" : "beta,delta,rate_nats\n";
    const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
    for (const RDPoint& p : curve.points)
        out += format_sci(p.beta) + "," + format_sci(p.delta) + "," +
               format_sci(p.rate * scale) + "\n";
    return out;
}

/// Columns n, divergence_nats, tv, transport, min_density, bound_(1-c)^(n-1).
/// Transport is empty without a distortion spec; the bound column is empty
/// when the minimum density c is zero.
inline std::string series_csv(const ConvergenceSeries& s) {
    std::string out = "n,divergence_nats,tv,transport,min_density,bound_(1-c)^(n-1)\n";
    const double c = s.min_density.empty() ? 0.0 : s.min_density.front();
    const double d1 = s.divergence.empty() ? 0.0 : s.divergence.front();
    for (size_t i = 0; i < s.n_values.size(); ++i) {
        out += std::to_string(s.n_values[i]) + "," + format_sci(s.divergence[i]) + "," +
               format_sci(s.tv[i]) + ",";
        if (s.has_transport) out += format_sci(s.transport[i]);
        out += "," + format_sci(s.min_density[i]) + ",";
        if (c > 0.0) out += format_sci(std::pow(1.0 - c, s.n_values[i] - 1) * d1);
        out += "\n";
    }
    return out;
}

/// Columns n, divergence_exact_nats, divergence_quadratic_nats.
inline std::string fourier_series_csv(const FourierSeries& s) {
    std::string out = "n,divergence_exact_nats,divergence_quadratic_nats\n";
    for (size_t i = 0; i < s.n_values.size(); ++i)
        out += std::to_string(s.n_values[i]) + "," + format_sci(s.exact[i]) + "," +
               format_sci(s.quadratic[i]) + "\n";
    return out;
}

/// Dense coupling matrix, one row per source element.
inline std::string coupling_csv(const Coupling& c) {
    std::string out;
    for (int i = 0; i < c.rows; ++i) {
        for (int j = 0; j < c.cols; ++j) {
            if (j) out += ",";
            out += format_sci(c.at(i, j));
        }
        out += "\n";
    }
    return out;
}

}  // namespace haarkit
