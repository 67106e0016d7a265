#pragma once

#include <cstddef>
#include <span>

namespace nehari {

/// Least-squares fit of log u against the model
///   log u(r) = offset - rate * r - power * log(r)
/// over samples with r in [r_lo, r_hi] and u > 0. When fit_power is false the
/// power term is frozen at fixed_power and only (offset, rate) are fitted.
struct DecayFit {
    double rate = 0.0;
    double power = 0.0;
    double offset = 0.0; ///< log of the fitted prefactor
    double r_lo = 0.0;
    double r_hi = 0.0;
    std::size_t samples = 0;
    bool ok = false;
};

DecayFit fit_log_decay(std::span<const double> r, std::span<const double> u,
                       double r_lo, double r_hi, bool fit_power,
                       double fixed_power = 0.0);

} // namespace nehari
