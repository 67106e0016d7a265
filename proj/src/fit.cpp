#include "nehari/fit.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace nehari {

namespace {

// Solve the 3x3 symmetric system A x = b by Gaussian elimination with
// partial pivoting. Small and self-contained; conditioning is acceptable on
// the fit windows used here.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> A, std::array<double, 3> b)
{
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        if (A[c][c] == 0.0) throw std::runtime_error("singular fit system");
        for (int r = c + 1; r < 3; ++r) {
            const double f = A[r][c] / A[c][c];
            for (int k = c; k < 3; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < 3; ++k) s -= A[r][k] * x[k];
        x[r] = s / A[r][r];
    }
    return x;
}

} // namespace

DecayFit fit_log_decay(std::span<const double> r, std::span<const double> u,
                       double r_lo, double r_hi, bool fit_power, double fixed_power)
{
    if (r.size() != u.size()) throw std::invalid_argument("fit: size mismatch");
    DecayFit out;
    out.r_lo = r_lo;
    out.r_hi = r_hi;

    if (fit_power) {
        // basis (1, -r, -log r) against log u
        std::array<std::array<double, 3>, 3> A{};
        std::array<double, 3> b{};
        std::size_t n = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] < r_lo || r[i] > r_hi || !(u[i] > 0.0) || !(r[i] > 0.0)) continue;
            const double y = std::log(u[i]);
            const std::array<double, 3> phi{1.0, -r[i], -std::log(r[i])};
            for (int a = 0; a < 3; ++a) {
                for (int c = 0; c < 3; ++c) A[a][c] += phi[a] * phi[c];
                b[a] += phi[a] * y;
            }
            ++n;
        }
        out.samples = n;
        if (n < 4) return out;
        const auto x = solve3(A, b);
        out.offset = x[0];
        out.rate = x[1];
        out.power = x[2];
        out.ok = std::isfinite(out.rate) && std::isfinite(out.power);
        return out;
    }

    // two-parameter fit of log(u * r^fixed_power) = offset - rate * r
    double sw = 0.0, sr = 0.0, sy = 0.0, srr = 0.0, sry = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < r_lo || r[i] > r_hi || !(u[i] > 0.0)) continue;
        if (fixed_power != 0.0 && !(r[i] > 0.0)) continue;
        const double y = std::log(u[i]) + fixed_power * (r[i] > 0.0 ? std::log(r[i]) : 0.0);
        sw += 1.0;
        sr += r[i];
        sy += y;
        srr += r[i] * r[i];
        sry += r[i] * y;
        ++n;
    }
    out.samples = n;
    out.power = fixed_power;
    if (n < 3) return out;
    const double det = sw * srr - sr * sr;
    if (det == 0.0) return out;
    const double slope = (sw * sry - sr * sy) / det;
    out.rate = -slope;
    out.offset = (sy - slope * sr) / sw;
    out.ok = std::isfinite(out.rate);
    return out;
}

} // namespace nehari
