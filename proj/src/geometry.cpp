#include "nehari/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nehari {

namespace {

struct Offset {
    std::array<int, 3> d;
    long flat;
};

// Lattice offsets covering the unit ball, with their flat-index shifts.
std::vector<Offset> ball_stencil(const BoxGrid& g)
{
    const int reach = static_cast<int>(std::floor(1.0 / g.spacing()));
    std::vector<Offset> st;
    std::array<int, 3> d{0, 0, 0};
    const int lo = -reach, hi = reach;
    for (int dx = lo; dx <= hi; ++dx) {
        for (int dy = (g.dim() > 1 ? lo : 0); dy <= (g.dim() > 1 ? hi : 0); ++dy) {
            for (int dz = (g.dim() > 2 ? lo : 0); dz <= (g.dim() > 2 ? hi : 0); ++dz) {
                d = {dx, dy, dz};
                double r2 = 0.0;
                for (int a = 0; a < g.dim(); ++a) {
                    const double c = d[static_cast<std::size_t>(a)] * g.spacing();
                    r2 += c * c;
                }
                if (r2 > 1.0 + 1e-12) continue;
                long flat = 0;
                for (int a = 0; a < g.dim(); ++a)
                    flat += static_cast<long>(d[static_cast<std::size_t>(a)]) *
                            static_cast<long>(g.stride(a));
                st.push_back({d, flat});
            }
        }
    }
    return st;
}

} // namespace

BarycenterData barycenter(const BoxField& u)
{
    if (!u.grid) throw std::invalid_argument("barycenter: field has no grid");
    const BoxGrid& g = *u.grid;

    bool nonzero = false;
    for (double x : u.v)
        if (x != 0.0) {
            nonzero = true;
            break;
        }
    if (!nonzero) throw std::domain_error("barycenter undefined for the zero field");

    BarycenterData out;
    out.mu = BoxField(u.grid);
    out.u_hat = BoxField(u.grid);

    const auto st = ball_stencil(g);
    const std::size_t n = g.per_axis();
    const std::size_t total = g.size();
    for (std::size_t i = 0; i < total; ++i) {
        std::array<std::size_t, 3> idx{0, 0, 0};
        for (int a = 0; a < g.dim(); ++a) idx[static_cast<std::size_t>(a)] = g.axis_index(i, a);
        double num = 0.0, den = 0.0;
        for (const auto& o : st) {
            bool inside = true;
            for (int a = 0; a < g.dim(); ++a) {
                const long k = static_cast<long>(idx[static_cast<std::size_t>(a)]) +
                               o.d[static_cast<std::size_t>(a)];
                if (k < 0 || k >= static_cast<long>(n)) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            const std::size_t j = static_cast<std::size_t>(static_cast<long>(i) + o.flat);
            num += g.weight(j) * std::abs(u.v[j]);
            den += g.weight(j);
        }
        out.mu.v[i] = den > 0.0 ? num / den : 0.0;
    }

    const double half_max = 0.5 * *std::max_element(out.mu.v.begin(), out.mu.v.end());
    for (std::size_t i = 0; i < total; ++i)
        out.u_hat.v[i] = std::max(out.mu.v[i] - half_max, 0.0);

    double mass = 0.0;
    std::array<double, 3> first{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < total; ++i) {
        const double m = g.weight(i) * out.u_hat.v[i];
        if (m == 0.0) continue;
        mass += m;
        const auto x = g.point(i);
        for (int a = 0; a < g.dim(); ++a) first[static_cast<std::size_t>(a)] += m * x[static_cast<std::size_t>(a)];
    }
    if (!(mass > 0.0)) throw std::domain_error("barycenter undefined: u_hat vanished");
    for (int a = 0; a < g.dim(); ++a) out.beta[static_cast<std::size_t>(a)] = first[static_cast<std::size_t>(a)] / mass;
    return out;
}

std::array<double, 3> barycenter_point(const BoxField& u)
{
    return barycenter(u).beta;
}

} // namespace nehari
