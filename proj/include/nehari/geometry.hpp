#pragma once

#include <array>

#include "nehari/grid.hpp"

namespace nehari {

/// Barycenter machinery: mu is the unit-ball average of |u|, u_hat its part
/// above half of the maximum, beta the center of mass of u_hat. beta is
/// invariant under scaling of u and equivariant under lattice translations.
struct BarycenterData {
    BoxField mu;
    BoxField u_hat;
    std::array<double, 3> beta{0.0, 0.0, 0.0};
};

BarycenterData barycenter(const BoxField& u);

/// Just the barycenter point (throws on the zero field).
std::array<double, 3> barycenter_point(const BoxField& u);

} // namespace nehari
