#include "nehari/grid.hpp"

#include <cmath>

namespace nehari {

double unit_sphere_area(int dim)
{
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    const double n = static_cast<double>(dim);
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

RadialGrid::RadialGrid(int dim, double r_max, std::size_t nodes)
    : dim_(dim), r_max_(r_max), m_(nodes)
{
    if (dim < 1) throw std::invalid_argument("radial grid dimension must be >= 1");
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be > 0");
    if (nodes < 3) throw std::invalid_argument("radial grid needs at least 3 nodes");
    h_ = r_max_ / static_cast<double>(m_ - 1);

    const double omega = unit_sphere_area(dim_);
    const double nd = static_cast<double>(dim_);
    w_.resize(m_);
    for (std::size_t i = 1; i + 1 < m_; ++i) w_[i] = omega * std::pow(r(i), nd - 1.0) * h_;
    // half cell volume at the axis, half trapezoid weight at the Dirichlet end
    w_[0] = omega * std::pow(0.5 * h_, nd) / nd;
    w_[m_ - 1] = 0.5 * omega * std::pow(r_max_, nd - 1.0) * h_;

    fc_.resize(m_ - 1);
    for (std::size_t i = 0; i + 1 < m_; ++i) {
        const double rbar = 0.5 * (r(i) + r(i + 1));
        fc_[i] = omega * std::pow(rbar, nd - 1.0) / h_;
    }
}

BoxGrid::BoxGrid(int dim, double half_width, std::size_t nodes_per_axis)
    : dim_(dim), L_(half_width), n_(nodes_per_axis)
{
    if (dim < 1 || dim > 3) throw std::invalid_argument("box grid dimension must be 1, 2 or 3");
    if (!(half_width > 0.0)) throw std::invalid_argument("half_width must be > 0");
    if (n_ < 3) throw std::invalid_argument("box grid needs at least 3 nodes per axis");
    sp_ = 2.0 * L_ / static_cast<double>(n_ - 1);

    total_ = 1;
    for (int d = 0; d < dim_; ++d) total_ *= n_;
    if (total_ > 20'000'000) throw std::invalid_argument("box grid exceeds the node budget");

    stride_ = {1, 1, 1};
    for (int d = 1; d < dim_; ++d) stride_[static_cast<std::size_t>(d)] = stride_[static_cast<std::size_t>(d - 1)] * n_;

    axis_w_.assign(n_, sp_);
    axis_w_.front() = 0.5 * sp_;
    axis_w_.back() = 0.5 * sp_;

    w_.resize(total_);
    for (std::size_t flat = 0; flat < total_; ++flat) {
        double p = 1.0;
        for (int d = 0; d < dim_; ++d) p *= axis_w_[axis_index(flat, d)];
        w_[flat] = p;
    }
}

std::array<double, 3> BoxGrid::point(std::size_t flat) const
{
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim_; ++d) x[static_cast<std::size_t>(d)] = coord(flat, d);
    return x;
}

double BoxGrid::radius(std::size_t flat) const
{
    double s = 0.0;
    for (int d = 0; d < dim_; ++d) {
        const double c = coord(flat, d);
        s += c * c;
    }
    return std::sqrt(s);
}

double BoxGrid::max_abs_coord(std::size_t flat) const
{
    double m = 0.0;
    for (int d = 0; d < dim_; ++d) m = std::max(m, std::abs(coord(flat, d)));
    return m;
}

bool BoxGrid::on_boundary(std::size_t flat) const
{
    for (int d = 0; d < dim_; ++d) {
        const std::size_t id = axis_index(flat, d);
        if (id == 0 || id + 1 == n_) return true;
    }
    return false;
}

template <>
double boundary_mass_fraction<RadialGrid>(const RadialField& u)
{
    const auto& g = *u.grid;
    const double cut = 0.9 * g.r_max();
    double outer = 0.0, total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double m = g.weight(i) * u.v[i] * u.v[i];
        total += m;
        if (g.r(i) > cut) outer += m;
    }
    return total > 0.0 ? outer / total : 0.0;
}

template <>
double boundary_mass_fraction<BoxGrid>(const BoxField& u)
{
    const auto& g = *u.grid;
    const double cut = 0.9 * g.half_width();
    double outer = 0.0, total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double m = g.weight(i) * u.v[i] * u.v[i];
        total += m;
        if (g.max_abs_coord(i) > cut) outer += m;
    }
    return total > 0.0 ? outer / total : 0.0;
}

BoxField prolong(const BoxField& coarse, std::shared_ptr<const BoxGrid> fine)
{
    const BoxGrid& gc = *coarse.grid;
    BoxField out(std::move(fine));
    const BoxGrid& gf = *out.grid;
    if (gf.dim() != gc.dim() || std::abs(gf.half_width() - gc.half_width()) > 1e-12)
        throw std::invalid_argument("prolong: extents do not match");

    const int dim = gc.dim();
    const std::size_t nc = gc.per_axis();
    for (std::size_t i = 0; i < gf.size(); ++i) {
        if (gf.on_boundary(i)) continue;
        // fractional coarse coordinates of the fine node
        std::array<std::size_t, 3> base{0, 0, 0};
        std::array<double, 3> frac{0.0, 0.0, 0.0};
        for (int d = 0; d < dim; ++d) {
            const double s = (gf.coord(i, d) + gc.half_width()) / gc.spacing();
            std::size_t b = static_cast<std::size_t>(s);
            if (b >= nc - 1) b = nc - 2;
            base[static_cast<std::size_t>(d)] = b;
            frac[static_cast<std::size_t>(d)] = s - static_cast<double>(b);
        }
        double acc = 0.0;
        const int corners = 1 << dim;
        for (int cbits = 0; cbits < corners; ++cbits) {
            double wgt = 1.0;
            std::size_t flat = 0;
            for (int d = 0; d < dim; ++d) {
                const int up = (cbits >> d) & 1;
                const double f = frac[static_cast<std::size_t>(d)];
                wgt *= up ? f : 1.0 - f;
                flat += (base[static_cast<std::size_t>(d)] + static_cast<std::size_t>(up)) *
                        gc.stride(d);
            }
            if (wgt != 0.0) acc += wgt * coarse.v[flat];
        }
        out.v[i] = acc;
    }
    return out;
}

std::shared_ptr<const RadialGrid> make_radial_grid(int dim, double r_max, std::size_t nodes)
{
    return std::make_shared<const RadialGrid>(dim, r_max, nodes);
}

std::shared_ptr<const BoxGrid> make_box_grid(int dim, double half_width, std::size_t nodes_per_axis)
{
    return std::make_shared<const BoxGrid>(dim, half_width, nodes_per_axis);
}

std::shared_ptr<const BoxGrid> make_box_grid_spacing(int dim, double half_width, double spacing)
{
    if (!(spacing > 0.0)) throw std::invalid_argument("spacing must be > 0");
    std::size_t n = static_cast<std::size_t>(std::lround(2.0 * half_width / spacing)) + 1;
    if (n % 2 == 0) ++n;
    if (n < 3) n = 3;
    return make_box_grid(dim, half_width, n);
}

} // namespace nehari
