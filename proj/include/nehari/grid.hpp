#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace nehari {

/// Surface area of the unit sphere S^{N-1} (2 for N=1, 2*pi for N=2, ...).
double unit_sphere_area(int dim);

/// Uniform radial mesh on [0, r_max] with Dirichlet data at r_max.
///
/// Node quadrature weights approximate |S^{N-1}| r^{N-1} dr by the trapezoid
/// rule, except that the axis node carries the volume of its half cell (the
/// trapezoid weight vanishes at r = 0 for N >= 2, which would leave the
/// weighted gradient undefined there). Face coefficients realize the radial
/// Dirichlet form D(u,v) = sum_f c_f (u_{f+1}-u_f)(v_{f+1}-v_f) with
/// c_f = |S^{N-1}| rbar_f^{N-1} / h, the conservative second-order scheme.
class RadialGrid {
public:
    RadialGrid(int dim, double r_max, std::size_t nodes);

    int dim() const { return dim_; }
    double r_max() const { return r_max_; }
    double spacing() const { return h_; }
    std::size_t size() const { return m_; }

    double r(std::size_t i) const { return h_ * static_cast<double>(i); }
    double radius(std::size_t i) const { return r(i); }
    double weight(std::size_t i) const { return w_[i]; }
    const std::vector<double>& weights() const { return w_; }
    bool on_boundary(std::size_t i) const { return i + 1 == m_; }

    std::size_t face_count() const { return m_ - 1; }
    /// Face f joins nodes f and f+1.
    double face_coeff(std::size_t f) const { return fc_[f]; }

    template <class F>
    void for_each_face(F&& f) const
    {
        for (std::size_t i = 0; i + 1 < m_; ++i) f(i, i + 1, fc_[i]);
    }

private:
    int dim_;
    double r_max_;
    std::size_t m_;
    double h_;
    std::vector<double> w_;
    std::vector<double> fc_;
};

/// Uniform tensor grid on [-L, L]^N, N in {1,2,3}, zero Dirichlet data on
/// the whole boundary. Node weights are tensor-trapezoid; faces carry the
/// compatible coefficients of the tensor Dirichlet form.
class BoxGrid {
public:
    BoxGrid(int dim, double half_width, std::size_t nodes_per_axis);

    int dim() const { return dim_; }
    double half_width() const { return L_; }
    double spacing() const { return sp_; }
    std::size_t per_axis() const { return n_; }
    std::size_t size() const { return total_; }

    double axis_coord(std::size_t i) const { return -L_ + sp_ * static_cast<double>(i); }
    double coord(std::size_t flat, int axis) const
    {
        return axis_coord((flat / stride_[static_cast<std::size_t>(axis)]) % n_);
    }
    std::array<double, 3> point(std::size_t flat) const;
    double radius(std::size_t flat) const;
    double max_abs_coord(std::size_t flat) const;

    double weight(std::size_t flat) const { return w_[flat]; }
    const std::vector<double>& weights() const { return w_; }
    bool on_boundary(std::size_t flat) const;

    std::size_t stride(int axis) const { return stride_[static_cast<std::size_t>(axis)]; }
    std::size_t axis_index(std::size_t flat, int axis) const
    {
        return (flat / stride_[static_cast<std::size_t>(axis)]) % n_;
    }

    /// Visit every nearest-neighbor pair once: f(ia, ib, coeff) with
    /// coeff = (transverse weight)/spacing so that the Dirichlet form is
    /// sum over faces of coeff * (u_b - u_a)(v_b - v_a).
    template <class F>
    void for_each_face(F&& f) const
    {
        for (int d = 0; d < dim_; ++d) {
            const std::size_t s = stride_[static_cast<std::size_t>(d)];
            for (std::size_t flat = 0; flat < total_; ++flat) {
                const std::size_t id = (flat / s) % n_;
                if (id + 1 == n_) continue;
                const double transverse = w_[flat] / axis_w_[id];
                f(flat, flat + s, transverse / sp_);
            }
        }
    }

private:
    int dim_;
    double L_;
    std::size_t n_;
    double sp_;
    std::size_t total_;
    std::array<std::size_t, 3> stride_{};
    std::vector<double> axis_w_;
    std::vector<double> w_;
};

template <class G>
struct Field {
    std::shared_ptr<const G> grid;
    std::vector<double> v;

    Field() = default;
    explicit Field(std::shared_ptr<const G> g)
        : grid(std::move(g)), v(grid ? grid->size() : 0, 0.0)
    {
    }

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    bool empty_grid() const { return !grid; }
};

using RadialField = Field<RadialGrid>;
using BoxField = Field<BoxGrid>;

template <class G>
void require_same_grid(const Field<G>& u, const Field<G>& w)
{
    if (!u.grid || u.grid != w.grid)
        throw std::invalid_argument("fields live on different grids");
}

/// Quadrature of a field: sum of nodal values against the grid weights.
template <class G>
double integrate(const Field<G>& f)
{
    if (!f.grid) throw std::invalid_argument("field has no grid");
    const auto& w = f.grid->weights();
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.v[i];
    return s;
}

/// Quadrature of a pointwise function of the node index.
template <class G, class Fn>
double integrate(const G& grid, Fn&& fn)
{
    const auto& w = grid.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * fn(i);
    return s;
}

struct H1Products {
    double dirichlet = 0.0; ///< integral of grad u . grad v
    double l2 = 0.0;        ///< integral of u v
};

template <class G>
H1Products h1_products(const Field<G>& u, const Field<G>& w)
{
    require_same_grid(u, w);
    H1Products out;
    u.grid->for_each_face([&](std::size_t a, std::size_t b, double c) {
        out.dirichlet += c * (u.v[b] - u.v[a]) * (w.v[b] - w.v[a]);
    });
    const auto& qw = u.grid->weights();
    for (std::size_t i = 0; i < qw.size(); ++i) out.l2 += qw[i] * u.v[i] * w.v[i];
    return out;
}

template <class G>
double lp_norm(const Field<G>& u, double s)
{
    if (!(s >= 1.0)) throw std::invalid_argument("lp_norm requires s >= 1");
    const auto& w = u.grid->weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * std::pow(std::abs(u.v[i]), s);
    return std::pow(acc, 1.0 / s);
}

/// Squared norm of the natural inner product: dirichlet + a_inf * l2.
template <class G>
double h_norm_sq(const Field<G>& u, double a_inf)
{
    const H1Products pr = h1_products(u, u);
    return pr.dirichlet + a_inf * pr.l2;
}

/// Fraction of the L2 mass lying in the outer 10% shell of the domain.
template <class G>
double boundary_mass_fraction(const Field<G>& u);

std::shared_ptr<const RadialGrid> make_radial_grid(int dim, double r_max, std::size_t nodes);
std::shared_ptr<const BoxGrid> make_box_grid(int dim, double half_width, std::size_t nodes_per_axis);

/// Multilinear interpolation of a box field onto a finer box of the same
/// extent (warm starts for refinement runs).
BoxField prolong(const BoxField& coarse, std::shared_ptr<const BoxGrid> fine);

/// Box grid with approximately the requested spacing; the node count per
/// axis is rounded to the nearest odd value so the lattice contains 0.
std::shared_ptr<const BoxGrid> make_box_grid_spacing(int dim, double half_width, double spacing);

} // namespace nehari
