#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hriesz/group.hpp"

namespace hriesz {

struct Axis {
    double min = 0;
    double max = 0;
    std::size_t count = 0;

    double spacing() const;
    double node(std::size_t i) const;
    // Trapezoid weights; count==1 gets weight 1 (a degenerate axis).
    std::vector<double> trapezoid() const;
    bool operator==(const Axis& o) const = default;
};

// Axis with `count` nodes spaced h, symmetric about zero.
Axis centered_axis(double half_width, std::size_t count);
// Nodes (i - count/2)·h, so 0 is a node and node differences stay on the lattice.
Axis lattice_axis(double h, std::size_t count);

class Grid {
public:
    Grid() = default;
    explicit Grid(std::vector<Axis> axes);
    Grid(std::vector<Axis> axes, std::vector<std::vector<double>> weights);

    std::size_t dims() const { return axes_.size(); }
    const std::vector<Axis>& axes() const { return axes_; }
    const Axis& axis(std::size_t d) const { return axes_[d]; }
    const std::vector<double>& weights(std::size_t d) const { return weights_[d]; }
    std::size_t size() const { return size_; }
    std::size_t stride(std::size_t d) const { return strides_[d]; }

    // Row-major: the last axis varies fastest.
    std::size_t flat(const std::vector<std::size_t>& idx) const;
    std::vector<std::size_t> unflat(std::size_t flat) const;
    double coord(std::size_t flat, std::size_t d) const;
    double weight(std::size_t flat) const;

    bool same_layout(const Grid& o) const { return axes_ == o.axes_; }

private:
    std::vector<Axis> axes_;
    std::vector<std::vector<double>> weights_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

// Values on a grid over C^n (2n axes) or C^n x R (2n+1 axes).
class FieldBase {
public:
    int n() const { return n_; }
    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    cplx operator[](std::size_t i) const { return values_[i]; }
    cplx& operator[](std::size_t i) { return values_[i]; }

    // Tensor-product quadrature of the values.
    cplx integral() const;
    // (Σ |f|^p w)^{1/p}; p = inf gives the grid maximum.
    double lp_norm(double p) const;
    double l2_norm() const { return lp_norm(2.0); }
    double max_abs() const;

protected:
    FieldBase() = default;
    FieldBase(int n, Grid grid, std::vector<cplx> values, std::size_t expected_dims);

    int n_ = 1;
    Grid grid_;
    std::vector<cplx> values_;
};

class PlanarField : public FieldBase {
public:
    PlanarField() = default;
    PlanarField(int n, Grid grid, std::vector<cplx> values);
    PlanarField(int n, Grid grid);

    // f receives (Re z_1, Im z_1, ...).
    static PlanarField sample(int n, const Grid& grid,
                              const std::function<cplx(const std::vector<cplx>&)>& f);
    std::vector<cplx> z_at(std::size_t flat) const;
    double r2_at(std::size_t flat) const;
};

class SampledField : public FieldBase {
public:
    SampledField() = default;
    SampledField(int n, Grid grid, std::vector<cplx> values);
    SampledField(int n, Grid grid);

    static SampledField sample(int n, const Grid& grid,
                               const std::function<cplx(const HeisenbergPoint&)>& f);
    HeisenbergPoint point_at(std::size_t flat) const;

    std::size_t planar_size() const { return grid_.size() / t_axis().count; }
    const Axis& t_axis() const { return grid_.axes().back(); }
    Grid planar_grid() const;
    // Element (planar index p, t index j).
    cplx at(std::size_t p, std::size_t j) const { return values_[p * t_axis().count + j]; }
};

Grid planar_box(int n, double half_width, std::size_t count);
Grid space_box(int n, double z_half_width, std::size_t z_count, double t_half_width,
               std::size_t t_count);

cplx haar_integral(const SampledField& f);

// Relative L2 distance computed on the common grid.
double relative_l2(const FieldBase& a, const FieldBase& b);
// Inner product Σ a conj(b) w.
cplx inner(const FieldBase& a, const FieldBase& b);

void require_same_grid(const FieldBase& a, const FieldBase& b, const char* what);

template <class F>
F linear_combination(cplx a, const F& x, cplx b, const F& y) {
    require_same_grid(x, y, "linear_combination");
    F out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

}  // namespace hriesz
