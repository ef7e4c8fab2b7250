#include "hriesz/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hriesz {

double Axis::spacing() const { return count > 1 ? (max - min) / static_cast<double>(count - 1) : 0.0; }

double Axis::node(std::size_t i) const {
    if (count == 1) return min;
    // Symmetric formula keeps centered grids exactly symmetric.
    double s = static_cast<double>(i) / static_cast<double>(count - 1);
    return min + (max - min) * s;
}

std::vector<double> Axis::trapezoid() const {
    if (count == 1) return {1.0};
    std::vector<double> w(count, spacing());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

Axis centered_axis(double half_width, std::size_t count) { return Axis{-half_width, half_width, count}; }

Axis lattice_axis(double h, std::size_t count) {
    double lo = -static_cast<double>(count / 2) * h;
    return Axis{lo, lo + static_cast<double>(count - 1) * h, count};
}

static std::vector<std::vector<double>> trapezoid_weights(const std::vector<Axis>& axes) {
    std::vector<std::vector<double>> w;
    w.reserve(axes.size());
    for (const auto& a : axes) w.push_back(a.trapezoid());
    return w;
}

Grid::Grid(std::vector<Axis> axes) : Grid(axes, trapezoid_weights(axes)) {}

Grid::Grid(std::vector<Axis> axes, std::vector<std::vector<double>> weights)
    : axes_(std::move(axes)), weights_(std::move(weights)) {
    if (axes_.empty()) throw std::invalid_argument("grid needs at least one axis");
    if (weights_.size() != axes_.size()) throw std::invalid_argument("one weight vector per axis required");
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        const auto& a = axes_[d];
        if (a.count == 0) throw std::invalid_argument("axis with zero nodes");
        if (a.count > 1 && !(a.max > a.min)) throw std::invalid_argument("axis max must exceed min");
        if (weights_[d].size() != a.count) throw std::invalid_argument("weight count must match axis count");
        for (double w : weights_[d])
            if (!(w > 0)) throw std::invalid_argument("quadrature weights must be strictly positive");
    }
    strides_.assign(axes_.size(), 1);
    for (std::size_t d = axes_.size() - 1; d > 0; --d) strides_[d - 1] = strides_[d] * axes_[d].count;
    size_ = strides_[0] * axes_[0].count;
}

std::size_t Grid::flat(const std::vector<std::size_t>& idx) const {
    std::size_t f = 0;
    for (std::size_t d = 0; d < axes_.size(); ++d) f += idx[d] * strides_[d];
    return f;
}

std::vector<std::size_t> Grid::unflat(std::size_t flat) const {
    std::vector<std::size_t> idx(axes_.size());
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        idx[d] = flat / strides_[d];
        flat %= strides_[d];
    }
    return idx;
}

double Grid::coord(std::size_t flat, std::size_t d) const {
    return axes_[d].node((flat / strides_[d]) % axes_[d].count);
}

double Grid::weight(std::size_t flat) const {
    double w = 1;
    for (std::size_t d = 0; d < axes_.size(); ++d) w *= weights_[d][(flat / strides_[d]) % axes_[d].count];
    return w;
}

FieldBase::FieldBase(int n, Grid grid, std::vector<cplx> values, std::size_t expected_dims)
    : n_(n), grid_(std::move(grid)), values_(std::move(values)) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (grid_.dims() != expected_dims)
        throw std::invalid_argument("grid has " + std::to_string(grid_.dims()) + " axes, expected " +
                                    std::to_string(expected_dims));
    if (values_.empty()) values_.assign(grid_.size(), cplx(0, 0));
    if (values_.size() != grid_.size())
        throw std::invalid_argument("value count " + std::to_string(values_.size()) +
                                    " does not match grid size " + std::to_string(grid_.size()));
}

cplx FieldBase::integral() const {
    cplx s = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * grid_.weight(i);
    return s;
}

double FieldBase::max_abs() const {
    double m = 0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double FieldBase::lp_norm(double p) const {
    if (!(p > 0)) throw std::invalid_argument("lp_norm requires p > 0");
    if (std::isinf(p)) return max_abs();
    double s = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double a = std::abs(values_[i]);
        if (a == 0) continue;
        s += (p == 2 ? a * a : std::pow(a, p)) * grid_.weight(i);
    }
    return std::pow(s, 1.0 / p);
}

PlanarField::PlanarField(int n, Grid grid, std::vector<cplx> values)
    : FieldBase(n, std::move(grid), std::move(values), 2 * static_cast<std::size_t>(n)) {}

PlanarField::PlanarField(int n, Grid grid) : PlanarField(n, std::move(grid), {}) {}

PlanarField PlanarField::sample(int n, const Grid& grid,
                                const std::function<cplx(const std::vector<cplx>&)>& f) {
    PlanarField out(n, grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(out.z_at(i));
    return out;
}

std::vector<cplx> PlanarField::z_at(std::size_t flat) const {
    std::vector<cplx> z(n_);
    for (int j = 0; j < n_; ++j) z[j] = {grid_.coord(flat, 2 * j), grid_.coord(flat, 2 * j + 1)};
    return z;
}

double PlanarField::r2_at(std::size_t flat) const {
    double s = 0;
    for (std::size_t d = 0; d < grid_.dims(); ++d) {
        double x = grid_.coord(flat, d);
        s += x * x;
    }
    return s;
}

SampledField::SampledField(int n, Grid grid, std::vector<cplx> values)
    : FieldBase(n, std::move(grid), std::move(values), 2 * static_cast<std::size_t>(n) + 1) {}

SampledField::SampledField(int n, Grid grid) : SampledField(n, std::move(grid), {}) {}

SampledField SampledField::sample(int n, const Grid& grid,
                                  const std::function<cplx(const HeisenbergPoint&)>& f) {
    SampledField out(n, grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(out.point_at(i));
    return out;
}

HeisenbergPoint SampledField::point_at(std::size_t flat) const {
    std::vector<double> c(grid_.dims());
    for (std::size_t d = 0; d < c.size(); ++d) c[d] = grid_.coord(flat, d);
    return HeisenbergPoint::from_flat(std::move(c));
}

Grid SampledField::planar_grid() const {
    std::vector<Axis> axes(grid_.axes().begin(), grid_.axes().end() - 1);
    std::vector<std::vector<double>> w;
    for (std::size_t d = 0; d + 1 < grid_.dims(); ++d) w.push_back(grid_.weights(d));
    return Grid(std::move(axes), std::move(w));
}

Grid planar_box(int n, double half_width, std::size_t count) {
    return Grid(std::vector<Axis>(2 * static_cast<std::size_t>(n), centered_axis(half_width, count)));
}

Grid space_box(int n, double z_half_width, std::size_t z_count, double t_half_width, std::size_t t_count) {
    std::vector<Axis> axes(2 * static_cast<std::size_t>(n), centered_axis(z_half_width, z_count));
    axes.push_back(centered_axis(t_half_width, t_count));
    return Grid(std::move(axes));
}

cplx haar_integral(const SampledField& f) { return f.integral(); }

void require_same_grid(const FieldBase& a, const FieldBase& b, const char* what) {
    if (a.n() != b.n() || !a.grid().same_layout(b.grid()))
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

cplx inner(const FieldBase& a, const FieldBase& b) {
    require_same_grid(a, b, "inner");
    cplx s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]) * a.grid().weight(i);
    return s;
}

double relative_l2(const FieldBase& a, const FieldBase& b) {
    require_same_grid(a, b, "relative_l2");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double w = a.grid().weight(i);
        num += std::norm(a[i] - b[i]) * w;
        den += std::norm(b[i]) * w;
    }
    if (den == 0) return num == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

}  // namespace hriesz
