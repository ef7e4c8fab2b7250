#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "hriesz/grid.hpp"

namespace hriesz::test {

inline Grid planar_lattice(double h, std::size_t count) { return Grid({lattice_axis(h, count), lattice_axis(h, count)}); }

inline Grid space_lattice(double hz, std::size_t nz, double ht, std::size_t nt) {
    return Grid({lattice_axis(hz, nz), lattice_axis(hz, nz), lattice_axis(ht, nt)});
}

inline double planar_l2(const std::vector<cplx>& a, double cell) {
    double s = 0;
    for (cplx v : a) s += std::norm(v);
    return std::sqrt(s * cell);
}

// ∥a - b∥₂ over flat indices where |z|² ≤ r2max.
inline double diff_l2_inside(const PlanarField& a, const PlanarField& b, double r2max) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.r2_at(i) <= r2max) s += std::norm(a[i] - b[i]) * a.grid().weight(i);
    return std::sqrt(s);
}

inline double norm_inside(const PlanarField& a, double r2max) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.r2_at(i) <= r2max) s += std::norm(a[i]) * a.grid().weight(i);
    return std::sqrt(s);
}

}  // namespace hriesz::test
