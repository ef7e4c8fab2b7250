#include "hriesz/group.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hriesz {

GroupParams::GroupParams(int dim) : n(dim) {
    if (dim < 1) throw std::invalid_argument("dimension n must be >= 1");
}

HeisenbergPoint::HeisenbergPoint(int n) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    c_.assign(2 * static_cast<std::size_t>(n) + 1, 0.0);
}

HeisenbergPoint::HeisenbergPoint(std::vector<cplx> z, double t) {
    if (z.empty()) throw std::invalid_argument("point needs at least one complex coordinate");
    c_.reserve(2 * z.size() + 1);
    for (const auto& v : z) {
        c_.push_back(v.real());
        c_.push_back(v.imag());
    }
    c_.push_back(t);
    for (double v : c_)
        if (!std::isfinite(v)) throw std::invalid_argument("point coordinates must be finite");
}

HeisenbergPoint HeisenbergPoint::from_flat(std::vector<double> coords) {
    if (coords.size() < 3 || coords.size() % 2 == 0)
        throw std::invalid_argument("flat point must have 2n+1 coordinates, got " +
                                    std::to_string(coords.size()));
    HeisenbergPoint p(static_cast<int>(coords.size() / 2));
    for (double v : coords)
        if (!std::isfinite(v)) throw std::invalid_argument("point coordinates must be finite");
    p.c_ = std::move(coords);
    return p;
}

std::vector<cplx> HeisenbergPoint::z() const {
    std::vector<cplx> out(n());
    for (int j = 0; j < n(); ++j) out[j] = z(j);
    return out;
}

double HeisenbergPoint::z_norm2() const {
    double s = 0;
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) s += c_[i] * c_[i];
    return s;
}

void HeisenbergPoint::set_z(int j, cplx v) {
    c_[2 * j] = v.real();
    c_[2 * j + 1] = v.imag();
}

static void check_same(const HeisenbergPoint& x, const HeisenbergPoint& y) {
    if (x.n() != y.n())
        throw std::invalid_argument("dimension mismatch: n=" + std::to_string(x.n()) + " vs n=" +
                                    std::to_string(y.n()));
}

double symplectic(const HeisenbergPoint& x, const HeisenbergPoint& y) {
    check_same(x, y);
    // Im(z conj(w)) = Im z Re w - Re z Im w, summed over j.
    double s = 0;
    const auto& a = x.flat();
    const auto& b = y.flat();
    for (int j = 0; j < x.n(); ++j) s += a[2 * j + 1] * b[2 * j] - a[2 * j] * b[2 * j + 1];
    return s;
}

HeisenbergPoint group_mul(const HeisenbergPoint& x, const HeisenbergPoint& y) {
    check_same(x, y);
    std::vector<double> c(x.flat().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.flat()[i] + y.flat()[i];
    c.back() += 0.5 * symplectic(x, y);
    return HeisenbergPoint::from_flat(std::move(c));
}

HeisenbergPoint group_inv(const HeisenbergPoint& x) {
    std::vector<double> c(x.flat());
    for (double& v : c) v = -v;
    return HeisenbergPoint::from_flat(std::move(c));
}

HeisenbergPoint dilate(double r, const HeisenbergPoint& x) {
    if (!(r > 0)) throw std::invalid_argument("dilation factor must be positive");
    std::vector<double> c(x.flat());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] *= r;
    c.back() *= r * r;
    return HeisenbergPoint::from_flat(std::move(c));
}

double hnorm_radial(double r, double t) {
    double r2 = r * r;
    return std::pow(r2 * r2 / 16.0 + t * t, 0.25);
}

double hnorm(const HeisenbergPoint& x) {
    double r2 = x.z_norm2();
    return std::pow(r2 * r2 / 16.0 + x.t() * x.t(), 0.25);
}

HeisenbergPoint identity_point(int n) { return HeisenbergPoint(n); }

}  // namespace hriesz
