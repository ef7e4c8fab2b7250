#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hriesz {

using cplx = std::complex<double>;

struct GroupParams {
    int n = 1;

    explicit GroupParams(int dim = 1);
    int Q() const { return 2 * n + 2; }
};

// Point (z, t) of H^n stored flat as (Re z_1, Im z_1, ..., Re z_n, Im z_n, t).
class HeisenbergPoint {
public:
    HeisenbergPoint() : HeisenbergPoint(1) {}
    explicit HeisenbergPoint(int n);
    HeisenbergPoint(std::vector<cplx> z, double t);
    static HeisenbergPoint from_flat(std::vector<double> coords);

    int n() const { return static_cast<int>(c_.size() / 2); }
    cplx z(int j) const { return {c_[2 * j], c_[2 * j + 1]}; }
    std::vector<cplx> z() const;
    double t() const { return c_.back(); }
    double z_norm2() const;

    void set_z(int j, cplx v);
    void set_t(double t) { c_.back() = t; }

    const std::vector<double>& flat() const { return c_; }

private:
    std::vector<double> c_;
};

// Σ_j z_j conj(w_j); only the imaginary part enters the group law.
double symplectic(const HeisenbergPoint& x, const HeisenbergPoint& y);

HeisenbergPoint group_mul(const HeisenbergPoint& x, const HeisenbergPoint& y);
HeisenbergPoint group_inv(const HeisenbergPoint& x);
HeisenbergPoint dilate(double r, const HeisenbergPoint& x);
double hnorm(const HeisenbergPoint& x);

// Norm from |z| and t directly, used by radial code paths.
double hnorm_radial(double r, double t);

HeisenbergPoint identity_point(int n);

}  // namespace hriesz
