#pragma once

#include <vector>

#include "hriesz/group.hpp"

namespace hriesz {

// L_k^a(x) by the upward three-term recurrence.
double laguerre_poly(int k, int a, double x);
// L_k^a(x) e^{-x/2} with exponent tracking so large x neither overflows nor underflows early.
double laguerre_damped(int k, int a, double x);
// out[k] = L_k^a(x) e^{-x/2} for k = 0..kmax.
void laguerre_damped_all(int kmax, int a, double x, double* out);

// (k+n-1)! / (k! (n-1)!) = L_k^{n-1}(0).
double laguerre_at_zero(int k, int n);
// (k+n-1)! / k!
double falling_ratio(int k, int n);

// φ_k(z) = L_k^{n-1}(|z|²/2) e^{-|z|²/4} as a function of |z|².
double phi_radial(int k, int n, double r2);

// Row-major table[k * args + i] = φ_k at |z|² = r2[i], k = 0..kmax.
class LaguerreTable {
public:
    LaguerreTable(int n, int kmax, std::vector<double> r2);
    int kmax() const { return kmax_; }
    std::size_t args() const { return r2_.size(); }
    double operator()(int k, std::size_t i) const { return v_[static_cast<std::size_t>(k) * r2_.size() + i]; }
    const double* row(int k) const { return v_.data() + static_cast<std::size_t>(k) * r2_.size(); }

private:
    int n_, kmax_;
    std::vector<double> r2_;
    std::vector<double> v_;
};

class LaguerreBasis {
public:
    LaguerreBasis(int n, int kmax);

    int n() const { return n_; }
    int kmax() const { return kmax_; }

    double laguerre(int k, double t) const;
    double phi(int k, const std::vector<cplx>& z) const;
    double phi_lambda(int k, double lambda, const std::vector<cplx>& z) const;
    cplx e(int k, double lambda, const HeisenbergPoint& x) const;
    // ẽ_k^λ = e_k^{λ/(2k+n)}
    cplx e_tilde(int k, double lambda, const HeisenbergPoint& x) const;

    LaguerreTable table(std::vector<double> r2) const { return LaguerreTable(n_, kmax_, std::move(r2)); }

private:
    void check_k(int k) const;
    int n_, kmax_;
};

}  // namespace hriesz
