#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hriesz {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    void append(const QuadRule& o);
};

// Gauss–Legendre on [-1, 1].
QuadRule gauss_legendre(std::size_t n);
QuadRule gauss_legendre(std::size_t n, double a, double b);
// Gauss rule with `per_panel` nodes on each interval between consecutive breakpoints.
QuadRule composite_gauss(const std::vector<double>& breakpoints, std::size_t per_panel);
QuadRule composite_gauss(double a, double b, std::size_t panels, std::size_t per_panel);

// Generalized Gauss–Laguerre for ∫_0^∞ f(x) x^a e^{-x} dx.
QuadRule gauss_laguerre(std::size_t n, double a);

// Chebyshev–Lobatto points mapped to [0, 1]: u_i = (1 - cos(π i/(N-1)))/2.
std::vector<double> chebyshev_lobatto(std::size_t n);
// C with c = C·f mapping nodal values to Chebyshev coefficients on [0,1] (T_a(2u-1)).
std::vector<double> chebyshev_coeff_matrix(std::size_t n);
// T_0..T_{n-1} at x in [-1, 1].
void chebyshev_values(double x, std::size_t n, double* out);

// Compensated sum; fixed order makes results reproducible.
template <class T>
class KahanSum {
public:
    void add(T v) {
        T y = v - c_;
        T t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    T value() const { return s_; }

private:
    T s_{};
    T c_{};
};

// Remainder estimate from three nested partial sums s1 ⊂ s2 ⊂ s3 whose shells
// decay geometrically: |s3-s2|·ρ/(1-ρ) with ρ = |s3-s2|/|s2-s1| clamped.
double geometric_tail(double s1, double s2, double s3);
double geometric_tail(std::complex<double> s1, std::complex<double> s2, std::complex<double> s3);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hriesz
