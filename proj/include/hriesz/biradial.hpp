#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hriesz/kernel.hpp"
#include "hriesz/quadrature.hpp"
#include "hriesz/spectral.hpp"

namespace hriesz {

// Quadrature on one (r, t) half-plane; node (p, q) has flat index p·nt + q.
struct SideGrid {
    QuadRule r, t;

    std::size_t nr() const { return r.size(); }
    std::size_t nt() const { return t.size(); }
    std::size_t size() const { return r.size() * t.size(); }
    // r ∈ [0, rmax], t ∈ [-tmax, tmax], composite Gauss with `per_panel` nodes.
    static SideGrid composite(double rmax, std::size_t r_panels, double tmax, std::size_t t_panels,
                              std::size_t per_panel = 16);
};

// F((r1,t1),(r2,t2)) on SideGrid × SideGrid stored as A·C·Bᵀ. Dense input is the
// case A = I, B = I (kept implicit).
class RadialBiFunction {
public:
    RadialBiFunction(int n, SideGrid g1, SideGrid g2, std::size_t rank1, std::size_t rank2, std::vector<double> A,
                     std::vector<double> C, std::vector<double> B);
    static RadialBiFunction dense(int n, SideGrid g1, SideGrid g2, std::vector<double> values);
    static RadialBiFunction separable(int n, SideGrid g1, SideGrid g2, std::vector<double> f1, std::vector<double> f2);
    static RadialBiFunction sample(int n, SideGrid g1, SideGrid g2,
                                   const std::function<double(double, double, double, double)>& F);

    int n() const { return n_; }
    const SideGrid& grid1() const { return g1_; }
    const SideGrid& grid2() const { return g2_; }
    std::size_t rank1() const { return rank1_; }
    std::size_t rank2() const { return rank2_; }
    bool is_dense() const { return A_.empty(); }

    double value(std::size_t i1, std::size_t i2) const;
    std::vector<double> to_dense() const;
    // Column `c` of the left factor at side-1 node i (identity when dense).
    double left(std::size_t i, std::size_t c) const { return A_.empty() ? (i == c ? 1.0 : 0.0) : A_[i * rank1_ + c]; }
    double right(std::size_t i, std::size_t c) const { return B_.empty() ? (i == c ? 1.0 : 0.0) : B_[i * rank2_ + c]; }
    const std::vector<double>& A() const { return A_; }
    const std::vector<double>& C() const { return C_; }
    const std::vector<double>& B() const { return B_; }

private:
    int n_;
    SideGrid g1_, g2_;
    std::size_t rank1_, rank2_;
    std::vector<double> A_, C_, B_;
};

// L² norm with the radial measure r1^{2n-1} r2^{2n-1} dr1 dt1 dr2 dt2.
double biradial_l2(const RadialBiFunction& F);
double biradial_relative_l2(const RadialBiFunction& a, const RadialBiFunction& b);

// S_R^α on g × g in factored form: A = side values at the rule nodes, C = prefactor · W.
RadialBiFunction biradial_kernel(const BilinearKernel& S, const SideGrid& g);

// R_{k,l}(λ1, λ2; F) with the 2^{1-n} k!/(k+n-1)! normalization on each side.
cplx laguerre_transform_biradial(const RadialBiFunction& F, int k, int l, double lambda1, double lambda2);

// R_{k,l} on every node pair of two spectral grids; values at [ν1 · size2 + ν2].
struct BiradialCoefficients {
    int n = 1;
    SpectralGrid s1, s2;
    std::vector<cplx> values;
};
BiradialCoefficients laguerre_transform_biradial(const RadialBiFunction& F, const SpectralGrid& s1,
                                                 const SpectralGrid& s2);
BiradialCoefficients biradial_coefficients(int n, const SpectralGrid& s1, const SpectralGrid& s2,
                                           const std::function<cplx(int, double, int, double)>& R);

// F = Σ_{k,l} ∫∫ R_{k,l} φ_k^{λ1} e^{-iλ1 t1} φ_l^{λ2} e^{-iλ2 t2} dμ dμ, real part (the node
// sets are ±λ symmetric).
RadialBiFunction inverse_laguerre_transform_biradial(const BiradialCoefficients& c, const SideGrid& g1,
                                                     const SideGrid& g2);

// Bi-radial kernel values on a tensor table of side nodes.
struct KernelTable {
    int n = 1;
    double alpha = 0, R = 1;
    int kmax = 0;
    std::size_t u_nodes = 0;
    std::string lambda_rule;
    std::vector<double> r1, t1, r2, t2;
    std::vector<cplx> values;   // [((i1·nt1 + j1)·nr2 + i2)·nt2 + j2]
    std::vector<double> tail;   // same layout
    double max_tail = 0;

    std::size_t index(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) const {
        return ((i1 * t1.size() + j1) * r2.size() + i2) * t2.size() + j2;
    }
    std::size_t size() const { return values.size(); }
};
KernelTable tabulate_kernel(const BilinearKernel& S, const std::vector<double>& r1, const std::vector<double>& t1,
                            const std::vector<double>& r2, const std::vector<double>& t2);

}  // namespace hriesz
