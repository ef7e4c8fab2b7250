#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hriesz/group.hpp"
#include "hriesz/quadrature.hpp"

namespace hriesz {

struct KernelValue {
    cplx value = 0;
    double tail_estimate = 0;
};

struct TruncationOptions {
    int kmax = 64;
    // Add the asymptotic (Bessel-type) model of Σ_{k>kmax} to the truncated sum.
    bool tail_correction = true;
};

// G_λ(z,t) = Σ_k (2k+n)^{-n-1} (ẽ_k^λ + ẽ_k^{-λ})(z,t); the raw truncated sum
// (tail_correction ignored), with an octave-fit estimate of the omitted tail.
KernelValue projection_kernel(int n, double lambda, const HeisenbergPoint& w, int kmax);

// a(u; r, t) = u^n G_u at |z| = r: the common side factor of every kernel below.
// Returns the values truncated at kmax/4, kmax/2 and kmax (tail model added to each
// when requested) so callers can fit the remaining tail.
struct SideSums {
    double q1 = 0, q2 = 0, full = 0;
};
SideSums side_profile(int n, double u, double r2, double t, const TruncationOptions& opt);
// Asymptotic Σ_{k>K} of the side profile.
double side_tail_model(int n, double u, double r2, double t, int K);

// side_profile on a tensor grid r × t for several u, built from separable
// per-k Laguerre and cosine factors. Entry (p, q, i) at [(p·nt + q)·nu + i].
struct SideTable {
    std::size_t nu = 0, nr = 0, nt = 0;
    std::vector<double> q1, q2, full;
    std::size_t index(std::size_t p, std::size_t q, std::size_t i) const { return (p * nt + q) * nu + i; }
};
SideTable side_table(int n, const std::vector<double>& u, const std::vector<double>& r, const std::vector<double>& t,
                     const TruncationOptions& opt);

// Product-integration weights for ∫∫_{u1+u2≤1} M(u1+u2) p(u1) q(u2) over
// Chebyshev–Lobatto interpolants of p, q with N nodes on [0,1].
class TriangleRule {
public:
    using Multiplier = std::function<double(double)>;
    // `breakpoints` in (0,1) where M loses smoothness or is switched on or off.
    TriangleRule(std::size_t N, const Multiplier& M, std::vector<double> breakpoints = {},
                 std::size_t grading = 24);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    double W(std::size_t i, std::size_t j) const { return W_[i * nodes_.size() + j]; }
    const std::vector<double>& matrix() const { return W_; }
    // Σ_ij W_ij a_i b_j
    double contract(const double* a, const double* b) const;
    cplx contract(const cplx* a, const cplx* b) const;

private:
    std::vector<double> nodes_;
    std::vector<double> W_;
};

// (1 - s)_+^α
TriangleRule::Multiplier riesz_multiplier(double alpha);
// Breakpoints grading geometrically toward s = 1.
std::vector<double> graded_breakpoints(std::size_t levels, double ratio = 0.5);

struct BilinearKernelOptions {
    std::size_t u_nodes = 96;
    TruncationOptions trunc;
};

// S_R^α(ω1, ω2) evaluated by product integration in (u1, u2).
class BilinearKernel {
public:
    BilinearKernel(int n, double alpha, double R, const BilinearKernelOptions& opt = {});

    int n() const { return n_; }
    double alpha() const { return alpha_; }
    double R() const { return R_; }
    const BilinearKernelOptions& options() const { return opt_; }
    const TriangleRule& rule() const { return rule_; }

    KernelValue operator()(const HeisenbergPoint& w1, const HeisenbergPoint& w2) const;
    KernelValue radial(double r1, double t1, double r2, double t2) const;

    // a(R u_i; ω)·R at the rule nodes for the three truncation levels.
    void side(double r2, double t, std::vector<double>& q1, std::vector<double>& q2, std::vector<double>& full) const;
    // (2π)^{-2n-2}
    double prefactor() const;

private:
    int n_;
    double alpha_, R_;
    BilinearKernelOptions opt_;
    TriangleRule rule_;
};

KernelValue bilinear_kernel(int n, double alpha, double R, const HeisenbergPoint& w1, const HeisenbergPoint& w2,
                            const BilinearKernelOptions& opt = {});

// R_t^l(ω) = ∫_0^t (1 - λ/t)^l G_λ(ω) dμ(λ).
struct RieszKernelOptions {
    TruncationOptions trunc;
    std::size_t per_panel = 16;
};
KernelValue riesz_means_kernel(int n, double t, int l, const HeisenbergPoint& w, const RieszKernelOptions& opt = {});

enum class RayKind { T, Z, Diagonal };
// Point with homogeneous norm rho on the given ray.
HeisenbergPoint ray_point(int n, RayKind kind, double rho);
std::string ray_name(RayKind kind);

struct RayProfile {
    std::string name;  // e.g. "t1": ω1 on the t-ray, ω2 = 0
    std::vector<double> rho;
    std::vector<double> value;
    std::vector<double> weighted;
    std::vector<double> tail;
    double slope = 0;  // fit of log|S| against log(1+|ω1|) (or |ω2| on side-2 rays)
};

struct DecayProfile {
    int n = 1;
    double alpha = 0;
    int m = 1;
    int kmax = 0;
    std::vector<RayProfile> rays;
    double max_weighted = 0;
};

struct DecayOptions {
    std::size_t radii = 16;
    double rho_min = 0.5;
    double rho_max = 8.0;
    BilinearKernelOptions kernel;
};

// Requires α > 4m - 1.
DecayProfile kernel_decay_profile(int n, double alpha, int m, const DecayOptions& opt = {});
// Same without the threshold check, for flagged runs.
DecayProfile kernel_decay_profile_unchecked(int n, double alpha, int m, const DecayOptions& opt = {});

}  // namespace hriesz
