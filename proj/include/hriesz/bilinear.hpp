#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hriesz/kernel.hpp"
#include "hriesz/spectral.hpp"
#include "hriesz/testfns.hpp"

namespace hriesz {

// Smooth step: 1 on (0, 1], 0 on [2, ∞).
double smooth_step(double s);

// φ(s) = χ(s) - χ(2s), supported in (1/2, 2); Σ_{j≤J} φ(2^j s) = χ(s) - χ(2^{J+1} s).
class DyadicCutoff {
public:
    DyadicCutoff(int j, double alpha);

    int j() const { return j_; }
    double alpha() const { return alpha_; }
    static double phi(double s);
    // φ_j^α(s, t) = (1-s-t)_+^α φ(2^j(1-s-t))
    double operator()(double s, double t) const { return of_sum(s + t); }
    double of_sum(double x) const;
    // Support of φ_j^α in terms of 1 - s - t.
    double support_lo() const;
    double support_hi() const;
    TriangleRule::Multiplier multiplier() const;
    // Values of s + t in (0, 1) where the multiplier switches on or off.
    std::vector<double> breakpoints() const;

private:
    int j_;
    double alpha_;
};

// γ_{j,k}^α(s) = ½ ∫_{-1}^{1} φ_j^α(|s|, |t|) e^{-iπkt} dt for k ∈ [-K, K].
struct FourierCoeffTable {
    int j = 0;
    double alpha = 0;
    int K = 0;
    std::vector<double> s;
    std::vector<cplx> values;  // [i·(2K+1) + k + K]

    cplx at(std::size_t i, int k) const { return values[i * (2 * K + 1) + static_cast<std::size_t>(k + K)]; }
    // Σ_{|k|≤K} γ_k e^{iπkt}
    cplx partial_sum(std::size_t i, double t) const;
};

FourierCoeffTable gamma_coeffs(int j, double alpha, int K, const std::vector<double>& s_nodes);
// Symmetric s nodes in [-1, 1] that resolve the support band of φ_j^α.
std::vector<double> gamma_s_grid(int j, std::size_t per_side = 96);

struct GammaDecayFit {
    double alpha = 0, delta = 0;
    int K = 0;
    std::vector<double> C;  // sup_{s,k} |γ_{j,k}|(1+|k|)^{1+δ} 2^{j(α-δ)}
    double spread() const;  // max/min - 1 over j
};
GammaDecayFit gamma_decay_fit(double alpha, double delta, int jmax, int K);

struct BilinearOptions {
    std::size_t u_nodes = 32;  // Chebyshev–Lobatto nodes in each λ
    int kmax = 16;             // truncation of P_λ
};

// q_f(u_a) = (R u_a)^n P_{R u_a} f at the Chebyshev–Lobatto nodes.
class ProjectedSides {
public:
    ProjectedSides(const SampledField& f, double R, const BilinearOptions& opt = {});

    int n() const { return n_; }
    double R() const { return R_; }
    std::size_t size() const { return q_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const SampledField& q(std::size_t a) const { return q_[a]; }
    double tail_estimate() const { return tail_; }

private:
    int n_;
    double R_;
    std::vector<double> nodes_;
    std::vector<SampledField> q_;
    double tail_ = 0;
};

// (2π)^{-2n-2} R² Σ_ab W_ab q_f(u_a) q_g(u_b)
SampledField combine_sides(const ProjectedSides& f, const ProjectedSides& g, const TriangleRule& W);

SampledField apply_bilinear(const SampledField& f, const SampledField& g, double alpha, double R,
                            const BilinearOptions& opt = {});
SampledField dyadic_piece(const SampledField& f, const SampledField& g, int j, double alpha, double R = 1.0,
                          const BilinearOptions& opt = {});
TriangleRule dyadic_rule(int j, double alpha, std::size_t u_nodes);

// ∫∫ f(xω1^{-1}) g(xω2^{-1}) S_R^α(ω1, ω2) dω1 dω2 on `out`, through the factored kernel.
SampledField apply_bilinear_kernel_form(const SampledField& f, const SampledField& g, double alpha, double R,
                                        const Grid& out, const BilinearOptions& opt = {});

struct RestrictionOptions {
    int kmax = 48;
    std::size_t count = 24;  // minimum Gauss nodes in u per k; raised to resolve the t window
};
// T_m f = ∫_a^b m(λ) P_λ f dμ(λ) on f's grid.
SampledField restriction_op(const SampledField& f, const std::function<double(double)>& m, double a, double b,
                            const RestrictionOptions& opt = {});
// ∥T_1 f∥₂ from ⟨T f, f⟩ (T with m ≡ 1 is an orthogonal projection), so only f's grid is needed.
double restriction_norm(const SampledField& f, double a, double b, const RestrictionOptions& opt = {});

struct RestrictionScaling {
    std::vector<double> b, ratio;
    double exponent = 0;
};
RestrictionScaling restriction_scaling(const SampledField& f, const std::vector<double>& bs,
                                       const RestrictionOptions& opt = {});

// Which bilinear operator the norm estimator samples.
struct OpSpec {
    enum Kind { Full, Dyadic, Zero } kind = Dyadic;
    double alpha = 4;
    double R = 1;
    int j = 0;
    bool scaled = true;  // multiply T_j by 2^{jα}
};

struct OpNormEstimate {
    double p1 = 2, p2 = 2, p = 1;
    std::size_t trials = 0;
    double max_ratio = 0;
    std::vector<int> j;
    std::vector<double> series;  // per-j max ratio when estimating a dyadic family
    double log2_slope = 0;
};

struct OpNormOptions {
    BilinearOptions bilinear;
    BandLimitedSpec functions;
    std::optional<Grid> grid;  // default_norm_grid when unset
};
Grid default_norm_grid(int n);

double lp_exponent_from_reciprocal(double x);  // 1/x, with 0 → ∞
double product_exponent(double p1, double p2);  // 1/p = 1/p1 + 1/p2

OpNormEstimate empirical_opnorm(const OpSpec& op, double p1, double p2, std::size_t trials, std::uint64_t seed,
                                const OpNormOptions& opt);
// Per-j norms of 2^{jα}T_j^α for j = 0..jmax, sharing the projections across j.
OpNormEstimate dyadic_norm_series(double alpha, int jmax, double p1, double p2, std::size_t trials,
                                  std::uint64_t seed, const OpNormOptions& opt);

struct SmoothnessIndex {
    double alpha = 0;
    int region = 0;  // 1..5
    std::string label;
};
// α(p1, p2) of the bilinear theorem, Q = 2n + 2; p = ∞ passed as infinity.
SmoothnessIndex smoothness_index(double p1, double p2, int n = 1);
// The region-r formula evaluated at (p1, p2) regardless of membership.
double smoothness_formula(int region, double p1, double p2, int n = 1);
std::string region_name(int region);

}  // namespace hriesz
