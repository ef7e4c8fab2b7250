#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hriesz/grid.hpp"

namespace hriesz {

// (k, λ) node with weight for dμ(λ) = (2π)^{-n-1}|λ|^n dλ.
struct SpectralNode {
    int k = 0;
    double lambda = 0;
    double weight = 0;
};

class SpectralGrid {
public:
    SpectralGrid(int n, int kmax, std::vector<SpectralNode> nodes, std::string rule);

    // Every k shares λ ∈ ±[lo, hi], Gauss–Legendre with `count` nodes per sign.
    static SpectralGrid band(int n, int kmax, double lo, double hi, std::size_t count);
    // Per-k substitution λ = u/(2k+n), u ∈ [u_lo, u_hi], intersected with |λ| ∈ [lam_lo, lam_hi].
    static SpectralGrid eigen_band(int n, int kmax, double u_lo, double u_hi, std::size_t count,
                                   double lam_lo = 0, double lam_hi = std::numeric_limits<double>::infinity());
    // eigen_band with at least enough nodes per k to integrate e^{iλτ} for |τ| up to t_width,
    // the largest t-offset a synthesis on that window can see.
    static SpectralGrid eigen_band_resolved(int n, int kmax, double u_lo, double u_hi, std::size_t min_count,
                                            double t_width);

    int n() const { return n_; }
    int kmax() const { return kmax_; }
    const std::vector<SpectralNode>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    const std::string& rule() const { return rule_; }

private:
    int n_, kmax_;
    std::vector<SpectralNode> nodes_;
    std::string rule_;
};

// f^λ ∗_λ φ_k^λ on the planar grid, one array per spectral node.
class SpectralCoefficients {
public:
    SpectralCoefficients(SpectralGrid grid, Grid planar, Axis t_axis, std::vector<std::vector<cplx>> data);

    const SpectralGrid& spectral() const { return grid_; }
    const Grid& planar() const { return planar_; }
    const Axis& t_axis() const { return t_axis_; }
    const std::vector<cplx>& at(std::size_t node) const { return data_[node]; }
    std::vector<cplx>& at(std::size_t node) { return data_[node]; }
    std::size_t size() const { return data_.size(); }

private:
    SpectralGrid grid_;
    Grid planar_;
    Axis t_axis_;
    std::vector<std::vector<cplx>> data_;
};

struct AnalyzeOptions {
    // Use C_k(-λ) = conj C_k(λ) when f is real-valued (detected automatically).
    bool use_real_symmetry = true;
};

bool is_real_field(const FieldBase& f, double tol = 0.0);

SpectralCoefficients analyze(const SampledField& f, const SpectralGrid& grid, const AnalyzeOptions& opt = {});
// Σ_nodes w e^{-iλt} C(z) on the coefficients' planar grid and t axis.
SampledField synthesize(const SpectralCoefficients& c);
SampledField synthesize(const SpectralCoefficients& c, const Axis& t_axis);

// e^{-iλt}(f^λ ∗_λ φ_k^λ)(z) on f's grid.
SampledField project(const SampledField& f, int k, double lambda);
// The planar coefficient f^λ ∗_λ φ_k^λ.
PlanarField projection_coefficient(const SampledField& f, int k, double lambda);

struct TailedField {
    SampledField field;
    double tail_estimate = 0;  // estimated L2 norm of the omitted k-tail
};

// P_λ f = Σ_{k≤kmax} (2k+n)^{-n-1} f∗(ẽ_k^λ + ẽ_k^{-λ}).
TailedField p_lambda(const SampledField& f, double lambda, int kmax);

struct PlancherelResult {
    double lhs = 0;
    double rhs = 0;
    double relative_error() const { return lhs > 0 ? std::abs(lhs - rhs) / lhs : std::abs(lhs - rhs); }
};

PlancherelResult plancherel_check(const SampledField& f, const SpectralGrid& grid);
// rhs from precomputed coefficients.
double plancherel_rhs(const SpectralCoefficients& c);

// Second-order central differences of 𝓛 = -Σ(X_j² + Y_j²); boundary nodes are set to 0.
SampledField sublaplacian_fd(const SampledField& f);

// L2 norm over nodes at least `margin` away from every face.
double interior_norm(const FieldBase& f, std::size_t margin = 1);
// ∥a - c·b∥ / ∥c·b∥ over the interior.
double interior_residual(const SampledField& a, const SampledField& b, cplx c, std::size_t margin = 1);

}  // namespace hriesz
