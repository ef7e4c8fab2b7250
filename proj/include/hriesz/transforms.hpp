#pragma once

#include <functional>
#include <vector>

#include "hriesz/grid.hpp"

namespace hriesz {

// f^λ(z) = ∫ e^{iλt} f(z,t) dt on the field's t-quadrature.
PlanarField partial_ft(const SampledField& f, double lambda);

// Auto takes the specialized n=1 loop when possible; Generic forces the any-n loop.
enum class TwistedPath { Auto, Generic };

// (F ∗_λ G)(z) = ∫ F(z-ω) G(ω) e^{(i/2)λ Im(z·ω̄)} dω, output on F's grid.
// G is read at lattice differences when its grid is aligned with F's, and by
// multilinear interpolation otherwise; outside its box G is zero.
PlanarField twisted_conv(const PlanarField& F, const PlanarField& G, double lambda,
                         TwistedPath path = TwistedPath::Auto);

// F ∗_λ [z ↦ φ_k(√scale·z)] for every k in ks; φ_k evaluated exactly on the
// difference lattice. scale = |λ| gives F ∗_λ φ_k^λ.
std::vector<PlanarField> twisted_conv_laguerre(const PlanarField& F, double lambda, double scale,
                                               const std::vector<int>& ks,
                                               TwistedPath path = TwistedPath::Auto);

struct GroupConvOptions {
    // Lagrange order for off-grid t arguments (2 is linear).
    int t_order = 6;
    // Input nodes with |value| below this fraction of the maximum are skipped.
    double skip_rel = 1e-15;
};

// (f∗g)(x) = ∫ f(x y^{-1}) g(y) dy on f's grid. The t axes must share spacing.
SampledField group_conv(const SampledField& f, const SampledField& g, const GroupConvOptions& opt = {});

// Kernel depending on (|z|², t) only.
using RadialKernel = std::function<cplx(double r2, double t)>;

// (f∗K)(x) = ∫ f(y) K(y^{-1}x) dy on the grid `out`, K given analytically.
SampledField group_conv_radial(const SampledField& f, const RadialKernel& K, const Grid& out);

// `count` radial kernels evaluated together: K(r2, t, out) fills out[0..count).
using RadialKernelBank = std::function<void(double r2, double t, cplx* out)>;
std::vector<SampledField> group_conv_radial_bank(const SampledField& f, std::size_t count, const RadialKernelBank& K,
                                                 const Grid& out);

}  // namespace hriesz
