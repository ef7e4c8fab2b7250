#include <doctest.h>

#include <cmath>

#include "hriesz/biradial.hpp"
#include "hriesz/kernel.hpp"
#include "hriesz/spectral.hpp"

using namespace hriesz;

namespace {

// e^{-a r²} e^{-t²/(2σ²)} cos(νt) on the side nodes
std::vector<double> gauss_side(const SideGrid& g, double a, double sigma = 1, double nu = 0) {
    std::vector<double> v(g.size());
    for (std::size_t p = 0; p < g.nr(); ++p)
        for (std::size_t q = 0; q < g.nt(); ++q) {
            double r = g.r.nodes[p], t = g.t.nodes[q];
            v[p * g.nt() + q] = std::exp(-a * r * r - t * t / (2 * sigma * sigma)) * std::cos(nu * t);
        }
    return v;
}

// One-side transform of e^{-a r²}e^{-t²/2} at n = 1: 2π ∫ r L_k(|λ|r²/2) e^{-|λ|r²/4 - a r²} dr · ∫ e^{iλt} e^{-t²/2} dt,
// using ∫_0^∞ e^{-px} L_k(bx) dx = (p-b)^k / p^{k+1}.
double gauss_side_transform(int k, double lam, double a) {
    double p = std::abs(lam) / 4 + a, b = std::abs(lam) / 2;
    return 2 * M_PI * 0.5 * std::pow(p - b, k) / std::pow(p, k + 1) * std::sqrt(2 * M_PI) * std::exp(-lam * lam / 2);
}

}  // namespace

TEST_SUITE("biradial") {
    TEST_CASE("zero input") {
        SideGrid g = SideGrid::composite(6, 2, 8, 2, 8);
        auto F = RadialBiFunction::dense(1, g, g, std::vector<double>(g.size() * g.size(), 0.0));
        CHECK(laguerre_transform_biradial(F, 2, 1, 0.4, -0.7) == cplx(0));
        CHECK(biradial_l2(F) == 0);
        CHECK_THROWS(laguerre_transform_biradial(F, 0, 0, 0.0, 1.0));
        CHECK_THROWS(laguerre_transform_biradial(F, 0, 0, 1.0, 0.0));
    }

    TEST_CASE("separable Gaussians against the closed form") {
        SideGrid g = SideGrid::composite(10, 4, 12, 4, 16);
        auto f1 = gauss_side(g, 0.5), f2 = gauss_side(g, 0.3);
        auto S = RadialBiFunction::separable(1, g, g, f1, f2);
        auto D = RadialBiFunction::dense(1, g, g, S.to_dense());
        for (int k = 0; k <= 3; ++k)
            for (int l = 0; l <= 3; ++l)
                for (auto [l1, l2] : {std::pair{0.5, -1.2}, {1.5, 0.25}}) {
                    double want = gauss_side_transform(k, l1, 0.5) * gauss_side_transform(l, l2, 0.3);
                    // exact zeros occur at |λ| = 4a, so compare on the scale of the k = l = 0 value
                    double scale = std::abs(gauss_side_transform(0, l1, 0.5) * gauss_side_transform(0, l2, 0.3));
                    cplx a = laguerre_transform_biradial(S, k, l, l1, l2);
                    cplx b = laguerre_transform_biradial(D, k, l, l1, l2);
                    CHECK(std::abs(a - want) <= 1e-10 * scale);
                    CHECK(std::abs(b - a) <= 1e-12 * scale);
                }
        CHECK(biradial_relative_l2(S, D) <= 1e-14);
    }

    TEST_CASE("biradial L2 norm of a product") {
        SideGrid g = SideGrid::composite(8, 4, 10, 4, 16);
        auto f1 = gauss_side(g, 0.5), f2 = gauss_side(g, 0.8);
        auto S = RadialBiFunction::separable(1, g, g, f1, f2);
        // ∫∫ r e^{-2ar²} e^{-t²} dr dt = √π / (4a)
        double want = std::sqrt(std::sqrt(M_PI) / 2.0 * std::sqrt(M_PI) / 3.2);
        CHECK(biradial_l2(S) == doctest::Approx(want).epsilon(1e-10));
    }

    TEST_CASE("transform then inverse recovers the function") {
        // t-modulation keeps the spectral mass away from λ = 0, where the k-sum converges only like 1/K
        // r panels of width 2 resolve φ_k^λ up to k = 24, |λ| = 5; width 4 aliases and the error grows with K
        SideGrid g = SideGrid::composite(8, 4, 12, 6, 12);
        auto F = RadialBiFunction::separable(1, g, g, gauss_side(g, 0.35, 2.0, 2.0), gauss_side(g, 0.45, 2.0, 1.5));
        SpectralGrid s = SpectralGrid::band(1, 24, 0.05, 5.0, 24);
        BiradialCoefficients c = laguerre_transform_biradial(F, s, s);
        RadialBiFunction back = inverse_laguerre_transform_biradial(c, g, g);
        double e = biradial_relative_l2(back, F);
        MESSAGE("round trip rel L2 " << e);
        CHECK(e <= 0.02);

        BiradialCoefficients z = biradial_coefficients(1, s, s, [](int, double, int, double) { return cplx(0); });
        CHECK(biradial_l2(inverse_laguerre_transform_biradial(z, g, g)) == 0);
    }

    TEST_CASE("factored kernel and tables match pointwise evaluation") {
        BilinearKernelOptions o;
        o.u_nodes = 32;
        o.trunc.kmax = 32;
        BilinearKernel S(1, 4.0, 1.0, o);
        SideGrid g = SideGrid::composite(2, 1, 2, 1, 4);
        RadialBiFunction F = biradial_kernel(S, g);
        for (std::size_t i1 : {0u, 5u, 13u})
            for (std::size_t i2 : {2u, 9u}) {
                double r1 = g.r.nodes[i1 / g.nt()], t1 = g.t.nodes[i1 % g.nt()];
                double r2 = g.r.nodes[i2 / g.nt()], t2 = g.t.nodes[i2 % g.nt()];
                double want = S.radial(r1, t1, r2, t2).value.real();
                CHECK(F.value(i1, i2) == doctest::Approx(want).epsilon(1e-11));
            }

        std::vector<double> r{0.0, 0.5}, t{-1.0, 0.0, 1.0};
        KernelTable T = tabulate_kernel(S, r, t, r, t);
        CHECK(T.size() == 36u);
        CHECK(T.index(1, 2, 1, 2) == 35u);
        CHECK(T.index(0, 1, 1, 0) == 1u * 6 + 3);
        for (std::size_t i1 = 0; i1 < 2; ++i1)
            for (std::size_t j1 = 0; j1 < 3; ++j1)
                for (std::size_t i2 = 0; i2 < 2; ++i2)
                    for (std::size_t j2 = 0; j2 < 3; ++j2) {
                        KernelValue v = S.radial(r[i1], t[j1], r[i2], t[j2]);
                        cplx got = T.values[T.index(i1, j1, i2, j2)];
                        CHECK(std::abs(got - v.value) <= 1e-12 * std::abs(v.value));
                        CHECK(T.tail[T.index(i1, j1, i2, j2)] <= T.max_tail);
                    }
        CHECK(T.kmax == 32);
        CHECK(T.u_nodes == 32u);
    }
}
