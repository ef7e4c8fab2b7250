#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hriesz/laguerre.hpp"
#include "hriesz/testfns.hpp"
#include "hriesz/transforms.hpp"

using namespace hriesz;
using namespace hriesz::test;

namespace {

PlanarField gaussian(const Grid& g, double a, cplx c = 0) {
    return PlanarField::sample(1, g, [&](const std::vector<cplx>& z) { return cplx(std::exp(-a * std::norm(z[0] - c))); });
}

PlanarField laguerre_fn(const Grid& g, int k, double lam) {
    return PlanarField::sample(1, g, [&](const std::vector<cplx>& z) {
        return cplx(phi_radial(k, 1, std::abs(lam) * std::norm(z[0])));
    });
}

cplx planar_inner(const PlanarField& a, const PlanarField& b) { return inner(a, b); }

}  // namespace

TEST_SUITE("transforms") {
    TEST_CASE("partial Fourier transform of a Gaussian") {
        Grid g = space_box(1, 1.0, 3, 10.0, 256);
        auto f = SampledField::sample(1, g, [](const HeisenbergPoint& x) {
            double r2 = x.z_norm2();
            return cplx(std::exp(-r2 - x.t() * x.t() / 2));
        });
        for (double lam : {0.0, 0.5, 1.0, 3.0, -2.0}) {
            PlanarField F = partial_ft(f, lam);
            for (std::size_t i = 0; i < F.size(); ++i) {
                cplx want = std::sqrt(2 * M_PI) * std::exp(-lam * lam / 2) * std::exp(-F.r2_at(i));
                CHECK(std::abs(F[i] - want) <= 1e-8);
            }
        }
    }

    TEST_CASE("partial transform is linear and conjugate symmetric on real input") {
        Grid g = space_lattice(0.5, 12, 0.25, 64);
        SampledField a = random_band_limited(1, 11).sample(g);
        SampledField b = random_band_limited(1, 12).sample(g);
        SampledField c = linear_combination(cplx(2, -1), a, cplx(0.5, 0), b);
        for (double lam : {0.4, 1.7}) {
            PlanarField Fa = partial_ft(a, lam), Fb = partial_ft(b, lam), Fc = partial_ft(c, lam);
            PlanarField Fm = partial_ft(a, -lam);
            for (std::size_t i = 0; i < Fa.size(); ++i) {
                CHECK(std::abs(Fc[i] - (cplx(2, -1) * Fa[i] + 0.5 * Fb[i])) <= 1e-12 * (1 + std::abs(Fc[i])));
                CHECK(std::abs(Fm[i] - std::conj(Fa[i])) <= 1e-13 * (1 + std::abs(Fa[i])));
            }
        }
    }

    TEST_CASE("lambda = 0 is the Euclidean convolution") {
        Grid g = planar_lattice(0.2, 64);
        double a = 1.0, b = 0.5;
        PlanarField F = gaussian(g, a), G = gaussian(g, b);
        for (TwistedPath path : {TwistedPath::Auto, TwistedPath::Generic}) {
            PlanarField H = twisted_conv(F, G, 0.0, path);
            PlanarField want = gaussian(g, a * b / (a + b));
            for (std::size_t i = 0; i < want.size(); ++i) want[i] *= M_PI / (a + b);
            CHECK(diff_l2_inside(H, want, 4.0) <= 1e-8 * norm_inside(want, 4.0));
        }
    }

    TEST_CASE("generic and specialized paths agree") {
        Grid g = planar_lattice(0.25, 40);
        PlanarField F = gaussian(g, 0.7, cplx(0.5, -0.3)), G = gaussian(g, 0.4, cplx(-0.2, 0.6));
        for (double lam : {-1.0, 0.6}) {
            PlanarField A = twisted_conv(F, G, lam, TwistedPath::Auto);
            PlanarField B = twisted_conv(F, G, lam, TwistedPath::Generic);
            CHECK(relative_l2(A, B) <= 1e-12);
        }
    }

    TEST_CASE("Laguerre functions are orthogonal under twisted convolution") {
        Grid g = planar_lattice(0.15, 128);
        for (double lam : {1.0, 2.0, -1.0}) {
            std::vector<int> ks{0, 1, 2, 3};
            for (int l = 0; l <= 3; ++l) {
                PlanarField Fl = laguerre_fn(g, l, lam);
                std::vector<PlanarField> out = twisted_conv_laguerre(Fl, lam, std::abs(lam), ks);
                double scale = Fl.l2_norm();
                for (int k : ks) {
                    if (k == l) {
                        cplx c = planar_inner(out[k], Fl) / planar_inner(Fl, Fl);
                        // φ_k^λ ∗_λ φ_k^λ = (2π)^n |λ|^{-n} φ_k^λ
                        CHECK(std::abs(c * std::abs(lam) - 2 * M_PI) <= 1e-6 * 2 * M_PI);
                        PlanarField r = linear_combination(cplx(1), out[k], -c, Fl);
                        CHECK(r.l2_norm() <= 1e-6 * std::abs(c) * scale);
                    } else {
                        CHECK(out[k].l2_norm() <= 1e-6 * 2 * M_PI / std::abs(lam) * scale);
                    }
                }
            }
        }
    }

    TEST_CASE("twisted convolution does not commute") {
        Grid g = planar_lattice(0.2, 64);
        PlanarField F = gaussian(g, 0.8, cplx(1.0, 0)), G = gaussian(g, 0.8, cplx(0, 1.0));
        PlanarField FG = twisted_conv(F, G, 1.0), GF = twisted_conv(G, F, 1.0);
        CHECK(relative_l2(FG, GF) > 1e-2);
        PlanarField FG0 = twisted_conv(F, G, 0.0), GF0 = twisted_conv(G, F, 0.0);
        CHECK(diff_l2_inside(FG0, GF0, 9.0) <= 1e-8 * norm_inside(FG0, 9.0));
    }

    TEST_CASE("approximate identity") {
        Grid g = planar_lattice(0.05, 192);
        PlanarField F = gaussian(g, 0.5, cplx(0.4, 0.2));
        for (double eps : {0.4, 0.2}) {
            PlanarField G = PlanarField::sample(1, g, [&](const std::vector<cplx>& z) {
                return cplx(std::exp(-std::norm(z[0]) / (eps * eps)) / (M_PI * eps * eps));
            });
            PlanarField H = twisted_conv(F, G, 1.0);
            double e = diff_l2_inside(H, F, 9.0) / norm_inside(F, 9.0);
            MESSAGE("eps=" << eps << " rel err " << e);
            CHECK(e <= (eps < 0.3 ? 0.05 : 0.2));
        }
    }

    TEST_CASE("Young inequality") {
        Grid g = planar_lattice(0.2, 64);
        for (std::uint64_t s = 0; s < 3; ++s) {
            auto rng = seeded_stream(s, 0x70);
            std::uniform_real_distribution<double> U(-1, 1);
            cplx c1(U(rng), U(rng)), c2(U(rng), U(rng));
            PlanarField F = gaussian(g, 0.5 + 0.4 * std::abs(U(rng)), c1);
            PlanarField G = gaussian(g, 0.5 + 0.4 * std::abs(U(rng)), c2);
            for (double lam : {0.0, 1.3})
                CHECK(twisted_conv(F, G, lam).l2_norm() <= F.lp_norm(1) * G.l2_norm() * (1 + 1e-10));
        }
    }

    TEST_CASE("group convolution matches the radial-kernel path") {
        Grid g = space_lattice(0.3, 20, 0.3, 32);
        SampledField f = SampledField::sample(1, g, [](const HeisenbergPoint& x) {
            return cplx(std::exp(-0.8 * std::norm(x.z(0) - cplx(0.3, 0)) - 0.6 * x.t() * x.t()));
        });
        auto K = [](double r2, double t) { return cplx(std::exp(-r2 - 0.9 * t * t)); };
        SampledField k = SampledField::sample(1, g, [&](const HeisenbergPoint& x) { return K(x.z_norm2(), x.t()); });
        SampledField a = group_conv(f, k);
        SampledField b = group_conv_radial(f, K, g);
        CHECK(relative_l2(a, b) <= 1e-3);
    }
}
