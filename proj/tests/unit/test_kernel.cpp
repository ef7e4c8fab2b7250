#include <doctest.h>

#include <cmath>

#include "hriesz/kernel.hpp"
#include "hriesz/laguerre.hpp"
#include "hriesz/quadrature.hpp"

using namespace hriesz;

namespace {

// Normalized Hermite functions h_0..h_K at x.
std::vector<double> hermite_functions(int K, double x) {
    std::vector<double> h(K + 1);
    h[0] = std::pow(M_PI, -0.25) * std::exp(-x * x / 2);
    if (K >= 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (int k = 1; k < K; ++k) h[k + 1] = std::sqrt(2.0 / (k + 1)) * x * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
    return h;
}

// Fourier–Wigner transform ∫ e^{ixξ} h_k(ξ + y/2) h_k(ξ - y/2) dξ for k = 0..K.
std::vector<cplx> wigner_phi(int K, double x, double y) {
    static const QuadRule q = composite_gauss(-24, 24, 96, 16);
    std::vector<cplx> out(K + 1, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        double xi = q.nodes[i];
        auto a = hermite_functions(K, xi + y / 2), b = hermite_functions(K, xi - y / 2);
        cplx e = std::polar(q.weights[i], x * xi);
        for (int k = 0; k <= K; ++k) out[k] += e * a[k] * b[k];
    }
    return out;
}

HeisenbergPoint pt(cplx z, double t) { return HeisenbergPoint({z}, t); }

}  // namespace

TEST_SUITE("kernel") {
    TEST_CASE("Laguerre functions agree with the Fourier-Wigner construction") {
        const int K = 8;
        for (double r : {0.0, 0.7, 2.1, 3.5})
            for (int a = 0; a < 8; ++a) {
                double th = 2 * M_PI * a / 8 + 0.3;
                auto w = wigner_phi(K, r * std::cos(th), r * std::sin(th));
                for (int k = 0; k <= K; ++k) {
                    CHECK(std::abs(w[k].imag()) <= 1e-12);
                    CHECK(std::abs(w[k].real() - phi_radial(k, 1, r * r)) <= 1e-11);
                }
            }
    }

    TEST_CASE("projection kernel against a Wigner-built sum") {
        // G_λ(z,t) = Σ_k (2k+1)^{-2} 2cos(μt) φ_k(√μ z), μ = λ/(2k+1); φ_k from the Wigner oracle is not radial a priori
        const int K = 10;
        for (double lam : {0.5, 2.0})
            for (int a = 0; a < 8; ++a) {
                double th = 2 * M_PI * a / 8;
                cplx z = std::polar(1.3, th);
                double t = 0.7;
                cplx want = 0;
                for (int k = 0; k <= K; ++k) {
                    double mu = lam / (2 * k + 1);
                    auto w = wigner_phi(k, std::sqrt(mu) * z.real(), std::sqrt(mu) * z.imag());
                    want += 2 * std::cos(mu * t) * w[k] / double((2 * k + 1) * (2 * k + 1));
                }
                KernelValue v = projection_kernel(1, lam, pt(z, t), K);
                CHECK(std::abs(want.imag()) <= 1e-12);
                CHECK(std::abs(v.value - want) <= 1e-11);
            }
    }

    TEST_CASE("projection kernel at the origin and its symmetries") {
        for (int K : {16, 64}) {
            long double s = 0;
            for (int k = 0; k <= K; ++k) s += 2.0L / ((2.0L * k + 1) * (2.0L * k + 1));
            KernelValue v = projection_kernel(1, 1.3, pt(0, 0), K);
            CHECK(v.value.real() == doctest::Approx(static_cast<double>(s)).epsilon(1e-14));
            CHECK(v.value.imag() == 0);
            CHECK(v.tail_estimate > 0);
            // remainder Σ_{k>K} 2/(2k+1)² ≈ 1/(2K+2)
            CHECK(v.tail_estimate == doctest::Approx(1.0 / (2 * K + 2)).epsilon(0.5));
        }
        HeisenbergPoint w = pt(cplx(0.4, -0.9), 1.1), wm = pt(cplx(0.4, -0.9), -1.1);
        CHECK(projection_kernel(1, 0.8, w, 32).value == projection_kernel(1, 0.8, wm, 32).value);
        // G_λ(z,t) = G_1(√λ z, λt)
        for (double lam : {0.25, 3.0}) {
            HeisenbergPoint d = dilate(std::sqrt(lam), w);
            CHECK(std::abs(projection_kernel(1, lam, w, 32).value - projection_kernel(1, 1.0, d, 32).value) <= 1e-13);
        }
        CHECK_THROWS(projection_kernel(1, 0.0, w, 8));
        CHECK_THROWS(projection_kernel(2, 1.0, w, 8));
    }

    TEST_CASE("side profile is u^n G_u and its tail model helps") {
        TruncationOptions raw;
        raw.kmax = 64;
        raw.tail_correction = false;
        for (double u : {0.3, 1.0, 2.5})
            for (double r : {0.0, 0.8}) {
                SideSums s = side_profile(1, u, r * r, 0.4, raw);
                CHECK(s.full == doctest::Approx(u * projection_kernel(1, u, pt(r, 0.4), 64).value.real()).epsilon(1e-13));
            }
        TruncationOptions ref = raw, corr = raw;
        ref.kmax = 4096;
        corr.tail_correction = true;
        for (double u : {0.5, 1.5})
            for (double r : {0.0, 0.5, 1.5}) {
                double exact = side_profile(1, u, r * r, 0.3, ref).full;
                double e_raw = std::abs(side_profile(1, u, r * r, 0.3, raw).full - exact);
                double e_cor = std::abs(side_profile(1, u, r * r, 0.3, corr).full - exact);
                CHECK(e_cor <= 0.1 * e_raw);
            }
    }

    TEST_CASE("bilinear kernel at the origin") {
        // G_λ(0) = 2Σ(2k+1)^{-2} = π²/4 for every λ, and ∫∫_{u1+u2≤1}(1-u1-u2)^4 u1 u2 = 1/1680
        double want = 4 * std::pow(2 * M_PI, -4) * std::pow(M_PI * M_PI / 8, 2) / 1680;
        BilinearKernelOptions o;
        o.trunc.kmax = 128;
        KernelValue v = bilinear_kernel(1, 4.0, 1.0, pt(0, 0), pt(0, 0), o);
        MESSAGE("S(0,0) = " << v.value << " want " << want);
        CHECK(std::abs(v.value.imag()) <= 1e-14 * want);
        CHECK(v.value.real() == doctest::Approx(want).epsilon(1e-4));
    }

    TEST_CASE("bilinear kernel is real, even in t and bi-radial") {
        BilinearKernel S(1, 3.5, 1.0);
        for (double th : {0.0, 1.0, 2.5}) {
            cplx z1 = std::polar(0.6, th), z2 = std::polar(1.1, -2 * th);
            KernelValue a = S(pt(z1, 0.5), pt(z2, -0.3));
            KernelValue b = S(pt(0.6, -0.5), pt(1.1, 0.3));
            CHECK(a.value.imag() == 0);
            CHECK(std::abs(a.value - b.value) <= 1e-14 * std::abs(b.value));
            CHECK(std::abs(S.radial(0.6, 0.5, 1.1, -0.3).value - a.value) <= 1e-14 * std::abs(b.value));
        }
        CHECK(S.prefactor() == doctest::Approx(std::pow(2 * M_PI, -4)).epsilon(1e-15));
    }

    TEST_CASE("polar integration constant") {
        // ∫_{H^1} (1+|ω|)^{-6} dω = σ B(4,2) with σ = 8π², computed here in (r, t)
        std::vector<double> br{0};
        for (double b = 1e-3; b < 2e6; b *= 2) br.push_back(b);
        QuadRule qr = composite_gauss(br, 12);
        std::vector<double> bt{0};
        for (double b = 1e-6; b < 4e12; b *= 2) bt.push_back(b);
        QuadRule qt = composite_gauss(bt, 12);
        KahanSum<double> s;
        for (std::size_t i = 0; i < qr.size(); ++i)
            for (std::size_t j = 0; j < qt.size(); ++j)
                s.add(qr.weights[i] * qt.weights[j] * qr.nodes[i] * std::pow(1 + hnorm_radial(qr.nodes[i], qt.nodes[j]), -6));
        double I = 2 * M_PI * 2 * s.value();
        CHECK(I == doctest::Approx(2 * M_PI * M_PI / 5).epsilon(1e-6));
    }

    TEST_CASE("Riesz means kernel near t = 0") {
        HeisenbergPoint w = pt(cplx(0.5, 0.2), 0.3);
        for (int l : {0, 1, 2}) {
            double t = 1e-3;
            double want = std::pow(2 * M_PI, -2) * (M_PI * M_PI / 4) * t * t / ((l + 1) * (l + 2));
            KernelValue v = riesz_means_kernel(1, t, l, w);
            CHECK(std::abs(v.value.imag()) <= 1e-12 * want);
            CHECK(v.value.real() == doctest::Approx(want).epsilon(1e-3));
        }
        CHECK_THROWS(riesz_means_kernel(1, 0.0, 0, w));
        CHECK_THROWS(riesz_means_kernel(1, 1.0, -1, w));
    }

    TEST_CASE("decay profile threshold") {
        CHECK_THROWS_AS(kernel_decay_profile(1, 3.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(kernel_decay_profile(1, 7.0, 2), std::invalid_argument);
        DecayOptions o;
        o.radii = 4;
        o.kernel.u_nodes = 32;
        o.kernel.trunc.kmax = 32;
        DecayProfile p = kernel_decay_profile_unchecked(1, 2.5, 1, o);
        CHECK(!p.rays.empty());
        for (const auto& r : p.rays) CHECK(r.rho.size() == 4);
        for (RayKind k : {RayKind::T, RayKind::Z, RayKind::Diagonal})
            CHECK(hnorm(ray_point(1, k, 2.5)) == doctest::Approx(2.5).epsilon(1e-14));
    }
}
