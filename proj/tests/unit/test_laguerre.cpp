#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "hriesz/laguerre.hpp"
#include "hriesz/quadrature.hpp"

using namespace hriesz;
using Big = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<320>>;

namespace {

// L_k^a(x) = Σ_i (-1)^i C(k+a, k-i) x^i / i!, summed in 320 digits.
Big laguerre_oracle(int k, int a, double xd) {
    Big x(xd), sum(0), term;
    // c[i] = C(k+a, k-i), walked down from c[k] = 1
    std::vector<Big> c(k + 1);
    c[k] = 1;
    for (int i = k - 1; i >= 0; --i) c[i] = c[i + 1] * Big(a + i + 1) / Big(k - i);
    Big xp(1), fact(1);
    for (int i = 0; i <= k; ++i) {
        if (i > 0) {
            xp *= x;
            fact *= i;
        }
        term = c[i] * xp / fact;
        sum += (i % 2 ? -term : term);
    }
    return sum;
}

}  // namespace

TEST_SUITE("laguerre") {
    TEST_CASE("low orders") {
        for (int n = 1; n <= 3; ++n)
            for (double t : {0.0, 0.3, 2.5, 17.0}) {
                CHECK(laguerre_poly(0, n - 1, t) == 1.0);
                CHECK(laguerre_poly(1, n - 1, t) == doctest::Approx(n - t).epsilon(1e-14));
            }
    }

    TEST_CASE("L_5^0(3) against the exact sum") {
        double ref = static_cast<double>(laguerre_oracle(5, 0, 3.0));
        CHECK(laguerre_poly(5, 0, 3.0) == doctest::Approx(ref).epsilon(1e-14));
        // 1 - 15 + 45 - 45 + 16.875 - 2.025
        CHECK(ref == doctest::Approx(0.85).epsilon(1e-15));
    }

    TEST_CASE("values at zero") {
        for (int n = 1; n <= 4; ++n)
            for (int k = 0; k <= 64; ++k) {
                double exact = std::round(std::exp(std::lgamma(k + n) - std::lgamma(k + 1) - std::lgamma(n)));
                CHECK(std::abs(laguerre_poly(k, n - 1, 0.0) - exact) <= 1e-10 * exact);
                CHECK(laguerre_at_zero(k, n) == doctest::Approx(exact).epsilon(1e-12));
                CHECK(phi_radial(k, n, 0.0) == doctest::Approx(exact).epsilon(1e-10));
            }
    }

    TEST_CASE("recurrence stability against high precision") {
        int checked = 0;
        for (int k : {16, 64, 128, 256})
            for (double t : {0.5, 7.0, 40.0, 120.0, 200.0})
                for (int a : {0, 1, 2}) {
                    Big ref = laguerre_oracle(k, a, t);
                    double r = static_cast<double>(ref);
                    double v = laguerre_poly(k, a, t);
                    REQUIRE(std::isfinite(v));
                    if (std::abs(r) > 1e-300) {
                        // Cancellation bound: the recurrence loses about log10(Σ|terms| / |L|) digits.
                        CHECK(std::abs(v - r) <= 1e-8 * std::abs(r));
                        ++checked;
                    }
                    // Damped product from the exponent-tracking path.
                    double damped = static_cast<double>(ref * boost::multiprecision::exp(Big(-t / 2)));
                    double dv = laguerre_damped(k, a, t);
                    CHECK(std::abs(dv - damped) <= 1e-8 * std::abs(damped) + 1e-300);
                }
        CHECK(checked > 40);
    }

    TEST_CASE("orthogonality by Gauss-Laguerre") {
        for (int n = 1; n <= 3; ++n) {
            QuadRule q = gauss_laguerre(40, n - 1);
            for (int k = 0; k <= 20; ++k)
                for (int l = 0; l <= 20; ++l) {
                    double s = 0;
                    for (std::size_t i = 0; i < q.size(); ++i)
                        s += q.weights[i] * laguerre_poly(k, n - 1, q.nodes[i]) * laguerre_poly(l, n - 1, q.nodes[i]);
                    double nk = falling_ratio(k, n);
                    double want = k == l ? nk : 0.0;
                    CHECK(std::abs(s - want) <= 1e-8 * std::sqrt(nk * falling_ratio(l, n)));
                }
        }
    }

    TEST_CASE("phi_k and scaled variants") {
        LaguerreBasis B(1, 16);
        std::vector<cplx> z{cplx(0.7, -1.2)};
        double r2 = std::norm(z[0]);
        CHECK(B.phi(0, z) == doctest::Approx(std::exp(-r2 / 4)));
        for (int k = 0; k <= 16; ++k) {
            CHECK(B.phi_lambda(k, 1.0, z) == B.phi(k, z));
            for (double lam : {0.3, -2.0}) {
                std::vector<cplx> zs{std::sqrt(std::abs(lam)) * z[0]};
                CHECK(B.phi_lambda(k, lam, z) == doctest::Approx(B.phi(k, zs)).epsilon(1e-14));
            }
        }
        CHECK(B.phi_lambda(0, 0.6, z) == doctest::Approx(std::exp(-0.6 * r2 / 4)));
        CHECK_THROWS(B.phi(17, z));
        CHECK_THROWS(B.phi_lambda(1, 0.0, z));
        CHECK_THROWS(B.e(1, 0.0, HeisenbergPoint(1)));
    }

    TEST_CASE("matrix coefficients e and e-tilde") {
        int n = 2;
        LaguerreBasis B(n, 8);
        HeisenbergPoint x({cplx(0.3, 0.1), cplx(-0.4, 0.9)}, 0.0);
        for (int k = 0; k <= 8; ++k) {
            cplx e0 = B.e(k, 0.8, x);
            CHECK(e0.imag() == 0);
            CHECK(e0.real() == doctest::Approx(B.phi_lambda(k, 0.8, x.z())));
            HeisenbergPoint xt = x;
            xt.set_t(2.3);
            CHECK(std::abs(B.e(k, 0.8, xt)) == doctest::Approx(std::abs(e0)).epsilon(1e-14));
            HeisenbergPoint o({cplx(0), cplx(0)}, 1.7);
            double lam = 1.3;
            cplx want = std::exp(cplx(0, -lam * 1.7 / (2 * k + n))) * laguerre_at_zero(k, n);
            CHECK(std::abs(B.e_tilde(k, lam, o) - want) <= 1e-12 * std::abs(want));
        }
    }

    TEST_CASE("sup norm law at n = 1, 2") {
        for (int n = 1; n <= 2; ++n) {
            double lo = 1e300, hi = 0;
            for (int k = 0; k <= 32; ++k) {
                double best = 0;
                for (int i = 0; i <= 20000; ++i) best = std::max(best, std::abs(phi_radial(k, n, 0.01 * i)));
                double c = best / falling_ratio(k, n);
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            MESSAGE("n=" << n << " c_n in [" << lo << ", " << hi << "]");
            CHECK(hi / lo - 1 <= 0.01);
        }
    }

    TEST_CASE("L2 norm of phi_k^lambda") {
        // At n = 1, ∫ φ_k(√|λ| z)² dz = 2π/|λ|; fit C in ∥φ_k^λ∥ ≤ C|λ|^{-n/2} k^{(n-1)/2}.
        int n = 1;
        double Cmax = 0;
        for (double lam : {0.25, 1.0, 4.0})
            for (int k = 0; k <= 24; ++k) {
                // φ_k(√λ z) is negligible beyond λ|z|²/2 = 4k + 100
                QuadRule q = composite_gauss(0, std::sqrt(2 * (4.0 * k + 100) / lam), 80, 16);
                double s = 0;
                for (std::size_t i = 0; i < q.size(); ++i) {
                    double r = q.nodes[i];
                    double v = phi_radial(k, n, std::abs(lam) * r * r);
                    s += q.weights[i] * 2 * M_PI * r * v * v;
                }
                double norm = std::sqrt(s);
                CHECK(norm == doctest::Approx(std::sqrt(2 * M_PI / std::abs(lam))).epsilon(1e-9));
                Cmax = std::max(Cmax, norm / (std::pow(std::abs(lam), -n / 2.0) * std::pow(std::max(k, 1), (n - 1) / 2.0)));
            }
        MESSAGE("fitted C = " << Cmax);
        CHECK(Cmax == doctest::Approx(std::sqrt(2 * M_PI)).epsilon(1e-9));
    }

    TEST_CASE("table rows match pointwise evaluation") {
        std::vector<double> r2{0, 0.5, 3, 40};
        LaguerreTable T(2, 10, r2);
        for (int k = 0; k <= 10; ++k)
            for (std::size_t i = 0; i < r2.size(); ++i) CHECK(T(k, i) == doctest::Approx(phi_radial(k, 2, r2[i])).epsilon(1e-13));
    }
}
