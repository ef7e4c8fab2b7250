#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "hriesz/bilinear.hpp"
#include "hriesz/kernel.hpp"
#include "hriesz/testfns.hpp"

using namespace hriesz;
using namespace hriesz::test;

namespace {

double gk(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

// ∫ over [a, b] split at the given interior points
double gk_split(const std::function<double(double)>& f, std::vector<double> pts, double a, double b) {
    pts.push_back(a);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double s = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i] >= a && pts[i + 1] <= b && pts[i + 1] > pts[i]) s += gk(f, pts[i], pts[i + 1]);
    return s;
}

const double INF = std::numeric_limits<double>::infinity();

}  // namespace

TEST_SUITE("bilinear") {
    TEST_CASE("smooth step and dyadic partition of unity") {
        CHECK(smooth_step(0.3) == 1);
        CHECK(smooth_step(1.0) == 1);
        CHECK(smooth_step(2.0) == 0);
        CHECK(smooth_step(5.0) == 0);
        double prev = 1;
        for (int i = 0; i <= 100; ++i) {
            double v = smooth_step(1 + i / 100.0);
            CHECK(v <= prev);
            prev = v;
        }
        for (int J : {0, 3, 8})
            for (double s : {1e-4, 0.01, 0.2, 0.77, 1.0, 1.4, 1.99, 2.5}) {
                double sum = 0;
                for (int j = 0; j <= J; ++j) sum += DyadicCutoff::phi(std::ldexp(s, j));
                CHECK(std::abs(sum - (smooth_step(s) - smooth_step(std::ldexp(s, J + 1)))) <= 1e-10);
            }
    }

    TEST_CASE("dyadic pieces sum to the Riesz multiplier") {
        const double alpha = 3.5;
        const int J = 12;
        for (double x : {0.0, 0.3, 0.6, 0.9, 0.99}) {
            double sum = 0;
            for (int j = 0; j <= J; ++j) sum += DyadicCutoff(j, alpha).of_sum(x);
            CHECK(sum == doctest::Approx(std::pow(1 - x, alpha)).epsilon(1e-12));
        }
        CHECK(DyadicCutoff(0, alpha).of_sum(1.0) == 0);
        CHECK(DyadicCutoff(0, alpha).of_sum(1.5) == 0);
        CHECK_THROWS(DyadicCutoff(-1, 1.0));
        CHECK_THROWS(DyadicCutoff(0, -0.5));
    }

    TEST_CASE("dyadic support") {
        for (int j : {0, 2, 5}) {
            DyadicCutoff c(j, 4.0);
            CHECK(c.support_lo() == std::ldexp(1.0, -j - 1));
            CHECK(c.support_hi() == std::ldexp(1.0, -j + 1));
            for (int i = 0; i <= 400; ++i) {
                double d = i / 400.0;  // d = 1 - s - t
                double v = c.of_sum(1 - d);
                if (d <= c.support_lo() || d >= c.support_hi()) CHECK(v == 0);
                CHECK(v >= 0);
            }
            for (double b : c.breakpoints()) {
                CHECK(b > 0);
                CHECK(b < 1);
            }
        }
    }

    TEST_CASE("gamma coefficients against adaptive quadrature") {
        for (int j : {0, 2, 4}) {
            DyadicCutoff c(j, 4.0);
            const int K = 24;
            std::vector<double> s{-0.9, -0.3, 0.0, 0.2, 0.65, 0.95};
            FourierCoeffTable tab = gamma_coeffs(j, 4.0, K, s);
            for (std::size_t i = 0; i < s.size(); ++i) {
                double as = std::abs(s[i]);
                double lo = std::max(0.0, 1 - as - c.support_hi()), hi = std::min(1.0, 1 - as - c.support_lo());
                for (int k : {0, 1, 5, 17, 24}) {
                    // ½∫_{-1}^{1} φ(|s|,|t|) e^{-iπkt} dt = ∫_0^1 φ(|s|,t) cos(πkt) dt
                    double want = hi > lo ? gk_split([&](double t) { return c(as, t) * std::cos(M_PI * k * t); },
                                                     {1 - as - std::ldexp(1.0, -j)}, lo, hi)
                                          : 0.0;
                    CHECK(std::abs(tab.at(i, k) - want) <= 1e-10);
                    CHECK(tab.at(i, -k) == tab.at(i, k));
                    CHECK(tab.at(i, k).imag() == doctest::Approx(0).epsilon(1e-14));
                }
            }
        }
        auto g = gamma_s_grid(3, 32);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(-g[g.size() - 1 - i]).epsilon(1e-15));
    }

    TEST_CASE("triangle rule integrates polynomials exactly") {
        const double alpha = 3.5;
        TriangleRule W(24, riesz_multiplier(alpha), graded_breakpoints(6));
        const auto& u = W.nodes();
        std::vector<double> p(u.size()), q(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            p[i] = u[i];
            q[i] = u[i] * u[i];
        }
        // Dirichlet integral Γ(2)Γ(3)Γ(α+1)/Γ(α+6)
        double want = std::exp(std::lgamma(2) + std::lgamma(3) + std::lgamma(alpha + 1) - std::lgamma(alpha + 6));
        CHECK(W.contract(p.data(), q.data()) == doctest::Approx(want).epsilon(1e-10));
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < u.size(); ++j) CHECK(W.W(i, j) == doctest::Approx(W.W(j, i)).epsilon(1e-12));
    }

    TEST_CASE("dyadic rule against independent quadrature") {
        for (int j : {0, 3, 6}) {
            DyadicCutoff c(j, 4.0);
            TriangleRule W = dyadic_rule(j, 4.0, 32);
            const auto& u = W.nodes();
            std::vector<double> one(u.size(), 1.0), lin(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) lin[i] = 1 - u[i];
            auto bp = c.breakpoints();
            // ∫∫_{u1+u2≤1} M(u1+u2) p(u1) q(u2) = ∫_0^1 M(s) ∫_0^s p(v) q(s-v) dv ds
            double w11 = gk_split([&](double s) { return c.of_sum(s) * s; }, bp, 0, 1);
            double w1l = gk_split([&](double s) { return c.of_sum(s) * (s - s * s / 2); }, bp, 0, 1);
            CHECK(W.contract(one.data(), one.data()) == doctest::Approx(w11).epsilon(1e-8));
            CHECK(W.contract(one.data(), lin.data()) == doctest::Approx(w1l).epsilon(1e-8));
        }
    }

    TEST_CASE("bilinear operator: zero slot, bilinearity, symmetry") {
        Grid g = space_lattice(0.5, 16, 0.5, 24);
        SampledField f = random_band_limited(1, 1, {3, 1.0, 0.3, 0.6, 0.3, 0.6, 3.0, 1.0}).sample(g);
        SampledField h = random_band_limited(1, 2, {3, 1.0, 0.3, 0.6, 0.3, 0.6, 3.0, 1.0}).sample(g);
        SampledField k = random_band_limited(1, 3, {3, 1.0, 0.3, 0.6, 0.3, 0.6, 3.0, 1.0}).sample(g);
        BilinearOptions o;
        o.u_nodes = 12;
        o.kmax = 6;
        SampledField zero(1, g);
        CHECK(apply_bilinear(f, zero, 4.0, 1.0, o).max_abs() == 0);
        CHECK(apply_bilinear(zero, f, 4.0, 1.0, o).max_abs() == 0);

        SampledField fh = linear_combination(cplx(1), f, cplx(2), h);
        SampledField lhs = apply_bilinear(fh, k, 4.0, 1.0, o);
        SampledField rhs = linear_combination(cplx(1), apply_bilinear(f, k, 4.0, 1.0, o), cplx(2),
                                              apply_bilinear(h, k, 4.0, 1.0, o));
        CHECK(relative_l2(lhs, rhs) <= 1e-10);
        CHECK(relative_l2(apply_bilinear(f, k, 4.0, 1.0, o), apply_bilinear(k, f, 4.0, 1.0, o)) <= 1e-12);

        // same inputs, same bits
        SampledField a = apply_bilinear(f, h, 3.0, 1.5, o), b = apply_bilinear(f, h, 3.0, 1.5, o);
        CHECK(a.values() == b.values());
    }

    TEST_CASE("kernel form agrees with the spectral form") {
        Grid g = space_lattice(0.5, 14, 0.5, 18);
        BandLimitedSpec sp{2, 0.5, 0.5, 0.6, 0.3, 0.6, 2.0, 0.5};
        SampledField f = random_band_limited(1, 4, sp).sample(g);
        SampledField h = random_band_limited(1, 5, sp).sample(g);
        BilinearOptions o;
        o.u_nodes = 16;
        o.kmax = 12;
        SampledField A = apply_bilinear(f, h, 4.0, 1.0, o);
        Grid out({lattice_axis(0.5, 3), lattice_axis(0.5, 3), lattice_axis(0.5, 3)});
        SampledField B = apply_bilinear_kernel_form(f, h, 4.0, 1.0, out, o);
        double worst = 0, scale = A.max_abs();
        for (std::size_t i = 0; i < B.size(); ++i) {
            HeisenbergPoint x = B.point_at(i);
            std::vector<std::size_t> idx;
            for (std::size_t d = 0; d < 3; ++d) {
                const Axis& ax = g.axis(d);
                idx.push_back(static_cast<std::size_t>(std::lround((x.flat()[d] - ax.min) / ax.spacing())));
            }
            worst = std::max(worst, std::abs(B[i] - A[g.flat(idx)]));
        }
        MESSAGE("kernel vs spectral: " << worst / scale);
        CHECK(worst <= 1e-10 * scale);
    }

    TEST_CASE("restriction operator") {
        // t spacing 0.25 puts the Nyquist frequency at 4π, above the largest μ = b that enters (k = 0)
        Grid g = space_lattice(0.4, 40, 0.25, 80);
        BandLimitedSpec sp;
        sp.center_radius = 0.5;
        SampledField f = random_band_limited(1, 9, sp).sample(g);
        RestrictionOptions o;
        o.kmax = 12;
        o.count = 16;
        SampledField id = restriction_op(f, [](double) { return 1.0; }, 0.05, 12.0, o);
        double e = relative_l2(id, f);
        MESSAGE("T_1 f vs f: " << e);
        CHECK(e <= 0.02);
        CHECK(restriction_op(f, [](double) { return 0.0; }, 0.05, 12.0, o).max_abs() == 0);
        CHECK_THROWS(restriction_op(f, [](double) { return 1.0; }, 2.0, 2.0, o));
        CHECK_THROWS(restriction_op(f, [](double) { return 1.0; }, 3.0, 1.0, o));

        // sharp cutoffs give T f slow t-tails, so only part of ∥T f∥ lives on the box; ⟨T f, f⟩ sees all of it
        SampledField band = restriction_op(f, [](double) { return 1.0; }, 1.0, 4.0, o);
        double nb = restriction_norm(f, 1.0, 4.0, o);
        CHECK(band.l2_norm() <= nb * (1 + 1e-9));
        double n0 = restriction_norm(f, 0.05, 1.0, o), n2 = restriction_norm(f, 4.0, 12.0, o);
        double all = restriction_norm(f, 0.05, 12.0, o);
        CHECK(n0 * n0 + nb * nb + n2 * n2 == doctest::Approx(all * all).epsilon(1e-3));
        CHECK(all == doctest::Approx(f.l2_norm()).epsilon(0.01));
    }

    TEST_CASE("operator norm estimator") {
        OpSpec z;
        z.kind = OpSpec::Zero;
        OpNormOptions o;
        o.bilinear.u_nodes = 8;
        o.bilinear.kmax = 4;
        CHECK(empirical_opnorm(z, 2, 2, 3, 1, o).max_ratio == 0);
        OpSpec d;
        d.j = 1;
        auto a = empirical_opnorm(d, 2, 2, 2, 5, o), b = empirical_opnorm(d, 2, 2, 2, 5, o);
        CHECK(a.max_ratio > 0);
        CHECK(a.max_ratio == b.max_ratio);
        CHECK(a.p == 1);
        CHECK(product_exponent(INF, INF) == INF);
        CHECK(product_exponent(2, 2) == 1);
        CHECK(lp_exponent_from_reciprocal(0.0) == INF);
        CHECK(lp_exponent_from_reciprocal(0.25) == 4);
    }

    TEST_CASE("smoothness index") {
        CHECK(smoothness_index(1, 1).alpha == 4.0);
        CHECK(smoothness_index(1, 1).region == 5);
        CHECK(smoothness_index(INF, INF).alpha == 3.5);
        CHECK(smoothness_index(INF, INF).region == 1);
        CHECK(smoothness_index(2, INF).alpha == 1.5);
        CHECK(smoothness_index(1, INF).alpha == 2.0);
        CHECK(smoothness_index(INF, 1).alpha == 2.0);
        CHECK(smoothness_index(4, 3).alpha == doctest::Approx(smoothness_index(3, 4).alpha).epsilon(1e-15));
        CHECK(smoothness_index(INF, INF, 2).alpha == 5.5);  // Q = 6
        CHECK(smoothness_index(2, 2, 2).alpha == 0.0);
        CHECK_THROWS(smoothness_index(0.5, 2));
        CHECK_THROWS(smoothness_index(2, 2, 0));
        for (int r = 1; r <= 5; ++r) CHECK(!region_name(r).empty());
        // formulas agree on shared edges of the 1/20 lattice
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j) {
                double p1 = lp_exponent_from_reciprocal(i / 20.0), p2 = lp_exponent_from_reciprocal(j / 20.0);
                SmoothnessIndex s = smoothness_index(p1, p2);
                CHECK(s.alpha == doctest::Approx(smoothness_formula(s.region, p1, p2)).epsilon(1e-14));
                CHECK(s.alpha >= 0);
            }
    }
}
