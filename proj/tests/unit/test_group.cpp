#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hriesz/grid.hpp"
#include "hriesz/group.hpp"

using namespace hriesz;

namespace {

HeisenbergPoint random_point(std::mt19937_64& g, int n = 1, double s = 2.0) {
    std::uniform_real_distribution<double> u(-s, s);
    std::vector<cplx> z;
    for (int j = 0; j < n; ++j) z.emplace_back(u(g), u(g));
    return HeisenbergPoint(z, u(g));
}

double max_diff(const HeisenbergPoint& a, const HeisenbergPoint& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.flat().size(); ++i) d = std::max(d, std::abs(a.flat()[i] - b.flat()[i]));
    return d;
}

}  // namespace

TEST_SUITE("hgroup") {
    TEST_CASE("group law examples") {
        HeisenbergPoint x({cplx(1, 0)}, 0), y({cplx(0, 1)}, 0);
        auto p = group_mul(x, y);
        CHECK(p.z(0) == cplx(1, 1));
        CHECK(p.t() == -0.5);
        auto e = identity_point(1);
        CHECK(max_diff(group_mul(e, x), x) == 0);
        CHECK(GroupParams(3).Q() == 8);
    }

    TEST_CASE("inverse, involution, associativity") {
        std::mt19937_64 g(11);
        for (int i = 0; i < 100; ++i) {
            int n = 1 + i % 3;
            auto x = random_point(g, n), y = random_point(g, n), w = random_point(g, n);
            CHECK(max_diff(group_mul(x, group_inv(x)), identity_point(n)) <= 1e-15);
            CHECK(max_diff(group_inv(group_inv(x)), x) == 0);
            CHECK(max_diff(group_mul(group_mul(x, y), w), group_mul(x, group_mul(y, w))) <= 1e-12);
        }
        HeisenbergPoint x({cplx(0, 2)}, 3);
        auto xi = group_inv(x);
        CHECK(xi.z(0) == cplx(0, -2));
        CHECK(xi.t() == -3);
    }

    TEST_CASE("dimension mismatch and bad dilation") {
        CHECK_THROWS_AS(group_mul(HeisenbergPoint(1), HeisenbergPoint(2)), std::invalid_argument);
        CHECK_THROWS_AS(dilate(0.0, HeisenbergPoint(1)), std::invalid_argument);
        CHECK_THROWS_AS(dilate(-1.0, HeisenbergPoint(1)), std::invalid_argument);
    }

    TEST_CASE("dilation and homogeneous norm") {
        HeisenbergPoint x({cplx(1, 0)}, 1);
        auto d = dilate(2, x);
        CHECK(d.z(0) == cplx(2, 0));
        CHECK(d.t() == 4);
        CHECK(max_diff(dilate(1, x), x) == 0);
        CHECK(hnorm(HeisenbergPoint({cplx(0, 0)}, 1)) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(hnorm(HeisenbergPoint({cplx(2, 0)}, 0)) == doctest::Approx(1.0).epsilon(1e-15));
        std::mt19937_64 g(5);
        std::uniform_real_distribution<double> r(0.1, 5);
        for (int i = 0; i < 200; ++i) {
            auto p = random_point(g, 2);
            double s = r(g);
            CHECK(std::abs(hnorm(dilate(s, p)) - s * hnorm(p)) <= 1e-12 * (1 + s * hnorm(p)));
        }
    }

    TEST_CASE("triangle inequality on random pairs") {
        std::mt19937_64 g(17);
        int bad = 0;
        for (int i = 0; i < 10000; ++i) {
            auto x = random_point(g, 1, 3), y = random_point(g, 1, 3);
            if (hnorm(group_mul(x, y)) > hnorm(x) + hnorm(y) + 1e-12) ++bad;
        }
        CHECK(bad == 0);
    }

    TEST_CASE("haar integral of a Gaussian") {
        Grid g = space_box(1, 6, 64, 6, 64);
        auto f = SampledField::sample(1, g, [](const HeisenbergPoint& p) {
            return cplx(std::exp(-(p.z_norm2() + p.t() * p.t())));
        });
        double I = haar_integral(f).real();
        CHECK(std::abs(I - std::pow(std::numbers::pi, 1.5)) / std::pow(std::numbers::pi, 1.5) <= 1e-6);
        CHECK(std::abs(haar_integral(SampledField(1, g))) == 0);
    }

    TEST_CASE("haar measure: left translation and dilation") {
        Grid g({lattice_axis(0.25, 64), lattice_axis(0.25, 64), lattice_axis(0.25, 96)});
        auto F = [](const HeisenbergPoint& p) { return std::exp(-p.z_norm2() - 0.5 * p.t() * p.t()); };
        auto f = SampledField::sample(1, g, [&](const HeisenbergPoint& p) { return cplx(F(p)); });
        // Shift by a = (0.5 + 0.25i, 0.75): the Jacobian of x ↦ x·a^{-1} is one.
        HeisenbergPoint a({cplx(0.5, 0.25)}, 0.75);
        auto fs = SampledField::sample(1, g, [&](const HeisenbergPoint& p) { return cplx(F(group_mul(p, group_inv(a)))); });
        double I = haar_integral(f).real();
        CHECK(std::abs(haar_integral(fs).real() - I) <= 1e-8 * I);
        double r = 1.5;
        auto fd = SampledField::sample(1, g, [&](const HeisenbergPoint& p) { return cplx(F(dilate(r, p))); });
        CHECK(std::abs(haar_integral(fd).real() - std::pow(r, -4) * I) <= 1e-6 * I);
    }

    TEST_CASE("sampled field invariants") {
        Grid g = space_box(1, 1, 5, 1, 7);
        CHECK(g.size() == 5 * 5 * 7);
        for (std::size_t d = 0; d < g.dims(); ++d)
            for (double w : g.weights(d)) CHECK(w > 0);
        CHECK_THROWS(SampledField(1, g, std::vector<cplx>(3)));
    }
}
