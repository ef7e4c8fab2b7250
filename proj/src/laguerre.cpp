#include "hriesz/laguerre.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hriesz {

namespace {
constexpr double kBig = 1e150;
constexpr double kLogBig = 345.38776394910684;  // ln(1e150)
}  // namespace

double laguerre_poly(int k, int a, double x) {
    if (k < 0) throw std::invalid_argument("laguerre order must be nonnegative");
    double p0 = 1.0;
    if (k == 0) return p0;
    double p1 = 1.0 + a - x;
    for (int j = 1; j < k; ++j) {
        double p2 = ((2.0 * j + 1 + a - x) * p1 - (j + a) * p0) / (j + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

void laguerre_damped_all(int kmax, int a, double x, double* out) {
    if (kmax < 0) return;
    double half = -0.5 * x;
    double scale_log = 0;  // values are p * exp(scale_log)
    double p0 = 1.0;
    out[0] = std::exp(half);
    if (kmax == 0) return;
    double p1 = 1.0 + a - x;
    out[1] = p1 * std::exp(half);
    for (int j = 1; j < kmax; ++j) {
        double p2 = ((2.0 * j + 1 + a - x) * p1 - (j + a) * p0) / (j + 1);
        p0 = p1;
        p1 = p2;
        if (std::fabs(p1) > kBig) {
            p0 /= kBig;
            p1 /= kBig;
            scale_log += kLogBig;
        }
        double e = half + scale_log;
        out[j + 1] = e < -745.0 ? 0.0 : p1 * std::exp(e);
    }
}

double laguerre_damped(int k, int a, double x) {
    if (k < 0) throw std::invalid_argument("laguerre order must be nonnegative");
    std::vector<double> v(static_cast<std::size_t>(k) + 1);
    laguerre_damped_all(k, a, x, v.data());
    return v.back();
}

double laguerre_at_zero(int k, int n) {
    double v = 1;
    for (int j = 1; j <= n - 1; ++j) v *= static_cast<double>(k + j) / j;
    return v;
}

double falling_ratio(int k, int n) {
    double v = 1;
    for (int j = 1; j <= n - 1; ++j) v *= k + j;
    return v;
}

double phi_radial(int k, int n, double r2) { return laguerre_damped(k, n - 1, 0.5 * r2); }

LaguerreTable::LaguerreTable(int n, int kmax, std::vector<double> r2)
    : n_(n), kmax_(kmax), r2_(std::move(r2)), v_(static_cast<std::size_t>(kmax + 1) * r2_.size()) {
    std::vector<double> tmp(static_cast<std::size_t>(kmax) + 1);
    for (std::size_t i = 0; i < r2_.size(); ++i) {
        laguerre_damped_all(kmax, n - 1, 0.5 * r2_[i], tmp.data());
        for (int k = 0; k <= kmax; ++k) v_[static_cast<std::size_t>(k) * r2_.size() + i] = tmp[k];
    }
}

LaguerreBasis::LaguerreBasis(int n, int kmax) : n_(n), kmax_(kmax) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (kmax < 0) throw std::invalid_argument("k_max must be nonnegative");
}

void LaguerreBasis::check_k(int k) const {
    if (k < 0 || k > kmax_)
        throw std::out_of_range("Laguerre order " + std::to_string(k) + " outside 0.." + std::to_string(kmax_));
}

double LaguerreBasis::laguerre(int k, double t) const {
    check_k(k);
    return laguerre_poly(k, n_ - 1, t);
}

static double norm2(const std::vector<cplx>& z) {
    double s = 0;
    for (const auto& v : z) s += std::norm(v);
    return s;
}

double LaguerreBasis::phi(int k, const std::vector<cplx>& z) const {
    check_k(k);
    return phi_radial(k, n_, norm2(z));
}

double LaguerreBasis::phi_lambda(int k, double lambda, const std::vector<cplx>& z) const {
    if (lambda == 0) throw std::invalid_argument("phi_lambda requires lambda != 0");
    check_k(k);
    return phi_radial(k, n_, std::fabs(lambda) * norm2(z));
}

cplx LaguerreBasis::e(int k, double lambda, const HeisenbergPoint& x) const {
    if (lambda == 0) throw std::invalid_argument("e_k^lambda requires lambda != 0");
    check_k(k);
    double v = phi_radial(k, n_, std::fabs(lambda) * x.z_norm2());
    return v * cplx(std::cos(lambda * x.t()), -std::sin(lambda * x.t()));
}

cplx LaguerreBasis::e_tilde(int k, double lambda, const HeisenbergPoint& x) const {
    return e(k, lambda / (2.0 * k + n_), x);
}

}  // namespace hriesz
