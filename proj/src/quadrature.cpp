#include "hriesz/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hriesz {

void QuadRule::append(const QuadRule& o) {
    nodes.insert(nodes.end(), o.nodes.begin(), o.nodes.end());
    weights.insert(weights.end(), o.weights.begin(), o.weights.end());
}

static QuadRule compute_legendre(std::size_t n) {
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const long double pi = std::numbers::pi_v<long double>;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        {
            long double p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
        }
        long double w = 2 / ((1 - x * x) * dp * dp);
        r.nodes[i] = -static_cast<double>(x);
        r.nodes[n - 1 - i] = static_cast<double>(x);
        r.weights[i] = r.weights[n - 1 - i] = static_cast<double>(w);
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

QuadRule gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre needs n >= 1");
    static std::mutex mu;
    static std::map<std::size_t, QuadRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_legendre(n)).first;
    return it->second;
}

QuadRule gauss_legendre(std::size_t n, double a, double b) {
    QuadRule r = gauss_legendre(n);
    double h = 0.5 * (b - a), c = 0.5 * (b + a);
    for (std::size_t i = 0; i < n; ++i) {
        r.nodes[i] = c + h * r.nodes[i];
        r.weights[i] *= h;
    }
    return r;
}

QuadRule composite_gauss(const std::vector<double>& breakpoints, std::size_t per_panel) {
    QuadRule r;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i + 1] > breakpoints[i])
            r.append(gauss_legendre(per_panel, breakpoints[i], breakpoints[i + 1]));
    return r;
}

QuadRule composite_gauss(double a, double b, std::size_t panels, std::size_t per_panel) {
    std::vector<double> bp(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) bp[i] = a + (b - a) * static_cast<double>(i) / panels;
    return composite_gauss(bp, per_panel);
}

QuadRule gauss_laguerre(std::size_t n, double a) {
    if (n == 0) throw std::invalid_argument("gauss_laguerre needs n >= 1");
    if (!(a > -1)) throw std::invalid_argument("gauss_laguerre needs a > -1");
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    long double z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0) {
            z = (1.0L + a) * (3.0L + 0.92L * a) / (1.0L + 2.4L * n + 1.8L * a);
        } else if (i == 1) {
            z += (15.0L + 6.25L * a) / (1.0L + 0.9L * a + 2.5L * n);
        } else {
            long double ai = i - 1;
            z += ((1.0L + 2.55L * ai) / (1.9L * ai) + 1.26L * ai * a / (1.0L + 3.5L * ai)) *
                 (z - r.nodes[i - 2]) / (1.0L + 0.3L * a);
        }
        long double p1 = 0, p2 = 0, pp = 0;
        for (int it = 0; it < 200; ++it) {
            p1 = 1;
            p2 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                long double p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1 + a - z) * p2 - (j - 1 + a) * p3) / j;
            }
            pp = (n * p1 - (n + a) * p2) / z;
            long double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-18L * std::fabs(z)) break;
        }
        r.nodes[i] = static_cast<double>(z);
        r.weights[i] =
            static_cast<double>(-std::exp(std::lgamma(a + n) - std::lgamma(static_cast<double>(n))) /
                                (pp * n * p2));
    }
    return r;
}

std::vector<double> chebyshev_lobatto(std::size_t n) {
    if (n < 2) throw std::invalid_argument("chebyshev_lobatto needs n >= 2");
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(i) / (n - 1)));
    u.front() = 0.0;
    u.back() = 1.0;
    return u;
}

std::vector<double> chebyshev_coeff_matrix(std::size_t n) {
    // Discrete orthogonality on Lobatto points; x_i = 2u_i - 1 = -cos(π i/(N-1)).
    std::size_t m = n - 1;
    std::vector<double> c(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        double sa = (a == 0 || a == m) ? 1.0 / m : 2.0 / m;
        for (std::size_t i = 0; i < n; ++i) {
            double wi = (i == 0 || i == m) ? 0.5 : 1.0;
            // T_a(-cos θ) = (-1)^a cos(a θ).
            double sign = (a % 2 == 0) ? 1.0 : -1.0;
            c[a * n + i] = sa * wi * sign * std::cos(std::numbers::pi * static_cast<double>(a * i) / m);
        }
    }
    return c;
}

void chebyshev_values(double x, std::size_t n, double* out) {
    if (n == 0) return;
    out[0] = 1;
    if (n == 1) return;
    out[1] = x;
    for (std::size_t a = 2; a < n; ++a) out[a] = 2 * x * out[a - 1] - out[a - 2];
}

double geometric_tail(double s1, double s2, double s3) {
    return geometric_tail(std::complex<double>(s1), std::complex<double>(s2), std::complex<double>(s3));
}

double geometric_tail(std::complex<double> s1, std::complex<double> s2, std::complex<double> s3) {
    double d1 = std::abs(s2 - s1), d2 = std::abs(s3 - s2);
    if (d2 == 0) return 0.0;
    double rho = d1 > 0 ? d2 / d1 : 0.0;
    if (rho > 0.9) rho = 0.9;
    // Never claim less than the last shell itself when shells are not shrinking.
    return std::max(d2 * rho / (1 - rho), d1 > 0 ? 0.0 : d2);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope needs >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace hriesz
