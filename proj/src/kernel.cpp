#include "hriesz/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "hriesz/laguerre.hpp"

namespace hriesz {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int m) {
    double v = 1;
    for (int i = 2; i <= m; ++i) v *= i;
    return v;
}

// (x/2)^{1-n} J_{n-1}(x), continuous at x = 0.
double bessel_hat(int n, double x) {
    if (x < 1e-6) {
        // Leading two terms of the series.
        double a = 1.0 / factorial(n - 1);
        return a * (1.0 - x * x / (4.0 * n));
    }
    return std::pow(0.5 * x, 1 - n) * std::cyl_bessel_j(static_cast<double>(n - 1), x);
}

double sinc(double x) { return std::fabs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

double side_tail_model(int n, double u, double r2, double t, int K) {
    if (u <= 0) return 0.0;
    double S = 2.0 * K + 1 + n;
    double J = bessel_hat(n, std::sqrt(u * r2));
    return std::pow(2.0, 1 - n) * J * std::pow(u, n) * sinc(u * t / S) / S;
}

SideSums side_profile(int n, double u, double r2, double t, const TruncationOptions& opt) {
    SideSums out;
    if (u <= 0) return out;
    const int K = opt.kmax;
    const int k1 = K / 4, k2 = K / 2;
    std::vector<double> buf(static_cast<std::size_t>(K) + 1);
    double un = std::pow(u, n);
    KahanSum<double> acc;
    for (int k = 0; k <= K; ++k) {
        double s = 2.0 * k + n;
        double mu = u / s;
        double phi = laguerre_damped(k, n - 1, 0.5 * mu * r2);
        acc.add(un * std::pow(s, -n - 1) * 2.0 * std::cos(mu * t) * phi);
        if (k == k1) out.q1 = acc.value();
        if (k == k2) out.q2 = acc.value();
    }
    out.full = acc.value();
    if (opt.tail_correction) {
        out.q1 += side_tail_model(n, u, r2, t, k1);
        out.q2 += side_tail_model(n, u, r2, t, k2);
        out.full += side_tail_model(n, u, r2, t, K);
    }
    return out;
}

SideTable side_table(int n, const std::vector<double>& u, const std::vector<double>& r, const std::vector<double>& t,
                     const TruncationOptions& opt) {
    SideTable tab;
    const std::size_t nu = u.size(), nr = r.size(), nt = t.size();
    tab.nu = nu;
    tab.nr = nr;
    tab.nt = nt;
    const int K = opt.kmax;
    const int k1 = K / 4, k2 = K / 2;
    const std::size_t nk = static_cast<std::size_t>(K) + 1;
    // lag[(p·nu + i)·nk + k] = u^n (2k+n)^{-n-1} φ_k;  cs[(q·nu + i)·nk + k] = 2cos(u t/(2k+n))
    std::vector<double> lag(nr * nu * nk), cs(nt * nu * nk);
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < nr; ++p)
        for (std::size_t i = 0; i < nu; ++i) {
            double un = std::pow(u[i], n);
            for (int k = 0; k <= K; ++k) {
                double s = 2.0 * k + n;
                lag[(p * nu + i) * nk + k] =
                    un * std::pow(s, -n - 1) * laguerre_damped(k, n - 1, 0.5 * (u[i] / s) * r[p] * r[p]);
            }
        }
    for (std::size_t q = 0; q < nt; ++q)
        for (std::size_t i = 0; i < nu; ++i)
            for (int k = 0; k <= K; ++k) cs[(q * nu + i) * nk + k] = 2.0 * std::cos(u[i] * t[q] / (2.0 * k + n));
    // Tail model 2^{1-n} Ĵ u^n sinc(ut/S)/S with the Bessel factor hoisted out of the t loop.
    std::vector<double> jh(nr * nu, 0.0);
    if (opt.tail_correction)
        for (std::size_t p = 0; p < nr; ++p)
            for (std::size_t i = 0; i < nu; ++i)
                jh[p * nu + i] = std::pow(2.0, 1 - n) * std::pow(u[i], n) * bessel_hat(n, std::sqrt(u[i]) * r[p]);
    auto tail = [&](std::size_t p, std::size_t q, std::size_t i, int k) {
        double S = 2.0 * k + 1 + n;
        return jh[p * nu + i] * sinc(u[i] * t[q] / S) / S;
    };
    tab.q1.assign(nr * nt * nu, 0);
    tab.q2.assign(nr * nt * nu, 0);
    tab.full.assign(nr * nt * nu, 0);
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < nr; ++p)
        for (std::size_t q = 0; q < nt; ++q)
            for (std::size_t i = 0; i < nu; ++i) {
                if (u[i] <= 0) continue;
                const double* L = &lag[(p * nu + i) * nk];
                const double* C = &cs[(q * nu + i) * nk];
                double acc = 0, s1 = 0, s2 = 0;
                for (int k = 0; k <= K; ++k) {
                    acc += L[k] * C[k];
                    if (k == k1) s1 = acc;
                    if (k == k2) s2 = acc;
                }
                std::size_t idx = tab.index(p, q, i);
                tab.q1[idx] = s1;
                tab.q2[idx] = s2;
                tab.full[idx] = acc;
                if (opt.tail_correction) {
                    tab.q1[idx] += tail(p, q, i, k1);
                    tab.q2[idx] += tail(p, q, i, k2);
                    tab.full[idx] += tail(p, q, i, K);
                }
            }
    return tab;
}

KernelValue projection_kernel(int n, double lambda, const HeisenbergPoint& w, int kmax) {
    if (!(lambda > 0)) throw std::invalid_argument("projection_kernel requires lambda > 0");
    if (w.n() != n) throw std::invalid_argument("projection_kernel: dimension mismatch");
    double r2 = w.z_norm2(), t = w.t();
    int k1 = kmax / 4, k2 = kmax / 2;
    KahanSum<double> acc;
    double s1 = 0, s2 = 0;
    for (int k = 0; k <= kmax; ++k) {
        double s = 2.0 * k + n;
        double mu = lambda / s;
        acc.add(std::pow(s, -n - 1) * 2.0 * std::cos(mu * t) * laguerre_damped(k, n - 1, 0.5 * mu * r2));
        if (k == k1) s1 = acc.value();
        if (k == k2) s2 = acc.value();
    }
    KernelValue v;
    v.value = acc.value();
    v.tail_estimate = kmax >= 4 ? geometric_tail(s1, s2, acc.value()) : 0.0;
    return v;
}

std::vector<double> graded_breakpoints(std::size_t levels, double ratio) {
    std::vector<double> b;
    double g = 1.0;
    for (std::size_t i = 0; i < levels; ++i) {
        g *= ratio;
        b.push_back(1.0 - g);
    }
    return b;
}

TriangleRule::Multiplier riesz_multiplier(double alpha) {
    return [alpha](double s) { return s < 1 ? std::pow(1 - s, alpha) : 0.0; };
}

TriangleRule::TriangleRule(std::size_t N, const Multiplier& M, std::vector<double> breakpoints,
                           std::size_t grading) {
    if (N < 2) throw std::invalid_argument("TriangleRule needs N >= 2");
    nodes_ = chebyshev_lobatto(N);
    // Outer s-rule: uniform panels merged with geometric grading toward s=1 and user breakpoints.
    std::set<double> bp{0.0, 1.0};
    std::size_t uni = std::max<std::size_t>(20, N / 3);
    for (std::size_t i = 1; i < uni; ++i) bp.insert(static_cast<double>(i) / uni);
    for (double b : graded_breakpoints(grading)) bp.insert(b);
    for (double b : breakpoints)
        if (b > 0 && b < 1) bp.insert(b);
    std::vector<double> bpv(bp.begin(), bp.end());
    QuadRule outer = composite_gauss(bpv, 24);
    QuadRule inner = gauss_legendre(N + 2, 0.0, 1.0);
    const std::size_t V = inner.size();

    Eigen::MatrixXd What = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd A(V, N), B(V, N);
    std::vector<double> tv(N);
    for (std::size_t q = 0; q < outer.size(); ++q) {
        double s = outer.nodes[q];
        double ms = M(s);
        if (ms == 0) continue;
        for (std::size_t v = 0; v < V; ++v) {
            double sw = std::sqrt(inner.weights[v]);
            chebyshev_values(2 * s * inner.nodes[v] - 1, N, tv.data());
            for (std::size_t a = 0; a < N; ++a) A(v, a) = sw * tv[a];
            chebyshev_values(2 * s * (1 - inner.nodes[v]) - 1, N, tv.data());
            for (std::size_t a = 0; a < N; ++a) B(v, a) = sw * tv[a];
        }
        What.noalias() += (outer.weights[q] * ms * s) * (A.transpose() * B);
    }
    std::vector<double> cm = chebyshev_coeff_matrix(N);
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> C(cm.data(), N, N);
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> Wm = C.transpose() * What * C;
    W_.assign(Wm.data(), Wm.data() + N * N);
}

double TriangleRule::contract(const double* a, const double* b) const {
    const std::size_t N = nodes_.size();
    double s = 0;
    for (std::size_t i = 0; i < N; ++i) {
        if (a[i] == 0) continue;
        double r = 0;
        for (std::size_t j = 0; j < N; ++j) r += W_[i * N + j] * b[j];
        s += a[i] * r;
    }
    return s;
}

cplx TriangleRule::contract(const cplx* a, const cplx* b) const {
    const std::size_t N = nodes_.size();
    cplx s = 0;
    for (std::size_t i = 0; i < N; ++i) {
        cplx r = 0;
        for (std::size_t j = 0; j < N; ++j) r += W_[i * N + j] * b[j];
        s += a[i] * r;
    }
    return s;
}

BilinearKernel::BilinearKernel(int n, double alpha, double R, const BilinearKernelOptions& opt)
    : n_(n), alpha_(alpha), R_(R), opt_(opt), rule_(opt.u_nodes, riesz_multiplier(alpha)) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (!(alpha >= 0)) throw std::invalid_argument("bilinear kernel requires alpha >= 0");
    if (!(R > 0)) throw std::invalid_argument("bilinear kernel requires R > 0");
}

double BilinearKernel::prefactor() const { return std::pow(2 * kPi, -2 * n_ - 2); }

void BilinearKernel::side(double r2, double t, std::vector<double>& q1, std::vector<double>& q2,
                          std::vector<double>& full) const {
    const std::size_t N = rule_.size();
    q1.assign(N, 0);
    q2.assign(N, 0);
    full.assign(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        SideSums s = side_profile(n_, R_ * rule_.nodes()[i], r2, t, opt_.trunc);
        q1[i] = R_ * s.q1;
        q2[i] = R_ * s.q2;
        full[i] = R_ * s.full;
    }
}

KernelValue BilinearKernel::radial(double r1, double t1, double r2, double t2) const {
    std::vector<double> a1, a2, a3, b1, b2, b3;
    side(r1 * r1, t1, a1, a2, a3);
    side(r2 * r2, t2, b1, b2, b3);
    double p = prefactor();
    double s1 = p * rule_.contract(a1.data(), b1.data());
    double s2 = p * rule_.contract(a2.data(), b2.data());
    double s3 = p * rule_.contract(a3.data(), b3.data());
    return {s3, geometric_tail(s1, s2, s3)};
}

KernelValue BilinearKernel::operator()(const HeisenbergPoint& w1, const HeisenbergPoint& w2) const {
    if (w1.n() != n_ || w2.n() != n_) throw std::invalid_argument("bilinear kernel: dimension mismatch");
    return radial(std::sqrt(w1.z_norm2()), w1.t(), std::sqrt(w2.z_norm2()), w2.t());
}

KernelValue bilinear_kernel(int n, double alpha, double R, const HeisenbergPoint& w1, const HeisenbergPoint& w2,
                            const BilinearKernelOptions& opt) {
    return BilinearKernel(n, alpha, R, opt)(w1, w2);
}

KernelValue riesz_means_kernel(int n, double t, int l, const HeisenbergPoint& w, const RieszKernelOptions& opt) {
    if (!(t > 0)) throw std::invalid_argument("riesz_means_kernel requires t > 0");
    if (l < 0) throw std::invalid_argument("riesz_means_kernel requires l >= 0");
    double r2 = w.z_norm2(), tw = w.t();
    double osc = (t * std::fabs(tw) / n + std::sqrt(t * r2)) / (2 * kPi);
    std::size_t panels = 2 + static_cast<std::size_t>(std::ceil(2 * osc));
    QuadRule q = composite_gauss(0.0, t, panels, opt.per_panel);
    double s1 = 0, s2 = 0, s3 = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        double u = q.nodes[i];
        double m = std::pow(1 - u / t, l);
        SideSums s = side_profile(n, u, r2, tw, opt.trunc);
        s1 += q.weights[i] * m * s.q1;
        s2 += q.weights[i] * m * s.q2;
        s3 += q.weights[i] * m * s.full;
    }
    double p = std::pow(2 * kPi, -n - 1);
    return {p * s3, geometric_tail(p * s1, p * s2, p * s3)};
}

HeisenbergPoint ray_point(int n, RayKind kind, double rho) {
    HeisenbergPoint p(n);
    switch (kind) {
        case RayKind::T:
            p.set_t(rho * rho);
            break;
        case RayKind::Z:
            p.set_z(0, cplx(2 * rho, 0));
            break;
        case RayKind::Diagonal:
            p.set_z(0, cplx(2 * rho / std::pow(2.0, 0.25), 0));
            p.set_t(rho * rho / std::sqrt(2.0));
            break;
    }
    return p;
}

std::string ray_name(RayKind kind) {
    switch (kind) {
        case RayKind::T:
            return "t";
        case RayKind::Z:
            return "z";
        case RayKind::Diagonal:
            return "d";
    }
    return "?";
}

DecayProfile kernel_decay_profile(int n, double alpha, int m, const DecayOptions& opt) {
    if (m < 1) throw std::invalid_argument("decay profile requires m >= 1");
    if (!(alpha > 4 * m - 1))
        throw std::invalid_argument("decay bound needs alpha > 4m-1 (alpha=" + std::to_string(alpha) +
                                    ", m=" + std::to_string(m) + ")");
    return kernel_decay_profile_unchecked(n, alpha, m, opt);
}

DecayProfile kernel_decay_profile_unchecked(int n, double alpha, int m, const DecayOptions& opt) {
    BilinearKernel S(n, alpha, 1.0, opt.kernel);
    DecayProfile out;
    out.n = n;
    out.alpha = alpha;
    out.m = m;
    out.kmax = opt.kernel.trunc.kmax;
    std::vector<double> rho(opt.radii);
    for (std::size_t i = 0; i < opt.radii; ++i)
        rho[i] = opt.rho_min *
                 std::pow(opt.rho_max / opt.rho_min, opt.radii > 1 ? static_cast<double>(i) / (opt.radii - 1) : 0.0);
    HeisenbergPoint origin(n);
    for (RayKind kind : {RayKind::T, RayKind::Z, RayKind::Diagonal}) {
        for (int role = 0; role < 3; ++role) {
            RayProfile rp;
            rp.name = ray_name(kind) + (role == 0 ? "1" : role == 1 ? "2" : "12");
            std::vector<double> lx, ly;
            for (double r : rho) {
                HeisenbergPoint p = ray_point(n, kind, r);
                const HeisenbergPoint& w1 = role == 1 ? origin : p;
                const HeisenbergPoint& w2 = role == 0 ? origin : p;
                KernelValue v = S(w1, w2);
                double a = std::abs(v.value);
                double wgt = std::pow(1 + hnorm(w1), 2 * m) * std::pow(1 + hnorm(w2), 2 * m);
                rp.rho.push_back(r);
                rp.value.push_back(v.value.real());
                rp.weighted.push_back(a * wgt);
                rp.tail.push_back(v.tail_estimate);
                out.max_weighted = std::max(out.max_weighted, a * wgt);
                if (a > 0) {
                    lx.push_back(std::log(1 + r));
                    ly.push_back(std::log(a));
                }
            }
            rp.slope = lx.size() >= 2 ? fit_slope(lx, ly) : 0.0;
            out.rays.push_back(std::move(rp));
        }
    }
    return out;
}

}  // namespace hriesz
