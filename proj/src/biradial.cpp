#include "hriesz/biradial.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hriesz/laguerre.hpp"

namespace hriesz {

namespace {

using MatC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double side_norm_const(int n, int k) {
    return std::pow(2 * std::numbers::pi, n) * std::pow(2.0, 1 - n) / falling_ratio(k, n);
}

// Row ν: c_k w_r w_t r^{2n-1} φ_k(√|λ| r) e^{iλt} over the side nodes.
MatC analysis_rows(int n, const SideGrid& g, const std::vector<SpectralNode>& nodes) {
    MatC P(nodes.size(), g.size());
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        const auto& nd = nodes[v];
        double c = side_norm_const(n, nd.k);
        double al = std::fabs(nd.lambda);
        for (std::size_t p = 0; p < g.nr(); ++p) {
            double r = g.r.nodes[p];
            double rad = c * g.r.weights[p] * std::pow(r, 2 * n - 1) * laguerre_damped(nd.k, n - 1, 0.5 * al * r * r);
            for (std::size_t q = 0; q < g.nt(); ++q) {
                double ph = nd.lambda * g.t.nodes[q];
                P(v, p * g.nt() + q) = rad * g.t.weights[q] * cplx(std::cos(ph), std::sin(ph));
            }
        }
    }
    return P;
}

// Row ν: w_ν φ_k(√|λ| r) e^{-iλt}.
MatC synthesis_rows(int n, const SideGrid& g, const std::vector<SpectralNode>& nodes) {
    MatC P(nodes.size(), g.size());
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        const auto& nd = nodes[v];
        double al = std::fabs(nd.lambda);
        for (std::size_t p = 0; p < g.nr(); ++p) {
            double r = g.r.nodes[p];
            double rad = nd.weight * laguerre_damped(nd.k, n - 1, 0.5 * al * r * r);
            for (std::size_t q = 0; q < g.nt(); ++q) {
                double ph = nd.lambda * g.t.nodes[q];
                P(v, p * g.nt() + q) = rad * cplx(std::cos(ph), -std::sin(ph));
            }
        }
    }
    return P;
}

// Φ·A for the left (or right) factor.
MatC apply_factor(const MatC& Phi, const std::vector<double>& F, std::size_t rows, std::size_t rank) {
    if (F.empty()) return Phi;
    Eigen::Map<const MatD> A(F.data(), rows, rank);
    MatD re = Phi.real() * A, im = Phi.imag() * A;
    MatC out(Phi.rows(), rank);
    out.real() = re;
    out.imag() = im;
    return out;
}

}  // namespace

SideGrid SideGrid::composite(double rmax, std::size_t r_panels, double tmax, std::size_t t_panels,
                             std::size_t per_panel) {
    if (!(rmax > 0) || !(tmax > 0)) throw std::invalid_argument("side grid extents must be positive");
    SideGrid g;
    g.r = composite_gauss(0.0, rmax, r_panels, per_panel);
    g.t = composite_gauss(-tmax, tmax, t_panels, per_panel);
    return g;
}

RadialBiFunction::RadialBiFunction(int n, SideGrid g1, SideGrid g2, std::size_t rank1, std::size_t rank2,
                                   std::vector<double> A, std::vector<double> C, std::vector<double> B)
    : n_(n), g1_(std::move(g1)), g2_(std::move(g2)), rank1_(rank1), rank2_(rank2), A_(std::move(A)),
      C_(std::move(C)), B_(std::move(B)) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (!A_.empty() && A_.size() != g1_.size() * rank1_) throw std::invalid_argument("left factor has wrong shape");
    if (!B_.empty() && B_.size() != g2_.size() * rank2_) throw std::invalid_argument("right factor has wrong shape");
    if (A_.empty() && rank1_ != g1_.size()) throw std::invalid_argument("dense rank must match grid");
    if (B_.empty() && rank2_ != g2_.size()) throw std::invalid_argument("dense rank must match grid");
    if (C_.size() != rank1_ * rank2_) throw std::invalid_argument("core has wrong shape");
}

RadialBiFunction RadialBiFunction::dense(int n, SideGrid g1, SideGrid g2, std::vector<double> values) {
    std::size_t a = g1.size(), b = g2.size();
    return RadialBiFunction(n, std::move(g1), std::move(g2), a, b, {}, std::move(values), {});
}

RadialBiFunction RadialBiFunction::separable(int n, SideGrid g1, SideGrid g2, std::vector<double> f1,
                                             std::vector<double> f2) {
    return RadialBiFunction(n, std::move(g1), std::move(g2), 1, 1, std::move(f1), {1.0}, std::move(f2));
}

RadialBiFunction RadialBiFunction::sample(int n, SideGrid g1, SideGrid g2,
                                          const std::function<double(double, double, double, double)>& F) {
    std::vector<double> v(g1.size() * g2.size());
    for (std::size_t p1 = 0; p1 < g1.nr(); ++p1)
        for (std::size_t q1 = 0; q1 < g1.nt(); ++q1)
            for (std::size_t p2 = 0; p2 < g2.nr(); ++p2)
                for (std::size_t q2 = 0; q2 < g2.nt(); ++q2)
                    v[(p1 * g1.nt() + q1) * g2.size() + p2 * g2.nt() + q2] =
                        F(g1.r.nodes[p1], g1.t.nodes[q1], g2.r.nodes[p2], g2.t.nodes[q2]);
    return dense(n, std::move(g1), std::move(g2), std::move(v));
}

double RadialBiFunction::value(std::size_t i1, std::size_t i2) const {
    if (A_.empty() && B_.empty()) return C_[i1 * rank2_ + i2];
    double s = 0;
    for (std::size_t a = 0; a < rank1_; ++a) {
        double la = left(i1, a);
        if (la == 0) continue;
        for (std::size_t b = 0; b < rank2_; ++b) s += la * C_[a * rank2_ + b] * right(i2, b);
    }
    return s;
}

std::vector<double> RadialBiFunction::to_dense() const {
    if (A_.empty() && B_.empty()) return C_;
    Eigen::Map<const MatD> C(C_.data(), rank1_, rank2_);
    MatD L = A_.empty() ? MatD(C) : MatD(Eigen::Map<const MatD>(A_.data(), g1_.size(), rank1_) * C);
    MatD D = B_.empty() ? L : MatD(L * Eigen::Map<const MatD>(B_.data(), g2_.size(), rank2_).transpose());
    return std::vector<double>(D.data(), D.data() + D.size());
}

double biradial_l2(const RadialBiFunction& F) {
    std::vector<double> d = F.to_dense();
    const SideGrid &g1 = F.grid1(), &g2 = F.grid2();
    const int n = F.n();
    KahanSum<double> s;
    for (std::size_t i1 = 0; i1 < g1.size(); ++i1) {
        std::size_t p1 = i1 / g1.nt(), q1 = i1 % g1.nt();
        double w1 = g1.r.weights[p1] * g1.t.weights[q1] * std::pow(g1.r.nodes[p1], 2 * n - 1);
        for (std::size_t i2 = 0; i2 < g2.size(); ++i2) {
            std::size_t p2 = i2 / g2.nt(), q2 = i2 % g2.nt();
            double w2 = g2.r.weights[p2] * g2.t.weights[q2] * std::pow(g2.r.nodes[p2], 2 * n - 1);
            double v = d[i1 * g2.size() + i2];
            s.add(w1 * w2 * v * v);
        }
    }
    return std::sqrt(s.value());
}

double biradial_relative_l2(const RadialBiFunction& a, const RadialBiFunction& b) {
    std::vector<double> da = a.to_dense(), db = b.to_dense();
    if (da.size() != db.size()) throw std::invalid_argument("bi-radial functions on different grids");
    for (std::size_t i = 0; i < da.size(); ++i) da[i] -= db[i];
    RadialBiFunction diff = RadialBiFunction::dense(a.n(), a.grid1(), a.grid2(), std::move(da));
    double nb = biradial_l2(b);
    return nb > 0 ? biradial_l2(diff) / nb : biradial_l2(diff);
}

RadialBiFunction biradial_kernel(const BilinearKernel& S, const SideGrid& g) {
    const auto& rule = S.rule();
    const std::size_t N = rule.size();
    std::vector<double> u(N);
    for (std::size_t i = 0; i < N; ++i) u[i] = S.R() * rule.nodes()[i];
    SideTable tab = side_table(S.n(), u, g.r.nodes, g.t.nodes, S.options().trunc);
    std::vector<double> A(g.size() * N);
    for (std::size_t p = 0; p < g.nr(); ++p)
        for (std::size_t q = 0; q < g.nt(); ++q)
            for (std::size_t i = 0; i < N; ++i) A[(p * g.nt() + q) * N + i] = S.R() * tab.full[tab.index(p, q, i)];
    std::vector<double> C = rule.matrix();
    for (double& c : C) c *= S.prefactor();
    std::vector<double> B = A;
    return RadialBiFunction(S.n(), g, g, N, N, std::move(A), std::move(C), std::move(B));
}

BiradialCoefficients laguerre_transform_biradial(const RadialBiFunction& F, const SpectralGrid& s1,
                                                 const SpectralGrid& s2) {
    if (s1.n() != F.n() || s2.n() != F.n()) throw std::invalid_argument("spectral grid dimension mismatch");
    MatC T1 = apply_factor(analysis_rows(F.n(), F.grid1(), s1.nodes()), F.A(), F.grid1().size(), F.rank1());
    MatC T2 = apply_factor(analysis_rows(F.n(), F.grid2(), s2.nodes()), F.B(), F.grid2().size(), F.rank2());
    Eigen::Map<const MatD> C(F.C().data(), F.rank1(), F.rank2());
    MatC T1C(T1.rows(), C.cols());
    T1C.real() = T1.real() * C;
    T1C.imag() = T1.imag() * C;
    MatC R = T1C * T2.transpose();
    BiradialCoefficients out{F.n(), s1, s2, {}};
    out.values.assign(R.data(), R.data() + R.size());
    return out;
}

cplx laguerre_transform_biradial(const RadialBiFunction& F, int k, int l, double lambda1, double lambda2) {
    if (lambda1 == 0 || lambda2 == 0) throw std::invalid_argument("laguerre transform requires nonzero lambda");
    SpectralGrid a(F.n(), k, {{k, lambda1, 1.0}}, "point");
    SpectralGrid b(F.n(), l, {{l, lambda2, 1.0}}, "point");
    return laguerre_transform_biradial(F, a, b).values[0];
}

BiradialCoefficients biradial_coefficients(int n, const SpectralGrid& s1, const SpectralGrid& s2,
                                           const std::function<cplx(int, double, int, double)>& R) {
    BiradialCoefficients out{n, s1, s2, std::vector<cplx>(s1.size() * s2.size())};
    for (std::size_t a = 0; a < s1.size(); ++a)
        for (std::size_t b = 0; b < s2.size(); ++b) {
            const auto &x = s1.nodes()[a], &y = s2.nodes()[b];
            out.values[a * s2.size() + b] = R(x.k, x.lambda, y.k, y.lambda);
        }
    return out;
}

RadialBiFunction inverse_laguerre_transform_biradial(const BiradialCoefficients& c, const SideGrid& g1,
                                                     const SideGrid& g2) {
    MatC P1 = synthesis_rows(c.n, g1, c.s1.nodes());
    MatC P2 = synthesis_rows(c.n, g2, c.s2.nodes());
    Eigen::Map<const MatC> R(c.values.data(), c.s1.size(), c.s2.size());
    MatC D = P1.transpose() * R * P2;
    std::vector<double> v(D.size());
    for (Eigen::Index i = 0; i < D.size(); ++i) v[i] = D.data()[i].real();
    return RadialBiFunction::dense(c.n, g1, g2, std::move(v));
}

KernelTable tabulate_kernel(const BilinearKernel& S, const std::vector<double>& r1, const std::vector<double>& t1,
                            const std::vector<double>& r2, const std::vector<double>& t2) {
    const auto& rule = S.rule();
    const std::size_t N = rule.size();
    std::vector<double> u(N);
    for (std::size_t i = 0; i < N; ++i) u[i] = S.R() * rule.nodes()[i];
    SideTable a = side_table(S.n(), u, r1, t1, S.options().trunc);
    SideTable b = side_table(S.n(), u, r2, t2, S.options().trunc);
    for (auto* tab : {&a, &b})
        for (auto* v : {&tab->q1, &tab->q2, &tab->full})
            for (double& x : *v) x *= S.R();

    KernelTable out;
    out.n = S.n();
    out.alpha = S.alpha();
    out.R = S.R();
    out.kmax = S.options().trunc.kmax;
    out.u_nodes = N;
    out.lambda_rule = "chebyshev-lobatto product integration, N=" + std::to_string(N);
    out.r1 = r1;
    out.t1 = t1;
    out.r2 = r2;
    out.t2 = t2;
    const std::size_t n1 = r1.size() * t1.size(), n2 = r2.size() * t2.size();
    out.values.assign(n1 * n2, 0);
    out.tail.assign(n1 * n2, 0);
    // W·b for every side-2 node and level, then one dot product per pair.
    Eigen::Map<const MatD> W(rule.matrix().data(), N, N);
    auto times_w = [&](const std::vector<double>& v) {
        Eigen::Map<const MatD> M(v.data(), n2, N);
        return MatD(M * W.transpose());
    };
    MatD W1 = times_w(b.q1), W2 = times_w(b.q2), W3 = times_w(b.full);
    const double pref = S.prefactor();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n1; ++i) {
        const double *x1 = &a.q1[i * N], *x2 = &a.q2[i * N], *x3 = &a.full[i * N];
        for (std::size_t j = 0; j < n2; ++j) {
            double s1 = 0, s2 = 0, s3 = 0;
            for (std::size_t m = 0; m < N; ++m) {
                s1 += x1[m] * W1(j, m);
                s2 += x2[m] * W2(j, m);
                s3 += x3[m] * W3(j, m);
            }
            out.values[i * n2 + j] = pref * s3;
            out.tail[i * n2 + j] = geometric_tail(pref * s1, pref * s2, pref * s3);
        }
    }
    for (double t : out.tail) out.max_tail = std::max(out.max_tail, t);
    return out;
}

}  // namespace hriesz
