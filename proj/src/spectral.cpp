#include "hriesz/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hriesz/quadrature.hpp"
#include "hriesz/transforms.hpp"

namespace hriesz {

namespace {

double plancherel_density(int n, double lambda) {
    return std::pow(2 * std::numbers::pi, -n - 1) * std::pow(std::fabs(lambda), n);
}

void sort_nodes(std::vector<SpectralNode>& v) {
    std::sort(v.begin(), v.end(), [](const SpectralNode& a, const SpectralNode& b) {
        return a.lambda != b.lambda ? a.lambda < b.lambda : a.k < b.k;
    });
}

}  // namespace

SpectralGrid::SpectralGrid(int n, int kmax, std::vector<SpectralNode> nodes, std::string rule)
    : n_(n), kmax_(kmax), nodes_(std::move(nodes)), rule_(std::move(rule)) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    for (const auto& s : nodes_) {
        if (s.lambda == 0) throw std::invalid_argument("spectral grid must exclude lambda = 0");
        if (!(s.weight > 0)) throw std::invalid_argument("spectral weights must be positive");
        if (s.k < 0 || s.k > kmax) throw std::invalid_argument("spectral node k outside 0..kmax");
    }
    sort_nodes(nodes_);
}

SpectralGrid SpectralGrid::band(int n, int kmax, double lo, double hi, std::size_t count) {
    if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("band needs 0 < lo < hi");
    QuadRule q = gauss_legendre(count, lo, hi);
    std::vector<SpectralNode> v;
    for (int k = 0; k <= kmax; ++k)
        for (std::size_t i = 0; i < q.size(); ++i) {
            double w = q.weights[i] * plancherel_density(n, q.nodes[i]);
            v.push_back({k, q.nodes[i], w});
            v.push_back({k, -q.nodes[i], w});
        }
    return SpectralGrid(n, kmax, std::move(v), "band");
}

SpectralGrid SpectralGrid::eigen_band(int n, int kmax, double u_lo, double u_hi, std::size_t count, double lam_lo,
                                      double lam_hi) {
    if (!(u_lo >= 0) || !(u_hi > u_lo)) throw std::invalid_argument("eigen_band needs 0 <= u_lo < u_hi");
    std::vector<SpectralNode> v;
    for (int k = 0; k <= kmax; ++k) {
        double s = 2.0 * k + n;
        double a = std::max(u_lo / s, lam_lo), b = std::min(u_hi / s, lam_hi);
        if (!(b > a)) continue;
        QuadRule q = gauss_legendre(count, a, b);
        for (std::size_t i = 0; i < q.size(); ++i) {
            double w = q.weights[i] * plancherel_density(n, q.nodes[i]);
            v.push_back({k, q.nodes[i], w});
            v.push_back({k, -q.nodes[i], w});
        }
    }
    return SpectralGrid(n, kmax, std::move(v), "eigen_band");
}

SpectralGrid SpectralGrid::eigen_band_resolved(int n, int kmax, double u_lo, double u_hi, std::size_t min_count,
                                               double t_width) {
    if (!(u_lo >= 0) || !(u_hi > u_lo)) throw std::invalid_argument("eigen_band needs 0 <= u_lo < u_hi");
    std::vector<SpectralNode> v;
    for (int k = 0; k <= kmax; ++k) {
        double s = 2.0 * k + n;
        double a = u_lo / s, b = u_hi / s;
        // Gauss–Legendre needs about half a node per radian of phase across the interval
        std::size_t count = std::max(min_count, static_cast<std::size_t>(std::ceil(0.5 * (b - a) * t_width)) + 8);
        QuadRule q = gauss_legendre(count, a, b);
        for (std::size_t i = 0; i < q.size(); ++i) {
            double w = q.weights[i] * plancherel_density(n, q.nodes[i]);
            v.push_back({k, q.nodes[i], w});
            v.push_back({k, -q.nodes[i], w});
        }
    }
    return SpectralGrid(n, kmax, std::move(v), "eigen_band_resolved");
}

SpectralCoefficients::SpectralCoefficients(SpectralGrid grid, Grid planar, Axis t_axis,
                                           std::vector<std::vector<cplx>> data)
    : grid_(std::move(grid)), planar_(std::move(planar)), t_axis_(t_axis), data_(std::move(data)) {
    if (data_.size() != grid_.size()) throw std::invalid_argument("one coefficient array per spectral node");
    for (const auto& d : data_)
        if (d.size() != planar_.size()) throw std::invalid_argument("coefficient array does not match planar grid");
}

bool is_real_field(const FieldBase& f, double tol) {
    double mx = f.max_abs();
    for (const auto& v : f.values())
        if (std::fabs(v.imag()) > tol * mx) return false;
    return true;
}

SpectralCoefficients analyze(const SampledField& f, const SpectralGrid& grid, const AnalyzeOptions& opt) {
    if (f.n() != grid.n()) throw std::invalid_argument("analyze: dimension mismatch");
    const bool real = opt.use_real_symmetry && is_real_field(f);
    // Group node indices by λ so each λ costs one partial FT and one multi-k pass.
    std::map<double, std::vector<std::size_t>> by_lambda;
    for (std::size_t i = 0; i < grid.size(); ++i) by_lambda[grid.nodes()[i].lambda].push_back(i);

    std::vector<std::vector<cplx>> data(grid.size());
    std::map<double, bool> done;
    for (const auto& [lam, idx] : by_lambda) {
        if (done[lam]) continue;
        std::vector<int> ks;
        for (auto i : idx) ks.push_back(grid.nodes()[i].k);
        PlanarField F = partial_ft(f, lam);
        auto conv = twisted_conv_laguerre(F, lam, std::fabs(lam), ks);
        for (std::size_t c = 0; c < idx.size(); ++c) data[idx[c]] = std::move(conv[c].values());
        done[lam] = true;
        if (real) {
            auto it = by_lambda.find(-lam);
            if (it == by_lambda.end() || done[-lam]) continue;
            // Match -λ nodes with +λ nodes of the same k.
            std::map<int, std::size_t> kpos;
            for (std::size_t c = 0; c < idx.size(); ++c) kpos[ks[c]] = idx[c];
            bool complete = true;
            for (auto i : it->second)
                if (!kpos.count(grid.nodes()[i].k)) complete = false;
            if (!complete) continue;
            for (auto i : it->second) {
                const auto& src = data[kpos[grid.nodes()[i].k]];
                data[i].resize(src.size());
                for (std::size_t p = 0; p < src.size(); ++p) data[i][p] = std::conj(src[p]);
            }
            done[-lam] = true;
        }
    }
    return SpectralCoefficients(grid, f.planar_grid(), f.t_axis(), std::move(data));
}

SampledField synthesize(const SpectralCoefficients& c) { return synthesize(c, c.t_axis()); }

SampledField synthesize(const SpectralCoefficients& c, const Axis& t_axis) {
    const int n = c.spectral().n();
    std::vector<Axis> axes = c.planar().axes();
    std::vector<std::vector<double>> w;
    for (std::size_t d = 0; d < c.planar().dims(); ++d) w.push_back(c.planar().weights(d));
    axes.push_back(t_axis);
    w.push_back(t_axis.trapezoid());
    SampledField out(n, Grid(axes, w));
    const std::size_t np = c.planar().size(), nt = t_axis.count;
    const auto& nodes = c.spectral().nodes();
    std::vector<double> tn(nt);
    for (std::size_t j = 0; j < nt; ++j) tn[j] = t_axis.node(j);
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t j = 0; j < nt; ++j) {
            cplx s = 0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                double th = -nodes[i].lambda * tn[j];
                s += nodes[i].weight * cplx(std::cos(th), std::sin(th)) * c.at(i)[p];
            }
            out[p * nt + j] = s;
        }
    }
    return out;
}

PlanarField projection_coefficient(const SampledField& f, int k, double lambda) {
    if (lambda == 0) throw std::invalid_argument("project requires lambda != 0");
    if (k < 0) throw std::invalid_argument("project requires k >= 0");
    PlanarField F = partial_ft(f, lambda);
    return std::move(twisted_conv_laguerre(F, lambda, std::fabs(lambda), {k})[0]);
}

namespace {

// Adds coeff·e^{-iλt}C(z) into out.
void add_modulated(SampledField& out, const PlanarField& C, double lambda, cplx coeff) {
    const std::size_t np = out.planar_size(), nt = out.t_axis().count;
    std::vector<cplx> ph(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        double th = -lambda * out.t_axis().node(j);
        ph[j] = coeff * cplx(std::cos(th), std::sin(th));
    }
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t j = 0; j < nt; ++j) out[p * nt + j] += C[p] * ph[j];
}

}  // namespace

SampledField project(const SampledField& f, int k, double lambda) {
    PlanarField C = projection_coefficient(f, k, lambda);
    SampledField out(f.n(), f.grid());
    add_modulated(out, C, lambda, 1.0);
    return out;
}

TailedField p_lambda(const SampledField& f, double lambda, int kmax) {
    if (!(lambda > 0)) throw std::invalid_argument("p_lambda requires lambda > 0");
    if (kmax < 0) throw std::invalid_argument("p_lambda requires kmax >= 0");
    const int n = f.n();
    const bool real = is_real_field(f);
    SampledField acc(n, f.grid());
    // Snapshots for the octave tail fit.
    int k1 = kmax / 4, k2 = kmax / 2;
    SampledField s1(n, f.grid()), s2(n, f.grid());
    for (int k = 0; k <= kmax; ++k) {
        double s = 2.0 * k + n;
        double mu = lambda / s;
        double c = std::pow(s, -n - 1);
        PlanarField Fp = partial_ft(f, mu);
        PlanarField Cp = std::move(twisted_conv_laguerre(Fp, mu, mu, {k})[0]);
        PlanarField Cm(n, Cp.grid());
        if (real) {
            for (std::size_t p = 0; p < Cp.size(); ++p) Cm[p] = std::conj(Cp[p]);
        } else {
            PlanarField Fm = partial_ft(f, -mu);
            Cm = std::move(twisted_conv_laguerre(Fm, -mu, mu, {k})[0]);
        }
        // f∗ẽ_k^{λ} = e^{-iμt} C_k(μ);  f∗ẽ_k^{-λ} = e^{iμt} C_k(-μ)
        add_modulated(acc, Cp, mu, c);
        add_modulated(acc, Cm, -mu, c);
        if (k == k1) s1 = acc;
        if (k == k2) s2 = acc;
    }
    TailedField out{acc, 0.0};
    if (kmax >= 4) {
        double d1 = 0, d2 = 0;
        for (std::size_t i = 0; i < acc.size(); ++i) {
            double w = acc.grid().weight(i);
            d1 += std::norm(s2[i] - s1[i]) * w;
            d2 += std::norm(acc[i] - s2[i]) * w;
        }
        out.tail_estimate = geometric_tail(0.0, std::sqrt(d1), std::sqrt(d1) + std::sqrt(d2));
    }
    return out;
}

double plancherel_rhs(const SpectralCoefficients& c) {
    const int n = c.spectral().n();
    double s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& node = c.spectral().nodes()[i];
        double e = 0;
        for (std::size_t p = 0; p < c.planar().size(); ++p) e += std::norm(c.at(i)[p]) * c.planar().weight(p);
        s += node.weight * std::pow(2 * std::numbers::pi, -n) * std::pow(std::fabs(node.lambda), n) * e;
    }
    return s;
}

PlancherelResult plancherel_check(const SampledField& f, const SpectralGrid& grid) {
    PlancherelResult r;
    double l2 = f.l2_norm();
    r.lhs = l2 * l2;
    if (r.lhs == 0) return r;
    r.rhs = plancherel_rhs(analyze(f, grid));
    return r;
}

SampledField sublaplacian_fd(const SampledField& f) {
    const Grid& g = f.grid();
    const std::size_t D = g.dims();
    const int n = f.n();
    for (std::size_t d = 0; d < D; ++d)
        if (g.axis(d).count < 5) throw std::invalid_argument("sublaplacian_fd: need at least 5 nodes per axis");
    SampledField out(n, g);
    const std::size_t st = g.stride(D - 1);
    const double ht = g.axis(D - 1).spacing();
    const std::size_t total = g.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < total; ++i) {
        auto idx = g.unflat(i);
        bool boundary = false;
        for (std::size_t d = 0; d < D; ++d)
            if (idx[d] == 0 || idx[d] + 1 == g.axis(d).count) boundary = true;
        if (boundary) continue;
        const cplx* v = f.values().data();
        cplx ftt = (v[i + st] - 2.0 * v[i] + v[i - st]) / (ht * ht);
        cplx acc = 0;
        for (int j = 0; j < n; ++j) {
            std::size_t dx = 2 * j, dy = 2 * j + 1;
            std::size_t sx = g.stride(dx), sy = g.stride(dy);
            double hx = g.axis(dx).spacing(), hy = g.axis(dy).spacing();
            double x = g.axis(dx).node(idx[dx]), y = g.axis(dy).node(idx[dy]);
            cplx fxx = (v[i + sx] - 2.0 * v[i] + v[i - sx]) / (hx * hx);
            cplx fyy = (v[i + sy] - 2.0 * v[i] + v[i - sy]) / (hy * hy);
            cplx fxt = (v[i + sx + st] - v[i + sx - st] - v[i - sx + st] + v[i - sx - st]) / (4 * hx * ht);
            cplx fyt = (v[i + sy + st] - v[i + sy - st] - v[i - sy + st] + v[i - sy - st]) / (4 * hy * ht);
            // X² = ∂x² + y∂x∂t + (y²/4)∂t²,  Y² = ∂y² - x∂y∂t + (x²/4)∂t²
            acc += fxx + fyy + y * fxt - x * fyt + 0.25 * (x * x + y * y) * ftt;
        }
        out[i] = -acc;
    }
    return out;
}

namespace {

bool is_interior(const Grid& g, std::size_t i, std::size_t margin) {
    for (std::size_t d = 0; d < g.dims(); ++d) {
        std::size_t id = (i / g.stride(d)) % g.axis(d).count;
        if (id < margin || id + margin >= g.axis(d).count) return false;
    }
    return true;
}

}  // namespace

double interior_norm(const FieldBase& f, std::size_t margin) {
    double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (is_interior(f.grid(), i, margin)) s += std::norm(f[i]) * f.grid().weight(i);
    return std::sqrt(s);
}

double interior_residual(const SampledField& a, const SampledField& b, cplx c, std::size_t margin) {
    require_same_grid(a, b, "interior_residual");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!is_interior(a.grid(), i, margin)) continue;
        double w = a.grid().weight(i);
        num += std::norm(a[i] - c * b[i]) * w;
        den += std::norm(c * b[i]) * w;
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace hriesz
