#include "hriesz/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "hriesz/laguerre.hpp"
#include "hriesz/quadrature.hpp"
#include "hriesz/transforms.hpp"

namespace hriesz {

namespace {

constexpr double kPi = std::numbers::pi;

double psi(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double smooth_step(double s) {
    if (s <= 1) return 1.0;
    if (s >= 2) return 0.0;
    double a = psi(2 - s), b = psi(s - 1);
    return a / (a + b);
}

DyadicCutoff::DyadicCutoff(int j, double alpha) : j_(j), alpha_(alpha) {
    if (j < 0) throw std::invalid_argument("dyadic index j must be >= 0");
    if (!(alpha >= 0)) throw std::invalid_argument("alpha must be >= 0");
}

double DyadicCutoff::phi(double s) { return s > 0 ? smooth_step(s) - smooth_step(2 * s) : 0.0; }

double DyadicCutoff::of_sum(double x) const {
    double d = 1 - x;
    if (!(d > 0)) return 0.0;
    return std::pow(d, alpha_) * phi(std::ldexp(d, j_));
}

double DyadicCutoff::support_lo() const { return std::ldexp(1.0, -j_ - 1); }
double DyadicCutoff::support_hi() const { return std::ldexp(1.0, -j_ + 1); }

TriangleRule::Multiplier DyadicCutoff::multiplier() const {
    DyadicCutoff c = *this;
    return [c](double s) { return c.of_sum(s); };
}

std::vector<double> DyadicCutoff::breakpoints() const {
    std::vector<double> b;
    for (double d : {support_lo(), std::ldexp(1.0, -j_), support_hi()}) {
        double s = 1 - d;
        if (s > 0 && s < 1) b.push_back(s);
    }
    return b;
}

cplx FourierCoeffTable::partial_sum(std::size_t i, double t) const {
    cplx s = 0;
    for (int k = -K; k <= K; ++k) s += at(i, k) * std::polar(1.0, kPi * k * t);
    return s;
}

namespace {

// ∫_lo^hi h(t) cos(πkt) dt for k = 0..K by composite Gauss and the cosine recurrence.
std::vector<double> cosine_moments(const std::function<double(double)>& h, double lo, double hi, int K) {
    std::vector<double> out(static_cast<std::size_t>(K) + 1, 0.0);
    if (!(hi > lo)) return out;
    std::size_t panels = 4 + static_cast<std::size_t>(std::ceil(K * (hi - lo) / 2));
    QuadRule q = composite_gauss(lo, hi, panels, 16);
    for (std::size_t i = 0; i < q.size(); ++i) {
        double t = q.nodes[i];
        double v = q.weights[i] * h(t);
        if (v == 0) continue;
        double c1 = std::cos(kPi * t), cm = 1.0, c = c1;
        out[0] += v;
        for (int k = 1; k <= K; ++k) {
            out[k] += v * c;
            double nx = 2 * c1 * c - cm;
            cm = c;
            c = nx;
        }
    }
    return out;
}

// Fourier envelope of x ↦ x^α φ(2^j x): |∫ h(x) e^{-iπkx} dx| for k = 0..K. For
// interior s the coefficients are cos-phase shifts of this, so it bounds sup_s.
std::vector<double> interior_envelope(const DyadicCutoff& c, int K) {
    auto h = [&](double x) { return c.of_sum(1 - x); };
    double lo = c.support_lo(), hi = std::min(1.0, c.support_hi());
    std::vector<double> re = cosine_moments(h, lo, hi, K);
    std::vector<double> im(static_cast<std::size_t>(K) + 1, 0.0);
    std::size_t panels = 4 + static_cast<std::size_t>(std::ceil(K * (hi - lo) / 2));
    QuadRule q = composite_gauss(lo, hi, panels, 16);
    for (std::size_t i = 0; i < q.size(); ++i) {
        double v = q.weights[i] * h(q.nodes[i]);
        for (int k = 1; k <= K; ++k) im[k] += v * std::sin(kPi * k * q.nodes[i]);
    }
    std::vector<double> out(re.size());
    for (std::size_t k = 0; k < re.size(); ++k) out[k] = std::hypot(re[k], im[k]);
    return out;
}

}  // namespace

FourierCoeffTable gamma_coeffs(int j, double alpha, int K, const std::vector<double>& s_nodes) {
    if (K < 1) throw std::invalid_argument("gamma_coeffs requires K >= 1");
    DyadicCutoff c(j, alpha);
    FourierCoeffTable tab;
    tab.j = j;
    tab.alpha = alpha;
    tab.K = K;
    tab.s = s_nodes;
    const std::size_t width = 2 * static_cast<std::size_t>(K) + 1;
    tab.values.assign(s_nodes.size() * width, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < s_nodes.size(); ++i) {
        double as = std::fabs(s_nodes[i]);
        // φ_j^α(|s|, t) is nonzero for 1-|s|-t in the support band.
        double lo = std::max(0.0, 1 - as - c.support_hi()), hi = std::min(1.0, 1 - as - c.support_lo());
        auto mom = cosine_moments([&](double t) { return c(as, t); }, lo, hi, K);
        for (int k = -K; k <= K; ++k) tab.values[i * width + static_cast<std::size_t>(k + K)] = mom[std::abs(k)];
    }
    return tab;
}

std::vector<double> gamma_s_grid(int j, std::size_t per_side) {
    // Dense where the band meets t = 0, i.e. 1-|s| ∈ [2^{-j-1}, 2^{-j+1}].
    double lo = std::ldexp(1.0, -j - 1), hi = std::min(1.0, std::ldexp(1.0, -j + 1));
    std::vector<double> a;
    for (std::size_t i = 0; i < per_side; ++i) {
        double d = lo + (hi - lo) * (i + 0.5) / per_side;
        a.push_back(1 - d);
    }
    for (std::size_t i = 0; i < per_side / 4; ++i) {
        double s = (1 - hi) * i / (per_side / 4);
        a.push_back(s);
    }
    std::vector<double> out;
    for (double s : a) {
        out.push_back(s);
        if (s > 0) out.push_back(-s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double GammaDecayFit::spread() const {
    if (C.empty()) return 0;
    auto [mn, mx] = std::minmax_element(C.begin(), C.end());
    return *mn > 0 ? *mx / *mn - 1 : std::numeric_limits<double>::infinity();
}

GammaDecayFit gamma_decay_fit(double alpha, double delta, int jmax, int K) {
    GammaDecayFit fit;
    fit.alpha = alpha;
    fit.delta = delta;
    fit.K = K;
    for (int j = 0; j <= jmax; ++j) {
        auto tab = gamma_coeffs(j, alpha, K, gamma_s_grid(j));
        std::vector<double> env = interior_envelope(DyadicCutoff(j, alpha), K);
        double sup = 0;
        for (int k = 0; k <= K; ++k) {
            double m = 0;
            for (std::size_t i = 0; i < tab.s.size(); ++i) m = std::max(m, std::abs(tab.at(i, k)));
            // Interior positions exist once the band fits inside t ∈ [0, 1].
            if (std::ldexp(1.0, -j + 1) <= 1) m = std::max(m, env[k]);
            sup = std::max(sup, m * std::pow(1.0 + k, 1 + delta));
        }
        fit.C.push_back(sup * std::pow(2.0, j * (alpha - delta)));
    }
    return fit;
}

ProjectedSides::ProjectedSides(const SampledField& f, double R, const BilinearOptions& opt)
    : n_(f.n()), R_(R), nodes_(chebyshev_lobatto(opt.u_nodes)) {
    if (!(R > 0)) throw std::invalid_argument("R must be positive");
    for (double u : nodes_) {
        double lam = R * u;
        if (lam <= 0) {
            q_.emplace_back(n_, f.grid());
            continue;
        }
        TailedField p = p_lambda(f, lam, opt.kmax);
        double s = std::pow(lam, n_);
        for (auto& v : p.field.values()) v *= s;
        tail_ = std::max(tail_, s * p.tail_estimate);
        q_.push_back(std::move(p.field));
    }
}

SampledField combine_sides(const ProjectedSides& f, const ProjectedSides& g, const TriangleRule& W) {
    if (f.size() != W.size() || g.size() != W.size()) throw std::invalid_argument("rule and projections differ in size");
    if (f.n() != g.n() || f.R() != g.R()) throw std::invalid_argument("projections built with different n or R");
    require_same_grid(f.q(0), g.q(0), "combine_sides");
    const int n = f.n();
    const std::size_t N = W.size();
    SampledField out(n, f.q(0).grid());
    const std::size_t M = out.size();
    double pref = std::pow(2 * kPi, -2 * n - 2) * f.R() * f.R();
    // h_a = Σ_b W_ab q_g(u_b), then out = Σ_a q_f(u_a) h_a pointwise.
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < M; ++i) {
        cplx s = 0;
        for (std::size_t a = 0; a < N; ++a) {
            cplx fa = f.q(a)[i];
            if (fa == cplx(0)) continue;
            cplx h = 0;
            for (std::size_t b = 0; b < N; ++b) h += W.W(a, b) * g.q(b)[i];
            s += fa * h;
        }
        out[i] = pref * s;
    }
    return out;
}

TriangleRule dyadic_rule(int j, double alpha, std::size_t u_nodes) {
    DyadicCutoff c(j, alpha);
    return TriangleRule(u_nodes, c.multiplier(), c.breakpoints(), 24 + static_cast<std::size_t>(j));
}

SampledField apply_bilinear(const SampledField& f, const SampledField& g, double alpha, double R,
                            const BilinearOptions& opt) {
    if (!(alpha >= 0)) throw std::invalid_argument("alpha must be >= 0");
    ProjectedSides pf(f, R, opt), pg(g, R, opt);
    return combine_sides(pf, pg, TriangleRule(opt.u_nodes, riesz_multiplier(alpha)));
}

SampledField dyadic_piece(const SampledField& f, const SampledField& g, int j, double alpha, double R,
                          const BilinearOptions& opt) {
    ProjectedSides pf(f, R, opt), pg(g, R, opt);
    return combine_sides(pf, pg, dyadic_rule(j, alpha, opt.u_nodes));
}

SampledField apply_bilinear_kernel_form(const SampledField& f, const SampledField& g, double alpha, double R,
                                        const Grid& out, const BilinearOptions& opt) {
    const int n = f.n();
    TriangleRule W(opt.u_nodes, riesz_multiplier(alpha));
    const std::size_t N = W.size();
    const int K = opt.kmax;
    std::vector<double> u(N);
    for (std::size_t i = 0; i < N; ++i) u[i] = R * W.nodes()[i];

    // Laguerre factors depend on |z|² only; tabulate them for every distinct
    // difference in advance so the bank below is read-only. The k-sum is the raw
    // truncation used by p_lambda, so both forms see the same operator.
    auto key = [](double r2) { return std::llround(r2 * 1048576.0); };
    std::unordered_map<long long, std::vector<double>> lag;
    const std::size_t nk = static_cast<std::size_t>(K) + 1;
    auto collect = [&](const Grid& in) {
        const std::size_t D = 2 * static_cast<std::size_t>(n);
        for (std::size_t o = 0; o < out.size(); ++o)
            for (std::size_t i = 0; i < in.size(); ++i) {
                double r2 = 0;
                for (std::size_t d = 0; d < D; ++d) {
                    double dd = out.coord(o, d) - in.coord(i, d);
                    r2 += dd * dd;
                }
                auto [it, fresh] = lag.try_emplace(key(r2));
                if (!fresh) continue;
                auto& v = it->second;
                v.resize(N * nk);
                for (std::size_t a = 0; a < N; ++a) {
                    double un = std::pow(u[a], n);
                    for (int k = 0; k <= K; ++k) {
                        double s = 2.0 * k + n;
                        v[a * nk + k] = un * std::pow(s, -n - 1) * laguerre_damped(k, n - 1, 0.5 * u[a] / s * r2);
                    }
                }
            }
    };
    collect(f.grid());
    collect(g.grid());

    RadialKernelBank bank = [&](double r2, double t, cplx* outv) {
        const auto& v = lag.at(key(r2));
        for (std::size_t a = 0; a < N; ++a) {
            double s = 0;
            for (int k = 0; k <= K; ++k) s += v[a * nk + k] * 2.0 * std::cos(u[a] * t / (2.0 * k + n));
            outv[a] = s;
        }
    };
    auto cf = group_conv_radial_bank(f, N, bank, out);
    auto cg = group_conv_radial_bank(g, N, bank, out);
    SampledField res(n, out);
    double pref = std::pow(2 * kPi, -2 * n - 2) * R * R;
    for (std::size_t i = 0; i < res.size(); ++i) {
        cplx s = 0;
        for (std::size_t a = 0; a < N; ++a) {
            cplx h = 0;
            for (std::size_t b = 0; b < N; ++b) h += W.W(a, b) * cg[b][i];
            s += cf[a][i] * h;
        }
        res[i] = pref * s;
    }
    return res;
}

SampledField restriction_op(const SampledField& f, const std::function<double(double)>& m, double a, double b,
                            const RestrictionOptions& opt) {
    if (!(a >= 0) || !(b > a)) throw std::invalid_argument("restriction_op requires 0 <= a < b");
    const Axis& ta = f.t_axis();
    SpectralGrid grid = SpectralGrid::eigen_band_resolved(f.n(), opt.kmax, a, b, opt.count, ta.max - ta.min);
    SpectralCoefficients c = analyze(f, grid);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& nd = grid.nodes()[i];
        double mv = m((2.0 * nd.k + f.n()) * std::fabs(nd.lambda));
        for (auto& v : c.at(i)) v *= mv;
    }
    return synthesize(c, f.grid().axis(f.grid().dims() - 1));
}

double restriction_norm(const SampledField& f, double a, double b, const RestrictionOptions& opt) {
    SampledField T = restriction_op(f, [](double) { return 1.0; }, a, b, opt);
    return std::sqrt(std::max(0.0, inner(T, f).real()));
}

RestrictionScaling restriction_scaling(const SampledField& f, const std::vector<double>& bs,
                                       const RestrictionOptions& opt) {
    RestrictionScaling r;
    double l1 = f.lp_norm(1);
    std::vector<double> lx, ly;
    for (double b : bs) {
        double v = restriction_norm(f, 0.0, b, opt) / l1;
        r.b.push_back(b);
        r.ratio.push_back(v);
        lx.push_back(std::log(b));
        ly.push_back(std::log(v));
    }
    r.exponent = fit_slope(lx, ly);
    return r;
}

Grid default_norm_grid(int n) {
    std::vector<Axis> axes;
    for (int d = 0; d < 2 * n; ++d) axes.push_back(lattice_axis(0.5, 24));
    axes.push_back(lattice_axis(0.5, 48));
    return Grid(axes);
}

double lp_exponent_from_reciprocal(double x) {
    return x == 0 ? std::numeric_limits<double>::infinity() : 1.0 / x;
}

double product_exponent(double p1, double p2) {
    if (!(p1 >= 1) || !(p2 >= 1)) throw std::invalid_argument("exponents must lie in [1, inf]");
    return lp_exponent_from_reciprocal(1.0 / p1 + 1.0 / p2);
}

namespace {

std::pair<SampledField, SampledField> trial_pair(int n, std::uint64_t seed, std::size_t trial, const Grid& grid,
                                                 const BandLimitedSpec& spec) {
    auto g = seeded_stream(seed, trial);
    std::uint64_t sf = g(), sg = g();
    return {random_band_limited(n, sf, spec).sample(grid), random_band_limited(n, sg, spec).sample(grid)};
}

double ratio(const SampledField& T, const SampledField& f, const SampledField& g, double p1, double p2, double p) {
    double d = f.lp_norm(p1) * g.lp_norm(p2);
    return d > 0 ? T.lp_norm(p) / d : 0.0;
}

}  // namespace

OpNormEstimate empirical_opnorm(const OpSpec& op, double p1, double p2, std::size_t trials, std::uint64_t seed,
                                const OpNormOptions& opt) {
    OpNormEstimate est;
    est.p1 = p1;
    est.p2 = p2;
    est.p = product_exponent(p1, p2);
    est.trials = trials;
    if (op.kind == OpSpec::Zero) return est;
    const int n = 1;
    Grid grid = opt.grid ? *opt.grid : default_norm_grid(n);
    TriangleRule W = op.kind == OpSpec::Full ? TriangleRule(opt.bilinear.u_nodes, riesz_multiplier(op.alpha))
                                              : dyadic_rule(op.j, op.alpha, opt.bilinear.u_nodes);
    double scale = op.kind == OpSpec::Dyadic && op.scaled ? std::pow(2.0, op.j * op.alpha) : 1.0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto [f, g] = trial_pair(n, seed, t, grid, opt.functions);
        ProjectedSides pf(f, op.R, opt.bilinear), pg(g, op.R, opt.bilinear);
        SampledField T = combine_sides(pf, pg, W);
        est.max_ratio = std::max(est.max_ratio, scale * ratio(T, f, g, p1, p2, est.p));
    }
    return est;
}

OpNormEstimate dyadic_norm_series(double alpha, int jmax, double p1, double p2, std::size_t trials,
                                  std::uint64_t seed, const OpNormOptions& opt) {
    OpNormEstimate est;
    est.p1 = p1;
    est.p2 = p2;
    est.p = product_exponent(p1, p2);
    est.trials = trials;
    const int n = 1;
    Grid grid = opt.grid ? *opt.grid : default_norm_grid(n);
    std::vector<TriangleRule> rules;
    for (int j = 0; j <= jmax; ++j) {
        rules.push_back(dyadic_rule(j, alpha, opt.bilinear.u_nodes));
        est.j.push_back(j);
    }
    est.series.assign(rules.size(), 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
        auto [f, g] = trial_pair(n, seed, t, grid, opt.functions);
        ProjectedSides pf(f, 1.0, opt.bilinear), pg(g, 1.0, opt.bilinear);
        for (std::size_t j = 0; j < rules.size(); ++j) {
            SampledField T = combine_sides(pf, pg, rules[j]);
            double r = std::pow(2.0, static_cast<double>(j) * alpha) * ratio(T, f, g, p1, p2, est.p);
            est.series[j] = std::max(est.series[j], r);
        }
    }
    std::vector<double> x, y;
    for (std::size_t j = 0; j < rules.size(); ++j) {
        est.max_ratio = std::max(est.max_ratio, est.series[j]);
        if (est.series[j] > 0) {
            x.push_back(static_cast<double>(j));
            y.push_back(std::log2(est.series[j]));
        }
    }
    est.log2_slope = x.size() >= 2 ? fit_slope(x, y) : 0.0;
    return est;
}

std::string region_name(int region) {
    static const char* names[] = {"?", "I", "II", "III", "IV", "V"};
    return region >= 1 && region <= 5 ? names[region] : names[0];
}

double smoothness_formula(int region, double p1, double p2, int n) {
    const double Q = 2.0 * n + 2;
    const double x1 = 1 / p1, x2 = 1 / p2, x = x1 + x2;
    switch (region) {
        case 1:
            return Q * (1 - x) - 0.5;
        case 2:
            return (Q - 1) * (1 - x);
        case 3:
            // The larger exponent sits on the L² side.
            return Q * (0.5 - std::min(x1, x2)) - (1 - x);
        case 4:
            return Q * (std::max(x1, x2) - 0.5);
        case 5:
            return Q * (x - 1);
    }
    throw std::invalid_argument("region must be 1..5");
}

SmoothnessIndex smoothness_index(double p1, double p2, int n) {
    if (!(p1 >= 1) || !(p2 >= 1)) throw std::invalid_argument("exponents must lie in [1, inf]");
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    const double x1 = 1 / p1, x2 = 1 / p2, x = x1 + x2;
    int r;
    if (x1 <= 0.5 && x2 <= 0.5)
        r = x <= 0.5 ? 1 : 2;
    else if (x1 >= 0.5 && x2 >= 0.5)
        r = 5;
    else
        r = x <= 1 ? 3 : 4;
    return {smoothness_formula(r, p1, p2, n), r, region_name(r)};
}

}  // namespace hriesz
