#include "hriesz/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hriesz/laguerre.hpp"

namespace hriesz {

PlanarField partial_ft(const SampledField& f, double lambda) {
    const Axis& ta = f.t_axis();
    const auto& tw = f.grid().weights(f.grid().dims() - 1);
    std::vector<cplx> ph(ta.count);
    for (std::size_t j = 0; j < ta.count; ++j) {
        double t = ta.node(j);
        ph[j] = tw[j] * cplx(std::cos(lambda * t), std::sin(lambda * t));
    }
    PlanarField out(f.n(), f.planar_grid());
    const std::size_t np = f.planar_size(), nt = ta.count;
    const cplx* v = f.values().data();
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < np; ++p) {
        cplx s = 0;
        for (std::size_t j = 0; j < nt; ++j) s += v[p * nt + j] * ph[j];
        out[p] = s;
    }
    return out;
}

namespace {

// Plain complex product; std::complex operator* carries NaN-recovery branches.
inline cplx cmul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Lattice of differences z - u for z, u on one planar grid.
struct DiffLattice {
    std::vector<std::size_t> N, M, S;
    std::vector<double> h;
    std::size_t size = 1;

    explicit DiffLattice(const Grid& g) {
        std::size_t D = g.dims();
        N.resize(D);
        M.resize(D);
        S.resize(D);
        h.resize(D);
        for (std::size_t d = 0; d < D; ++d) {
            N[d] = g.axis(d).count;
            M[d] = 2 * N[d] - 1;
            h[d] = g.axis(d).spacing();
        }
        S[D - 1] = 1;
        for (std::size_t d = D - 1; d > 0; --d) S[d - 1] = S[d] * M[d];
        size = S[0] * M[0];
    }
    // Signed offset of diff node along axis d.
    long offset(std::size_t flat, std::size_t d) const {
        return static_cast<long>((flat / S[d]) % M[d]) - static_cast<long>(N[d] - 1);
    }
};

struct ActiveNodes {
    std::vector<std::size_t> diff_off;  // Σ iu_d S_d
    std::vector<cplx> value;            // F(u) w_u
    std::vector<unsigned> idx;          // D indices per node
    std::size_t size() const { return value.size(); }
};

ActiveNodes active_nodes(const PlanarField& F, const DiffLattice& L, double skip_rel) {
    const Grid& g = F.grid();
    const std::size_t D = g.dims();
    double mx = F.max_abs();
    ActiveNodes out;
    if (mx == 0) return out;
    for (std::size_t u = 0; u < F.size(); ++u) {
        if (std::abs(F[u]) <= skip_rel * mx) continue;
        std::size_t rem = u, off = 0;
        for (std::size_t d = 0; d < D; ++d) {
            std::size_t id = rem / g.stride(d);
            rem %= g.stride(d);
            off += id * L.S[d];
            out.idx.push_back(static_cast<unsigned>(id));
        }
        out.diff_off.push_back(off);
        out.value.push_back(F[u] * g.weight(u));
    }
    return out;
}

// Phase tables: for complex coordinate j, X[ix][ib] = e^{(i/2)λ x b}, Y[iy][ia] = e^{-(i/2)λ y a}.
struct PhaseTables {
    std::vector<std::vector<cplx>> X, Y;
    std::vector<std::size_t> nx, ny;

    PhaseTables(const Grid& g, double lambda) {
        std::size_t n = g.dims() / 2;
        X.resize(n);
        Y.resize(n);
        nx.resize(n);
        ny.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Axis& ax = g.axis(2 * j);
            const Axis& ay = g.axis(2 * j + 1);
            nx[j] = ax.count;
            ny[j] = ay.count;
            X[j].resize(ax.count * ay.count);
            Y[j].resize(ay.count * ax.count);
            for (std::size_t i = 0; i < ax.count; ++i)
                for (std::size_t b = 0; b < ay.count; ++b) {
                    double th = 0.5 * lambda * ax.node(i) * ay.node(b);
                    X[j][i * ay.count + b] = cplx(std::cos(th), std::sin(th));
                }
            for (std::size_t i = 0; i < ay.count; ++i)
                for (std::size_t a = 0; a < ax.count; ++a) {
                    double th = -0.5 * lambda * ay.node(i) * ax.node(a);
                    Y[j][i * ax.count + a] = cplx(std::cos(th), std::sin(th));
                }
        }
    }
};

// Shared kernel: out[c][z] = Σ_u F(u) w_u phase(z,u) T[(diff(z,u)) * C + c].
// T is real (Laguerre profiles) or complex (tabulated G).
template <class T, int NC>
std::vector<std::vector<cplx>> twisted_core(const PlanarField& F, double lambda, const DiffLattice& L,
                                            const std::vector<T>& table, std::size_t C) {
    const Grid& g = F.grid();
    const std::size_t D = g.dims();
    const std::size_t n = D / 2;
    if (NC != 0 && static_cast<std::size_t>(NC) != n) throw std::logic_error("twisted_core dimension");
    auto act = active_nodes(F, L, 0.0);
    PhaseTables P(g, lambda);
    std::vector<std::vector<cplx>> out(C, std::vector<cplx>(F.size()));
    const std::size_t nz = F.size();

#pragma omp parallel
    {
        std::vector<double> are(C), aim(C);
        std::vector<std::size_t> iz(D);
#pragma omp for schedule(static)
        for (std::size_t z = 0; z < nz; ++z) {
            std::size_t rem = z, base = 0;
            for (std::size_t d = 0; d < D; ++d) {
                iz[d] = rem / g.stride(d);
                rem %= g.stride(d);
                base += (iz[d] + L.N[d] - 1) * L.S[d];
            }
            std::fill(are.begin(), are.end(), 0.0);
            std::fill(aim.begin(), aim.end(), 0.0);
            const std::size_t na = act.size();
            double* __restrict ar = are.data();
            double* __restrict ai = aim.data();
            for (std::size_t a = 0; a < na; ++a) {
                const unsigned* ia = act.idx.data() + a * D;
                cplx ph;
                if constexpr (NC == 1) {
                    ph = cmul(P.X[0][iz[0] * P.ny[0] + ia[1]], P.Y[0][iz[1] * P.nx[0] + ia[0]]);
                } else {
                    ph = 1.0;
                    for (std::size_t j = 0; j < n; ++j)
                        ph = cmul(ph, cmul(P.X[j][iz[2 * j] * P.ny[j] + ia[2 * j + 1]],
                                           P.Y[j][iz[2 * j + 1] * P.nx[j] + ia[2 * j]]));
                }
                const cplx m = cmul(act.value[a], ph);
                const T* __restrict row = table.data() + (base - act.diff_off[a]) * C;
                if constexpr (std::is_same_v<T, double>) {
                    const double mr = m.real(), mi = m.imag();
#pragma omp simd
                    for (std::size_t c = 0; c < C; ++c) {
                        ar[c] += mr * row[c];
                        ai[c] += mi * row[c];
                    }
                } else {
                    for (std::size_t c = 0; c < C; ++c) {
                        cplx v = cmul(m, row[c]);
                        ar[c] += v.real();
                        ai[c] += v.imag();
                    }
                }
            }
            for (std::size_t c = 0; c < C; ++c) out[c][z] = cplx(are[c], aim[c]);
        }
    }
    return out;
}

template <class T>
std::vector<std::vector<cplx>> twisted_dispatch(const PlanarField& F, double lambda, const DiffLattice& L,
                                                const std::vector<T>& table, std::size_t C, TwistedPath path) {
    if (F.n() == 1 && path == TwistedPath::Auto) return twisted_core<T, 1>(F, lambda, L, table, C);
    return twisted_core<T, 0>(F, lambda, L, table, C);
}

// Per-axis sampling of G at lattice offset δ·h: (index, weight) pairs.
std::vector<std::vector<std::pair<std::size_t, double>>> axis_lookup(const Axis& src, double h, std::size_t N) {
    std::vector<std::vector<std::pair<std::size_t, double>>> out(2 * N - 1);
    double gh = src.spacing();
    for (std::size_t e = 0; e < 2 * N - 1; ++e) {
        double x = (static_cast<double>(e) - static_cast<double>(N - 1)) * h;
        if (src.count == 1) {
            if (std::fabs(x - src.min) < 1e-12 * std::max(1.0, std::fabs(x))) out[e].push_back({0, 1.0});
            continue;
        }
        double pos = (x - src.min) / gh;
        double rp = std::round(pos);
        if (std::fabs(pos - rp) < 1e-9) {
            if (rp >= 0 && rp <= static_cast<double>(src.count - 1))
                out[e].push_back({static_cast<std::size_t>(rp), 1.0});
            continue;
        }
        double fl = std::floor(pos);
        if (fl < 0 || fl + 1 > static_cast<double>(src.count - 1)) continue;
        double fr = pos - fl;
        out[e].push_back({static_cast<std::size_t>(fl), 1.0 - fr});
        out[e].push_back({static_cast<std::size_t>(fl) + 1, fr});
    }
    return out;
}

}  // namespace

PlanarField twisted_conv(const PlanarField& F, const PlanarField& G, double lambda, TwistedPath path) {
    if (F.n() != G.n()) throw std::invalid_argument("twisted_conv: dimension mismatch");
    const Grid& g = F.grid();
    DiffLattice L(g);
    std::vector<std::vector<std::vector<std::pair<std::size_t, double>>>> look(g.dims());
    for (std::size_t d = 0; d < g.dims(); ++d) look[d] = axis_lookup(G.grid().axis(d), L.h[d], L.N[d]);
    std::vector<cplx> table(L.size);
    const Grid& gg = G.grid();
    std::vector<std::size_t> e(g.dims());
    for (std::size_t f = 0; f < L.size; ++f) {
        std::size_t rem = f;
        bool empty = false;
        for (std::size_t d = 0; d < g.dims(); ++d) {
            e[d] = rem / L.S[d];
            rem %= L.S[d];
            if (look[d][e[d]].empty()) empty = true;
        }
        if (empty) continue;
        // Tensor product over the per-axis stencils.
        cplx s = 0;
        std::vector<std::size_t> pick(g.dims(), 0);
        while (true) {
            double w = 1;
            std::size_t gi = 0;
            for (std::size_t d = 0; d < g.dims(); ++d) {
                const auto& pr = look[d][e[d]][pick[d]];
                w *= pr.second;
                gi += pr.first * gg.stride(d);
            }
            s += w * G[gi];
            std::size_t d = 0;
            while (d < g.dims() && ++pick[d] == look[d][e[d]].size()) pick[d++] = 0;
            if (d == g.dims()) break;
        }
        table[f] = s;
    }
    auto res = twisted_dispatch(F, lambda, L, table, 1, path);
    return PlanarField(F.n(), F.grid(), std::move(res[0]));
}

std::vector<PlanarField> twisted_conv_laguerre(const PlanarField& F, double lambda, double scale,
                                               const std::vector<int>& ks, TwistedPath path) {
    if (ks.empty()) return {};
    if (!(scale > 0)) throw std::invalid_argument("twisted_conv_laguerre: scale must be positive");
    const Grid& g = F.grid();
    DiffLattice L(g);
    const std::size_t C = ks.size();
    int kmax = *std::max_element(ks.begin(), ks.end());
    std::vector<double> table(L.size * C);
    std::vector<double> tmp(static_cast<std::size_t>(kmax) + 1);
    for (std::size_t f = 0; f < L.size; ++f) {
        double r2 = 0;
        for (std::size_t d = 0; d < g.dims(); ++d) {
            double x = static_cast<double>(L.offset(f, d)) * L.h[d];
            r2 += x * x;
        }
        laguerre_damped_all(kmax, F.n() - 1, 0.5 * scale * r2, tmp.data());
        for (std::size_t c = 0; c < C; ++c) table[f * C + c] = tmp[ks[c]];
    }
    auto res = twisted_dispatch(F, lambda, L, table, C, path);
    std::vector<PlanarField> out;
    out.reserve(C);
    for (auto& v : res) out.emplace_back(F.n(), F.grid(), std::move(v));
    return out;
}

namespace {

// Lagrange weights for fractional position fr in [0,1) on stencil offsets
// -(p/2-1) .. p/2 relative to floor.
std::vector<double> lagrange_weights(int p, double fr) {
    std::vector<double> w(p);
    int lo = -(p / 2 - 1);
    for (int a = 0; a < p; ++a) {
        double xa = lo + a, v = 1;
        for (int b = 0; b < p; ++b)
            if (b != a) v *= (fr - (lo + b)) / (xa - (lo + b));
        w[a] = v;
    }
    return w;
}

}  // namespace

SampledField group_conv(const SampledField& f, const SampledField& g, const GroupConvOptions& opt) {
    if (f.n() != g.n()) throw std::invalid_argument("group_conv: dimension mismatch");
    if (opt.t_order < 2 || opt.t_order % 2 != 0) throw std::invalid_argument("group_conv: t_order must be even >= 2");
    const int n = f.n();
    const std::size_t D = 2 * static_cast<std::size_t>(n);
    const Axis& ft = f.t_axis();
    const Axis& gt = g.t_axis();
    const double ht = ft.spacing();
    if (std::fabs(gt.spacing() - ht) > 1e-12 * ht) throw std::invalid_argument("group_conv: t spacings differ");
    const Grid fp = f.planar_grid();
    const Grid gp = g.planar_grid();
    const std::size_t ntf = ft.count, ntg = gt.count;

    // z-lookup of f at w-differences: per axis, offset of f's index for output i and input j.
    std::vector<std::vector<std::vector<std::pair<std::size_t, double>>>> zl(D);
    for (std::size_t d = 0; d < D; ++d) {
        const Axis& fa = fp.axis(d);
        const Axis& ga = gp.axis(d);
        // Table over (i, j): coordinate fa.node(i) - ga.node(j).
        zl[d].resize(fa.count * ga.count);
        for (std::size_t i = 0; i < fa.count; ++i)
            for (std::size_t j = 0; j < ga.count; ++j) {
                double x = fa.node(i) - ga.node(j);
                double pos = (x - fa.min) / fa.spacing();
                double rp = std::round(pos);
                auto& cell = zl[d][i * ga.count + j];
                if (std::fabs(pos - rp) < 1e-9) {
                    if (rp >= 0 && rp <= static_cast<double>(fa.count - 1))
                        cell.push_back({static_cast<std::size_t>(rp), 1.0});
                } else {
                    double fl = std::floor(pos);
                    if (fl >= 0 && fl + 1 <= static_cast<double>(fa.count - 1)) {
                        cell.push_back({static_cast<std::size_t>(fl), 1.0 - (pos - fl)});
                        cell.push_back({static_cast<std::size_t>(fl) + 1, pos - fl});
                    }
                }
            }
    }

    // Active inputs of g (planar nodes with non-negligible t-rows).
    double gmax = g.max_abs();
    double fmax = f.max_abs();
    struct Row {
        std::size_t p;
        std::size_t j0, j1;  // nonzero t-range [j0, j1)
    };
    std::vector<Row> grows;
    const auto& gtw = g.grid().weights(D);
    for (std::size_t p = 0; p < gp.size(); ++p) {
        std::size_t j0 = ntg, j1 = 0;
        for (std::size_t j = 0; j < ntg; ++j)
            if (std::abs(g.at(p, j)) > opt.skip_rel * gmax) {
                j0 = std::min(j0, j);
                j1 = j + 1;
            }
        if (j1 > j0) grows.push_back({p, j0, j1});
    }
    // Row support of f for pruning.
    std::vector<char> factive(fp.size(), 0);
    for (std::size_t p = 0; p < fp.size(); ++p)
        for (std::size_t j = 0; j < ntf; ++j)
            if (std::abs(f.at(p, j)) > opt.skip_rel * fmax) {
                factive[p] = 1;
                break;
            }

    SampledField out(n, f.grid());
    const int P = opt.t_order;
    const int lo = -(P / 2 - 1);
    const std::size_t npo = fp.size();
    const long M = static_cast<long>(ntf + ntg - 1);  // shift range m = i - j in [-(ntg-1), ntf-1]

#pragma omp parallel
    {
        std::vector<cplx> frow(ntf);
        std::vector<double> fs_re(M), fs_im(M), acc_re(ntf), acc_im(ntf);
        std::vector<std::size_t> iz(D), iw(D), pick(D);
#pragma omp for schedule(dynamic, 4)
        for (std::size_t pz = 0; pz < npo; ++pz) {
            {
                std::size_t rem = pz;
                for (std::size_t d = 0; d < D; ++d) {
                    iz[d] = rem / fp.stride(d);
                    rem %= fp.stride(d);
                }
            }
            std::fill(acc_re.begin(), acc_re.end(), 0.0);
            std::fill(acc_im.begin(), acc_im.end(), 0.0);
            for (const auto& gr : grows) {
                std::size_t rem = gr.p;
                bool empty = false;
                for (std::size_t d = 0; d < D; ++d) {
                    iw[d] = rem / gp.stride(d);
                    rem %= gp.stride(d);
                    if (zl[d][iz[d] * gp.axis(d).count + iw[d]].empty()) empty = true;
                }
                if (empty) continue;
                // f(z - w, ·) row, multilinear in z when off-lattice.
                std::fill(frow.begin(), frow.end(), cplx(0));
                bool any = false;
                std::fill(pick.begin(), pick.end(), 0);
                while (true) {
                    double w = 1;
                    std::size_t fi = 0;
                    for (std::size_t d = 0; d < D; ++d) {
                        const auto& pr = zl[d][iz[d] * gp.axis(d).count + iw[d]][pick[d]];
                        w *= pr.second;
                        fi += pr.first * fp.stride(d);
                    }
                    if (factive[fi]) {
                        any = true;
                        const cplx* src = f.values().data() + fi * ntf;
                        for (std::size_t j = 0; j < ntf; ++j) frow[j] += w * src[j];
                    }
                    std::size_t d = 0;
                    while (d < D && ++pick[d] == zl[d][iz[d] * gp.axis(d).count + iw[d]].size()) pick[d++] = 0;
                    if (d == D) break;
                }
                if (!any) continue;
                // Central shift c = -½ Im(z·w̄).
                double c = 0;
                for (int j = 0; j < n; ++j) {
                    double x = fp.axis(2 * j).node(iz[2 * j]), y = fp.axis(2 * j + 1).node(iz[2 * j + 1]);
                    double a = gp.axis(2 * j).node(iw[2 * j]), b = gp.axis(2 * j + 1).node(iw[2 * j + 1]);
                    c -= 0.5 * (y * a - x * b);
                }
                // f(z-w, t_i - s_j + c) at f-index position m + σ, m = i - j.
                double sigma = (c - gt.min) / ht;
                double fl = std::floor(sigma);
                double fr = sigma - fl;
                long base = static_cast<long>(fl);
                bool exact = fr < 1e-12 || fr > 1 - 1e-12;
                if (fr > 1 - 1e-12) base += 1;
                std::vector<double> lw;
                if (!exact) lw = lagrange_weights(P, fr);
                for (long m = -static_cast<long>(ntg - 1); m < static_cast<long>(ntf); ++m) {
                    long k0 = m + base;
                    cplx v = 0;
                    if (exact) {
                        if (k0 >= 0 && k0 < static_cast<long>(ntf)) v = frow[k0];
                    } else {
                        for (int q = 0; q < P; ++q) {
                            long idx = k0 + lo + q;
                            if (idx >= 0 && idx < static_cast<long>(ntf)) v += lw[q] * frow[idx];
                        }
                    }
                    fs_re[m + static_cast<long>(ntg - 1)] = v.real();
                    fs_im[m + static_cast<long>(ntg - 1)] = v.imag();
                }
                double ww = gp.weight(gr.p);
                const cplx* grow = g.values().data() + gr.p * ntg;
                // Split real arithmetic so the inner loop vectorizes.
                for (std::size_t j = gr.j0; j < gr.j1; ++j) {
                    const cplx gv = grow[j] * (ww * gtw[j]);
                    const double gr_ = gv.real(), gi_ = gv.imag();
                    const std::size_t off = ntg - 1 - j;
                    const double* fr_ = fs_re.data() + off;
                    const double* fi_ = fs_im.data() + off;
                    double* ar = acc_re.data();
                    double* ai = acc_im.data();
                    for (std::size_t i = 0; i < ntf; ++i) {
                        ar[i] += gr_ * fr_[i] - gi_ * fi_[i];
                        ai[i] += gr_ * fi_[i] + gi_ * fr_[i];
                    }
                }
            }
            for (std::size_t i = 0; i < ntf; ++i) out[pz * ntf + i] = cplx(acc_re[i], acc_im[i]);
        }
    }
    return out;
}

SampledField group_conv_radial(const SampledField& f, const RadialKernel& K, const Grid& out_grid) {
    const int n = f.n();
    SampledField out(n, out_grid);
    const std::size_t D = 2 * static_cast<std::size_t>(n);
    double fmax = f.max_abs();
    struct In {
        std::vector<double> c;
        cplx v;
    };
    std::vector<In> ins;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(std::abs(f[i]) > 1e-15 * fmax)) continue;
        In a;
        a.c.resize(D + 1);
        for (std::size_t d = 0; d <= D; ++d) a.c[d] = f.grid().coord(i, d);
        a.v = f[i] * f.grid().weight(i);
        ins.push_back(std::move(a));
    }
    const std::size_t no = out.size();
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t o = 0; o < no; ++o) {
        std::vector<double> x(D + 1);
        for (std::size_t d = 0; d <= D; ++d) x[d] = out_grid.coord(o, d);
        cplx s = 0;
        for (const auto& a : ins) {
            // y^{-1}x = (z - w, t - s + ½ Im(z·w̄))
            double r2 = 0, im = 0;
            for (int j = 0; j < n; ++j) {
                double dx = x[2 * j] - a.c[2 * j], dy = x[2 * j + 1] - a.c[2 * j + 1];
                r2 += dx * dx + dy * dy;
                im += x[2 * j + 1] * a.c[2 * j] - x[2 * j] * a.c[2 * j + 1];
            }
            s += a.v * K(r2, x[D] - a.c[D] + 0.5 * im);
        }
        out[o] = s;
    }
    return out;
}

std::vector<SampledField> group_conv_radial_bank(const SampledField& f, std::size_t count, const RadialKernelBank& K,
                                                 const Grid& out_grid) {
    const int n = f.n();
    const std::size_t D = 2 * static_cast<std::size_t>(n);
    double fmax = f.max_abs();
    std::vector<std::size_t> ins;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (std::abs(f[i]) > 1e-15 * fmax) ins.push_back(i);
    const std::size_t no = out_grid.size();
    std::vector<cplx> acc(no * count, 0.0);
#pragma omp parallel
    {
        std::vector<cplx> kv(count);
        std::vector<double> x(D + 1), y(D + 1);
#pragma omp for schedule(dynamic, 8)
        for (std::size_t o = 0; o < no; ++o) {
            for (std::size_t d = 0; d <= D; ++d) x[d] = out_grid.coord(o, d);
            cplx* a = &acc[o * count];
            for (std::size_t i : ins) {
                for (std::size_t d = 0; d <= D; ++d) y[d] = f.grid().coord(i, d);
                double r2 = 0, im = 0;
                for (int j = 0; j < n; ++j) {
                    double dx = x[2 * j] - y[2 * j], dy = x[2 * j + 1] - y[2 * j + 1];
                    r2 += dx * dx + dy * dy;
                    im += x[2 * j + 1] * y[2 * j] - x[2 * j] * y[2 * j + 1];
                }
                K(r2, x[D] - y[D] + 0.5 * im, kv.data());
                cplx v = f[i] * f.grid().weight(i);
                for (std::size_t c = 0; c < count; ++c) a[c] += v * kv[c];
            }
        }
    }
    std::vector<SampledField> out;
    for (std::size_t c = 0; c < count; ++c) {
        SampledField s(n, out_grid);
        for (std::size_t o = 0; o < no; ++o) s[o] = acc[o * count + c];
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace hriesz
