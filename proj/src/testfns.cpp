#include "hriesz/testfns.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hriesz {

TestFunction::TestFunction(int n, std::vector<GaussAtom> atoms) : n_(n), atoms_(std::move(atoms)) {
    for (const auto& a : atoms_) {
        if (static_cast<int>(a.center.size()) != n) throw std::invalid_argument("atom center has wrong dimension");
        if (!(a.a > 0) || !(a.sigma > 0)) throw std::invalid_argument("atom widths must be positive");
    }
}

double TestFunction::operator()(const HeisenbergPoint& x) const {
    double s = 0;
    for (const auto& a : atoms_) {
        double r2 = 0;
        for (int j = 0; j < n_; ++j) r2 += std::norm(x.z(j) - a.center[j]);
        double dt = x.t() - a.t0;
        s += a.amp * std::exp(-a.a * r2 - dt * dt / (2 * a.sigma * a.sigma)) * std::cos(a.nu * dt + a.theta);
    }
    return s;
}

SampledField TestFunction::sample(const Grid& grid) const {
    SampledField f(n_, grid);
    const std::size_t D = grid.dims();
    std::vector<double> c(D);
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t d = 0; d < D; ++d) c[d] = grid.coord(i, d);
        f[i] = (*this)(HeisenbergPoint::from_flat(c));
    }
    return f;
}

std::string TestFunction::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << n_;
    for (const auto& a : atoms_) {
        os << ";atom";
        for (const auto& c : a.center) os << "," << c.real() << "," << c.imag();
        os << "," << a.a << "," << a.t0 << "," << a.sigma << "," << a.nu << "," << a.theta << "," << a.amp;
    }
    return os.str();
}

std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

namespace {

// Uniform in [0,1) from raw bits; avoids implementation-defined distributions.
double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

}  // namespace

TestFunction random_band_limited(int n, std::uint64_t seed, const BandLimitedSpec& s) {
    auto g = seeded_stream(seed, 0);
    std::vector<GaussAtom> atoms;
    for (int i = 0; i < s.atoms; ++i) {
        GaussAtom a;
        a.center.resize(n);
        for (int j = 0; j < n; ++j) {
            double r = s.center_radius * std::sqrt(unit(g)) / std::sqrt(static_cast<double>(n));
            double th = 2 * std::numbers::pi * unit(g);
            a.center[j] = std::polar(r, th);
        }
        a.a = s.a_lo + (s.a_hi - s.a_lo) * unit(g);
        a.t0 = s.t0_spread * (2 * unit(g) - 1);
        a.sigma = s.sigma;
        a.nu = s.nu_lo + (s.nu_hi - s.nu_lo) * unit(g);
        a.theta = 2 * std::numbers::pi * unit(g);
        a.amp = 0.5 + unit(g);
        atoms.push_back(std::move(a));
    }
    return TestFunction(n, std::move(atoms));
}

}  // namespace hriesz
