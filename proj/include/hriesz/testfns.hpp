#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hriesz/grid.hpp"

namespace hriesz {

// amp · e^{-a|z-c|²} · e^{-(t-t0)²/(2σ²)} · cos(ν(t-t0) + θ); ν = 0, θ = 0 gives a plain Gaussian in t.
struct GaussAtom {
    std::vector<cplx> center;
    double a = 1;
    double t0 = 0;
    double sigma = 1;
    double nu = 0;
    double theta = 0;
    double amp = 1;
};

class TestFunction {
public:
    TestFunction(int n, std::vector<GaussAtom> atoms);

    int n() const { return n_; }
    const std::vector<GaussAtom>& atoms() const { return atoms_; }
    double operator()(const HeisenbergPoint& x) const;
    SampledField sample(const Grid& grid) const;
    // Stable text description, used for content hashes.
    std::string describe() const;

private:
    int n_;
    std::vector<GaussAtom> atoms_;
};

struct BandLimitedSpec {
    int atoms = 3;
    double center_radius = 1.0;  // |c_j| ≤ this
    double a_lo = 0.3, a_hi = 0.6;
    double nu_lo = 1.2, nu_hi = 1.8;
    double sigma = 3.0;
    double t0_spread = 1.0;
};

// t-profiles modulated at ν with width σ: spectral mass sits near |λ| ∈ [ν-4/σ, ν+4/σ].
TestFunction random_band_limited(int n, std::uint64_t seed, const BandLimitedSpec& spec = {});

// Independent deterministic stream for (seed, index).
std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t index);

}  // namespace hriesz
