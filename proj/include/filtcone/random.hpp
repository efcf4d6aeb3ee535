#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "filtcone/complex.hpp"

namespace filtcone {

/// Seeded source of randomness. Wraps mt19937_64 (bit-exact across
/// platforms) and derives bounded values from raw draws so that generated
/// instances do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n); n must be positive.
    std::size_t below(std::size_t n);

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    template <typename T>
    const T& pick(std::span<const T> values)
    {
        return values[below(values.size())];
    }

    /// Uniform multiple of `step` in [lo, hi].
    double grid(double lo, double hi, double step = 0.5);

private:
    std::mt19937_64 engine_;
};

/// Independent stream seed for instance `index` of a run seeded by `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Valid complex with gen_count generators whose filtrations are drawn from
/// `filtration_grid`. The differential is a random partial pairing of
/// generators conjugated by a random unitriangular (hence filtered, with
/// filtered inverse) change of basis.
FilteredComplex random_complex(std::size_t gen_count, std::span<const double> filtration_grid, double density,
                               std::uint64_t seed);

/// Random `shift`-filtered chain map dλ + λd plus, when the chain-map space
/// is small enough to enumerate, a random element of it.
FilteredMap random_filtered_map(ComplexPtr source, ComplexPtr target, double shift, std::uint64_t seed);

/// Random `shift`-filtered linear map with entry density `density`.
FilteredLinearMap random_linear_map(ComplexPtr source, ComplexPtr target, double shift, double density, Rng& rng);

/// C' = (C ⊕ pad_pairs acyclic intervals) under a random filtered change of
/// basis, with explicit f, g, h, h' sharing a common shift <= shift_budget.
HomotopyEquivalenceWitness random_homotopy_equivalence(ComplexPtr c, std::size_t pad_pairs, double shift_budget,
                                                       std::uint64_t seed);

/// Unitriangular change of basis in (filtration, index) order and its inverse.
struct FilteredAutomorphism {
    gf2::Matrix forward;
    gf2::Matrix inverse;
};
FilteredAutomorphism random_filtered_automorphism(const FilteredComplex& c, double density, Rng& rng);

}  // namespace filtcone
