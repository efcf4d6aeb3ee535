#pragma once

#include <span>
#include <vector>

#include "filtcone/complex.hpp"
#include "filtcone/extended_real.hpp"

namespace filtcone {

/// (sigma+, sigma-, rho, beta) of a complex. For acyclic complexes
/// sigma+ = -inf, sigma- = +inf and rho = -inf.
struct InvariantProfile {
    ExtendedReal sigma_plus = ExtendedReal::neg_infinity();
    ExtendedReal sigma_minus = ExtendedReal::infinity();
    ExtendedReal rho = ExtendedReal::neg_infinity();
    double beta = 0.0;

    bool acyclic() const noexcept { return sigma_plus.is_neg_inf(); }
    friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
};

/// Max of sigma+, min of sigma-, and their difference over a collection.
struct AggregateProfile {
    ExtendedReal sigma_plus_tilde = ExtendedReal::neg_infinity();
    ExtendedReal sigma_minus_tilde = ExtendedReal::infinity();
    ExtendedReal rho_tilde = ExtendedReal::neg_infinity();

    friend bool operator==(const AggregateProfile&, const AggregateProfile&) = default;
};

/// Least level alpha at which [cycle] lies in the image of H(C^{<=alpha}); -inf for the zero class.
ExtendedReal spectral_invariant(const FilteredComplex& c, const gf2::BitVector& cycle);

/// Read off the barcode.
InvariantProfile profile(const FilteredComplex& c);

/// Straight from the definitions through persistence ranks at probe levels.
InvariantProfile profile_oracle(const FilteredComplex& c);

/// Boundary depth of f viewed as an s-filtered map. Throws InvalidInput if f is not s-filtered.
double map_boundary_depth(const FilteredLinearMap& f, double s);

/// Throws std::invalid_argument on an empty list.
AggregateProfile aggregate(std::span<const InvariantProfile> profiles);

/// Critical values, midpoints between consecutive ones, and one level on each side.
std::vector<double> probe_levels(std::vector<double> critical);

}  // namespace filtcone
