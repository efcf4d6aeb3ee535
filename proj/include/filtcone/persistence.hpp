#pragma once

#include <vector>

#include "filtcone/complex.hpp"
#include "filtcone/extended_real.hpp"

namespace filtcone {

/// Half-open interval [birth, death); death may be +inf.
struct Bar {
    double birth = 0.0;
    ExtendedReal death = ExtendedReal::infinity();

    bool infinite() const noexcept { return death.is_pos_inf(); }
    ExtendedReal length() const { return death - birth; }

    friend auto operator<=>(const Bar& a, const Bar& b)
    {
        if (auto c = a.birth <=> b.birth; c != 0) return c;
        return a.death <=> b.death;
    }
    friend bool operator==(const Bar&, const Bar&) = default;
};

/// Multiset of bars kept sorted by (birth, death) so that equality is multiset equality.
struct Barcode {
    std::vector<Bar> bars;

    void normalize();
    std::size_t infinite_count() const;
    friend bool operator==(const Barcode&, const Barcode&) = default;
};

/// Multiset union.
Barcode operator+(const Barcode& a, const Barcode& b);

/// The map i^{beta, alpha} from level alpha to level beta (beta = +inf means into H(C)).
struct PersistenceQuery {
    double alpha = 0.0;
    ExtendedReal beta = ExtendedReal::infinity();
};

/// Column reduction of the boundary matrix in (filtration, index) order.
/// Zero-length pairs are dropped.
Barcode barcode(const FilteredComplex& c);

/// Rank of i^{beta, alpha} = dim Z_alpha - dim(Z_alpha ∩ B_beta), by plain
/// linear algebra on cycle and boundary spaces. Shares nothing with barcode().
std::size_t persistence_rank(const FilteredComplex& c, const PersistenceQuery& q);

/// Cycles whose classes form a basis of H(C), as generator-index supports.
std::vector<gf2::BitVector> homology_classes(const FilteredComplex& c);

/// Number of bars [b, d) with b <= alpha and beta < d (infinite bars when beta = +inf).
std::size_t bars_alive(const Barcode& bc, const PersistenceQuery& q);

}  // namespace filtcone
