#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "filtcone/gf2.hpp"

namespace filtcone {

struct Generator {
    std::string id;
    double filtration = 0.0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Collected invariant violations. Empty means valid.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Raised when an operation receives a complex or map that fails validation.
class InvalidInput : public std::invalid_argument {
public:
    InvalidInput(const std::string& what, std::vector<std::string> violations = {})
        : std::invalid_argument(what), violations_(std::move(violations))
    {
    }
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Finite-dimensional chain complex over F2 with one filtration value per generator.
///
/// The boundary is stored column-major: column g is the support of d(g).
/// Instances are immutable; the validation report is computed once at
/// construction so that concurrent readers never race on it.
class FilteredComplex {
public:
    FilteredComplex() = default;

    /// Boundary given by generator ids. Throws InvalidInput on duplicate or unknown ids.
    FilteredComplex(std::string name, std::vector<Generator> generators,
                    const std::map<std::string, std::vector<std::string>>& boundary);

    /// Boundary given as a matrix over generator indices.
    FilteredComplex(std::string name, std::vector<Generator> generators, gf2::Matrix boundary);

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return generators_.size(); }
    bool empty() const noexcept { return generators_.empty(); }

    const std::vector<Generator>& generators() const noexcept { return generators_; }
    const Generator& generator(std::size_t i) const { return generators_[i]; }
    double filtration(std::size_t i) const { return generators_[i].filtration; }
    const gf2::Matrix& boundary() const noexcept { return boundary_; }

    std::optional<std::size_t> index_of(const std::string& id) const;
    std::size_t require_index(const std::string& id) const;

    /// Ids in the support of d(generator i), in generator order.
    std::vector<std::string> boundary_ids(std::size_t i) const;

    /// Sorted distinct filtration values.
    std::vector<double> critical_values() const;

    /// Indicator of {g : filtration(g) <= level}.
    gf2::BitVector sublevel(double level) const;

    const ValidationReport& validation() const noexcept { return validation_; }

    /// Same generators (ids and filtrations, in order) and boundary; the name is ignored.
    bool same_as(const FilteredComplex& other) const;

    FilteredComplex renamed(std::string name) const;

private:
    void index_and_validate();

    std::string name_;
    std::vector<Generator> generators_;
    gf2::Matrix boundary_;
    std::unordered_map<std::string, std::size_t> index_;
    ValidationReport validation_;
};

using ComplexPtr = std::shared_ptr<const FilteredComplex>;

inline ComplexPtr share(FilteredComplex c) { return std::make_shared<const FilteredComplex>(std::move(c)); }

/// F2-linear map between filtered complexes that raises filtration by at most `shift`.
/// matrix has target.size() rows and source.size() columns.
struct FilteredLinearMap {
    ComplexPtr source;
    ComplexPtr target;
    double shift = 0.0;
    gf2::Matrix matrix;
};

/// A FilteredLinearMap that is also a chain map. The chain identity is a
/// validation concern (validate_map), not a construction-time guarantee.
struct FilteredMap : FilteredLinearMap {
    FilteredMap() = default;
    explicit FilteredMap(FilteredLinearMap m) : FilteredLinearMap(std::move(m)) {}
};

/// g∘f - id = dh + hd and f∘g - id = dh' + h'd, all four maps s-filtered.
struct HomotopyEquivalenceWitness {
    ComplexPtr source;  // C
    ComplexPtr target;  // C'
    FilteredMap forward;
    FilteredMap backward;
    FilteredLinearMap source_homotopy;  // on C
    FilteredLinearMap target_homotopy;  // on C'
    double shift = 0.0;
};

struct MapValidation {
    ValidationReport report;
    double minimal_shift = 0.0;

    bool ok() const noexcept { return report.ok(); }
};

// -- complex_core operations -------------------------------------------------

ValidationReport validate_complex(const FilteredComplex& c);

/// Throws InvalidInput carrying the violations unless c is valid.
void require_valid(const FilteredComplex& c);

/// (C[s])^{<=a} = C^{<=a+s}: every filtration value decreases by s.
FilteredComplex shift_complex(const FilteredComplex& c, double s);

/// Chain-map and s-filtered checks plus the least admissible shift.
MapValidation validate_map(const FilteredMap& f);

/// s-filtered check only.
MapValidation validate_linear_map(const FilteredLinearMap& f);

/// max(0, max over entries of filtration(target) - filtration(source)).
double minimal_shift(const FilteredLinearMap& f);

/// Generator indices ordered by (filtration, declared index).
std::vector<std::size_t> filtration_order(const FilteredComplex& c);

/// Block-diagonal sum; ids are prefixed to keep the union disjoint.
FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b, const std::string& prefix_a = "a.",
                           const std::string& prefix_b = "b.");

/// Same complex with generators listed in order perm[0], perm[1], ...
FilteredComplex reorder(const FilteredComplex& c, const std::vector<std::size_t>& perm);

// -- fixtures ------------------------------------------------------------------

/// Z: the empty complex.
FilteredComplex empty_complex(std::string name = "Z");
/// P(a): one generator at a, zero differential.
FilteredComplex point_complex(double a, std::string id = "g");
/// I(b,d): x@b, y@d, d(y) = x.
FilteredComplex interval_complex(double birth, double death);

// -- map algebra ---------------------------------------------------------------

FilteredLinearMap zero_map(ComplexPtr source, ComplexPtr target, double shift = 0.0);
FilteredMap identity_map(ComplexPtr c);

/// Builds a map from an id-level matrix; throws InvalidInput on unknown ids.
FilteredLinearMap map_from_ids(ComplexPtr source, ComplexPtr target, double shift,
                               const std::map<std::string, std::vector<std::string>>& matrix);

/// g∘f, shift g.shift + f.shift.
FilteredLinearMap compose(const FilteredLinearMap& g, const FilteredLinearMap& f);
/// f + g over F2, shift max of the two.
FilteredLinearMap add(const FilteredLinearMap& f, const FilteredLinearMap& g);
/// d∘h + h∘d.
FilteredLinearMap commutator(const FilteredLinearMap& h);

/// Same underlying complexes and matrices (shift ignored).
bool same_linear_map(const FilteredLinearMap& f, const FilteredLinearMap& g);

/// Checks g∘f − id = dh + hd and f∘g − id = dh' + h'd plus all declared shifts.
ValidationReport validate_witness(const HomotopyEquivalenceWitness& w);

}  // namespace filtcone
