#pragma once

#include <string>
#include <vector>

#include "filtcone/checks.hpp"
#include "filtcone/complex.hpp"
#include "filtcone/invariants.hpp"

namespace filtcone {

/// f: A -> B together with the shift used to filter the cone.
struct ConeInput {
    FilteredMap f;
    double shift = 0.0;
};

/// [A -(f,s)-> B]: B's generators first (ids unchanged), then A's with
/// `prefix` prepended and filtration raised by s. d(a) = d_A a + f(a).
FilteredComplex mapping_cone(const ConeInput& in, const std::string& prefix = "a.");

/// Inclusion B -> cone and projection cone -> A as matrices.
gf2::Matrix cone_inclusion(std::size_t a_size, std::size_t b_size);
gf2::Matrix cone_projection(std::size_t a_size, std::size_t b_size);

/// A named inequality evaluated on one instance.
struct NamedCheck {
    std::string name;
    CheckResult result;
};

struct RefilterResult {
    FilteredComplex cone;          // filtered with s
    FilteredComplex refiltered;    // filtered with s'
    InvariantProfile before;
    InvariantProfile after;
    std::vector<NamedCheck> checks;
};

RefilterResult refilter_cone(const FilteredMap& f, double s, double s_prime, double tol = 1e-9);

struct ReassocResult {
    FilteredComplex nested_right;  // [E -> [F -> G]]
    FilteredComplex nested_left;   // [[E -> F] -> G]
    double g_prime_shift = 0.0;
    double identity_shift = 0.0;   // max over generators of filtration(left) - filtration(right)
    bool same_chain_complex = false;
    InvariantProfile right_profile;
    InvariantProfile left_profile;
    std::vector<NamedCheck> checks;
};

/// Prefix carried by F inside the inner cone [F -> G]; g must target these ids.
inline constexpr const char* kInnerAttachmentPrefix = "F.";

/// g: E -> [F -(f)-> G] with the inner cone built as mapping_cone(inner, "F.").
ReassocResult reassociate(const FilteredComplex& e, const ConeInput& inner, const FilteredMap& g, double s_g,
                          double tol = 1e-9);

/// Invariant bounds on a single cone, in a fixed order:
/// sigma- lower, sigma+ upper, beta upper, rho upper, then rho and beta against rho~.
std::vector<NamedCheck> cone_bound_checks(const InvariantProfile& a, const InvariantProfile& b,
                                          const InvariantProfile& cone, double s, double tol);

// -- cone equivalence ------------------------------------------------------------

/// Homotopy-commutative square f'' psi' ~ phi' f' (via h') with homotopy
/// inverses psi'', phi'' and the four homotopies
///   psi'' psi' = 1 + D k',  psi' psi'' = 1 + D k'',
///   phi'' phi' = 1 + D r',  phi' phi'' = 1 + D r'',
/// where D x = d x + x d.
struct ConeEquivalenceInput {
    FilteredMap f1;    // f': A' -> B'
    FilteredMap f2;    // f'': A'' -> B''
    FilteredMap psi1;  // A' -> A''
    FilteredMap phi1;  // B' -> B''
    FilteredLinearMap h1;  // A' -> B''
    FilteredMap psi2;  // A'' -> A'
    FilteredMap phi2;  // B'' -> B'
    FilteredLinearMap k1;  // on A'
    FilteredLinearMap k2;  // on A''
    FilteredLinearMap r1;  // on B'
    FilteredLinearMap r2;  // on B''
};

/// Named identities the input must satisfy; empty when all hold.
std::vector<std::string> check_cone_equivalence_input(const ConeEquivalenceInput& in);

struct ConeEquivalenceResult {
    FilteredComplex cone1;  // [A' -(f', s_f')-> B']
    FilteredComplex cone2;  // [A'' -(f'', s_f'')-> B'']
    FilteredLinearMap forward;   // cone1 -> cone2
    FilteredLinearMap backward;  // cone2 -> cone1
    FilteredLinearMap homotopy1; // on cone1: backward forward = 1 + D H'
    FilteredLinearMap homotopy2; // on cone2: forward backward = 1 + D H''
    FilteredLinearMap h2;        // A'' -> B': phi'' f'' + f' psi'' = D h''
    std::vector<std::string> failed_identities;
    std::vector<std::pair<std::string, double>> measured_shifts;
    double declared_shift_sum = 0.0;
    double max_measured_shift = 0.0;
    /// max measured / declared sum; 0 when both vanish, +inf when only the sum does.
    double ratio = 0.0;
};

/// Throws InvalidInput naming the failing identity when the input square is inconsistent.
ConeEquivalenceResult cone_equivalence(const ConeEquivalenceInput& in);

/// Random square with witnesses from random_homotopy_equivalence on both sides.
ConeEquivalenceInput random_cone_square(std::size_t max_generators, std::uint64_t seed);

// -- iterated cones --------------------------------------------------------------

/// attachments = (A_0, ..., A_r); maps[i-1] is a matrix from A_i into C_{i-1}
/// (rows indexed by C_{i-1}'s generators), shifts[i-1] = s_i.
struct IteratedConeSpec {
    std::vector<FilteredComplex> attachments;
    std::vector<gf2::Matrix> maps;
    std::vector<double> shifts;

    std::size_t stages() const noexcept { return maps.size(); }
};

/// C_0 = A_0, C_i = [A_i -(phi_i, s_i)-> C_{i-1}] with attachment prefix "A<i>.".
/// Returns the partial cones C_0, ..., C_r.
std::vector<FilteredComplex> iterated_cone(const IteratedConeSpec& spec);

struct BoundConstants {
    std::size_t r = 0;
    double a = 0.0;
    double b = 0.0;
    double e = 0.0;
};

struct IteratedBound {
    /// a_r rho~ + b_r sum(beta) + e_r sum(s).
    ExtendedReal bound;
    /// The unrolled linear form before coarsening, never larger than bound.
    ExtendedReal unrolled;
    BoundConstants constants;
    double rho_coefficient = 0.0;
    std::vector<double> beta_coefficients;   // beta_0 .. beta_r
    std::vector<double> shift_coefficients;  // s_1 .. s_r
};

/// Unrolls the single-cone estimates through r stages.
/// Throws std::invalid_argument on r = 0, mismatched lengths, or an infinite rho~.
IteratedBound iterated_bound(std::size_t r, const AggregateProfile& tilde, const std::vector<double>& betas,
                             const std::vector<double>& shifts);

/// Constants only; they depend on r alone.
BoundConstants bound_constants(std::size_t r);

/// Random spec with r stages, attachments of at most max_generators generators.
IteratedConeSpec random_iterated_spec(std::size_t r, std::size_t max_generators, std::uint64_t seed);

// -- tensor product --------------------------------------------------------------

/// Generators g*h in lexicographic (g, h) order with filtration summed;
/// d(g*h) = dg*h + g*dh.
FilteredComplex tensor_product(const FilteredComplex& a, const FilteredComplex& b);

}  // namespace filtcone
