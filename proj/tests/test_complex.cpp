#include "doctest.h"

#include <cmath>
#include <limits>

#include "filtcone/complex.hpp"
#include "filtcone/gf2.hpp"
#include "filtcone/persistence.hpp"
#include "filtcone/invariants.hpp"
#include "filtcone/random.hpp"

#include "helpers.hpp"

using namespace filtcone;
using testing_support::bars;
using testing_support::half_grid;

namespace {

bool mentions(const ValidationReport& r, const std::string& text)
{
    for (const auto& v : r.violations)
        if (v.find(text) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("gf2 rank, nullspace and solve agree on a small system")
{
    gf2::BitVector a(4), b(4), c(4);
    a.set(0);
    a.set(1);
    b.set(1);
    b.set(2);
    c = a ^ b;  // dependent
    const std::vector<gf2::BitVector> v{a, b, c};
    CHECK(gf2::rank(v, 4) == 2);
    const auto ker = gf2::nullspace(v, 4);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0].count() == 3);

    gf2::BitVector target(4);
    target.set(0);
    target.set(2);
    const auto x = gf2::solve(v, target, 4);
    REQUIRE(x.has_value());
    gf2::BitVector sum(4);
    x->for_each_set([&](std::size_t j) { sum ^= v[j]; });
    CHECK(sum == target);

    gf2::BitVector off(4);
    off.set(3);
    CHECK_FALSE(gf2::solve(v, off, 4).has_value());
}

TEST_CASE("matrix product composes columns")
{
    auto m = gf2::Matrix::identity(3);
    m.set(0, 2);
    CHECK((m * m) == gf2::Matrix::identity(3));
}

TEST_CASE("complex validation reports each broken axiom")
{
    const FilteredComplex good("C", {{"x", 1}, {"y", 3}}, {{"y", {"x"}}});
    CHECK(validate_complex(good).ok());

    const FilteredComplex down("C", {{"x", 3}, {"y", 1}}, {{"y", {"x"}}});
    CHECK(mentions(validate_complex(down), "filtration(x)=3 > filtration(y)=1"));

    const FilteredComplex chain("C", {{"x", 0}, {"y", 0}, {"z", 0}}, {{"z", {"y"}}, {"y", {"x"}}});
    CHECK(mentions(validate_complex(chain), "d∘d ≠ 0 at z"));
    CHECK_THROWS_AS(require_valid(chain), InvalidInput);

    CHECK_THROWS_AS(FilteredComplex("C", {{"x", 0}}, {{"x", {"nope"}}}), InvalidInput);
    CHECK_THROWS_AS(FilteredComplex("C", {{"x", 0}, {"x", 1}}, std::map<std::string, std::vector<std::string>>{}), InvalidInput);
}

TEST_CASE("shift_complex lowers every filtration value")
{
    CHECK(shift_complex(point_complex(2), 0).same_as(point_complex(2)));
    CHECK(shift_complex(point_complex(2), 2).same_as(point_complex(0)));
    const auto s = shift_complex(interval_complex(1, 4), 1);
    CHECK(s.same_as(interval_complex(0, 3)));
    CHECK(barcode(s) == bars({{0, 3}}));
}

TEST_CASE("map validation and minimal shift")
{
    auto p1 = share(point_complex(1, "g")), p0 = share(point_complex(0, "h"));
    FilteredMap down(map_from_ids(p1, p0, 0, {{"g", {"h"}}}));
    auto v = validate_map(down);
    CHECK(v.ok());
    CHECK(v.minimal_shift == 0);

    FilteredMap up(map_from_ids(share(point_complex(0, "g")), share(point_complex(1, "h")), 0, {{"g", {"h"}}}));
    v = validate_map(up);
    CHECK_FALSE(v.ok());
    CHECK(v.minimal_shift == 1);

    auto i14 = share(interval_complex(1, 4));
    v = validate_map(identity_map(i14));
    CHECK(v.ok());
    CHECK(v.minimal_shift == 0);

    // x -> x, y -> 0 breaks the chain identity at y
    FilteredMap broken(map_from_ids(i14, i14, 0, {{"x", {"x"}}}));
    CHECK(mentions(validate_map(broken).report, "f∘d ≠ d∘f at y"));
}

TEST_CASE("direct sums")
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto z = direct_sum(empty_complex(), point_complex(0));
    CHECK(z.size() == 1);
    CHECK(barcode(z) == bars({{0, inf}}));
    CHECK(barcode(direct_sum(point_complex(0), interval_complex(1, 4))) == bars({{0, inf}, {1, 4}}));
    CHECK(barcode(direct_sum(interval_complex(0, 1), interval_complex(0, 1))) == bars({{0, 1}, {0, 1}}));
}

TEST_CASE("random complexes are deterministic and valid")
{
    CHECK(random_complex(0, {}, 0.5, 7).empty());
    const std::vector<double> g{0, 1, 2, 3};
    const auto a = random_complex(5, g, 0.3, 42);
    const auto b = random_complex(5, g, 0.3, 42);
    CHECK(a.same_as(b));
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto c = random_complex(seed % 13, half_grid(), 0.2 + 0.003 * static_cast<double>(seed), seed);
        REQUIRE(validate_complex(c).ok());
    }
}

TEST_CASE("random filtered maps are valid chain maps")
{
    auto z = share(empty_complex());
    auto b = share(random_complex(4, half_grid(), 0.5, 3));
    CHECK(random_filtered_map(z, b, 1.0, 5).matrix.is_zero());

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto src = share(random_complex(seed % 7, half_grid(), 0.5, seed));
        auto tgt = share(random_complex((seed / 7) % 7, half_grid(), 0.5, seed + 1000));
        const double shift = 0.5 * static_cast<double>(seed % 4);
        const auto f = random_filtered_map(src, tgt, shift, seed);
        const auto v = validate_map(f);
        REQUIRE(v.ok());
        CHECK(v.minimal_shift <= shift);
    }

    auto src = share(random_complex(5, half_grid(), 0.5, 11));
    const auto f1 = random_filtered_map(src, b, 1.0, 9);
    const auto f2 = random_filtered_map(src, b, 1.0, 9);
    CHECK(f1.matrix == f2.matrix);
}

TEST_CASE("homotopy equivalence witnesses")
{
    auto c = share(random_complex(5, half_grid(), 0.5, 1));
    const auto id = random_homotopy_equivalence(c, 0, 0.0, 3);
    CHECK(id.target->same_as(*c));
    CHECK(id.forward.matrix == gf2::Matrix::identity(c->size()));
    CHECK(id.backward.matrix == gf2::Matrix::identity(c->size()));
    CHECK(id.source_homotopy.matrix.is_zero());
    CHECK(id.target_homotopy.matrix.is_zero());
    CHECK(id.shift == 0);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto src = share(random_complex(seed % 8, half_grid(), 0.5, seed));
        const auto w = random_homotopy_equivalence(src, seed % 3, 0.5 * static_cast<double>(seed % 5), seed);
        REQUIRE(validate_witness(w).ok());
    }

    auto p0 = share(point_complex(0));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto w = random_homotopy_equivalence(p0, 1, 2.0, seed);
        CHECK(std::abs(profile(*w.target).beta - profile(*p0).beta) <= 2 * w.shift);
    }
}

TEST_CASE("map algebra")
{
    auto c = share(interval_complex(0, 2));
    const auto h = map_from_ids(c, c, 2, {{"x", {"y"}}});
    // d h + h d = id on I(0,2)
    CHECK(commutator(h).matrix == gf2::Matrix::identity(2));
    const auto sum = add(identity_map(c), commutator(h));
    CHECK(sum.matrix.is_zero());
    CHECK(compose(h, h).matrix.is_zero());
    CHECK(compose(h, h).shift == 4);
}
