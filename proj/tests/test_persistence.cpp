#include "doctest.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "filtcone/invariants.hpp"
#include "filtcone/persistence.hpp"
#include "filtcone/random.hpp"

#include "helpers.hpp"
#include "oracle.hpp"

using namespace filtcone;
using testing_support::bars;
using testing_support::half_grid;
using testing_support::multiset;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

ExtendedReal ninf() { return ExtendedReal::neg_infinity(); }
ExtendedReal pinf() { return ExtendedReal::infinity(); }

}  // namespace

TEST_CASE("barcodes of the basic fixtures")
{
    CHECK(barcode(empty_complex()).bars.empty());
    CHECK(barcode(point_complex(2.5)) == bars({{2.5, inf}}));
    CHECK(barcode(interval_complex(1, 4)) == bars({{1, 4}}));
    CHECK(barcode(direct_sum(point_complex(0), interval_complex(1, 4))) == bars({{0, inf}, {1, 4}}));
    // zero-length pairs leave no bar
    CHECK(barcode(interval_complex(2, 2)).bars.empty());
}

TEST_CASE("persistence ranks")
{
    const auto c = interval_complex(1, 4);
    CHECK(persistence_rank(c, {2, 3}) == 1);
    CHECK(persistence_rank(c, {2, 5}) == 0);
    CHECK(persistence_rank(c, {2, pinf()}) == 0);
    CHECK(persistence_rank(empty_complex(), {0, 1}) == 0);
    CHECK(persistence_rank(point_complex(1), {0.5, pinf()}) == 0);
    CHECK(persistence_rank(point_complex(1), {1, pinf()}) == 1);
}

TEST_CASE("homology class representatives")
{
    CHECK(homology_classes(empty_complex()).empty());
    const auto p = homology_classes(point_complex(3));
    REQUIRE(p.size() == 1);
    CHECK(p[0].test(0));
    CHECK(homology_classes(interval_complex(1, 4)).empty());
}

TEST_CASE("barcode matches the brute-force rank oracle on random complexes")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto c = random_complex(seed % 11, half_grid(), 0.2 + 0.002 * static_cast<double>(seed), seed * 7 + 1);
        INFO("seed " << seed);
        REQUIRE(multiset(barcode(c)) == oracle::bar_multiset(c));
        const oracle::Small s(c);
        for (double a : c.critical_values())
            for (double b : c.critical_values())
                if (a <= b) REQUIRE(persistence_rank(c, {a, b}) == s.rank(a, b));
    }
}

TEST_CASE("barcode does not depend on the order generators are listed in")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto c = random_complex(1 + seed % 9, std::vector<double>{0, 1, 2}, 0.5, seed);
        std::vector<std::size_t> perm(c.size());
        std::iota(perm.begin(), perm.end(), 0);
        Rng rng(seed);
        for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        REQUIRE(barcode(reorder(c, perm)) == barcode(c));
    }
}

TEST_CASE("spectral invariants")
{
    const auto i14 = interval_complex(1, 4);
    gf2::BitVector x(2);
    x.set(0);
    CHECK(spectral_invariant(i14, x) == ninf());

    gf2::BitVector g(1);
    g.set(0);
    CHECK(spectral_invariant(point_complex(2), g) == 2);

    const auto sum = direct_sum(point_complex(0), point_complex(2));
    gf2::BitVector both(2);
    both.set(0);
    both.set(1);
    CHECK(spectral_invariant(sum, both) == 2);
    CHECK(spectral_invariant(sum, gf2::BitVector(2)) == ninf());
}

TEST_CASE("profiles of the basic fixtures")
{
    CHECK(profile(point_complex(1.5)) == InvariantProfile{1.5, 1.5, 0, 0});
    CHECK(profile(interval_complex(1, 4)) == InvariantProfile{ninf(), pinf(), ninf(), 3});
    CHECK(profile(direct_sum(point_complex(0), point_complex(2))) == InvariantProfile{2, 0, 2, 0});
    CHECK(profile_oracle(empty_complex()) == InvariantProfile{ninf(), pinf(), ninf(), 0});
    CHECK(profile_oracle(interval_complex(1, 4)).beta == 3);
    CHECK(profile(interval_complex(1, 4)).acyclic());
}

TEST_CASE("profile agrees with its definition-level oracle")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto c = random_complex(seed % 13, half_grid(), 0.5, seed + 99);
        INFO("seed " << seed);
        REQUIRE(profile(c) == profile_oracle(c));
    }
}

TEST_CASE("direct sum profile is the aggregate of the summands")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto a = random_complex(seed % 6, half_grid(), 0.5, seed);
        const auto b = random_complex((seed / 6) % 6, half_grid(), 0.5, seed + 500);
        const auto pa = profile(a), pb = profile(b), ps = profile(direct_sum(a, b));
        REQUIRE(ps.sigma_plus == max(pa.sigma_plus, pb.sigma_plus));
        REQUIRE(ps.sigma_minus == min(pa.sigma_minus, pb.sigma_minus));
        REQUIRE(ps.beta == std::max(pa.beta, pb.beta));
    }
}

TEST_CASE("map boundary depth")
{
    auto i14 = share(interval_complex(1, 4));
    CHECK(map_boundary_depth(identity_map(i14), 0) == 3);

    auto p0 = share(point_complex(0));
    auto i02 = share(interval_complex(0, 2));
    CHECK(map_boundary_depth(zero_map(p0, i02), 1) == 0);

    FilteredMap f(map_from_ids(p0, i02, 0, {{"g", {"x"}}}));
    CHECK(map_boundary_depth(f, 0) == 2);
    CHECK(map_boundary_depth(f, 1) == 1);
    CHECK(map_boundary_depth(f, 3) == 0);

    FilteredMap up(map_from_ids(p0, share(point_complex(1, "h")), 1, {{"g", {"h"}}}));
    CHECK_THROWS_AS(map_boundary_depth(up, 0.5), InvalidInput);
}

TEST_CASE("map boundary depth under a larger shift")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto a = share(random_complex(seed % 6, half_grid(), 0.5, seed));
        auto b = share(random_complex(1 + seed % 7, half_grid(), 0.5, seed + 1));
        const auto f = random_filtered_map(a, b, 1.0, seed);
        const double base = map_boundary_depth(f, 1.0);
        for (double extra : {0.0, 0.5, 1.0, 2.5})
            REQUIRE(map_boundary_depth(f, 1.0 + extra) == std::max(0.0, base - extra));
    }
}

TEST_CASE("aggregate profiles")
{
    const std::vector<InvariantProfile> one{profile(point_complex(0))};
    CHECK(aggregate(one) == AggregateProfile{0, 0, 0});
    const std::vector<InvariantProfile> two{profile(point_complex(0)), profile(point_complex(2))};
    CHECK(aggregate(two) == AggregateProfile{2, 0, 2});
    const std::vector<InvariantProfile> mixed{profile(interval_complex(1, 4)), profile(point_complex(0))};
    CHECK(aggregate(mixed) == AggregateProfile{0, 0, 0});
    CHECK_THROWS_AS(aggregate(std::vector<InvariantProfile>{}), std::invalid_argument);
}

TEST_CASE("probe levels bracket every critical value")
{
    const auto p = probe_levels({1, 3});
    CHECK(std::is_sorted(p.begin(), p.end()));
    for (double v : {0.0, 1.0, 2.0, 3.0, 4.0}) CHECK(std::find(p.begin(), p.end(), v) != p.end());
}
