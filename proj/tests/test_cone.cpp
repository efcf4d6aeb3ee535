#include "doctest.h"

#include <limits>

#include "filtcone/cone.hpp"
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

FilteredMap map_of(ComplexPtr s, ComplexPtr t, double shift, const std::map<std::string, std::vector<std::string>>& m)
{
    return FilteredMap(map_from_ids(std::move(s), std::move(t), shift, m));
}

ComplexPtr p(double a, const char* id) { return share(point_complex(a, id)); }

}  // namespace

TEST_CASE("cones of the point fixtures")
{
    const auto down = mapping_cone({map_of(p(1, "a"), p(0, "b"), 0, {{"a", {"b"}}}), 0});
    CHECK(down.generators() == std::vector<Generator>{{"b", 0}, {"a.a", 1}});
    CHECK(barcode(down) == bars({{0, 1}}));
    CHECK(profile(down).beta == 1);

    const auto up = mapping_cone({map_of(p(0, "a"), p(1, "b"), 1, {{"a", {"b"}}}), 1});
    CHECK(barcode(up).bars.empty());
    CHECK(profile(up).beta == 0);

    auto a = share(random_complex(4, half_grid(), 0.5, 1));
    auto b = share(random_complex(3, half_grid(), 0.5, 2));
    const auto zero = mapping_cone({FilteredMap(zero_map(a, b)), 0});
    CHECK(barcode(zero) == barcode(direct_sum(*a, *b)));
}

TEST_CASE("cone rejects a map that is not filtered at the requested shift")
{
    CHECK_THROWS_AS(mapping_cone({map_of(p(0, "a"), p(1, "b"), 1, {{"a", {"b"}}}), 0.5}), InvalidInput);
}

TEST_CASE("random cones are valid and obey the single-cone bounds")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        auto a = share(random_complex(rng.below(6), half_grid(), 0.5, rng.next()));
        auto b = share(random_complex(rng.below(6), half_grid(), 0.5, rng.next()));
        const double s = rng.grid(0, 2);
        const auto f = random_filtered_map(a, b, s, rng.next());
        const auto c = mapping_cone({f, s});
        INFO("seed " << seed);
        REQUIRE(validate_complex(c).ok());
        REQUIRE(multiset(barcode(c)) == oracle::bar_multiset(c));
        for (const auto& nc : cone_bound_checks(profile(*a), profile(*b), profile(c), s, 1e-9)) {
            INFO(nc.name);
            REQUIRE_FALSE(nc.result.failed());
        }
    }
}

TEST_CASE("tight single-cone fixtures")
{
    // beta bound: beta(C) <= beta(A) + beta(B) + ... is met with equality at 1
    const auto a = profile(point_complex(1)), b = profile(point_complex(0));
    const auto c = profile(mapping_cone({map_of(p(1, "a"), p(0, "b"), 0, {{"a", {"b"}}}), 0}));
    const auto checks = cone_bound_checks(a, b, c, 0, 1e-9);
    REQUIRE(checks.size() == 9);
    CHECK(checks[2].name == "beta_upper");
    CHECK(checks[2].result.outcome == Outcome::pass);
    CHECK(checks[2].result.slack() == 0);

    auto i14 = share(interval_complex(1, 4));
    const auto z = mapping_cone({FilteredMap(zero_map(p(0, "a"), i14)), 0});
    const auto zc = cone_bound_checks(profile(point_complex(0)), profile(*i14), profile(z), 0, 1e-9);
    CHECK(zc[0].name == "sigma_minus_lower");
    CHECK(zc[0].result.outcome == Outcome::pass);
    CHECK(zc[0].result.slack() == 0);
}

TEST_CASE("refiltering a cone")
{
    const auto f = map_of(p(1, "a"), p(0, "b"), 0, {{"a", {"b"}}});
    auto same = refilter_cone(f, 0, 0);
    CHECK(same.cone.same_as(same.refiltered));

    const auto r = refilter_cone(f, 0, 2);
    CHECK(r.before.beta == 1);
    CHECK(r.after.beta == 3);
    for (const auto& c : r.checks) CHECK_FALSE(c.result.failed());

    const auto z = refilter_cone(FilteredMap(zero_map(p(0, "a"), p(0, "b"))), 0, 1);
    CHECK(z.before.sigma_plus == 0);
    CHECK(z.after.sigma_plus == 1);
}

TEST_CASE("reassociating two cones")
{
    auto e = p(0, "e"), fc = p(0, "f"), gc = p(0, "g");
    const ConeInput inner{FilteredMap(zero_map(fc, gc)), 1};
    auto ic = share(mapping_cone(inner, kInnerAttachmentPrefix));
    const auto r = reassociate(*e, inner, map_of(e, ic, 1, {{"e", {"F.f"}}}), 1);
    CHECK(r.g_prime_shift == 0);
    CHECK(r.same_chain_complex);
    for (const auto& c : r.checks) CHECK_FALSE(c.result.failed());

    auto z = share(empty_complex());
    const ConeInput chain{map_of(fc, share(interval_complex(0, 2)), 0, {{"f", {"x"}}}), 0};
    auto chain_cone = share(mapping_cone(chain, kInnerAttachmentPrefix));
    const auto rz = reassociate(*z, chain, FilteredMap(zero_map(z, chain_cone)), 0);
    CHECK(rz.nested_left.same_as(*chain_cone));
    CHECK(rz.nested_right.same_as(*chain_cone));
}

TEST_CASE("cone equivalence on the identity square")
{
    auto a = p(0.5, "a");
    auto b = share(interval_complex(1, 2));
    ConeEquivalenceInput in;
    in.f1 = in.f2 = map_of(a, b, 0.5, {{"a", {"x"}}});
    in.psi1 = in.psi2 = identity_map(a);
    in.phi1 = in.phi2 = identity_map(b);
    in.h1 = zero_map(a, b, 0.5);
    in.k1 = in.k2 = zero_map(a, a);
    in.r1 = in.r2 = zero_map(b, b);
    CHECK(check_cone_equivalence_input(in).empty());
    const auto out = cone_equivalence(in);
    const auto id = gf2::Matrix::identity(out.cone1.size());
    CHECK(out.forward.matrix == id);
    CHECK(out.backward.matrix == id);
    CHECK(out.homotopy1.matrix.is_zero());
    CHECK(out.homotopy2.matrix.is_zero());
    CHECK(out.max_measured_shift == 0);

    in.h1 = map_from_ids(a, b, 0.5, {{"a", {"y"}}});
    CHECK_FALSE(check_cone_equivalence_input(in).empty());
}

TEST_CASE("cone equivalence on random squares")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto in = random_cone_square(5, seed);
        REQUIRE(check_cone_equivalence_input(in).empty());
        const auto out = cone_equivalence(in);
        INFO("seed " << seed);
        REQUIRE(out.failed_identities.empty());
        CHECK(out.ratio <= 3.0);
    }
}

TEST_CASE("iterated cones")
{
    IteratedConeSpec only;
    only.attachments = {interval_complex(1, 4)};
    CHECK(iterated_cone(only).back().same_as(interval_complex(1, 4)));

    const auto f = map_of(p(1, "a"), p(0, "b"), 0, {{"a", {"b"}}});
    IteratedConeSpec one;
    one.attachments = {point_complex(0, "b"), point_complex(1, "a")};
    one.maps = {f.matrix};
    one.shifts = {0.5};
    CHECK(barcode(iterated_cone(one).back()) == barcode(mapping_cone({f, 0.5}, "A1.")));

    IteratedConeSpec three;
    three.attachments = {point_complex(0), point_complex(0), point_complex(0)};
    three.maps = {gf2::Matrix(1, 1), gf2::Matrix(2, 1)};
    three.shifts = {1, 1};
    CHECK(barcode(iterated_cone(three).back()) == bars({{0, inf}, {1, inf}, {1, inf}}));
}

TEST_CASE("iterated bound constants and forms")
{
    const auto c1 = bound_constants(1);
    CHECK(c1.a == 1);
    CHECK(c1.b == 1);
    CHECK(c1.e == 1);
    for (std::size_t r = 2; r <= 8; ++r) {
        const auto lo = bound_constants(r - 1), hi = bound_constants(r);
        CHECK(hi.a >= lo.a);
        CHECK(hi.b >= lo.b);
        CHECK(hi.e >= lo.e);
    }

    const AggregateProfile tilde{2, 0.5, 1.5};
    const auto one = iterated_bound(1, tilde, {0.5, 1}, {0.25});
    CHECK(one.bound == ExtendedReal(1.5 + 0.5 + 1 + 0.25));
    CHECK(iterated_bound(1, {0, 0, 0}, {0, 0}, {0}).bound == ExtendedReal(0));
    CHECK_THROWS_AS(iterated_bound(0, tilde, {0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(iterated_bound(2, tilde, {0, 1}, {0}), std::invalid_argument);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t r = 1 + seed % 4;
        const auto b = iterated_bound(r, tilde, std::vector<double>(r + 1, 1.0), std::vector<double>(r, 0.5));
        CHECK(b.unrolled <= b.bound);
    }
}

TEST_CASE("iterated bound holds on random specs")
{
    for (std::size_t r = 1; r <= 4; ++r) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const auto spec = random_iterated_spec(r, 4, seed * 31 + r);
            const auto cones = iterated_cone(spec);
            std::vector<InvariantProfile> ps;
            std::vector<double> betas;
            for (const auto& a : spec.attachments) {
                ps.push_back(profile(a));
                betas.push_back(ps.back().beta);
            }
            const auto tilde = aggregate(ps);
            if (!tilde.rho_tilde.is_finite()) continue;
            const auto rho = profile(cones.back()).rho;
            const auto bound = iterated_bound(r, tilde, betas, spec.shifts).bound;
            INFO("r " << r << " seed " << seed);
            CHECK(rho <= bound + ExtendedReal(1e-9));
        }
    }
}

TEST_CASE("tensor products")
{
    CHECK(tensor_product(point_complex(2), point_complex(3)).critical_values() == std::vector<double>{5});
    CHECK(barcode(tensor_product(point_complex(2), point_complex(3))) == bars({{5, inf}}));
    const auto pi = tensor_product(point_complex(1), interval_complex(0, 2));
    CHECK(barcode(pi) == bars({{1, 3}}));
    CHECK(profile(pi).beta == 2);
    const auto ii = tensor_product(interval_complex(0, 2), interval_complex(0, 3));
    REQUIRE(ii.size() == 4);
    CHECK(barcode(ii) == bars({{0, 2}, {3, 5}}));
    CHECK(profile(ii).beta == 2);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto a = random_complex(seed % 5, half_grid(), 0.5, seed);
        const auto b = random_complex((seed / 5) % 5, half_grid(), 0.5, seed + 77);
        const auto t = tensor_product(a, b);
        REQUIRE(validate_complex(t).ok());
        REQUIRE(multiset(barcode(t)) == oracle::bar_multiset(t));
        const auto pa = profile(a), pb = profile(b), pt = profile(t);
        REQUIRE(pt.beta <= std::max(pa.beta, pb.beta));
        if (!pa.acyclic() && !pb.acyclic()) REQUIRE(pt.sigma_plus == pa.sigma_plus + pb.sigma_plus);
    }
}
