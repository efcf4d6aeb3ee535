#include "doctest.h"

#include "filtcone/io.hpp"
#include "filtcone/verifier.hpp"

using namespace filtcone;

namespace {

CampaignConfig small(Suite s, std::size_t count, std::uint64_t seed = 3)
{
    CampaignConfig c;
    c.suite = s;
    c.count = count;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("suite names round-trip")
{
    for (auto s : {Suite::oracle, Suite::cone, Suite::quasieq, Suite::homotopy_diff, Suite::tensor, Suite::refilter,
                   Suite::reassoc, Suite::iterated, Suite::cone_equiv, Suite::all})
        CHECK(parse_suite(to_string(s)) == s);
    CHECK_THROWS_AS(parse_suite("nope"), std::invalid_argument);
}

TEST_CASE("campaign rejects a zero count and a non-positive tolerance")
{
    CHECK_THROWS_AS(run_campaign(small(Suite::cone, 0)), std::invalid_argument);
    auto c = small(Suite::cone, 5);
    c.tolerance = 0;
    CHECK_THROWS_AS(run_campaign_serial(c), std::invalid_argument);
}

TEST_CASE("each suite passes a short campaign")
{
    for (auto s : {Suite::oracle, Suite::cone, Suite::quasieq, Suite::homotopy_diff, Suite::tensor, Suite::refilter,
                   Suite::reassoc, Suite::iterated, Suite::cone_equiv}) {
        const auto rep = run_campaign(small(s, 20));
        REQUIRE(rep.suites.size() == 1);
        INFO(to_string(s));
        CHECK(rep.ok());
        for (const auto& f : rep.suites[0].fixtures) {
            INFO(f.name << ": " << f.detail);
            CHECK(f.passed);
        }
    }
}

TEST_CASE("parallel and serial campaigns produce identical reports")
{
    for (auto s : {Suite::cone, Suite::quasieq, Suite::iterated, Suite::cone_equiv}) {
        const auto cfg = small(s, 30, 11);
        CHECK(io::to_json(run_campaign(cfg)).dump() == io::to_json(run_campaign_serial(cfg)).dump());
    }
}

TEST_CASE("campaigns are deterministic in the seed")
{
    const auto a = io::to_json(run_campaign(small(Suite::cone, 40, 5))).dump();
    const auto b = io::to_json(run_campaign(small(Suite::cone, 40, 5))).dump();
    const auto c = io::to_json(run_campaign(small(Suite::cone, 40, 6))).dump();
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("iterated suite counts instances per stage count")
{
    auto cfg = small(Suite::iterated, 10);
    cfg.max_r = 3;
    const auto rep = run_campaign(cfg);
    CHECK(rep.suites[0].instances == 30);
    CHECK(rep.suites[0].find("rho_iterated_r3") != nullptr);
    CHECK(rep.suites[0].find("rho_iterated_r4") == nullptr);
}

TEST_CASE("homotopy difference probe records the literal-form counterexample")
{
    const auto rep = homotopy_diff_probe(50, 2);
    CHECK(rep.ok());
    const auto* literal = rep.find("literal_min_form");
    REQUIRE(literal != nullptr);
    CHECK(literal->informational);
    const auto* corrected = rep.find("corrected_max_form");
    REQUIRE(corrected != nullptr);
    CHECK(corrected->failures == 0);
    REQUIRE(rep.metrics.count("counterexample_depth") == 1);
    CHECK(rep.metrics.at("counterexample_depth") == 2);
}

TEST_CASE("cone equivalence ratio is reported")
{
    const auto rep = run_campaign(small(Suite::cone_equiv, 25)).suites[0];
    REQUIRE(rep.metrics.count("max_shift_ratio") == 1);
    CHECK(rep.metrics.at("max_shift_ratio") <= 3.0);
}

TEST_CASE("degenerate demo configuration")
{
    DemoConfig cfg;
    cfg.k = 1;
    cfg.fiber_beta_hi = 0;
    cfg.shift_cap = 0;
    cfg.tail_beta_cap = 0;
    cfg.fixed_beta_cap = 0;
    cfg.trials = 10;
    const auto rep = theorem_demo(cfg);
    CHECK(rep.ok());
    for (const auto& t : rep.trials) {
        CHECK(t.max_fiber_beta == 0);
        CHECK(t.rho <= ExtendedReal(rep.a));
    }
}

TEST_CASE("demo constants depend only on the configuration")
{
    DemoConfig cfg;
    cfg.trials = 20;
    const auto [a, b] = demo_constants(cfg);
    auto wider = cfg;
    wider.fiber_beta_hi = 4;
    CHECK(demo_constants(wider) == std::make_pair(a, b));

    auto reseeded = cfg;
    reseeded.seed = 99;
    const auto r1 = theorem_demo(cfg), r2 = theorem_demo(reseeded);
    CHECK(r1.a == a);
    CHECK(r1.b == b);
    CHECK(r2.a == a);
    CHECK(r2.b == b);
    CHECK(r1.ok());
    CHECK(r2.ok());
}

TEST_CASE("demo parallel and serial agree")
{
    DemoConfig cfg;
    cfg.trials = 25;
    CHECK(io::to_json(theorem_demo(cfg)).dump() == io::to_json(theorem_demo_serial(cfg)).dump());
}

TEST_CASE("demo with three fibers has the expected shape")
{
    const auto rep = theorem_demo(DemoConfig{});
    CHECK(rep.attachment_labels.size() == rep.stages + 1);
    CHECK(rep.constants.r == rep.stages);
    CHECK(rep.trials.size() == 100);
    CHECK(rep.ok());
    CHECK_FALSE(rep.caveat.empty());
}
