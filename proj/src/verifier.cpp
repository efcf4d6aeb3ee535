#include "filtcone/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "filtcone/persistence.hpp"
#include "filtcone/random.hpp"

namespace filtcone {

const char* to_string(Suite s) noexcept
{
    switch (s) {
    case Suite::oracle: return "oracle";
    case Suite::cone: return "cone";
    case Suite::quasieq: return "quasieq";
    case Suite::homotopy_diff: return "homotopy_diff";
    case Suite::tensor: return "tensor";
    case Suite::refilter: return "refilter";
    case Suite::reassoc: return "reassoc";
    case Suite::iterated: return "iterated";
    case Suite::cone_equiv: return "cone_equiv";
    case Suite::all: return "all";
    }
    return "?";
}

Suite parse_suite(const std::string& name)
{
    for (auto s : {Suite::oracle, Suite::cone, Suite::quasieq, Suite::homotopy_diff, Suite::tensor, Suite::refilter,
                   Suite::reassoc, Suite::iterated, Suite::cone_equiv, Suite::all})
        if (name == to_string(s)) return s;
    throw std::invalid_argument("unknown suite \"" + name + "\"");
}

std::size_t default_count(Suite s) noexcept
{
    switch (s) {
    case Suite::oracle: return 500;
    case Suite::cone: return 1000;
    case Suite::quasieq: return 300;
    case Suite::homotopy_diff: return 500;
    case Suite::tensor: return 300;
    case Suite::refilter: return 200;
    case Suite::reassoc: return 200;
    case Suite::iterated: return 200;
    case Suite::cone_equiv: return 100;
    case Suite::all: return 0;
    }
    return 0;
}

bool SuiteReport::ok() const
{
    for (const auto& c : checks)
        if (!c.informational && c.failures > 0) return false;
    return std::all_of(fixtures.begin(), fixtures.end(), [](const FixtureResult& f) { return f.passed; });
}

const CheckStats* SuiteReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool CampaignReport::ok() const
{
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.ok(); }) &&
           (!demo || demo->ok());
}

namespace {

const std::vector<double>& grid()
{
    static const std::vector<double> g = [] {
        std::vector<double> v;
        for (int i = 0; i <= 12; ++i) v.push_back(0.5 * i);
        return v;
    }();
    return g;
}

ComplexPtr random_small(Rng& rng, std::size_t max_generators, std::size_t min_generators = 0)
{
    const auto n = min_generators + rng.below(max_generators - min_generators + 1);
    const double density = 0.2 + 0.6 * rng.unit();
    return share(random_complex(n, grid(), density, rng.next()));
}

CheckResult verdict(bool ok) { return {ok ? Outcome::pass : Outcome::fail, 0.0, 0.0}; }

struct InstanceResult {
    std::vector<NamedCheck> checks;
    std::map<std::string, double> metrics;  // merged by max
    std::string error;
};

using InstanceFn = std::function<InstanceResult(std::size_t index, std::uint64_t seed)>;

// Evaluates every instance; the OpenMP loop and the serial loop differ only in scheduling.
std::vector<InstanceResult> evaluate(std::size_t count, std::uint64_t base_seed, const InstanceFn& fn, bool parallel)
{
    std::vector<InstanceResult> results(count);
    auto one = [&](std::size_t i) {
        try {
            results[i] = fn(i, derive_seed(base_seed, i));
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    };
    if (parallel) {
        const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < count; ++i) one(i);
    }
    return results;
}

void merge(SuiteReport& report, const std::vector<InstanceResult>& results, std::uint64_t base_seed,
           const std::set<std::string>& informational)
{
    report.instances += results.size();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const auto seed = derive_seed(base_seed, i);
        if (!r.error.empty()) report.failures.push_back({"exception", i, seed, {}, {}, r.error});
        for (const auto& [name, value] : r.metrics) {
            auto [it, fresh] = report.metrics.emplace(name, value);
            if (!fresh) it->second = std::max(it->second, value);
        }
        for (const auto& nc : r.checks) {
            auto it = std::find_if(report.checks.begin(), report.checks.end(),
                                   [&](const CheckStats& c) { return c.name == nc.name; });
            if (it == report.checks.end()) {
                report.checks.push_back({nc.name, informational.count(nc.name) > 0});
                it = std::prev(report.checks.end());
            }
            switch (nc.result.outcome) {
            case Outcome::pass:
                ++it->passes;
                it->worst_slack = std::min(it->worst_slack, nc.result.slack());
                break;
            case Outcome::vacuous: ++it->vacuous; break;
            case Outcome::unmet_hypothesis: ++it->unmet; break;
            case Outcome::fail:
                ++it->failures;
                if (!it->informational)
                    report.failures.push_back({nc.name, i, seed, nc.result.lhs, nc.result.rhs, {}});
                break;
            }
        }
    }
    if (std::any_of(results.begin(), results.end(), [](const InstanceResult& r) { return !r.error.empty(); })) {
        auto it = std::find_if(report.checks.begin(), report.checks.end(),
                               [](const CheckStats& c) { return c.name == "exception"; });
        if (it == report.checks.end()) {
            report.checks.push_back({"exception"});
            it = std::prev(report.checks.end());
        }
        for (const auto& r : results)
            if (!r.error.empty()) ++it->failures;
    }
}

void fixture(SuiteReport& report, std::string name, const std::function<std::string()>& body)
{
    try {
        auto problem = body();
        report.fixtures.push_back({std::move(name), problem.empty(), std::move(problem)});
    } catch (const std::exception& e) {
        report.fixtures.push_back({std::move(name), false, std::string("exception: ") + e.what()});
    }
}

std::string expect(bool ok, const std::string& what) { return ok ? std::string() : what; }

FilteredMap map_of(ComplexPtr s, ComplexPtr t, double shift, const std::map<std::string, std::vector<std::string>>& m)
{
    return FilteredMap(map_from_ids(std::move(s), std::move(t), shift, m));
}

// -- oracle ------------------------------------------------------------------------

InstanceResult oracle_instance(std::size_t, std::uint64_t seed)
{
    Rng rng(seed);
    const auto c = random_small(rng, 12);
    InstanceResult r;
    r.checks.push_back({"profile_matches_oracle", verdict(profile(*c) == profile_oracle(*c))});

    const auto bc = barcode(*c);
    const auto crit = c->critical_values();
    bool dual = true;
    for (std::size_t i = 0; i < crit.size() && dual; ++i) {
        for (std::size_t j = i; j < crit.size() && dual; ++j)
            dual = persistence_rank(*c, {crit[i], crit[j]}) == bars_alive(bc, {crit[i], crit[j]});
        dual = dual && persistence_rank(*c, {crit[i], ExtendedReal::infinity()}) ==
                           bars_alive(bc, {crit[i], ExtendedReal::infinity()});
    }
    r.checks.push_back({"barcode_rank_duality", verdict(dual)});

    const auto n = c->size();
    const auto rank_d = gf2::rank(c->boundary().columns(), n);
    const auto kernel = gf2::nullspace(c->boundary().columns(), n).size();
    r.checks.push_back({"infinite_bars_count_homology",
                        verdict(bc.infinite_count() == kernel - rank_d && homology_classes(*c).size() == kernel - rank_d)});

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    r.checks.push_back({"generator_order_independence", verdict(barcode(reorder(*c, perm)) == bc)});
    return r;
}

// -- cone --------------------------------------------------------------------------

InstanceResult cone_instance(std::size_t, std::uint64_t seed, const CampaignConfig& cfg)
{
    Rng rng(seed);
    const auto a = random_small(rng, cfg.max_generators);
    const auto b = random_small(rng, cfg.max_generators);
    const double s0 = rng.grid(0.0, 2.0);
    const double s = s0 + (rng.bernoulli(0.3) ? rng.grid(0.0, 1.0) : 0.0);
    const auto f = random_filtered_map(a, b, s0, rng.next());
    const auto c = mapping_cone({f, s});
    InstanceResult r;
    r.checks.push_back({"cone_valid", verdict(c.validation().ok())});
    bool inclusion_preserving = true;
    for (std::size_t i = 0; i < b->size(); ++i)
        inclusion_preserving = inclusion_preserving && c.filtration(i) == b->filtration(i);
    r.checks.push_back({"inclusion_filtration_preserving", verdict(inclusion_preserving)});
    for (auto& nc : cone_bound_checks(profile(*a), profile(*b), profile(c), s, cfg.tolerance))
        r.checks.push_back(std::move(nc));
    return r;
}

void cone_fixtures(SuiteReport& rep, double tol)
{
    fixture(rep, "P(1)->P(0) at s=0: beta 1, beta bound tight", [&] {
        auto a = share(point_complex(1.0, "a"));
        auto b = share(point_complex(0.0, "b"));
        const auto c = mapping_cone({map_of(a, b, 0.0, {{"a", {"b"}}}), 0.0});
        const auto bc = barcode(c);
        const auto checks = cone_bound_checks(profile(*a), profile(*b), profile(c), 0.0, tol);
        const auto& beta = checks[2].result;
        return expect(bc == Barcode{{{0.0, 1.0}}} && profile(c).beta == 1.0 && beta.outcome == Outcome::pass &&
                          beta.lhs == beta.rhs,
                      "expected barcode {[0,1)} with beta(C) = 1 = bound");
    });
    fixture(rep, "P(0)->P(1) at s=1: empty barcode", [&] {
        auto a = share(point_complex(0.0, "a"));
        auto b = share(point_complex(1.0, "b"));
        const auto c = mapping_cone({map_of(a, b, 1.0, {{"a", {"b"}}}), 1.0});
        return expect(barcode(c).bars.empty() && profile(c).beta == 0.0, "expected an empty barcode");
    });
    fixture(rep, "P(0)->I(1,4), f=0: sigma- bound tight", [&] {
        auto a = share(point_complex(0.0, "a"));
        auto b = share(interval_complex(1.0, 4.0));
        const auto c = mapping_cone({FilteredMap(zero_map(a, b)), 0.0});
        const auto checks = cone_bound_checks(profile(*a), profile(*b), profile(c), 0.0, tol);
        const auto& low = checks[0].result;
        return expect(low.outcome == Outcome::pass && low.lhs == low.rhs && low.rhs == ExtendedReal(0.0),
                      "expected sigma-(C) = 0 = lower bound");
    });
    fixture(rep, "zero map cone is the direct sum", [&] {
        auto a = share(interval_complex(0.0, 2.0));
        auto b = share(point_complex(1.0, "b"));
        const auto c = mapping_cone({FilteredMap(zero_map(a, b)), 0.0});
        return expect(barcode(c) == barcode(direct_sum(*a, *b)), "cone of zero map differs from A+B");
    });
}

// -- quasi-equivalence ---------------------------------------------------------------

InstanceResult quasieq_instance(std::size_t, std::uint64_t seed, const CampaignConfig& cfg)
{
    Rng rng(seed);
    const double tol = cfg.tolerance;
    const auto c = random_small(rng, cfg.max_generators);
    const auto w = random_homotopy_equivalence(c, rng.below(4), rng.grid(0.0, 2.0), rng.next());
    const double s = w.shift;
    InstanceResult r;
    r.checks.push_back({"witness_valid", verdict(validate_witness(w).ok())});
    const auto p = profile(*w.source);
    const auto q = profile(*w.target);
    r.checks.push_back({"beta_equivalence", check_abs_diff(p.beta, q.beta, 2 * s, tol)});
    r.checks.push_back({"sigma_plus_equivalence", check_abs_diff(p.sigma_plus, q.sigma_plus, s, tol)});
    r.checks.push_back({"sigma_minus_equivalence", check_abs_diff(p.sigma_minus, q.sigma_minus, s, tol)});
    r.checks.push_back({"rho_equivalence", check_abs_diff(p.rho, q.rho, 2 * s, tol)});
    r.checks.push_back({"quasi_iso_sigma_minus",
                        check_le([&] { return q.sigma_minus - s; }, [&] { return p.sigma_minus; }, tol)});
    r.checks.push_back({"quasi_iso_sigma_plus",
                        check_le([&] { return q.sigma_plus - s; }, [&] { return p.sigma_plus; }, tol)});

    const auto gf = compose(w.backward, w.forward);
    FilteredLinearMap defect{c, c, 2 * s, gf.matrix + gf2::Matrix::identity(c->size())};
    const double depth = map_boundary_depth(defect, 2 * s);
    r.checks.push_back({"beta_homotopy_defect", check_le(p.beta, std::max(q.beta + 2 * s, depth), tol)});

    // beta_{s'}(f) = max{0, beta_s(f) - s' + s} on an independent map
    const auto a = random_small(rng, cfg.max_generators);
    const auto b = random_small(rng, cfg.max_generators);
    const double sf = rng.grid(0.0, 2.0);
    const auto f = random_filtered_map(a, b, sf, rng.next());
    const double sp = sf + rng.grid(0.0, 3.0);
    const double bs = map_boundary_depth(f, sf);
    r.checks.push_back({"map_depth_shift_rule", check_eq(map_boundary_depth(f, sp), std::max(0.0, bs - sp + sf))});
    return r;
}

void quasieq_fixtures(SuiteReport& rep)
{
    fixture(rep, "P(0)->I(0,2): beta_0 = 2, beta_1 = 1, beta_3 = 0", [] {
        auto a = share(point_complex(0.0, "g"));
        auto b = share(interval_complex(0.0, 2.0));
        const auto f = map_of(a, b, 0.0, {{"g", {"x"}}});
        const double b0 = map_boundary_depth(f, 0), b1 = map_boundary_depth(f, 1), b3 = map_boundary_depth(f, 3);
        return expect(b0 == 2 && b1 == 1 && b3 == 0, "got " + format_decimal(b0) + ", " + format_decimal(b1) + ", " +
                                                           format_decimal(b3));
    });
    fixture(rep, "identity has map depth beta(C)", [] {
        auto c = share(interval_complex(1.0, 4.0));
        return expect(map_boundary_depth(identity_map(c), 0) == 3.0, "beta_0(id) != 3");
    });
    fixture(rep, "padded P(0) with budget 2 keeps beta within 2s", [] {
        auto c = share(point_complex(0.0, "g"));
        const auto w = random_homotopy_equivalence(c, 1, 2.0, 5);
        const double diff = std::abs(profile(*w.source).beta - profile(*w.target).beta);
        return expect(validate_witness(w).ok() && diff <= 2 * w.shift, "witness invalid or beta moved too far");
    });
}

// -- homotopy difference ---------------------------------------------------------------

InstanceResult homotopy_diff_instance(std::size_t, std::uint64_t seed, const CampaignConfig& cfg)
{
    Rng rng(seed);
    const double tol = cfg.tolerance;
    const auto c = random_small(rng, cfg.max_generators);
    const auto cp = random_small(rng, cfg.max_generators);
    const double sf = rng.grid(0.0, 1.5);
    const auto f = random_filtered_map(c, cp, sf, rng.next());
    const double s_prime = sf + rng.grid(0.0, 2.0);
    const auto h = random_linear_map(c, cp, s_prime, 0.3, rng);
    const auto diff = commutator(h);  // f - f'
    const double s = std::max(sf, minimal_shift(diff));
    const double depth = map_boundary_depth(diff, s);
    InstanceResult r;
    r.checks.push_back({"corrected_max_form", check_le(depth, std::max(0.0, s_prime - s), tol)});
    r.checks.push_back({"literal_min_form", check_le(depth, std::min(0.0, s_prime - s), tol)});
    return r;
}

void homotopy_diff_fixtures(SuiteReport& rep, double tol)
{
    fixture(rep, "counterexample P(0)->I(0,2), h(g)=y, s=0, s'=2", [&] {
        auto c = share(point_complex(0.0, "g"));
        auto cp = share(interval_complex(0.0, 2.0));
        const auto f = map_of(c, cp, 0.0, {{"g", {"x"}}});
        const auto h = map_from_ids(c, cp, 2.0, {{"g", {"y"}}});
        const auto diff = commutator(h);
        if (diff.matrix != f.matrix) return std::string("dh + hd does not equal f - f'");
        const double depth = map_boundary_depth(diff, 0.0);
        const auto literal = check_le(depth, std::min(0.0, 2.0), tol);
        const auto corrected = check_le(depth, std::max(0.0, 2.0), tol);
        rep.metrics["counterexample_depth"] = depth;
        return expect(depth == 2.0 && literal.failed() && corrected.outcome == Outcome::pass && corrected.slack() == 0,
                      "expected depth 2 breaking the literal form and meeting the corrected form");
    });
    fixture(rep, "f = f', h = 0", [&] {
        auto c = share(interval_complex(0.0, 1.0));
        const auto zero = zero_map(c, c, 0.0);
        return expect(map_boundary_depth(commutator(zero), 0.0) == 0.0, "nonzero depth for the zero difference");
    });
}

// -- tensor -------------------------------------------------------------------------

InstanceResult tensor_instance(std::size_t, std::uint64_t seed, const CampaignConfig& cfg)
{
    Rng rng(seed);
    const auto cap = std::min<std::size_t>(cfg.max_generators, 6);
    const auto a = random_small(rng, cap);
    const auto b = random_small(rng, cap);
    const auto t = tensor_product(*a, *b);
    const auto pa = profile(*a), pb = profile(*b), pt = profile(t);
    InstanceResult r;
    r.checks.push_back({"tensor_valid", verdict(t.validation().ok())});
    r.checks.push_back({"sigma_plus_additive", check_eq(pt.sigma_plus, pa.sigma_plus + pb.sigma_plus)});
    r.checks.push_back({"sigma_minus_additive", check_eq(pt.sigma_minus, pa.sigma_minus + pb.sigma_minus)});
    r.checks.push_back({"beta_tensor", check_le(pt.beta, std::max(pa.beta, pb.beta), cfg.tolerance)});
    return r;
}

void tensor_fixtures(SuiteReport& rep)
{
    fixture(rep, "I(0,2)*I(0,3): {[0,2), [3,5)}, beta slack 1", [&] {
        const auto a = interval_complex(0.0, 2.0), b = interval_complex(0.0, 3.0);
        const auto t = tensor_product(a, b);
        const double slack = std::max(profile(a).beta, profile(b).beta) - profile(t).beta;
        rep.metrics["fixture_beta_slack"] = slack;
        return expect(barcode(t) == Barcode{{{0.0, 2.0}, {3.0, 5.0}}} && slack == 1.0,
                      "unexpected barcode or slack");
    });
    fixture(rep, "P(2)*P(3) = P(5)", [] {
        return expect(barcode(tensor_product(point_complex(2.0), point_complex(3.0))) == barcode(point_complex(5.0)),
                      "barcode differs from P(5)");
    });
    fixture(rep, "P(1)*I(0,2) = I(1,3)", [] {
        const auto t = tensor_product(point_complex(1.0), interval_complex(0.0, 2.0));
        return expect(barcode(t) == Barcode{{{1.0, 3.0}}} && profile(t).beta == 2.0, "expected {[1,3)}");
    });
}

// -- refilter / reassoc -------------------------------------------------------------------

InstanceResult refilter_instance(std::size_t, std::uint64_t seed, const CampaignConfig& cfg)
{
    Rng rng(seed);
    const auto a = random_small(rng, cfg.max_generators);
    const auto b = random_small(rng, cfg.max_generators);
    const double s0 = rng.grid(0.0, 2.0);
    const auto f = random_filtered_map(a, b, s0, rng.next());
    const double s = s0 + rng.grid(0.0, 1.0);
    const double sp = s + rng.grid(0.0, 2.0);
    InstanceResult r;
    for (auto& nc : refilter_cone(f, s, sp, cfg.tolerance).checks) r.checks.push_back(std::move(nc));
    return r;
}

void refilter_fixtures(SuiteReport& rep, double tol)
{
    fixture(rep, "P(1)->P(0): beta 1 at s=0, 3 at s'=2", [&] {
        auto a = share(point_complex(1.0, "a"));
        auto b = share(point_complex(0.0, "b"));
        const auto r = refilter_cone(map_of(a, b, 0.0, {{"a", {"b"}}}), 0.0, 2.0, tol);
        return expect(r.before.beta == 1.0 && r.after.beta == 3.0 && r.checks[3].result.outcome == Outcome::pass,
                      "unexpected boundary depths");
    });
    fixture(rep, "f = 0 on P(0): sigma+ 0 at s=0, 1 at s'=1", [&] {
        auto a = share(point_complex(0.0, "a"));
        auto b = share(point_complex(0.0, "b"));
        const auto r = refilter_cone(FilteredMap(zero_map(a, b)), 0.0, 1.0, tol);
        return expect(r.before.sigma_plus == ExtendedReal(0.0) && r.after.sigma_plus == ExtendedReal(1.0),
                      "unexpected sigma+");
    });
    fixture(rep, "s' = s leaves the cone unchanged", [&] {
        auto a = share(interval_complex(0.0, 1.0));
        auto b = share(point_complex(0.5, "b"));
        const auto r = refilter_cone(FilteredMap(zero_map(a, b)), 0.5, 0.5, tol);
        return expect(r.cone.same_as(r.refiltered) && r.before == r.after, "cones differ");
    });
}

InstanceResult reassoc_instance(std::size_t, std::uint64_t seed, const CampaignConfig& cfg)
{
    Rng rng(seed);
    const auto cap = std::min<std::size_t>(cfg.max_generators, 6);
    const auto e = random_small(rng, cap);
    const auto fc = random_small(rng, cap);
    const auto gc = random_small(rng, cap);
    const double s_f = rng.grid(0.0, 2.0);
    const ConeInput inner{random_filtered_map(fc, gc, s_f, rng.next()), s_f};
    const auto inner_cone = share(mapping_cone(inner, kInnerAttachmentPrefix));
    const double s_g = rng.grid(0.0, 2.0);
    const auto g = random_filtered_map(e, inner_cone, s_g, rng.next());
    InstanceResult r;
    for (auto& nc : reassociate(*e, inner, g, s_g, cfg.tolerance).checks) r.checks.push_back(std::move(nc));
    return r;
}

void reassoc_fixtures(SuiteReport& rep, double tol)
{
    auto p0 = [](const char* id) { return share(point_complex(0.0, id)); };
    fixture(rep, "E=F=G=P(0), f=0, s_f=1, g into F: s_g'=0", [&] {
        auto e = p0("e"), fc = p0("f"), gc = p0("g");
        const ConeInput inner{FilteredMap(zero_map(fc, gc)), 1.0};
        auto ic = share(mapping_cone(inner, kInnerAttachmentPrefix));
        const auto g = map_of(e, ic, 1.0, {{"e", {"F.f"}}});
        const auto r = reassociate(*e, inner, g, 1.0, tol);
        return expect(r.g_prime_shift == 0.0 && r.same_chain_complex && r.checks[2].result.outcome == Outcome::pass,
                      "unexpected reassociation");
    });
    fixture(rep, "s_g = s_f gives identical filtrations", [&] {
        auto e = share(interval_complex(0.0, 1.0)), fc = p0("f"), gc = p0("g");
        const ConeInput inner{FilteredMap(zero_map(fc, gc)), 0.5};
        auto ic = share(mapping_cone(inner, kInnerAttachmentPrefix));
        const auto r = reassociate(*e, inner, FilteredMap(zero_map(e, ic)), 0.5, tol);
        return expect(r.nested_left.same_as(r.nested_right), "filtrations differ");
    });
    fixture(rep, "E = Z gives the inner cone on both sides", [&] {
        auto e = share(empty_complex());
        auto fc = p0("f");
        auto gc = share(interval_complex(0.0, 2.0));
        const ConeInput inner{map_of(fc, gc, 0.0, {{"f", {"x"}}}), 0.0};
        auto ic = share(mapping_cone(inner, kInnerAttachmentPrefix));
        const auto r = reassociate(*e, inner, FilteredMap(zero_map(e, ic)), 0.0, tol);
        return expect(r.nested_left.same_as(*ic) && r.nested_right.same_as(*ic), "not the inner cone");
    });
}

// -- iterated -----------------------------------------------------------------------

InstanceResult iterated_instance(std::size_t r_stages, std::uint64_t seed, const CampaignConfig& cfg)
{
    const auto cap = std::min<std::size_t>(cfg.max_generators, 5);
    const auto spec = random_iterated_spec(r_stages, cap, seed);
    const auto cones = iterated_cone(spec);
    std::vector<InvariantProfile> profiles;
    std::vector<double> betas;
    for (const auto& a : spec.attachments) {
        profiles.push_back(profile(a));
        betas.push_back(profiles.back().beta);
    }
    const auto tilde = aggregate(profiles);
    const auto pc = profile(cones.back());
    const auto suffix = "_r" + std::to_string(r_stages);
    InstanceResult r;
    r.checks.push_back({"cone_valid" + suffix, verdict(cones.back().validation().ok())});
    if (!tilde.rho_tilde.is_finite()) {
        r.checks.push_back({"rho_iterated" + suffix, unmet()});
        r.checks.push_back({"rho_unrolled" + suffix, unmet()});
        return r;
    }
    const auto bound = iterated_bound(r_stages, tilde, betas, spec.shifts);
    r.checks.push_back({"rho_iterated" + suffix, check_le(pc.rho, bound.bound, cfg.tolerance)});
    r.checks.push_back({"rho_unrolled" + suffix, check_le(pc.rho, bound.unrolled, cfg.tolerance)});
    return r;
}

void iterated_fixtures(SuiteReport& rep, std::size_t max_r)
{
    fixture(rep, "constants (1,1,1) at r=1 and monotone in r", [&] {
        auto prev = bound_constants(1);
        if (prev.a != 1 || prev.b != 1 || prev.e != 1) return std::string("r=1 constants are not (1,1,1)");
        for (std::size_t r = 2; r <= std::max<std::size_t>(max_r, 8); ++r) {
            const auto c = bound_constants(r);
            if (c.a < prev.a || c.b < prev.b || c.e < prev.e)
                return "constants decrease at r=" + std::to_string(r);
            rep.metrics["a_r" + std::to_string(r)] = c.a;
            rep.metrics["b_r" + std::to_string(r)] = c.b;
            rep.metrics["e_r" + std::to_string(r)] = c.e;
            prev = c;
        }
        return std::string();
    });
    fixture(rep, "r=2 unroll matches nested single-cone bounds", [] {
        // Two nested applications written out by hand with sigma~- = 0:
        // sigma+(C1) <= t + b0 + s1, -sigma-(C1) <= b1, beta(C1) <= b1 + b0 + t + s1,
        // rho(C2) <= sigma+(C1) + beta(C1) + s2 + (-sigma-(C1)) + b2.
        const double t = 1.5, b0 = 0.5, b1 = 1.0, b2 = 2.0, s1 = 0.5, s2 = 1.0;
        const double hand = (t + b0 + s1) + (b1 + b0 + t + s1) + s2 + b1 + b2;
        const auto got = iterated_bound(2, {t, 0.0, t}, {b0, b1, b2}, {s1, s2});
        return expect(got.unrolled == ExtendedReal(hand), "unroll differs from the hand computation");
    });
    fixture(rep, "A2=A1=A0=P(0), zero maps, shifts (1,1): sigma+ 1, sigma- 0", [] {
        IteratedConeSpec spec;
        spec.attachments = {point_complex(0.0), point_complex(0.0), point_complex(0.0)};
        spec.maps = {gf2::Matrix(1, 1), gf2::Matrix(2, 1)};
        spec.shifts = {1.0, 1.0};
        const auto p = profile(iterated_cone(spec).back());
        return expect(p.sigma_plus == ExtendedReal(1.0) && p.sigma_minus == ExtendedReal(0.0), "unexpected profile");
    });
}

// -- cone equivalence -----------------------------------------------------------------

constexpr double kConeEquivalenceConstant = 3.0;

InstanceResult cone_equiv_instance(std::size_t, std::uint64_t seed, const CampaignConfig& cfg)
{
    const auto in = random_cone_square(std::min<std::size_t>(cfg.max_generators, 5), seed);
    const auto out = cone_equivalence(in);
    InstanceResult r;
    r.checks.push_back({"identities", verdict(out.failed_identities.empty())});
    r.checks.push_back({"shift_ratio", check_le(out.ratio, kConeEquivalenceConstant, cfg.tolerance)});
    if (std::isfinite(out.ratio)) r.metrics["max_shift_ratio"] = out.ratio;
    return r;
}

void cone_equiv_fixtures(SuiteReport& rep)
{
    fixture(rep, "identity square gives identity maps with zero shifts", [] {
        auto a = share(point_complex(0.5, "a"));
        auto b = share(interval_complex(1.0, 2.0));
        auto f = map_of(a, b, 0.5, {{"a", {"x"}}});
        ConeEquivalenceInput in;
        in.f1 = in.f2 = f;
        in.psi1 = in.psi2 = identity_map(a);
        in.phi1 = in.phi2 = identity_map(b);
        in.h1 = zero_map(a, b, 0.5);
        in.k1 = in.k2 = zero_map(a, a);
        in.r1 = in.r2 = zero_map(b, b);
        in.f2.shift = 0.5;
        const auto out = cone_equivalence(in);
        const auto id = gf2::Matrix::identity(out.cone1.size());
        return expect(out.failed_identities.empty() && out.forward.matrix == id && out.backward.matrix == id &&
                          out.homotopy1.matrix.is_zero() && out.homotopy2.matrix.is_zero() &&
                          out.max_measured_shift == 0.0,
                      "expected identity cone maps");
    });
}

// -- drivers --------------------------------------------------------------------------

SuiteReport run_suite(Suite suite, std::size_t count, const CampaignConfig& cfg, bool parallel)
{
    SuiteReport rep;
    rep.suite = suite;
    const auto seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(suite) + 1000);
    auto run = [&](auto&& fn, std::set<std::string> informational = {}) {
        merge(rep, evaluate(count, seed, fn, parallel), seed, informational);
    };
    switch (suite) {
    case Suite::oracle: run(oracle_instance); break;
    case Suite::cone:
        cone_fixtures(rep, cfg.tolerance);
        run([&](std::size_t i, std::uint64_t s) { return cone_instance(i, s, cfg); });
        break;
    case Suite::quasieq:
        quasieq_fixtures(rep);
        run([&](std::size_t i, std::uint64_t s) { return quasieq_instance(i, s, cfg); });
        break;
    case Suite::homotopy_diff:
        homotopy_diff_fixtures(rep, cfg.tolerance);
        run([&](std::size_t i, std::uint64_t s) { return homotopy_diff_instance(i, s, cfg); }, {"literal_min_form"});
        if (const auto* lit = rep.find("literal_min_form"))
            rep.metrics["literal_min_form_violations"] = static_cast<double>(lit->failures);
        break;
    case Suite::tensor:
        tensor_fixtures(rep);
        run([&](std::size_t i, std::uint64_t s) { return tensor_instance(i, s, cfg); });
        break;
    case Suite::refilter:
        refilter_fixtures(rep, cfg.tolerance);
        run([&](std::size_t i, std::uint64_t s) { return refilter_instance(i, s, cfg); });
        break;
    case Suite::reassoc:
        reassoc_fixtures(rep, cfg.tolerance);
        run([&](std::size_t i, std::uint64_t s) { return reassoc_instance(i, s, cfg); });
        break;
    case Suite::iterated:
        iterated_fixtures(rep, cfg.max_r);
        for (std::size_t r = 1; r <= cfg.max_r; ++r) {
            const auto stage_seed = derive_seed(seed, r);
            merge(rep,
                  evaluate(count, stage_seed,
                           [&](std::size_t, std::uint64_t s) { return iterated_instance(r, s, cfg); }, parallel),
                  stage_seed, {});
        }
        break;
    case Suite::cone_equiv:
        cone_equiv_fixtures(rep);
        run([&](std::size_t i, std::uint64_t s) { return cone_equiv_instance(i, s, cfg); });
        break;
    case Suite::all: throw std::logic_error("run_suite(all)");
    }
    return rep;
}

CampaignReport campaign(const CampaignConfig& cfg, bool parallel)
{
    if (cfg.count && *cfg.count == 0) throw std::invalid_argument("campaign count must be at least 1");
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("campaign tolerance must be positive");
    if (cfg.max_generators == 0 || cfg.max_r == 0) throw std::invalid_argument("campaign size caps must be positive");
    CampaignReport out;
    out.config = cfg;
    std::vector<Suite> suites;
    if (cfg.suite == Suite::all)
        suites = {Suite::oracle, Suite::cone, Suite::quasieq, Suite::homotopy_diff, Suite::tensor,
                  Suite::refilter, Suite::reassoc, Suite::iterated, Suite::cone_equiv};
    else
        suites = {cfg.suite};
    for (auto s : suites) out.suites.push_back(run_suite(s, cfg.count.value_or(default_count(s)), cfg, parallel));
    if (cfg.suite == Suite::all) {
        DemoConfig demo;
        out.demo = parallel ? theorem_demo(demo) : theorem_demo_serial(demo);
    }
    return out;
}

// -- theorem demo -----------------------------------------------------------------------

// Valid complex with one infinite bar at `essential` and the given finite bars,
// under a random filtered change of basis.
FilteredComplex from_bars(const std::string& name, std::optional<double> essential,
                          const std::vector<std::pair<double, double>>& bars, Rng& rng)
{
    std::vector<Generator> gens;
    if (essential) gens.push_back({"e", *essential});
    for (std::size_t i = 0; i < bars.size(); ++i) {
        gens.push_back({"x" + std::to_string(i), bars[i].first});
        gens.push_back({"y" + std::to_string(i), bars[i].second});
    }
    const auto n = gens.size();
    gf2::Matrix d(n, n);
    const std::size_t off = essential ? 1 : 0;
    for (std::size_t i = 0; i < bars.size(); ++i) d.set(off + 2 * i, off + 2 * i + 1);
    const FilteredComplex plain(name, gens, d);
    const auto basis = random_filtered_automorphism(plain, 0.3, rng);
    return FilteredComplex(name, std::move(gens), basis.forward * d * basis.inverse);
}

std::vector<std::pair<double, double>> random_bars(Rng& rng, std::size_t max_count, double lo, double hi)
{
    std::vector<std::pair<double, double>> out;
    const auto count = rng.below(max_count + 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double birth = rng.grid(0.0, 3.0);
        out.emplace_back(birth, birth + rng.grid(lo, hi));
    }
    return out;
}

// Factor chains (q, j_1, ..., j_m) with q > j_1 > ... > j_m >= 1, listed for
// attachments A_1 .. A_r: q descending, and within q the larger subsets first.
std::vector<std::vector<std::size_t>> demo_chains(std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t q = k; q >= 1; --q) {
        const std::size_t subsets = std::size_t{1} << (q - 1);
        for (std::size_t mask = subsets; mask-- > 0;) {
            std::vector<std::size_t> chain{q};
            for (std::size_t j = q - 1; j >= 1; --j)
                if (mask & (std::size_t{1} << (j - 1))) chain.push_back(j);
            out.push_back(std::move(chain));
        }
    }
    return out;
}

struct DemoFixtures {
    std::vector<std::vector<std::size_t>> chains;
    std::map<std::pair<std::size_t, std::size_t>, FilteredComplex> x;  // X_{ij}, i > j
    std::vector<FilteredComplex> y;                                    // Y_1 .. Y_k at index j-1
    std::vector<double> shifts;
    std::vector<std::string> labels;
    double rho_tilde = 0.0;
    double fixed_beta_sum = 0.0;  // sum over attachments of the largest fixed-factor depth
};

DemoFixtures demo_fixtures(const DemoConfig& cfg)
{
    if (cfg.k == 0) throw std::invalid_argument("demo needs k >= 1");
    if (cfg.k > 6) throw std::invalid_argument("demo supports k <= 6");
    if (cfg.shift_cap < 0 || cfg.tail_beta_cap < 0 || cfg.fixed_beta_cap < 0 || cfg.fiber_beta_lo < 0 ||
        cfg.fiber_beta_hi < cfg.fiber_beta_lo)
        throw std::invalid_argument("demo caps must be non-negative with lo <= hi");
    Rng rng(cfg.fixture_seed);
    DemoFixtures fx;
    fx.chains = demo_chains(cfg.k);
    for (std::size_t j = 1; j <= cfg.k; ++j)
        fx.y.push_back(from_bars("Y" + std::to_string(j), rng.grid(0.0, 2.0), random_bars(rng, 1, 0.0, cfg.fixed_beta_cap),
                                 rng));
    for (std::size_t i = 2; i <= cfg.k; ++i)
        for (std::size_t j = 1; j < i; ++j)
            fx.x.emplace(std::pair{i, j},
                         from_bars("X" + std::to_string(i) + std::to_string(j), rng.grid(0.0, 2.0),
                                   random_bars(rng, 1, 0.0, cfg.fixed_beta_cap), rng));
    for (std::size_t i = 0; i < fx.chains.size(); ++i) fx.shifts.push_back(rng.grid(0.0, cfg.shift_cap));

    // Fibers are born at 0, so each attachment's sigma+- is the sum over its fixed factors.
    fx.labels.push_back("tail");
    double sp = -std::numeric_limits<double>::infinity();
    double sm = std::numeric_limits<double>::infinity();
    for (const auto& chain : fx.chains) {
        std::string label = "F" + std::to_string(chain.front());
        double sigma = 0.0;
        double fixed_beta = 0.0;
        for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
            const auto& xf = fx.x.at({chain[t], chain[t + 1]});
            label += "*" + xf.name();
            const auto p = profile(xf);
            sigma += p.sigma_plus.value();
            fixed_beta = std::max(fixed_beta, p.beta);
        }
        const auto& yf = fx.y[chain.back() - 1];
        label += "*" + yf.name();
        const auto p = profile(yf);
        sigma += p.sigma_plus.value();
        fixed_beta = std::max(fixed_beta, p.beta);
        sp = std::max(sp, sigma);
        sm = std::min(sm, sigma);
        fx.fixed_beta_sum += fixed_beta;
        fx.labels.push_back(label);
    }
    fx.rho_tilde = sp - sm;
    return fx;
}

std::pair<double, double> constants_for(const DemoFixtures& fx, const DemoConfig& cfg, BoundConstants& constants)
{
    const auto r = fx.chains.size();
    constants = bound_constants(r);
    double shift_sum = 0.0;
    for (double s : fx.shifts) shift_sum += s;
    const double a = constants.a * fx.rho_tilde + constants.b * (fx.fixed_beta_sum + cfg.tail_beta_cap) +
                     constants.e * shift_sum;
    const double b = constants.b * static_cast<double>(r);
    return {a, b};
}

DemoTrial demo_trial(const DemoFixtures& fx, const DemoConfig& cfg, double a, double b, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<FilteredComplex> fibers;
    double max_beta = 0.0;
    for (std::size_t q = 1; q <= cfg.k; ++q) {
        fibers.push_back(
            from_bars("F" + std::to_string(q), 0.0, random_bars(rng, 2, cfg.fiber_beta_lo, cfg.fiber_beta_hi), rng));
        max_beta = std::max(max_beta, profile(fibers.back()).beta);
    }
    IteratedConeSpec spec;
    std::vector<std::pair<double, double>> tail_bars;
    for (std::size_t i = 0, n = 1 + rng.below(3); i < n; ++i) {
        const double birth = rng.grid(0.0, 3.0);
        tail_bars.emplace_back(birth, birth + rng.grid(0.0, cfg.tail_beta_cap));
    }
    spec.attachments.push_back(from_bars("tail", std::nullopt, tail_bars, rng));
    for (const auto& chain : fx.chains) {
        auto factor = fibers[chain.front() - 1];
        for (std::size_t t = 0; t + 1 < chain.size(); ++t) factor = tensor_product(factor, fx.x.at({chain[t], chain[t + 1]}));
        spec.attachments.push_back(tensor_product(factor, fx.y[chain.back() - 1]));
    }
    auto partial = share(spec.attachments.front());
    for (std::size_t i = 1; i < spec.attachments.size(); ++i) {
        const double s = fx.shifts[i - 1];
        const auto phi = random_filtered_map(share(spec.attachments[i]), partial, s, rng.next());
        spec.maps.push_back(phi.matrix);
        spec.shifts.push_back(s);
        partial = share(mapping_cone({phi, s}, "A" + std::to_string(i) + "."));
    }
    DemoTrial t;
    t.seed = seed;
    t.rho = profile(iterated_cone(spec).back()).rho;
    t.max_fiber_beta = max_beta;
    t.bound = a + b * max_beta;
    t.passed = t.rho <= t.bound;
    return t;
}

DemoReport demo(const DemoConfig& cfg, bool parallel)
{
    const auto fx = demo_fixtures(cfg);
    DemoReport rep;
    rep.config = cfg;
    rep.stages = fx.chains.size();
    rep.attachment_labels = fx.labels;
    rep.rho_tilde = fx.rho_tilde;
    std::tie(rep.a, rep.b) = constants_for(fx, cfg, rep.constants);
    rep.caveat =
        "Synthetic skeleton: the cone shape and the bound logic are mirrored on random complexes; "
        "no Floer complex is modeled.";
    rep.trials.resize(cfg.trials);
    auto one = [&](std::size_t i) { rep.trials[i] = demo_trial(fx, cfg, rep.a, rep.b, derive_seed(cfg.seed, i)); };
    if (parallel) {
        const auto n = static_cast<std::ptrdiff_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < cfg.trials; ++i) one(i);
    }
    rep.passes = static_cast<std::size_t>(
        std::count_if(rep.trials.begin(), rep.trials.end(), [](const DemoTrial& t) { return t.passed; }));
    return rep;
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& config) { return campaign(config, true); }
CampaignReport run_campaign_serial(const CampaignConfig& config) { return campaign(config, false); }

SuiteReport homotopy_diff_probe(std::size_t count, std::uint64_t seed, double tolerance)
{
    CampaignConfig cfg;
    cfg.suite = Suite::homotopy_diff;
    cfg.count = count;
    cfg.seed = seed;
    cfg.tolerance = tolerance;
    return run_campaign(cfg).suites.front();
}

DemoReport theorem_demo(const DemoConfig& config) { return demo(config, true); }
DemoReport theorem_demo_serial(const DemoConfig& config) { return demo(config, false); }

std::pair<double, double> demo_constants(const DemoConfig& config)
{
    BoundConstants c;
    return constants_for(demo_fixtures(config), config, c);
}

}  // namespace filtcone
