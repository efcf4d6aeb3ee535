#include "filtcone/invariants.hpp"

#include <algorithm>
#include <stdexcept>

#include "filtcone/persistence.hpp"

namespace filtcone {

std::vector<double> probe_levels(std::vector<double> critical)
{
    std::sort(critical.begin(), critical.end());
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
    if (critical.empty()) return {0.0};
    std::vector<double> out{critical.front() - 1.0};
    for (std::size_t i = 0; i < critical.size(); ++i) {
        out.push_back(critical[i]);
        if (i + 1 < critical.size()) out.push_back(0.5 * (critical[i] + critical[i + 1]));
    }
    out.push_back(critical.back() + 1.0);
    return out;
}

namespace {

std::vector<gf2::BitVector> boundary_span(const FilteredComplex& c, ExtendedReal level)
{
    std::vector<gf2::BitVector> out;
    for (std::size_t j = 0; j < c.size(); ++j)
        if (ExtendedReal(c.filtration(j)) <= level && c.boundary().column(j).any()) out.push_back(c.boundary().column(j));
    return out;
}

std::vector<gf2::BitVector> cycle_span(const FilteredComplex& c, double level)
{
    std::vector<std::size_t> cols;
    std::vector<gf2::BitVector> images;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c.filtration(j) <= level) {
            cols.push_back(j);
            images.push_back(c.boundary().column(j));
        }
    }
    std::vector<gf2::BitVector> out;
    for (const auto& combo : gf2::nullspace(images, c.size())) {
        gf2::BitVector z(c.size());
        combo.for_each_set([&](std::size_t k) { z.set(cols[k]); });
        out.push_back(std::move(z));
    }
    return out;
}

std::size_t span_dimension(const std::vector<gf2::BitVector>& a, const std::vector<gf2::BitVector>& b, std::size_t n)
{
    std::vector<gf2::BitVector> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return gf2::rank(all, n);
}

}  // namespace

ExtendedReal spectral_invariant(const FilteredComplex& c, const gf2::BitVector& cycle)
{
    require_valid(c);
    if (cycle.size() != c.size()) throw InvalidInput("cycle has the wrong length for complex \"" + c.name() + "\"");
    if (c.boundary().apply(cycle).any()) throw InvalidInput("spectral_invariant needs a cycle");
    const auto n = c.size();
    const auto b_all = boundary_span(c, ExtendedReal::infinity());
    gf2::EchelonBasis boundaries(n);
    for (const auto& v : b_all) boundaries.insert(v);
    if (boundaries.contains(cycle)) return ExtendedReal::neg_infinity();
    for (double alpha : c.critical_values()) {
        // [cycle] is in the image iff cycle ∈ Z_alpha + B
        auto span = cycle_span(c, alpha);
        span.insert(span.end(), b_all.begin(), b_all.end());
        gf2::EchelonBasis basis(n);
        for (const auto& v : span) basis.insert(v);
        if (basis.contains(cycle)) return alpha;
    }
    throw std::logic_error("spectral_invariant: class never appears");
}

InvariantProfile profile(const FilteredComplex& c)
{
    const auto bc = barcode(c);
    InvariantProfile p;
    for (const auto& bar : bc.bars) {
        if (bar.infinite()) {
            p.sigma_plus = max(p.sigma_plus, bar.birth);
            p.sigma_minus = min(p.sigma_minus, bar.birth);
        } else {
            p.beta = std::max(p.beta, bar.death.finite() - bar.birth);
        }
    }
    if (!p.acyclic()) p.rho = p.sigma_plus - p.sigma_minus;
    return p;
}

InvariantProfile profile_oracle(const FilteredComplex& c)
{
    require_valid(c);
    const auto critical = c.critical_values();
    const auto probes = probe_levels(critical);
    const auto inf = ExtendedReal::infinity();
    const std::size_t homology = persistence_rank(c, {probes.back(), inf});

    std::vector<std::size_t> into_h(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) into_h[i] = persistence_rank(c, {probes[i], inf});

    InvariantProfile p;
    // sigma+: inf of r with i^t onto H for all t >= r
    std::size_t k = probes.size();
    while (k > 0 && into_h[k - 1] == homology) --k;
    p.sigma_plus = k == 0 ? ExtendedReal::neg_infinity() : ExtendedReal(probes[k]);
    // sigma-: sup of s with i^t = 0 for all t <= s
    const auto first = std::find_if(into_h.begin(), into_h.end(), [](std::size_t r) { return r > 0; });
    p.sigma_minus = first == into_h.end() ? inf : ExtendedReal(probes[static_cast<std::size_t>(first - into_h.begin())]);
    if (homology > 0) p.rho = p.sigma_plus - p.sigma_minus;

    // beta: least b with ker(i^alpha) = ker(i^{alpha+b, alpha}) at every alpha
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double alpha = probes[i];
        double need = 0.0;
        if (persistence_rank(c, {alpha, alpha}) != into_h[i]) {
            need = -1.0;
            for (double v : critical) {
                if (v <= alpha) continue;
                if (persistence_rank(c, {alpha, v}) == into_h[i]) {
                    need = v - alpha;
                    break;
                }
            }
            if (need < 0) throw std::logic_error("profile_oracle: kernel never stabilizes");
        }
        p.beta = std::max(p.beta, need);
    }
    return p;
}

double map_boundary_depth(const FilteredLinearMap& f, double s)
{
    const auto& a = *f.source;
    const auto& b = *f.target;
    require_valid(a);
    require_valid(b);
    const double s0 = minimal_shift(f);
    if (s < s0) {
        throw InvalidInput("map is not " + format_decimal(s) + "-filtered (minimal shift " + format_decimal(s0) + ")");
    }
    const auto n = b.size();
    std::vector<double> levels = a.critical_values();
    for (double v : b.critical_values()) levels.push_back(v - s);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    const auto target_levels = b.critical_values();
    const auto b_inf = boundary_span(b, ExtendedReal::infinity());

    double depth = 0.0;
    for (double alpha : levels) {
        const double gamma = alpha + s;
        // W = f(Z_alpha) + B_gamma; the classes it carries that die are W ∩ B_inf.
        std::vector<gf2::BitVector> w;
        for (const auto& z : cycle_span(a, alpha)) w.push_back(f.matrix.apply(z));
        const auto b_gamma = boundary_span(b, gamma);
        w.insert(w.end(), b_gamma.begin(), b_gamma.end());
        const auto dim_w = gf2::rank(w, n);
        const auto meet_inf = dim_w + gf2::rank(b_inf, n) - span_dimension(w, b_inf, n);
        auto meets_at = [&](double level) {
            const auto bl = boundary_span(b, level);
            return dim_w + gf2::rank(bl, n) - span_dimension(w, bl, n);
        };
        if (meets_at(gamma) == meet_inf) continue;
        double need = -1.0;
        for (double v : target_levels) {
            if (v <= gamma) continue;
            if (meets_at(v) == meet_inf) {
                need = v - gamma;
                break;
            }
        }
        if (need < 0) throw std::logic_error("map_boundary_depth: image never dies");
        depth = std::max(depth, need);
    }
    return depth;
}

AggregateProfile aggregate(std::span<const InvariantProfile> profiles)
{
    if (profiles.empty()) throw std::invalid_argument("aggregate of an empty collection");
    AggregateProfile out;
    for (const auto& p : profiles) {
        out.sigma_plus_tilde = max(out.sigma_plus_tilde, p.sigma_plus);
        out.sigma_minus_tilde = min(out.sigma_minus_tilde, p.sigma_minus);
    }
    out.rho_tilde = out.sigma_plus_tilde - out.sigma_minus_tilde;
    return out;
}

}  // namespace filtcone
