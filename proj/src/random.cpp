#include "filtcone/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace filtcone {

std::size_t Rng::below(std::size_t n)
{
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    return static_cast<std::size_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
}

double Rng::grid(double lo, double hi, double step)
{
    const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    return lo + step * static_cast<double>(below(steps + 1));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index)
{
    // splitmix64 over the pair
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// Inverse of a matrix that is unitriangular with respect to `order`
// (entry (i, j) nonzero only if i precedes j or i == j).
gf2::Matrix unitriangular_inverse(const gf2::Matrix& t, const std::vector<std::size_t>& order)
{
    const auto n = order.size();
    gf2::Matrix inv(n, n);
    for (std::size_t pj = 0; pj < n; ++pj) {
        const auto j = order[pj];
        gf2::BitVector x(n);
        x.set(j);
        for (std::size_t pi = pj; pi-- > 0;) {
            const auto i = order[pi];
            bool bit = false;
            x.for_each_set([&](std::size_t k) {
                if (k != i && t.get(i, k)) bit = !bit;
            });
            if (bit) x.set(i);
        }
        inv.column(j) = std::move(x);
    }
    return inv;
}

}  // namespace

FilteredAutomorphism random_filtered_automorphism(const FilteredComplex& c, double density, Rng& rng)
{
    const auto order = filtration_order(c);
    const auto n = c.size();
    gf2::Matrix t = gf2::Matrix::identity(n);
    for (std::size_t pj = 0; pj < n; ++pj) {
        for (std::size_t pi = 0; pi < pj; ++pi) {
            if (rng.bernoulli(density)) t.set(order[pi], order[pj]);
        }
    }
    auto inv = unitriangular_inverse(t, order);
    return {std::move(t), std::move(inv)};
}

FilteredComplex random_complex(std::size_t gen_count, std::span<const double> filtration_grid, double density,
                               std::uint64_t seed)
{
    if (gen_count == 0) return empty_complex("Z");
    if (filtration_grid.empty()) throw std::invalid_argument("random_complex: empty filtration grid");
    Rng rng(seed);

    std::vector<double> values(gen_count);
    for (auto& v : values) v = rng.pick(filtration_grid);
    std::sort(values.begin(), values.end());
    std::vector<Generator> gens;
    gens.reserve(gen_count);
    for (std::size_t i = 0; i < gen_count; ++i) gens.push_back({"g" + std::to_string(i), values[i]});

    // Partial pairing: each generator may kill one earlier, still-free generator.
    gf2::Matrix pairing(gen_count, gen_count);
    std::vector<bool> used(gen_count, false);
    for (std::size_t j = 1; j < gen_count; ++j) {
        if (!rng.bernoulli(density)) continue;
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < j; ++i)
            if (!used[i]) free.push_back(i);
        if (free.empty()) continue;
        const auto i = free[rng.below(free.size())];
        used[i] = used[j] = true;
        pairing.set(i, j);
    }

    FilteredComplex skeleton("random", gens, pairing);
    const auto basis = random_filtered_automorphism(skeleton, density, rng);
    auto d = basis.forward * pairing * basis.inverse;
    return FilteredComplex("random", std::move(gens), std::move(d));
}

FilteredLinearMap random_linear_map(ComplexPtr source, ComplexPtr target, double shift, double density, Rng& rng)
{
    shift = std::max(0.0, shift);
    gf2::Matrix m(target->size(), source->size());
    for (std::size_t a = 0; a < source->size(); ++a)
        for (std::size_t b = 0; b < target->size(); ++b)
            if (target->filtration(b) <= source->filtration(a) + shift && rng.bernoulli(density)) m.set(b, a);
    return {std::move(source), std::move(target), shift, std::move(m)};
}

namespace {

constexpr std::size_t kChainSpaceCap = 1500;

// Random element of the space of shift-filtered chain maps, found as the
// kernel of X ↦ dX + Xd restricted to admissible entries.
std::optional<gf2::Matrix> random_chain_map(const FilteredComplex& a, const FilteredComplex& b, double shift, Rng& rng)
{
    const auto na = a.size();
    const auto nb = b.size();
    std::vector<std::pair<std::size_t, std::size_t>> entries;  // (row in b, column in a)
    for (std::size_t col = 0; col < na; ++col)
        for (std::size_t row = 0; row < nb; ++row)
            if (b.filtration(row) <= a.filtration(col) + shift) entries.emplace_back(row, col);
    if (entries.empty() || entries.size() > kChainSpaceCap) return std::nullopt;

    const auto ambient = na * nb;
    std::vector<gf2::BitVector> effects;
    effects.reserve(entries.size());
    for (const auto& [row, col] : entries) {
        gf2::BitVector e(ambient);
        b.boundary().column(row).for_each_set([&](std::size_t r) { e.flip(col * nb + r); });
        for (std::size_t c = 0; c < na; ++c)
            if (a.boundary().get(col, c)) e.flip(c * nb + row);
        effects.push_back(std::move(e));
    }
    const auto kernel = gf2::nullspace(effects, ambient);
    if (kernel.empty()) return std::nullopt;
    gf2::BitVector combo(entries.size());
    for (const auto& k : kernel)
        if (rng.bernoulli(0.5)) combo ^= k;
    gf2::Matrix m(nb, na);
    combo.for_each_set([&](std::size_t v) { m.set(entries[v].first, entries[v].second); });
    return m;
}

}  // namespace

FilteredMap random_filtered_map(ComplexPtr source, ComplexPtr target, double shift, std::uint64_t seed)
{
    Rng rng(seed);
    shift = std::max(0.0, shift);
    const auto lambda = random_linear_map(source, target, shift, 0.3, rng);
    FilteredMap f(commutator(lambda));
    if (rng.bernoulli(0.75)) {
        if (auto strict = random_chain_map(*source, *target, shift, rng)) f.matrix += *strict;
    }
    f.shift = shift;
    return f;
}

HomotopyEquivalenceWitness random_homotopy_equivalence(ComplexPtr c, std::size_t pad_pairs, double shift_budget,
                                                       std::uint64_t seed)
{
    shift_budget = std::max(0.0, shift_budget);
    if (pad_pairs == 0 && shift_budget == 0.0) {
        auto id = identity_map(c);
        return {c, c, id, id, zero_map(c, c), zero_map(c, c), 0.0};
    }
    Rng rng(seed);

    const auto crit = c->critical_values();
    const double lo = crit.empty() ? 0.0 : std::floor(crit.front()) - 1.0;
    const double hi = crit.empty() ? 6.0 : std::ceil(crit.back()) + 1.0;

    // C ⊕ pads; pad k is x@b, y@b+δ with d(y) = x. Generators of C keep their ids.
    const auto n = c->size();
    const auto total = n + 2 * pad_pairs;
    std::vector<Generator> gens = c->generators();
    gf2::Matrix d(total, total);
    for (std::size_t j = 0; j < n; ++j) c->boundary().column(j).for_each_set([&](std::size_t i) { d.set(i, j); });
    gf2::Matrix contraction(total, total);  // x ↦ y on each pad
    double pad_shift = 0.0;
    for (std::size_t k = 0; k < pad_pairs; ++k) {
        const double birth = rng.grid(lo, hi);
        const double delta = rng.grid(0.0, shift_budget);
        pad_shift = std::max(pad_shift, delta);
        const auto x = n + 2 * k;
        gens.push_back({"pad" + std::to_string(k) + ".x", birth});
        gens.push_back({"pad" + std::to_string(k) + ".y", birth + delta});
        d.set(x, x + 1);
        contraction.set(x + 1, x);
    }
    const FilteredComplex padded("padded", gens, d);

    const auto basis = random_filtered_automorphism(padded, 0.3, rng);
    auto target = share(FilteredComplex(c->name() + "'", gens, basis.forward * d * basis.inverse));

    gf2::Matrix inclusion(total, n);
    gf2::Matrix projection(n, total);
    for (std::size_t i = 0; i < n; ++i) {
        inclusion.set(i, i);
        projection.set(i, i);
    }

    const double lambda_shift = rng.grid(0.0, shift_budget);
    const double s = std::max(lambda_shift, pad_shift);
    const auto lambda = random_linear_map(c, target, lambda_shift, 0.25, rng);

    const auto back = projection * basis.inverse;  // π T⁻¹
    FilteredMap f({c, target, s, basis.forward * inclusion + commutator(lambda).matrix});
    FilteredMap g({target, c, s, back});
    FilteredLinearMap h{c, c, s, back * lambda.matrix};
    FilteredLinearMap h_prime{target, target, s,
                              basis.forward * contraction * basis.inverse + lambda.matrix * back};
    return {c, std::move(target), std::move(f), std::move(g), std::move(h), std::move(h_prime), s};
}

}  // namespace filtcone
