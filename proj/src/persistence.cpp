#include "filtcone/persistence.hpp"

#include <algorithm>

namespace filtcone {

void Barcode::normalize() { std::sort(bars.begin(), bars.end()); }

std::size_t Barcode::infinite_count() const
{
    return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [](const Bar& b) { return b.infinite(); }));
}

Barcode operator+(const Barcode& a, const Barcode& b)
{
    Barcode out{a.bars};
    out.bars.insert(out.bars.end(), b.bars.begin(), b.bars.end());
    out.normalize();
    return out;
}

namespace {

struct Reduction {
    std::vector<std::size_t> order;       // position -> generator index
    std::vector<gf2::BitVector> columns;  // reduced columns, in positions
    std::vector<gf2::BitVector> v;        // columns of V with R = D V, in positions
    std::vector<std::ptrdiff_t> low_owner;
};

Reduction reduce(const FilteredComplex& c, bool track_v)
{
    Reduction r;
    const auto n = c.size();
    r.order = filtration_order(c);
    std::vector<std::size_t> position(n);
    for (std::size_t p = 0; p < n; ++p) position[r.order[p]] = p;

    r.columns.assign(n, gf2::BitVector(n));
    for (std::size_t p = 0; p < n; ++p)
        c.boundary().column(r.order[p]).for_each_set([&](std::size_t i) { r.columns[p].set(position[i]); });
    if (track_v) {
        r.v.assign(n, gf2::BitVector(n));
        for (std::size_t p = 0; p < n; ++p) r.v[p].set(p);
    }

    r.low_owner.assign(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
        auto& col = r.columns[j];
        for (auto low = col.highest(); low >= 0; low = col.highest()) {
            const auto owner = r.low_owner[static_cast<std::size_t>(low)];
            if (owner < 0) {
                r.low_owner[static_cast<std::size_t>(low)] = static_cast<std::ptrdiff_t>(j);
                break;
            }
            col ^= r.columns[static_cast<std::size_t>(owner)];
            if (track_v) r.v[j] ^= r.v[static_cast<std::size_t>(owner)];
        }
    }
    return r;
}

}  // namespace

Barcode barcode(const FilteredComplex& c)
{
    require_valid(c);
    const auto r = reduce(c, false);
    Barcode out;
    for (std::size_t p = 0; p < c.size(); ++p) {
        const double birth = c.filtration(r.order[p]);
        if (r.low_owner[p] >= 0) {
            const double death = c.filtration(r.order[static_cast<std::size_t>(r.low_owner[p])]);
            if (birth < death) out.bars.push_back({birth, death});
        } else if (r.columns[p].none()) {
            out.bars.push_back({birth, ExtendedReal::infinity()});
        }
    }
    out.normalize();
    return out;
}

std::vector<gf2::BitVector> homology_classes(const FilteredComplex& c)
{
    require_valid(c);
    const auto r = reduce(c, true);
    std::vector<gf2::BitVector> out;
    for (std::size_t p = 0; p < c.size(); ++p) {
        if (r.low_owner[p] >= 0 || r.columns[p].any()) continue;
        gf2::BitVector cycle(c.size());
        r.v[p].for_each_set([&](std::size_t q) { cycle.set(r.order[q]); });
        out.push_back(std::move(cycle));
    }
    return out;
}

namespace {

std::vector<gf2::BitVector> cycles_up_to(const FilteredComplex& c, double alpha)
{
    std::vector<std::size_t> cols;
    std::vector<gf2::BitVector> images;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c.filtration(j) <= alpha) {
            cols.push_back(j);
            images.push_back(c.boundary().column(j));
        }
    }
    std::vector<gf2::BitVector> cycles;
    for (const auto& combo : gf2::nullspace(images, c.size())) {
        gf2::BitVector z(c.size());
        combo.for_each_set([&](std::size_t k) { z.set(cols[k]); });
        cycles.push_back(std::move(z));
    }
    return cycles;
}

std::vector<gf2::BitVector> boundaries_up_to(const FilteredComplex& c, ExtendedReal beta)
{
    std::vector<gf2::BitVector> out;
    for (std::size_t j = 0; j < c.size(); ++j)
        if (ExtendedReal(c.filtration(j)) <= beta && c.boundary().column(j).any()) out.push_back(c.boundary().column(j));
    return out;
}

}  // namespace

std::size_t persistence_rank(const FilteredComplex& c, const PersistenceQuery& q)
{
    require_valid(c);
    if (q.beta < ExtendedReal(q.alpha)) throw InvalidInput("persistence query needs alpha <= beta");
    const auto z = cycles_up_to(c, q.alpha);
    const auto b = boundaries_up_to(c, q.beta);
    return z.size() - gf2::intersection_dimension(z, b, c.size());
}

std::size_t bars_alive(const Barcode& bc, const PersistenceQuery& q)
{
    return static_cast<std::size_t>(std::count_if(bc.bars.begin(), bc.bars.end(), [&](const Bar& b) {
        return b.birth <= q.alpha && (q.beta < b.death || (q.beta.is_pos_inf() && b.infinite()));
    }));
}

}  // namespace filtcone
