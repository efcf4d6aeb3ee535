#include "filtcone/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "filtcone/extended_real.hpp"

namespace filtcone {

FilteredComplex::FilteredComplex(std::string name, std::vector<Generator> generators,
                                 const std::map<std::string, std::vector<std::string>>& boundary)
    : name_(std::move(name)), generators_(std::move(generators)), boundary_(generators_.size(), generators_.size())
{
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (generators_[i].id.empty()) throw InvalidInput("generator " + std::to_string(i) + " has an empty id");
        if (!index_.emplace(generators_[i].id, i).second)
            throw InvalidInput("duplicate generator id \"" + generators_[i].id + "\"");
    }
    for (const auto& [src, support] : boundary) {
        const auto col = index_.find(src);
        if (col == index_.end()) throw InvalidInput("boundary references unknown generator \"" + src + "\"");
        for (const auto& dst : support) {
            const auto row = index_.find(dst);
            if (row == index_.end())
                throw InvalidInput("boundary of \"" + src + "\" references unknown generator \"" + dst + "\"");
            boundary_.flip(row->second, col->second);
        }
    }
    index_.clear();
    index_and_validate();
}

FilteredComplex::FilteredComplex(std::string name, std::vector<Generator> generators, gf2::Matrix boundary)
    : name_(std::move(name)), generators_(std::move(generators)), boundary_(std::move(boundary))
{
    if (boundary_.rows() != generators_.size() || boundary_.cols() != generators_.size())
        throw InvalidInput("boundary matrix shape does not match the generator count");
    index_and_validate();
}

void FilteredComplex::index_and_validate()
{
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (!index_.emplace(generators_[i].id, i).second)
            throw InvalidInput("duplicate generator id \"" + generators_[i].id + "\"");
    }

    auto& out = validation_.violations;
    for (std::size_t g = 0; g < size(); ++g) {
        boundary_.column(g).for_each_set([&](std::size_t h) {
            if (filtration(h) > filtration(g)) {
                out.push_back("filtration(" + generators_[h].id + ")=" + format_decimal(filtration(h)) +
                              " > filtration(" + generators_[g].id + ")=" + format_decimal(filtration(g)));
            }
        });
    }
    for (std::size_t g = 0; g < size(); ++g) {
        if (boundary_.apply(boundary_.column(g)).any()) out.push_back("d∘d ≠ 0 at " + generators_[g].id);
    }
}

std::optional<std::size_t> FilteredComplex::index_of(const std::string& id) const
{
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FilteredComplex::require_index(const std::string& id) const
{
    const auto idx = index_of(id);
    if (!idx) throw InvalidInput("unknown generator \"" + id + "\" in complex \"" + name_ + "\"");
    return *idx;
}

std::vector<std::string> FilteredComplex::boundary_ids(std::size_t i) const
{
    std::vector<std::string> out;
    boundary_.column(i).for_each_set([&](std::size_t h) { out.push_back(generators_[h].id); });
    return out;
}

std::vector<double> FilteredComplex::critical_values() const
{
    std::vector<double> v;
    v.reserve(size());
    for (const auto& g : generators_) v.push_back(g.filtration);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

gf2::BitVector FilteredComplex::sublevel(double level) const
{
    gf2::BitVector mask(size());
    for (std::size_t i = 0; i < size(); ++i)
        if (filtration(i) <= level) mask.set(i);
    return mask;
}

bool FilteredComplex::same_as(const FilteredComplex& other) const
{
    return this == &other || (generators_ == other.generators_ && boundary_ == other.boundary_);
}

FilteredComplex FilteredComplex::renamed(std::string name) const
{
    FilteredComplex copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

ValidationReport validate_complex(const FilteredComplex& c) { return c.validation(); }

void require_valid(const FilteredComplex& c)
{
    if (!c.validation().ok())
        throw InvalidInput("complex \"" + c.name() + "\" is invalid: " + c.validation().violations.front(),
                           c.validation().violations);
}

FilteredComplex shift_complex(const FilteredComplex& c, double s)
{
    auto gens = c.generators();
    for (auto& g : gens) g.filtration -= s;
    return FilteredComplex(c.name(), std::move(gens), c.boundary());
}

double minimal_shift(const FilteredLinearMap& f)
{
    double s = 0.0;
    for (std::size_t g = 0; g < f.matrix.cols(); ++g) {
        f.matrix.column(g).for_each_set(
            [&](std::size_t h) { s = std::max(s, f.target->filtration(h) - f.source->filtration(g)); });
    }
    return s;
}

namespace {

void check_shape(const FilteredLinearMap& f, ValidationReport& report)
{
    if (!f.source || !f.target) {
        report.violations.push_back("map has no source or target");
        return;
    }
    if (f.matrix.rows() != f.target->size() || f.matrix.cols() != f.source->size())
        report.violations.push_back("matrix shape does not match source/target sizes");
}

void check_filtered(const FilteredLinearMap& f, ValidationReport& report)
{
    if (f.shift < 0.0) report.violations.push_back("negative shift " + format_decimal(f.shift));
    for (std::size_t g = 0; g < f.matrix.cols(); ++g) {
        f.matrix.column(g).for_each_set([&](std::size_t h) {
            const double lift = f.target->filtration(h) - f.source->filtration(g);
            if (lift > f.shift) {
                report.violations.push_back("entry " + f.source->generator(g).id + " -> " +
                                            f.target->generator(h).id + " raises filtration by " +
                                            format_decimal(lift) + " > shift " + format_decimal(f.shift));
            }
        });
    }
}

}  // namespace

MapValidation validate_linear_map(const FilteredLinearMap& f)
{
    MapValidation out;
    check_shape(f, out.report);
    if (!out.ok()) return out;
    check_filtered(f, out.report);
    out.minimal_shift = minimal_shift(f);
    return out;
}

MapValidation validate_map(const FilteredMap& f)
{
    MapValidation out;
    check_shape(f, out.report);
    if (!out.ok()) return out;
    const auto lhs = f.target->boundary() * f.matrix;
    const auto rhs = f.matrix * f.source->boundary();
    for (std::size_t g = 0; g < f.matrix.cols(); ++g) {
        if (lhs.column(g) != rhs.column(g))
            out.report.violations.push_back("f∘d ≠ d∘f at " + f.source->generator(g).id);
    }
    check_filtered(f, out.report);
    out.minimal_shift = minimal_shift(f);
    return out;
}

std::vector<std::size_t> filtration_order(const FilteredComplex& c)
{
    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c.filtration(a) < c.filtration(b); });
    return order;
}

FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b, const std::string& prefix_a,
                           const std::string& prefix_b)
{
    const auto n = a.size() + b.size();
    std::vector<Generator> gens;
    gens.reserve(n);
    for (const auto& g : a.generators()) gens.push_back({prefix_a + g.id, g.filtration});
    for (const auto& g : b.generators()) gens.push_back({prefix_b + g.id, g.filtration});
    gf2::Matrix d(n, n);
    for (std::size_t j = 0; j < a.size(); ++j) a.boundary().column(j).for_each_set([&](std::size_t i) { d.set(i, j); });
    for (std::size_t j = 0; j < b.size(); ++j)
        b.boundary().column(j).for_each_set([&](std::size_t i) { d.set(a.size() + i, a.size() + j); });
    return FilteredComplex(a.name() + "+" + b.name(), std::move(gens), std::move(d));
}

FilteredComplex reorder(const FilteredComplex& c, const std::vector<std::size_t>& perm)
{
    if (perm.size() != c.size()) throw std::invalid_argument("permutation size mismatch");
    std::vector<std::size_t> inverse(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inverse[perm[k]] = k;
    std::vector<Generator> gens;
    gens.reserve(c.size());
    for (auto p : perm) gens.push_back(c.generator(p));
    gf2::Matrix d(c.size(), c.size());
    for (std::size_t k = 0; k < perm.size(); ++k)
        c.boundary().column(perm[k]).for_each_set([&](std::size_t i) { d.set(inverse[i], k); });
    return FilteredComplex(c.name(), std::move(gens), std::move(d));
}

FilteredComplex empty_complex(std::string name) { return FilteredComplex(std::move(name), {}, gf2::Matrix(0, 0)); }

FilteredComplex point_complex(double a, std::string id)
{
    return FilteredComplex("P(" + format_decimal(a) + ")", {{std::move(id), a}}, gf2::Matrix(1, 1));
}

FilteredComplex interval_complex(double birth, double death)
{
    gf2::Matrix d(2, 2);
    d.set(0, 1);
    return FilteredComplex("I(" + format_decimal(birth) + "," + format_decimal(death) + ")",
                           {{"x", birth}, {"y", death}}, std::move(d));
}

FilteredLinearMap zero_map(ComplexPtr source, ComplexPtr target, double shift)
{
    gf2::Matrix m(target->size(), source->size());
    return {std::move(source), std::move(target), shift, std::move(m)};
}

FilteredMap identity_map(ComplexPtr c)
{
    auto m = gf2::Matrix::identity(c->size());
    return FilteredMap({c, c, 0.0, std::move(m)});
}

FilteredLinearMap map_from_ids(ComplexPtr source, ComplexPtr target, double shift,
                               const std::map<std::string, std::vector<std::string>>& matrix)
{
    gf2::Matrix m(target->size(), source->size());
    for (const auto& [src, support] : matrix) {
        const auto col = source->index_of(src);
        if (!col) throw InvalidInput("map references unknown source generator \"" + src + "\"");
        for (const auto& dst : support) {
            const auto row = target->index_of(dst);
            if (!row) throw InvalidInput("map references unknown target generator \"" + dst + "\"");
            m.flip(*row, *col);
        }
    }
    return {std::move(source), std::move(target), shift, std::move(m)};
}

FilteredLinearMap compose(const FilteredLinearMap& g, const FilteredLinearMap& f)
{
    if (!f.target->same_as(*g.source)) throw std::invalid_argument("compose: target of f is not the source of g");
    return {f.source, g.target, g.shift + f.shift, g.matrix * f.matrix};
}

FilteredLinearMap add(const FilteredLinearMap& f, const FilteredLinearMap& g)
{
    if (!f.source->same_as(*g.source) || !f.target->same_as(*g.target))
        throw std::invalid_argument("add: maps have different source or target");
    return {f.source, f.target, std::max(f.shift, g.shift), f.matrix + g.matrix};
}

FilteredLinearMap commutator(const FilteredLinearMap& h)
{
    return {h.source, h.target, h.shift, h.target->boundary() * h.matrix + h.matrix * h.source->boundary()};
}

bool same_linear_map(const FilteredLinearMap& f, const FilteredLinearMap& g)
{
    return f.source->same_as(*g.source) && f.target->same_as(*g.target) && f.matrix == g.matrix;
}

ValidationReport validate_witness(const HomotopyEquivalenceWitness& w)
{
    ValidationReport out;
    auto absorb = [&](const std::string& label, const MapValidation& v) {
        for (const auto& msg : v.report.violations) out.violations.push_back(label + ": " + msg);
        if (v.minimal_shift > w.shift)
            out.violations.push_back(label + " needs shift " + format_decimal(v.minimal_shift) + " > " +
                                     format_decimal(w.shift));
    };
    absorb("f", validate_map(w.forward));
    absorb("g", validate_map(w.backward));
    absorb("h", validate_linear_map(w.source_homotopy));
    absorb("h'", validate_linear_map(w.target_homotopy));
    if (!out.ok()) return out;

    const auto gf = compose(w.backward, w.forward);
    const auto fg = compose(w.forward, w.backward);
    if (gf.matrix + gf2::Matrix::identity(w.source->size()) != commutator(w.source_homotopy).matrix)
        out.violations.push_back("g∘f − id ≠ dh + hd");
    if (fg.matrix + gf2::Matrix::identity(w.target->size()) != commutator(w.target_homotopy).matrix)
        out.violations.push_back("f∘g − id ≠ dh' + h'd");
    return out;
}

}  // namespace filtcone
