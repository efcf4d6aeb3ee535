#include "filtcone/gf2.hpp"

#include <stdexcept>

namespace filtcone::gf2 {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

bool Matrix::is_zero() const noexcept
{
    for (const auto& c : columns_)
        if (c.any()) return false;
    return true;
}

BitVector Matrix::apply(const BitVector& v) const
{
    BitVector out(rows_);
    v.for_each_set([&](std::size_t j) { out ^= columns_[j]; });
    return out;
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    if (rows_ != other.rows_ || cols() != other.cols()) throw std::invalid_argument("matrix dimension mismatch in sum");
    for (std::size_t j = 0; j < columns_.size(); ++j) columns_[j] ^= other.columns_[j];
    return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs)
{
    if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matrix dimension mismatch in product");
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) out.column(j) = lhs.apply(rhs.column(j));
    return out;
}

bool EchelonBasis::reduce(BitVector& v) const
{
    for (auto p = v.highest(); p >= 0; p = v.highest()) {
        const auto slot = by_pivot_[static_cast<std::size_t>(p)];
        if (slot < 0) return false;
        v ^= basis_[static_cast<std::size_t>(slot)];
    }
    return true;
}

bool EchelonBasis::insert(BitVector v)
{
    if (reduce(v)) return false;
    by_pivot_[static_cast<std::size_t>(v.highest())] = static_cast<std::ptrdiff_t>(basis_.size());
    basis_.push_back(std::move(v));
    return true;
}

std::size_t rank(std::span<const BitVector> vectors, std::size_t ambient)
{
    EchelonBasis basis(ambient);
    for (const auto& v : vectors) basis.insert(v);
    return basis.dimension();
}

namespace {

// Echelon rows paired with the combination of inputs that produced them.
struct TrackedElimination {
    std::vector<std::ptrdiff_t> by_pivot;
    std::vector<BitVector> rows;
    std::vector<BitVector> combos;

    TrackedElimination(std::size_t ambient) : by_pivot(ambient, -1) {}

    void reduce(BitVector& v, BitVector& combo) const
    {
        for (auto p = v.highest(); p >= 0; p = v.highest()) {
            const auto slot = by_pivot[static_cast<std::size_t>(p)];
            if (slot < 0) return;
            v ^= rows[static_cast<std::size_t>(slot)];
            combo ^= combos[static_cast<std::size_t>(slot)];
        }
    }

    void push(BitVector v, BitVector combo)
    {
        by_pivot[static_cast<std::size_t>(v.highest())] = static_cast<std::ptrdiff_t>(rows.size());
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
    }
};

}  // namespace

std::vector<BitVector> nullspace(std::span<const BitVector> vectors, std::size_t ambient)
{
    TrackedElimination elim(ambient);
    std::vector<BitVector> kernel;
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        BitVector v = vectors[j];
        BitVector combo(vectors.size());
        combo.set(j);
        elim.reduce(v, combo);
        if (v.none())
            kernel.push_back(std::move(combo));
        else
            elim.push(std::move(v), std::move(combo));
    }
    return kernel;
}

std::size_t intersection_dimension(std::span<const BitVector> a, std::span<const BitVector> b, std::size_t ambient)
{
    EchelonBasis sum(ambient);
    for (const auto& v : a) sum.insert(v);
    const auto dim_a = sum.dimension();
    for (const auto& v : b) sum.insert(v);
    return dim_a + rank(b, ambient) - sum.dimension();
}

std::optional<BitVector> solve(std::span<const BitVector> vectors, const BitVector& target, std::size_t ambient)
{
    TrackedElimination elim(ambient);
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        BitVector v = vectors[j];
        BitVector combo(vectors.size());
        combo.set(j);
        elim.reduce(v, combo);
        if (v.any()) elim.push(std::move(v), std::move(combo));
    }
    BitVector residue = target;
    BitVector combo(vectors.size());
    elim.reduce(residue, combo);
    if (residue.any()) return std::nullopt;
    return combo;
}

}  // namespace filtcone::gf2
