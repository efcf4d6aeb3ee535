#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace filtcone::gf2 {

/// Fixed-length vector over F2 packed into 64-bit words.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }

    BitVector& operator^=(const BitVector& other) noexcept
    {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) noexcept { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    bool none() const noexcept
    {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }
    bool any() const noexcept { return !none(); }

    std::size_t count() const noexcept
    {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// Index of the highest set bit; -1 when zero.
    std::ptrdiff_t highest() const noexcept
    {
        for (std::size_t w = words_.size(); w-- > 0;) {
            if (words_[w] != 0)
                return static_cast<std::ptrdiff_t>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w])));
        }
        return -1;
    }

    template <typename F>
    void for_each_set(F&& fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                const auto b = static_cast<std::size_t>(std::countr_zero(bits));
                fn(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::size_t> support() const
    {
        std::vector<std::size_t> out;
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Column-major dense matrix over F2: column j is the image of basis vector j.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols, BitVector(rows)) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }

    const BitVector& column(std::size_t j) const { return columns_[j]; }
    BitVector& column(std::size_t j) { return columns_[j]; }
    std::span<const BitVector> columns() const noexcept { return columns_; }

    bool get(std::size_t i, std::size_t j) const { return columns_[j].test(i); }
    void flip(std::size_t i, std::size_t j) { columns_[j].flip(i); }
    void set(std::size_t i, std::size_t j) { columns_[j].set(i); }

    bool is_zero() const noexcept;

    /// Image of a vector over the column space.
    BitVector apply(const BitVector& v) const;

    Matrix& operator+=(const Matrix& other);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<BitVector> columns_;
};

/// this ∘ rhs
Matrix operator*(const Matrix& lhs, const Matrix& rhs);

// General Gaussian elimination. These routines back the brute-force
// persistence oracle and never touch the barcode reduction kernel.

/// Incrementally maintained echelon basis of a subspace of F2^n.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t ambient) : ambient_(ambient), by_pivot_(ambient, -1) {}

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dimension() const noexcept { return basis_.size(); }

    /// Reduces v against the basis in place; true iff the residue is zero.
    bool reduce(BitVector& v) const;
    bool contains(BitVector v) const { return reduce(v); }

    /// Adds v to the span; returns false if v was already in it.
    bool insert(BitVector v);

    std::span<const BitVector> vectors() const noexcept { return basis_; }

private:
    std::size_t ambient_;
    std::vector<std::ptrdiff_t> by_pivot_;
    std::vector<BitVector> basis_;
};

std::size_t rank(std::span<const BitVector> vectors, std::size_t ambient);

/// Basis of {x : Σ x_j v_j = 0}, each kernel vector of length vectors.size().
std::vector<BitVector> nullspace(std::span<const BitVector> vectors, std::size_t ambient);

/// dim(span(a) ∩ span(b)) via dim a + dim b − dim(a+b).
std::size_t intersection_dimension(std::span<const BitVector> a, std::span<const BitVector> b, std::size_t ambient);

/// Some x with Σ x_j v_j = target, if one exists.
std::optional<BitVector> solve(std::span<const BitVector> vectors, const BitVector& target, std::size_t ambient);

}  // namespace filtcone::gf2
