#pragma once

#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

namespace filtcone {

/// Thrown when an extended-real expression has no value, e.g. (+inf) + (-inf).
class DegenerateArithmetic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A real number or one of ±infinity, with checked arithmetic.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT: implicit from finite reals is the common case

    static constexpr ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }
    static constexpr ExtendedReal neg_infinity() { return ExtendedReal(-std::numeric_limits<double>::infinity()); }

    constexpr double value() const noexcept { return value_; }
    constexpr bool is_finite() const noexcept
    {
        return value_ != std::numeric_limits<double>::infinity() && value_ != -std::numeric_limits<double>::infinity();
    }
    constexpr bool is_pos_inf() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
    constexpr bool is_neg_inf() const noexcept { return value_ == -std::numeric_limits<double>::infinity(); }

    /// Finite value; throws on an infinite one.
    double finite() const
    {
        if (!is_finite()) throw DegenerateArithmetic("expected a finite value, got " + to_string());
        return value_;
    }

    friend constexpr auto operator<=>(const ExtendedReal& a, const ExtendedReal& b) noexcept
    {
        return a.value_ <=> b.value_;
    }
    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept
    {
        return a.value_ == b.value_;
    }

    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b)
    {
        if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
            throw DegenerateArithmetic("(+inf) + (-inf) is undefined");
        return ExtendedReal(a.value_ + b.value_);
    }
    friend ExtendedReal operator-(ExtendedReal a) { return ExtendedReal(-a.value_); }
    friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) { return a + (-b); }

    /// "inf", "-inf", or the shortest fixed-notation decimal.
    std::string to_string() const;

private:
    double value_ = 0.0;
};

inline ExtendedReal max(ExtendedReal a, ExtendedReal b) { return a < b ? b : a; }
inline ExtendedReal min(ExtendedReal a, ExtendedReal b) { return b < a ? b : a; }

/// Shortest round-tripping decimal in fixed notation (no exponent).
std::string format_decimal(double v);

}  // namespace filtcone
