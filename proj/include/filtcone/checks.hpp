#pragma once

#include <concepts>
#include <limits>
#include <string>

#include "filtcone/extended_real.hpp"

namespace filtcone {

enum class Outcome { pass, fail, vacuous, unmet_hypothesis };

const char* to_string(Outcome o) noexcept;

/// One evaluated inequality lhs <= rhs.
struct CheckResult {
    Outcome outcome = Outcome::pass;
    ExtendedReal lhs;
    ExtendedReal rhs;

    bool failed() const noexcept { return outcome == Outcome::fail; }
    /// rhs - lhs for finite sides, +inf otherwise.
    double slack() const noexcept
    {
        return lhs.is_finite() && rhs.is_finite() ? rhs.value() - lhs.value()
                                                  : std::numeric_limits<double>::infinity();
    }
};

/// lhs <= rhs + tol on finite sides. With an infinite side the comparison
/// is made in the extended order: true gives vacuous, false gives fail.
/// A side with no value ((+inf) + (-inf)) is vacuous.
template <std::invocable L, std::invocable R>
CheckResult check_le(L&& lhs, R&& rhs, double tol)
{
    CheckResult r;
    try {
        r.lhs = lhs();
        r.rhs = rhs();
    } catch (const DegenerateArithmetic&) {
        r.outcome = Outcome::vacuous;
        return r;
    }
    if (r.lhs.is_finite() && r.rhs.is_finite()) {
        r.outcome = r.lhs.value() <= r.rhs.value() + tol ? Outcome::pass : Outcome::fail;
    } else {
        r.outcome = r.lhs <= r.rhs ? Outcome::vacuous : Outcome::fail;
    }
    return r;
}

inline CheckResult check_le(ExtendedReal lhs, ExtendedReal rhs, double tol)
{
    return check_le([&] { return lhs; }, [&] { return rhs; }, tol);
}

/// |a - b| <= bound, vacuous when either side is infinite.
CheckResult check_abs_diff(ExtendedReal a, ExtendedReal b, double bound, double tol);

/// Exact equality check carried as a CheckResult (lhs == rhs).
CheckResult check_eq(ExtendedReal lhs, ExtendedReal rhs);

inline CheckResult unmet(ExtendedReal lhs = {}, ExtendedReal rhs = {})
{
    return {Outcome::unmet_hypothesis, lhs, rhs};
}

}  // namespace filtcone
