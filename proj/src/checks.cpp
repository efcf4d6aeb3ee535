#include "filtcone/checks.hpp"

#include <cmath>

namespace filtcone {

const char* to_string(Outcome o) noexcept
{
    switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::vacuous: return "vacuous";
    case Outcome::unmet_hypothesis: return "unmet_hypothesis";
    }
    return "?";
}

CheckResult check_abs_diff(ExtendedReal a, ExtendedReal b, double bound, double tol)
{
    if (!a.is_finite() || !b.is_finite()) return {Outcome::vacuous, ExtendedReal::infinity(), bound};
    const double diff = std::abs(a.value() - b.value());
    return {diff <= bound + tol ? Outcome::pass : Outcome::fail, diff, bound};
}

CheckResult check_eq(ExtendedReal lhs, ExtendedReal rhs)
{
    return {lhs == rhs ? Outcome::pass : Outcome::fail, lhs, rhs};
}

}  // namespace filtcone
