#include "filtcone/extended_real.hpp"

#include <array>
#include <charconv>

namespace filtcone {

std::string format_decimal(double v)
{
    if (v == 0.0) return "0";  // also folds -0
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
    if (ec != std::errc{}) return std::to_string(v);
    return std::string(buf.data(), end);
}

std::string ExtendedReal::to_string() const
{
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return format_decimal(value_);
}

}  // namespace filtcone
