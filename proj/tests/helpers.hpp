#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "filtcone/persistence.hpp"

namespace testing_support {

inline std::map<std::pair<double, double>, int> multiset(const filtcone::Barcode& bc)
{
    std::map<std::pair<double, double>, int> out;
    for (const auto& b : bc.bars) ++out[{b.birth, b.death.value()}];
    return out;
}

inline filtcone::Barcode bars(std::vector<std::pair<double, double>> list)
{
    filtcone::Barcode bc;
    for (auto [b, d] : list) bc.bars.push_back({b, d});
    bc.normalize();
    return bc;
}

inline const std::vector<double>& half_grid()
{
    static const std::vector<double> g = [] {
        std::vector<double> v;
        for (int i = 0; i <= 12; ++i) v.push_back(0.5 * i);
        return v;
    }();
    return g;
}

}  // namespace testing_support
