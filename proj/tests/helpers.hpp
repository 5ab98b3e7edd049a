#pragma once

#include "weil/eisenstein.hpp"

#include <random>

namespace testing
{

inline std::shared_ptr<const weil::DiscriminantForm> form(weil::IntMatrix gram)
{
    return std::make_shared<const weil::DiscriminantForm>(weil::Lattice(std::move(gram)));
}

inline weil::CycNumber random_cyc(std::mt19937_64& rng, int64_t M)
{
    std::uniform_int_distribution<int64_t> d(-9, 9);
    std::vector<int64_t> counts(static_cast<size_t>(M));
    for (auto& c : counts)
        c = d(rng);
    return weil::CycNumber::from_counts(M, counts) * weil::CycNumber(weil::make_rational(1, 1 + (d(rng) + 9) % 5));
}

} // namespace testing
