#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ttm/spec.hpp"

namespace ttm {

// Closed-form invariants that do not need the spectral sequence.

struct GroupPresentation {
    enum class Tag { trivial, free_group, other };

    std::vector<std::string> generators;
    std::vector<std::vector<std::pair<int, int>>> relators;  // words of (generator index, exponent)
    Tag tag = Tag::other;
    int free_rank = 0;  // meaningful for Tag::free_group (and 0 for trivial)

    std::string classification() const {
        switch (tag) {
            case Tag::trivial:
                return "trivial";
            case Tag::free_group:
                return "free of rank " + std::to_string(free_rank);
            case Tag::other:
                return "other";
        }
        return "other";
    }
};

// The Euler characteristic of the total space equals the number of
// 0-dimensional strata of the base.
inline int euler_characteristic(const TwistedToricSpec& spec) {
    return strata_summary(spec.base).corner_count;
}

// Over a base with at least one corner the projection identifies fundamental
// groups, so pi_1 is the surface group of the base: free on the 2g handle
// generators once the boundary relation eliminates the boundary loop.
inline GroupPresentation fundamental_group(const TwistedToricSpec& spec) {
    if (spec.base.family == Family::cylinder || spec.base.corners == 0)
        throw unsupported_error(
            "fundamental group computation requires a base with at least one corner point; "
            "over a cornerless base the fibers contribute undetermined loops");
    GroupPresentation p;
    const int g = spec.base.genus;
    for (int i = 1; i <= g; ++i) {
        p.generators.push_back("a" + std::to_string(i));
        p.generators.push_back("b" + std::to_string(i));
    }
    p.tag = g == 0 ? GroupPresentation::Tag::trivial : GroupPresentation::Tag::free_group;
    p.free_rank = 2 * g;
    return p;
}

}  // namespace ttm
