#pragma once

#include <vector>

#include "ccfg/configuration.hpp"

namespace ccfg {

/// A bijection of basis relations preserving all intersection numbers.
struct AlgebraicIso {
    std::vector<int> map;  // source color -> target color
};

/// Check c_{rs}^t = c_{r's'}^{t'} for all triples.
inline bool is_algebraic_iso(const Configuration& a, const Configuration& b,
                             const std::vector<int>& map) {
    if (a.rank() != b.rank() || int(map.size()) != a.rank()) return false;
    std::vector<char> hit(b.rank(), 0);
    for (int v : map) {
        if (v < 0 || v >= b.rank() || hit[v]) return false;
        hit[v] = 1;
    }
    for (int r = 0; r < a.rank(); ++r)
        for (int s = 0; s < a.rank(); ++s)
            for (int t = 0; t < a.rank(); ++t)
                if (a.c(r, s, t) != b.c(map[r], map[s], map[t])) return false;
    return true;
}

}  // namespace ccfg
