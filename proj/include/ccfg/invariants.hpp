#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccfg/configuration.hpp"

namespace ccfg {

/// c(r): number of points seeing both ends of any pair in r with the
/// same color. Computed both as sum_s c_{ss*}^r and as a direct point
/// count; the two must agree.
inline long long indistinguishing_number(const Configuration& cc, int r) {
    if (!cc.homogeneous) throw not_homogeneous("indistinguishing number needs a scheme");
    cc.check_color(r);
    if (cc.is_reflexive[r]) throw reflexive_relation("c(r) is defined for non-reflexive r");
    long long by_tensor = 0;
    for (int s = 0; s < cc.rank(); ++s) by_tensor += cc.c(s, cc.converse[s], r);
    // direct count on the first pair of r
    int a = -1, b = -1;
    for (int i = 0; i < cc.n() && a < 0; ++i)
        for (int j = 0; j < cc.n(); ++j)
            if (cc.matrix.at(i, j) == r) {
                a = i;
                b = j;
                break;
            }
    long long by_count = 0;
    for (int g = 0; g < cc.n(); ++g)
        if (cc.matrix.at(g, a) == cc.matrix.at(g, b)) ++by_count;
    if (by_tensor != by_count)
        throw identity_violation("c(r) tensor sum and point count disagree at r=" +
                                 std::to_string(r));
    return by_tensor;
}

/// The scheme statistics the TI theory quantifies over.
struct SchemeProfile {
    int n = 0;
    int rank = 0;
    int k = 1;       // maximum valency
    int m = 0;       // |S_1|, the thin radical
    long long c = 0; // indistinguishing number of the scheme
    std::map<int, std::vector<int>> valency_classes;  // k' -> S_{k'}
    std::vector<long long> c_per_relation;            // -1 at reflexive relations
    long long index_num = 0, index_den = 1;           // n/m, reduced
    bool two_valenced = false;  // S = S_1 u S_k
    bool pseudo_ti = false;     // two_valenced and c <= m k
    bool rank_bound = false;  // |S| > m + 6c(k-1)
    bool index_bound = false; // index > 1 + 6k^2(k-1)
};

inline SchemeProfile profile(const Configuration& cc) {
    if (!cc.homogeneous) throw not_homogeneous("profile needs a homogeneous scheme");
    SchemeProfile p;
    p.n = cc.n();
    p.rank = cc.rank();
    p.c_per_relation.assign(cc.rank(), -1);
    for (int r = 0; r < cc.rank(); ++r) {
        p.valency_classes[cc.valency[r]].push_back(r);
        if (!cc.is_reflexive[r]) {
            p.c_per_relation[r] = indistinguishing_number(cc, r);
            p.c = std::max(p.c, p.c_per_relation[r]);
            p.k = std::max(p.k, cc.valency[r]);
        }
    }
    p.m = int(p.valency_classes.count(1) ? p.valency_classes[1].size() : 0);
    p.two_valenced = true;
    for (const auto& [v, rels] : p.valency_classes)
        if (v != 1 && v != p.k) p.two_valenced = false;
    p.pseudo_ti = p.two_valenced && p.c <= (long long)p.m * p.k;
    p.rank_bound = p.rank > p.m + 6 * p.c * (p.k - 1);
    long long g = std::gcd((long long)p.n, (long long)p.m);
    p.index_num = p.n / g;
    p.index_den = p.m / g;
    // index > 1 + 6k^2(k-1), compared exactly
    p.index_bound = (long long)p.n > (long long)p.m * (1 + 6LL * p.k * p.k * (p.k - 1));
    return p;
}

/// Stable key=value rendering, one field per line.
inline std::string to_text(const SchemeProfile& p) {
    std::ostringstream os;
    os << "n=" << p.n << "\nrank=" << p.rank << "\nk=" << p.k << "\nm=" << p.m
       << "\nc=" << p.c << "\nindex=" << p.index_num;
    if (p.index_den != 1) os << "/" << p.index_den;
    os << "\ntwo_valenced=" << (p.two_valenced ? "true" : "false")
       << "\npseudo_ti=" << (p.pseudo_ti ? "true" : "false")
       << "\nrank_bound=" << (p.rank_bound ? "true" : "false")
       << "\nindex_bound=" << (p.index_bound ? "true" : "false") << "\n";
    return os.str();
}

/// Result of the elementary coset test: ss* equals a fixed T within S_1
/// for every s outside the thin radical. A thin scheme satisfies the
/// condition vacuously; that case is reported explicitly.
struct ElementaryCoset {
    bool vacuous = false;
    std::vector<int> T;  // empty when vacuous
};

inline std::optional<ElementaryCoset> elementary_coset_check(const Configuration& cc) {
    if (!cc.homogeneous) throw not_homogeneous("elementary coset test needs a scheme");
    std::vector<int> thick;
    for (int r = 0; r < cc.rank(); ++r)
        if (cc.valency[r] > 1) thick.push_back(r);
    if (thick.empty()) return ElementaryCoset{true, {}};
    std::vector<int> T;
    for (size_t i = 0; i < thick.size(); ++i) {
        int s = thick[i];
        std::vector<int> prod = cc.product_colors(s, cc.converse[s]);
        if (i == 0)
            T = std::move(prod);
        else if (prod != T)
            return std::nullopt;
    }
    for (int t : T)
        if (cc.valency[t] != 1) return std::nullopt;  // T must lie in S_1
    return ElementaryCoset{false, std::move(T)};
}

/// Orthogonals of a quasi-thin scheme: non-reflexive s with c(s) != 0.
inline std::vector<int> orthogonals(const Configuration& cc) {
    if (!cc.homogeneous) throw not_homogeneous("orthogonals need a scheme");
    if (cc.max_valency() > 2) throw not_quasi_thin("orthogonals are defined for quasi-thin schemes");
    std::vector<int> out;
    for (int r = 0; r < cc.rank(); ++r)
        if (!cc.is_reflexive[r] && indistinguishing_number(cc, r) != 0) out.push_back(r);
    return out;
}

}  // namespace ccfg
