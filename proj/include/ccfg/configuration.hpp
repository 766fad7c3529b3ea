#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ccfg/color_matrix.hpp"
#include "ccfg/errors.hpp"

namespace ccfg {

// Dense rank^3 tensors stay affordable only at desk scale.
inline constexpr int kMaxDenseRank = 512;

/// A validated (partial) coherent configuration: the color matrix plus
/// fibers, valencies, the converse map and the intersection tensor
/// c_{rs}^t, all computed by validate().
struct Configuration {
    ColorMatrix matrix;
    std::vector<std::vector<int>> fibers;  // point sets, ordered by least point
    std::vector<int> fiber_of;             // point -> fiber index
    std::vector<Color> reflexive;          // colors r with r contained in the diagonal
    std::vector<bool> is_reflexive;        // indexed by color
    std::vector<Color> converse;           // r -> r*
    std::vector<int> source_fiber, target_fiber;
    std::vector<int> valency;
    bool homogeneous = false;

    int n() const { return matrix.n; }
    int rank() const { return matrix.rank; }

    int c(int r, int s, int t) const {
        return tensor_[(size_t(r) * matrix.rank + s) * matrix.rank + t];
    }

    Color color(int a, int b) const {
        if (a < 0 || b < 0 || a >= matrix.n || b >= matrix.n)
            throw out_of_range("point index out of range");
        return matrix.at(a, b);
    }

    Color converse_of(int r) const {
        check_color(r);
        return converse[r];
    }

    int valency_of(int r) const {
        check_color(r);
        return valency[r];
    }

    /// Points beta with (alpha,beta) in relation r.
    std::vector<int> points_from(int alpha, int r) const {
        std::vector<int> out;
        for (int b = 0; b < matrix.n; ++b)
            if (matrix.at(alpha, b) == r) out.push_back(b);
        return out;
    }

    /// Colors t contained in the product r.s (i.e. c_{rs}^t > 0).
    std::vector<int> product_colors(int r, int s) const {
        std::vector<int> out;
        for (int t = 0; t < rank(); ++t)
            if (c(r, s, t) > 0) out.push_back(t);
        return out;
    }

    int max_valency() const {
        int k = 0;
        for (int r = 0; r < rank(); ++r)
            if (!is_reflexive[r]) k = std::max(k, valency[r]);
        // a homogeneous scheme of degree 1 has only the reflexive relation
        return k == 0 ? 1 : k;
    }

    std::vector<uint16_t> tensor_;  // rank^3, filled by validate()

    void check_color(int r) const {
        if (r < 0 || r >= matrix.rank) throw out_of_range("relation index out of range");
    }
};

namespace detail {

// Run-length encoded multiset of (r,s) color pairs seen from a fixed base pair.
using Fingerprint = std::vector<std::pair<std::pair<int, int>, int>>;

inline Fingerprint pair_fingerprint(const ColorMatrix& m, int a, int b) {
    std::vector<std::pair<int, int>> seen;
    seen.reserve(m.n);
    for (int g = 0; g < m.n; ++g) {
        Color r = m.at(a, g), s = m.at(g, b);
        if (r == kNoRel || s == kNoRel) continue;
        seen.emplace_back(r, s);
    }
    std::sort(seen.begin(), seen.end());
    Fingerprint fp;
    for (size_t i = 0; i < seen.size();) {
        size_t j = i;
        while (j < seen.size() && seen[j] == seen[i]) ++j;
        fp.push_back({seen[i], int(j - i)});
        i = j;
    }
    return fp;
}

}  // namespace detail

/// Check axioms C1-C3 on a (partial) color matrix and build the derived
/// data. C3 is checked exhaustively over all cells: this is the oracle
/// the rest of the library trusts. Throws a structured violation naming
/// the first failing axiom with a witness.
inline Configuration validate(ColorMatrix m) {
    if (m.n <= 0) throw parse_error("empty matrix");
    m.canonicalize();

    Configuration cc;
    const int n = m.n;
    const int rank = m.rank;

    // C1: diagonal cells are present and diagonal colors occur only there.
    std::vector<char> on_diag(rank, 0), off_diag(rank, 0);
    for (int a = 0; a < n; ++a) {
        if (m.at(a, a) == kNoRel)
            throw c1_violation(a, kNoRel, "C1Violation: diagonal cell (" + std::to_string(a) +
                                              "," + std::to_string(a) + ") has no relation");
        on_diag[m.at(a, a)] = 1;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            Color t = m.at(a, b);
            if (t == kNoRel) continue;
            off_diag[t] = 1;
            if (on_diag[t])
                throw c1_violation(a, t, "C1Violation: color " + std::to_string(t) +
                                             " occurs both on and off the diagonal");
        }

    // Fibers: points grouped by diagonal color.
    cc.fiber_of.assign(n, -1);
    {
        std::map<Color, int> fiber_idx;
        for (int a = 0; a < n; ++a) {
            Color d = m.at(a, a);
            auto [it, fresh] = fiber_idx.try_emplace(d, int(cc.fibers.size()));
            if (fresh) cc.fibers.emplace_back();
            cc.fiber_of[a] = it->second;
            cc.fibers[it->second].push_back(a);
        }
    }

    // Partial structure: every fiber-block is entirely present or entirely absent.
    const int nf = int(cc.fibers.size());
    if (m.partial()) {
        std::vector<std::vector<char>> block_state(nf, std::vector<char>(nf, -1));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                char present = m.at(a, b) != kNoRel;
                char& st = block_state[cc.fiber_of[a]][cc.fiber_of[b]];
                if (st == -1)
                    st = present;
                else if (st != present)
                    throw precondition_violated(
                        "sentinel cells do not form a union of fiber-block complements");
            }
    }

    // C2: the transpose of each relation is a single relation, and * is
    // an involution.
    cc.converse.assign(rank, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Color t = m.at(a, b);
            if (t == kNoRel) continue;
            Color tr = m.at(b, a);
            if (tr == kNoRel)
                throw c2_violation(t, "C2Violation: converse of color " + std::to_string(t) +
                                          " is not a relation");
            if (cc.converse[t] == -1)
                cc.converse[t] = tr;
            else if (cc.converse[t] != tr)
                throw c2_violation(t, "C2Violation: transpose of color " + std::to_string(t) +
                                          " meets colors " + std::to_string(cc.converse[t]) +
                                          " and " + std::to_string(tr));
        }
    for (int r = 0; r < rank; ++r)
        if (cc.converse[r] < 0 || cc.converse[cc.converse[r]] != r)
            throw c2_violation(r, "C2Violation: converse is not an involution at color " +
                                      std::to_string(r));

    // C3, checked exhaustively: every pair of a relation must see the same
    // multiset of (r,s) color pairs through intermediate points.
    std::vector<detail::Fingerprint> ref_fp(rank);
    std::vector<std::pair<int, int>> ref_pair(rank, {-1, -1});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Color t = m.at(a, b);
            if (t == kNoRel) continue;
            auto fp = detail::pair_fingerprint(m, a, b);
            if (ref_pair[t].first < 0) {
                ref_fp[t] = std::move(fp);
                ref_pair[t] = {a, b};
                continue;
            }
            if (fp == ref_fp[t]) continue;
            // locate the first (r,s) whose count differs
            size_t i = 0, j = 0;
            const auto& rf = ref_fp[t];
            while (true) {
                if (i < rf.size() && (j >= fp.size() || rf[i].first < fp[j].first)) {
                    throw c3_violation(rf[i].first.first, rf[i].first.second, t, ref_pair[t],
                                       {a, b}, rf[i].second, 0, "C3Violation");
                }
                if (j < fp.size() && (i >= rf.size() || fp[j].first < rf[i].first)) {
                    throw c3_violation(fp[j].first.first, fp[j].first.second, t, ref_pair[t],
                                       {a, b}, 0, fp[j].second, "C3Violation");
                }
                if (rf[i].second != fp[j].second)
                    throw c3_violation(rf[i].first.first, rf[i].first.second, t, ref_pair[t],
                                       {a, b}, rf[i].second, fp[j].second, "C3Violation");
                ++i, ++j;
            }
        }

    // Tensor from the reference fingerprints.
    if (rank > kMaxDenseRank) throw rank_too_large("rank exceeds dense tensor cap");
    cc.tensor_.assign(size_t(rank) * rank * rank, 0);
    for (int t = 0; t < rank; ++t)
        for (const auto& [rs, cnt] : ref_fp[t]) {
            if (cnt > 0xffff) throw too_large("intersection number overflow");
            cc.tensor_[(size_t(rs.first) * rank + rs.second) * rank + t] = uint16_t(cnt);
        }

    // Reflexive colors, per-relation fibers, valencies.
    cc.is_reflexive.assign(rank, false);
    for (int r = 0; r < rank; ++r)
        if (on_diag[r]) {
            cc.is_reflexive[r] = true;
            cc.reflexive.push_back(r);
        }
    cc.source_fiber.assign(rank, -1);
    cc.target_fiber.assign(rank, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Color t = m.at(a, b);
            if (t == kNoRel || cc.source_fiber[t] >= 0) continue;
            cc.source_fiber[t] = cc.fiber_of[a];
            cc.target_fiber[t] = cc.fiber_of[b];
        }
    cc.valency.assign(rank, 0);
    for (int r = 0; r < rank; ++r) {
        int a = cc.fibers[cc.source_fiber[r]][0];
        int cnt = 0;
        for (int b = 0; b < n; ++b)
            if (m.at(a, b) == r) ++cnt;
        cc.valency[r] = cnt;
        // n_r = c_{r r*}^{1_Lambda} for r in Lambda x Delta
        Color diag = m.at(a, a);
        if (cc.tensor_[(size_t(r) * rank + cc.converse[r]) * rank + diag] != cnt)
            throw c3_violation(r, cc.converse[r], diag, {a, a}, {a, a}, cnt,
                               cc.c(r, cc.converse[r], diag),
                               "internal: valency disagrees with c_{rr*}^{1}");
    }

    cc.homogeneous = !m.partial() && cc.fibers.size() == 1;
    cc.matrix = std::move(m);
    return cc;
}

/// First counterexample to the homogeneous-scheme identities
/// n_r n_s = sum_t n_t c_{rs}^t, c_{r*s*}^{t*} = c_{sr}^t and
/// n_t c_{rs}^{t*} = n_r c_{st}^{r*} = n_s c_{tr}^{s*}.
struct IdentityReport {
    bool ok = true;
    int which = 0;  // 1..3
    int r = -1, s = -1, t = -1;
};

inline IdentityReport verify_identities(const Configuration& cc) {
    if (!cc.homogeneous) throw not_homogeneous("verify_identities needs a homogeneous scheme");
    const int rank = cc.rank();
    for (int r = 0; r < rank; ++r)
        for (int s = 0; s < rank; ++s) {
            long long sum = 0;
            for (int t = 0; t < rank; ++t) sum += (long long)cc.valency[t] * cc.c(r, s, t);
            if (sum != (long long)cc.valency[r] * cc.valency[s]) return {false, 1, r, s, -1};
            for (int t = 0; t < rank; ++t) {
                if (cc.c(cc.converse[r], cc.converse[s], cc.converse[t]) != cc.c(s, r, t))
                    return {false, 2, r, s, t};
                long long a = (long long)cc.valency[t] * cc.c(r, s, cc.converse[t]);
                long long b = (long long)cc.valency[r] * cc.c(s, t, cc.converse[r]);
                long long d = (long long)cc.valency[s] * cc.c(t, r, cc.converse[s]);
                if (a != b || b != d) return {false, 3, r, s, t};
            }
        }
    return {};
}

/// Restriction of cc to a union of fibers.
inline Configuration restriction(const Configuration& cc, const std::vector<int>& delta) {
    std::vector<char> in(cc.n(), 0);
    for (int p : delta) {
        cc.color(p, p);  // range check
        in[p] = 1;
    }
    for (const auto& fiber : cc.fibers) {
        bool any = false, all = true;
        for (int p : fiber) {
            any = any || in[p];
            all = all && in[p];
        }
        if (any && !all) throw not_fiber_union("restriction set is not a union of fibers");
    }
    std::vector<int> pts;
    for (int p = 0; p < cc.n(); ++p)
        if (in[p]) pts.push_back(p);
    if (pts.empty()) throw not_fiber_union("restriction set is empty");
    ColorMatrix sub(int(pts.size()));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j) sub.at(int(i), int(j)) = cc.matrix.at(pts[i], pts[j]);
    return validate(std::move(sub));
}

}  // namespace ccfg
