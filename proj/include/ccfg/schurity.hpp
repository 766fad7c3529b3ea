#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccfg/actions.hpp"
#include "ccfg/algebraic_iso.hpp"
#include "ccfg/configuration.hpp"
#include "ccfg/constructions.hpp"
#include "ccfg/invariants.hpp"
#include "ccfg/iso_search.hpp"
#include "ccfg/matching.hpp"
#include "ccfg/perm_group.hpp"
#include "ccfg/refine.hpp"

namespace ccfg {

/// Full combinatorial automorphism group, by base-point recursion: fix a
/// prefix of points, refine the coloring with the prefix individualized,
/// take the least point beta in a non-singleton refined class, and split
/// |Aut_prefix| = |orbit(beta)| * |Aut_{prefix+beta}|. Orbit membership
/// is decided by complete backtracking searches on the original colors,
/// with closure under already-found generators to skip searches. The
/// order is exact and cross-checked against a stabilizer chain built
/// from the returned generators.
struct AutResult {
    PermGroup group;
    unsigned long long order = 0;
    std::vector<int> base;  // points fixed along the recursion
};

namespace detail {

inline unsigned long long aut_recurse(const Configuration& cc, std::vector<int>& prefix,
                                      std::vector<int>& base, std::vector<Perm>& gens) {
    const int n = cc.n();
    ColorMatrix refined = wl_stabilize(individualize(cc.matrix, prefix));
    // refined diagonal classes; automorphisms fixing the prefix preserve them
    std::vector<int> class_size(refined.rank, 0);
    for (int p = 0; p < n; ++p) ++class_size[refined.at(p, p)];
    int beta = -1;
    for (int p = 0; p < n; ++p)
        if (class_size[refined.at(p, p)] > 1) {
            beta = p;
            break;
        }
    if (beta < 0) return 1;  // everything pinned: trivial stabilizer
    base.push_back(beta);

    std::vector<std::pair<int, int>> forced;
    for (int p : prefix) forced.emplace_back(p, p);

    std::set<int> orbit{beta};
    std::vector<Perm> level_gens;
    auto close_orbit = [&]() {
        std::vector<int> queue(orbit.begin(), orbit.end());
        for (size_t i = 0; i < queue.size(); ++i)
            for (const Perm& g : level_gens) {
                int im = g(queue[i]);
                if (orbit.insert(im).second) queue.push_back(im);
            }
    };
    for (int gamma = 0; gamma < n; ++gamma) {
        if (gamma == beta || refined.at(gamma, gamma) != refined.at(beta, beta)) continue;
        if (orbit.count(gamma)) continue;
        auto fc = forced;
        fc.emplace_back(beta, gamma);
        if (auto sol = realize_automorphism(cc, fc)) {
            Perm g(*sol);
            level_gens.push_back(g);
            gens.push_back(std::move(g));
            close_orbit();
        }
    }
    prefix.push_back(beta);
    unsigned long long below = aut_recurse(cc, prefix, base, gens);
    prefix.pop_back();
    return (unsigned long long)orbit.size() * below;
}

}  // namespace detail

inline AutResult automorphism_group(const Configuration& cc, int n_cap = 4096) {
    if (cc.n() > n_cap) throw too_large("degree exceeds the automorphism search cap");
    AutResult res;
    std::vector<int> prefix;
    std::vector<Perm> gens;
    res.order = detail::aut_recurse(cc, prefix, res.base, gens);
    if (gens.empty()) gens.push_back(Perm::identity(cc.n()));
    res.group = PermGroup(cc.n(), std::move(gens));
    if (res.group.order() != res.order)
        throw error("internal: recursion and stabilizer-chain orders disagree");
    return res;
}

/// Schurian iff the orbital configuration of Aut equals the input
/// partition exactly.
inline bool is_schurian(const Configuration& cc, int n_cap = 4096) {
    AutResult aut = automorphism_group(cc, n_cap);
    ColorMatrix orb = orbital_matrix(aut.group);
    return orb == cc.matrix;  // both are canonically colored
}

/// All relation bijections preserving the intersection tensor, by
/// backtracking over relation indices in ascending order with converse,
/// valency, reflexivity and assigned-triple pruning.
inline std::vector<AlgebraicIso> algebraic_isomorphisms(const Configuration& a,
                                                        const Configuration& b,
                                                        int rank_cap = 64) {
    std::vector<AlgebraicIso> out;
    if (a.n() != b.n() || a.rank() != b.rank()) return out;
    const int rank = a.rank();
    if (rank > rank_cap) throw rank_too_large("rank exceeds the algebraic search cap");
    std::vector<int> map(rank, -1);
    std::vector<char> used(rank, 0);

    auto consistent = [&](int r) {
        // all triples whose entries are assigned and involve r
        for (int s = 0; s < rank; ++s) {
            if (map[s] < 0) continue;
            for (int t = 0; t < rank; ++t) {
                if (map[t] < 0) continue;
                if (a.c(r, s, t) != b.c(map[r], map[s], map[t])) return false;
                if (a.c(s, r, t) != b.c(map[s], map[r], map[t])) return false;
                if (a.c(s, t, r) != b.c(map[s], map[t], map[r])) return false;
            }
        }
        return true;
    };

    auto rec = [&](auto&& self, int r) -> void {
        if (r == rank) {
            out.push_back({map});
            return;
        }
        for (int img = 0; img < rank; ++img) {
            if (used[img]) continue;
            if (a.valency[r] != b.valency[img] || a.is_reflexive[r] != b.is_reflexive[img])
                continue;
            if (map[a.converse[r]] >= 0 && map[a.converse[r]] != b.converse[img]) continue;
            map[r] = img;
            used[img] = 1;
            if (consistent(r)) self(self, r + 1);
            map[r] = -1;
            used[img] = 0;
        }
    };
    rec(rec, 0);
    for (const AlgebraicIso& iso : out)
        if (!is_algebraic_iso(a, b, iso.map))
            throw error("internal: search emitted a non-isomorphism");
    return out;
}

/// Separability relative to an explicit candidate list: every algebraic
/// isomorphism onto a candidate must be induced by a point bijection.
/// The verdict never claims more than was checked.
struct SeparabilityVerdict {
    bool separable_over_candidates = true;
    int isomorphisms_checked = 0;
    int failing_candidate = -1;  // index into the candidate list
    AlgebraicIso witness;        // unrealizable map when the verdict is negative
};

inline SeparabilityVerdict is_separable_small(const Configuration& cc,
                                              const std::vector<const Configuration*>& candidates,
                                              int n_cap = 4096) {
    if (cc.n() > n_cap) throw too_large("degree exceeds the separability search cap");
    SeparabilityVerdict v;
    for (size_t ci = 0; ci < candidates.size(); ++ci) {
        const Configuration& cand = *candidates[ci];
        if (cand.n() != cc.n() || cand.rank() != cc.rank()) continue;
        for (const AlgebraicIso& iso : algebraic_isomorphisms(cc, cand)) {
            ++v.isomorphisms_checked;
            if (!realize_iso(cc, cand, iso.map)) {
                v.separable_over_candidates = false;
                v.failing_candidate = int(ci);
                v.witness = iso;
                return v;
            }
        }
    }
    return v;
}

/// A coherent configuration is 1-regular when its regular points (those
/// seeing every relation at most once) form a nonempty fiber union.
inline bool is_one_regular(const Configuration& cc) {
    std::vector<char> regular(cc.n(), 1);
    for (int a = 0; a < cc.n(); ++a) {
        std::vector<int> seen(cc.rank(), 0);
        for (int b = 0; b < cc.n(); ++b)
            if (++seen[cc.matrix.at(a, b)] > 1) {
                regular[a] = 0;
                break;
            }
    }
    bool any = false;
    for (const auto& fiber : cc.fibers) {
        bool first = regular[fiber[0]];
        for (int p : fiber)
            if (bool(regular[p]) != bool(first))
                throw error("internal: regular points are not a fiber union");
        any = any || first;
    }
    return any;
}

/// Two-valenced hypothesis of the main schurity criterion:
/// S = S_1 u S_k and |S| > m + 6c(k-1).
struct TwoValencedData {
    bool two_valenced = false;
    int k = 1, m = 0;
    long long c = 0;
    bool bound = false;  // |S| > m + 6c(k-1)
};

inline TwoValencedData two_valenced_data(const Configuration& cc) {
    if (!cc.homogeneous) throw not_homogeneous("the criterion needs a homogeneous scheme");
    SchemeProfile p = profile(cc);
    TwoValencedData d;
    d.two_valenced = p.two_valenced;
    d.k = p.k;
    d.m = p.m;
    d.c = p.c;
    d.bound = d.two_valenced && cc.rank() > (long long)d.m + 6 * d.c * (d.k - 1);
    return d;
}

/// One-point decomposition: the point extension at alpha splits as the
/// complete configuration on the thin part plus the matching closure on
/// the rest, computed independently and compared cell by cell.
struct DecompositionReport {
    Configuration x_alpha;       // point extension at alpha
    MatchingClosure y_alpha;     // closure of M_alpha (points local to Delta_alpha)
    std::vector<int> thin_part;  // alpha S_1, ascending
    bool one_regular = false;
};

inline DecompositionReport one_point_decomposition(const Configuration& cc, int alpha) {
    TwoValencedData d = two_valenced_data(cc);
    if (!d.bound) throw hypothesis_unmet("rank bound |S| > m + 6c(k-1) fails");
    DecompositionReport rep;
    ExtractReport ext = extract_M_alpha(cc, alpha);
    if (!ext.valid) throw hypothesis_unmet("M_alpha is not a matching configuration: " + ext.reason);
    rep.y_alpha = matching_closure(ext.mc);
    rep.x_alpha = point_extension(cc, {alpha});
    for (int b = 0; b < cc.n(); ++b)
        if (cc.valency[cc.matrix.at(alpha, b)] == 1) rep.thin_part.push_back(b);

    // expected matrix: complete on the thin part, y_alpha on the rest,
    // one cross relation per (thin point, fiber of y_alpha) block
    const int n = cc.n();
    ColorMatrix expect(n);
    Color next = 0;
    for (int i : rep.thin_part)
        for (int j : rep.thin_part) expect.at(i, j) = next++;
    const auto& li = rep.y_alpha.indexing;
    const Color y_base = next;
    for (size_t i = 0; i < li.point.size(); ++i)
        for (size_t j = 0; j < li.point.size(); ++j)
            expect.at(li.point[i], li.point[j]) = y_base + rep.y_alpha.cfg.matrix.at(int(i), int(j));
    next = y_base + rep.y_alpha.cfg.rank();
    const int nf = int(rep.y_alpha.cfg.fibers.size());
    for (size_t ti = 0; ti < rep.thin_part.size(); ++ti)
        for (int f = 0; f < nf; ++f) {
            Color fwd = next++, bwd = next++;
            for (int local : rep.y_alpha.cfg.fibers[f]) {
                expect.at(rep.thin_part[ti], li.point[local]) = fwd;
                expect.at(li.point[local], rep.thin_part[ti]) = bwd;
            }
        }
    expect.rank = next;
    expect.canonicalize();
    if (!(expect == rep.x_alpha.matrix))
        throw error("internal: point extension does not split as complete-plus-closure");

    // fibers of the extension are exactly the alpha-neighborhoods alpha.s
    std::set<std::vector<int>> fib_got(rep.x_alpha.fibers.begin(), rep.x_alpha.fibers.end());
    std::set<std::vector<int>> fib_want;
    for (int s = 0; s < cc.rank(); ++s) fib_want.insert(cc.points_from(alpha, s));
    if (fib_got != fib_want) throw error("internal: extension fibers are not the alpha.s sets");

    rep.one_regular = is_one_regular(rep.x_alpha);
    if (!rep.one_regular) throw error("internal: the decomposed extension is not 1-regular");
    return rep;
}

/// Schurity pipeline for two-valenced schemes meeting the rank bound:
/// transports M_alpha to M_alpha' along r_{x,y} -> r_{x,y}, extends to
/// the closures, realizes the closure isomorphism as a point map on the
/// non-thin part, completes it on the thin part by alpha.s -> alpha'.s,
/// and verifies the result is an automorphism of the scheme. The group
/// generated over all alpha' must be transitive with orbitals equal to
/// the scheme.
struct PipelineVerdict {
    bool schurian = false;
    std::vector<Perm> generators;  // one automorphism per target point
    unsigned long long group_order = 0;
};

inline PipelineVerdict schurity_pipeline(const Configuration& cc) {
    TwoValencedData d = two_valenced_data(cc);
    if (!d.bound) throw hypothesis_unmet("rank bound |S| > m + 6c(k-1) fails");
    const int alpha = 0;
    ExtractReport ea = extract_M_alpha(cc, alpha);
    if (!ea.valid) throw hypothesis_unmet("M_alpha is not a matching configuration");
    const MatchingClosure base_closure = matching_closure(ea.mc);

    PipelineVerdict v;
    for (int ap = 0; ap < cc.n(); ++ap) {
        ExtractReport eb = extract_M_alpha(cc, ap);
        if (!eb.valid) throw realization_failed("M at the target point is not a matching configuration");
        // phi: fibers alpha.x -> alpha'.x, matchings r_{x,y} -> r_{x,y}
        const int nx = ea.mc.nx();
        BlockIso phi;
        phi.fiber_map.resize(nx);
        for (int x = 0; x < nx; ++x) phi.fiber_map[x] = x;
        phi.match_map.assign(nx, std::vector<std::vector<int>>(nx));
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < nx; ++y)
                for (const Matching& m : ea.mc.block[x][y]) {
                    int img = -1;
                    for (size_t j = 0; j < eb.mc.block[x][y].size(); ++j)
                        if (eb.mc.block[x][y][j].rel == m.rel) img = int(j);
                    if (img < 0) throw realization_failed("no matching with the same ambient label");
                    phi.match_map[x][y].push_back(img);
                }
        MatchingIsoExtension ext = extend_matching_iso(ea.mc, eb.mc, phi, &base_closure);

        // realize psi on the non-thin part (fast: the closures are semiregular)
        auto f = realize_iso(ext.closure_a.cfg, ext.closure_b.cfg, ext.psi.map);
        if (!f) throw realization_failed("closure isomorphism has no point realization");

        // assemble the scheme map: thin part by label, the rest through f
        std::vector<int> g(cc.n(), -1);
        for (int b = 0; b < cc.n(); ++b) {
            int s = cc.matrix.at(alpha, b);
            if (cc.valency[s] != 1) continue;
            std::vector<int> img = cc.points_from(ap, s);
            if (img.size() != 1) throw realization_failed("thin relation image is not a point");
            g[b] = img[0];
        }
        const auto& la = ext.closure_a.indexing;
        const auto& lb = ext.closure_b.indexing;
        for (size_t i = 0; i < la.point.size(); ++i) g[la.point[i]] = lb.point[(*f)[i]];
        Perm gp(g);
        for (int a = 0; a < cc.n(); ++a)
            for (int b = 0; b < cc.n(); ++b)
                if (cc.matrix.at(a, b) != cc.matrix.at(gp(a), gp(b)))
                    throw realization_failed("assembled map is not an automorphism");
        v.generators.push_back(std::move(gp));
    }
    PermGroup gen(cc.n(), v.generators);
    if (!gen.is_transitive()) throw realization_failed("generated group is not transitive");
    v.group_order = gen.order();
    // the generators form a transitive subgroup of Aut; when their
    // orbitals already match we are done, otherwise complete the point
    // stabilizer by the full automorphism search
    v.schurian = orbital_matrix(gen) == cc.matrix || is_schurian(cc);
    return v;
}

}  // namespace ccfg
