#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ccfg/configuration.hpp"
#include "ccfg/perm_group.hpp"

namespace ccfg {

/// Orbits of the component-wise action of G on Omega x Omega, colored
/// by first occurrence in a row-major scan.
inline ColorMatrix orbital_matrix(const PermGroup& g) {
    const int n = g.degree;
    ColorMatrix m(n);
    Color next = 0;
    std::vector<std::pair<int, int>> queue;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (m.at(a, b) != kNoRel) continue;
            Color col = next++;
            m.at(a, b) = col;
            queue.assign(1, {a, b});
            for (size_t i = 0; i < queue.size(); ++i)
                for (const Perm& p : g.gens) {
                    int x = p(queue[i].first), y = p(queue[i].second);
                    if (m.at(x, y) == kNoRel) {
                        m.at(x, y) = col;
                        queue.push_back({x, y});
                    }
                }
        }
    m.rank = next;
    return m;
}

/// The coherent configuration associated with G.
inline Configuration orbitals(const PermGroup& g) { return validate(orbital_matrix(g)); }

struct CosetAction {
    PermGroup image;          // G acting on the right H-cosets
    std::vector<Perm> reps;   // canonical (lexicographically least) coset representatives
};

/// Action of G on the right H-cosets by right multiplication. The image
/// group is returned; faithfulness is not assumed.
inline CosetAction coset_action(const PermGroup& g, const PermGroup& h, size_t cap = 1000000) {
    for (const Perm& x : h.gens)
        if (!g.contains(x)) throw not_subgroup("H is not a subgroup of G");
    const std::vector<Perm> h_elems = h.elements(cap);
    auto canonical = [&](const Perm& p) {
        Perm best = h_elems[0].then(p);
        for (size_t i = 1; i < h_elems.size(); ++i) best = std::min(best, h_elems[i].then(p));
        return best;
    };
    std::map<Perm, int> index;
    std::vector<Perm> reps;
    reps.push_back(canonical(Perm::identity(g.degree)));
    index.emplace(reps[0], 0);
    for (size_t i = 0; i < reps.size(); ++i) {
        if (reps.size() > cap) throw too_large("coset enumeration exceeds cap");
        for (const Perm& s : g.gens) {
            Perm r = canonical(reps[i].then(s));
            if (index.emplace(r, int(reps.size())).second) reps.push_back(std::move(r));
        }
    }
    const int deg = int(reps.size());
    std::vector<Perm> images;
    for (const Perm& s : g.gens) {
        std::vector<int> img(deg);
        for (int i = 0; i < deg; ++i) img[i] = index.at(canonical(reps[i].then(s)));
        images.emplace_back(Perm(std::move(img)));
    }
    return {PermGroup(deg, std::move(images)), std::move(reps)};
}

struct TiSubgroupVerdict {
    bool ti = true;
    Perm g;        // witness conjugator when !ti
    Perm element;  // nontrivial element of H^g ∩ H != H
};

/// Literal trivial-intersection test: H^g ∩ H ∈ {H, 1} for all g in G.
inline TiSubgroupVerdict is_ti_subgroup(const PermGroup& g, const PermGroup& h,
                                        size_t cap = 1000000) {
    for (const Perm& x : h.gens)
        if (!g.contains(x)) throw not_subgroup("H is not a subgroup of G");
    std::vector<Perm> h_elems = h.elements(cap);
    std::set<Perm> h_set(h_elems.begin(), h_elems.end());
    const std::vector<Perm> g_elems = g.elements(cap);
    // H^g depends only on the right N_G(H)-coset of g, but scanning all of
    // G is affordable below the cap and keeps the witness deterministic.
    for (const Perm& x : g_elems) {
        bool equal = true;
        Perm witness;
        bool nontrivial = false;
        for (const Perm& e : h_elems) {
            Perm conj = e.conjugated_by(x);
            bool in_h = h_set.count(conj) > 0;
            if (!in_h) equal = false;
            if (in_h && !conj.is_identity() && !nontrivial) {
                witness = conj;
                nontrivial = true;
            }
        }
        if (!equal && nontrivial) return {false, x, witness};
    }
    return {};
}

inline PermGroup normalizer_in(const PermGroup& g, const PermGroup& h, size_t cap = 1000000) {
    std::vector<Perm> h_elems = h.elements(cap);
    std::set<Perm> h_set(h_elems.begin(), h_elems.end());
    std::vector<Perm> norm;
    for (const Perm& x : g.elements(cap)) {
        bool normalizes = true;
        for (const Perm& e : h.gens)
            if (!h_set.count(e.conjugated_by(x))) {
                normalizes = false;
                break;
            }
        if (normalizes) norm.push_back(x);
    }
    return PermGroup(g.degree, std::move(norm));
}

struct TiSchemeVerdict {
    bool ti = false;             // combinatorial criterion of the orbital scheme
    bool two_valenced = false;   // S = S_1 u S_k
    bool semiregular = false;    // H semiregular on alpha S_k
    int k = 1;
    TiSubgroupVerdict subgroup;  // raw H^g ∩ H verdict, must agree
};

/// Combinatorial TI criterion: S = S_1 u S_k and the point stabilizer
/// acts semiregularly on alpha S_k. Cross-validated against the literal
/// subgroup test; disagreement would be an implementation bug.
inline TiSchemeVerdict ti_scheme_check(const PermGroup& g, size_t cap = 1000000) {
    if (!g.is_transitive()) throw not_transitive("ti_scheme_check needs a transitive group");
    Configuration x = orbitals(g);
    TiSchemeVerdict v;
    v.k = x.max_valency();
    v.two_valenced = true;
    for (int r = 0; r < x.rank(); ++r)
        if (x.valency[r] != 1 && x.valency[r] != v.k) v.two_valenced = false;
    const int alpha = 0;
    PermGroup h = point_stabilizer(g, alpha);
    std::vector<char> in_sk(g.degree, 0);
    for (int b = 0; b < g.degree; ++b)
        if (x.valency[x.matrix.at(alpha, b)] == v.k && x.matrix.at(alpha, b) != x.matrix.at(alpha, alpha))
            in_sk[b] = 1;
    v.semiregular = true;
    for (const Perm& e : h.elements(cap)) {
        if (e.is_identity()) continue;
        for (int b = 0; b < g.degree && v.semiregular; ++b)
            if (in_sk[b] && e(b) == b) v.semiregular = false;
    }
    v.ti = v.two_valenced && v.semiregular;
    v.subgroup = is_ti_subgroup(g, h, cap);
    if (v.subgroup.ti != v.ti)
        throw error("internal: combinatorial and subgroup TI criteria disagree");
    return v;
}

struct FixProfile {
    std::vector<long long> fix_counts;   // |Fix(x)| over all non-identity elements
    long long c = 0;                     // max over cosets Hg != H of |U Fix(x)|
    unsigned long long group_order = 0;
    long long orbit_count = 0;           // Burnside: sum |Fix| = |G| * #orbits
};

/// |Fix| statistics of a transitive action and the coset formula for the
/// indistinguishing number.
inline FixProfile fix_profile(const PermGroup& g, size_t cap = 1000000) {
    if (!g.is_transitive()) throw not_transitive("fix_profile needs a transitive group");
    FixProfile fp;
    const std::vector<Perm> elems = g.elements(cap);
    fp.group_order = elems.size();
    long long fix_sum = 0;
    for (const Perm& e : elems) {
        long long f = (long long)e.fixed_points().size();
        fix_sum += f;
        if (!e.is_identity()) fp.fix_counts.push_back(f);
    }
    fp.orbit_count = fix_sum / (long long)elems.size();
    // group elements into right H-cosets, H the stabilizer of point 0
    std::vector<Perm> h_elems;
    for (const Perm& e : elems)
        if (e(0) == 0) h_elems.push_back(e);
    std::map<Perm, std::set<int>> coset_fix;  // canonical rep -> union of Fix(x)
    for (const Perm& e : elems) {
        Perm rep = h_elems[0].then(e);
        for (size_t i = 1; i < h_elems.size(); ++i) rep = std::min(rep, h_elems[i].then(e));
        auto& fx = coset_fix[rep];
        for (int p : e.fixed_points()) fx.insert(p);
    }
    for (const auto& [rep, fx] : coset_fix) {
        if (rep(0) == 0) continue;  // skip the coset H itself
        fp.c = std::max(fp.c, (long long)fx.size());
    }
    return fp;
}

/// Coset-side computation of the indistinguishing number, asserted
/// against the tensor-side value on the orbital scheme.
inline long long indistinguishing_via_cosets(const PermGroup& g, size_t cap = 1000000) {
    FixProfile fp = fix_profile(g, cap);
    Configuration x = orbitals(g);
    long long via_tensor = 0;
    for (int r = 0; r < x.rank(); ++r) {
        if (x.is_reflexive[r]) continue;
        long long c = 0;
        for (int s = 0; s < x.rank(); ++s) c += x.c(s, x.converse[s], r);
        via_tensor = std::max(via_tensor, c);
    }
    if (via_tensor != fp.c)
        throw error("internal: coset and tensor indistinguishing numbers disagree");
    return fp.c;
}

}  // namespace ccfg
