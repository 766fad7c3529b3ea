#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "ccfg/actions.hpp"
#include "ccfg/configuration.hpp"
#include "ccfg/invariants.hpp"
#include "ccfg/perm.hpp"
#include "ccfg/perm_group.hpp"

namespace ccfg {

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Rank-2 scheme: diagonal plus everything else.
inline Configuration trivial_scheme(int n) {
    if (n < 2) throw bad_parameters("trivial scheme needs n >= 2");
    ColorMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = i == j ? 0 : 1;
    m.rank = 2;
    return validate(std::move(m));
}

/// Discrete configuration: every cell its own relation.
inline Configuration complete_configuration(int n) {
    ColorMatrix m(n);
    Color next = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = next++;
    m.rank = next;
    return validate(std::move(m));
}

/// Thin scheme of the regular cyclic group: color(a,b) = b - a mod n.
inline Configuration regular_cyclic_scheme(int n) {
    if (n < 1) throw bad_parameters("degree must be positive");
    ColorMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = ((j - i) % n + n) % n;
    m.rank = n;
    return validate(std::move(m));
}

/// Circulant coloring with symmetric connection sets: color 0 on the
/// diagonal, 1 + index of the set containing b - a, one extra color for
/// leftover differences.
inline ColorMatrix circulant_matrix(int n, const std::vector<std::vector<int>>& sets) {
    std::vector<int> cls(n, -1);
    for (size_t i = 0; i < sets.size(); ++i)
        for (int d : sets[i]) {
            int dd = ((d % n) + n) % n;
            if (dd == 0 || cls[dd] >= 0) throw bad_parameters("connection sets must be disjoint, nonzero");
            cls[dd] = int(i);
        }
    bool leftover = false;
    for (int d = 1; d < n; ++d) leftover = leftover || cls[d] < 0;
    ColorMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int d = ((j - i) % n + n) % n;
            m.at(i, j) = d == 0 ? 0 : (cls[d] >= 0 ? 1 + cls[d] : 1 + int(sets.size()));
        }
    m.rank = 1 + int(sets.size()) + (leftover ? 1 : 0);
    m.canonicalize();
    return m;
}

/// Quasi-thin elementary coset scheme on 2v points: circulant on Z_2v
/// with thin radical {0, v} and thick classes {d, d+v}. Here ss* is the
/// thin radical for every thick s, so c = n - m = 2v - 2, and the scheme
/// is pseudo-TI iff v <= 3.
inline Configuration doubled_cyclic_scheme(int v) {
    if (v < 2) throw bad_parameters("doubled cyclic scheme needs v >= 2");
    std::vector<std::vector<int>> sets{{v}};
    for (int d = 1; d < v; ++d) sets.push_back({d, d + v});
    return validate(circulant_matrix(2 * v, sets));
}

/// Distance coloring of the undirected n-cycle.
inline Configuration cycle_scheme(int n) {
    if (n < 3) throw bad_parameters("cycle needs n >= 3");
    ColorMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int d = std::min(((j - i) % n + n) % n, ((i - j) % n + n) % n);
            m.at(i, j) = d;
        }
    m.rank = n / 2 + 1;
    m.canonicalize();
    return validate(std::move(m));
}

/// Path graph coloring (diagonal / edge / non-edge): fails axiom C3 for
/// n >= 4, so it serves as the canonical rejection input.
inline ColorMatrix path_coloring(int n) {
    ColorMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = i == j ? 0 : (std::abs(i - j) == 1 ? 1 : 2);
    m.rank = n >= 3 ? 3 : 2;
    return m;
}

/// Cyclotomic scheme on GF(p): relations are the cosets of the order-k
/// subgroup of the multiplicative group, acting by difference.
inline Configuration gen_cyclotomic(int p, int k) {
    if (!is_prime(p)) throw not_prime("NotPrime: " + std::to_string(p));
    if (k < 1 || (p - 1) % k != 0) throw not_divisor("NotDivisor: k must divide p-1");
    // primitive root
    int g = -1;
    for (int cand = 2; cand < p && g < 0; ++cand) {
        int x = 1;
        bool prim = true;
        for (int e = 1; e < p - 1; ++e) {
            x = int((long long)x * cand % p);
            if (x == 1) {
                prim = false;
                break;
            }
        }
        if (prim) g = cand;
    }
    if (g < 0) throw construction_failed("no primitive root found");
    const int classes = (p - 1) / k;
    std::vector<int> coset_of(p, -1);  // nonzero u -> index of its coset of C
    int x = 1;
    for (int e = 0; e < p - 1; ++e) {
        coset_of[x] = e % classes;
        x = int((long long)x * g % p);
    }
    ColorMatrix m(p);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) m.at(a, b) = a == b ? 0 : 1 + coset_of[((b - a) % p + p) % p];
    m.rank = 1 + classes;
    m.canonicalize();
    Configuration cc = validate(std::move(m));
    SchemeProfile pr = profile(cc);
    if (pr.m != 1 || (k > 1 && pr.c != k - 1))
        throw construction_failed("cyclotomic scheme is not pseudocyclic");
    return cc;
}

/// Group on Z_n generated by x -> x+1 and x -> a x, where a is a unit of
/// multiplicative order exactly p (prime dividing n).
inline PermGroup gen_cyclic_semidirect(int n, int p, int a) {
    if (n < 2 || !is_prime(p)) throw bad_parameters("p must be prime");
    if (n % p != 0) throw bad_parameters("BadParameters: p must divide n");
    int aa = ((a % n) + n) % n;
    if (std::gcd(aa, n) != 1 || aa == 1) throw bad_parameters("a must be a nontrivial unit");
    long long pw = 1;
    for (int e = 0; e < p; ++e) pw = pw * aa % n;
    if (pw != 1) throw bad_parameters("a^p must be 1 mod n");
    // exact order p: p prime, so any a != 1 with a^p = 1 has order p
    std::vector<int> t(n), mult(n);
    for (int i = 0; i < n; ++i) {
        t[i] = (i + 1) % n;
        mult[i] = int((long long)aa * i % n);
    }
    return PermGroup(n, {Perm(std::move(t)), Perm(std::move(mult))});
}

/// The order-288 construction: the alternating group on 4 points times
/// a faithful degree-8 action of SL(2,3) on the nonzero vectors of
/// GF(3)^2, acting on 12 points. H is an order-4 subgroup of the socle,
/// non-normal and meeting the center trivially; the coset action has
/// degree 72.
struct Example288 {
    PermGroup ambient;                    // degree 12, order 288
    PermGroup h;                          // the chosen subgroup, degree 12
    PermGroup action;                     // image on the 72 cosets
    Configuration scheme;                 // orbitals of the coset action
    int candidate_count = 0;              // order-4 socle subgroups passing the filter
    std::vector<int> conjugacy_class_sizes;  // of the candidates, sorted
};

namespace detail {

inline int vec_index(int x, int y) { return 3 * x + y - 1; }  // (x,y) != (0,0)

inline Perm sl23_perm(int a, int b, int c, int d) {
    std::vector<int> img(12);
    for (int i = 0; i < 4; ++i) img[i] = i;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            if (x == 0 && y == 0) continue;
            int nx = (a * x + b * y) % 3, ny = (c * x + d * y) % 3;
            img[4 + vec_index(x, y)] = 4 + vec_index(nx, ny);
        }
    return Perm(std::move(img));
}

}  // namespace detail

inline Example288 gen_example_288() {
    using detail::sl23_perm;
    Example288 ex;
    // A4 on points 0..3, SL(2,3) on points 4..11
    Perm a4a = from_cycles(12, {{0, 1}, {2, 3}});
    Perm a4b = from_cycles(12, {{0, 1, 2}});
    Perm slT = sl23_perm(1, 1, 0, 1);
    Perm slS = sl23_perm(0, 2, 1, 0);
    ex.ambient = PermGroup(12, {a4a, a4b, slT, slS});
    if (ex.ambient.order() != 288) throw construction_failed("ambient group order is not 288");

    // socle: Klein part of the A4 factor times the center of SL(2,3)
    Perm socle_a = from_cycles(12, {{0, 1}, {2, 3}});
    Perm socle_b = from_cycles(12, {{0, 2}, {1, 3}});
    Perm socle_z = sl23_perm(2, 0, 0, 2);
    PermGroup socle(12, {socle_a, socle_b, socle_z});
    std::vector<Perm> socle_elems = socle.elements();
    if (socle_elems.size() != 8) throw construction_failed("socle is not elementary abelian of order 8");

    const std::vector<Perm> all = ex.ambient.elements();
    std::set<Perm> center;
    for (const Perm& x : all) {
        bool central = true;
        for (const Perm& g : ex.ambient.gens)
            if (!(x.then(g) == g.then(x))) central = false;
        if (central && !x.is_identity()) center.insert(x);
    }
    if (center.size() != 1) throw construction_failed("center does not have order 2");

    // order-4 subgroups of the socle: unordered pairs of distinct
    // nontrivial elements, deduplicated as element sets
    std::set<std::set<Perm>> subs;
    for (size_t i = 0; i < socle_elems.size(); ++i)
        for (size_t j = i + 1; j < socle_elems.size(); ++j) {
            const Perm& u = socle_elems[i];
            const Perm& v = socle_elems[j];
            if (u.is_identity() || v.is_identity()) continue;
            subs.insert({Perm::identity(12), u, v, u.then(v)});
        }
    std::vector<std::set<Perm>> candidates;
    for (const auto& sub : subs) {
        if (sub.size() != 4) continue;
        if (sub.count(*center.begin())) continue;  // must not contain the center
        bool normal = true;
        for (const Perm& g : ex.ambient.gens) {
            for (const Perm& u : sub)
                if (!sub.count(u.conjugated_by(g))) normal = false;
        }
        if (!normal) candidates.push_back(sub);
    }
    ex.candidate_count = int(candidates.size());
    if (ex.candidate_count != 3)
        throw construction_failed("expected exactly 3 non-normal order-4 socle subgroups");

    // conjugacy classes of the candidates inside the ambient group
    std::vector<int> cls(candidates.size(), -1);
    int ncls = 0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = ncls++;
        for (size_t j = i + 1; j < candidates.size(); ++j) {
            if (cls[j] >= 0) continue;
            for (const Perm& g : all) {
                std::set<Perm> img;
                for (const Perm& u : candidates[i]) img.insert(u.conjugated_by(g));
                if (img == candidates[j]) {
                    cls[j] = cls[i];
                    break;
                }
            }
        }
    }
    std::vector<int> sizes(ncls, 0);
    for (int c : cls) ++sizes[c];
    std::sort(sizes.begin(), sizes.end());
    ex.conjugacy_class_sizes = sizes;
    // prefer a subgroup alone in its class; with a single class any
    // choice gives the same scheme, take the least
    int pick = 0;
    for (size_t i = 0; i < candidates.size(); ++i)
        if (sizes[cls[i]] == 1) {
            pick = int(i);
            break;
        }
    std::vector<Perm> hgens(candidates[pick].begin(), candidates[pick].end());
    ex.h = PermGroup(12, std::move(hgens));
    if (ex.h.order() != 4) throw construction_failed("H does not have order 4");

    CosetAction ca = coset_action(ex.ambient, ex.h);
    ex.action = std::move(ca.image);
    if (ex.action.degree != 72) throw construction_failed("coset action degree is not 72");
    if (ex.action.order() != 288) throw construction_failed("coset action is not faithful");
    ex.scheme = orbitals(ex.action);

    SchemeProfile pr = profile(ex.scheme);
    if (pr.n != 72 || pr.m != 24 || pr.k != 2 || !pr.pseudo_ti)
        throw construction_failed("scheme profile is not (72,24,2) pseudo-TI");
    if (!elementary_coset_check(ex.scheme))
        throw construction_failed("scheme is not an elementary coset scheme");
    return ex;
}

}  // namespace ccfg
