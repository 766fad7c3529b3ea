#pragma once

#include <numeric>
#include <vector>

#include "ccfg/configuration.hpp"
#include "ccfg/refine.hpp"

namespace ccfg {

/// Smallest coherent configuration whose union-closed relation set
/// contains every given relation, via Weisfeiler-Leman stabilization.
inline Configuration coherent_closure(int n,
                                      const std::vector<std::vector<std::pair<int, int>>>& relations,
                                      RefinementTrace* trace = nullptr) {
    return validate(wl_stabilize(seed_coloring(n, relations), trace));
}

/// Coherent closure of an existing coloring (the matrix is taken as the
/// initial partition of Omega x Omega).
inline Configuration closure_of_matrix(ColorMatrix m, RefinementTrace* trace = nullptr) {
    if (m.partial()) throw precondition_violated("closure needs a full coloring");
    return validate(wl_stabilize(std::move(m), trace));
}

/// Point extension: closure of S together with the singletons 1_alpha
/// for each named point.
inline Configuration point_extension(const Configuration& cc, const std::vector<int>& points,
                                     RefinementTrace* trace = nullptr) {
    return validate(wl_stabilize(individualize(cc.matrix, points), trace));
}

/// Matrix of the direct sum: both summands kept, plus one relation per
/// cross fiber block.
inline ColorMatrix direct_sum_matrix(const Configuration& a, const Configuration& b) {
    const int n = a.n(), n2 = b.n();
    ColorMatrix m(n + n2);
    const Color base_b = a.rank();
    const Color base_cross = a.rank() + b.rank();
    const Color nfa = Color(a.fibers.size());
    const Color nfb = Color(b.fibers.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = a.matrix.at(i, j);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) m.at(n + i, n + j) = base_b + b.matrix.at(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n2; ++j) {
            m.at(i, n + j) = base_cross + a.fiber_of[i] * nfb + b.fiber_of[j];
            m.at(n + j, i) = base_cross + nfa * nfb + b.fiber_of[j] * nfa + a.fiber_of[i];
        }
    m.canonicalize();
    return m;
}

inline Configuration direct_sum(const Configuration& a, const Configuration& b) {
    return validate(direct_sum_matrix(a, b));
}

/// Tensor product on Omega x Omega'; point (i,i') is i * n' + i'.
inline Configuration tensor_product(const Configuration& a, const Configuration& b) {
    const int n = a.n(), n2 = b.n();
    ColorMatrix m(n * n2);
    for (int i = 0; i < n; ++i)
        for (int i2 = 0; i2 < n2; ++i2)
            for (int j = 0; j < n; ++j)
                for (int j2 = 0; j2 < n2; ++j2)
                    m.at(i * n2 + i2, j * n2 + j2) = a.matrix.at(i, j) * b.rank() + b.matrix.at(i2, j2);
    m.canonicalize();
    return validate(std::move(m));
}

/// Meet: the configuration whose union-closed relation set is
/// (S1)^u  intersected with (S2)^u. Its basis relations are the cells of
/// the join of the two color partitions, i.e. the connected components
/// of the "two colors share a cell" graph.
inline Configuration meet(const Configuration& a, const Configuration& b) {
    if (a.n() != b.n()) throw degree_mismatch("meet needs configurations on the same point set");
    const int n = a.n();
    // union-find over the disjoint color sets of a and b
    std::vector<int> parent(a.rank() + b.rank());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int x = find(a.matrix.at(i, j));
            int y = find(a.rank() + b.matrix.at(i, j));
            if (x != y) parent[y] = x;
        }
    ColorMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = find(a.matrix.at(i, j));
    m.canonicalize();
    return validate(std::move(m));
}

}  // namespace ccfg
