#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ccfg/color_matrix.hpp"

namespace ccfg {

/// Diagnostics for one run of the 2-dimensional Weisfeiler-Leman
/// stabilization.
struct RefinementTrace {
    int iterations = 0;
    int initial_rank = 0;
    int final_rank = 0;
};

/// Iterate color(a,b) <- (color(a,b), multiset over g of
/// (color(a,g), color(g,b))) until the partition is stable, recoloring
/// canonically (first occurrence, row-major) after every round.
/// Signatures are exact sorted pair lists; no hashing is involved, so
/// colors can never merge by collision.
inline ColorMatrix wl_stabilize(ColorMatrix m, RefinementTrace* trace = nullptr) {
    m.canonicalize();
    const int n = m.n;
    RefinementTrace tr;
    tr.initial_rank = m.rank;
    while (true) {
        using Sig = std::pair<Color, std::vector<std::pair<Color, Color>>>;
        std::map<Sig, Color> next_color;
        ColorMatrix next(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Sig sig;
                sig.first = m.at(a, b);
                sig.second.reserve(n);
                for (int g = 0; g < n; ++g) sig.second.emplace_back(m.at(a, g), m.at(g, b));
                std::sort(sig.second.begin(), sig.second.end());
                auto [it, fresh] = next_color.try_emplace(std::move(sig), Color(next_color.size()));
                next.at(a, b) = it->second;
            }
        next.rank = int(next_color.size());
        if (next.rank == m.rank) break;  // the new partition refines the old one
        next.canonicalize();
        m = std::move(next);
        ++tr.iterations;
    }
    tr.final_rank = m.rank;
    if (trace) *trace = tr;
    return m;
}

/// Initial coloring that separates the diagonal and distinguishes
/// membership in each given relation and its converse.
inline ColorMatrix seed_coloring(int n, const std::vector<std::vector<std::pair<int, int>>>& relations) {
    std::vector<std::vector<char>> in(relations.size(), std::vector<char>(size_t(n) * n, 0));
    for (size_t i = 0; i < relations.size(); ++i)
        for (auto [a, b] : relations[i]) {
            if (a < 0 || b < 0 || a >= n || b >= n) throw out_of_range("relation pair out of range");
            in[i][size_t(a) * n + b] = 1;
        }
    std::map<std::vector<char>, Color> key_color;
    ColorMatrix m(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<char> key;
            key.reserve(2 * relations.size() + 1);
            key.push_back(a == b);
            for (size_t i = 0; i < relations.size(); ++i) {
                key.push_back(in[i][size_t(a) * n + b]);
                key.push_back(in[i][size_t(b) * n + a]);
            }
            auto [it, fresh] = key_color.try_emplace(std::move(key), Color(key_color.size()));
            m.at(a, b) = it->second;
        }
    m.rank = int(key_color.size());
    m.canonicalize();
    return m;
}

/// Recolor the diagonal cell of each listed point with a fresh color.
inline ColorMatrix individualize(ColorMatrix m, const std::vector<int>& points) {
    Color next = 0;
    for (Color c : m.cells) next = std::max(next, c + 1);
    for (int p : points) {
        if (p < 0 || p >= m.n) throw out_of_range("PointOutOfRange");
        m.at(p, p) = next++;
    }
    m.canonicalize();
    return m;
}

}  // namespace ccfg
