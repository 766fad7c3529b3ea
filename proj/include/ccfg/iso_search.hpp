#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "ccfg/configuration.hpp"

namespace ccfg {

/// Backtracking search for a point bijection f with
/// color_b(f(x), f(y)) = sigma(color_a(x, y)), optionally extending a
/// prescribed partial assignment. sigma must be a bijection of colors
/// (identity for combinatorial automorphisms).
///
/// Candidate domains start from static invariants (diagonal color and
/// the sigma-image of the row color multiset) and are filtered after
/// each decision. The next variable is always one of smallest domain,
/// ties broken by least point index; candidate values are tried in
/// ascending order, so the search is deterministic.
class IsoSearch {
  public:
    IsoSearch(const Configuration& a, const Configuration& b, std::vector<int> sigma)
        : a_(a), b_(b), sigma_(std::move(sigma)) {
        if (a_.rank() != b_.rank() || int(sigma_.size()) != a_.rank())
            throw bad_parameters("color map has the wrong size");
        std::vector<char> hit(b_.rank(), 0);
        for (int v : sigma_) {
            if (v < 0 || v >= b_.rank() || hit[v]) throw bad_parameters("color map is not a bijection");
            hit[v] = 1;
        }
    }

    /// First solution extending `forced` (pairs x -> y), or nullopt.
    std::optional<std::vector<int>> find(const std::vector<std::pair<int, int>>& forced = {}) {
        if (a_.n() != b_.n()) return std::nullopt;
        const int n = a_.n();
        std::vector<std::vector<char>> dom(n, std::vector<char>(n, 0));
        // static filter: row color multisets through sigma
        std::vector<std::vector<int>> prof_a(n), prof_b(n);
        for (int x = 0; x < n; ++x) {
            std::vector<int> pa, pb;
            for (int y = 0; y < n; ++y) {
                pa.push_back(sigma_[a_.matrix.at(x, y)]);
                pb.push_back(b_.matrix.at(x, y));
            }
            std::sort(pa.begin(), pa.end());
            std::sort(pb.begin(), pb.end());
            prof_a[x] = std::move(pa);
            prof_b[x] = std::move(pb);
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                dom[x][y] = sigma_[a_.matrix.at(x, x)] == b_.matrix.at(y, y) && prof_a[x] == prof_b[y];
        std::vector<int> assign(n, -1);
        std::vector<char> used(n, 0);
        for (auto [x, y] : forced) {
            if (x < 0 || x >= n || y < 0 || y >= n) throw out_of_range("forced pair out of range");
            if (!dom[x][y] || used[y]) return std::nullopt;
            if (!place(assign, used, dom, x, y)) return std::nullopt;
        }
        if (solve(assign, used, dom)) return assign;
        return std::nullopt;
    }

  private:
    const Configuration& a_;
    const Configuration& b_;
    std::vector<int> sigma_;

    // Assign x -> y and filter every open domain against the decision.
    bool place(std::vector<int>& assign, std::vector<char>& used,
               std::vector<std::vector<char>>& dom, int x, int y) {
        const int n = a_.n();
        assign[x] = y;
        used[y] = 1;
        for (int u = 0; u < n; ++u) {
            if (assign[u] >= 0) continue;
            for (int v = 0; v < n; ++v) {
                if (!dom[u][v]) continue;
                if (used[v] || sigma_[a_.matrix.at(x, u)] != b_.matrix.at(y, v) ||
                    sigma_[a_.matrix.at(u, x)] != b_.matrix.at(v, y))
                    dom[u][v] = 0;
            }
        }
        for (int u = 0; u < n; ++u) {
            if (assign[u] >= 0) continue;
            bool any = false;
            for (int v = 0; v < n; ++v) any = any || dom[u][v];
            if (!any) return false;
        }
        return true;
    }

    bool solve(std::vector<int>& assign, std::vector<char>& used,
               std::vector<std::vector<char>>& dom) {
        const int n = a_.n();
        int best = -1, best_size = n + 1;
        for (int u = 0; u < n; ++u) {
            if (assign[u] >= 0) continue;
            int sz = 0;
            for (int v = 0; v < n; ++v) sz += dom[u][v];
            if (sz < best_size) {
                best = u;
                best_size = sz;
            }
        }
        if (best < 0) return true;  // everything assigned
        for (int v = 0; v < n; ++v) {
            if (!dom[best][v] || used[v]) continue;
            std::vector<int> assign2 = assign;
            std::vector<char> used2 = used;
            std::vector<std::vector<char>> dom2 = dom;
            if (place(assign2, used2, dom2, best, v) && solve(assign2, used2, dom2)) {
                assign = std::move(assign2);
                used = std::move(used2);
                dom = std::move(dom2);
                return true;
            }
        }
        return false;
    }
};

/// Combinatorial isomorphism realizing a given color bijection.
inline std::optional<std::vector<int>> realize_iso(const Configuration& a, const Configuration& b,
                                                   const std::vector<int>& sigma,
                                                   const std::vector<std::pair<int, int>>& forced = {}) {
    return IsoSearch(a, b, sigma).find(forced);
}

/// Combinatorial automorphism extending x_i -> y_i, sigma = identity.
inline std::optional<std::vector<int>> realize_automorphism(
    const Configuration& a, const std::vector<std::pair<int, int>>& forced = {}) {
    std::vector<int> id(a.rank());
    for (int r = 0; r < a.rank(); ++r) id[r] = r;
    return realize_iso(a, a, id, forced);
}

}  // namespace ccfg
