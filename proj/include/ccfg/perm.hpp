#pragma once

#include <compare>
#include <numeric>
#include <vector>

#include "ccfg/errors.hpp"

namespace ccfg {

/// A permutation of {0..n-1} as its image sequence. Composition is in
/// action order: (g.then(h))(x) = h(g(x)).
struct Perm {
    std::vector<int> img;

    Perm() = default;
    explicit Perm(std::vector<int> images) : img(std::move(images)) {
        std::vector<char> seen(img.size(), 0);
        for (int v : img) {
            if (v < 0 || v >= int(img.size()) || seen[v])
                throw bad_parameters("image sequence is not a bijection");
            seen[v] = 1;
        }
    }

    static Perm identity(int n) {
        Perm p;
        p.img.resize(n);
        std::iota(p.img.begin(), p.img.end(), 0);
        return p;
    }

    int degree() const { return int(img.size()); }
    int operator()(int x) const { return img[x]; }

    Perm then(const Perm& h) const {
        Perm r;
        r.img.resize(img.size());
        for (size_t i = 0; i < img.size(); ++i) r.img[i] = h.img[img[i]];
        return r;
    }

    Perm inverse() const {
        Perm r;
        r.img.resize(img.size());
        for (size_t i = 0; i < img.size(); ++i) r.img[img[i]] = int(i);
        return r;
    }

    Perm conjugated_by(const Perm& g) const {  // g^-1 * this * g
        return g.inverse().then(*this).then(g);
    }

    bool is_identity() const {
        for (size_t i = 0; i < img.size(); ++i)
            if (img[i] != int(i)) return false;
        return true;
    }

    std::vector<int> fixed_points() const {
        std::vector<int> out;
        for (size_t i = 0; i < img.size(); ++i)
            if (img[i] == int(i)) out.push_back(int(i));
        return out;
    }

    auto operator<=>(const Perm&) const = default;
};

/// Cycle-style permutation builder on n points, e.g. from {{0,1},{2,3}}.
inline Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    Perm p = Perm::identity(n);
    for (const auto& cyc : cycles)
        for (size_t i = 0; i < cyc.size(); ++i) p.img[cyc[i]] = cyc[(i + 1) % cyc.size()];
    return Perm(p.img);
}

}  // namespace ccfg
