#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "ccfg/perm.hpp"

namespace ccfg {

/// Base-and-strong-generators stabilizer chain, built top-down by plain
/// Schreier-Sims: each level stores the orbit transversal of its base
/// point, and the next level is generated by all (deduplicated) Schreier
/// generators. Exact order and membership without enumerating the group.
/// Sifting is skipped on construction; the deduplicated generator sets
/// stay small at desk scale and correctness follows directly from
/// Schreier's lemma.
class StabChain {
  public:
    StabChain(int degree, const std::vector<Perm>& gens, std::vector<int> preferred_base = {})
        : degree_(degree), preferred_base_(std::move(preferred_base)) {
        std::set<Perm> current;
        for (const Perm& g : gens) {
            if (g.degree() != degree_) throw bad_parameters("generator degree mismatch");
            if (!g.is_identity()) current.insert(g);
        }
        while (!current.empty()) {
            Level lv;
            lv.base_point = pick_base_point(current);
            lv.gens.assign(current.begin(), current.end());
            lv.transversal.emplace(lv.base_point, Perm::identity(degree_));
            std::set<Perm> next;
            std::vector<int> queue{lv.base_point};
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                int beta = queue[qi];
                const Perm t = lv.transversal.at(beta);
                for (const Perm& g : lv.gens) {
                    int gamma = g(beta);
                    auto it = lv.transversal.find(gamma);
                    if (it == lv.transversal.end()) {
                        lv.transversal.emplace(gamma, t.then(g));
                        queue.push_back(gamma);
                    } else {
                        // Schreier generator t g u^-1 fixes the base point
                        Perm schreier = t.then(g).then(it->second.inverse());
                        if (!schreier.is_identity()) next.insert(std::move(schreier));
                    }
                }
            }
            base_.push_back(lv.base_point);
            levels_.push_back(std::move(lv));
            current = std::move(next);
        }
    }

    unsigned long long order() const {
        unsigned long long o = 1;
        for (const auto& lv : levels_) o *= lv.transversal.size();
        return o;
    }

    bool contains(const Perm& p) const {
        if (p.degree() != degree_) return false;
        Perm residue = p;
        for (const auto& lv : levels_) {
            auto it = lv.transversal.find(residue(lv.base_point));
            if (it == lv.transversal.end()) return false;
            residue = residue.then(it->second.inverse());
        }
        return residue.is_identity();
    }

    const std::vector<int>& base() const { return base_; }

    /// Generators of the pointwise stabilizer of base()[0..level): the
    /// stored generator set of that level (Schreier's lemma).
    std::vector<Perm> level_generators(size_t level) const {
        if (level >= levels_.size()) return {};
        return levels_[level].gens;
    }

  private:
    struct Level {
        int base_point = -1;
        std::vector<Perm> gens;           // generators fixing all earlier base points
        std::map<int, Perm> transversal;  // beta -> perm taking base_point to beta
    };

    int degree_;
    std::vector<int> preferred_base_;
    std::vector<int> base_;
    std::vector<Level> levels_;

    int pick_base_point(const std::set<Perm>& gens) const {
        for (int b : preferred_base_)
            for (const Perm& g : gens)
                if (g(b) != b) return b;
        for (int x = 0; x < degree_; ++x)
            for (const Perm& g : gens)
                if (g(x) != x) return x;
        throw error("internal: no generator moves any point");
    }
};

/// Generator-list permutation group with lazy stabilizer chain.
struct PermGroup {
    int degree = 0;
    std::vector<Perm> gens;

    PermGroup() = default;
    PermGroup(int degree_, std::vector<Perm> gens_) : degree(degree_), gens(std::move(gens_)) {
        for (const Perm& g : gens)
            if (g.degree() != degree) throw bad_parameters("generator degree mismatch");
    }

    const StabChain& chain(std::vector<int> preferred_base = {}) const {
        if (!chain_ || preferred_base != chain_base_) {
            chain_ = std::make_shared<StabChain>(degree, gens, preferred_base);
            chain_base_ = std::move(preferred_base);
        }
        return *chain_;
    }

    unsigned long long order() const { return chain().order(); }
    bool contains(const Perm& p) const { return chain().contains(p); }

    std::vector<int> orbit(int a) const {
        std::vector<int> out{a};
        std::vector<char> seen(degree, 0);
        seen[a] = 1;
        for (size_t i = 0; i < out.size(); ++i)
            for (const Perm& g : gens) {
                int b = g(out[i]);
                if (!seen[b]) {
                    seen[b] = 1;
                    out.push_back(b);
                }
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool is_transitive() const { return degree > 0 && int(orbit(0).size()) == degree; }

    /// Full element set via breadth-first closure, capped.
    std::vector<Perm> elements(size_t cap = 1000000) const {
        std::set<Perm> seen{Perm::identity(degree)};
        std::vector<Perm> queue{Perm::identity(degree)};
        for (size_t i = 0; i < queue.size(); ++i) {
            for (const Perm& g : gens) {
                Perm h = queue[i].then(g);
                if (seen.insert(h).second) {
                    if (seen.size() > cap) throw too_large("group enumeration exceeds cap");
                    queue.push_back(std::move(h));
                }
            }
        }
        return {seen.begin(), seen.end()};
    }

  private:
    mutable std::shared_ptr<StabChain> chain_;
    mutable std::vector<int> chain_base_;
};

/// Pointwise stabilizer of alpha, from a chain based at alpha.
inline PermGroup point_stabilizer(const PermGroup& g, int alpha) {
    if (alpha < 0 || alpha >= g.degree) throw out_of_range("point index out of range");
    StabChain chain(g.degree, g.gens, {alpha});
    std::vector<Perm> stab_gens;
    if (!chain.base().empty() && chain.base()[0] == alpha)
        stab_gens = chain.level_generators(1);
    else
        stab_gens = chain.level_generators(0);  // alpha was never moved
    if (stab_gens.empty()) stab_gens.push_back(Perm::identity(g.degree));
    return PermGroup(g.degree, std::move(stab_gens));
}

}  // namespace ccfg
