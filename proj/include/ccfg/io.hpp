#pragma once

#include <climits>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ccfg/color_matrix.hpp"
#include "ccfg/errors.hpp"
#include "ccfg/perm.hpp"
#include "ccfg/perm_group.hpp"

namespace ccfg {

/// Scheme text format: line 1 is "n rank", then n lines of n color
/// indices; "-" marks a sentinel cell. The hanaki flag accepts 1-based
/// external tables and re-canonicalizes on load.
inline ColorMatrix read_matrix(std::istream& in, bool hanaki = false) {
    int n = 0, rank = 0;
    if (!(in >> n >> rank)) throw parse_error("expected header: n rank");
    if (n <= 0 || rank <= 0) throw parse_error("degree and rank must be positive");
    ColorMatrix m(n);
    int max_seen = -1, min_seen = INT_MAX;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::string tok;
            if (!(in >> tok)) throw parse_error("truncated matrix");
            if (tok == "-") {
                m.at(i, j) = kNoRel;
                continue;
            }
            int v = 0;
            try {
                size_t pos = 0;
                v = std::stoi(tok, &pos);
                if (pos != tok.size()) throw parse_error("bad cell: " + tok);
            } catch (const std::exception&) {
                throw parse_error("bad cell: " + tok);
            }
            if (v < 0) throw parse_error("negative color");
            m.at(i, j) = v;
            max_seen = std::max(max_seen, v);
            min_seen = std::min(min_seen, v);
        }
    if (max_seen < 0) throw parse_error("empty matrix");
    if (hanaki && min_seen > 0) {
        // 1-based external table: shift to 0-based before recoloring
        for (Color& c : m.cells)
            if (c != kNoRel) c -= min_seen;
        max_seen -= min_seen;
    }
    if (max_seen >= rank && !hanaki) throw parse_error("color index exceeds declared rank");
    m.rank = max_seen + 1;
    m.canonicalize();
    if (!hanaki && m.rank != rank) throw parse_error("declared rank does not match the table");
    return m;
}

inline void write_matrix(std::ostream& out, const ColorMatrix& m) {
    out << m.n << " " << m.rank << "\n";
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            if (j) out << " ";
            if (m.at(i, j) == kNoRel)
                out << "-";
            else
                out << m.at(i, j);
        }
        out << "\n";
    }
}

/// Group text format: line 1 is n, each following nonempty line one
/// generator as n space-separated images (0-based).
inline PermGroup read_group(std::istream& in) {
    int n = 0;
    if (!(in >> n)) throw parse_error("expected degree");
    if (n <= 0) throw parse_error("degree must be positive");
    std::vector<Perm> gens;
    while (true) {
        std::vector<int> img(n);
        if (!(in >> img[0])) break;
        for (int i = 1; i < n; ++i)
            if (!(in >> img[i])) throw parse_error("truncated generator line");
        try {
            gens.emplace_back(Perm(std::move(img)));
        } catch (const bad_parameters& e) {
            throw parse_error(std::string("bad generator: ") + e.what());
        }
    }
    if (gens.empty()) gens.push_back(Perm::identity(n));
    return PermGroup(n, std::move(gens));
}

inline void write_group(std::ostream& out, const PermGroup& g) {
    out << g.degree << "\n";
    for (const Perm& p : g.gens) {
        for (int i = 0; i < g.degree; ++i) {
            if (i) out << " ";
            out << p(i);
        }
        out << "\n";
    }
}

inline void write_perm(std::ostream& out, const Perm& p) {
    for (int i = 0; i < p.degree(); ++i) {
        if (i) out << " ";
        out << p(i);
    }
    out << "\n";
}

}  // namespace ccfg
