#pragma once

#include <algorithm>
#include <vector>

#include "ccfg/errors.hpp"

namespace ccfg {

using Color = int;

// Cell value marking "no relation" in a partial configuration.
inline constexpr Color kNoRel = -1;

/// Raw n x n table of relation indices. Canonical form numbers the
/// colors by first occurrence in a row-major scan, so structurally
/// identical tables serialize identically.
struct ColorMatrix {
    int n = 0;
    int rank = 0;
    std::vector<Color> cells;  // n*n, row-major; kNoRel marks absent cells

    ColorMatrix() = default;
    ColorMatrix(int n_, Color fill = kNoRel) : n(n_), cells(size_t(n_) * n_, fill) {}

    Color& at(int a, int b) { return cells[size_t(a) * n + b]; }
    Color at(int a, int b) const { return cells[size_t(a) * n + b]; }

    bool partial() const {
        return std::find(cells.begin(), cells.end(), kNoRel) != cells.end();
    }

    bool operator==(const ColorMatrix& o) const { return n == o.n && cells == o.cells; }

    /// Relabel colors by first occurrence in row-major order; recomputes rank.
    /// Idempotent. The sentinel is preserved.
    void canonicalize() {
        Color maxc = -1;
        for (Color c : cells) {
            if (c < kNoRel) throw parse_error("negative color index");
            maxc = std::max(maxc, c);
        }
        std::vector<Color> relabel(size_t(maxc) + 1, -1);
        Color next = 0;
        for (Color& c : cells) {
            if (c == kNoRel) continue;
            if (relabel[c] < 0) relabel[c] = next++;
            c = relabel[c];
        }
        rank = next;
    }

    /// True iff every color in [0, rank) occurs and numbering follows
    /// first occurrence in the row-major scan.
    bool is_canonical() const {
        Color next = 0;
        for (Color c : cells) {
            if (c == kNoRel) continue;
            if (c > next) return false;
            if (c == next) ++next;
        }
        return next == rank;
    }
};

}  // namespace ccfg
