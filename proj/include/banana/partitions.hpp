#pragma once

// 2D partitions with hook/conjugate combinatorics, 3D partitions asymptotic
// to a partition triple (with normalized volume), and skew Schur functions
// evaluated at principal specializations.

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "banana/series.hpp"

namespace banana {

/// A partition: weakly decreasing positive parts; empty = the zero partition.
struct Partition {
    std::vector<long> parts;

    Partition() = default;
    Partition(std::initializer_list<long> p) : parts(p) { validate(); }
    explicit Partition(std::vector<long> p) : parts(std::move(p)) { validate(); }

    void validate() const {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw series_error("partition parts must be positive");
            if (i && parts[i] > parts[i - 1])
                throw series_error("partition parts must be weakly decreasing");
        }
    }

    long size() const {
        long s = 0;
        for (long p : parts) s += p;
        return s;
    }
    long norm2() const {  // ||R||^2 = sum of squared parts
        long s = 0;
        for (long p : parts) s += p * p;
        return s;
    }
    long length() const { return static_cast<long>(parts.size()); }
    long part(long i) const {  // 1-based, 0 beyond the length
        return (i >= 1 && i <= length()) ? parts[i - 1] : 0;
    }
    bool contains(const Partition& other) const {
        if (other.length() > length()) return false;
        for (long i = 1; i <= other.length(); ++i)
            if (part(i) < other.part(i)) return false;
        return true;
    }
    /// Is the 0-based cell (r, c) in the diagram?
    bool has_cell(long r, long c) const {
        return r >= 0 && c >= 0 && r < length() && c < parts[r];
    }
    friend auto operator<=>(const Partition&, const Partition&) = default;
};

inline Partition conjugate(const Partition& r) {
    std::vector<long> p;
    long c = r.length() ? r.parts[0] : 0;
    for (long j = 1; j <= c; ++j) {
        long n = 0;
        for (long x : r.parts) n += (x >= j) ? 1 : 0;
        p.push_back(n);
    }
    return Partition(std::move(p));
}

/// Hook lengths h_{ij} = R_i + R'_j - i - j + 1 over the diagram, row-major.
inline std::vector<long> hooks(const Partition& r) {
    Partition c = conjugate(r);
    std::vector<long> h;
    for (long i = 1; i <= r.length(); ++i)
        for (long j = 1; j <= r.part(i); ++j) h.push_back(r.part(i) + c.part(j) - i - j + 1);
    return h;
}

/// All partitions of size <= max_size, ordered by (size, lexicographic).
inline std::vector<Partition> enumerate_partitions(long max_size) {
    std::vector<Partition> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, long remaining, long maxpart) -> void {
        out.emplace_back(Partition(std::vector<long>(cur)));
        for (long p = std::min(remaining, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    std::vector<std::vector<Partition>> by_size(static_cast<std::size_t>(max_size) + 1);
    rec(rec, max_size, max_size);
    for (auto& p : out) by_size[static_cast<std::size_t>(p.size())].push_back(p);
    out.clear();
    for (auto& bucket : by_size) {
        std::sort(bucket.begin(), bucket.end(),
                  [](const Partition& a, const Partition& b) { return a.parts < b.parts; });
        for (auto& p : bucket) out.push_back(std::move(p));
    }
    return out;
}

// --------------------------------------------------------------------------
// 3D partitions asymptotic to a triple of legs.
//
// A box is (i,j,k) in N^3.  The three infinite leg cylinders are
//   leg 1 (along the i-axis): (k,j) in the diagram of R1,
//   leg 2 (along the j-axis): (i,k) in the diagram of R2,
//   leg 3 (along the k-axis): (j,i) in the diagram of R3,
// (rows of each cross-section are read along the *following* axis in cyclic
// order, which is the orientation under which the vertex formula's leg roles
// match this enumeration),
// and a configuration is the union of the cylinders with finitely many extra
// boxes, downward-closed as a whole.  The normalized volume counts each box
// with weight 1 - (#legs containing it), so extra boxes add 1 each and the
// leg overlaps contribute a fixed negative base volume.

struct Plane3D {
    std::array<Partition, 3> legs;
    std::vector<std::array<long, 3>> boxes;  // extra boxes, sorted
    long volume = 0;                         // normalized volume
};

namespace detail3d {

inline int leg_count(const std::array<Partition, 3>& legs, long i, long j, long k) {
    int n = 0;
    if (legs[0].has_cell(k, j)) ++n;
    if (legs[1].has_cell(i, k)) ++n;
    if (legs[2].has_cell(j, i)) ++n;
    return n;
}

/// Sum of (1 - n) over boxes lying in n >= 2 legs; finite by construction.
inline long base_volume(const std::array<Partition, 3>& legs) {
    long bi = std::max(legs[1].length(), legs[2].length() ? legs[2].parts[0] : 0);
    long bj = std::max(legs[2].length(), legs[0].length() ? legs[0].parts[0] : 0);
    long bk = std::max(legs[0].length(), legs[1].length() ? legs[1].parts[0] : 0);
    long v = 0;
    for (long i = 0; i < bi; ++i)
        for (long j = 0; j < bj; ++j)
            for (long k = 0; k < bk; ++k) {
                int n = leg_count(legs, i, j, k);
                if (n >= 2) v += 1 - n;
            }
    return v;
}

}  // namespace detail3d

/// All 3D partitions asymptotic to (R1,R2,R3) with normalized volume <= vmax,
/// each exactly once, ordered by (volume, boxes).
inline std::vector<Plane3D> enumerate_3d_asymptotic(const Partition& r1,
                                                    const Partition& r2,
                                                    const Partition& r3, long vmax) {
    std::array<Partition, 3> legs{r1, r2, r3};
    const long base = detail3d::base_volume(legs);
    const long budget = vmax - base;  // max number of extra boxes
    std::vector<Plane3D> out;
    if (budget < 0) return out;

    // Any extra box's coordinates are bounded by the budget plus the reach of
    // the cylinders along that axis (a taller box forces a chain of extra
    // boxes beneath it along the axis).
    long bi = budget + std::max(legs[1].length(), legs[2].length() ? legs[2].parts[0] : 0);
    long bj = budget + std::max(legs[2].length(), legs[0].length() ? legs[0].parts[0] : 0);
    long bk = budget + std::max(legs[0].length(), legs[1].length() ? legs[1].parts[0] : 0);

    // Candidate extra boxes in a fixed linear extension of the coordinatewise
    // order, so each downward-closed set is produced exactly once by adding
    // boxes in increasing position.
    std::vector<std::array<long, 3>> cand;
    for (long i = 0; i < bi; ++i)
        for (long j = 0; j < bj; ++j)
            for (long k = 0; k < bk; ++k)
                if (detail3d::leg_count(legs, i, j, k) == 0) cand.push_back({i, j, k});
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        long sa = a[0] + a[1] + a[2], sb = b[0] + b[1] + b[2];
        return std::tie(sa, a[0], a[1]) < std::tie(sb, b[0], b[1]);
    });

    std::map<std::array<long, 3>, bool> chosen;
    auto present = [&](long i, long j, long k) {
        if (i < 0 || j < 0 || k < 0) return true;
        if (detail3d::leg_count(legs, i, j, k) > 0) return true;
        auto it = chosen.find({i, j, k});
        return it != chosen.end() && it->second;
    };

    std::vector<std::array<long, 3>> picked;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        Plane3D cfg;
        cfg.legs = legs;
        cfg.boxes = picked;
        std::sort(cfg.boxes.begin(), cfg.boxes.end());
        cfg.volume = base + static_cast<long>(picked.size());
        out.push_back(std::move(cfg));
        if (static_cast<long>(picked.size()) == budget) return;
        for (std::size_t idx = from; idx < cand.size(); ++idx) {
            auto [i, j, k] = cand[idx];
            if (!present(i - 1, j, k) || !present(i, j - 1, k) || !present(i, j, k - 1))
                continue;
            chosen[{i, j, k}] = true;
            picked.push_back(cand[idx]);
            self(self, idx + 1);
            picked.pop_back();
            chosen[{i, j, k}] = false;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const Plane3D& a, const Plane3D& b) {
        return std::tie(a.volume, a.boxes) < std::tie(b.volume, b.boxes);
    });
    return out;
}

/// Generating function sum over asymptotic 3D partitions of p^{|pi|},
/// exact for exponents <= vmax.  Same enumeration as
/// enumerate_3d_asymptotic, but only counts configurations per volume
/// (flat occupancy grid, no per-configuration materialization).
inline TruncSeries plane3d_generating_function(const Partition& r1, const Partition& r2,
                                               const Partition& r3, long vmax) {
    std::array<Partition, 3> legs{r1, r2, r3};
    const long base = detail3d::base_volume(legs);
    TruncSeries s({"p"}, 1, {{std::min(base, 0L), vmax}});
    const long budget = vmax - base;
    if (budget < 0) return s;

    long bi = budget + std::max(legs[1].length(), legs[2].length() ? legs[2].parts[0] : 0);
    long bj = budget + std::max(legs[2].length(), legs[0].length() ? legs[0].parts[0] : 0);
    long bk = budget + std::max(legs[0].length(), legs[1].length() ? legs[1].parts[0] : 0);
    bi = std::max(bi, 1L), bj = std::max(bj, 1L), bk = std::max(bk, 1L);

    auto id = [&](long i, long j, long k) { return (i * bj + j) * bk + k; };
    std::vector<char> occupied(static_cast<std::size_t>(bi) * bj * bk, 0);
    for (long i = 0; i < bi; ++i)
        for (long j = 0; j < bj; ++j)
            for (long k = 0; k < bk; ++k)
                if (detail3d::leg_count(legs, i, j, k) > 0) occupied[id(i, j, k)] = 1;

    std::vector<std::array<long, 3>> cand;
    for (long i = 0; i < bi; ++i)
        for (long j = 0; j < bj; ++j)
            for (long k = 0; k < bk; ++k)
                if (!occupied[id(i, j, k)]) cand.push_back({i, j, k});
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        long sa = a[0] + a[1] + a[2], sb = b[0] + b[1] + b[2];
        return std::tie(sa, a[0], a[1]) < std::tie(sb, b[0], b[1]);
    });

    auto supported = [&](long i, long j, long k) {
        return (i == 0 || occupied[id(i - 1, j, k)]) &&
               (j == 0 || occupied[id(i, j - 1, k)]) &&
               (k == 0 || occupied[id(i, j, k - 1)]);
    };
    std::vector<long> counts(static_cast<std::size_t>(budget) + 1, 0);
    auto rec = [&](auto&& self, std::size_t from, long taken) -> void {
        ++counts[taken];
        if (taken == budget) return;
        for (std::size_t idx = from; idx < cand.size(); ++idx) {
            auto [i, j, k] = cand[idx];
            if (!supported(i, j, k)) continue;
            occupied[id(i, j, k)] = 1;
            self(self, idx + 1, taken + 1);
            occupied[id(i, j, k)] = 0;
        }
    };
    rec(rec, 0, 0);
    for (long n = 0; n <= budget; ++n) s.add_term({base + n}, counts[n]);
    return s;
}

// --------------------------------------------------------------------------
// Principal specializations and skew Schur functions.

/// The variable list p^{-C-rho} with rho = (-1/2, -3/2, ...): the i-th entry
/// (1-based) is p^{i - C_i - 1/2}.  Exponents are returned in half-integer
/// units (exponent denominator 2).
struct SpecList {
    Partition base;    // C
    long cutoff = 0;   // number of entries N

    long exponent_halves(long i) const { return 2 * (i - base.part(i)) - 1; }
};

/// s_{A/B}(x) for the principal specialization x, summed over semistandard
/// skew tableaux with entries in 1..x.cutoff; returns a series in p with
/// exponent denominator 2, exact for p-exponents <= cap once the cutoff
/// passes the stabilization threshold (see skew_schur_spec below).
inline TruncSeries skew_schur_spec_at(const Partition& a, const Partition& b,
                                      const SpecList& x, long cap) {
    const long n = x.cutoff;
    // Support lower bound: every entry exponent is >= the global minimum.
    long minexp = 1;
    for (long i = 1; i <= std::max<long>(n, x.base.length() + 1); ++i)
        minexp = std::min(minexp, x.exponent_halves(i));
    long nboxes = a.size() - b.size();
    TruncSeries s({"p"}, 2, {{std::min(minexp * std::max(nboxes, 0L), 0L), 2 * cap}});
    if (!a.contains(b)) return s;  // zero by convention
    if (nboxes == 0) {
        s.add_term({0}, 1);
        return s;
    }

    // Suffix minima of the entry exponents, for pruning.
    std::vector<long> sufmin(static_cast<std::size_t>(n) + 2, kExpInf);
    for (long v = n; v >= 1; --v)
        sufmin[static_cast<std::size_t>(v)] =
            std::min(sufmin[static_cast<std::size_t>(v) + 1], x.exponent_halves(v));

    // Cells of A/B in row-major order.
    struct Cell {
        long r, c;
    };
    std::vector<Cell> cells;
    for (long r = 1; r <= a.length(); ++r)
        for (long c = b.part(r) + 1; c <= a.part(r); ++c) cells.push_back({r, c});

    // values[r][c] (1-based) holds the tableau entry; 0 = unset.
    std::vector<std::vector<long>> val(static_cast<std::size_t>(a.length()) + 1,
                                       std::vector<long>(
                                           static_cast<std::size_t>(a.part(1)) + 1, 0));
    auto rec = [&](auto&& self, std::size_t idx, long expsum) -> void {
        if (idx == cells.size()) {
            s.add_term({expsum}, 1);
            return;
        }
        auto [r, c] = cells[idx];
        long lo = 1;
        if (c > b.part(r) + 1 && val[r][c - 1] > 0) lo = std::max(lo, val[r][c - 1]);
        if (r > 1 && c <= a.part(r - 1) && c > b.part(r - 1))
            lo = std::max(lo, val[r - 1][c] + 1);
        long remaining = static_cast<long>(cells.size() - idx);
        long others = (remaining - 1) * std::min(0L, sufmin[1]);
        for (long v = lo; v <= n; ++v) {
            long bound = expsum + x.exponent_halves(v) + others;
            if (bound > 2 * cap) {
                // Entry exponents grow strictly beyond the base length, so
                // larger values cannot come back under the cap.
                if (v > x.base.length()) break;
                continue;
            }
            val[r][c] = v;
            self(self, idx + 1, expsum + x.exponent_halves(v));
            val[r][c] = 0;
        }
    };
    rec(rec, 0, 0);
    return s;
}

/// skew_schur_spec_at with the cutoff auto-derived from the caps and
/// certified by a +5 stabilization re-run.
inline TruncSeries skew_schur_spec(const Partition& a, const Partition& b,
                                   const Partition& c, long cap) {
    SpecList x{c, 0};
    x.cutoff = cap + std::max(c.part(1), c.length()) + a.size() + 2;
    if (x.cutoff < 1) x.cutoff = 1;
    TruncSeries s = skew_schur_spec_at(a, b, x, cap);
    SpecList x5{c, x.cutoff + 5};
    if (!(skew_schur_spec_at(a, b, x5, cap) == s))
        throw series_error("skew_schur_spec: specialization did not stabilize");
    return s;
}

}  // namespace banana
