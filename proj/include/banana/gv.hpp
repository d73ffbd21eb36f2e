#pragma once

// Gopakumar-Vafa invariant extraction: peeling Laurent data into the
// (y^{1/2} + y^{-1/2})^{2g} basis, the banana GV table from the DT
// coefficient rows, the closed generating-function product route, and the
// K3 (KKV) comparison pipeline.

#include <map>
#include <vector>

#include "banana/banana_dt.hpp"

namespace banana {

/// GV invariants n^g_a keyed by (a, g); entries absent means zero.
struct GVTable {
    long amax = -1;
    std::map<std::pair<long, long>, Rational> entries;

    Rational n(long a, long g) const {
        auto it = entries.find({a, g});
        return it == entries.end() ? Rational(0) : it->second;
    }
    /// Largest genus with a nonzero entry in row a (-1 for an empty row).
    long gmax(long a) const {
        long g = -1;
        for (const auto& [ag, v] : entries)
            if (ag.first == a && v != 0) g = std::max(g, ag.second);
        return g;
    }
};

/// Decompose a finite palindromic Laurent polynomial P(y) into the basis
///   P = sum_g m_g (y^{1/2} + y^{-1/2})^{2g} = sum_g m_g y^{-g} (1+y)^{2g},
/// peeling from the extreme exponent inward.  Returns [m_0, ..., m_gmax];
/// throws if P is not palindromic or the residual fails to vanish.
inline std::vector<Rational> peel_palindromic(const LaurentPoly& p) {
    LaurentPoly r;
    for (const auto& [e, c] : p)
        if (c != 0) r[e] = c;
    if (r.empty()) return {};
    for (const auto& [e, c] : r) {
        auto it = r.find(-e);
        if (it == r.end() || it->second != c)
            throw series_error("peel_palindromic: not palindromic");
    }
    long gmax = -r.begin()->first;
    if (gmax < 0) throw series_error("peel_palindromic: positive lower degree");
    std::vector<Rational> m(static_cast<std::size_t>(gmax) + 1);
    for (long g = gmax; g >= 0; --g) {
        Rational mg = r.count(-g) ? r.at(-g) : Rational(0);
        m[g] = mg;
        for (long j = 0; j <= 2 * g; ++j) {
            r[-g + j] -= mg * binomial(2 * g, j);
            if (r[-g + j] == 0) r.erase(-g + j);
        }
    }
    if (!r.empty()) throw series_error("peel_palindromic: nonzero residual");
    return m;
}

/// Series-mode extraction from a bounded-below ascending row a(beta, k):
///   sum_g n^g (y^{1/2}+y^{-1/2})^{2g} = (y^{1/2}+y^{-1/2})^2 sum_k a(beta,k)(-y)^k.
/// Dividing by the g = 1 basis element: with A(y) = sum_k a_k (-y)^k,
///   A(y) = sum_{g>=1} n^g y^{1-g} (1+y)^{2g-2} + n^0 * (y/(1+y)^2)-ascending,
/// where the g = 0 kernel expands as sum_{k>=1} (-1)^{k-1} k y^k.  Peels the
/// polynomial part from the lowest exponent, reads n^0 off the residual, and
/// verifies the residual matches the kernel on the whole window.
/// `row` must contain every nonzero a(beta,k) with k <= kwin.
inline std::vector<Rational> gv_from_rows(const std::map<long, Rational>& row,
                                          long kwin) {
    std::map<long, Rational> a;  // A(y) coefficients on [k_min, kwin]
    for (const auto& [k, v] : row)
        if (v != 0 && k <= kwin) a[k] = ((k % 2 + 2) % 2 == 0) ? v : -v;
    if (a.empty()) return {};
    long kmin = a.begin()->first;
    if (kmin > 1)
        throw series_error("gv_from_rows: row not in GV form (support starts past 1)");
    long gmax = 1 - kmin;  // >= 0
    std::vector<Rational> n(static_cast<std::size_t>(gmax) + 1);
    for (long g = gmax; g >= 1; --g) {
        Rational ng = a.count(1 - g) ? a.at(1 - g) : Rational(0);
        n[g] = ng;
        for (long j = 0; j <= 2 * g - 2 && 1 - g + j <= kwin; ++j)
            a[1 - g + j] -= ng * binomial(2 * g - 2, j);
    }
    for (long e = kmin; e <= 0; ++e)
        if (a.count(e) && a.at(e) != 0)
            throw series_error("gv_from_rows: residual below the g=0 kernel");
    Rational n0 = a.count(1) ? a.at(1) : Rational(0);
    n[0] = n0;
    for (long k = 1; k <= kwin; ++k) {
        Rational want = n0 * ((k % 2 == 1) ? k : -k);
        Rational got = a.count(k) ? a.at(k) : Rational(0);
        if (got != want)
            throw series_error("gv_from_rows: residual is not the g=0 kernel");
    }
    return n;
}

/// The banana GV table from the DT coefficient rows a(beta_d, k) = 12 c(||d||, k);
/// invariants depend on the class through a = ||d|| only.  Every extraction is
/// re-run with a +6 window and must agree.
inline GVTable gv_banana_table(long amax) {
    CoeffTable tab = c_table(amax);
    GVTable out;
    out.amax = amax;
    for (const auto& [a, r] : tab.rows) {
        if (r.is_zero()) continue;
        long kwin = std::max(1 - r.k_min(), 0L) + 18;
        std::map<long, Rational> row;
        for (long k = r.k_min(); k <= kwin + 6; ++k) row[k] = 12 * r.c(k);
        std::vector<Rational> n = gv_from_rows(row, kwin);
        if (n != gv_from_rows(row, kwin + 6))
            throw series_error("gv_banana_table: window failed to stabilize");
        for (long g = 0; g < static_cast<long>(n.size()); ++g)
            if (n[g] != 0) out.entries[{a, g}] = n[g];
    }
    return out;
}

namespace gv_detail {

/// Expand an infinite (Q,y) product given per-n factor data and slice it by
/// Q-exponent into Laurent polynomials in y; exact because every y power is
/// carried by at least one Q power.
inline std::map<long, LaurentPoly> product_slices(const std::vector<ProductFactor>& fs,
                                                  long qcap) {
    TruncSeries shape =
        TruncSeries::zero({"Q", "y"}, 1, {{0, qcap}, {-qcap, qcap}}, std::nullopt,
                          {true, false});
    TruncSeries z = product_expand(fs, shape);
    std::map<long, LaurentPoly> out;
    for (const auto& [e, c] : z.terms()) out[e[0]][e[1]] = c;
    return out;
}

}  // namespace gv_detail

/// Closed-product route: the Q^{a+1} slice of
///   12 prod_n (1+yQ^{2n-1})(1+y^{-1}Q^{2n-1})(1-Q^{2n})
///           / [(1+yQ^{4n})^2 (1+y^{-1}Q^{4n})^2 (1-Q^{4n})^2]
/// is sum_g n^g_a (y^{1/2}+y^{-1/2})^{2g}.  Returns map a -> slice.
inline std::map<long, LaurentPoly> gv_genfun_expand(long amax) {
    long qcap = amax + 1;
    std::vector<ProductFactor> fs;
    for (long n = 1; 2 * n - 1 <= qcap; ++n) {
        fs.push_back({{2 * n - 1, 1}, -1, -1});
        fs.push_back({{2 * n - 1, -1}, -1, -1});
        if (2 * n <= qcap) fs.push_back({{2 * n, 0}, -1, 1});
        if (4 * n <= qcap) {
            fs.push_back({{4 * n, 1}, 2, -1});
            fs.push_back({{4 * n, -1}, 2, -1});
            fs.push_back({{4 * n, 0}, 2, 1});
        }
    }
    std::map<long, LaurentPoly> slices = gv_detail::product_slices(fs, qcap);
    std::map<long, LaurentPoly> out;
    for (auto& [q, s] : slices) {
        for (auto& [e, c] : s) c *= 12;
        out[q - 1] = std::move(s);
    }
    return out;
}

/// GV table via the closed-product route (polynomial-mode peeling).
inline GVTable gv_genfun_table(long amax) {
    GVTable out;
    out.amax = amax;
    for (const auto& [a, slice] : gv_genfun_expand(amax)) {
        std::vector<Rational> m = peel_palindromic(slice);
        for (long g = 0; g < static_cast<long>(m.size()); ++g)
            if (m[g] != 0) out.entries[{a, g}] = m[g];
    }
    return out;
}

/// KKV pipeline for K3: slices of
///   prod_n 1 / [(1+yQ^n)^2 (1+y^{-1}Q^n)^2 (1-Q^n)^{20}],
/// Q^{a+1} slice peeled in the same basis (no divisibility-by-12 structure).
inline GVTable kkv_k3_table(long amax) {
    long qcap = amax + 1;
    std::vector<ProductFactor> fs;
    for (long n = 1; n <= qcap; ++n) {
        fs.push_back({{n, 1}, 2, -1});
        fs.push_back({{n, -1}, 2, -1});
        fs.push_back({{n, 0}, 20, 1});
    }
    GVTable out;
    out.amax = amax;
    for (const auto& [q, slice] : gv_detail::product_slices(fs, qcap)) {
        std::vector<Rational> m = peel_palindromic(slice);
        for (long g = 0; g < static_cast<long>(m.size()); ++g)
            if (m[g] != 0) out.entries[{q - 1, g}] = m[g];
    }
    return out;
}

}  // namespace banana
