#pragma once

// The coefficient table c(a,k) behind the closed-form DT partition function,
// computed by three independent routes; the equivariant elliptic genus of C^2
// and Hilb^m(C^2) (fixed-point localization and the DMVV infinite product);
// and the closed product form of the DT partition function itself.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "banana/partitions.hpp"
#include "banana/qforms.hpp"
#include "banana/series.hpp"

namespace banana {

/// Laurent polynomial in one variable as exponent -> coefficient.
using LaurentPoly = std::map<long, Rational>;

/// Curve class (d1,d2,d3) with the quadratic norm
/// ||d|| = 2(d1 d2 + d2 d3 + d3 d1) - d1^2 - d2^2 - d3^2.
struct CurveClass {
    std::array<long, 3> d{0, 0, 0};

    long norm() const {
        auto [a, b, c] = d;
        return 2 * (a * b + b * c + c * a) - a * a - b * b - c * c;
    }
};

/// Weak-Jacobi-form coefficient table c(n,l).
struct JacobiCoeffs {
    long weight = 0;
    long index = 1;
    long nmax = 0;  // coefficients complete for 0 <= n <= nmax, all l
    std::map<std::pair<long, long>, Rational> coeffs;

    Rational c(long n, long l) const {
        auto it = coeffs.find({n, l});
        return it == coeffs.end() ? Rational(0) : it->second;
    }

    /// For index 1 the coefficient depends only on the discriminant 4n - l^2.
    Rational by_disc(long d) const {
        // smallest representative: n = ceil((d + l^2)/4) over l in {0,1}
        long l = (((d % 4) + 4) % 4 == 0) ? 0 : 1;  // d == 0 or -1 mod 4
        long n = (d + l * l) / 4;
        if (4 * n - l * l != d) throw series_error("by_disc: no lattice point");
        if (n > nmax || n < 0)
            throw series_error("by_disc: discriminant outside stored window");
        return c(n, l);
    }
};

/// Build a JacobiCoeffs table from a (q,y)-series (integral exponents), with
/// the index-1 discriminant law asserted when index == 1.
inline JacobiCoeffs jacobi_from_series(const TruncSeries& f, long weight, long index,
                                       long nmax) {
    if (f.expdenom() != 1) throw series_error("jacobi_from_series: expdenom != 1");
    JacobiCoeffs j{weight, index, nmax, {}};
    for (const auto& [e, c] : f.terms())
        if (e[0] <= nmax) j.coeffs[{e[0], e[1]}] = c;
    if (index == 1) {
        std::map<long, Rational> byd;
        for (const auto& [nl, c] : j.coeffs) {
            auto [it, fresh] = byd.emplace(4 * nl.first - nl.second * nl.second, c);
            if (!fresh && it->second != c)
                throw series_error("jacobi_from_series: index-1 law violated");
        }
    }
    return j;
}

// --------------------------------------------------------------------------
// The delta expansion of the inverse theta square.

/// Laurent polynomials delta_i(t), i = 0..imax, defined by
///   sum_i delta_i(t) q^i = prod_{n>=1} (1-q^n)^{-2} (1-tq^n)^{-2} (1-t^{-1}q^n)^{-2}
/// (equivalently: the inverse square of the odd theta function equals
/// q^{-1/4} t/(1-t)^2 sum_i delta_i(t) q^i).  Each delta_i has t-degrees in
/// [-i, i]; delta_0 = 1.
inline std::vector<LaurentPoly> delta_i(long imax) {
    TruncSeries shape =
        TruncSeries::zero({"q", "t"}, 1, {{0, imax}, {-imax, std::max(imax, 1L)}},
                          std::nullopt, {true, false});
    std::vector<ProductFactor> fs;
    for (long n = 1; n <= imax; ++n) {
        fs.push_back({{n, 0}, 2, 1});
        fs.push_back({{n, 1}, 2, 1});
        fs.push_back({{n, -1}, 2, 1});
    }
    TruncSeries s = product_expand(fs, shape);
    std::vector<LaurentPoly> out(static_cast<std::size_t>(imax) + 1);
    for (const auto& [e, c] : s.terms()) out[e[0]][e[1]] = c;
    return out;
}

// --------------------------------------------------------------------------
// The coefficient table c(a,k).

/// One row of the table: c(a,k) = [t^k] N_a(t) * t/(1-t)^2 with N_a a Laurent
/// polynomial, expanded ascending in t.
struct CRow {
    long a = 0;
    LaurentPoly numerator;  // N_a(t)

    bool is_zero() const { return numerator.empty(); }

    /// The rational function N_a(t) t/(1-t)^2 is invariant under t <-> 1/t
    /// iff N_a is palindromic (the kernel itself is symmetric).
    bool palindromic() const {
        for (const auto& [e, c] : numerator) {
            auto it = numerator.find(-e);
            if (it == numerator.end() || it->second != c) return false;
        }
        return true;
    }

    /// Exact coefficient c(a,k) for any k (the ascending expansion of the
    /// kernel is sum_{j>=1} j t^j).
    Rational c(long k) const {
        Rational v = 0;
        for (const auto& [e, w] : numerator)
            if (k - e >= 1) v += w * (k - e);
        return v;
    }

    /// Lowest k with c(a,k) != 0 (0 for the zero row).
    long k_min() const { return numerator.empty() ? 0 : numerator.begin()->first + 1; }

    /// Ascending truncation sum_{k <= kwin} c(a,k) t^k.
    TruncSeries ascending(long kwin) const {
        long lo = std::min(k_min(), 0L);
        TruncSeries s({"t"}, 1, {{lo, kwin}});
        for (long k = k_min(); k <= kwin; ++k) s.add_term({k}, c(k));
        return s;
    }
};

struct CoeffTable {
    long amax = -1;
    std::map<long, CRow> rows;  // a = -1 .. amax (zero rows stored too)

    const CRow& row(long a) const {
        static const CRow zero_row{};
        if (a < -1) return zero_row;  // rows below a = -1 vanish identically
        auto it = rows.find(a);
        if (it == rows.end()) throw series_error("CoeffTable: row beyond amax");
        return it->second;
    }

    Rational c(long a, long k) const { return a < -1 ? Rational(0) : row(a).c(k); }
};

namespace dt_detail {

/// Row numerators assembled from the delta expansion:
///   sum_{a,k} c(a,k) Q^a t^k
///     = -Q^{-1} (t/(1-t)^2) sum_i delta_i(t) Q^{4i} sum_b Q^{b^2} (-t)^b,
/// so N_a(t) = - sum_{4i + b^2 = a+1} delta_i(t) (-t)^b.
inline std::map<long, LaurentPoly> row_numerators(long amax) {
    long imax = std::max(0L, (amax + 1) / 4);
    std::vector<LaurentPoly> del = delta_i(imax);
    std::map<long, LaurentPoly> num;
    for (long a = -1; a <= amax; ++a) num[a];  // materialize zero rows
    for (long i = 0; i <= imax; ++i)
        for (long b = -(amax + 2); b <= amax + 2; ++b) {
            long a = 4 * i + b * b - 1;
            if (a > amax) continue;
            Rational sign = (b % 2 == 0) ? -1 : 1;  // -(-1)^b
            for (const auto& [e, c] : del[i]) num[a][e + b] += sign * c;
        }
    for (auto& [a, n] : num)
        for (auto it = n.begin(); it != n.end();)
            it = (it->second == 0) ? n.erase(it) : std::next(it);
    return num;
}

inline long isqrt_ceil(long v) {
    long r = 0;
    while (r * r < v) ++r;
    return r;
}

}  // namespace dt_detail

/// Independent route for the table: the theta ratio
///   sum_{a,k} c(a,k) Q^a t^k = theta4-sum(Q,t) / theta1(Q^4,t)^2,
/// with the denominator inverted by an ascending boxed expansion.  Returns a
/// series in (Q,t), Q-exponents in [-1, amax], t exact on [t_lo, kwin].
inline TruncSeries c_table_theta(long amax, long kwin) {
    // The ascending inverse at Q-order amax consumes theta-square terms up to
    // Q-exponent amax + 2 (the geometric tail reaches one past the output
    // window plus the Q^1 lead), so both theta sums are built to that margin.
    long qtop = amax + 2;
    long smax = dt_detail::isqrt_ceil(qtop) + 1;
    long tneg = (amax + 2) * (2 * smax + 2) + kwin + 4;
    TruncSeries box = TruncSeries::zero(
        {"Q", "t"}, 1, {{-1, amax}, {-tneg, kwin + tneg}}, std::nullopt, {true, false});

    // theta-hat(Q^4, t)^2 = sum_{m,m'} (-1)^{m+m'} Q^{[(2m+1)^2+(2m'+1)^2]/2} t^{m+m'+1}
    TruncSeries thsq = TruncSeries::zero({"Q", "t"}, 1,
                                         {{1, qtop}, {-tneg, kwin + tneg}},
                                         std::nullopt, {true, false});
    for (long m = -smax - 1; m <= smax; ++m)
        for (long mm = -smax - 1; mm <= smax; ++mm) {
            long e2 = (2 * m + 1) * (2 * m + 1) + (2 * mm + 1) * (2 * mm + 1);
            if (e2 % 2 != 0 || e2 / 2 > qtop) continue;
            long sgn = ((m + mm) % 2 == 0) ? 1 : -1;
            thsq.add_term({e2 / 2, m + mm + 1}, sgn);
        }

    // numerator sum_b Q^{b^2} (-t)^b
    TruncSeries th4 = TruncSeries::zero({"Q", "t"}, 1,
                                        {{0, qtop}, {-tneg, kwin + tneg}},
                                        std::nullopt, {true, false});
    for (long b = -smax - 1; b <= smax + 1; ++b) {
        if (b * b > qtop) continue;
        th4.add_term({b * b, b}, (b % 2 == 0) ? 1 : -1);
    }

    // ratio = -th4 * thsq^{-1}  (theta1(Q^4,t)^2 = -theta-hat(Q^4,t)^2)
    TruncSeries inv = invert_boxed(thsq, box);
    TruncSeries r = mul_boxed(-th4, inv, box);
    return r.truncated({{-1, amax}, {r.windows()[1].lo, kwin}});
}

/// The coefficient table, built from the delta-expansion row numerators and
/// verified against the independent theta-ratio route on k <= kwin.  Also
/// asserts the t <-> 1/t palindromicity of every row and integrality.
inline CoeffTable c_table(long amax, long kwin = 10) {
    CoeffTable tab;
    tab.amax = amax;
    for (auto& [a, n] : dt_detail::row_numerators(amax)) {
        for (const auto& [e, c] : n)
            if (!is_integer(c)) throw series_error("c_table: non-integer numerator");
        CRow r{a, std::move(n)};
        if (!r.palindromic()) throw series_error("c_table: row fails t <-> 1/t symmetry");
        tab.rows.emplace(a, std::move(r));
    }
    TruncSeries theta = c_table_theta(amax, kwin);
    auto qrows = theta.rows_by({"Q"});
    for (const auto& [a, r] : tab.rows) {
        auto it = qrows.find({a});
        for (long k = std::min(r.k_min(), theta.windows()[1].lo); k <= kwin; ++k) {
            Rational want = (it == qrows.end()) ? Rational(0) : it->second.coeff({k});
            if (r.c(k) != want)
                throw series_error("c_table: delta and theta routes disagree");
        }
    }
    return tab;
}

// --------------------------------------------------------------------------
// Equivariant elliptic genus of C^2 and Hilb^m(C^2).

namespace dt_detail {

/// theta-hat(q, y t^h) theta-hat(q, y t^{-h}) as an exact polynomial-in-window
/// series over (q,y,t):
///   sum_{m,m'} (-1)^{m+m'} q^{[(2m+1)^2+(2m'+1)^2-2]/8} y^{m+m'+1} t^{h(m-m')}.
/// (The q^{-1/4} of the inverse-theta-square kernel is absorbed here, making
/// all q-exponents integral.)
inline TruncSeries ell_theta_pair(long h, long qmax, const TruncSeries& box) {
    TruncSeries s = box;
    long smax = isqrt_ceil(8 * qmax + 2) + 1;
    for (long m = -smax; m <= smax; ++m)
        for (long mm = -smax; mm <= smax; ++mm) {
            long e8 = (2 * m + 1) * (2 * m + 1) + (2 * mm + 1) * (2 * mm + 1) - 2;
            if (e8 % 8 != 0) throw series_error("ell_theta_pair: lattice bug");
            long n = e8 / 8;
            if (n < 0 || n > qmax) continue;
            long sgn = ((m + mm) % 2 == 0) ? 1 : -1;
            s.add_term({n, m + mm + 1, h * (m - mm)}, sgn);
        }
    return s;
}

/// The single fixed-point factor of the elliptic genus with tangent weights
/// {+h, -h}:
///   theta1(q,y t^h) theta1(q,y t^{-h}) / (theta1(q,t^h) theta1(q,t^{-h}))
///     = - ell_theta_pair(h) * (t^h/(1-t^h)^2) * sum_i delta_i(t^h) q^i,
/// expanded ascending in t.
inline TruncSeries ell_factor(long h, long qmax, const std::vector<LaurentPoly>& del,
                              const TruncSeries& box) {
    TruncSeries num = ell_theta_pair(h, qmax, box);
    long thi = box.windows()[2].hi;
    TruncSeries ker = box;  // kernel sum_{k>=1} k t^{hk}
    for (long k = 1; h * k <= thi; ++k) ker.add_term({0, 0, h * k}, k);
    TruncSeries ds = box;  // sum_i delta_i(t^h) q^i
    for (long i = 0; i <= qmax && i < static_cast<long>(del.size()); ++i)
        for (const auto& [e, c] : del[i]) ds.add_term({i, 0, h * e}, c);
    return -mul_boxed(mul_boxed(num, ker, box), ds, box);
}

}  // namespace dt_detail

/// Ell_{q,y}(C^2, t) as a series in (q,y,t), exact for q <= qmax and
/// t-exponents <= kwin (t-support bounded below; y-support finite).
inline TruncSeries ell_c2(long qmax, long kwin) {
    long smax = dt_detail::isqrt_ceil(8 * qmax + 2) + 1;
    long tneg = 2 * smax + qmax + 1;
    long ywide = 2 * smax + 2;
    TruncSeries box = TruncSeries::zero(
        {"q", "y", "t"}, 1, {{0, qmax}, {-ywide, ywide}, {-tneg, kwin + tneg}},
        std::nullopt, {true, false, false});
    auto del = delta_i(qmax);
    TruncSeries f = dt_detail::ell_factor(1, qmax, del, box);
    return f.truncated({{0, qmax}, {-ywide, ywide}, {f.windows()[2].lo, kwin}});
}

/// ell_c2 regrouped by the discriminant a = 4n - l^2: map a -> (k -> c(a,k)).
/// Asserts that the coefficient depends on (n,l) through a only; rows are
/// complete for every a <= 4*qmax that admits a representative n <= qmax.
inline std::map<long, LaurentPoly> ell_c2_rows(long qmax, long kwin) {
    TruncSeries f = ell_c2(qmax, kwin);
    std::map<long, LaurentPoly> rows;
    std::map<long, long> rep;  // a -> representative l (smallest |l|)
    auto yrows = f.rows_by({"q", "y"});
    for (const auto& [nl, row] : yrows) {
        long a = 4 * nl[0] - nl[1] * nl[1];
        LaurentPoly r;
        for (const auto& [e, c] : row.terms()) r[e[0]] = c;
        auto [it, fresh] = rows.emplace(a, r);
        if (!fresh && it->second != r)
            throw series_error("ell_c2_rows: discriminant law violated");
        (void)rep;
    }
    return rows;
}

/// Ell_{q,y}(Hilb^m(C^2), t): fixed-point sum over partitions R of m with
/// tangent weights {+-h} over the hooks of R.  Exact for q <= qmax,
/// |y| <= ywin, t <= kwin.
inline TruncSeries hilb_ell_localization(long m, long qmax, long ywin, long kwin) {
    long smax = dt_detail::isqrt_ceil(8 * qmax + 2) + 1;
    long hmax = std::max(m, 1L);
    long tneg = hmax * std::max(m, 1L) * (2 * smax + qmax + 1);
    long ywide = std::max(ywin, 1L) + m * (2 * smax + 2);
    TruncSeries box = TruncSeries::zero(
        {"q", "y", "t"}, 1, {{0, qmax}, {-ywide, ywide}, {-tneg, kwin + tneg}},
        std::nullopt, {true, false, false});
    auto del = delta_i(qmax);

    std::optional<TruncSeries> total;
    for (const auto& r : enumerate_partitions(m)) {
        if (r.size() != m) continue;
        TruncSeries term = TruncSeries::one({"q", "y", "t"}, 1,
                                            box.windows(), std::nullopt,
                                            {true, false, false});
        for (long h : hooks(r))
            term = mul_boxed(term, dt_detail::ell_factor(h, qmax, del, box), box);
        total = total ? *total + term : term;
    }
    if (!total) {  // m = 0
        return TruncSeries::one({"q", "y", "t"}, 1,
                                {{0, qmax}, {-ywin, ywin}, {0, kwin}}, std::nullopt,
                                {true, false, false});
    }
    return total->truncated(
        {{0, qmax}, {-ywin, ywin}, {total->windows()[2].lo, kwin}});
}

/// DMVV product: sum_m Ell(Hilb^m) Q^m
///   = prod_{m>=1} prod_{n,l,k} (1 - t^k q^n y^l Q^m)^{-c(nm,l,k)},
/// with the exponents taken from ell_c2 (asserted integral).  Exact for
/// Q <= mmax, q <= qmax, |y| <= ywin, t <= kwin.
inline TruncSeries hilb_ell_product(long mmax, long qmax, long ywin, long kwin) {
    long nbig = qmax * mmax;
    // Negative k-support of the consulted rows is bounded via k_min; first
    // fetch rows on a window wide enough for the escape analysis below.
    long kneg_bound = nbig + 2 * dt_detail::isqrt_ceil(4 * nbig + 1) + 2;
    long tneg = mmax * kneg_bound;
    long lmax = dt_detail::isqrt_ceil(4 * nbig + 1) + 1;
    long ywide = ywin + mmax * lmax;
    long kbig = kwin + tneg + 2;
    std::map<long, LaurentPoly> rows = ell_c2_rows(nbig, kbig);

    TruncSeries box = TruncSeries::zero(
        {"Q", "q", "y", "t"}, 1,
        {{0, mmax}, {0, qmax}, {-ywide, ywide}, {-tneg, kwin + tneg}}, std::nullopt,
        {true, false, false, false});
    std::vector<ProductFactor> fs;
    for (long m = 1; m <= mmax; ++m)
        for (long n = 0; n <= qmax; ++n)
            for (long l = -lmax; l <= lmax; ++l) {
                long a = 4 * n * m - l * l;
                auto it = rows.find(a);
                if (it == rows.end()) continue;
                for (const auto& [k, c] : it->second) {
                    if (c == 0) continue;
                    if (!is_integer(c))
                        throw series_error("hilb_ell_product: non-integer exponent");
                    fs.push_back({{m, n, l, k}, static_cast<long>(c.get_num().get_si()),
                                  1});
                }
            }
    TruncSeries z = product_expand(fs, box);
    return z.truncated(
        {{0, mmax}, {0, qmax}, {-ywin, ywin}, {z.windows()[3].lo, kwin}});
}

// --------------------------------------------------------------------------
// The closed product form of the DT partition function.

/// Check of the triple-product identity for the table's generating function:
///   sum c(a,k) Q^{a+1} t^k = (-t/(1-t)^2) *
///     prod_n (1-Q^{2n})(1-tQ^{2n-1})(1-t^{-1}Q^{2n-1})
///            / [(1-Q^{4n})^2 (1-tQ^{4n})^2 (1-t^{-1}Q^{4n})^2],
/// both sides ascending in t, compared for Q <= Qcap and t <= twin.
struct CTableCheckReport {
    bool ok = true;
    long bad_q = 0, bad_t = 0;
    Rational lhs, rhs;
};

inline CTableCheckReport cor24_check(long Qcap, long twin) {
    CoeffTable tab = c_table(Qcap - 1, twin + 2);
    long tneg = Qcap + twin + 2;
    TruncSeries box = TruncSeries::zero({"Q", "t"}, 1,
                                        {{0, Qcap}, {-tneg, twin + tneg}},
                                        std::nullopt, {true, false});
    std::vector<ProductFactor> fs;
    for (long n = 1; 2 * n - 1 <= Qcap; ++n) {
        if (2 * n <= Qcap) fs.push_back({{2 * n, 0}, -1, 1});
        fs.push_back({{2 * n - 1, 1}, -1, 1});
        fs.push_back({{2 * n - 1, -1}, -1, 1});
        if (4 * n <= Qcap) {
            fs.push_back({{4 * n, 0}, 2, 1});
            fs.push_back({{4 * n, 1}, 2, 1});
            fs.push_back({{4 * n, -1}, 2, 1});
        }
    }
    TruncSeries prod = product_expand(fs, box);
    TruncSeries ker = box;  // -t/(1-t)^2
    for (long k = 1; k <= box.windows()[1].hi; ++k) ker.add_term({0, k}, -k);
    TruncSeries rhs = mul_boxed(ker, prod, box);

    for (long a = -1; a <= Qcap - 1; ++a) {
        const CRow& r = tab.row(a);
        for (long t = std::min(r.k_min(), -Qcap); t <= twin; ++t) {
            Rational want = rhs.coeff({a + 1, t});
            if (r.c(t) != want) return {false, a + 1, t, r.c(t), want};
        }
    }
    return {};
}

namespace dt_detail {

/// Factor list of the DT product within the given (Q1,Q2,Q3,p) shape:
///   prod_{d >= 0} prod_k (1 - p^k Q^d)^{-N c(||d||, k)}   (k > 0 when d = 0).
inline std::vector<ProductFactor> z_banana_factors(const CoeffTable& tab,
                                                   const TruncSeries& shape,
                                                   long nfibers, long kcut) {
    const auto& w = shape.windows();
    std::optional<long> dcap = shape.total_cap();
    std::vector<ProductFactor> fs;
    // d = 0 row: c(0,k) = 2k for k > 0.
    for (long k = 1; k <= w[3].hi - std::min(w[3].lo, 0L); ++k)
        fs.push_back({{0, 0, 0, k}, nfibers * 2 * k, 1});
    for (long d1 = 0; d1 <= w[0].hi; ++d1)
        for (long d2 = 0; d2 <= w[1].hi; ++d2)
            for (long d3 = 0; d3 <= w[2].hi; ++d3) {
                if (d1 + d2 + d3 == 0) continue;
                if (dcap && d1 + d2 + d3 > *dcap) continue;
                long a = CurveClass{{d1, d2, d3}}.norm();
                if (a < -1) continue;
                const CRow& r = tab.row(a);
                for (long k = r.k_min(); k <= kcut; ++k) {
                    Rational c = r.c(k);
                    if (c == 0) continue;
                    if (!is_integer(c))
                        throw series_error("z_banana: non-integer table entry");
                    fs.push_back({{d1, d2, d3, k},
                                  nfibers * static_cast<long>(c.get_num().get_si()),
                                  1});
                }
            }
    return fs;
}

}  // namespace dt_detail

/// DT partition function of the banana threefold (Thm-form product):
///   Z = prod_{d >= 0} prod_k (1 - p^k Q1^{d1} Q2^{d2} Q3^{d3})^{-N c(||d||,k)}
/// with k > 0 when d = 0 and N = nfibers (12 for the full threefold, 1 for a
/// single fiber).  Exact for total Q-degree <= dmax and p-exponents <= pwin;
/// coefficients asserted integral.  The k-cut is certified by a +4 re-run.
inline TruncSeries z_banana_product(long dmax, long pwin, long nfibers = 12) {
    long amax = 0;
    for (long d1 = 0; d1 <= dmax; ++d1)
        for (long d2 = 0; d1 + d2 <= dmax; ++d2)
            for (long d3 = 0; d1 + d2 + d3 <= dmax; ++d3)
                amax = std::max(amax, CurveClass{{d1, d2, d3}}.norm());
    CoeffTable tab = c_table(amax);

    long kneg = 0;  // most negative k consulted across rows
    for (const auto& [a, r] : tab.rows) kneg = std::min(kneg, r.k_min());
    long plo = dmax * kneg;  // <= 0
    long ptop = pwin - plo;

    auto run = [&](long kcut) {
        TruncSeries shape = TruncSeries::zero(
            {"Q1", "Q2", "Q3", "p"}, 1,
            {{0, dmax}, {0, dmax}, {0, dmax}, {plo, kcut}}, dmax,
            {true, true, true, false});
        return product_expand(dt_detail::z_banana_factors(tab, shape, nfibers, kcut),
                              shape)
            .truncated({{0, dmax}, {0, dmax}, {0, dmax}, {plo, pwin}});
    };
    TruncSeries z = run(ptop);
    if (!(run(ptop + 4) == z))
        throw series_error("z_banana_product: k-cut failed to stabilize");
    for (const auto& [e, c] : z.terms())
        if (!is_integer(c)) throw series_error("z_banana_product: non-integer output");
    return z;
}

/// Single-fiber DT factor (nfibers = 1); the full threefold is its 12th power.
inline TruncSeries z_fiber_product(long dmax, long pwin) {
    return z_banana_product(dmax, pwin, 1);
}

}  // namespace banana
