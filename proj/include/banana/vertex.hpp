#pragma once

// The topological vertex: the skew-Schur formula for the normalized vertex,
// a brute-force 3D-partition oracle, the hook-product identities used to
// resum it, and the full fixed-point sum for the banana-fibration partition
// function.

#include <optional>
#include <vector>

#include "banana/partitions.hpp"
#include "banana/qforms.hpp"
#include "banana/series.hpp"

namespace banana {

/// All partitions contained in both bounds (coordinatewise diagram
/// containment), smallest first.
inline std::vector<Partition> common_subpartitions(const Partition& a,
                                                   const Partition& b) {
    Partition cap;
    for (long i = 1; i <= std::min(a.length(), b.length()); ++i)
        cap.parts.push_back(std::min(a.part(i), b.part(i)));
    std::vector<Partition> out;
    for (const auto& p : enumerate_partitions(cap.size()))
        if (cap.contains(p)) out.push_back(p);
    return out;
}

namespace vertex_detail {

/// Lower bound (in half units) for the support of s_{A/B}(p^{-C-rho}).
inline long spec_support_lo(const Partition& a, const Partition& b, const Partition& c) {
    long minexp = 1;
    for (long i = 1; i <= c.length() + 1; ++i)
        minexp = std::min(minexp, 2 * (i - c.part(i)) - 1);
    return std::min(0L, (a.size() - b.size()) * minexp);
}

}  // namespace vertex_detail

/// Normalized vertex as a skew-Schur sum:
///   Vt_{R1 R2 R3} = s_{R3'}(p^{-rho})
///                   sum_{A <= R1' cap R2} s_{R1'/A}(p^{-R3-rho}) s_{R2/A}(p^{-R3'-rho}),
/// exact for p-exponents <= pmax (exponent denominator 2).
inline TruncSeries vertex_orv(const Partition& r1, const Partition& r2,
                              const Partition& r3, long pmax) {
    Partition r1c = conjugate(r1), r3c = conjugate(r3);
    // Each factor's support can dip below zero; pad the factor caps so that
    // the three-fold product is still exact up to pmax.
    long g_pre = vertex_detail::spec_support_lo(r3c, {}, {});
    long g_f1 = vertex_detail::spec_support_lo(r1c, {}, r3);
    long g_f2 = vertex_detail::spec_support_lo(r2, {}, r3c);
    long pad = -(g_pre + g_f1 + g_f2);  // >= 0, in half units
    long cap = pmax + (pad + 1) / 2 + 1;

    TruncSeries pre = skew_schur_spec(r3c, {}, {}, cap);
    std::optional<TruncSeries> sum;
    for (const Partition& a : common_subpartitions(r1c, r2)) {
        TruncSeries t =
            skew_schur_spec(r1c, a, r3, cap) * skew_schur_spec(r2, a, r3c, cap);
        sum = sum ? *sum + t : t;
    }
    TruncSeries v = pre * *sum;
    return v.truncated({{v.windows()[0].lo, 2 * pmax}});
}

/// Unnormalized vertex V_{R1 R2 R3}(p) = sum over asymptotic 3D partitions of
/// p^{|pi|}, by direct enumeration; exact for exponents <= pmax.
inline TruncSeries vertex_bruteforce(const Partition& r1, const Partition& r2,
                                     const Partition& r3, long pmax) {
    return plane3d_generating_function(r1, r2, r3, pmax);
}

/// The normalization relating the two:
///   V = M(p) p^{-(||R1||^2 + ||R2'||^2 + ||R3||^2)/2} Vt.
inline TruncSeries vertex_normalized_to_full(const Partition& r1, const Partition& r2,
                                             const Partition& r3,
                                             const TruncSeries& vt, long pmax) {
    long shift = r1.norm2() + conjugate(r2).norm2() + r3.norm2();  // in half units
    long lo = vt.windows()[0].lo;
    TruncSeries m = macmahon_p(pmax + (-std::min(lo - shift, 0L) + 1) / 2 + 1);
    return (m.rescaled(2) * vt.shifted({-shift})).truncated({{lo - shift, 2 * pmax}});
}

/// Result of checking one of the hook-product identities.
struct HookCheckReport {
    bool ok = true;
    long bad_u = 0, bad_p = 0;  // first mismatch when !ok
};

namespace vertex_detail {

/// First identity's left side with p replaced by 1/p (its right side is
/// invariant under that substitution, and this orientation of the product
/// converges coefficientwise: only the finitely many diagram boxes contribute
/// negative exponents):
///   prod_{j,k <= J} (1 - u p^{j + k - 1 - R_j - R'_k}).
inline TruncSeries hook_lhs1(const Partition& r, long J, const TruncSeries& box) {
    Partition rc = conjugate(r);
    std::vector<ProductFactor> fs;
    for (long j = 1; j <= J; ++j)
        for (long k = 1; k <= J; ++k)
            fs.push_back({{1, j + k - 1 - r.part(j) - rc.part(k)}, -1, 1});
    return product_expand(fs, box);
}

/// The second identity's left side taken relative to its R = empty value:
/// prod_{j,k <= J} (1 - u p^{-R_j + R_k + j - k}) / (1 - u p^{j - k}).
/// The literal doubly-infinite product carries a divergent (1-u) factor for
/// every diagonal entry; the ratio cancels it box-for-box, which is exactly
/// the regularization under which the identity is a formal power series in
/// u with rational coefficients in p (the empty-partition case pins the
/// normalization prod (1 - u p^{j-k}) = M(u,p)).
inline TruncSeries hook_lhs2(const Partition& r, long J, const TruncSeries& box) {
    std::vector<ProductFactor> fs;
    for (long j = 1; j <= J; ++j)
        for (long k = 1; k <= J; ++k) {
            long e1 = -r.part(j) + r.part(k) + j - k;
            long e0 = j - k;
            if (e1 == e0) continue;
            fs.push_back({{1, e1}, -1, 1});
            fs.push_back({{1, e0}, 1, 1});
        }
    return product_expand(fs, box);
}

inline TruncSeries macmahon_up(long ucap, long pwin, long sign_power,
                               const TruncSeries& box) {
    std::vector<ProductFactor> fs;
    for (long m = 1; m <= pwin; ++m) fs.push_back({{1, m}, sign_power * m, 1});
    return product_expand(fs, box);
}

inline HookCheckReport compare_up(const TruncSeries& a, const TruncSeries& b, long ucap,
                                  long pcap) {
    for (long u = 0; u <= ucap; ++u)
        for (long p = -pcap; p <= pcap; ++p)
            if (a.coeff({u, p}) != b.coeff({u, p})) return {false, u, p};
    return {true, 0, 0};
}

}  // namespace vertex_detail

/// Verify the two hook-product identities
///   prod_{j,k} (1 - u p^{R_j + R'_k - j - k + 1})
///       = M(u,p)^{-1} prod_{hooks} (1 - u p^h)(1 - u p^{-h}),
///   prod_{j,k} (1 - u p^{-R_j + R_k + j - k})
///       = M(u,p) prod_{hooks} (1 - u p^h)^{-1} (1 - u p^{-h})^{-1},
/// as u-series with Laurent coefficients in p, for u <= ucap, |p| <= pcap.
/// Both hold per u-power as rational-function identities in p, so each side
/// must be expanded in a direction where its truncation stabilizes: the first
/// is checked with p -> 1/p on the left (see hook_lhs1; the right side is
/// invariant under that substitution), the second in the ratio form (see
/// hook_lhs2, with M(u,p) moved to the left side as the R = empty
/// normalization).  Left sides are truncated at a stabilization-certified
/// range J.
inline HookCheckReport hook_lemma_check(const Partition& r, long ucap, long pcap) {
    long maxpart = r.length() ? r.parts[0] : 0;
    long maxhook = r.length() ? maxpart + r.length() - 1 : 0;
    // The genuine log terms of every side live within |p| <= n*maxhook at
    // u^n; the working box only needs that plus the comparison window.  The
    // j,k truncation range J is then pushed beyond the box so that the
    // telescoping boundary residue of the ratio form (factors at p-exponent
    // about +-J) falls outside it entirely -- inside the box the truncated
    // products are exact, which the J -> J+5 re-run certifies.
    long pwide = pcap + ucap * (maxhook + 2);
    long J = pwide + maxpart + r.length() + 2;
    TruncSeries wide = TruncSeries::zero({"u", "p"}, 1, {{0, ucap}, {-pwide, pwide}},
                                         std::nullopt, {true, false});
    TruncSeries boxc = TruncSeries::zero({"u", "p"}, 1, {{0, ucap}, {-pcap, pcap}},
                                         std::nullopt, {true, false});

    TruncSeries lhs1 = vertex_detail::hook_lhs1(r, J, wide).certified(boxc);
    TruncSeries lhs2 = vertex_detail::hook_lhs2(r, J, wide).certified(boxc);
    if (!(vertex_detail::hook_lhs1(r, J + 5, wide).certified(boxc) == lhs1) ||
        !(vertex_detail::hook_lhs2(r, J + 5, wide).certified(boxc) == lhs2))
        throw series_error("hook_lemma_check: truncation range did not stabilize");

    std::vector<ProductFactor> hookfs_neg, hookfs_pos;
    for (long h : hooks(r)) {
        hookfs_neg.push_back({{1, h}, -1, 1});
        hookfs_neg.push_back({{1, -h}, -1, 1});
        hookfs_pos.push_back({{1, h}, 1, 1});
        hookfs_pos.push_back({{1, -h}, 1, 1});
    }
    TruncSeries rhs1 = mul_boxed(vertex_detail::macmahon_up(ucap, pwide, -1, wide),
                                 product_expand(hookfs_neg, wide), wide)
                           .certified(boxc);
    TruncSeries rhs2 = product_expand(hookfs_pos, wide).certified(boxc);

    HookCheckReport rep = vertex_detail::compare_up(lhs1, rhs1, ucap, pcap);
    if (!rep.ok) return rep;
    return vertex_detail::compare_up(lhs2, rhs2, ucap, pcap);
}

/// Fixed-point sum for the fibration partition function:
///   M(p)^2 sum_{|R1|+|R2|+|R3| <= dmax}
///     (-Q1)^{|R1|} (-Q2)^{|R2|} (-Q3)^{|R3|} Vt_{R1R2R3} Vt_{R1'R2'R3'},
/// exact for total Q-degree <= dmax and p-exponents <= pwin.  All
/// p-exponents are integral (asserted).
inline TruncSeries banana_fiber_sum(long dmax, long pwin) {
    std::vector<Partition> parts = enumerate_partitions(dmax);
    struct Contribution {
        ExpVec q;
        Rational sign;
        TruncSeries series;  // in p, integral exponents
    };
    std::vector<Contribution> contribs;
    long lo_min = 0;
    for (const auto& a : parts)
        for (const auto& b : parts)
            for (const auto& c : parts) {
                if (a.size() + b.size() + c.size() > dmax) continue;
                // Pad so the product of the two normalized vertices is exact
                // up to pwin despite their negative support.
                long pad1 = -vertex_detail::spec_support_lo(conjugate(a), {}, c) -
                            vertex_detail::spec_support_lo(b, {}, conjugate(c)) -
                            vertex_detail::spec_support_lo(conjugate(c), {}, {});
                long pad2 = -vertex_detail::spec_support_lo(a, {}, conjugate(c)) -
                            vertex_detail::spec_support_lo(conjugate(b), {}, c) -
                            vertex_detail::spec_support_lo(c, {}, {});
                long cap = pwin + (pad1 + pad2) / 2 + 2;
                TruncSeries vv = vertex_orv(a, b, c, cap) *
                                 vertex_orv(conjugate(a), conjugate(b), conjugate(c), cap);
                vv = vv.truncated({{vv.windows()[0].lo, 2 * pwin}})
                         .reduced_denominator(1);  // half powers must cancel
                lo_min = std::min(lo_min, vv.windows()[0].lo);
                long sz = a.size() + b.size() + c.size();
                contribs.push_back({{a.size(), b.size(), c.size()},
                                    (sz % 2 == 0) ? 1 : -1,
                                    std::move(vv)});
            }

    long mcap = pwin - std::min(lo_min, 0L);
    TruncSeries m2 = macmahon_p(mcap);
    m2 = m2 * m2;
    TruncSeries acc =
        TruncSeries::zero({"Q1", "Q2", "Q3", "p"}, 1,
                          {{0, kExpInf}, {0, kExpInf}, {0, kExpInf}, {lo_min, pwin}},
                          dmax, {true, true, true, false});
    for (const auto& c : contribs) {
        TruncSeries t = c.series * m2;
        for (const auto& [e, v] : t.terms())
            acc.add_term({c.q[0], c.q[1], c.q[2], e[0]}, c.sign * v);
    }
    return acc;
}

}  // namespace banana
