#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "banana/vertex.hpp"

using namespace banana;

TEST_CASE("normalized vertex: base cases") {
    TruncSeries v0 = vertex_orv({}, {}, {}, 8);
    CHECK(v0.coeff({0}) == 1);
    CHECK(v0.terms().size() == 1);

    // Vt_{box,0,0} = s_box(p^{-rho}) = p^{1/2} + p^{3/2} + ...
    TruncSeries v1 = vertex_orv({1}, {}, {}, 6);
    for (long k = 0; k <= 5; ++k) CHECK(v1.coeff({2 * k + 1}) == 1);
    CHECK(v1.coeff({2}) == 0);
}

TEST_CASE("vertex oracle: skew-Schur formula equals 3D enumeration") {
    const long pmax = 6;
    std::vector<Partition> small = enumerate_partitions(2);
    for (const auto& r1 : small)
        for (const auto& r2 : small)
            for (const auto& r3 : small) {
                TruncSeries vt = vertex_orv(r1, r2, r3, pmax + 6);
                TruncSeries viaorv = vertex_normalized_to_full(r1, r2, r3, vt, pmax);
                TruncSeries brute = vertex_bruteforce(r1, r2, r3, pmax).rescaled(2);
                CAPTURE(r1.parts);
                CAPTURE(r2.parts);
                CAPTURE(r3.parts);
                CHECK(agree_on_common_window(viaorv, brute));
            }
}

TEST_CASE("vertex leading term is the minimal configuration") {
    // V's lowest coefficient is 1 at the minimal normalized volume.
    for (const Partition& r : {Partition{2}, Partition{1, 1}, Partition{2, 1}}) {
        TruncSeries v = vertex_bruteforce(r, conjugate(r), {}, 4);
        long vmin = v.terms().begin()->first[0];
        CHECK(v.coeff({vmin}) == 1);
    }
}

TEST_CASE("hook identities") {
    for (const Partition& r : {Partition{}, Partition{1}, Partition{2, 1}}) {
        HookCheckReport rep = hook_lemma_check(r, 3, 6);
        CAPTURE(r.parts);
        CAPTURE(rep.bad_u);
        CAPTURE(rep.bad_p);
        CHECK(rep.ok);
    }
}

TEST_CASE("fiber sum: low Q-degree slices") {
    TruncSeries z = banana_fiber_sum(1, 5);
    auto rows = z.rows_by({"Q1", "Q2", "Q3"});

    // coefficientwise comparison (rows inherit a different grading mask)
    auto same_coeffs = [](const TruncSeries& a, const TruncSeries& b) {
        long lo = std::max(a.windows()[0].lo, b.windows()[0].lo);
        long hi = std::min(a.windows()[0].hi, b.windows()[0].hi);
        for (long e = lo; e <= hi; ++e)
            if (a.coeff({e}) != b.coeff({e})) return false;
        return true;
    };

    TruncSeries m2 = macmahon_p(5);
    m2 = m2 * m2;
    CHECK(same_coeffs(rows.at({0, 0, 0}), m2));

    // Q1 coefficient: -M(p)^2 p/(1-p)^2 = -M^2 (p + 2p^2 + 3p^3 + ...)
    TruncSeries geo({"p"}, 1, {{1, 5}});
    for (long k = 1; k <= 5; ++k) geo.add_term({k}, k);
    CHECK(same_coeffs(rows.at({1, 0, 0}), -(m2 * geo)));

    // all p-exponents integral with integer coefficients
    for (const auto& [e, c] : z.terms()) CHECK(is_integer(c));
}

TEST_CASE("fiber sum: symmetric in the three Q variables") {
    TruncSeries z = banana_fiber_sum(2, 4);
    auto rows = z.rows_by({"Q1", "Q2", "Q3"});
    for (const auto& [q, row] : rows) {
        std::vector<ExpVec> perms = {{q[0], q[2], q[1]}, {q[1], q[0], q[2]},
                                     {q[1], q[2], q[0]}, {q[2], q[0], q[1]},
                                     {q[2], q[1], q[0]}};
        for (const auto& p : perms) {
            if (p == q) continue;
            REQUIRE(rows.count(p));
            CHECK(agree_on_common_window(row, rows.at(p)));
        }
    }
}

TEST_CASE("fixed-point bookkeeping: the two partition-function displays agree") {
    // p^{(sum_i ||R_i||^2 + ||R_i'||^2)/2} V_{R} V_{R'} = M(p)^2 Vt_R Vt_{R'}
    const long pmax = 5;
    std::vector<std::array<Partition, 3>> cases = {
        {Partition{1}, Partition{}, Partition{}},
        {Partition{1}, Partition{1}, Partition{}},
        {Partition{2}, Partition{1}, Partition{1}},
    };
    for (const auto& [r1, r2, r3] : cases) {
        long shift = 0;
        for (const Partition* r : {&r1, &r2, &r3})
            shift += r->norm2() + conjugate(*r).norm2();
        TruncSeries lhs =
            (vertex_bruteforce(r1, r2, r3, pmax + shift).rescaled(2) *
             vertex_bruteforce(conjugate(r1), conjugate(r2), conjugate(r3), pmax + shift)
                 .rescaled(2))
                .shifted({shift});  // shift in half units = (…)/2 in p units
        TruncSeries m = macmahon_p(pmax + shift).rescaled(2);
        TruncSeries rhs = m * m * vertex_orv(r1, r2, r3, pmax + shift) *
                          vertex_orv(conjugate(r1), conjugate(r2), conjugate(r3),
                                     pmax + shift);
        CHECK(agree_on_common_window(lhs, rhs));
    }
}
