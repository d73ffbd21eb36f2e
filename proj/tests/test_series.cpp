#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "banana/series.hpp"
#include "banana/series_io.hpp"

using namespace banana;

namespace {

TruncSeries poly_p(long hi, std::initializer_list<long> coeffs, long lo = 0) {
    TruncSeries s({"p"}, 1, {{lo, hi}});
    long e = lo;
    for (long c : coeffs) s.add_term({e++}, c);
    return s;
}

}  // namespace

TEST_CASE("polynomial multiplication and window algebra") {
    TruncSeries a = poly_p(10, {1, 1});   // 1 + p
    TruncSeries b = poly_p(10, {1, -1});  // 1 - p
    TruncSeries c = a * b;
    CHECK(c.coeff({0}) == 1);
    CHECK(c.coeff({1}) == 0);
    CHECK(c.coeff({2}) == -1);
    // hi_r = min(hi_a + lo_b, hi_b + lo_a) = 10
    CHECK(c.windows()[0].hi == 10);
    CHECK(c.windows()[0].lo == 0);

    // Knowledge cutoffs propagate: a known to p^3 times b known to p^10
    TruncSeries a3 = a.truncated({{0, 3}});
    CHECK((a3 * b).windows()[0].hi == 3);

    // Addition takes the min knowledge cutoff.
    CHECK((a3 + b).windows()[0].hi == 3);
}

TEST_CASE("shifting by monomials moves the window exactly") {
    TruncSeries a = poly_p(6, {1, 2, 3});
    TruncSeries s = a.shifted({-2}, rat(1, 3));
    CHECK(s.coeff({-2}) == rat(1, 3));
    CHECK(s.coeff({0}) == 1);
    CHECK(s.windows()[0].lo == -2);
    CHECK(s.windows()[0].hi == 4);
}

TEST_CASE("log of 1 - p") {
    TruncSeries f = poly_p(6, {1, -1});
    TruncSeries l = f.log_unit();
    for (long n = 1; n <= 6; ++n) CHECK(l.coeff({n}) == rat(-1, n));
    CHECK(l.coeff({0}) == 0);
}

TEST_CASE("exp is inverse to log") {
    TruncSeries f = poly_p(8, {1, 2, -3, 5, 0, 7});
    CHECK(f.log_unit().exp_nilpotent() == f);
}

TEST_CASE("geometric inverse, ascending") {
    TruncSeries f = poly_p(9, {1, -1});
    TruncSeries inv = f.invert_ascending();
    for (long n = 0; n <= 9; ++n) CHECK(inv.coeff({n}) == 1);

    // 1/(1-t)^2 = sum (k+1) t^k
    TruncSeries g = poly_p(12, {1, -2, 1});
    TruncSeries invg = g.invert_ascending();
    for (long n = 0; n <= 12; ++n) CHECK(invg.coeff({n}) == n + 1);

    // Leading monomial is factored out: 1/(p - p^2) = p^{-1} (1 + p + ...)
    TruncSeries h = poly_p(9, {1, -1}, 1);
    TruncSeries invh = h.invert_ascending();
    CHECK(invh.coeff({-1}) == 1);
    CHECK(invh.coeff({3}) == 1);
    CHECK(invh.windows()[0].lo == -1);
}

TEST_CASE("boxed inverse handles mixed-sign tails") {
    // f = 1 - q (t + 1/t); 1/f = sum_n q^n (t + 1/t)^n
    TruncSeries f({"q", "t"}, 1, {{0, 4}, {-8, 8}}, std::nullopt, {true, false});
    f.add_term({0, 0}, 1);
    f.add_term({1, 1}, -1);
    f.add_term({1, -1}, -1);
    TruncSeries box = f.cleared();
    TruncSeries inv = invert_boxed(f, box);
    CHECK(inv.coeff({0, 0}) == 1);
    CHECK(inv.coeff({2, 0}) == 2);   // q^2 (t+1/t)^2 -> binomial(2,1)
    CHECK(inv.coeff({4, 0}) == 6);
    CHECK(inv.coeff({4, 2}) == 4);
    CHECK(inv.coeff({3, 1}) == 3);
    // f * 1/f = 1 on a safely interior box
    TruncSeries inner({"q", "t"}, 1, {{0, 4}, {-4, 4}}, std::nullopt, {true, false});
    TruncSeries prod = mul_boxed(f, inv, inner);
    CHECK(prod == TruncSeries::one({"q", "t"}, 1, {{0, 4}, {-4, 4}}, std::nullopt,
                                   {true, false}));
}

TEST_CASE("infinite products: the 3d-partition generating function") {
    // prod_{m>=1} (1 - p^m)^{-m} = 1 + p + 3p^2 + 6p^3 + 13p^4 + 24p^5 + ...
    TruncSeries shape = TruncSeries::zero({"p"}, 1, {{0, 8}});
    std::vector<ProductFactor> fs;
    for (long m = 1; m <= 8; ++m) fs.push_back({{m}, m, 1});
    TruncSeries z = product_expand(fs, shape);
    const long want[] = {1, 1, 3, 6, 13, 24, 48, 86, 160};
    for (long n = 0; n <= 8; ++n) CHECK(z.coeff({n}) == want[n]);
}

TEST_CASE("product factors with negative power give plain polynomial factors") {
    // (1 - p)^2 via power = -2
    TruncSeries shape = TruncSeries::zero({"p"}, 1, {{0, 6}});
    TruncSeries z = product_expand({{{1}, -2, 1}}, shape);
    CHECK(z.coeff({0}) == 1);
    CHECK(z.coeff({1}) == -2);
    CHECK(z.coeff({2}) == 1);
    CHECK(z.coeff({3}) == 0);
}

TEST_CASE("total degree cap over graded generators") {
    // 1/((1-pQ1)(1-pQ2)) with total Q-degree capped at 3; p ungraded.
    TruncSeries shape = TruncSeries::zero({"Q1", "Q2", "p"}, 1,
                                          {{0, kExpInf}, {0, kExpInf}, {0, 10}}, 3,
                                          {true, true, false});
    TruncSeries z = product_expand({{{1, 0, 1}, 1, 1}, {{0, 1, 1}, 1, 1}}, shape);
    CHECK(z.coeff({2, 1, 3}) == 1);
    CHECK(z.coeff({3, 0, 3}) == 1);
    CHECK(z.coeff({4, 0, 4}) == 0);  // beyond the cap: truncated away
    CHECK(z.total_cap() == 3);
}

TEST_CASE("exponent denominator rescaling") {
    TruncSeries a({"q"}, 2, {{0, 20}});  // exponents in units of 1/2
    a.add_term({1}, 1);                  // q^{1/2}
    TruncSeries b = a.rescaled(6);
    CHECK(b.coeff({3}) == 1);
    CHECK(b.windows()[0].hi == 60);
    CHECK(b.reduced_denominator(2) == a);

    // Mixed-denominator arithmetic aligns automatically.
    TruncSeries c({"q"}, 3, {{0, 30}});
    c.add_term({1}, 1);  // q^{1/3}
    TruncSeries s = a + c;
    CHECK(s.expdenom() == 6);
    CHECK(s.coeff({2}) == 1);
    CHECK(s.coeff({3}) == 1);

    // Reduction refuses non-integral series.
    CHECK_THROWS_AS(a.reduced_denominator(1), series_error);
}

TEST_CASE("integer powers") {
    TruncSeries f = poly_p(10, {1, 1});
    TruncSeries c = f.pow(5);
    for (long k = 0; k <= 5; ++k) CHECK(c.coeff({k}) == binomial(5, k));
    CHECK(f.pow(0) == TruncSeries::one({"p"}, 1, {{0, 10}}));
}

TEST_CASE("grouping terms into rows") {
    TruncSeries f({"Q", "p"}, 1, {{0, 5}, {-3, 3}});
    f.add_term({0, 0}, 1);
    f.add_term({2, -1}, 3);
    f.add_term({2, 1}, rat(1, 2));
    auto rows = f.rows_by({"Q"});
    REQUIRE(rows.size() == 2);
    CHECK(rows.at({0}).coeff({0}) == 1);
    CHECK(rows.at({2}).coeff({-1}) == 3);
    CHECK(rows.at({2}).coeff({1}) == rat(1, 2));
    CHECK(rows.at({2}).gens() == std::vector<std::string>{"p"});
}

TEST_CASE("agreement on common windows") {
    TruncSeries a = poly_p(5, {1, 1, 1});
    TruncSeries b = poly_p(2, {1, 1, 1});
    TruncSeries c = poly_p(5, {1, 1, 1, 9});
    CHECK(agree_on_common_window(a, b));
    CHECK(!agree_on_common_window(a, c));
    // b and c differ only beyond b's cutoff
    CHECK(agree_on_common_window(b, c));
}

TEST_CASE("json round trip is the identity") {
    TruncSeries f({"Q", "q"}, 8, {{0, 40}, {-16, kExpInf}}, 24, {true, false});
    f.add_term({0, -3}, rat(-7, 3));
    f.add_term({5, 2}, 11);
    f.add_term({40, 0}, rat(1, 2));
    TruncSeries g = series_from_json(series_to_json(f));
    CHECK(g == f);
    CHECK(g.windows() == f.windows());
    CHECK(g.total_cap() == f.total_cap());
    CHECK(g.graded() == f.graded());
    CHECK(series_to_json(g).dump() == series_to_json(f).dump());

    TruncSeries h = poly_p(3, {1, 0, -5});
    CHECK(series_from_json(series_to_json(h)) == h);
}

TEST_CASE("ring laws on small random-ish inputs") {
    TruncSeries a = poly_p(7, {1, 4, -2, 9});
    TruncSeries b = poly_p(7, {3, 0, 5});
    TruncSeries c = poly_p(7, {-1, 1, 1, 1});
    CHECK(a * b == b * a);
    CHECK(agree_on_common_window(a * (b + c), a * b + a * c));
    CHECK(agree_on_common_window((a * b) * c, a * (b * c)));
    CHECK(a + (-a) == poly_p(7, {}));
}
