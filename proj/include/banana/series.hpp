#pragma once

// Exact truncated Laurent series in several commuting generators.
//
// Exponents are stored as integers meaning multiples of 1/D where D is the
// per-series exponent denominator (D = 8 for theta-function internals, 2 for
// vertex work, 1 almost everywhere else).  Truncation windows are explicit
// data carried by every series: `lo` is a support bound (the series is known
// to have no terms below it), `hi` is a knowledge cutoff (terms above it have
// been truncated away).  Every ring operation computes the tightest valid
// result window from its inputs, so a series can never silently pretend to
// more precision than it has.
//
// For ascending expansions whose tails have mixed-sign exponents (inverse
// theta ratios and the like) the window algebra is too conservative; those
// use the *_boxed helpers at the bottom of this file, which compute inside
// one fixed window and must be certified by a stabilization re-run with an
// enlarged window at the call site.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "banana/rational.hpp"

namespace banana {

using ExpVec = std::vector<long>;

inline constexpr long kExpInf = std::numeric_limits<long>::max() / 4;

inline long sat_add(long a, long b) {
    if (a >= kExpInf || b >= kExpInf) return kExpInf;
    if (a <= -kExpInf || b <= -kExpInf) return -kExpInf;
    return a + b;
}

/// Per-generator truncation window, in units of 1/expdenom.
struct Window {
    long lo = -kExpInf;
    long hi = kExpInf;
    friend bool operator==(const Window&, const Window&) = default;
};

class TruncSeries {
  public:
    TruncSeries() = default;

    TruncSeries(std::vector<std::string> gens, long expdenom,
                std::vector<Window> windows,
                std::optional<long> total_cap = std::nullopt,
                std::vector<bool> graded = {})
        : gens_(std::move(gens)),
          expdenom_(expdenom),
          win_(std::move(windows)),
          total_cap_(total_cap),
          graded_(std::move(graded)) {
        if (expdenom_ <= 0) throw series_error("exponent denominator must be positive");
        if (win_.size() != gens_.size()) throw series_error("window/generator count mismatch");
        if (graded_.empty()) graded_.assign(gens_.size(), true);
        if (graded_.size() != gens_.size()) throw series_error("graded mask size mismatch");
        for (const auto& w : win_)
            if (w.lo <= -kExpInf)
                throw series_error("every generator must declare a finite lower bound");
    }

    static TruncSeries zero(std::vector<std::string> gens, long expdenom,
                            std::vector<Window> windows,
                            std::optional<long> total_cap = std::nullopt,
                            std::vector<bool> graded = {}) {
        return TruncSeries(std::move(gens), expdenom, std::move(windows), total_cap,
                           std::move(graded));
    }

    static TruncSeries one(std::vector<std::string> gens, long expdenom,
                           std::vector<Window> windows,
                           std::optional<long> total_cap = std::nullopt,
                           std::vector<bool> graded = {}) {
        TruncSeries s(std::move(gens), expdenom, std::move(windows), total_cap,
                      std::move(graded));
        s.add_term(ExpVec(s.gens_.size(), 0), 1);
        return s;
    }

    /// A zero series sharing this one's generators, denominator and window.
    TruncSeries cleared() const {
        return TruncSeries(gens_, expdenom_, win_, total_cap_, graded_);
    }

    const std::vector<std::string>& gens() const { return gens_; }
    long expdenom() const { return expdenom_; }
    const std::vector<Window>& windows() const { return win_; }
    std::optional<long> total_cap() const { return total_cap_; }
    const std::vector<bool>& graded() const { return graded_; }
    const std::map<ExpVec, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::size_t gen_index(const std::string& name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i] == name) return i;
        throw series_error("unknown generator: " + name);
    }

    long graded_degree(const ExpVec& e) const {
        long d = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (graded_[i]) d += e[i];
        return d;
    }

    bool in_window(const ExpVec& e) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < win_[i].lo || e[i] > win_[i].hi) return false;
        if (total_cap_ && graded_degree(e) > *total_cap_) return false;
        return true;
    }

    /// Adds c * x^e if the monomial is inside the window; drops it otherwise.
    void add_term(const ExpVec& e, const Rational& c) {
        if (c == 0 || !in_window(e)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coeff(const ExpVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    TruncSeries& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [e, c] : terms_) c *= s;
        }
        return *this;
    }

    friend TruncSeries operator*(const Rational& s, TruncSeries f) {
        f *= s;
        return f;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        auto [x, y] = aligned(a, b);
        TruncSeries r(x.gens_, x.expdenom_, add_windows(x, y), min_cap(x, y), x.graded_);
        for (const auto& [e, c] : x.terms_) r.add_term(e, c);
        for (const auto& [e, c] : y.terms_) r.add_term(e, c);
        return r;
    }

    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        return a + (-b);
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        auto [x, y] = aligned(a, b);
        std::vector<Window> w(x.gens_.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i].lo = sat_add(x.win_[i].lo, y.win_[i].lo);
            w[i].hi = std::min(sat_add(x.win_[i].hi, y.win_[i].lo),
                               sat_add(y.win_[i].hi, x.win_[i].lo));
        }
        std::optional<long> cap;
        {
            long tx = x.total_cap_ ? *x.total_cap_ : kExpInf;
            long ty = y.total_cap_ ? *y.total_cap_ : kExpInf;
            long c = std::min(sat_add(tx, y.graded_lo()), sat_add(ty, x.graded_lo()));
            if (c < kExpInf) cap = c;
        }
        TruncSeries r(x.gens_, x.expdenom_, std::move(w), cap, x.graded_);
        r.convolve(x, y);
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        if (a.gens_ != b.gens_) return false;
        auto [x, y] = aligned(a, b);
        return x.terms_ == y.terms_;
    }

    /// True when a and b coincide on the intersection of their windows.
    friend bool agree_on_common_window(const TruncSeries& a, const TruncSeries& b) {
        if (a.gens_ != b.gens_) return false;
        auto [x, y] = aligned(a, b);
        TruncSeries probe(x.gens_, x.expdenom_, add_windows(x, y), min_cap(x, y), x.graded_);
        for (const auto& [e, c] : x.terms_)
            if (probe.in_window(e) && y.coeff(e) != c) return false;
        for (const auto& [e, c] : y.terms_)
            if (probe.in_window(e) && x.coeff(e) != c) return false;
        return true;
    }

    /// Multiply by the monomial c * x^v (an exact operation; windows shift).
    TruncSeries shifted(const ExpVec& v, const Rational& c = 1) const {
        std::vector<Window> w = win_;
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i].lo = sat_add(w[i].lo, v[i]);
            w[i].hi = sat_add(w[i].hi, v[i]);
        }
        std::optional<long> cap = total_cap_;
        if (cap) {
            long gv = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (graded_[i]) gv += v[i];
            cap = sat_add(*cap, gv);
        }
        TruncSeries r(gens_, expdenom_, std::move(w), cap, graded_);
        ExpVec e(gens_.size());
        for (const auto& [ev, cv] : terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ev[i] + v[i];
            r.add_term(e, c * cv);
        }
        return r;
    }

    /// Narrow to the given window (intersection with the current one).
    TruncSeries truncated(std::vector<Window> w,
                          std::optional<long> cap = std::nullopt) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i].lo = std::max(w[i].lo, win_[i].lo);
            w[i].hi = std::min(w[i].hi, win_[i].hi);
        }
        std::optional<long> c = total_cap_;
        if (cap) c = c ? std::min(*c, *cap) : *cap;
        TruncSeries r(gens_, expdenom_, std::move(w), c, graded_);
        for (const auto& [e, cv] : terms_) r.add_term(e, cv);
        return r;
    }

    /// Re-declare the knowledge window, keeping only in-window terms.
    /// The enlargement is *not* derivable from the inputs; the caller must
    /// justify it externally, normally by a stabilization re-run (compute
    /// again with enlarged internal windows and compare on this region).
    TruncSeries certified(const TruncSeries& shape) const {
        if (gens_ != shape.gens_) throw series_error("certified: generator mismatch");
        long d = std::lcm(expdenom_, shape.expdenom_);
        TruncSeries s = rescaled(d);
        TruncSeries t = shape.rescaled(d);
        TruncSeries r(t.gens_, t.expdenom_, t.win_, t.total_cap_, t.graded_);
        for (const auto& [e, c] : s.terms_) r.add_term(e, c);
        return r;
    }

    /// Rescale the exponent denominator to a multiple of the current one.
    TruncSeries rescaled(long newdenom) const {
        if (newdenom % expdenom_ != 0)
            throw series_error("exponent denominator rescale must be a multiple");
        long m = newdenom / expdenom_;
        if (m == 1) return *this;
        std::vector<Window> w = win_;
        for (auto& x : w) {
            x.lo = x.lo <= -kExpInf ? -kExpInf : x.lo * m;
            x.hi = x.hi >= kExpInf ? kExpInf : x.hi * m;
        }
        std::optional<long> cap = total_cap_;
        if (cap && *cap < kExpInf) cap = *cap * m;
        TruncSeries r(gens_, newdenom, std::move(w), cap, graded_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(e);
            for (auto& x : ne) x *= m;
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    /// Reduce the exponent denominator when every exponent allows it;
    /// used to certify integrality of exported objects.
    TruncSeries reduced_denominator(long newdenom) const {
        if (expdenom_ % newdenom != 0)
            throw series_error("reduced denominator must divide the current one");
        long m = expdenom_ / newdenom;
        if (m == 1) return *this;
        std::vector<Window> w = win_;
        for (auto& x : w) {
            x.lo = x.lo <= -kExpInf ? -kExpInf : divide_floor(x.lo, m);
            x.hi = x.hi >= kExpInf ? kExpInf : divide_floor(x.hi, m);
        }
        std::optional<long> cap = total_cap_;
        if (cap && *cap < kExpInf) cap = divide_floor(*cap, m);
        TruncSeries r(gens_, newdenom, std::move(w), cap, graded_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(e);
            for (auto& x : ne) {
                if (x % m != 0)
                    throw series_error("exponent not divisible: series is not integral");
                x /= m;
            }
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    /// log(f) for f with constant term 1, by -sum((1-f)^n / n).
    TruncSeries log_unit() const {
        if (coeff(ExpVec(gens_.size(), 0)) != 1)
            throw series_error("log_unit: constant term must be 1");
        TruncSeries g = *this;
        g.add_term(ExpVec(gens_.size(), 0), -1);
        g = -g;  // g = 1 - f
        TruncSeries acc = cleared();
        TruncSeries pw = g;
        for (long n = 1; !pw.is_zero(); ++n) {
            if (n > kIterLimit) throw series_error("log_unit: series does not truncate");
            acc = acc + Rational(-1, n) * pw;
            pw = pw * g;
        }
        return acc;
    }

    /// exp(f) for f with zero constant term; inverse of log_unit.
    TruncSeries exp_nilpotent() const {
        if (coeff(ExpVec(gens_.size(), 0)) != 0)
            throw series_error("exp_nilpotent: constant term must be 0");
        TruncSeries acc = cleared();
        acc.add_term(ExpVec(gens_.size(), 0), 1);
        TruncSeries pw = *this;
        Rational fact = 1;
        for (long n = 1; !pw.is_zero(); ++n) {
            if (n > kIterLimit) throw series_error("exp_nilpotent: series does not truncate");
            fact /= n;
            acc = acc + fact * pw;
            pw = pw * *this;
        }
        return acc;
    }

    /// 1/f when the tail beyond the lex-minimal term is nonnegative in every
    /// generator (geometric expansion; the window algebra stays tight).  For
    /// tails with mixed-sign exponents use invert_boxed instead.
    TruncSeries invert_ascending() const {
        if (terms_.empty()) throw series_error("invert_ascending: zero series");
        const auto& [v, cv] = *terms_.begin();  // lex-minimal term
        TruncSeries u = shifted(negated(v), Rational(1) / cv);
        TruncSeries g = u;
        g.add_term(ExpVec(gens_.size(), 0), -1);
        for (const auto& [e, c] : g.terms_)
            for (long x : e)
                if (x < 0)
                    throw series_error(
                        "invert_ascending: tail has negative exponents; use invert_boxed");
        TruncSeries acc = u.cleared();
        acc.add_term(ExpVec(gens_.size(), 0), 1);
        TruncSeries pw = g;
        Rational sign = -1;
        for (long n = 1; !pw.is_zero(); ++n) {
            if (n > kIterLimit)
                throw series_error("invert_ascending: expansion does not truncate");
            acc = acc + sign * pw;
            pw = pw * g;
            sign = -sign;
        }
        return acc.shifted(negated(v), Rational(1) / cv);
    }

    TruncSeries pow(long n) const {
        if (n < 0) throw series_error("pow: negative exponent");
        TruncSeries base = *this;
        std::optional<TruncSeries> acc;
        while (n > 0) {
            if (n & 1) acc = acc ? *acc * base : base;
            n >>= 1;
            if (n > 0) base = base * base;
        }
        if (!acc) {
            TruncSeries r = cleared();
            r.add_term(ExpVec(gens_.size(), 0), 1);
            return r;
        }
        return *acc;
    }

    /// Group terms by the exponents of a subset of generators; the values are
    /// series in the remaining generators (windows inherited).
    std::map<ExpVec, TruncSeries> rows_by(const std::vector<std::string>& subset) const {
        std::vector<std::size_t> sel, rest;
        for (const auto& n : subset) sel.push_back(gen_index(n));
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (std::find(sel.begin(), sel.end(), i) == sel.end()) rest.push_back(i);
        std::vector<std::string> rgens;
        std::vector<Window> rwin;
        std::vector<bool> rgraded;
        for (auto i : rest) {
            rgens.push_back(gens_[i]);
            rwin.push_back(win_[i]);
            rgraded.push_back(graded_[i]);
        }
        std::map<ExpVec, TruncSeries> out;
        for (const auto& [e, c] : terms_) {
            ExpVec key(sel.size()), re(rest.size());
            for (std::size_t i = 0; i < sel.size(); ++i) key[i] = e[sel[i]];
            for (std::size_t i = 0; i < rest.size(); ++i) re[i] = e[rest[i]];
            auto it = out.find(key);
            if (it == out.end())
                it = out.emplace(key,
                                 TruncSeries(rgens, expdenom_, rwin, std::nullopt, rgraded))
                         .first;
            it->second.add_term(re, c);
        }
        return out;
    }

    static ExpVec negated(const ExpVec& v) {
        ExpVec r = v;
        for (auto& x : r) x = -x;
        return r;
    }

    /// Convolve x and y into this series, dropping anything outside the
    /// window.  Shared by operator* (derived window) and mul_boxed (fixed
    /// window); x and y must already share this series' denominator.
    void convolve(const TruncSeries& x, const TruncSeries& y) {
        const TruncSeries& small = x.terms_.size() <= y.terms_.size() ? x : y;
        const TruncSeries& big = x.terms_.size() <= y.terms_.size() ? y : x;
        ExpVec e(gens_.size());
        for (const auto& [ea, ca] : small.terms_) {
            for (const auto& [eb, cb] : big.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                if (!in_window(e)) continue;
                add_term(e, ca * cb);
            }
        }
    }

  private:
    static constexpr long kIterLimit = 200000;

    static long divide_floor(long a, long m) {
        long q = a / m, r = a % m;
        return (r != 0 && (r < 0) != (m < 0)) ? q - 1 : q;
    }

    long graded_lo() const {
        long s = 0;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (graded_[i]) s = sat_add(s, win_[i].lo);
        return s;
    }

    static std::vector<Window> add_windows(const TruncSeries& a, const TruncSeries& b) {
        std::vector<Window> w(a.gens_.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i].lo = std::min(a.win_[i].lo, b.win_[i].lo);
            w[i].hi = std::min(a.win_[i].hi, b.win_[i].hi);
        }
        return w;
    }

    static std::optional<long> min_cap(const TruncSeries& a, const TruncSeries& b) {
        if (!a.total_cap_) return b.total_cap_;
        if (!b.total_cap_) return a.total_cap_;
        return std::min(*a.total_cap_, *b.total_cap_);
    }

    static std::pair<TruncSeries, TruncSeries> aligned(const TruncSeries& a,
                                                       const TruncSeries& b) {
        if (a.gens_ != b.gens_) throw series_error("incompatible generator names");
        if (a.graded_ != b.graded_) throw series_error("incompatible grading masks");
        long d = std::lcm(a.expdenom_, b.expdenom_);
        return {a.rescaled(d), b.rescaled(d)};
    }

    std::vector<std::string> gens_;
    long expdenom_ = 1;
    std::vector<Window> win_;
    std::optional<long> total_cap_;
    std::vector<bool> graded_;
    std::map<ExpVec, Rational> terms_;
};

/// A monomial escapes the window under repeated multiplication iff it moves
/// toward some finite cut (lower bounds are always finite by construction).
inline bool escapes(const TruncSeries& s, const ExpVec& v) {
    long g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0 && s.windows()[i].hi < kExpInf) return true;
        if (v[i] < 0) return true;
        if (s.graded()[i]) g += v[i];
    }
    if (s.total_cap() && g > 0) return true;
    return false;
}

/// Largest j for which j*v can still lie inside the window of s.
inline long escape_bound(const TruncSeries& s, const ExpVec& v) {
    long jmax = kExpInf;
    long g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Window& w = s.windows()[i];
        if (v[i] > 0 && w.hi < kExpInf)
            jmax = std::min(jmax, w.hi >= 0 ? w.hi / v[i] : 0L);
        if (v[i] < 0) jmax = std::min(jmax, w.lo <= 0 ? w.lo / v[i] : 0L);
        if (s.graded()[i]) g += v[i];
    }
    if (s.total_cap() && g > 0)
        jmax = std::min(jmax, *s.total_cap() >= 0 ? *s.total_cap() / g : 0L);
    if (jmax >= kExpInf) throw series_error("escape_bound: monomial never escapes");
    return jmax;
}

// --------------------------------------------------------------------------
// Boxed (fixed-window) arithmetic.
//
// Every helper below computes inside the window of `shape` (a series used
// purely as a prototype; its terms are ignored) and returns its result with
// exactly that window, treating the inputs as exactly known there.  That
// claim is not checked by the window algebra; call sites are responsible for
// certifying it, normally by recomputing with the window enlarged and
// comparing on the region actually consumed.

inline TruncSeries mul_boxed(const TruncSeries& a, const TruncSeries& b,
                             const TruncSeries& shape) {
    long d = std::lcm(std::lcm(a.expdenom(), b.expdenom()), shape.expdenom());
    TruncSeries r = shape.rescaled(d).cleared();
    r.convolve(a.rescaled(d), b.rescaled(d));
    return r;
}

namespace detail {
inline constexpr long kBoxedIterLimit = 200000;
}

/// log(f), constant term of f must be 1; computed inside shape's window.
inline TruncSeries log_boxed(const TruncSeries& f, const TruncSeries& shape) {
    TruncSeries g = f.certified(shape);
    ExpVec zero(g.gens().size(), 0);
    if (g.coeff(zero) != 1) throw series_error("log_boxed: constant term must be 1");
    g.add_term(zero, -1);  // g = f - 1 inside the box
    TruncSeries acc = g.cleared();
    TruncSeries pw = g;
    for (long n = 1; !pw.is_zero(); ++n) {
        if (n > detail::kBoxedIterLimit) throw series_error("log_boxed: does not truncate");
        acc = acc + Rational(n % 2 ? 1 : -1, n) * pw;
        pw = mul_boxed(pw, g, shape);
    }
    return acc;
}

/// exp(f), constant term of f must be 0; computed inside shape's window.
inline TruncSeries exp_boxed(const TruncSeries& f, const TruncSeries& shape) {
    TruncSeries g = f.certified(shape);
    ExpVec zero(g.gens().size(), 0);
    if (g.coeff(zero) != 0) throw series_error("exp_boxed: constant term must be 0");
    TruncSeries acc = g.cleared();
    acc.add_term(zero, 1);
    TruncSeries pw = g;
    Rational fact = 1;
    for (long n = 1; !pw.is_zero(); ++n) {
        if (n > detail::kBoxedIterLimit) throw series_error("exp_boxed: does not truncate");
        fact /= n;
        acc = acc + fact * pw;
        pw = mul_boxed(pw, g, shape);
    }
    return acc;
}

/// 1/f inside shape's window.  The lex-minimal term of f (generator priority
/// = declaration order, so capped generators should come first) is factored
/// out and the tail expanded geometrically.
inline TruncSeries invert_boxed(const TruncSeries& f, const TruncSeries& shape) {
    if (f.is_zero()) throw series_error("invert_boxed: zero series");
    long d = std::lcm(f.expdenom(), shape.expdenom());
    TruncSeries fs = f.rescaled(d);
    const auto [v, cv] = *fs.terms().begin();
    // Work in the box shifted by +v so the final shift by -v lands on shape.
    TruncSeries ibox = shape.rescaled(d).cleared().shifted(v);
    TruncSeries g = fs.shifted(TruncSeries::negated(v), Rational(1) / cv).certified(ibox);
    ExpVec zero(g.gens().size(), 0);
    if (g.coeff(zero) != 1)
        throw series_error("invert_boxed: leading term is not lex-minimal");
    g.add_term(zero, -1);
    for (const auto& [e, c] : g.terms())
        if (e <= zero) throw series_error("invert_boxed: tail is not lex-positive");
    TruncSeries acc = ibox.cleared();
    acc.add_term(zero, 1);
    TruncSeries pw = g;
    Rational sign = -1;
    for (long n = 1; !pw.is_zero(); ++n) {
        if (n > detail::kBoxedIterLimit)
            throw series_error("invert_boxed: expansion does not truncate");
        acc = acc + sign * pw;
        pw = mul_boxed(pw, g, ibox);
        sign = -sign;
    }
    return acc.shifted(TruncSeries::negated(v), Rational(1) / cv);
}

/// One factor (1 - c * x^v)^(-e) of a truncated infinite product.
struct ProductFactor {
    ExpVec exps;         // in 1/expdenom units of the target series
    long power = 1;      // e (negative e gives a plain (1 - c x^v)^{|e|})
    Rational coeff = 1;  // c
};

/// Expand prod (1 - c_i x^{v_i})^{-e_i} inside shape's window by summing the
/// factor logarithms and exponentiating.  Factor order does not matter.
/// Each v_i must escape the window (otherwise the product cannot truncate).
inline TruncSeries product_expand(const std::vector<ProductFactor>& factors,
                                  const TruncSeries& shape) {
    TruncSeries acc = shape.cleared();
    const std::size_t arity = acc.gens().size();
    for (const auto& f : factors) {
        if (f.exps.size() != arity)
            throw series_error("product_expand: factor exponent arity mismatch");
        if (!escapes(acc, f.exps))
            throw series_error("product_expand: factor does not escape the window");
        // -e * log(1 - c x^v) = e * sum_{j>=1} c^j x^{jv} / j
        long jmax = escape_bound(acc, f.exps);
        ExpVec e(arity, 0);
        Rational cj = 1;
        for (long j = 1; j <= jmax; ++j) {
            for (std::size_t i = 0; i < arity; ++i) e[i] += f.exps[i];
            cj *= f.coeff;
            if (acc.in_window(e)) acc.add_term(e, Rational(f.power) * cj / j);
        }
    }
    return exp_boxed(acc, shape);
}

}  // namespace banana
