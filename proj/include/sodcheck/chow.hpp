#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sodcheck/error.hpp"
#include "sodcheck/linalg.hpp"
#include "sodcheck/rational.hpp"

namespace sodcheck {

/* The projectivized bundle P(O(a_1) + ... + O(a_r)) over the projective
   line. The total space has dimension r (base 1, fibre r-1). */
struct BundleGeometry {
    std::vector<long long> twists;
    std::string divisor_e = "E";
    std::string divisor_h = "H";

    int rank() const { return static_cast<int>(twists.size()); }
    int dimension() const { return rank(); }

    long long twist_sum() const {
        long long s = 0;
        for (long long a : twists) s = detail::checked_add(s, a);
        return s;
    }

    /* The small resolution of the conifold: P(O(-1) + O(-1) + O). */
    static BundleGeometry conifold() { return BundleGeometry{{-1, -1, 0}}; }
};

/* Integer divisor class aE + bH in the rank-two divisor lattice. */
struct DivisorClass {
    long long e = 0;
    long long h = 0;

    friend DivisorClass operator+(DivisorClass a, DivisorClass b) {
        return {detail::checked_add(a.e, b.e), detail::checked_add(a.h, b.h)};
    }
    friend DivisorClass operator-(DivisorClass a, DivisorClass b) {
        return {detail::checked_sub(a.e, b.e), detail::checked_sub(a.h, b.h)};
    }
    friend DivisorClass operator*(long long n, DivisorClass d) {
        return {detail::checked_mul(n, d.e), detail::checked_mul(n, d.h)};
    }
    DivisorClass operator-() const { return {-e, -h}; }
    friend bool operator==(DivisorClass a, DivisorClass b) { return a.e == b.e && a.h == b.h; }
    friend bool operator!=(DivisorClass a, DivisorClass b) { return !(a == b); }
    bool is_zero() const { return e == 0 && h == 0; }
};

/* Integer curve class cC + lL; C is the section contracted by the small
   resolution, L a line in a fibre. All curves in scope are rational. */
struct CurveClass {
    long long c = 0;
    long long l = 0;

    static constexpr int genus = 0;

    friend CurveClass operator+(CurveClass a, CurveClass b) {
        return {detail::checked_add(a.c, b.c), detail::checked_add(a.l, b.l)};
    }
    friend CurveClass operator-(CurveClass a, CurveClass b) {
        return {detail::checked_sub(a.c, b.c), detail::checked_sub(a.l, b.l)};
    }
    friend bool operator==(CurveClass a, CurveClass b) { return a.c == b.c && a.l == b.l; }
    friend bool operator!=(CurveClass a, CurveClass b) { return !(a == b); }
    bool is_zero() const { return c == 0 && l == 0; }
};

/* Element of the Chow ring of the projectivized bundle in normal form:
   a rational combination of the monomials h^i xi^j with i in {0,1} and
   j in {0,...,r-1}. The rewrite rules h^2 -> 0 and
   xi^r -> -(sum a_i) h xi^{r-1} make this representative unique. */
class ChowClass {
public:
    ChowClass() = default;
    ChowClass(int rank, long long twist_sum)
        : rank_(rank), twist_sum_(twist_sum), coeff_(2 * static_cast<size_t>(rank)) {}

    int rank() const { return rank_; }

    const Rational& coeff(int i, int j) const { return coeff_[index(i, j)]; }

    bool is_zero() const {
        for (const Rational& c : coeff_)
            if (!c.is_zero()) return false;
        return true;
    }

    /* Pure degree-k part (degree of h^i xi^j is i + j). */
    ChowClass component(int k) const {
        ChowClass out(rank_, twist_sum_);
        for (int i = 0; i <= 1; ++i)
            for (int j = 0; j < rank_; ++j)
                if (i + j == k) out.coeff_[index(i, j)] = coeff_[index(i, j)];
        return out;
    }

    /* ch -> ch-dual: negates the odd-degree components. */
    ChowClass dual() const {
        ChowClass out = *this;
        for (int i = 0; i <= 1; ++i)
            for (int j = 0; j < rank_; ++j)
                if ((i + j) % 2 == 1) out.coeff_[index(i, j)] = -coeff_[index(i, j)];
        return out;
    }

    friend ChowClass operator+(const ChowClass& a, const ChowClass& b) {
        a.check_compatible(b);
        ChowClass out = a;
        for (size_t k = 0; k < out.coeff_.size(); ++k) out.coeff_[k] += b.coeff_[k];
        return out;
    }
    friend ChowClass operator-(const ChowClass& a, const ChowClass& b) {
        a.check_compatible(b);
        ChowClass out = a;
        for (size_t k = 0; k < out.coeff_.size(); ++k) out.coeff_[k] -= b.coeff_[k];
        return out;
    }
    friend ChowClass operator*(const Rational& s, const ChowClass& a) {
        ChowClass out = a;
        for (Rational& c : out.coeff_) c *= s;
        return out;
    }
    ChowClass operator-() const { return Rational(-1) * *this; }

    /* Ring product; reduction to normal form is built in. */
    friend ChowClass operator*(const ChowClass& a, const ChowClass& b) {
        a.check_compatible(b);
        ChowClass out(a.rank_, a.twist_sum_);
        for (int i1 = 0; i1 <= 1; ++i1)
            for (int j1 = 0; j1 < a.rank_; ++j1) {
                const Rational& ca = a.coeff(i1, j1);
                if (ca.is_zero()) continue;
                for (int i2 = 0; i2 <= 1; ++i2)
                    for (int j2 = 0; j2 < a.rank_; ++j2) {
                        const Rational& cb = b.coeff(i2, j2);
                        if (cb.is_zero()) continue;
                        out.accumulate_monomial(i1 + i2, j1 + j2, ca * cb);
                    }
            }
        return out;
    }

    friend bool operator==(const ChowClass& a, const ChowClass& b) {
        a.check_compatible(b);
        return a.coeff_ == b.coeff_;
    }
    friend bool operator!=(const ChowClass& a, const ChowClass& b) { return !(a == b); }

    std::string str() const {
        std::string out;
        for (int k = 0; k <= rank_; ++k)
            for (int i = 0; i <= 1; ++i)
                for (int j = 0; j < rank_; ++j) {
                    if (i + j != k) continue;
                    const Rational& c = coeff_[index(i, j)];
                    if (c.is_zero()) continue;
                    std::string mono;
                    if (i == 1) mono += "h";
                    if (j > 0) {
                        if (!mono.empty()) mono += "*";
                        mono += j == 1 ? "xi" : "xi^" + std::to_string(j);
                    }
                    std::string term = c.str();
                    if (mono.empty())
                        ; // constant term
                    else if (term == "1")
                        term = mono;
                    else if (term == "-1")
                        term = "-" + mono;
                    else
                        term += "*" + mono;
                    if (!out.empty() && term[0] != '-') out += "+";
                    out += term;
                }
        return out.empty() ? "0" : out;
    }

private:
    friend class ChowRing;

    size_t index(int i, int j) const { return static_cast<size_t>(i * rank_ + j); }

    void check_compatible(const ChowClass& o) const {
        if (rank_ != o.rank_ || twist_sum_ != o.twist_sum_)
            throw std::invalid_argument("chow classes belong to different rings");
    }

    /* Adds c * h^i xi^j after reduction. Any monomial outside the normal
       basis collapses in one step: h^2 kills i >= 2 and everything past
       xi^r, while xi^r itself rewrites to -(sum a_i) h xi^{r-1}. */
    void accumulate_monomial(int i, int j, const Rational& c) {
        if (i >= 2) return;
        if (j < rank_) {
            coeff_[index(i, j)] += c;
            return;
        }
        if (i == 0 && j == rank_) coeff_[index(1, rank_ - 1)] += Rational(-twist_sum_) * c;
        // i >= 1 with j >= r, or j > r: a factor h^2 appears, hence zero.
    }

    int rank_ = 0;
    long long twist_sum_ = 0;
    std::vector<Rational> coeff_;
};

/* Free polynomial in h and xi before reduction: (i, j) -> coefficient. */
using RawPoly = std::map<std::pair<int, int>, Rational>;

/* The Chow ring of the bundle, with the divisor/curve dictionaries, the
   canonical class, Chern data and the intersection solver. The dictionary
   is solved from the pairing table [[E.C, E.L], [H.C, H.L]] = [[0,1],[1,0]]
   at construction; a dictionary that fails the table aborts. */
class ChowRing {
public:
    explicit ChowRing(BundleGeometry geometry) : g_(std::move(geometry)) {
        if (g_.rank() < 2)
            throw Error("invalid-geometry", "bundle rank must be at least 2");
        const int r = g_.rank();
        const long long s = g_.twist_sum();

        e_chow_ = monomial(0, 1, 1); // sub-line convention: E = xi
        h_chow_ = monomial(1, 0, 1);
        point_ = monomial(1, r - 1, 1);

        // Solve the curve dictionary from the pairing table. Curve classes
        // live in degree r-1, spanned by xi^{r-1} and h xi^{r-2}.
        const ChowClass mono_a = monomial(0, r - 1, 1);
        const ChowClass mono_b = monomial(1, r - 2, 1);
        const RationalMatrix m = {{degree(e_chow_ * mono_a), degree(e_chow_ * mono_b)},
                                  {degree(h_chow_ * mono_a), degree(h_chow_ * mono_b)}};
        const auto c_sol = linalg::solve_unique(m, {Rational(0), Rational(1)});
        const auto l_sol = linalg::solve_unique(m, {Rational(1), Rational(0)});
        if (!c_sol || !l_sol)
            throw Error("dictionary-validation", "curve dictionary has no solution");
        c_chow_ = (*c_sol)[0] * mono_a + (*c_sol)[1] * mono_b;
        l_chow_ = (*l_sol)[0] * mono_a + (*l_sol)[1] * mono_b;

        if (!pairing_table_valid(e_chow_, h_chow_, c_chow_, l_chow_))
            throw Error("dictionary-validation",
                        "divisor/curve dictionary fails the intersection table");

        canonical_ = DivisorClass{-r, -(s + 2)};

        // Chern roots of T_Y from the relative Euler sequence plus the base:
        // {2h} and {xi + a_i h}.
        chern_roots_.push_back(Rational(2) * h_chow_);
        for (long long a : g_.twists) chern_roots_.push_back(e_chow_ + Rational(a) * h_chow_);

        todd_ = one();
        for (const ChowClass& x : chern_roots_) todd_ = todd_ * todd_factor(x);

        chern_total_ = one();
        for (const ChowClass& x : chern_roots_) chern_total_ = chern_total_ * (one() + x);
    }

    const BundleGeometry& geometry() const { return g_; }
    int dimension() const { return g_.dimension(); }

    ChowClass zero() const { return ChowClass(g_.rank(), g_.twist_sum()); }
    ChowClass one() const { return monomial(0, 0, 1); }

    ChowClass monomial(int i, int j, Rational c) const {
        ChowClass out(g_.rank(), g_.twist_sum());
        out.accumulate_monomial(i, j, c);
        return out;
    }

    /* Reduction of a free polynomial to normal form. Total and idempotent. */
    ChowClass normal_form(const RawPoly& p) const {
        ChowClass out = zero();
        for (const auto& [mono, c] : p) out.accumulate_monomial(mono.first, mono.second, c);
        return out;
    }

    /* Integration over the total space: the coefficient of h xi^{r-1}. */
    Rational degree(const ChowClass& x) const { return x.coeff(1, g_.rank() - 1); }

    const ChowClass& point_class() const { return point_; }

    ChowClass divisor_class(DivisorClass d) const {
        return Rational(d.e) * e_chow_ + Rational(d.h) * h_chow_;
    }

    ChowClass curve_class(CurveClass c) const {
        return Rational(c.c) * c_chow_ + Rational(c.l) * l_chow_;
    }

    long long intersect(DivisorClass d, CurveClass c) const {
        return degree(divisor_class(d) * curve_class(c)).as_integer();
    }

    /* The unique integral divisor pairing as prescribed against the given
       curves. Errors: "underdetermined" when the curve classes do not span
       the lattice over Q, "inconsistent" when no rational solution exists,
       "non-integral" when the rational solution is not integral. */
    DivisorClass solve_divisor(const std::vector<std::pair<CurveClass, long long>>& constraints) const {
        RationalMatrix span_rows;
        for (const auto& [c, v] : constraints)
            span_rows.push_back({Rational(c.c), Rational(c.l)});
        if (linalg::rank(span_rows) < 2)
            throw Error("underdetermined", "constraint curves do not span the curve lattice");

        RationalMatrix m;
        std::vector<Rational> rhs;
        for (const auto& [c, v] : constraints) {
            m.push_back({Rational(intersect(DivisorClass{1, 0}, c)),
                         Rational(intersect(DivisorClass{0, 1}, c))});
            rhs.push_back(Rational(v));
        }
        const auto sol = linalg::solve_unique(m, rhs);
        if (!sol)
            throw Error("inconsistent", "no rational divisor satisfies the constraints");
        if (!(*sol)[0].is_integer() || !(*sol)[1].is_integer())
            throw Error("non-integral", "rational solution is not an integral divisor");
        return DivisorClass{(*sol)[0].as_integer(), (*sol)[1].as_integer()};
    }

    DivisorClass canonical_class() const { return canonical_; }

    /* Exponential Chern character of a line bundle, truncated by dimension. */
    ChowClass chern_character(DivisorClass d) const {
        const ChowClass x = divisor_class(d);
        ChowClass out = one();
        ChowClass power = one();
        Rational factorial(1);
        for (int k = 1; k <= dimension(); ++k) {
            power = power * x;
            factorial *= Rational(k);
            out = out + Rational(1) / factorial * power;
        }
        return out;
    }

    const ChowClass& todd_class() const { return todd_; }

    ChowClass chern_class(int k) const { return chern_total_.component(k); }

    /* (K_Y + s) . c, the adjunction restriction number. */
    long long adjunction_value(DivisorClass s, CurveClass c) const {
        return intersect(canonical_ + s, c);
    }

    /* Exact check of the pairing table [[0,1],[1,0]]; exposed for tests that
       corrupt the dictionary on purpose. */
    bool pairing_table_valid(const ChowClass& e, const ChowClass& h, const ChowClass& c,
                             const ChowClass& l) const {
        return degree(e * c) == Rational(0) && degree(e * l) == Rational(1) &&
               degree(h * c) == Rational(1) && degree(h * l) == Rational(0);
    }

private:
    /* Power series x / (1 - exp(-x)) evaluated on a degree-one class,
       truncated by dimension. Coefficients by exact series inversion. */
    ChowClass todd_factor(const ChowClass& x) const {
        const int n = dimension();
        std::vector<Rational> f(n + 1); // (1 - exp(-x))/x = sum (-1)^k x^k/(k+1)!
        Rational factorial(1);
        for (int k = 0; k <= n; ++k) {
            factorial *= Rational(k + 1);
            f[k] = Rational(k % 2 == 0 ? 1 : -1) / factorial;
        }
        std::vector<Rational> t(n + 1);
        t[0] = Rational(1);
        for (int k = 1; k <= n; ++k) {
            Rational acc(0);
            for (int i = 1; i <= k; ++i) acc += f[i] * t[k - i];
            t[k] = -acc;
        }
        ChowClass out = zero();
        ChowClass power = one();
        for (int k = 0; k <= n; ++k) {
            out = out + t[k] * power;
            power = power * x;
        }
        return out;
    }

    BundleGeometry g_;
    ChowClass e_chow_, h_chow_, point_, c_chow_, l_chow_;
    ChowClass todd_, chern_total_;
    std::vector<ChowClass> chern_roots_;
    DivisorClass canonical_;
};

/* --- formatting ------------------------------------------------------- */

namespace detail {

inline void append_term(std::string& out, long long coeff, const std::string& sym, bool spaced) {
    if (coeff == 0) return;
    std::string mag = std::abs(coeff) == 1 ? sym : std::to_string(std::abs(coeff)) + sym;
    if (out.empty()) {
        out = (coeff < 0 ? "-" : "") + mag;
    } else if (spaced) {
        out += (coeff < 0 ? " - " : " + ") + mag;
    } else {
        out += (coeff < 0 ? "-" : "+") + mag;
    }
}

} // namespace detail

/* "E - H" (spaced) or "-2E+H" (compact); "0" for the zero divisor. */
inline std::string format_divisor(DivisorClass d, const BundleGeometry& g, bool spaced = true) {
    std::string out;
    detail::append_term(out, d.e, g.divisor_e, spaced);
    detail::append_term(out, d.h, g.divisor_h, spaced);
    return out.empty() ? "0" : out;
}

/* Canonical line-bundle name: "O", "O(-H)", "O(-2E+H)", ... */
inline std::string line_bundle_name(DivisorClass d, const BundleGeometry& g) {
    if (d.is_zero()) return "O";
    return "O(" + format_divisor(d, g, false) + ")";
}

inline std::string format_curve(CurveClass c, bool spaced = true) {
    std::string out;
    detail::append_term(out, c.c, "C", spaced);
    detail::append_term(out, c.l, "L", spaced);
    return out.empty() ? "0" : out;
}

} // namespace sodcheck
