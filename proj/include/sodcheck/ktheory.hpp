#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sodcheck/chow.hpp"
#include "sodcheck/error.hpp"

namespace sodcheck {

/* Named generator of the K-lattice with its cached Chern character.
   Line bundles carry their divisor, twisted structure sheaves of curves
   carry (curve class, twist); anything else is a bare (name, ch) pair. */
struct SheafAtom {
    std::string name;
    ChowClass ch;
    std::optional<DivisorClass> divisor;
    std::optional<std::pair<CurveClass, long long>> curve; // (class, twist)
    int support_dim = 0;

    friend bool operator==(const SheafAtom& a, const SheafAtom& b) {
        return a.name == b.name && a.ch == b.ch && a.divisor == b.divisor &&
               a.curve == b.curve && a.support_dim == b.support_dim;
    }
};

namespace detail {

inline void check_support(const SheafAtom& atom, int dim) {
    for (int k = 0; k < dim - atom.support_dim; ++k)
        if (!atom.ch.component(k).is_zero())
            throw Error("support-constraint",
                        "atom '" + atom.name + "' has ch below codimension " +
                            std::to_string(dim - atom.support_dim));
}

} // namespace detail

inline SheafAtom line_bundle_atom(const ChowRing& ring, DivisorClass d) {
    return SheafAtom{line_bundle_name(d, ring.geometry()), ring.chern_character(d), d,
                     std::nullopt, ring.dimension()};
}

/* O_c(twist) on a rational exceptional curve: ch = [c] + chi * [pt] with
   chi = twist + 1 + (K.c)/2, the Riemann-Roch count at genus zero. Only
   basis curves and explicitly declared exceptional classes are accepted. */
inline SheafAtom curve_sheaf_atom(const ChowRing& ring, const std::string& curve_name,
                                  CurveClass c, long long twist,
                                  const std::vector<CurveClass>& declared = {}) {
    const bool basis = (c == CurveClass{1, 0}) || (c == CurveClass{0, 1});
    bool known = basis;
    for (const CurveClass& d : declared) known = known || c == d;
    if (!known)
        throw Error("non-reduced-curve",
                    "curve class " + format_curve(c) + " is not a basis curve or a declared "
                    "exceptional curve");
    const long long kc = ring.intersect(ring.canonical_class(), c);
    const Rational chi = Rational(twist + 1) + Rational(kc, 2);
    SheafAtom atom{"O_" + curve_name + "(" + std::to_string(twist) + ")",
                   ring.curve_class(c) + chi * ring.point_class(), std::nullopt,
                   std::make_pair(c, twist), 1};
    detail::check_support(atom, ring.dimension());
    return atom;
}

inline SheafAtom generic_atom(const ChowRing& ring, std::string name, ChowClass ch,
                              int support_dim) {
    SheafAtom atom{std::move(name), std::move(ch), std::nullopt, std::nullopt, support_dim};
    detail::check_support(atom, ring.dimension());
    return atom;
}

/* Formal integer combination of atoms. Shifts enter as sign flips:
   [F[1]] = -[F]; a cone contributes [B] - [A]. */
class KClass {
public:
    KClass() = default;

    struct Term {
        SheafAtom atom;
        long long mult = 0;
    };

    static KClass of(const SheafAtom& atom, long long mult = 1) {
        KClass k;
        k.add(atom, mult);
        return k;
    }

    void add(const SheafAtom& atom, long long mult) {
        if (mult == 0) return;
        auto it = terms_.find(atom.name);
        if (it == terms_.end()) {
            terms_.emplace(atom.name, Term{atom, mult});
            return;
        }
        if (!(it->second.atom == atom))
            throw Error("atom-clash", "two distinct atoms named '" + atom.name + "'");
        it->second.mult = detail::checked_add(it->second.mult, mult);
        if (it->second.mult == 0) terms_.erase(it);
    }

    const std::map<std::string, Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /* Linear extension of the cached Chern characters. */
    ChowClass ch(const ChowRing& ring) const {
        ChowClass out = ring.zero();
        for (const auto& [name, term] : terms_) out = out + Rational(term.mult) * term.atom.ch;
        return out;
    }

    KClass shifted(int n) const { return n % 2 == 0 ? *this : -*this; }

    friend KClass operator+(const KClass& a, const KClass& b) {
        KClass out = a;
        for (const auto& [name, term] : b.terms_) out.add(term.atom, term.mult);
        return out;
    }
    friend KClass operator-(const KClass& a, const KClass& b) {
        KClass out = a;
        for (const auto& [name, term] : b.terms_) out.add(term.atom, -term.mult);
        return out;
    }
    friend KClass operator*(long long n, const KClass& a) {
        KClass out;
        for (const auto& [name, term] : a.terms_) out.add(term.atom, detail::checked_mul(n, term.mult));
        return out;
    }
    KClass operator-() const { return -1 * *this; }

    friend bool operator==(const KClass& a, const KClass& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || ia->second.mult != ib->second.mult ||
                !(ia->second.atom == ib->second.atom))
                return false;
        return true;
    }
    friend bool operator!=(const KClass& a, const KClass& b) { return !(a == b); }

    std::string str() const {
        std::string out;
        for (const auto& [name, term] : terms_) {
            std::string mag =
                std::abs(term.mult) == 1 ? "[" + name + "]"
                                         : std::to_string(std::abs(term.mult)) + "[" + name + "]";
            if (out.empty())
                out = (term.mult < 0 ? "-" : "") + mag;
            else
                out += (term.mult < 0 ? " - " : " + ") + mag;
        }
        return out.empty() ? "0" : out;
    }

private:
    std::map<std::string, Term> terms_;
};

inline KClass kclass_of_line_bundle(const ChowRing& ring, DivisorClass d) {
    return KClass::of(line_bundle_atom(ring, d));
}

inline KClass kclass_of_curve_sheaf(const ChowRing& ring, const std::string& curve_name,
                                    CurveClass c, long long twist,
                                    const std::vector<CurveClass>& declared = {}) {
    return KClass::of(curve_sheaf_atom(ring, curve_name, c, twist, declared));
}

/* Euler pairing chi(F, G) = deg(ch(F)-dual . ch(G) . td). Integral for
   honest K-classes; a non-integral degree signals a broken character. */
inline long long euler_pairing(const ChowRing& ring, const KClass& f, const KClass& g) {
    const Rational value = ring.degree(f.ch(ring).dual() * g.ch(ring) * ring.todd_class());
    if (!value.is_integer())
        throw Error("non-integral-pairing",
                    "chi(" + f.str() + ", " + g.str() + ") = " + value.str());
    return value.as_integer();
}

namespace detail {

inline SheafAtom atom_dual(const ChowRing& ring, const SheafAtom& atom) {
    if (atom.divisor)
        return line_bundle_atom(ring, -*atom.divisor);
    if (atom.curve) {
        // O_c(t)-dual matches O_c(-t - 2 - K.c) at character level: the
        // degree-two part is even, and the point coefficient negates.
        const auto [c, t] = *atom.curve;
        const long long kc = ring.intersect(ring.canonical_class(), c);
        std::string base = atom.name.substr(0, atom.name.find('('));
        return curve_sheaf_atom(ring, base.substr(2), c, -t - 2 - kc, {c});
    }
    std::string name = atom.name.rfind("dual(", 0) == 0 && atom.name.back() == ')'
                           ? atom.name.substr(5, atom.name.size() - 6)
                           : "dual(" + atom.name + ")";
    return SheafAtom{std::move(name), atom.ch.dual(), std::nullopt, std::nullopt,
                     atom.support_dim};
}

} // namespace detail

/* Term-by-term dual; ch goes to its dual (odd components negated). */
inline KClass kclass_dual(const ChowRing& ring, const KClass& f) {
    KClass out;
    for (const auto& [name, term] : f.terms())
        out.add(detail::atom_dual(ring, term.atom), term.mult);
    return out;
}

/* Tensoring by the line bundle O(d). Structured atoms stay structured;
   a bare atom picks up the exponential factor on its character. */
inline KClass kclass_twist(const ChowRing& ring, const KClass& f, DivisorClass d) {
    KClass out;
    for (const auto& [name, term] : f.terms()) {
        const SheafAtom& atom = term.atom;
        if (atom.divisor) {
            out.add(line_bundle_atom(ring, *atom.divisor + d), term.mult);
        } else if (atom.curve) {
            const auto [c, t] = *atom.curve;
            std::string base = atom.name.substr(0, atom.name.find('('));
            out.add(curve_sheaf_atom(ring, base.substr(2), c, t + ring.intersect(d, c), {c}),
                    term.mult);
        } else {
            out.add(generic_atom(ring, atom.name + "(" + format_divisor(d, ring.geometry(), false) + ")",
                                 atom.ch * ring.chern_character(d), atom.support_dim),
                    term.mult);
        }
    }
    return out;
}

} // namespace sodcheck
