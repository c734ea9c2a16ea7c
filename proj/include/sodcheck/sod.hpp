#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sodcheck/cohomology.hpp"
#include "sodcheck/error.hpp"
#include "sodcheck/ktheory.hpp"
#include "sodcheck/linalg.hpp"

namespace sodcheck {

/* Object of the derived category tracked by name and K-class; line
   bundles keep their divisor so Ext-level checks stay available. */
struct ObjectRef {
    std::string name;
    KClass kclass;
    std::optional<DivisorClass> divisor;
};

inline ObjectRef line_bundle_object(const ChowRing& ring, DivisorClass d) {
    return ObjectRef{line_bundle_name(d, ring.geometry()), kclass_of_line_bundle(ring, d), d};
}

struct ExceptionalCollection {
    std::string name;
    std::vector<ObjectRef> objects;
};

/* Exceptional curves of the contraction with their dual intersection
   graph and the name of the singular target. */
struct ContractionData {
    std::vector<std::pair<std::string, CurveClass>> curves;
    std::vector<std::pair<std::string, std::string>> adjacency;
    std::string sink = "X";

    void validate() const {
        for (size_t i = 0; i < curves.size(); ++i)
            for (size_t j = i + 1; j < curves.size(); ++j) {
                if (curves[i].first == curves[j].first)
                    throw Error("contraction-invalid", "duplicate curve name " + curves[i].first);
                if (curves[i].second == curves[j].second)
                    throw Error("contraction-invalid",
                                "curves " + curves[i].first + ", " + curves[j].first +
                                    " share a class");
            }
        for (const auto& [u, v] : adjacency) {
            if (u == v) throw Error("contraction-invalid", "adjacency loop at " + u);
            if (!has_curve(u) || !has_curve(v))
                throw Error("contraction-invalid", "adjacency references unknown curve");
        }
    }

    bool has_curve(const std::string& name) const {
        for (const auto& [n, c] : curves)
            if (n == name) return true;
        return false;
    }

    CurveClass curve_class(const std::string& name) const {
        for (const auto& [n, c] : curves)
            if (n == name) return c;
        throw Error("contraction-invalid", "unknown curve " + name);
    }

    std::vector<CurveClass> declared_classes() const {
        std::vector<CurveClass> out;
        for (const auto& [n, c] : curves) out.push_back(c);
        return out;
    }

    /* Generator O_{E_j}(-1) of the null category for curve j. */
    KClass null_generator(const ChowRing& ring, const std::string& name) const {
        return kclass_of_curve_sheaf(ring, name, curve_class(name), -1, declared_classes());
    }
};

struct SODBlock {
    std::string name;
    std::vector<ObjectRef> objects;
};

/* Blocks of the upstairs decomposition, the curve-to-block assignment
   (1-based), and per-curve membership
   witnesses: a finite resolution of O_{E_j}(-1) by block objects. */
struct SODSpec {
    std::vector<SODBlock> blocks;
    std::map<std::string, int> assignment;
    std::map<std::string, std::vector<std::pair<std::string, long long>>> witnesses;
};

/* --- Gram matrices and exceptionality ---------------------------------- */

inline IntMatrix gram_matrix(const ChowRing& ring, const ExceptionalCollection& coll) {
    const size_t n = coll.objects.size();
    IntMatrix g(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            g[i][j] = euler_pairing(ring, coll.objects[i].kclass, coll.objects[j].kclass);
    return g;
}

struct PairFailure {
    size_t i = 0; // row (source) index
    size_t j = 0;
    std::string source;
    std::string target;
    CohomologyVector ext; // empty at Gram level
    long long gram = 0;
};

struct VerifyVerdict {
    bool pass = false;
    bool ext_level = false;    // false: downgraded to the Gram-level check
    std::string downgrade;     // "kclass-only" when some object lacks a divisor
    IntMatrix gram;
    std::vector<std::vector<CohomologyVector>> ext_table; // filled iff ext_level
    std::vector<PairFailure> failures;
};

/* Ext-level exceptionality: every strictly later object has no morphisms
   (in any degree) to an earlier one and simple endomorphisms. Falls back
   to the Gram matrix when some object is known by K-class only. */
inline VerifyVerdict verify_exceptional(const ChowRing& ring, const ExceptionalCollection& coll) {
    VerifyVerdict v;
    v.gram = gram_matrix(ring, coll);
    const size_t n = coll.objects.size();

    v.ext_level = true;
    for (const ObjectRef& o : coll.objects)
        if (!o.divisor) {
            v.ext_level = false;
            v.downgrade = "kclass-only";
            break;
        }

    if (v.ext_level) {
        CohomologyVector unit(static_cast<size_t>(ring.dimension()) + 1, 0);
        unit[0] = 1;
        v.ext_table.assign(n, std::vector<CohomologyVector>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                v.ext_table[i][j] =
                    rhom_dims(*coll.objects[i].divisor, *coll.objects[j].divisor, ring);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j <= i; ++j) {
                const CohomologyVector& ext = v.ext_table[i][j];
                const bool ok = i == j ? ext == unit
                                       : std::all_of(ext.begin(), ext.end(),
                                                     [](long long x) { return x == 0; });
                if (!ok)
                    v.failures.push_back({i, j, coll.objects[i].name, coll.objects[j].name, ext,
                                          v.gram[i][j]});
            }
    } else {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j <= i; ++j) {
                const long long expect = i == j ? 1 : 0;
                if (v.gram[i][j] != expect)
                    v.failures.push_back(
                        {i, j, coll.objects[i].name, coll.objects[j].name, {}, v.gram[i][j]});
            }
    }
    v.pass = v.failures.empty();
    return v;
}

/* --- mutation ----------------------------------------------------------- */

enum class MutationDirection { left, right };

inline MutationDirection mutation_direction_from(const std::string& s) {
    if (s == "left") return MutationDirection::left;
    if (s == "right") return MutationDirection::right;
    throw Error("invalid-direction", "mutation direction must be left or right");
}

/* Mutation of the adjacent pair at positions k, k+1 (1-based). At the
   K-level the fixed cone-shift convention is
     [L_A B] = chi(A,B)[A] - [B],   [R_B A] = chi(A,B)[B] - [A],
   which makes right and left mutually inverse on exceptional pairs. The
   new object keeps a mechanical name; a divisor is reattached only when
   the class is exactly a line-bundle class. */
inline ExceptionalCollection mutate(const ChowRing& ring, const ExceptionalCollection& coll,
                                    size_t k, MutationDirection dir) {
    if (k < 1 || k >= coll.objects.size())
        throw Error("index-out-of-range",
                    "mutation index " + std::to_string(k) + " not in [1, " +
                        std::to_string(coll.objects.size() ? coll.objects.size() - 1 : 0) + "]");
    const ObjectRef& a = coll.objects[k - 1];
    const ObjectRef& b = coll.objects[k];
    const long long chi = euler_pairing(ring, a.kclass, b.kclass);

    ObjectRef moved;
    if (dir == MutationDirection::left)
        moved = ObjectRef{"L_{" + a.name + "}(" + b.name + ")", chi * a.kclass - b.kclass,
                          std::nullopt};
    else
        moved = ObjectRef{"R_{" + b.name + "}(" + a.name + ")", chi * b.kclass - a.kclass,
                          std::nullopt};

    // Recover a divisor when the class is genuinely a line bundle.
    const ChowClass ch = moved.kclass.ch(ring);
    if (ch.coeff(0, 0) == Rational(1)) {
        const Rational ce = ch.coeff(0, 1);
        const Rational chh = ch.coeff(1, 0);
        if (ce.is_integer() && chh.is_integer()) {
            const DivisorClass d{ce.as_integer(), chh.as_integer()};
            if (ring.chern_character(d) == ch) {
                moved.divisor = d;
                moved.kclass = kclass_of_line_bundle(ring, d);
            }
        }
    }

    ExceptionalCollection out = coll;
    if (dir == MutationDirection::left) {
        out.objects[k - 1] = moved;
        out.objects[k] = a;
    } else {
        out.objects[k - 1] = b;
        out.objects[k] = moved;
    }
    return out;
}

/* --- null category ------------------------------------------------------ */

namespace detail {

inline RationalMatrix kclass_columns(const ChowRing& ring, const std::vector<KClass>& gens) {
    const int r = ring.geometry().rank();
    RationalMatrix m(2 * static_cast<size_t>(r), std::vector<Rational>(gens.size(), Rational(0)));
    for (size_t g = 0; g < gens.size(); ++g) {
        const ChowClass ch = gens[g].ch(ring);
        size_t row = 0;
        for (int i = 0; i <= 1; ++i)
            for (int j = 0; j < r; ++j) m[row++][g] = ch.coeff(i, j);
    }
    return m;
}

inline std::vector<Rational> chow_coordinates(const ChowRing& ring, const ChowClass& x) {
    const int r = ring.geometry().rank();
    std::vector<Rational> out;
    for (int i = 0; i <= 1; ++i)
        for (int j = 0; j < r; ++j) out.push_back(x.coeff(i, j));
    return out;
}

} // namespace detail

/* Integer coefficients m with ch(f) = sum_j m_j ch(O_{E_j}(-1)), if any.
   Presence is the numerical NECESSARY condition for membership in the
   null category of the contraction. */
inline std::optional<std::vector<long long>> null_membership(const ChowRing& ring, const KClass& f,
                                                             const ContractionData& contraction) {
    std::vector<KClass> gens;
    for (const auto& [name, c] : contraction.curves)
        gens.push_back(contraction.null_generator(ring, name));
    return linalg::solve_integer(detail::kclass_columns(ring, gens),
                                 detail::chow_coordinates(ring, f.ch(ring)));
}

/* --- Hilbert polynomials and positivity --------------------------------- */

/* Polynomial in n with exact rational coefficients, low degree first. */
struct Polynomial {
    std::vector<Rational> coeffs;

    bool is_zero() const {
        for (const Rational& c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }

    Rational constant_term() const { return coeffs.empty() ? Rational(0) : coeffs[0]; }

    Rational coeff(size_t k) const { return k < coeffs.size() ? coeffs[k] : Rational(0); }

    Rational eval(long long n) const {
        Rational acc(0);
        for (size_t k = coeffs.size(); k-- > 0;) acc = acc * Rational(n) + coeffs[k];
        return acc;
    }

    std::string str() const {
        std::string out;
        for (size_t k = coeffs.size(); k-- > 0;) {
            const Rational& c = coeffs[k];
            if (c.is_zero()) continue;
            std::string mono = k == 0 ? "" : (k == 1 ? "n" : "n^" + std::to_string(k));
            std::string mag;
            const Rational abs_c = c < Rational(0) ? -c : c;
            if (mono.empty())
                mag = abs_c.str();
            else if (abs_c == Rational(1))
                mag = mono;
            else if (abs_c.is_integer())
                mag = abs_c.str() + mono;
            else
                mag = "(" + abs_c.str() + ")" + mono;
            if (out.empty())
                out = (c < Rational(0) ? "-" : "") + mag;
            else
                out += (c < Rational(0) ? " - " : " + ") + mag;
        }
        return out.empty() ? "0" : out;
    }
};

/* chi(f tensor O(n d)) as a polynomial in n, expanded symbolically from
   ch(f) . exp(n d) . td. Degree at most the dimension; linear for
   curve-supported classes. */
inline Polynomial hilbert_polynomial(const ChowRing& ring, const KClass& f, DivisorClass d) {
    const int dim = ring.dimension();
    const ChowClass base = f.ch(ring) * ring.todd_class();
    const ChowClass dch = ring.divisor_class(d);
    Polynomial p;
    ChowClass power = ring.one();
    Rational factorial(1);
    for (int k = 0; k <= dim; ++k) {
        if (k > 0) {
            power = power * dch;
            factorial *= Rational(k);
        }
        p.coeffs.push_back(ring.degree(base * power) / factorial);
    }
    while (p.coeffs.size() > 1 && p.coeffs.back().is_zero()) p.coeffs.pop_back();
    return p;
}

struct PositivityVerdict {
    bool pass = false;
    std::vector<std::tuple<std::string, long long, bool>> curve_values;
    long long line_value = 0;
    bool line_ok = false;
    // Curve-level test only: positivity against the contracted curves and
    // a fibre line, not the full Nakai-Moishezon criterion.
    std::string scope_note = "partial (curve-level) positivity test";
};

inline PositivityVerdict positivity_check(const ChowRing& ring, DivisorClass d,
                                          const ContractionData& contraction) {
    PositivityVerdict v;
    v.pass = true;
    for (const auto& [name, c] : contraction.curves) {
        const long long value = ring.intersect(d, c);
        const bool ok = value > 0;
        v.curve_values.emplace_back(name, value, ok);
        v.pass = v.pass && ok;
    }
    v.line_value = ring.intersect(d, CurveClass{0, 1});
    v.line_ok = v.line_value > 0;
    v.pass = v.pass && v.line_ok;
    return v;
}

/* Per-block split of a null class: partial sums of the membership
   coefficients over the curves assigned to each block. */
inline std::vector<KClass> split_null_class(const ChowRing& ring, const KClass& f,
                                            const SODSpec& spec,
                                            const ContractionData& contraction) {
    const auto m = null_membership(ring, f, contraction);
    if (!m)
        throw Error("not-null", "class " + f.str() + " is not in the span of the null generators");
    std::vector<KClass> out(spec.blocks.size());
    for (size_t j = 0; j < contraction.curves.size(); ++j) {
        if ((*m)[j] == 0) continue;
        const std::string& curve = contraction.curves[j].first;
        const auto it = spec.assignment.find(curve);
        if (it == spec.assignment.end())
            throw Error("unassigned-curve", "curve " + curve + " has no block assignment");
        out[static_cast<size_t>(it->second - 1)] =
            out[static_cast<size_t>(it->second - 1)] +
            (*m)[j] * contraction.null_generator(ring, curve);
    }
    return out;
}

/* --- compatibility and disjointness ------------------------------------- */

struct DisjointnessVerdict {
    bool pass = false;
    std::vector<std::tuple<std::string, std::string, int, int>> offending;
};

/* Exceptional divisors of distinct blocks must not meet: no adjacency
   edge may join curves assigned to different blocks. */
inline DisjointnessVerdict check_disjointness(const SODSpec& spec,
                                              const ContractionData& contraction) {
    DisjointnessVerdict v;
    for (const auto& [u, w] : contraction.adjacency) {
        const int bu = spec.assignment.at(u);
        const int bw = spec.assignment.at(w);
        if (bu != bw) v.offending.emplace_back(u, w, bu, bw);
    }
    v.pass = v.offending.empty();
    return v;
}

struct CurveCompat {
    std::string curve;
    int block = 0;
    bool witness_present = false;
    bool witness_in_block = false;
    bool witness_identity = false;
    bool necessary = false;

    bool pass() const {
        return witness_present && witness_in_block && witness_identity && necessary;
    }
};

struct CompatibilityVerdict {
    bool pass = false;
    std::vector<CurveCompat> curves;
    std::vector<std::string> missing_witness;
};

/* Block membership of each null generator, checked in two layers: an
   explicit finite resolution by objects of the assigned block (witness),
   and the integral solve of the generator class over the block's
   generators (necessary condition). Never witness-free. */
inline CompatibilityVerdict check_compatibility(const ChowRing& ring, const SODSpec& spec,
                                                const ContractionData& contraction) {
    CompatibilityVerdict v;
    v.pass = true;
    for (const auto& [curve, cclass] : contraction.curves) {
        CurveCompat cc;
        cc.curve = curve;
        const auto ait = spec.assignment.find(curve);
        if (ait == spec.assignment.end())
            throw Error("unassigned-curve", "curve " + curve + " has no block assignment");
        cc.block = ait->second;
        if (cc.block < 1 || static_cast<size_t>(cc.block) > spec.blocks.size())
            throw Error("unassigned-curve", "curve " + curve + " assigned to missing block");
        const SODBlock& block = spec.blocks[static_cast<size_t>(cc.block - 1)];
        const KClass target = contraction.null_generator(ring, curve);

        // Necessary condition: integral solve over the block generators.
        std::vector<KClass> gens;
        for (const ObjectRef& o : block.objects) gens.push_back(o.kclass);
        cc.necessary = linalg::solve_integer(detail::kclass_columns(ring, gens),
                                             detail::chow_coordinates(ring, target.ch(ring)))
                           .has_value();

        // Witness layer: the resolution named in the block spec.
        const auto wit = spec.witnesses.find(curve);
        if (wit == spec.witnesses.end()) {
            v.missing_witness.push_back(curve);
        } else {
            cc.witness_present = true;
            cc.witness_in_block = true;
            KClass sum;
            for (const auto& [obj_name, mult] : wit->second) {
                const ObjectRef* found = nullptr;
                for (const ObjectRef& o : block.objects)
                    if (o.name == obj_name) found = &o;
                if (!found) {
                    cc.witness_in_block = false;
                    continue;
                }
                sum = sum + mult * found->kclass;
            }
            cc.witness_identity =
                cc.witness_in_block && sum.ch(ring) == target.ch(ring);
        }
        v.pass = v.pass && cc.pass();
        v.curves.push_back(std::move(cc));
    }
    return v;
}

/* --- the induced decomposition ------------------------------------------ */

struct InducedBlock {
    std::string name;
    std::vector<std::string> generators;
};

struct InducedSODReport {
    std::vector<InducedBlock> blocks;
    CompatibilityVerdict compatibility;
    DisjointnessVerdict disjointness;
    VerifyVerdict collection;
    std::string sink;
    std::string projection_note;
};

class InduceError : public Error {
public:
    InduceError(CompatibilityVerdict c, DisjointnessVerdict d, VerifyVerdict v)
        : Error("preconditions-failed", summarize(c, d, v)),
          compatibility(std::move(c)),
          disjointness(std::move(d)),
          collection(std::move(v)) {}

    CompatibilityVerdict compatibility;
    DisjointnessVerdict disjointness;
    VerifyVerdict collection;

private:
    static std::string summarize(const CompatibilityVerdict& c, const DisjointnessVerdict& d,
                                 const VerifyVerdict& v) {
        std::string out = "induced decomposition gate failed:";
        if (!c.pass) out += " compatibility";
        if (!d.pass) out += " disjointness";
        if (!v.pass) out += " collection";
        return out;
    }
};

/* Pushforward report for the decomposition downstairs. Gated on the
   compatibility, disjointness and exceptionality verdicts; the blocks on
   the target are name-level pushforwards, with the structure sheaf going
   to the structure sheaf of the sink. */
inline InducedSODReport induce_sod(const ChowRing& ring, const SODSpec& spec,
                                   const ContractionData& contraction) {
    CompatibilityVerdict compat = check_compatibility(ring, spec, contraction);
    DisjointnessVerdict disjoint = check_disjointness(spec, contraction);

    ExceptionalCollection concatenated{"concatenated", {}};
    for (const SODBlock& b : spec.blocks)
        concatenated.objects.insert(concatenated.objects.end(), b.objects.begin(),
                                    b.objects.end());
    VerifyVerdict collection = verify_exceptional(ring, concatenated);

    if (!compat.pass || !disjoint.pass || !collection.pass)
        throw InduceError(std::move(compat), std::move(disjoint), std::move(collection));

    InducedSODReport report;
    report.sink = contraction.sink;
    report.projection_note =
        "pi_* pi^* = id on the target (projection formula for the rational contraction)";
    for (const SODBlock& b : spec.blocks) {
        InducedBlock ib{b.name, {}};
        for (const ObjectRef& o : b.objects) {
            if (o.divisor && o.divisor->is_zero())
                ib.generators.push_back("O_" + contraction.sink);
            else
                ib.generators.push_back("pi_*(" + o.name + ")");
        }
        report.blocks.push_back(std::move(ib));
    }
    report.compatibility = std::move(compat);
    report.disjointness = std::move(disjoint);
    report.collection = std::move(collection);
    return report;
}

} // namespace sodcheck
