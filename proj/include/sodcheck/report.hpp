#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sodcheck/scene.hpp"
#include "sodcheck/sod.hpp"

namespace sodcheck {
namespace report {

using Json = nlohmann::ordered_json;

struct Output {
    bool all_pass = true;
    Json machine;
    std::string text;
};

namespace detail {

inline void line(std::string& text, const std::string& s = "") { text += s + "\n"; }

inline std::string pass_str(bool pass) { return pass ? "PASS" : "FAIL"; }

inline Json int_vector(const std::vector<long long>& v) {
    Json out = Json::array();
    for (long long x : v) out.push_back(x);
    return out;
}

inline Json gram_json(const IntMatrix& g) {
    Json out = Json::array();
    for (const auto& row : g) out.push_back(int_vector(row));
    return out;
}

inline std::string gram_text(const IntMatrix& g) {
    size_t width = 1;
    for (const auto& row : g)
        for (long long x : row) width = std::max(width, std::to_string(x).size());
    std::string out;
    for (const auto& row : g) {
        out += "   ";
        for (long long x : row) {
            std::string s = std::to_string(x);
            out += std::string(width + 1 - s.size(), ' ') + s;
        }
        out += "\n";
    }
    return out;
}

inline std::string names_of(const ExceptionalCollection& coll) {
    std::string out;
    for (const ObjectRef& o : coll.objects) out += (out.empty() ? "" : ", ") + o.name;
    return out;
}

inline Json verify_json(const VerifyVerdict& v) {
    Json j;
    j["pass"] = v.pass;
    j["ext_level"] = v.ext_level;
    if (!v.downgrade.empty()) j["downgrade"] = v.downgrade;
    j["gram"] = gram_json(v.gram);
    if (v.ext_level) {
        Json table = Json::array();
        for (const auto& row : v.ext_table) {
            Json jrow = Json::array();
            for (const auto& ext : row) jrow.push_back(int_vector(ext));
            table.push_back(std::move(jrow));
        }
        j["ext_table"] = std::move(table);
    }
    Json failures = Json::array();
    for (const PairFailure& f : v.failures) {
        Json jf{{"source", f.source}, {"target", f.target}, {"gram", f.gram}};
        if (!f.ext.empty()) jf["ext"] = int_vector(f.ext);
        failures.push_back(std::move(jf));
    }
    j["failures"] = std::move(failures);
    return j;
}

} // namespace detail

/* --- sections ------------------------------------------------------------ */

inline Json geometry_section(const ChowRing& ring, std::string& text) {
    const BundleGeometry& g = ring.geometry();
    std::string bundle = "P(";
    for (size_t i = 0; i < g.twists.size(); ++i) {
        bundle += i ? " + " : "";
        bundle += g.twists[i] == 0 ? "O" : "O(" + std::to_string(g.twists[i]) + ")";
    }
    bundle += ") over P^1";
    const DivisorClass k = ring.canonical_class();
    const long long chi0 =
        ring.degree(ring.todd_class().component(ring.dimension())).as_integer();

    detail::line(text, "geometry: " + bundle + ", dimension " + std::to_string(ring.dimension()));
    detail::line(text, "canonical class: K = " + format_divisor(k, g));
    detail::line(text, "chi(O_Y) = " + std::to_string(chi0));

    Json j;
    j["twists"] = g.twists;
    j["dimension"] = ring.dimension();
    j["canonical"] = {{"E", k.e}, {"H", k.h}};
    j["chi_structure_sheaf"] = chi0;
    return j;
}

inline Json intersection_section(const ChowRing& ring, const ContractionData& contraction,
                                 std::string& text) {
    std::vector<std::pair<std::string, CurveClass>> columns = contraction.curves;
    bool have_fibre_line = false;
    for (const auto& [n, c] : columns) have_fibre_line |= (c == CurveClass{0, 1});
    if (!have_fibre_line) columns.emplace_back("L", CurveClass{0, 1});

    const std::vector<std::pair<std::string, DivisorClass>> rows = {
        {ring.geometry().divisor_e, {1, 0}},
        {ring.geometry().divisor_h, {0, 1}},
        {"K", ring.canonical_class()}};

    const auto pad_left = [](const std::string& s, size_t w) {
        return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
    };
    detail::line(text, "[intersection table]");
    std::string header = "      ";
    for (const auto& [n, c] : columns) header += pad_left(n, 5);
    detail::line(text, header);
    Json j;
    j["columns"] = Json::array();
    for (const auto& [n, c] : columns) j["columns"].push_back(n);
    Json jrows;
    for (const auto& [rname, d] : rows) {
        std::string tline =
            rname + std::string(6 - std::min<size_t>(6, rname.size()), ' ');
        Json jrow = Json::array();
        for (const auto& [cname, c] : columns) {
            const long long v = ring.intersect(d, c);
            jrow.push_back(v);
            tline += pad_left(std::to_string(v), 5);
        }
        jrows[rname] = std::move(jrow);
        detail::line(text, tline);
    }
    j["rows"] = std::move(jrows);
    detail::line(text);
    return j;
}

/* The (-1)-curve argument for the conifold scene: K.C = 0 plus the
   self-intersection of the contracted curve inside its divisor force the
   pairing row (-1, 1), and the solver recovers the divisor exactly. */
inline Json divisor_solve_section(const ChowRing& ring, std::string& text, bool& all_pass) {
    const CurveClass curve{1, 0};
    const CurveClass fibre_line{0, 1};
    const long long kc = ring.intersect(ring.canonical_class(), curve);
    const DivisorClass d1 = ring.solve_divisor({{curve, -1}, {fibre_line, 1}});
    const long long adj = ring.adjunction_value(d1, curve);
    const long long self_in_d1 = -1; // C is a (-1)-curve of D1
    const long long genus = (adj + self_in_d1 + 2) / 2;
    const bool ok = kc == 0 && adj == -1 && genus == 0;
    all_pass = all_pass && ok;

    detail::line(text, "[divisor solve]");
    detail::line(text, "constraints: D.C = -1, D.L = 1");
    detail::line(text, "D1 = " + format_divisor(d1, ring.geometry()));
    detail::line(text, "adjunction: K.C = " + std::to_string(kc) +
                           ", (K + D1).C = " + std::to_string(adj) +
                           ", genus(C) = " + std::to_string(genus));
    detail::line(text);

    Json j;
    j["constraints"] = {{"C", -1}, {"L", 1}};
    j["solution"] = {{"E", d1.e}, {"H", d1.h}};
    j["pretty"] = "D1 = " + format_divisor(d1, ring.geometry());
    j["adjunction"] = {{"K.C", kc},
                       {"(K+D1).C", adj},
                       {"self_intersection_in_D1", self_in_d1},
                       {"genus", genus}};
    j["pass"] = ok;
    return j;
}

inline Json collection_section(const ChowRing& ring, const ExceptionalCollection& coll,
                               std::string& text, bool& all_pass) {
    const VerifyVerdict v = verify_exceptional(ring, coll);
    all_pass = all_pass && v.pass;

    detail::line(text, "[collection " + coll.name + "]");
    detail::line(text, "objects: " + detail::names_of(coll));
    detail::line(text, "gram matrix:");
    text += detail::gram_text(v.gram);
    const std::string level = v.ext_level ? "Ext-level" : "Gram-level (" + v.downgrade + ")";
    detail::line(text, level + " verification: " + detail::pass_str(v.pass));
    for (const PairFailure& f : v.failures) {
        std::string entry = "  offending pair (" + f.source + " -> " + f.target + "): ";
        if (!f.ext.empty()) {
            entry += "ext = (";
            for (size_t i = 0; i < f.ext.size(); ++i)
                entry += (i ? "," : "") + std::to_string(f.ext[i]);
            entry += ")";
        } else {
            entry += "chi = " + std::to_string(f.gram);
        }
        detail::line(text, entry);
    }
    detail::line(text);

    Json j;
    j["name"] = coll.name;
    j["objects"] = Json::array();
    for (const ObjectRef& o : coll.objects) j["objects"].push_back(o.name);
    j.update(detail::verify_json(v));
    return j;
}

inline Json mutation_section(const RealizedScene& rs, const Scene::Mutation& m,
                             std::string& text, bool& all_pass) {
    const ChowRing& ring = rs.ring;
    const ExceptionalCollection& coll = rs.collection(m.collection);
    const MutationDirection dir = mutation_direction_from(m.direction);
    const ObjectRef& a = coll.objects.at(m.index - 1);
    const ObjectRef& b = coll.objects.at(m.index);
    const long long chi = euler_pairing(ring, a.kclass, b.kclass);

    const ExceptionalCollection mutated = mutate(ring, coll, m.index, dir);
    const ObjectRef& moved =
        dir == MutationDirection::left ? mutated.objects[m.index - 1] : mutated.objects[m.index];

    // Identify the new class against the scene's objects, up to odd shift.
    std::string identified;
    const ChowClass moved_ch = moved.kclass.ch(ring);
    for (const ObjectRef& o : rs.objects) {
        if (o.kclass.ch(ring) == moved_ch) {
            identified = o.name;
            break;
        }
        if ((-o.kclass).ch(ring) == moved_ch) {
            identified = o.name + "[-1]";
            break;
        }
    }

    // Mutating back must restore every class and the Gram matrix.
    const MutationDirection inverse =
        dir == MutationDirection::left ? MutationDirection::right : MutationDirection::left;
    const ExceptionalCollection back = mutate(ring, mutated, m.index, inverse);
    bool roundtrip = gram_matrix(ring, back) == gram_matrix(ring, coll);
    for (size_t i = 0; i < coll.objects.size() && roundtrip; ++i)
        roundtrip = back.objects[i].kclass.ch(ring) == coll.objects[i].kclass.ch(ring);

    const VerifyVerdict v = verify_exceptional(ring, mutated);
    const bool ok = v.pass && roundtrip;
    all_pass = all_pass && ok;

    detail::line(text, "[mutation]");
    detail::line(text, m.direction + " mutation of " + m.collection + " at position " +
                           std::to_string(m.index) + ": (" + a.name + ", " + b.name + ")");
    detail::line(text, "chi(" + a.name + ", " + b.name + ") = " + std::to_string(chi));
    detail::line(text, "new object: " + moved.name +
                           (identified.empty() ? "" : "  identified with " + identified));
    detail::line(text, "collection after: " + detail::names_of(mutated));
    const std::string level = v.ext_level ? "Ext-level" : "Gram-level (" + v.downgrade + ")";
    detail::line(text, level + " verification: " + detail::pass_str(v.pass));
    detail::line(text, std::string("mutating back restores the collection: ") +
                           (roundtrip ? "yes" : "NO"));
    detail::line(text);

    Json j;
    j["collection"] = m.collection;
    j["index"] = m.index;
    j["direction"] = m.direction;
    j["pair"] = {a.name, b.name};
    j["chi"] = chi;
    j["new_object"] = moved.name;
    j["identified_with"] = identified;
    j["collection_after"] = Json::array();
    for (const ObjectRef& o : mutated.objects) j["collection_after"].push_back(o.name);
    j["roundtrip_identity"] = roundtrip;
    j["verdict"] = detail::verify_json(v);
    j["pass"] = ok;
    return j;
}

inline Json null_category_section(const RealizedScene& rs, std::string& text, bool& all_pass) {
    const ChowRing& ring = rs.ring;
    const ContractionData& con = rs.contraction;
    const KClass structure = kclass_of_line_bundle(ring, DivisorClass{0, 0});

    detail::line(text, "[null category]");
    detail::line(text,
                 "(membership coefficients are the numerical necessary condition for "
                 "lying in the null category; block membership itself is witnessed below)");
    Json j;
    j["note"] = "membership is a necessary condition at K-theory level; "
                "block membership is certified by resolution witnesses";
    j["generators"] = Json::array();
    for (const auto& [name, cls] : con.curves) {
        const KClass gen = con.null_generator(ring, name);
        const auto membership = null_membership(ring, gen, con);
        const long long chi = euler_pairing(ring, structure, gen);
        const Polynomial ph = hilbert_polynomial(ring, gen, DivisorClass{0, 1});
        const Polynomial pe = hilbert_polynomial(ring, gen, DivisorClass{1, 0});
        const bool ok = membership.has_value();
        all_pass = all_pass && ok;

        std::string mstr = "absent";
        if (membership) {
            mstr = "(";
            for (size_t i = 0; i < membership->size(); ++i)
                mstr += (i ? "," : "") + std::to_string((*membership)[i]);
            mstr += ")";
        }
        detail::line(text, "generator O_" + name + "(-1): membership coefficients " + mstr +
                               ", chi = " + std::to_string(chi));
        detail::line(text, "Hilbert polynomials: P_H = " + ph.str() + " ; P_E = " + pe.str());

        Json jg;
        jg["curve"] = name;
        jg["name"] = "O_" + name + "(-1)";
        jg["membership"] = membership ? detail::int_vector(*membership) : Json();
        jg["chi"] = chi;
        jg["hilbert"] = {{"H", ph.str()}, {"E", pe.str()}};
        j["generators"].push_back(std::move(jg));
    }

    j["witnesses"] = Json::array();
    for (const auto& [curve, terms] : rs.sodspec.witnesses) {
        const KClass target = con.null_generator(ring, curve);
        KClass sum;
        std::string pretty;
        for (const auto& [obj, mult] : terms) {
            sum = sum + mult * rs.object(obj).kclass;
            const std::string mag =
                (std::abs(mult) == 1 ? "" : std::to_string(std::abs(mult))) + "[" + obj + "]";
            if (pretty.empty())
                pretty = (mult < 0 ? "-" : "") + mag;
            else
                pretty += (mult < 0 ? " - " : " + ") + mag;
        }
        const bool identity = sum.ch(ring) == target.ch(ring);
        all_pass = all_pass && identity;
        detail::line(text, "resolution witness for O_" + curve + "(-1): " + pretty +
                               " ; identity holds: " + (identity ? "yes" : "NO"));
        Json jw;
        jw["curve"] = curve;
        jw["terms"] = Json::array();
        for (const auto& [obj, mult] : terms)
            jw["terms"].push_back({{"object", obj}, {"mult", mult}});
        jw["identity"] = identity;
        j["witnesses"].push_back(std::move(jw));
    }

    if (rs.ample) {
        const PositivityVerdict pv = positivity_check(ring, *rs.ample, con);
        all_pass = all_pass && pv.pass;
        std::string detail_str;
        for (const auto& [name, value, ok] : pv.curve_values)
            detail_str += "(" + format_divisor(*rs.ample, ring.geometry()) + ")." + name + " = " +
                          std::to_string(value) + (ok ? " > 0; " : " NOT > 0; ");
        detail_str += "(" + format_divisor(*rs.ample, ring.geometry()) +
                      ").L = " + std::to_string(pv.line_value) +
                      (pv.line_ok ? " > 0" : " NOT > 0");
        detail::line(text, "positivity of " + format_divisor(*rs.ample, ring.geometry()) + ": " +
                               detail::pass_str(pv.pass) + " [" + pv.scope_note + "]");
        detail::line(text, "  " + detail_str);
        Json jp;
        jp["divisor"] = {{"E", rs.ample->e}, {"H", rs.ample->h}};
        jp["pass"] = pv.pass;
        jp["curves"] = Json::array();
        for (const auto& [name, value, ok] : pv.curve_values)
            jp["curves"].push_back({{"name", name}, {"value", value}, {"ok", ok}});
        jp["fibre_line"] = {{"value", pv.line_value}, {"ok", pv.line_ok}};
        jp["note"] = pv.scope_note;
        j["positivity"] = std::move(jp);
    }
    detail::line(text);
    return j;
}

inline Json compatibility_section(const RealizedScene& rs, std::string& text, bool& all_pass) {
    const CompatibilityVerdict v = check_compatibility(rs.ring, rs.sodspec, rs.contraction);
    all_pass = all_pass && v.pass;

    detail::line(text, "[compatibility] " + detail::pass_str(v.pass));
    for (const CurveCompat& c : v.curves) {
        const std::string block_name = rs.sodspec.blocks[static_cast<size_t>(c.block - 1)].name;
        detail::line(text, "curve " + c.curve + " -> block " + std::to_string(c.block) + " (" +
                               block_name + "): witness " +
                               (c.witness_present
                                    ? (c.witness_in_block && c.witness_identity ? "PASS" : "FAIL")
                                    : "MISSING") +
                               ", necessary condition " + detail::pass_str(c.necessary));
    }
    for (const std::string& curve : v.missing_witness)
        detail::line(text, "missing-witness: " + curve);
    detail::line(text);

    Json j;
    j["pass"] = v.pass;
    j["curves"] = Json::array();
    for (const CurveCompat& c : v.curves)
        j["curves"].push_back({{"curve", c.curve},
                               {"block", c.block},
                               {"witness_present", c.witness_present},
                               {"witness_in_block", c.witness_in_block},
                               {"witness_identity", c.witness_identity},
                               {"necessary", c.necessary},
                               {"pass", c.pass()}});
    j["missing_witness"] = v.missing_witness;
    return j;
}

inline Json disjointness_section(const RealizedScene& rs, std::string& text, bool& all_pass) {
    const DisjointnessVerdict v = check_disjointness(rs.sodspec, rs.contraction);
    all_pass = all_pass && v.pass;

    detail::line(text, "[disjointness] " + detail::pass_str(v.pass));
    for (const auto& [u, w, bu, bw] : v.offending)
        detail::line(text, "adjacent curves " + u + " (block " + std::to_string(bu) + ") and " +
                               w + " (block " + std::to_string(bw) + ") sit in distinct blocks");
    detail::line(text);

    Json j;
    j["pass"] = v.pass;
    j["offending"] = Json::array();
    for (const auto& [u, w, bu, bw] : v.offending)
        j["offending"].push_back(
            {{"curve_a", u}, {"curve_b", w}, {"block_a", bu}, {"block_b", bw}});
    return j;
}

inline Json induced_section(const RealizedScene& rs, std::string& text, bool& all_pass) {
    Json j;
    try {
        const InducedSODReport rep = induce_sod(rs.ring, rs.sodspec, rs.contraction);
        detail::line(text, "[induced decomposition on " + rep.sink + "] PASS");
        j["pass"] = true;
        j["sink"] = rep.sink;
        j["blocks"] = Json::array();
        for (const InducedBlock& b : rep.blocks) {
            std::string gens;
            for (const std::string& g : b.generators) gens += (gens.empty() ? "" : ", ") + g;
            detail::line(text, b.name + " = < " + gens + " >");
            Json jb;
            jb["name"] = b.name;
            jb["generators"] = b.generators;
            j["blocks"].push_back(std::move(jb));
        }
        detail::line(text, "note: " + rep.projection_note);
        j["note"] = rep.projection_note;
    } catch (const InduceError& e) {
        all_pass = false;
        detail::line(text, "[induced decomposition] FAIL (" + std::string(e.kind()) + ")");
        detail::line(text, "  " + std::string(e.what()));
        j["pass"] = false;
        j["error"] = e.kind();
        j["detail"] = e.what();
        j["compatibility_pass"] = e.compatibility.pass;
        j["disjointness_pass"] = e.disjointness.pass;
        j["collection_pass"] = e.collection.pass;
    }
    detail::line(text);
    return j;
}

/* --- commands ------------------------------------------------------------ */

/* The full narrative run for the built-in conifold scene: intersection
   table, divisor solve, collection verification, mutation, null category,
   compatibility, disjointness and the induced blocks. */
inline Output run_example54() {
    const Scene scene = Scene::builtin_example54();
    const RealizedScene rs = realize(scene);
    Output out;
    out.machine["report"] = "example54";
    out.machine["scene"] = "builtin:example54";

    detail::line(out.text, "sodcheck: conifold small-resolution scene");
    out.machine["geometry"] = geometry_section(rs.ring, out.text);
    detail::line(out.text);
    out.machine["intersection_table"] = intersection_section(rs.ring, rs.contraction, out.text);
    out.machine["divisor_solve"] = divisor_solve_section(rs.ring, out.text, out.all_pass);

    out.machine["collections"] = Json::array();
    for (const ExceptionalCollection& coll : rs.collections)
        out.machine["collections"].push_back(
            collection_section(rs.ring, coll, out.text, out.all_pass));

    out.machine["mutations"] = Json::array();
    for (const Scene::Mutation& m : rs.mutations)
        out.machine["mutations"].push_back(mutation_section(rs, m, out.text, out.all_pass));

    out.machine["null_category"] = null_category_section(rs, out.text, out.all_pass);
    out.machine["compatibility"] = compatibility_section(rs, out.text, out.all_pass);
    out.machine["disjointness"] = disjointness_section(rs, out.text, out.all_pass);
    out.machine["induced"] = induced_section(rs, out.text, out.all_pass);

    out.machine["all_pass"] = out.all_pass;
    detail::line(out.text, std::string("RESULT: ") + (out.all_pass ? "PASS" : "FAIL"));
    return out;
}

inline Output run_verify(const Scene& scene, const std::string& collection_name) {
    const RealizedScene rs = realize(scene);
    const ExceptionalCollection& coll = rs.collection(collection_name);
    Output out;
    out.machine["report"] = "verify";
    out.machine["collection"] = collection_section(rs.ring, coll, out.text, out.all_pass);
    out.machine["all_pass"] = out.all_pass;
    detail::line(out.text, std::string("RESULT: ") + (out.all_pass ? "PASS" : "FAIL"));
    return out;
}

inline Output run_mutations(const Scene& scene) {
    const RealizedScene rs = realize(scene);
    Output out;
    out.machine["report"] = "mutate";
    if (rs.mutations.empty())
        throw Error("scene-validation", "scene has no scripted mutations");
    out.machine["mutations"] = Json::array();
    for (const Scene::Mutation& m : rs.mutations)
        out.machine["mutations"].push_back(mutation_section(rs, m, out.text, out.all_pass));
    out.machine["all_pass"] = out.all_pass;
    detail::line(out.text, std::string("RESULT: ") + (out.all_pass ? "PASS" : "FAIL"));
    return out;
}

inline Output run_compat(const Scene& scene) {
    const RealizedScene rs = realize(scene);
    if (!rs.has_contraction || !rs.has_sod)
        throw Error("scene-validation", "compat needs contraction and sod sections");
    Output out;
    out.machine["report"] = "compat";
    out.machine["compatibility"] = compatibility_section(rs, out.text, out.all_pass);
    out.machine["all_pass"] = out.all_pass;
    detail::line(out.text, std::string("RESULT: ") + (out.all_pass ? "PASS" : "FAIL"));
    return out;
}

inline Output run_induce(const Scene& scene) {
    const RealizedScene rs = realize(scene);
    if (!rs.has_contraction || !rs.has_sod)
        throw Error("scene-validation", "induce needs contraction and sod sections");
    Output out;
    out.machine["report"] = "induce";
    out.machine["compatibility"] = compatibility_section(rs, out.text, out.all_pass);
    out.machine["disjointness"] = disjointness_section(rs, out.text, out.all_pass);
    out.machine["induced"] = induced_section(rs, out.text, out.all_pass);
    out.machine["all_pass"] = out.all_pass;
    detail::line(out.text, std::string("RESULT: ") + (out.all_pass ? "PASS" : "FAIL"));
    return out;
}

/* h^i and chi grid over a rectangle of (a, b), with the cross-check of
   the cohomological Euler characteristic against the Riemann-Roch value. */
inline Output run_table(long long a_lo, long long a_hi, long long b_lo, long long b_hi) {
    if (a_lo > a_hi || b_lo > b_hi || std::abs(a_lo) > 12 || std::abs(a_hi) > 12 ||
        std::abs(b_lo) > 12 || std::abs(b_hi) > 12)
        throw Error("malformed-range", "table ranges must be ordered and bounded by 12");
    const ChowRing ring(BundleGeometry::conifold());
    const KClass structure = kclass_of_line_bundle(ring, DivisorClass{0, 0});

    Output out;
    out.machine["report"] = "table";
    out.machine["a_range"] = {a_lo, a_hi};
    out.machine["b_range"] = {b_lo, b_hi};
    out.machine["rows"] = Json::array();
    detail::line(out.text, "  a   b   h^0 h^1 h^2 h^3   chi  hrr");
    for (long long a = a_lo; a <= a_hi; ++a)
        for (long long b = b_lo; b <= b_hi; ++b) {
            const DivisorClass d{a, b};
            const CohomologyVector h = line_bundle_cohomology(d, ring);
            const long long chi = euler_characteristic(h);
            const long long hrr = euler_pairing(ring, structure, kclass_of_line_bundle(ring, d));
            const bool ok = chi == hrr;
            out.all_pass = out.all_pass && ok;
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%3lld %3lld   %3lld %3lld %3lld %3lld  %4lld %4lld%s",
                          a, b, h[0], h[1], h[2], h[3], chi, hrr, ok ? "" : "  MISMATCH");
            detail::line(out.text, buf);
            out.machine["rows"].push_back({{"a", a},
                                           {"b", b},
                                           {"h", detail::int_vector(h)},
                                           {"chi", chi},
                                           {"hrr", hrr},
                                           {"ok", ok}});
        }
    out.machine["all_pass"] = out.all_pass;
    if (!out.all_pass) detail::line(out.text, "RESULT: FAIL (cohomology disagrees with HRR)");
    return out;
}

} // namespace report
} // namespace sodcheck
