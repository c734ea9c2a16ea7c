#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sodcheck/sod.hpp"

namespace sodcheck {

/* Declarative description of a verification run: geometry, named objects,
   collections, scripted mutations, the contraction and the block spec.
   Loaded from JSON or built in; checked for self-consistency on realize. */
struct Scene {
    struct Object {
        std::string name;
        std::optional<DivisorClass> divisor;
        // Alternative to a divisor: a formal sum of earlier objects, used
        // for extension bundles known only by their K-class.
        std::vector<std::pair<std::string, long long>> sum;
    };
    struct Collection {
        std::string name;
        std::vector<std::string> objects;
    };
    struct Mutation {
        std::string collection;
        size_t index = 0; // 1-based pair position
        std::string direction;
    };
    struct Curve {
        std::string name;
        CurveClass cls;
        long long pair_e = 0; // declared intersection row, revalidated on load
        long long pair_h = 0;
    };
    struct Contraction {
        std::string sink = "X";
        std::vector<Curve> curves;
        std::vector<std::pair<std::string, std::string>> adjacency;
    };
    struct Sod {
        std::vector<std::pair<std::string, std::vector<std::string>>> blocks;
        std::map<std::string, int> assignment; // curve -> 1-based block index
        std::map<std::string, std::vector<std::pair<std::string, long long>>> witnesses;
    };

    BundleGeometry geometry;
    std::vector<Object> objects;
    std::vector<Collection> collections;
    std::vector<Mutation> mutations;
    std::optional<DivisorClass> ample; // divisor for the curve-level positivity check
    std::optional<Contraction> contraction;
    std::optional<Sod> sod;

    static Scene builtin_example54();
    static Scene from_json(const nlohmann::json& j);
    static Scene load(const std::string& path);
    nlohmann::ordered_json to_json() const;
};

/* Scene resolved against a Chow ring: objects carry K-classes, the
   contraction and block spec are ready for the verdict operations. */
struct RealizedScene {
    ChowRing ring;
    std::vector<ObjectRef> objects;
    std::vector<ExceptionalCollection> collections;
    ContractionData contraction;
    SODSpec sodspec;
    std::optional<DivisorClass> ample;
    std::vector<Scene::Mutation> mutations;
    bool has_contraction = false;
    bool has_sod = false;

    explicit RealizedScene(const BundleGeometry& g) : ring(g) {}

    const ObjectRef& object(const std::string& name) const {
        for (const ObjectRef& o : objects)
            if (o.name == name) return o;
        throw Error("scene-reference", "unknown object '" + name + "'");
    }

    const ExceptionalCollection& collection(const std::string& name) const {
        for (const ExceptionalCollection& c : collections)
            if (c.name == name) return c;
        throw Error("scene-reference", "unknown collection '" + name + "'");
    }
};

/* --- realization -------------------------------------------------------- */

inline RealizedScene realize(const Scene& scene) {
    RealizedScene out(scene.geometry);
    const ChowRing& ring = out.ring;

    for (const Scene::Object& so : scene.objects) {
        for (const ObjectRef& existing : out.objects)
            if (existing.name == so.name)
                throw Error("scene-validation", "duplicate object name '" + so.name + "'");
        if (so.divisor && !so.sum.empty())
            throw Error("scene-validation",
                        "object '" + so.name + "' has both a divisor and a sum");
        if (so.divisor) {
            out.objects.push_back(
                ObjectRef{so.name, kclass_of_line_bundle(ring, *so.divisor), *so.divisor});
        } else if (!so.sum.empty()) {
            ChowClass ch = ring.zero();
            for (const auto& [ref, mult] : so.sum)
                ch = ch + Rational(mult) * out.object(ref).kclass.ch(ring);
            out.objects.push_back(ObjectRef{
                so.name, KClass::of(generic_atom(ring, so.name, ch, ring.dimension())),
                std::nullopt});
        } else {
            throw Error("scene-validation", "object '" + so.name + "' defines no class");
        }
    }

    for (const Scene::Collection& sc : scene.collections) {
        ExceptionalCollection coll{sc.name, {}};
        for (const std::string& n : sc.objects) coll.objects.push_back(out.object(n));
        out.collections.push_back(std::move(coll));
    }

    for (const Scene::Mutation& m : scene.mutations) {
        out.collection(m.collection);          // must resolve
        mutation_direction_from(m.direction);  // must parse
        out.mutations.push_back(m);
    }
    out.ample = scene.ample;

    if (scene.contraction) {
        out.has_contraction = true;
        out.contraction.sink = scene.contraction->sink;
        for (const Scene::Curve& c : scene.contraction->curves) {
            // Declared pairing rows must agree with the ring's own numbers.
            const long long ec = ring.intersect(DivisorClass{1, 0}, c.cls);
            const long long hc = ring.intersect(DivisorClass{0, 1}, c.cls);
            if (ec != c.pair_e || hc != c.pair_h)
                throw Error("scene-validation",
                            "curve '" + c.name + "' declares pairings (" +
                                std::to_string(c.pair_e) + ", " + std::to_string(c.pair_h) +
                                ") but intersection gives (" + std::to_string(ec) + ", " +
                                std::to_string(hc) + ")");
            out.contraction.curves.emplace_back(c.name, c.cls);
        }
        out.contraction.adjacency = scene.contraction->adjacency;
        out.contraction.validate();
    }

    if (scene.sod) {
        if (!scene.contraction)
            throw Error("scene-validation", "sod section requires a contraction section");
        out.has_sod = true;
        for (const auto& [bname, members] : scene.sod->blocks) {
            SODBlock block{bname, {}};
            for (const std::string& n : members) block.objects.push_back(out.object(n));
            out.sodspec.blocks.push_back(std::move(block));
        }
        for (const auto& [curve, idx] : scene.sod->assignment) {
            if (!out.contraction.has_curve(curve))
                throw Error("scene-reference", "assignment of unknown curve '" + curve + "'");
            if (idx < 1 || static_cast<size_t>(idx) > out.sodspec.blocks.size())
                throw Error("scene-validation",
                            "curve '" + curve + "' assigned to missing block " +
                                std::to_string(idx));
            out.sodspec.assignment[curve] = idx;
        }
        for (const auto& [name, c] : out.contraction.curves)
            if (!out.sodspec.assignment.count(name))
                throw Error("scene-validation", "curve '" + name + "' has no block assignment");
        for (const auto& [curve, resolution] : scene.sod->witnesses) {
            if (!out.contraction.has_curve(curve))
                throw Error("scene-reference", "witness for unknown curve '" + curve + "'");
            for (const auto& [obj, mult] : resolution) out.object(obj); // must resolve
            out.sodspec.witnesses[curve] = resolution;
        }
    }
    return out;
}

/* --- JSON --------------------------------------------------------------- */

namespace detail {

inline DivisorClass divisor_from_json(const nlohmann::json& j) {
    return DivisorClass{j.at("E").get<long long>(), j.at("H").get<long long>()};
}

inline nlohmann::ordered_json divisor_to_json(DivisorClass d) {
    return {{"E", d.e}, {"H", d.h}};
}

inline CurveClass curve_from_json(const nlohmann::json& j) {
    return CurveClass{j.at("C").get<long long>(), j.at("L").get<long long>()};
}

inline nlohmann::ordered_json curve_to_json(CurveClass c) {
    return {{"C", c.c}, {"L", c.l}};
}

} // namespace detail

inline Scene Scene::from_json(const nlohmann::json& j) {
    try {
        Scene s;
        const auto& geom = j.at("geometry");
        s.geometry.twists = geom.at("twists").get<std::vector<long long>>();
        if (geom.contains("divisor_names")) {
            s.geometry.divisor_e = geom.at("divisor_names").at(0).get<std::string>();
            s.geometry.divisor_h = geom.at("divisor_names").at(1).get<std::string>();
        }
        for (const auto& jo : j.value("objects", nlohmann::json::array())) {
            Object o;
            o.name = jo.at("name").get<std::string>();
            if (jo.contains("divisor")) o.divisor = detail::divisor_from_json(jo.at("divisor"));
            if (jo.contains("sum"))
                for (const auto& t : jo.at("sum"))
                    o.sum.emplace_back(t.at("object").get<std::string>(),
                                       t.at("mult").get<long long>());
            s.objects.push_back(std::move(o));
        }
        for (const auto& jc : j.value("collections", nlohmann::json::array()))
            s.collections.push_back(Collection{jc.at("name").get<std::string>(),
                                               jc.at("objects").get<std::vector<std::string>>()});
        for (const auto& jm : j.value("mutations", nlohmann::json::array()))
            s.mutations.push_back(Mutation{jm.at("collection").get<std::string>(),
                                           jm.at("index").get<size_t>(),
                                           jm.at("direction").get<std::string>()});
        if (j.contains("ample")) s.ample = detail::divisor_from_json(j.at("ample"));
        if (j.contains("contraction")) {
            Contraction c;
            const auto& jcon = j.at("contraction");
            c.sink = jcon.value("sink", std::string("X"));
            for (const auto& jc : jcon.value("curves", nlohmann::json::array())) {
                Curve curve;
                curve.name = jc.at("name").get<std::string>();
                curve.cls = detail::curve_from_json(jc.at("class"));
                curve.pair_e = jc.at("pairings").at("E").get<long long>();
                curve.pair_h = jc.at("pairings").at("H").get<long long>();
                c.curves.push_back(std::move(curve));
            }
            for (const auto& je : jcon.value("adjacency", nlohmann::json::array()))
                c.adjacency.emplace_back(je.at(0).get<std::string>(),
                                         je.at(1).get<std::string>());
            s.contraction = std::move(c);
        }
        if (j.contains("sod")) {
            Sod sod;
            const auto& jsod = j.at("sod");
            for (const auto& jb : jsod.at("blocks"))
                sod.blocks.emplace_back(jb.at("name").get<std::string>(),
                                        jb.at("objects").get<std::vector<std::string>>());
            for (const auto& [curve, idx] : jsod.at("assignment").items())
                sod.assignment[curve] = idx.get<int>();
            if (jsod.contains("witnesses"))
                for (const auto& [curve, res] : jsod.at("witnesses").items()) {
                    std::vector<std::pair<std::string, long long>> terms;
                    for (const auto& t : res)
                        terms.emplace_back(t.at("object").get<std::string>(),
                                           t.at("mult").get<long long>());
                    sod.witnesses[curve] = std::move(terms);
                }
            s.sod = std::move(sod);
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error("scene-parse", e.what());
    }
}

inline Scene Scene::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("scene-io", "cannot open scene file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("scene-parse", e.what());
    }
    return from_json(j);
}

inline nlohmann::ordered_json Scene::to_json() const {
    nlohmann::ordered_json j;
    j["format"] = "sodcheck-scene/1";
    j["geometry"] = {{"twists", geometry.twists},
                     {"divisor_names", {geometry.divisor_e, geometry.divisor_h}}};
    j["objects"] = nlohmann::ordered_json::array();
    for (const Object& o : objects) {
        nlohmann::ordered_json jo;
        jo["name"] = o.name;
        if (o.divisor) jo["divisor"] = detail::divisor_to_json(*o.divisor);
        if (!o.sum.empty()) {
            jo["sum"] = nlohmann::ordered_json::array();
            for (const auto& [ref, mult] : o.sum)
                jo["sum"].push_back({{"object", ref}, {"mult", mult}});
        }
        j["objects"].push_back(std::move(jo));
    }
    j["collections"] = nlohmann::ordered_json::array();
    for (const Collection& c : collections)
        j["collections"].push_back({{"name", c.name}, {"objects", c.objects}});
    j["mutations"] = nlohmann::ordered_json::array();
    for (const Mutation& m : mutations)
        j["mutations"].push_back(
            {{"collection", m.collection}, {"index", m.index}, {"direction", m.direction}});
    if (ample) j["ample"] = detail::divisor_to_json(*ample);
    if (contraction) {
        nlohmann::ordered_json jc;
        jc["sink"] = contraction->sink;
        jc["curves"] = nlohmann::ordered_json::array();
        for (const Curve& c : contraction->curves)
            jc["curves"].push_back({{"name", c.name},
                                    {"class", detail::curve_to_json(c.cls)},
                                    {"pairings", {{"E", c.pair_e}, {"H", c.pair_h}}}});
        jc["adjacency"] = nlohmann::ordered_json::array();
        for (const auto& [u, v] : contraction->adjacency)
            jc["adjacency"].push_back({u, v});
        j["contraction"] = std::move(jc);
    }
    if (sod) {
        nlohmann::ordered_json js;
        js["blocks"] = nlohmann::ordered_json::array();
        for (const auto& [name, members] : sod->blocks)
            js["blocks"].push_back({{"name", name}, {"objects", members}});
        js["assignment"] = nlohmann::ordered_json::object();
        for (const auto& [curve, idx] : sod->assignment) js["assignment"][curve] = idx;
        js["witnesses"] = nlohmann::ordered_json::object();
        for (const auto& [curve, res] : sod->witnesses) {
            nlohmann::ordered_json terms = nlohmann::ordered_json::array();
            for (const auto& [obj, mult] : res)
                terms.push_back({{"object", obj}, {"mult", mult}});
            js["witnesses"][curve] = std::move(terms);
        }
        j["sod"] = std::move(js);
    }
    return j;
}

/* The conifold scene: the projective-bundle collection, the mutation to
   the rank-two extension bundle, the contracted curve and the four-block
   decomposition. */
inline Scene Scene::builtin_example54() {
    Scene s;
    s.geometry = BundleGeometry::conifold();
    const auto add = [&s](const std::string& name, long long e, long long h) {
        s.objects.push_back(Object{name, DivisorClass{e, h}, {}});
    };
    add("O(-2E)", -2, 0);
    add("O(-2E+H)", -2, 1);
    add("O(-E-H)", -1, -1);
    add("O(-E)", -1, 0);
    add("O(-H)", 0, -1);
    add("O", 0, 0);
    s.objects.push_back(Object{"V", std::nullopt, {{"O(-E-H)", 1}, {"O(-2E+H)", 1}}});

    s.collections.push_back(Collection{
        "projective-bundle", {"O(-2E)", "O(-2E+H)", "O(-E-H)", "O(-E)", "O(-H)", "O"}});
    s.mutations.push_back(Mutation{"projective-bundle", 2, "left"});
    s.ample = DivisorClass{1, 1};

    Contraction con;
    con.sink = "X";
    con.curves.push_back(Curve{"C", CurveClass{1, 0}, 0, 1});
    s.contraction = std::move(con);

    Sod sod;
    sod.blocks.emplace_back("A1", std::vector<std::string>{"O(-2E)"});
    sod.blocks.emplace_back("A2", std::vector<std::string>{"V"});
    sod.blocks.emplace_back("A3", std::vector<std::string>{"O(-2E+H)", "O(-E)", "O(-H)"});
    sod.blocks.emplace_back("A4", std::vector<std::string>{"O"});
    sod.assignment["C"] = 3;
    sod.witnesses["C"] = {{"O(-H)", 1}, {"O(-E)", -2}, {"O(-2E+H)", 1}};
    s.sod = std::move(sod);
    return s;
}

} // namespace sodcheck
