#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sodcheck/scene.hpp"
#include "sodcheck/sod.hpp"

using namespace sodcheck;

namespace {

const RealizedScene& example_scene() {
    static const RealizedScene rs = realize(Scene::builtin_example54());
    return rs;
}

ExceptionalCollection line_bundle_collection(const ChowRing& ring, const std::string& name,
                                             const std::vector<DivisorClass>& divisors) {
    ExceptionalCollection coll{name, {}};
    for (DivisorClass d : divisors) coll.objects.push_back(line_bundle_object(ring, d));
    return coll;
}

const std::vector<DivisorClass> kSixTerm = {{-2, 0}, {-2, 1}, {-1, -1}, {-1, 0}, {0, -1}, {0, 0}};

/* --- synthetic K-lattice for the mutation properties -------------------- */

using Vec = std::vector<long long>;

long long pair_with(const IntMatrix& gram, const Vec& x, const Vec& y) {
    long long out = 0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) out += x[i] * gram[i][j] * y[j];
    return out;
}

Rational det(const IntMatrix& m) {
    RationalMatrix a;
    for (const auto& row : m) {
        a.emplace_back();
        for (long long x : row) a.back().push_back(Rational(x));
    }
    const size_t n = a.size();
    Rational d(1);
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        while (pivot < n && a[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            d = -d;
        }
        d *= a[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            const Rational f = a[i][k] / a[k][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return d;
}

} // namespace

TEST_CASE("gram matrix of the six-term collection", "[sod]") {
    const ChowRing& ring = example_scene().ring;
    const ExceptionalCollection coll = line_bundle_collection(ring, "six", kSixTerm);
    const IntMatrix g = gram_matrix(ring, coll);

    // Dual route: every entry must equal the alternating Ext sum computed
    // through the pushforward cohomology, not through Riemann-Roch.
    for (size_t i = 0; i < kSixTerm.size(); ++i)
        for (size_t j = 0; j < kSixTerm.size(); ++j)
            CHECK(g[i][j] == euler_characteristic(rhom_dims(kSixTerm[i], kSixTerm[j], ring)));

    for (size_t i = 0; i < 6; ++i) {
        CHECK(g[i][i] == 1);
        for (size_t j = 0; j < i; ++j) CHECK(g[i][j] == 0);
    }

    const ExceptionalCollection single = line_bundle_collection(ring, "unit", {{0, 0}});
    CHECK(gram_matrix(ring, single) == IntMatrix{{1}});

    // chi(O(-H), O) = h^0(O(H)) = 2 on the base line.
    CHECK(euler_pairing(ring, kclass_of_line_bundle(ring, {0, -1}),
                        kclass_of_line_bundle(ring, {0, 0})) == 2);
}

TEST_CASE("verify_exceptional passes, fails, and degrades as specified", "[sod]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;

    const VerifyVerdict good = verify_exceptional(ring, line_bundle_collection(ring, "six", kSixTerm));
    CHECK(good.pass);
    CHECK(good.ext_level);
    CHECK(good.failures.empty());

    std::vector<DivisorClass> reversed(kSixTerm.rbegin(), kSixTerm.rend());
    const VerifyVerdict bad =
        verify_exceptional(ring, line_bundle_collection(ring, "reversed", reversed));
    CHECK_FALSE(bad.pass);
    REQUIRE_FALSE(bad.failures.empty());
    bool found = false;
    for (const PairFailure& f : bad.failures)
        found = found || (f.source == "O(-H)" && f.target == "O");
    CHECK(found);

    CHECK(verify_exceptional(ring, ExceptionalCollection{"empty", {}}).pass);

    // A K-class-only object downgrades the check to the Gram level.
    ExceptionalCollection with_v{"with-v", {rs.object("O(-2E)"), rs.object("V")}};
    const VerifyVerdict degraded = verify_exceptional(ring, with_v);
    CHECK_FALSE(degraded.ext_level);
    CHECK(degraded.downgrade == "kclass-only");
    CHECK(degraded.pass);
}

TEST_CASE("left mutation at the example pair", "[sod]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;
    const ExceptionalCollection coll = rs.collection("projective-bundle");

    const ExceptionalCollection mutated = mutate(ring, coll, 2, MutationDirection::left);
    CHECK(mutated.objects[0].name == "O(-2E)");
    CHECK(mutated.objects[1].name == "L_{O(-2E+H)}(O(-E-H))");
    CHECK(mutated.objects[2].name == "O(-2E+H)");
    CHECK(mutated.objects[3].name == "O(-E)");

    // [L] = chi(A,B)[A] - [B] with chi = -1: minus the extension class.
    const ChowClass expected =
        -(ring.chern_character({-1, -1}) + ring.chern_character({-2, 1}));
    CHECK(mutated.objects[1].kclass.ch(ring) == expected);
    CHECK(mutated.objects[1].kclass.ch(ring) == (-rs.object("V").kclass).ch(ring));
    CHECK_FALSE(mutated.objects[1].divisor.has_value());

    // The mutated collection still verifies (Gram level, new object has
    // no divisor) and mutating back restores classes and Gram matrix.
    CHECK(verify_exceptional(ring, mutated).pass);
    const ExceptionalCollection back = mutate(ring, mutated, 2, MutationDirection::right);
    CHECK(gram_matrix(ring, back) == gram_matrix(ring, coll));
    for (size_t i = 0; i < coll.objects.size(); ++i)
        CHECK(back.objects[i].kclass.ch(ring) == coll.objects[i].kclass.ch(ring));

    CHECK_THROWS_MATCHES(mutate(ring, coll, 0, MutationDirection::left), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.kind() == "index-out-of-range"; }));
    CHECK_THROWS_MATCHES(mutate(ring, coll, 6, MutationDirection::left), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.kind() == "index-out-of-range"; }));
}

TEST_CASE("mutations invert at every index in both orders", "[sod][property]") {
    const ChowRing& ring = example_scene().ring;
    const ExceptionalCollection coll = line_bundle_collection(ring, "six", kSixTerm);
    for (size_t k = 1; k < coll.objects.size(); ++k) {
        const ExceptionalCollection rl =
            mutate(ring, mutate(ring, coll, k, MutationDirection::left), k,
                   MutationDirection::right);
        const ExceptionalCollection lr =
            mutate(ring, mutate(ring, coll, k, MutationDirection::right), k,
                   MutationDirection::left);
        CHECK(gram_matrix(ring, rl) == gram_matrix(ring, coll));
        CHECK(gram_matrix(ring, lr) == gram_matrix(ring, coll));
        for (size_t i = 0; i < coll.objects.size(); ++i) {
            CHECK(rl.objects[i].kclass.ch(ring) == coll.objects[i].kclass.ch(ring));
            CHECK(lr.objects[i].kclass.ch(ring) == coll.objects[i].kclass.ch(ring));
        }
        // Each single mutation keeps the Gram matrix unitriangular.
        const IntMatrix g = gram_matrix(ring, mutate(ring, coll, k, MutationDirection::left));
        for (size_t i = 0; i < g.size(); ++i) {
            CHECK(g[i][i] == 1);
            for (size_t j = 0; j < i; ++j) CHECK(g[i][j] == 0);
        }
    }
}

TEST_CASE("mutation reattaches a divisor when the class is a line bundle", "[sod]") {
    const ChowRing& ring = example_scene().ring;
    // chi(O, O(H)) = 2, so [L_O O(H)] = 2[O] - [O(H)] = [O(-H)] at the
    // character level: the divisor field must come back.
    const ExceptionalCollection coll = line_bundle_collection(ring, "pair", {{0, 0}, {0, 1}});
    const ExceptionalCollection mutated = mutate(ring, coll, 1, MutationDirection::left);
    REQUIRE(mutated.objects[0].divisor.has_value());
    CHECK(*mutated.objects[0].divisor == DivisorClass{0, -1});
    CHECK(mutated.objects[0].name == "L_{O}(O(H))");
}

TEST_CASE("null membership solves over the curve generators", "[sod]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;
    const ContractionData& con = rs.contraction;

    const KClass oc = con.null_generator(ring, "C");
    CHECK(null_membership(ring, oc, con) == std::vector<long long>{1});
    CHECK(null_membership(ring, 2 * oc, con) == std::vector<long long>{2});
    CHECK_FALSE(null_membership(ring, kclass_of_line_bundle(ring, {0, -1}), con).has_value());

    // Two declared curves; the fibre line is also rational with chi
    // matching the genus-zero count.
    ContractionData two;
    two.curves = {{"C", {1, 0}}, {"F", {0, 1}}};
    const KClass of = two.null_generator(ring, "F");
    CHECK(null_membership(ring, oc + of, two) == std::vector<long long>{1, 1});
    CHECK(null_membership(ring, oc - 3 * of, two) == std::vector<long long>{1, -3});
}

TEST_CASE("hilbert polynomials of curve classes and line bundles", "[sod]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;
    const KClass oc = rs.contraction.null_generator(ring, "C");

    const Polynomial ph = hilbert_polynomial(ring, oc, {0, 1});
    CHECK(ph.str() == "n");
    CHECK(ph.coeff(0) == Rational(0));
    CHECK(ph.coeff(1) == Rational(1));

    const Polynomial pe = hilbert_polynomial(ring, oc, {1, 0});
    CHECK(pe.is_zero());

    // Leading coefficient deg(D^3)/6 for structure-sheaf twists, checked
    // pointwise against direct pairings as an independent oracle.
    std::mt19937 rng(301);
    std::uniform_int_distribution<long long> coeff(-3, 3);
    const KClass structure = kclass_of_line_bundle(ring, {0, 0});
    for (int trial = 0; trial < 20; ++trial) {
        const DivisorClass d{coeff(rng), coeff(rng)};
        const Polynomial p = hilbert_polynomial(ring, structure, d);
        const ChowClass dch = ring.divisor_class(d);
        CHECK(p.coeff(3) == ring.degree(dch * dch * dch) / Rational(6));
        for (long long n = 1; n <= 4; ++n) {
            const KClass twisted = kclass_of_line_bundle(ring, n * d);
            CHECK(p.eval(n) == Rational(euler_pairing(ring, structure, twisted)));
        }
    }
}

TEST_CASE("null classes have Hilbert polynomials with zero constant term", "[sod][property]") {
    const ChowRing& ring = example_scene().ring;
    ContractionData two;
    two.curves = {{"C", {1, 0}}, {"F", {0, 1}}};
    std::mt19937 rng(302);
    std::uniform_int_distribution<long long> mult(-5, 5), coeff(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const KClass f = mult(rng) * two.null_generator(ring, "C") +
                         mult(rng) * two.null_generator(ring, "F");
        const DivisorClass d{coeff(rng), coeff(rng)};
        const Polynomial p = hilbert_polynomial(ring, f, d);
        CHECK(p.constant_term() == Rational(0));
        CHECK(p.coeffs.size() <= 2); // curve support keeps it linear
    }
}

TEST_CASE("curve-level positivity", "[sod]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;
    CHECK(positivity_check(ring, {1, 1}, rs.contraction).pass);
    const PositivityVerdict h_only = positivity_check(ring, {0, 1}, rs.contraction);
    CHECK_FALSE(h_only.pass); // H.L = 0
    CHECK(h_only.line_value == 0);
    CHECK_FALSE(positivity_check(ring, {0, 0}, rs.contraction).pass);
}

TEST_CASE("splitting a null class across blocks", "[sod]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;

    const KClass oc = rs.contraction.null_generator(ring, "C");
    const auto split = split_null_class(ring, oc, rs.sodspec, rs.contraction);
    REQUIRE(split.size() == 4);
    CHECK(split[0].is_zero());
    CHECK(split[1].is_zero());
    CHECK(split[2].ch(ring) == oc.ch(ring));
    CHECK(split[3].is_zero());

    const auto zero_split = split_null_class(ring, oc - oc, rs.sodspec, rs.contraction);
    for (const KClass& part : zero_split) CHECK(part.is_zero());

    // Two curves assigned to different blocks: one generator per block.
    ContractionData two;
    two.curves = {{"C", {1, 0}}, {"F", {0, 1}}};
    SODSpec spec;
    spec.blocks = {{"B1", {}}, {"B2", {}}};
    spec.assignment = {{"C", 1}, {"F", 2}};
    const KClass sum = two.null_generator(ring, "C") + two.null_generator(ring, "F");
    const auto parts = split_null_class(ring, sum, spec, two);
    CHECK(parts[0].ch(ring) == two.null_generator(ring, "C").ch(ring));
    CHECK(parts[1].ch(ring) == two.null_generator(ring, "F").ch(ring));

    CHECK_THROWS_MATCHES(
        split_null_class(ring, kclass_of_line_bundle(ring, {0, -1}), rs.sodspec, rs.contraction),
        Error, Catch::Matchers::Predicate<Error>(
                   [](const Error& e) { return e.kind() == "not-null"; }));
}

TEST_CASE("disjointness of block divisors", "[sod]") {
    const RealizedScene& rs = example_scene();
    CHECK(check_disjointness(rs.sodspec, rs.contraction).pass); // single curve

    ContractionData two;
    two.curves = {{"C", {1, 0}}, {"F", {0, 1}}};
    two.adjacency = {{"C", "F"}};
    SODSpec split_spec;
    split_spec.blocks = {{"B1", {}}, {"B2", {}}};
    split_spec.assignment = {{"C", 1}, {"F", 2}};
    const DisjointnessVerdict bad = check_disjointness(split_spec, two);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.offending.size() == 1);
    CHECK(std::get<0>(bad.offending[0]) == "C");
    CHECK(std::get<1>(bad.offending[0]) == "F");

    split_spec.assignment["F"] = 1; // same block: allowed
    CHECK(check_disjointness(split_spec, two).pass);
}

TEST_CASE("compatibility: witness plus necessary condition", "[sod]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;

    const CompatibilityVerdict good = check_compatibility(ring, rs.sodspec, rs.contraction);
    CHECK(good.pass);
    REQUIRE(good.curves.size() == 1);
    CHECK(good.curves[0].block == 3);
    CHECK(good.curves[0].witness_present);
    CHECK(good.curves[0].witness_in_block);
    CHECK(good.curves[0].witness_identity);
    CHECK(good.curves[0].necessary);

    // Dropping the witness fails the witness layer but not the solve.
    SODSpec no_witness = rs.sodspec;
    no_witness.witnesses.clear();
    const CompatibilityVerdict missing = check_compatibility(ring, no_witness, rs.contraction);
    CHECK_FALSE(missing.pass);
    CHECK(missing.missing_witness == std::vector<std::string>{"C"});
    CHECK(missing.curves[0].necessary);

    // Empty contraction: vacuous pass.
    CHECK(check_compatibility(ring, rs.sodspec, ContractionData{}).pass);
}

TEST_CASE("compatibility is monotone under block growth", "[sod][property]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;
    std::mt19937 rng(303);
    std::uniform_int_distribution<long long> coeff(-3, 3);
    std::uniform_int_distribution<size_t> which(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        SODSpec grown = rs.sodspec;
        for (int extra = 0; extra < 3; ++extra) {
            const DivisorClass d{coeff(rng), coeff(rng)};
            grown.blocks[which(rng)].objects.push_back(line_bundle_object(ring, d));
        }
        CHECK(check_compatibility(ring, grown, rs.contraction).pass);
    }
}

TEST_CASE("induced decomposition for the example and its failure modes", "[sod]") {
    const RealizedScene& rs = example_scene();
    const ChowRing& ring = rs.ring;

    const InducedSODReport rep = induce_sod(ring, rs.sodspec, rs.contraction);
    REQUIRE(rep.blocks.size() == 4);
    CHECK(rep.blocks[0].generators == std::vector<std::string>{"pi_*(O(-2E))"});
    CHECK(rep.blocks[1].generators == std::vector<std::string>{"pi_*(V)"});
    CHECK(rep.blocks[2].generators ==
          std::vector<std::string>{"pi_*(O(-2E+H))", "pi_*(O(-E))", "pi_*(O(-H))"});
    CHECK(rep.blocks[3].generators == std::vector<std::string>{"O_X"});
    CHECK(rep.collection.pass);
    CHECK_FALSE(rep.projection_note.empty());

    // Disjointness failure gates the report.
    ContractionData two;
    two.curves = {{"C", {1, 0}}, {"F", {0, 1}}};
    two.adjacency = {{"C", "F"}};
    SODSpec spec = rs.sodspec;
    spec.assignment = {{"C", 3}, {"F", 4}};
    spec.witnesses["F"] = {{"O", 1}}; // bogus witness; disjointness fails anyway
    bool threw = false;
    try {
        induce_sod(ring, spec, two);
    } catch (const InduceError& e) {
        threw = true;
        CHECK(e.kind() == "preconditions-failed");
        CHECK_FALSE(e.disjointness.pass);
    }
    CHECK(threw);

    // Trivial spec: one block, no curves.
    SODSpec trivial;
    trivial.blocks = {{"B1", {line_bundle_object(ring, {0, 0})}}};
    const InducedSODReport t = induce_sod(ring, trivial, ContractionData{});
    REQUIRE(t.blocks.size() == 1);
    CHECK(t.blocks[0].generators == std::vector<std::string>{"O_X"});
}

TEST_CASE("mutations on random unitriangular K-lattices", "[sod][property]") {
    std::mt19937 rng(304);
    std::uniform_int_distribution<long long> upper(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const size_t n = 3 + static_cast<size_t>(trial % 4);
        IntMatrix gram(n, std::vector<long long>(n, 0));
        for (size_t i = 0; i < n; ++i) {
            gram[i][i] = 1;
            for (size_t j = i + 1; j < n; ++j) gram[i][j] = upper(rng);
        }
        std::vector<Vec> basis(n, Vec(n, 0));
        for (size_t i = 0; i < n; ++i) basis[i][i] = 1;

        const size_t k = 1 + static_cast<size_t>(rng() % (n - 1)); // 1-based pair position
        const Vec a = basis[k - 1], b = basis[k];
        const long long chi = pair_with(gram, a, b);

        // Left mutation on classes.
        std::vector<Vec> mutated = basis;
        Vec left(n, 0);
        for (size_t t = 0; t < n; ++t) left[t] = chi * a[t] - b[t];
        mutated[k - 1] = left;
        mutated[k] = a;

        // Base change has determinant +-1 and the new Gram stays
        // upper-unitriangular with the same determinant up to sign.
        IntMatrix base_change(n, std::vector<long long>(n, 0));
        for (size_t i = 0; i < n; ++i) base_change[i] = mutated[i];
        const Rational d = det(base_change);
        CHECK((d == Rational(1) || d == Rational(-1)));

        IntMatrix new_gram(n, std::vector<long long>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) new_gram[i][j] = pair_with(gram, mutated[i], mutated[j]);
        for (size_t i = 0; i < n; ++i) {
            CHECK(new_gram[i][i] == 1);
            for (size_t j = 0; j < i; ++j) CHECK(new_gram[i][j] == 0);
        }
        const Rational dg = det(gram), dng = det(new_gram);
        CHECK((dng == dg || dng == -dg));

        // Right mutation undoes it: (X, Y) -> (Y, chi(X,Y) Y - X).
        const Vec x = mutated[k - 1], y = mutated[k];
        const long long chi2 = pair_with(gram, x, y);
        Vec right(n, 0);
        for (size_t t = 0; t < n; ++t) right[t] = chi2 * y[t] - x[t];
        CHECK(y == a);
        CHECK(right == b);
    }
}
