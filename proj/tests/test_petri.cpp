#include <catch_amalgamated.hpp>

#include <fstream>
#include <map>

#include "test_support.hpp"
#include "xdelta/petri.hpp"

using namespace xdelta;

namespace {

CuspFormBasis load(const std::string& name) {
    std::ifstream in(testsup::fixture(name));
    REQUIRE(in.good());
    return parse_fixture(in);
}

Polynomial make_poly(int nvars, int degree,
                     const std::map<std::vector<int>, Rational>& terms) {
    const auto mons = grlex_monomials(nvars, degree);
    Polynomial p{nvars, degree, std::vector<Rational>(mons.size(), Rational(0))};
    for (const auto& [exps, c] : terms) {
        bool found = false;
        for (std::size_t k = 0; k < mons.size(); ++k)
            if (mons[k] == exps) {
                p.coeffs[k] = c;
                found = true;
                break;
            }
        REQUIRE(found);
    }
    return p;
}

// x*w - y*z + z^2
Polynomial quadric_26() {
    return make_poly(4, 2, {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, -1}, {{0, 0, 2, 0}, 1}});
}

// x^2 z - x y^2 - x z^2 + 2 y^2 z - 2 y z^2 + y z w - y w^2 + z^3 - 2 z^2 w + z w^2
Polynomial cubic_26() {
    return make_poly(4, 3, {
        {{2, 0, 1, 0}, 1}, {{1, 2, 0, 0}, -1}, {{1, 0, 2, 0}, -1},
        {{0, 2, 1, 0}, 2}, {{0, 1, 2, 0}, -2}, {{0, 1, 1, 1}, 1},
        {{0, 1, 0, 2}, -1}, {{0, 0, 3, 0}, 1}, {{0, 0, 2, 1}, -2},
        {{0, 0, 1, 2}, 1}});
}

} // namespace

TEST_CASE("graded-lex monomial order") {
    const auto d2 = grlex_monomials(4, 2);
    REQUIRE(d2.size() == 10);
    CHECK(d2.front() == std::vector<int>{2, 0, 0, 0});
    CHECK(d2[1] == std::vector<int>{1, 1, 0, 0});
    CHECK(d2.back() == std::vector<int>{0, 0, 0, 2});
    CHECK(grlex_monomials(4, 3).size() == 20);
    CHECK(grlex_monomials(3, 4).size() == 15);
}

TEST_CASE("quadric kernel at low precision contains the printed quadric") {
    const CuspFormBasis basis = load("N26_delta1-5-21-25.q10.txt");
    const auto kernel = quadric_relations(basis);
    REQUIRE(kernel.size() == 1);
    CHECK(kernel.front().coeffs == quadric_26().coeffs);
    CHECK(evaluate(quadric_26(), basis).is_zero());
    CHECK(evaluate(cubic_26(), basis).is_zero());
}

TEST_CASE("verified model for the level-26 order-4 curve") {
    const CuspFormBasis basis = load("N26_delta1-5-21-25.q100.txt");
    CHECK(basis.prec() >= relation_sturm_bound(basis, 3));

    const auto kernel = quadric_relations(basis);
    REQUIRE(kernel.size() == 1);
    CHECK(kernel.front().coeffs == quadric_26().coeffs);

    const Polynomial cubic = cubic_relations(basis, kernel.front());
    CHECK(canonicalize_cubic(cubic, kernel.front()).coeffs ==
          canonicalize_cubic(cubic_26(), kernel.front()).coeffs);

    const PetriModel model = build_petri_model(basis);
    REQUIRE(model.relations.size() == 2);
    CHECK(model.relations[0].degree == 2);
    CHECK(model.relations[1].degree == 3);
    CHECK(model.rigor == Rigor::Verified);

    const Trigonality tri = is_trigonal_over_q(model);
    CHECK(tri.trigonal_over_q);
    CHECK(tri.reason == "RuledOverQ");
}

TEST_CASE("low-precision model is heuristic") {
    const PetriModel model = build_petri_model(load("N26_delta1-5-21-25.q10.txt"));
    CHECK(model.rigor == Rigor::Heuristic);
    REQUIRE(!model.relations.empty());
    CHECK(model.relations[0].coeffs == quadric_26().coeffs);
    CHECK(is_trigonal_over_q(model).trigonal_over_q);
}

TEST_CASE("every bundled genus-4 model verifies with kernel dimensions (1, 5)") {
    struct Row { const char* file; QuadricVerdict verdict; };
    const Row rows[] = {
        {"N25_delta1-7-18-24.q100.txt", QuadricVerdict::RuledOverField},
        {"N26_delta1-5-21-25.q100.txt", QuadricVerdict::RuledOverQ},
        {"N26_delta1-3-9-17-23-25.q100.txt", QuadricVerdict::RuledOverQ},
        {"N28_delta1-13-15-27.q100.txt", QuadricVerdict::RuledOverQ},
        {"N28_delta1-3-9-19-25-27.q100.txt", QuadricVerdict::ConeOverQ},
        {"N29_delta1-4-5-6-7-9-13-16-20-22-23-24-25-28.q100.txt",
         QuadricVerdict::RuledOverQ},
        {"N37_delta1-6-8-10-11-14-23-26-27-29-31-36.q100.txt",
         QuadricVerdict::RuledOverQ},
        {"N37_delta1-3-4-7-9-10-11-12-16-21-25-26-27-28-30-33-34-36.q100.txt",
         QuadricVerdict::ConeOverQ},
        {"N50_delta1-9-11-19-21-29-31-39-41-49.q100.txt", QuadricVerdict::RuledOverQ},
    };
    for (const Row& row : rows) {
        INFO(row.file);
        const CuspFormBasis basis = load(row.file);
        const PetriModel model = build_petri_model(basis);
        CHECK(model.rigor == Rigor::Verified);
        REQUIRE(model.relations.size() == 2);
        for (const auto& rel : model.relations)
            CHECK(evaluate(rel, basis).is_zero());
        const Trigonality tri = is_trigonal_over_q(model);
        REQUIRE(tri.classification.has_value());
        CHECK(tri.classification->verdict == row.verdict);
        if (row.verdict == QuadricVerdict::RuledOverField)
            CHECK(tri.classification->field_disc == 5);
        // rank + kernel dimension = monomial count for both degrees
        const auto k3 = kernel_basis(
            detail::monomial_coefficient_matrix(basis, 3));
        CHECK(k3.size() == 5);
    }
}

TEST_CASE("printed quadrics are re-derived from the fixtures") {
    struct Row {
        const char* file;
        std::map<std::vector<int>, Rational> quadric;
    };
    const Row rows[] = {
        {"N25_delta1-7-18-24.q100.txt",
         {{{1, 0, 1, 0}, 1}, {{0, 2, 0, 0}, -1}, {{0, 1, 0, 1}, 1},
          {{0, 0, 1, 1}, -2}, {{0, 0, 0, 2}, 1}}},
        {"N26_delta1-3-9-17-23-25.q100.txt",
         {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, -1}, {{0, 0, 2, 0}, 1},
          {{0, 0, 1, 1}, -1}}},
        {"N28_delta1-13-15-27.q100.txt",
         {{{1, 0, 1, 0}, 1}, {{1, 0, 0, 1}, -1}, {{0, 2, 0, 0}, -1},
          {{0, 0, 2, 0}, -1}, {{0, 0, 1, 1}, -1}, {{0, 0, 0, 2}, 3}}},
        {"N28_delta1-3-9-19-25-27.q100.txt",
         {{{1, 0, 1, 0}, 1}, {{1, 0, 0, 1}, 1}, {{0, 2, 0, 0}, -1},
          {{0, 1, 1, 0}, 1}, {{0, 1, 0, 1}, 1}, {{0, 0, 2, 0}, -1},
          {{0, 0, 1, 1}, -2}, {{0, 0, 0, 2}, -1}}},
        {"N29_delta1-4-5-6-7-9-13-16-20-22-23-24-25-28.q100.txt",
         {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, -1}, {{0, 1, 0, 1}, 1},
          {{0, 0, 2, 0}, 1}, {{0, 0, 1, 1}, -3}, {{0, 0, 0, 2}, -2}}},
        {"N37_delta1-6-8-10-11-14-23-26-27-29-31-36.q100.txt",
         {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, -1}, {{0, 1, 0, 1}, 1},
          {{0, 0, 2, 0}, -1}, {{0, 0, 1, 1}, 2}, {{0, 0, 0, 2}, -1}}},
        {"N50_delta1-9-11-19-21-29-31-39-41-49.q100.txt",
         {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, -1}}},
    };
    for (const Row& row : rows) {
        INFO(row.file);
        const CuspFormBasis basis = load(row.file);
        const auto kernel = quadric_relations(basis);
        REQUIRE(kernel.size() == 1);
        CHECK(kernel.front().coeffs == make_poly(4, 2, row.quadric).coeffs);
    }
}

TEST_CASE("printed cubics are re-derived modulo the quadric span") {
    struct Row {
        const char* file;
        std::map<std::vector<int>, Rational> cubic;
    };
    const Row rows[] = {
        // x^2 w - x w^2 - y^3 + y^2 z - 3 y z w + 3 y w^2 + z^2 w - 2 z w^2 + w^3
        {"N25_delta1-7-18-24.q100.txt",
         {{{2, 0, 0, 1}, 1}, {{1, 0, 0, 2}, -1}, {{0, 3, 0, 0}, -1},
          {{0, 2, 1, 0}, 1}, {{0, 1, 1, 1}, -3}, {{0, 1, 0, 2}, 3},
          {{0, 0, 2, 1}, 1}, {{0, 0, 1, 2}, -2}, {{0, 0, 0, 3}, 1}}},
        // x^2 z - x y^2 - x z^2 + 3 y^2 z - 6 y z^2 - 2 y z w - y w^2
        //   + 4 z^3 + z^2 w + z w^2
        {"N26_delta1-3-9-17-23-25.q100.txt",
         {{{2, 0, 1, 0}, 1}, {{1, 2, 0, 0}, -1}, {{1, 0, 2, 0}, -1},
          {{0, 2, 1, 0}, 3}, {{0, 1, 2, 0}, -6}, {{0, 1, 1, 1}, -2},
          {{0, 1, 0, 2}, -1}, {{0, 0, 3, 0}, 4}, {{0, 0, 2, 1}, 1},
          {{0, 0, 1, 2}, 1}}},
        // x^2 z - x y^2 - y w^2 - z^2 w
        {"N50_delta1-9-11-19-21-29-31-39-41-49.q100.txt",
         {{{2, 0, 1, 0}, 1}, {{1, 2, 0, 0}, -1}, {{0, 1, 0, 2}, -1},
          {{0, 0, 2, 1}, -1}}},
    };
    for (const Row& row : rows) {
        INFO(row.file);
        const CuspFormBasis basis = load(row.file);
        const auto kernel = quadric_relations(basis);
        REQUIRE(kernel.size() == 1);
        const Polynomial printed = make_poly(4, 3, row.cubic);
        CHECK(evaluate(printed, basis).is_zero());
        const Polynomial computed = cubic_relations(basis, kernel.front());
        CHECK(canonicalize_cubic(computed, kernel.front()).coeffs ==
              canonicalize_cubic(printed, kernel.front()).coeffs);
    }
}

TEST_CASE("classification is stable under a change of basis") {
    const CuspFormBasis basis = load("N26_delta1-5-21-25.q100.txt");
    for (int trial = 0; trial < 3; ++trial) {
        const Matrix u = testsup::rand_invertible4();
        CuspFormBasis mixed = basis;
        for (int i = 0; i < 4; ++i) {
            QSeries s(basis.prec());
            for (int j = 0; j < 4; ++j)
                s = series_add(s, series_scale(u.at(j, i), basis.forms[j]));
            mixed.forms[static_cast<std::size_t>(i)] = s;
        }
        const PetriModel model = build_petri_model(mixed);
        CHECK(is_trigonal_over_q(model).reason == "RuledOverQ");
    }
}

TEST_CASE("monomial bases are rejected as canonical curves") {
    // x = q, y = q^2, z = q^3, w = q^4 satisfies both xw - yz and y^2 - xz
    CuspFormBasis synthetic{Level(26), testsup::delta_of(26, {5}), 2, {}, 4, 126};
    for (int e = 1; e <= 4; ++e) {
        QSeries s(70);
        s.at(e) = 1;
        synthetic.forms.push_back(s);
    }
    CHECK_THROWS_AS(quadric_relations(synthetic), IntegrityError);
    try {
        quadric_relations(synthetic);
    } catch (const IntegrityError& e) {
        CHECK(e.code() == "HyperellipticOrLowPrecision");
    }
}

TEST_CASE("cubic relations reject a zero quadric") {
    const CuspFormBasis basis = load("N26_delta1-5-21-25.q10.txt");
    Polynomial zero{4, 2, std::vector<Rational>(10, Rational(0))};
    CHECK_THROWS_AS(cubic_relations(basis, zero), IntegrityError);
}

TEST_CASE("quartic relation for the genus-3 curve") {
    const CuspFormBasis basis = load("N24_delta1-5-19-23.q100.txt");
    REQUIRE(basis.declared_genus == 3);
    CHECK(basis.prec() >= relation_sturm_bound(basis, 4));
    const Polynomial quartic = quartic_relation(basis);
    CHECK(quartic.degree == 4);
    CHECK(evaluate(quartic, basis).is_zero());

    const PetriModel model = build_petri_model(basis);
    CHECK(model.genus == 3);
    CHECK(model.rigor == Rigor::Verified);
    const Trigonality tri = is_trigonal_over_q(model);
    CHECK(tri.trigonal_over_q);
    CHECK(tri.reason == "PlaneQuarticProjection");

    // a genus-4 basis is a usage error for the quartic construction
    CHECK_THROWS_AS(quartic_relation(load("N26_delta1-5-21-25.q10.txt")), UsageError);
}

TEST_CASE("polynomial rendering") {
    CHECK(to_string(quadric_26()) == "x*w - y*z + z^2");
    CHECK(to_string(cubic_26()) ==
          "x^2*z - x*y^2 - x*z^2 + 2*y^2*z - 2*y*z^2 + y*z*w - y*w^2 + z^3 - "
          "2*z^2*w + z*w^2");
}
