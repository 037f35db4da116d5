#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/io.hpp"

using namespace relcalc;
using namespace fixtures;

TEST_CASE("rationals and matrices") {
    CHECK(io::rational_to_json(Rational(-3, 4)) == "-3/4");
    CHECK(io::rational_to_json(Rational(5)) == "5");
    CHECK(io::rational_from_json("6/8", "x") == Rational(3, 4));
    CHECK_THROWS_AS(io::rational_from_json(3, "x"), ParseError);
    CHECK_THROWS_WITH_AS(io::rational_from_json("1/0", "gram[0][1]"), doctest::Contains("gram[0][1]"), ParseError);
    const RatMatrix m{{1, Rational(1, 2)}, {0, -2}};
    CHECK(io::matrix_from_json(io::matrix_to_json(m), "m") == m);
    CHECK_THROWS_AS(io::matrix_from_json(io::Json::parse(R"([["1"],["1","2"]])"), "m"), ParseError);
}

TEST_CASE("spaces") {
    const InnerProductSpace q3(3);
    CHECK(io::dump(io::space_to_json(q3)) == "{\n  \"dim\": 3\n}\n");
    const InnerProductSpace g(RatMatrix{{2, 1}, {1, 1}});
    CHECK(io::space_from_json(io::space_to_json(g)) == g);
    CHECK_THROWS_AS(io::space_from_json(io::Json::parse(R"({"dim": 2, "gram": [["1","2"],["2","1"]]})")), ParseError);
    CHECK_THROWS_AS(io::space_from_json(io::Json::parse(R"({"dim": -1})")), ParseError);
    CHECK_THROWS_AS(io::space_from_json(io::Json::parse(R"({"gram": []})")), ParseError);
}

TEST_CASE("relation files") {
    const auto text = R"({"from": {"dim": 2}, "to": {"dim": 2}, "graph_basis": [["2","2","2","6"]]})";
    const LinearRelation s = io::relation_from_json(io::parse(text, "inline"));
    CHECK(s == rank_one());

    SUBCASE("round trip is byte identical") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 40; ++i) {
            const auto h = testgen::random_space(rng, 1 + i % 4);
            const auto k = i % 3 == 0 ? InnerProductSpace(2) : testgen::random_space(rng, 2);
            const auto t = testgen::random_relation(rng, h, k);
            const std::string once = io::dump(io::relation_to_json(t));
            const LinearRelation back = io::relation_from_json(io::parse(once, "dump"));
            CHECK(back == t);
            CHECK(io::dump(io::relation_to_json(back)) == once);
        }
    }
    SUBCASE("errors name the field") {
        CHECK_THROWS_WITH_AS(io::relation_from_json(io::parse(
                                 R"({"from": {"dim": 2}, "to": {"dim": 2}, "graph_basis": [["1","1/0","1","3"]]})", "f")),
                             doctest::Contains("graph_basis[0][1]"), ParseError);
        CHECK_THROWS_WITH_AS(io::relation_from_json(io::parse(R"({"from": {"dim": 2}, "graph_basis": []})", "f")),
                             doctest::Contains("\"to\""), ParseError);
        CHECK_THROWS_WITH_AS(
            io::relation_from_json(io::parse(R"({"from": {"dim": 1}, "to": {"dim": 1}, "graph_basis": [["1"]]})", "f")),
            doctest::Contains("graph_basis[0]"), ParseError);
        CHECK_THROWS_AS(io::parse("{", "broken"), ParseError);
    }
}

TEST_CASE("representing map files") {
    const LinearRelation s = diagonal_restriction();
    const RepresentingMap q = repmap_quotient(s, 0);
    const std::string once = io::dump(io::repmap_to_json(q));
    const RepresentingMap back = io::repmap_from_json(io::parse(once, "dump"));
    CHECK(back.c == q.c);
    CHECK(back.domain == q.domain);
    CHECK(back.matrix == q.matrix);
    CHECK(back.codomain == q.codomain);
    CHECK(back.represents(form_of_relation(s)));
    CHECK(io::dump(io::repmap_to_json(back)) == once);
}

TEST_CASE("reports carry witnesses") {
    const auto s = rank_one();
    VerifyOptions opts;
    opts.bundle = compute_bundle(s, 0);
    opts.bundle->krein = opts.bundle->friedrichs;
    InstanceReport r;
    r.s = s;
    r.checks = verify_all(s, 0, opts);
    SuiteReport suite{{r}};
    const io::Json j = io::suite_to_json(suite);
    REQUIRE(j.is_array());
    bool found = false;
    for (const auto& c : j[0]["checks"]) {
        if (c["passed"].get<bool>()) {
            CHECK_FALSE(c.contains("witness"));
            continue;
        }
        CHECK(c.contains("witness"));
        if (c["name"] == "codding-identity") {
            found = true;
            CHECK(c["witness"]["relations"].size() == 2);
        }
    }
    CHECK(found);
    CHECK(suite.summary() == "0/1 instances, 1 failures");
}
