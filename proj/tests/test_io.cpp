#include "anglesum/io.hpp"

#include <catch_amalgamated.hpp>

using namespace anglesum;

TEST_CASE("polytope JSON keeps rationals exact")
{
    auto p = polytope_from_json(R"({"dim": 2, "vertices": [[0, 0], ["1/2", 0], [0, 1]], "label": "t"})");
    CHECK(p.d == 2);
    CHECK(p.label == "t");
    CHECK(p.vertices[1][0].q() == Rational(1, 2));
    auto back = polytope_from_json(polytope_to_json(p).dump());
    CHECK(back.vertices == p.vertices);
}

TEST_CASE("floats in JSON stay floats")
{
    auto p = polytope_from_json(R"({"dim": 1, "vertices": [[0.25], [1]]})");
    CHECK_FALSE(p.vertices[0][0].exact());
    CHECK(p.vertices[1][0].exact());
}

TEST_CASE("malformed polytope JSON")
{
    CHECK_THROWS_AS(polytope_from_json("{"), ParseError);
    CHECK_THROWS_AS(polytope_from_json("[]"), ParseError);
    CHECK_THROWS_AS(polytope_from_json(R"({"vertices": [[0]]})"), ParseError);
    CHECK_THROWS_AS(polytope_from_json(R"({"dim": 2, "vertices": [[0, 0], [1]]})"), ParseError);
    CHECK_THROWS_AS(polytope_from_json(R"({"dim": 2, "vertices": []})"), ParseError);
    CHECK_THROWS_AS(polytope_from_json(R"({"dim": 1, "vertices": [["x"]]})"), ParseError);
}

TEST_CASE("curved JSON")
{
    auto p = curved_from_json(R"({"geometry": "spherical", "dim": 2, "vertices": [[1,0,0],[0,1,0],[0,0,1]]})");
    CHECK(p.geometry == Geometry::Spherical);
    CHECK(curved_alpha(p).a[-1].q() == Rational(1, 8));
    auto h = curved_from_json(R"({"geometry": "hyperbolic", "dim": 2, "vertices": [[0,0],[0.5,0],[0,0.5]]})");
    CHECK(h.geometry == Geometry::Hyperbolic);
    CHECK_THROWS_AS(curved_from_json(R"({"geometry": "hyperbolic", "dim": 2, "vertices": [[0,0],[1.5,0],[0,0.5]]})"),
                    GeometryError);
    CHECK_THROWS_AS(curved_from_json(R"({"geometry": "flat", "dim": 2, "vertices": [[0,0]]})"), ParseError);
    CHECK_THROWS_AS(curved_from_json(R"({"dim": 2, "vertices": [[0,0]]})"), ParseError);
}

TEST_CASE("scalar serialization")
{
    CHECK(scalar_to_json(Scalar(3)) == Json(3));
    CHECK(scalar_to_json(Scalar::frac(-5, 4)) == Json("-5/4"));
    CHECK(scalar_to_json(Scalar(0.5)) == Json(0.5));
    CHECK(scalar_from_json(Json("7/3")).q() == Rational(7, 3));
    CHECK_THROWS_AS(scalar_from_json(Json::array()), ParseError);
}

TEST_CASE("fixtures by name")
{
    CHECK(polytope_fixture("cube:4").d == 4);
    CHECK(polytope_fixture("cross:3").vertices.size() == 6);
    CHECK(polytope_fixture("simplex:5").vertices.size() == 6);
    CHECK(is_polytope_fixture("t1_3"));
    CHECK_FALSE(is_polytope_fixture("torus"));
    CHECK_THROWS_AS(polytope_fixture("cube:0"), ParseError);
    CHECK_THROWS_AS(polytope_fixture("cube:x"), ParseError);
    CHECK(curved_fixture("orthant:2").d == 2);
    CHECK(curved_fixture("klein:5:0.5").vertices.size() == 5);
    CHECK_THROWS_AS(curved_fixture("klein:5:1.5"), GeometryError);
    CHECK_THROWS_AS(curved_fixture("klein:5"), ParseError);
    CHECK_THROWS_AS(curved_fixture("orthant:4"), ParseError);
}

TEST_CASE("alpha serialization")
{
    auto a = angle_sums(unit_cube(3));
    auto j = alpha_to_json(a, false);
    CHECK(j["from"] == 0);
    CHECK(j["values"] == Json::parse("[1, 3, 3, 1]"));
    CHECK(alpha_f_str(a, face_lattice(unit_cube(3)).f()) == "(1, 3, 3, 1 | 8, 12, 6, 1)");
    auto r = report_to_json(check_gram(a));
    CHECK(r["pass"] == true);
    CHECK(r["relation"] == "gram");
}
