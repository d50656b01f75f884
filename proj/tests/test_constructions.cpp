#include "anglesum/expr.hpp"
#include "anglesum/relations.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace anglesum;

namespace {

void check_q(const AlphaFVector& af, const std::vector<Rational>& a, const std::vector<long long>& f)
{
    for (int i = 0; i <= af.d(); ++i) {
        REQUIRE(af.a[i].exact());
        CHECK(af.a[i].q() == a[i]);
        CHECK(af.f[i] == f[i]);
    }
}

AlphaFVector geometric(const VPolytope& p) { return alpha_f(p); }

} // namespace

TEST_CASE("limiting pyramids over a triangle")
{
    check_q(*eval_expr("P0 tri").af, {Rational(1, 2), Rational(3, 2), 2, 1}, {4, 6, 4, 1});
    check_q(*eval_expr("Pinf tri").af, {Rational(1, 4), Rational(5, 4), 2, 1}, {4, 6, 4, 1});
}

TEST_CASE("limits are approached by flat and tall geometric pyramids")
{
    auto flat = geometric(pyramid_geometric(base_triangle(), Scalar(Rational(1, 10000))));
    auto tall = geometric(pyramid_geometric(base_triangle(), Scalar(10000)));
    CHECK(flat.a[0].d() == Catch::Approx(0.5).margin(1e-3));
    CHECK(flat.a[1].d() == Catch::Approx(1.5).margin(1e-3));
    CHECK(tall.a[0].d() == Catch::Approx(0.25).margin(1e-3));
    CHECK(tall.a[1].d() == Catch::Approx(1.25).margin(1e-3));
}

TEST_CASE("prism recursion matches geometry")
{
    for (auto q : {base_triangle(), base_square()}) {
        auto rec = prism_af(alpha_f(q));
        auto geo = alpha_f(prism_geometric(q));
        for (int i = 0; i <= 3; ++i) {
            CHECK(rec.a[i].d() == Catch::Approx(geo.a[i].d()).epsilon(1e-12));
            CHECK(rec.f[i] == geo.f[i]);
        }
    }
}

TEST_CASE("prism powers give cubes")
{
    // the d-cube has C(d,i) 2^{d-i} faces of dimension i, each with interior angle 2^{-(d-i)}
    for (int d = 1; d <= 8; ++d) {
        auto e = eval_expr("B*^" + std::to_string(d) + " point");
        REQUIRE(e.af);
        for (int i = 0; i <= d; ++i) {
            CHECK(e.af->a[i].q() == Rational(binom_big(d, i)));
            CHECK(e.af->f[i] == static_cast<long long>(binom_big(d, i)) << (d - i));
        }
    }
    auto cube = alpha_f(unit_cube(3));
    auto e = *eval_expr("B*^3 point").af;
    for (int i = 0; i <= 3; ++i) CHECK(e.a[i].q() == cube.a[i].q());
    check_q(*eval_expr("B* seg").af, {1, 2, 1}, {4, 4, 1});
}

TEST_CASE("two-tetrahedra realization of the facet subdivision")
{
    const double c = 6 / std::numbers::pi * std::acos(1.0 / 3);
    auto af = alpha_f(t13_two_tetrahedra());
    CHECK(af.a[0].d() == Catch::Approx(c - 2).margin(1e-9));
    CHECK(af.a[1].d() == Catch::Approx(c).margin(1e-9));
    CHECK(af.a[2].q() == 3);
    CHECK(af.f == FVector::from(3, {5, 9, 6, 1}));
}

TEST_CASE("stellar subdivisions of simplices")
{
    CHECK(face_lattice(stellar_simplex(3, 1)).f() == FVector::from(3, {5, 9, 6, 1}));
    CHECK(face_lattice(stellar_simplex(3, 0)).f() == FVector::from(3, {4, 6, 4, 1}));
    auto t42 = face_lattice(stellar_simplex(4, 2));
    CHECK(is_simplicial(t42));
    CHECK(t42.f()[0] == 6);
    auto reg = regular_tetrahedron();
    auto L = face_lattice(reg);
    auto sub = face_lattice(stellar_subdivision(reg, L, {2, 0}));
    CHECK(sub.f() == FVector::from(3, {5, 9, 6, 1}));
}

TEST_CASE("gamma calculus agrees with the alpha recursions")
{
    auto q = *eval_expr("Pinf tri").af;
    auto g = gamma_from_alpha(q.a);
    auto gp = gamma_prism(g);
    auto direct = gamma_from_alpha(prism_af(q).a);
    for (int i = 0; i <= 4; ++i) CHECK(gp[i].q() == direct[i].q());
    auto gi = gamma_pyr_inf(g);
    auto di = gamma_from_alpha(pyr_inf_af(q).a);
    for (int i = 0; i <= 4; ++i) CHECK(gi[i].q() == di[i].q());
    auto h = h_from_f(q.f);
    auto g0 = gamma_pyr_zero(h);
    auto d0 = gamma_from_alpha(pyr_zero_af(q.f).a);
    for (int i = 0; i <= 4; ++i) CHECK(g0[i].q() == d0[i].q());
    auto hp = h_pyramid(h);
    auto hd = h_from_f(pyramid_f(q.f));
    for (int i = 0; i <= 4; ++i) CHECK(hp[i].q() == hd[i].q());
}

TEST_CASE("bipyramid face numbers")
{
    CHECK(bipyramid_f(FVector::from(2, {3, 3, 1})) == FVector::from(3, {5, 9, 6, 1}));
    CHECK(bipyramid_f(FVector::from(1, {2, 1})) == FVector::from(2, {4, 4, 1}));
    CHECK(bipyramid_f(FVector::from(2, {4, 4, 1})) == FVector::from(3, {6, 12, 8, 1}));
}

TEST_CASE("expression grammar")
{
    auto e = parse_expr("Pinf^2 P0^2 point");
    CHECK(e->dim() == 4);
    CHECK(e->limiting());
    CHECK(eval_expr("P[2] tri").geometry.has_value());
    CHECK_THROWS_AS(parse_expr("Q tri"), ParseError);
    CHECK_THROWS_AS(parse_expr("B*"), ParseError);
    CHECK_THROWS_AS(parse_expr(""), ParseError);
}
