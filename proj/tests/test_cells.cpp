#include "anglesum/cellcomplex.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace anglesum;

namespace {

const double kTetA1 = 3 / std::numbers::pi * std::acos(1.0 / 3);

} // namespace

TEST_CASE("tetrahedron with one subdivided facet")
{
    auto C = delta_prime();
    auto c = cell_complex_chars(C);
    CHECK(c.f == FVector::from(3, {5, 9, 6, 0}));
    CHECK(c.a[0].d() == Catch::Approx(kTetA1 - 1 + 0.5).epsilon(1e-12));
    CHECK(c.a[1].d() == Catch::Approx(kTetA1 + 1.5).epsilon(1e-12));
    CHECK(c.a[2].q() == 3);
    CHECK(c.chi_boundary == 2);
    CHECK(c.chi_alpha.d() == Catch::Approx(1).epsilon(1e-12));
    CHECK(c.interior_deviation <= 1e-12);
    CHECK(ds_operator(c.f, 1).q() == 9);
    for (int k = 0; k <= 2; ++k) CHECK(check_ds(c.f, k).pass);
}

TEST_CASE("two tetrahedra glued along a facet")
{
    auto [A, B] = delta_delta_parts();
    for (int k = 0; k <= 2; ++k) {
        auto r = ds_pe_gluing_check(A, B, k);
        CHECK(r.g.spec.kind == GluingKind::Balls);
        CHECK(r.ds_expected.is_zero());
        CHECK(r.pass());
    }
    auto g = glue_cells(A, B);
    CHECK(g.cc.f == FVector::from(3, {5, 9, 6, 0}));
    CHECK(g.agree);
}

TEST_CASE("two tetrahedra touching along an edge")
{
    auto [A, B] = edge_contact_parts();
    for (int k = 0; k <= 2; ++k) {
        auto r = ds_pe_gluing_check(A, B, k);
        CHECK(r.g.spec.kind == GluingKind::LowerDim);
        CHECK(r.g.spec.l == 1);
        CHECK(r.pass());
    }
    auto r0 = ds_pe_gluing_check(A, B, 0);
    CHECK_FALSE(r0.pe_expected.is_zero());
}

TEST_CASE("stacked ball")
{
    auto C = make_cell_complex(stacked_ball_cells(), "stacked");
    CHECK(C.size() == 5);
    auto c = cell_complex_chars(C);
    CHECK(c.chi_boundary == 2);
    CHECK(c.chi_alpha.d() == Catch::Approx(1).epsilon(1e-12));
    CHECK(c.f[0] == 8);
    CHECK(c.interior_deviation <= 1e-9);
    CHECK(interior_angle_report(c).pass);
}

TEST_CASE("overlapping cells are rejected")
{
    auto a = single_cell(unit_cube(3));
    auto shifted = make_polytope_q({{Rational(1, 2), 0, 0}, {Rational(3, 2), 0, 0}, {Rational(1, 2), 1, 0}, {Rational(1, 2), 0, 1}});
    CHECK_THROWS_AS(glue_cells(a, single_cell(shifted)), GluingError);
    CHECK_THROWS_AS(make_cell_complex({unit_cube(3), unit_cube(3)}), GeometryError);
}

TEST_CASE("non-simplicial parts are refused by the gluing check")
{
    auto a = single_cell(unit_cube(3));
    auto b = single_cell(make_polytope_q({{1, 0, 0}, {2, 0, 0}, {1, 1, 0}, {1, 0, 1}}));
    CHECK_THROWS_AS(ds_pe_gluing_check(a, b, 0), GuardError);
}
