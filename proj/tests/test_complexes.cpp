#include "anglesum/fixtures.hpp"
#include "anglesum/gluing.hpp"

#include <catch_amalgamated.hpp>

using namespace anglesum;

namespace {

VoxelComplex cells(int d, std::vector<Lattice> c, bool connected = true)
{
    return make_voxel(d, c, "v", connected);
}

bool coarse_ok(const VoxelComplex& v)
{
    try {
        voxel_chars(v, Resolution::Coarse);
        return true;
    } catch (const GeometryError&) {
        return false;
    }
}

} // namespace

TEST_CASE("unit cube as a voxel complex")
{
    auto c = voxel_chars(voxel_cube(3));
    CHECK(c.f == FVector::from(3, {8, 12, 6, 0}));
    CHECK(c.a[0].q() == 1);
    CHECK(c.a[1].q() == 3);
    CHECK(c.a[2].q() == 3);
    CHECK(c.chi_alpha.q() == 1);
    CHECK(c.chi_boundary == 2);
}

TEST_CASE("unit square as a voxel complex")
{
    auto c = voxel_chars(voxel_cube(2));
    CHECK(c.a[0].q() == 1);
    CHECK(c.a[1].q() == 2);
    CHECK(c.chi_alpha.q() == -1);
    CHECK(c.chi_boundary == 0);
}

TEST_CASE("handlebodies")
{
    for (int g = 0; g <= 3; ++g) {
        for (auto r : {Resolution::Cells, Resolution::Coarse}) {
            auto c = voxel_chars(handlebody(g), r);
            CHECK(c.chi_boundary == 2 - 2 * g);
            CHECK(c.chi_alpha.q() == 1 - g);
        }
    }
}

TEST_CASE("torus fixture breaks Gram")
{
    auto c = voxel_chars(torus_ring());
    CHECK(c.a[0].q() == 4);
    CHECK(c.a[1].q() == 12);
    CHECK(c.a[2].q() == 8);
    CHECK(c.chi_alpha.q() == 0);
    CHECK_FALSE(check_gram(c.a).pass);
}

TEST_CASE("cube with a cavity has two boundary spheres")
{
    auto coarse = voxel_chars(gamma_complex());
    CHECK(coarse.a[0].q() == 8);
    CHECK(coarse.a[1].q() == 12);
    CHECK(coarse.a[2].q() == 6);
    auto c = voxel_chars(gamma_complex(), Resolution::Cells);
    CHECK(c.chi_boundary == 4);
    CHECK(c.chi_alpha.q() == 2);
    REQUIRE(c.components.size() == 2);
    for (auto& k : c.components) {
        CHECK(k.chi == 2);
        CHECK(k.chi_alpha.q() == 1);
    }
}

TEST_CASE("characteristics do not depend on the resolution")
{
    for (auto name : {"cube", "torus", "gamma", "handlebody:2"}) {
        auto v = fixture_by_name(name);
        auto a = voxel_chars(v, Resolution::Cells), b = voxel_chars(v, Resolution::Coarse);
        auto r = voxel_chars(refine(v), Resolution::Cells);
        CHECK(a.chi_alpha == b.chi_alpha);
        CHECK(a.chi_alpha == r.chi_alpha);
        CHECK(a.chi_boundary == r.chi_boundary);
    }
}

TEST_CASE("refinement keeps both characteristics on random voxel sets")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        int d = 2 + t % 2;
        auto v = random_voxel(d, 2 + static_cast<int>(rng() % 14), rng, 4);
        auto a = voxel_chars(v, Resolution::Cells);
        auto r = voxel_chars(refine(v), Resolution::Cells);
        CHECK(a.chi_alpha == r.chi_alpha);
        CHECK(a.chi_boundary == r.chi_boundary);
    }
}

TEST_CASE("flats recover the angle characteristic")
{
    for (auto name : {"cube", "torus", "gamma", "handlebody:3"}) {
        auto v = fixture_by_name(name);
        CHECK(flats_angle_char(flats(v)) == voxel_chars(v, Resolution::Cells).chi_alpha);
    }
}

TEST_CASE("gluing two cubes along a facet")
{
    auto g = glue(cells(3, {{0, 0, 0}}), cells(3, {{1, 0, 0}}));
    CHECK(g.spec.kind == GluingKind::Balls);
    CHECK(g.spec.m == 1);
    CHECK(g.agree);
    CHECK(g.valuations_pass());
    CHECK(g.cc.chi_alpha.q() == 1);
}

TEST_CASE("gluing two cubes along an edge")
{
    auto g = glue(cells(3, {{0, 0, 0}}), cells(3, {{1, 1, 0}}));
    CHECK(g.spec.kind == GluingKind::LowerDim);
    CHECK(g.spec.l == 1);
    CHECK(g.agree);
    CHECK(g.cc.chi_alpha.q() == 2);
    CHECK(g.cc.chi_boundary == 3);
}

TEST_CASE("closing a ring gives a torus")
{
    auto g = glue(cells(3, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {2, 1, 0}}), cells(3, {{0, 2, 0}, {1, 2, 0}, {2, 2, 0}}));
    CHECK(g.spec.kind == GluingKind::Balls);
    CHECK(g.spec.m == 2);
    CHECK(g.agree);
    CHECK(g.cc.chi_alpha.q() == 0);
    CHECK(g.cc.chi_boundary == 0);
}

TEST_CASE("covering a ring by a slab glues along an annulus")
{
    std::vector<Lattice> top;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) top.push_back({x, y, 1});
    auto g = glue(handlebody(1), cells(3, top));
    CHECK(g.spec.kind == GluingKind::Annuli);
    CHECK(g.agree);
    CHECK(g.cc.chi_alpha.q() == 1);
    CHECK(g.cc.chi_boundary == 2);
}

TEST_CASE("filling a cavity glues along a closed surface")
{
    auto g = glue(gamma_complex(), cells(3, {{1, 1, 1}}));
    CHECK(g.spec.kind == GluingKind::Closed);
    CHECK(g.agree);
    CHECK(g.cc.chi_alpha.q() == 1);
    CHECK(g.cc.chi_boundary == 2);
    // the closed component shifts each characteristic by its Euler characteristic
    CHECK((g.a.chi_alpha + g.b.chi_alpha - g.cc.chi_alpha).q() == g.spec.closed_chi);
    CHECK(g.a.chi_boundary + g.b.chi_boundary - g.cc.chi_boundary == 2 * g.spec.closed_chi);
}

TEST_CASE("overlapping interiors are rejected")
{
    CHECK_THROWS_AS(glue(voxel_cube(3), voxel_cube(3)), GluingError);
    CHECK_THROWS_AS(glue(voxel_cube(3), voxel_cube(2)), GluingError);
}

TEST_CASE("random gluing audit")
{
    auto A = random_gluing_audit(80, 5);
    CHECK(A.total == 80);
    CHECK(A.classifiable > 0);
    CHECK(A.agree == A.classifiable);
    CHECK(A.valuation_pass == A.classifiable);
    CHECK(A.half_ratio_pass == A.half_ratio_checked);
    CHECK(A.pass());
}

TEST_CASE("half ratio on odd-dimensional fixtures")
{
    for (auto name : {"cube", "torus", "gamma", "handlebody:2", "handlebody:3"})
        CHECK(half_ratio_holds(voxel_chars(fixture_by_name(name), Resolution::Cells)));
}

TEST_CASE("half ratio holds whenever the boundary is a manifold")
{
    std::mt19937_64 rng(23);
    int manifold = 0;
    for (int t = 0; t < 60; ++t) {
        auto v = random_voxel(3, 2 + static_cast<int>(rng() % 30), rng);
        if (!coarse_ok(v)) continue;
        ++manifold;
        CHECK(half_ratio_holds(voxel_chars(v, Resolution::Cells)));
    }
    CHECK(manifold > 10);
}

TEST_CASE("half ratio experiment reports every sample")
{
    auto s = half_ratio_experiment(3, 20, 1);
    CHECK(s.size() == 20);
    for (auto& x : s) CHECK(x.holds == half_ratio_holds(x.chars));
}

TEST_CASE("knotted tunnel filled cell by cell stays a ball")
{
    std::vector<Lattice> tunnel;
    auto v = furch_fixture(&tunnel);
    auto c0 = voxel_chars(v, Resolution::Cells);
    CHECK(c0.chi_alpha.q() == 1);
    CHECK(c0.chi_boundary == 2);
    std::vector<Lattice> all(v.cells.begin(), v.cells.end());
    for (int i = static_cast<int>(tunnel.size()) - 2; i >= 0; i -= 3) {
        for (int j = i; j > i - 3 && j >= 0; --j) all.push_back(tunnel[j]);
        auto c = voxel_chars(make_voxel(3, all, "filled"), Resolution::Cells);
        CHECK(c.chi_alpha.q() == 1);
        CHECK(c.chi_boundary == 2);
    }
}

TEST_CASE("voxel input validation")
{
    CHECK_THROWS_AS(make_voxel(3, {{0, 0, 0}, {2, 0, 0}}), GeometryError);
    CHECK_THROWS_AS(make_voxel(3, {{0, 0}}), ParseError);
    CHECK_THROWS_AS(make_voxel(7, {{0, 0, 0, 0, 0, 0, 0}}), GuardError);
    CHECK_THROWS_AS(fixture_by_name("nowhere"), ParseError);
}
