#include "anglesum/cellcomplex.hpp"
#include "anglesum/relations.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace anglesum;

namespace {

long long choose(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long ds_by_hand(const std::vector<long long>& f0, int d, int k)
{
    long long s = 0;
    for (int j = k; j <= d - 1; ++j) s += (j % 2 ? -1 : 1) * choose(j + 1, k + 1) * f0[j];
    return s;
}

const double kTetA1 = 3 / std::numbers::pi * std::acos(1.0 / 3);

} // namespace

TEST_CASE("Euler relation on polytopes")
{
    CHECK(check_euler(face_lattice(unit_cube(4)).f()).pass);
    CHECK(check_euler(face_lattice(cross_polytope(5)).f()).pass);
    CHECK_FALSE(check_euler(FVector::from(3, {4, 6, 5, 1})).pass);
}

TEST_CASE("Dehn-Sommerville on the tetrahedron")
{
    auto f = face_lattice(standard_simplex(3)).f();
    CHECK(ds_operator(f, 1).q() == 6);
    CHECK(ds_by_hand({4, 6, 4}, 3, 1) == 6);
    for (int k = -1; k <= 2; ++k) CHECK(check_ds(f, k).pass);
}

TEST_CASE("Dehn-Sommerville holds for simplicial polytopes only")
{
    auto oct = face_lattice(cross_polytope(3)).f();
    for (int k = 0; k <= 2; ++k) {
        CHECK(ds_operator(oct, k).q() == ds_by_hand({6, 12, 8}, 3, k));
        CHECK(check_ds(oct, k).pass);
    }
    auto cube = face_lattice(unit_cube(3)).f();
    CHECK_FALSE(check_ds(cube, 0).pass);
    CHECK(check_ds(cube, 2).pass);
}

TEST_CASE("Perles on the regular tetrahedron")
{
    auto af = alpha_f(regular_tetrahedron());
    CHECK(pe_operator(af.a, 1).d() == Catch::Approx(6 - kTetA1).epsilon(1e-12));
    for (int k = -1; k <= 2; ++k) CHECK(check_perles(af, k).pass);
}

TEST_CASE("Perles on simplicial polytopes")
{
    for (auto p : {standard_simplex(3), cross_polytope(3), t13_two_tetrahedra(), regular_tetrahedron()}) {
        auto af = alpha_f(p);
        for (int k = -1; k <= 2; ++k) CHECK(check_perles(af, k).pass);
        auto rows = check_h_perles(gamma_from_alpha(af.a), h_from_f(af.f), h_perles_sigma(af.a));
        for (auto& r : rows) CHECK(r.pass);
    }
    auto sq = alpha_f(cross_polytope(2));
    for (int k = -1; k <= 1; ++k) {
        CHECK(check_perles(sq, k).pass);
        CHECK(check_perles(sq, k).residual.exact());
    }
}

TEST_CASE("Perles fails on the cube except at the facet level")
{
    auto af = alpha_f(unit_cube(3));
    CHECK_FALSE(check_perles(af, 0).pass);
    CHECK(check_perles(af, 2).pass);
}

TEST_CASE("Gram fails on a perturbed vector")
{
    auto a = angle_sums(unit_cube(3));
    a.at(0) = Scalar::frac(9, 8);
    auto r = check_gram(a);
    CHECK_FALSE(r.pass);
    CHECK(r.residual.q() == Rational(1, 8));
}

TEST_CASE("triangulated torus is semi-Eulerian but breaks Dehn-Sommerville")
{
    auto T = torus7();
    CHECK(T.f() == std::vector<long long>{1, 7, 21, 14});
    CHECK(T.euler() == 0);
    CHECK(T.pseudomanifold());
    CHECK(is_semi_eulerian(T));
    auto f = FVector::from(3, {7, 21, 14, 1});
    CHECK_FALSE(check_euler(f).pass);
}

TEST_CASE("ball lemma on disks and an annulus")
{
    for (auto K : {triangle_disk(), fan_disk()}) {
        for (int k = 0; k <= 2; ++k) {
            auto r = ds_ball_lemma_check(K, k);
            CHECK(r.shape == "ball");
            CHECK(r.pass());
        }
    }
    auto A = triangle_annulus();
    auto r = ds_ball_lemma_check(A, 0);
    CHECK(r.shape == "annulus");
    CHECK(A.euler() == 0);
    CHECK_THROWS_AS(ds_ball_lemma_check(torus7(), 0), GeometryError);
}

TEST_CASE("relation index range is checked")
{
    auto f = face_lattice(unit_cube(3)).f();
    CHECK_THROWS_AS(ds_operator(f, 3), std::out_of_range);
    CHECK_THROWS_AS(ds_operator(f, -2), std::out_of_range);
}
