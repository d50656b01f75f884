#include "anglesum/constructions.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace anglesum;

namespace {

long long choose(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

VPolytope sphere_points(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) {
        double x = g(rng), y = g(rng), z = g(rng), l = std::sqrt(x * x + y * y + z * z);
        pts.push_back({x / l, y / l, z / l});
    }
    return make_polytope(pts, "random");
}

} // namespace

TEST_CASE("cube face numbers in every dimension")
{
    for (int d = 1; d <= 5; ++d) {
        auto f = face_lattice(unit_cube(d)).f();
        for (int i = 0; i <= d; ++i) CHECK(f[i] == (1LL << (d - i)) * choose(d, i));
    }
}

TEST_CASE("simplex face numbers")
{
    for (int d = 1; d <= 6; ++d) {
        auto L = face_lattice(standard_simplex(d));
        for (int i = -1; i <= d; ++i) CHECK(L.f()[i] == choose(d + 1, i + 1));
        CHECK(is_simplicial(L));
    }
}

TEST_CASE("cross-polytope face numbers")
{
    for (int d = 2; d <= 4; ++d) {
        auto L = face_lattice(cross_polytope(d));
        for (int i = 0; i <= d - 1; ++i) CHECK(L.f()[i] == (1LL << (i + 1)) * choose(d, i + 1));
        CHECK(is_simplicial(L));
    }
    CHECK_FALSE(is_simplicial(face_lattice(unit_cube(3))));
}

TEST_CASE("triangular prism and bipyramid")
{
    auto prism = face_lattice(prism_geometric(base_triangle())).f();
    CHECK(prism == FVector::from(3, {6, 9, 5, 1}));
    auto bip = face_lattice(bipyramid_geometric(base_triangle(), Scalar(1))).f();
    CHECK(bip == FVector::from(3, {5, 9, 6, 1}));
}

TEST_CASE("Euler relation on random polytopes")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        auto p = hull(sphere_points(6 + t % 7, rng));
        auto f = face_lattice(p).f();
        CHECK(f[0] - f[1] + f[2] == 2);
    }
}

TEST_CASE("face incidences are consistent")
{
    auto L = face_lattice(unit_cube(3));
    for (size_t e = 0; e < L.of_dim(1).size(); ++e) {
        CHECK(L.of_dim(1)[e].facets.size() == 2);
        CHECK(L.up[2][e].size() == 2);
    }
    for (auto& v : L.of_dim(0)) CHECK(v.facets.size() == 3);
}

TEST_CASE("invalid vertex sets are rejected")
{
    auto inner = make_polytope({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}});
    CHECK_THROWS_AS(face_lattice(inner), GeometryError);
    auto flat = make_polytope({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
    CHECK_THROWS_AS(face_lattice(flat), GeometryError);
    CHECK(hull(inner).vertices.size() == 3);
}
