#include "anglesum/angles.hpp"
#include "anglesum/constructions.hpp"
#include "anglesum/relations.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

using namespace anglesum;

namespace {

const double kPi = std::numbers::pi;

VPolytope random_sphere_polytope(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) {
        double x = g(rng), y = g(rng), z = g(rng), l = std::sqrt(x * x + y * y + z * z);
        pts.push_back({x / l, y / l, z / l});
    }
    return hull(make_polytope(pts));
}

SamplingConfig mc(long long n, std::uint64_t seed = 5)
{
    SamplingConfig c;
    c.samples = n;
    c.seed = seed;
    c.force_monte_carlo = true;
    return c;
}

} // namespace

TEST_CASE("cube angle sums are exact")
{
    auto a = angle_sums(unit_cube(3));
    REQUIRE(a.exact());
    CHECK(a[0].q() == 1);
    CHECK(a[1].q() == 3);
    CHECK(a[2].q() == 3);
    CHECK(a[3].q() == 1);
    auto g = check_gram(a);
    CHECK(g.pass);
    CHECK(g.residual.is_zero());
}

TEST_CASE("square and triangle")
{
    auto s = angle_sums(base_square());
    CHECK(s[0].q() == 1);
    CHECK(s[1].q() == 2);
    auto t = angle_sums(base_triangle());
    CHECK(t[0].q() == Rational(1, 2));
    CHECK(t[1].q() == Rational(3, 2));
}

TEST_CASE("regular tetrahedron closed form")
{
    const double a1 = 3 / kPi * std::acos(1.0 / 3);
    auto a = angle_sums(regular_tetrahedron());
    CHECK(a[1].d() == Catch::Approx(a1).epsilon(1e-12));
    CHECK(a[0].d() == Catch::Approx(a1 - 1).epsilon(1e-12));
    CHECK(a[2].q() == 2);
}

TEST_CASE("regular tetrahedron by Monte Carlo")
{
    const double a1 = 3 / kPi * std::acos(1.0 / 3);
    auto a = angle_sums(regular_tetrahedron(), mc(100000));
    CHECK(std::fabs(a[0].d() - (a1 - 1)) <= 4 * a.stderr_at(0));
    CHECK(std::fabs(a[1].d() - a1) <= 4 * a.stderr_at(1));
    CHECK(a.stderr_at(0) > 0);
    CHECK(a.how[1] == kMonteCarlo);
}

TEST_CASE("corner simplex dihedral and solid angles")
{
    // three right dihedral angles at the coordinate edges, three equal to arccos(1/sqrt 3)
    const double a1 = 3.0 / 4 + 3 * std::acos(1 / std::sqrt(3.0)) / (2 * kPi);
    auto p = standard_simplex(3);
    auto L = face_lattice(p);
    auto a = angle_sums(p, L);
    CHECK(a[1].d() == Catch::Approx(a1).epsilon(1e-12));
    for (int j = 0; j < static_cast<int>(L.of_dim(0).size()); ++j) {
        auto& v = L.of_dim(0)[j];
        auto e = interior_angle(p, L, {0, j});
        bool origin = true;
        for (auto& x : p.vertices[v.verts[0]]) origin = origin && x.is_zero();
        if (origin) CHECK(e.value.q() == Rational(1, 8));
    }
    for (int j = 0; j < 4; ++j) CHECK(interior_angle(p, L, {2, j}).value.q() == Rational(1, 2));
}

TEST_CASE("Monte Carlo agrees with the exact path on a random simplex")
{
    auto p = make_polytope({{0, 0, 0}, {1.3, 0.1, 0}, {0.2, 0.9, 0.1}, {0.3, 0.2, 1.1}});
    auto ex = angle_sums(p);
    auto m = angle_sums(p, mc(200000, 9));
    for (int i = 0; i <= 1; ++i) CHECK(std::fabs(ex[i].d() - m[i].d()) <= 4 * m.stderr_at(i) + 1e-12);
}

TEST_CASE("Gram on random polytopes within aggregated error")
{
    std::mt19937_64 rng(3);
    int pass = 0;
    for (int t = 0; t < 6; ++t) {
        auto p = random_sphere_polytope(6 + t, rng);
        auto r = check_gram(angle_sums(p, mc(20000, 100 + t)));
        pass += r.pass;
    }
    CHECK(pass == 6);
}

TEST_CASE("Monte Carlo estimates are reproducible")
{
    auto a = angle_sums(regular_tetrahedron(), mc(20000, 42));
    auto b = angle_sums(regular_tetrahedron(), mc(20000, 42));
    auto c = angle_sums(regular_tetrahedron(), mc(20000, 43));
    CHECK(a[0].d() == b[0].d());
    CHECK(a[0].d() != c[0].d());
}

TEST_CASE("projection expectation recovers angle sums")
{
    for (auto p : {unit_cube(3), regular_tetrahedron()}) {
        auto direct = angle_sums(p);
        auto r = projection_expectation(p, 3000, 17);
        for (int i = 0; i <= 1; ++i) CHECK(std::fabs(r.alpha_hat[i] - direct[i].d()) <= 4 * r.stderr_[i] + 1e-12);
    }
}
