#include "anglesum/curved.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace anglesum;

namespace {

const double kPi = std::numbers::pi;

// regular hyperbolic n-gon with Klein circumradius r: cosh R = cot(pi/n) cot(theta/2)
double regular_ngon_angle(int n, double r)
{
    double coshR = 1 / std::sqrt(1 - r * r);
    return 2 * std::atan(1 / (std::tan(kPi / n) * coshR));
}

std::vector<double> unit(std::vector<double> v)
{
    double n = 0;
    for (double x : v) n += x * x;
    for (double& x : v) x /= std::sqrt(n);
    return v;
}

SamplingConfig mc(long long n, std::uint64_t seed)
{
    SamplingConfig c;
    c.samples = n;
    c.seed = seed;
    c.force_monte_carlo = true;
    return c;
}

} // namespace

TEST_CASE("octant triangle")
{
    auto c = curved_alpha(octant_triangle());
    REQUIRE(c.a.exact());
    CHECK(c.a[-1].q() == Rational(1, 8));
    CHECK(c.a[0].q() == Rational(3, 4));
    CHECK(c.a[1].q() == Rational(3, 2));
    CHECK(c.a[2].q() == 1);
    auto g = check_generalized_gram(c);
    CHECK(g.pass);
    CHECK(g.residual.is_zero());
}

TEST_CASE("orthant tetrahedron")
{
    auto c = curved_alpha(orthant_simplex(3));
    CHECK(c.a[-1].q() == Rational(1, 16));
    CHECK(c.a[0].q() == Rational(1, 2));
    CHECK(c.a[1].q() == Rational(3, 2));
    CHECK(c.a[2].q() == 2);
    CHECK(check_generalized_gram(c).pass);
}

TEST_CASE("orthant volume by quadrature and by sampling")
{
    std::vector<std::vector<double>> v{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    auto p = make_curved(Geometry::Spherical, 3, v);
    auto q = curved_alpha(p);
    CHECK(q.volume_method == "quadrature");
    CHECK(q.a[-1].d() == Catch::Approx(1.0 / 16).margin(1e-8));
    auto m = curved_alpha(p, mc(200000, 3));
    CHECK(m.a.stderr_at(-1) > 0);
    CHECK(std::fabs(m.a[-1].d() - 1.0 / 16) <= 4 * m.a.stderr_at(-1));
}

TEST_CASE("orthant identity")
{
    for (int d = 1; d <= 12; ++d) CHECK(orthant_identity(d).pass);
}

TEST_CASE("ideal triangle")
{
    auto c = curved_alpha(ideal_triangle());
    CHECK(c.ideal);
    CHECK(c.a[0].d() == 0);
    CHECK(c.a[-1].d() == Catch::Approx(0.25).margin(1e-12));
    CHECK(c.eps_half_power().q() == -1);
    auto g = check_generalized_gram(c);
    CHECK(g.lhs.d() == Catch::Approx(-0.5).margin(1e-12));
    CHECK(g.pass);
}

TEST_CASE("regular hyperbolic polygons against the closed form")
{
    for (int n : {3, 5, 8})
        for (double r : {0.2, 0.5, 0.9}) {
            auto c = curved_alpha(klein_regular_polygon(n, r));
            double th = regular_ngon_angle(n, r);
            CHECK(c.a[0].d() == Catch::Approx(n * th / (2 * kPi)).epsilon(1e-9));
            CHECK(c.a[-1].d() == Catch::Approx(((n - 2) * kPi - n * th) / (4 * kPi)).margin(1e-9));
            CHECK(check_generalized_gram(c).pass);
        }
}

TEST_CASE("dilating a Klein polygon shrinks its angles")
{
    double prev = 1e9;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        double a0 = curved_alpha(klein_regular_polygon(6, r)).a[0].d();
        CHECK(a0 < prev);
        prev = a0;
    }
    CHECK(prev > 0);
}

TEST_CASE("small spherical simplices approach the Euclidean values")
{
    std::vector<std::vector<double>> tri{{0, 0}, {1, 0}, {0.3, 0.8}};
    double prev = 1;
    for (double t : {0.5, 0.1, 0.02}) {
        auto c = curved_alpha(small_spherical_simplex(tri, t));
        double gap = std::fabs(c.a[0].d() - 0.5);
        CHECK(gap < prev);
        CHECK(c.a[-1].d() > 0);
        prev = gap;
    }
    CHECK(prev < 1e-3);
    std::vector<std::vector<double>> tet{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto c = curved_alpha(small_spherical_simplex(tet, 0.01));
    CHECK(c.a[-1].d() < 1e-6);
    CHECK(c.a[1].d() == Catch::Approx(0.75 + 3 * std::acos(1 / std::sqrt(3.0)) / (2 * kPi)).margin(1e-3));
}

TEST_CASE("face numbers of curved polytopes satisfy Euler")
{
    CHECK(check_euler(curved_alpha(orthant_simplex(3)).f).pass);
    CHECK(check_euler(curved_alpha(klein_regular_polygon(7, 0.4)).f).pass);
}

TEST_CASE("spherical Perles")
{
    for (int k = -1; k <= 2; ++k) CHECK(spherical_perles_check(orthant_simplex(3), k).pass);
    auto tri = make_curved(Geometry::Spherical, 2, std::vector<std::vector<double>>{unit({1, 0.2, 0.1}), unit({0.1, 1, 0.3}), unit({0.2, 0.1, 1})});
    for (int k = -1; k <= 1; ++k) CHECK(spherical_perles_check(tri, k).pass);
    auto pyr = small_spherical_simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.5, 0.5, 1}}, 0.1);
    CHECK_THROWS_AS(spherical_perles_check(pyr, 0), GuardError);
}

TEST_CASE("Schlafli for spherical triangles matches Girard")
{
    std::vector<std::vector<std::vector<double>>> tris{
        {{1, 0.1, 0.2}, {0.2, 1, 0.1}, {0.1, 0.3, 1}},
        {{1, 0, 0}, {0, 1, 0}, {0.4, 0.4, 1}},
        {{1, 0.5, 0}, {-0.2, 1, 0.3}, {0, 0.2, 1}},
    };
    const double c = schlafli_calibration();
    CHECK(c == Catch::Approx(1).margin(1e-6));
    for (auto& t : tris) {
        auto p = make_curved(Geometry::Spherical, 2, t);
        auto S = schlafli_step(p, 1, {0.2, 0.3, -0.4}, 1e-3);
        double sum = 0;
        for (double x : S.dangle) sum += x;
        // area = angle sum - pi, so d alpha_{-1} = (1/2) sum of d alpha over vertices
        CHECK(S.dv == Catch::Approx(0.5 * sum).epsilon(1e-6));
        auto R = schlafli_fd(p, 1, {0.2, 0.3, -0.4}, 1e-3, c);
        CHECK(R.ratio == Catch::Approx(c).epsilon(1e-4));
        CHECK(R.pass());
    }
}

TEST_CASE("Schlafli on the orthant tetrahedron")
{
    const double c = schlafli_calibration();
    auto R = schlafli_fd(orthant_simplex(3), 0, orthant_edge_direction(), 1e-3, c);
    CHECK(R.pass());
    CHECK(R.target_ratio == Catch::Approx(0.25).epsilon(1e-3));
    CHECK(R.target_predicted == Catch::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("Euclidean polytopes carry no volume term")
{
    auto p = make_curved(Geometry::Euclidean, 2, std::vector<std::vector<double>>{{0, 0}, {1, 0}, {0, 1}});
    auto c = curved_alpha(p);
    CHECK(c.a[-1].is_zero());
    CHECK(c.eps_half_power().is_zero());
    CHECK(check_generalized_gram(c).pass);
}

TEST_CASE("hyperbolic Perles suite")
{
    auto S = hyperbolic_perles_cases();
    CHECK(S.cases.size() > 50);
    for (auto& c : S.cases)
        if (!c.report.evidence_only) CHECK(c.report.pass);
    CHECK(S.pass());
}

TEST_CASE("Perles at k = 0 on a hyperbolic tetrahedron")
{
    auto p = make_curved(Geometry::Hyperbolic, 3,
                         std::vector<std::vector<double>>{{0.1, 0.2, 0.1}, {0.6, 0.1, 0}, {0, 0.5, 0.2}, {0.1, 0.1, 0.7}});
    auto c = curved_alpha(p);
    CHECK(pe_operator(c.a, 0).d() == Catch::Approx(4 - c.a[0].d()).epsilon(1e-12));
    CHECK(check_perles({c.a, c.f}, 0).pass);
}

TEST_CASE("curved input validation")
{
    CHECK_THROWS_AS(make_curved(Geometry::Hyperbolic, 2, std::vector<std::vector<double>>{{0, 0}, {1.2, 0}, {0, 0.5}}), GeometryError);
    CHECK_THROWS_AS(make_curved(Geometry::Spherical, 2, std::vector<std::vector<double>>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), GeometryError);
    CHECK_THROWS_AS(parse_geometry("flat"), ParseError);
}

TEST_CASE("spherical triangles glued along an edge")
{
    auto e1 = std::vector<double>{1, 0, 0}, e2 = std::vector<double>{0, 1, 0}, e3 = std::vector<double>{0, 0, 1};
    auto m = unit({1, 1, 0});
    CurvedComplex A{Geometry::Spherical, {make_curved(Geometry::Spherical, 2, std::vector<std::vector<double>>{e1, m, e3})}};
    CurvedComplex B{Geometry::Spherical, {make_curved(Geometry::Spherical, 2, std::vector<std::vector<double>>{m, e2, e3})}};
    auto R = curved_glue_check(A, B, GluingKind::Balls);
    CHECK(R.spec.m == 1);
    CHECK(R.report.pass);
    CHECK(R.c.a[-1].d() == Catch::Approx(1.0 / 8).margin(1e-12));
    CHECK_THROWS_AS(curved_glue_check(A, B, GluingKind::Closed), GluingError);
}

TEST_CASE("spherical triangles meeting at a vertex")
{
    CurvedComplex A{Geometry::Spherical, {octant_triangle()}};
    CurvedComplex B{Geometry::Spherical,
                    {make_curved(Geometry::Spherical, 2, std::vector<std::vector<double>>{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}})}};
    auto R = curved_glue_check(A, B, GluingKind::LowerDim);
    CHECK(R.spec.l == 0);
    CHECK(R.report.pass);
}

TEST_CASE("hyperbolic fan closed by its last triangle")
{
    const int n = 6;
    std::vector<CurvedPolytope> fan;
    for (int i = 0; i < n; ++i) {
        double a = 2 * kPi * i / n, b = 2 * kPi * (i + 1) / n;
        fan.push_back(make_curved(Geometry::Hyperbolic, 2,
                                  std::vector<std::vector<double>>{{0, 0}, {0.6 * std::cos(a), 0.6 * std::sin(a)},
                                                                   {0.6 * std::cos(b), 0.6 * std::sin(b)}}));
    }
    CurvedComplex A{Geometry::Hyperbolic, {fan.begin(), fan.end() - 1}};
    CurvedComplex B{Geometry::Hyperbolic, {fan.back()}};
    auto R = curved_glue_check(A, B, GluingKind::Balls);
    CHECK(R.report.pass);
    auto whole = curved_alpha(klein_regular_polygon(n, 0.6));
    CHECK(R.c.a[-1].d() == Catch::Approx(whole.a[-1].d()).epsilon(1e-9));
    CHECK(R.c.interior_deviation <= 1e-9);
}
