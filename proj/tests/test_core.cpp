#include "anglesum/vectors.hpp"

#include <catch_amalgamated.hpp>

using namespace anglesum;

TEST_CASE("scalar arithmetic stays exact until a float enters")
{
    Scalar a = Scalar::frac(1, 3) + Scalar::frac(1, 6);
    REQUIRE(a.exact());
    CHECK(a.q() == Rational(1, 2));
    Scalar b = a * Scalar(2.0);
    CHECK_FALSE(b.exact());
    CHECK(b.d() == 1.0);
    CHECK((Scalar(3) / Scalar(4)).str() == "3/4");
    CHECK(Scalar(0).is_zero());
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("1e-2") == Rational(1, 100));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("010/3") == Rational(10, 3));
    CHECK(parse_rational("-3/06") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("0x10"), ParseError);
    CHECK_THROWS_AS(parse_rational("--1"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e99999"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("binomials")
{
    CHECK(binom(5, 2).q() == 10);
    CHECK(binom(10, 0).q() == 1);
    CHECK(binom(3, 5).q() == 0);
    CHECK(binom_big(40, 20) == BigInt("137846528820"));
}

TEST_CASE("h-vector of the simplex and the octahedron")
{
    auto simplex = FVector::from(3, {4, 6, 4, 1});
    auto h = h_from_f(simplex);
    for (int i = 0; i <= 3; ++i) CHECK(h[i].q() == 1);
    auto oct = FVector::from(3, {6, 12, 8, 1});
    auto ho = h_from_f(oct);
    CHECK(ho[0].q() == 1);
    CHECK(ho[1].q() == 3);
    CHECK(ho[2].q() == 3);
    CHECK(ho[3].q() == 1);
    CHECK(f_from_h(ho) == oct);
}

TEST_CASE("h and gamma transforms invert")
{
    auto f = FVector::from(4, {7, 19, 24, 12, 1});
    CHECK(f_from_h(h_from_f(f)) == f);
    auto a = AlphaVector::from(3, {Scalar::frac(1, 4), Scalar::frac(5, 4), Scalar(2), Scalar(1)});
    auto back = alpha_from_gamma(gamma_from_alpha(a));
    for (int i = -1; i <= 3; ++i) CHECK(back[i].q() == a[i].q());
}

TEST_CASE("gamma of a simplex-like vector sums to h")
{
    // P_inf over a triangle: gamma_i + gamma_{d-i} = h_i = 1
    auto a = AlphaVector::from(3, {Scalar::frac(1, 4), Scalar::frac(5, 4), Scalar(2), Scalar(1)});
    auto g = gamma_from_alpha(a);
    for (int i = 0; i <= 3; ++i) CHECK((g[i] + g[3 - i]).q() == 1);
}

TEST_CASE("euler and angle characteristics of the cube")
{
    auto f = FVector::from(3, {8, 12, 6, 1});
    CHECK(euler_char(f, 2).q() == 2);
    auto a = AlphaVector::from(3, {Scalar(1), Scalar(3), Scalar(3), Scalar(1)});
    CHECK(angle_char(a).q() == 1);
    CHECK(angle_char_stderr(a) == 0.0);
}

TEST_CASE("vector indexing conventions")
{
    FVector f(3);
    CHECK(f[-1] == 1);
    CHECK(f[3] == 1);
    CHECK(f[7] == 0);
    CHECK_THROWS_AS(f.at(5), std::out_of_range);
    AlphaVector a(2);
    CHECK(a[2].q() == 1);
    CHECK(a[-1].q() == 0);
    CHECK_THROWS_AS(FVector::from(3, {1, 2}), std::invalid_argument);
}
