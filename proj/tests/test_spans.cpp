#include "anglesum/spans.hpp"

#include <catch_amalgamated.hpp>

using namespace anglesum;

namespace {

// affine dimension by plain Gaussian elimination over the rationals
int affine_dim_oracle(const std::vector<std::vector<Scalar>>& vs)
{
    std::vector<std::vector<Rational>> m;
    for (size_t i = 1; i < vs.size(); ++i) {
        std::vector<Rational> r;
        for (size_t j = 0; j < vs[i].size(); ++j) r.push_back(vs[i][j].q() - vs[0][j].q());
        m.push_back(r);
    }
    int rank = 0;
    const size_t cols = vs[0].size();
    for (size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (size_t r = 0; r < m.size(); ++r) {
            if (static_cast<int>(r) == rank || m[r][c] == 0) continue;
            Rational t = m[r][c] / m[rank][c];
            for (size_t k = c; k < cols; ++k) m[r][k] -= t * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

int oracle_for(FamilyKind k, int d)
{
    auto fam = k == FamilyKind::Simplices ? simplex_family(d) : general_family(d);
    std::vector<std::vector<Scalar>> vs;
    for (auto& m : fam) vs.push_back(flatten(m.af, family_uses_f(k)));
    return affine_dim_oracle(vs);
}

} // namespace

TEST_CASE("simplex family reaches the expected dimension")
{
    for (int d = 1; d <= 10; ++d) {
        auto r = span_report(FamilyKind::Simplices, d);
        CHECK(r.rank.exact);
        CHECK(r.rank.affine_dim == (d - 1) / 2);
        CHECK(oracle_for(FamilyKind::Simplices, d) == (d - 1) / 2);
        CHECK(r.pass());
    }
}

TEST_CASE("general family reaches the expected dimension")
{
    for (int d = 2; d <= 8; ++d) {
        auto r = span_report(FamilyKind::General, d);
        CHECK(r.rank.affine_dim == 2 * d - 3);
        CHECK(oracle_for(FamilyKind::General, d) == 2 * d - 3);
    }
}

TEST_CASE("simplicial family mixes exact and sampled members")
{
    SamplingConfig cfg;
    cfg.samples = 100000;
    auto r3 = span_report(FamilyKind::Simplicial, 3, cfg);
    CHECK(r3.rank.affine_dim == 2);
    CHECK(r3.pass());
    auto r4 = span_report(FamilyKind::Simplicial, 4, cfg);
    CHECK(r4.rank.affine_dim == 3);
    CHECK_FALSE(r4.rank.exact);
    CHECK(r4.rank.singular.at(2) > 1e-3);
}

TEST_CASE("family expressions have the right dimension")
{
    for (int d = 2; d <= 7; ++d) {
        for (auto& e : general_family_exprs(d)) CHECK(parse_expr(e)->dim() == d);
        for (auto& e : simplex_family_exprs(d)) CHECK(parse_expr(e)->dim() == d);
    }
    CHECK(simplex_family_exprs(5).size() == 3);
    CHECK(general_family_exprs(4).size() == 6);
}

TEST_CASE("backing off limits keeps the rank")
{
    for (int d = 3; d <= 4; ++d) {
        auto s = backing_off(FamilyKind::Simplices, d, 1e-3);
        CHECK(s.converged);
        CHECK(s.pass());
        CHECK(s.max_deviation <= 1e-3);
    }
    auto g = backing_off(FamilyKind::General, 3, 1e-3);
    CHECK(g.pass());
    CHECK(g.exact_rank == 3);
    CHECK_THROWS_AS(backing_off(FamilyKind::Simplicial, 3, 1e-3), GuardError);
}

TEST_CASE("pyramid preimage changes alternating sum by one under prisms")
{
    for (auto e : {"tri", "sq", "Pinf tri", "B* tri", "P0^2 seg"}) {
        auto r = preimage_check(*eval_expr(e).af);
        CHECK(r.pass());
    }
}

TEST_CASE("span arguments are guarded")
{
    CHECK_THROWS_AS(simplicial_family(6), GuardError);
    CHECK_THROWS_AS(general_family(1), GuardError);
    CHECK_THROWS_AS(parse_family("cubes"), ParseError);
}
