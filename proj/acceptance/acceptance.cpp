#include "anglesum.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>

using namespace anglesum;

namespace {

struct Criterion {
    int id;
    std::string what;
    double budget;  // seconds
    std::function<std::string(bool&)> run;
};

const double kPi = std::numbers::pi;
const double kTetA1 = 3 / kPi * std::acos(1.0 / 3);

std::string fmt(const char* f, double a, double b = 0, double c = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

SamplingConfig mc(long long n, std::uint64_t seed)
{
    SamplingConfig c;
    c.samples = n;
    c.seed = seed;
    c.force_monte_carlo = true;
    return c;
}

VPolytope sphere_hull(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) {
        double x = g(rng), y = g(rng), z = g(rng), l = std::sqrt(x * x + y * y + z * z);
        pts.push_back({x / l, y / l, z / l});
    }
    return hull(make_polytope(pts));
}

bool same_q(const AlphaFVector& af, const std::vector<Rational>& a, const std::vector<long long>& f)
{
    for (int i = 0; i <= af.d(); ++i)
        if (!af.a[i].exact() || af.a[i].q() != a[i] || af.f[i] != f[i]) return false;
    return true;
}

std::string c1(bool& ok)
{
    auto a = angle_sums(unit_cube(3));
    auto g = check_gram(a);
    ok = a.exact() && a[0].q() == 1 && a[1].q() == 3 && a[2].q() == 3 && a[3].q() == 1 && g.residual.exact() &&
         g.residual.is_zero();
    return "alpha " + alpha_f_str(a, FVector::from(3, {8, 12, 6, 1})) + ", Gram residual " + g.residual.str();
}

std::string c2(bool& ok)
{
    auto a = angle_sums(regular_tetrahedron(), mc(100000, 2));
    double z0 = (a[0].d() - (kTetA1 - 1)) / a.stderr_at(0), z1 = (a[1].d() - kTetA1) / a.stderr_at(1);
    ok = std::fabs(z0) <= 4 && std::fabs(z1) <= 4;
    return fmt("alpha_0 %.6f (z %.2f), ", a[0].d(), z0) + fmt("alpha_1 %.6f (z %.2f)", a[1].d(), z1);
}

std::string c3(bool& ok)
{
    bool p0 = same_q(*eval_expr("P0 tri").af, {Rational(1, 2), Rational(3, 2), 2, 1}, {4, 6, 4, 1});
    bool pi = same_q(*eval_expr("Pinf tri").af, {Rational(1, 4), Rational(5, 4), 2, 1}, {4, 6, 4, 1});
    auto t = alpha_f(t13_two_tetrahedra());
    double dev = std::max(std::fabs(t.a[0].d() - (2 * kTetA1 - 2)), std::fabs(t.a[1].d() - 2 * kTetA1));
    bool t13 = dev <= 1e-9 && t.a[2].q() == 3 && t.f == FVector::from(3, {5, 9, 6, 1});
    ok = p0 && pi && t13;
    return std::string("P0 tri ") + (p0 ? "ok" : "wrong") + ", Pinf tri " + (pi ? "ok" : "wrong") +
           fmt(", T_1^3 deviation %.2e", dev);
}

std::string c4(bool& ok)
{
    ok = true;
    std::string bad;
    for (int d = 1; d <= 10; ++d) {
        auto s = span_report(FamilyKind::Simplices, d);
        if (!s.rank.exact || s.rank.affine_dim != (d - 1) / 2) ok = false, bad += " simplices:" + std::to_string(d);
        if (d >= 2) {
            auto g = span_report(FamilyKind::General, d);
            if (!g.rank.exact || g.rank.affine_dim != 2 * d - 3) ok = false, bad += " general:" + std::to_string(d);
        }
    }
    return "d = 1..10, exact ranks" + (bad.empty() ? std::string(" as expected") : " wrong at" + bad);
}

std::string c5(bool& ok)
{
    SamplingConfig cfg;
    cfg.samples = 100000;
    auto r3 = span_report(FamilyKind::Simplicial, 3, cfg, 1e-4);
    auto r4 = span_report(FamilyKind::Simplicial, 4, cfg, 1e-4);
    ok = r3.rank.affine_dim == 2 && r4.rank.affine_dim == 3;
    return "rank d=3: " + std::to_string(r3.rank.affine_dim) + ", d=4: " + std::to_string(r4.rank.affine_dim);
}

std::string c6(bool& ok)
{
    std::mt19937_64 rng(6);
    int pass = 0;
    for (int t = 0; t < 100; ++t) {
        auto p = sphere_hull(6 + static_cast<int>(rng() % 7), rng);
        pass += check_gram(angle_sums(p, mc(20000, 1000 + t))).pass;
    }
    ok = pass >= 99;
    return std::to_string(pass) + "/100 within 4 sigma";
}

std::string c7(bool& ok)
{
    std::mt19937_64 rng(7);
    int pass = 0, total = 0, inst = 0;
    while (inst < 25) {
        auto p = sphere_hull(5 + static_cast<int>(rng() % 8), rng);
        auto L = face_lattice(p);
        if (!is_simplicial(L)) continue;
        ++inst;
        AlphaFVector af{angle_sums(p, L, mc(20000, 2000 + inst)), L.f()};
        for (int k = -1; k <= 2; ++k) {
            ++total;
            pass += check_perles(af, k).pass;
        }
    }
    ok = pass == total;
    return std::to_string(pass) + "/" + std::to_string(total) + " Perles rows on 25 instances";
}

std::string c8(bool& ok)
{
    auto t = voxel_chars(torus_ring());
    auto g = voxel_chars(gamma_complex());
    auto fu = voxel_chars(furch_fixture(), Resolution::Cells);
    bool torus = t.chi_alpha.q() == 0 && t.a[0].q() == 4 && t.a[1].q() == 12 && t.a[2].q() == 8;
    bool gamma = g.chi_alpha.q() == 2 && g.a[0].q() == 8 && g.a[1].q() == 12 && g.a[2].q() == 6 && g.chi_boundary == 4;
    bool furch = fu.chi_alpha.q() == 1 && fu.chi_boundary == 2;
    bool hb = true;
    for (int k = 0; k <= 3; ++k) hb = hb && voxel_chars(handlebody(k)).chi_alpha.q() == 1 - k;
    bool refine_ok = true;
    for (auto& n : voxel_fixture_names()) {
        if (n == "furch") continue;
        auto v = fixture_by_name(n);
        refine_ok = refine_ok && voxel_chars(refine(v), Resolution::Cells).chi_alpha == voxel_chars(v, Resolution::Cells).chi_alpha;
    }
    ok = torus && gamma && furch && hb && refine_ok;
    return std::string("torus ") + (torus ? "ok" : "wrong") + ", gamma " + (gamma ? "ok" : "wrong") + ", furch " +
           (furch ? "ok" : "wrong") + ", handlebodies " + (hb ? "ok" : "wrong") + ", refinement " + (refine_ok ? "ok" : "wrong");
}

std::string c9(bool& ok)
{
    auto A = random_gluing_audit(200, 9);
    ok = A.pass() && A.total == 200;
    return std::to_string(A.agree) + "/" + std::to_string(A.classifiable) + " classifiable agree, half ratio " +
           std::to_string(A.half_ratio_pass) + "/" + std::to_string(A.half_ratio_checked);
}

std::string c10(bool& ok)
{
    auto ds = ds_operator(face_lattice(regular_tetrahedron()).f(), 1);
    auto dp = cell_complex_chars(delta_prime());
    auto dsp = ds_operator(dp.f, 1);
    auto pe = pe_operator(angle_sums(regular_tetrahedron()), 1);
    double dev = std::fabs(pe.d() - (6 - kTetA1));
    bool lemma = true;
    for (auto K : {triangle_disk(), fan_disk(), triangle_annulus()})
        for (int k = 0; k <= 2; ++k) lemma = lemma && ds_ball_lemma_check(K, k).pass();
    ok = ds.q() == 6 && dsp.q() == 9 && dev <= 1e-9 && lemma;
    return "DS_1 " + ds.str() + ", DS_1' " + dsp.str() + fmt(", Pe_1 deviation %.2e", dev) + ", lemma " + (lemma ? "ok" : "wrong");
}

std::string c11(bool& ok)
{
    auto o = curved_alpha(octant_triangle());
    bool oct = o.a[-1].q() == Rational(1, 8) && o.a[0].q() == Rational(3, 4) && o.a[1].q() == Rational(3, 2) &&
               check_generalized_gram(o).residual.is_zero();
    bool ident = true;
    for (int d = 1; d <= 10; ++d) ident = ident && orthant_identity(d).pass;
    auto S = hyperbolic_perles_cases();
    auto ig = check_generalized_gram(curved_alpha(ideal_triangle()));
    bool ideal = std::fabs(ig.residual.d()) <= 1e-12;
    ok = oct && ident && S.pass() && ideal;
    return std::string("octant ") + (oct ? "ok" : "wrong") + ", orthant identity " + (ident ? "ok" : "wrong") +
           ", hyperbolic suite " + std::to_string(S.cases.size()) + " cases " + (S.pass() ? "pass" : "fail") + " (" +
           std::to_string(S.evidence()) + " evidence only), ideal triangle residual " + ig.residual.str();
}

std::string c12(bool& ok)
{
    double c = schlafli_calibration(1e-3);
    auto R = schlafli_fd(orthant_simplex(3), 0, orthant_edge_direction(), 1e-3, c);
    ok = R.pass();
    return fmt("c = %.6f, face ratio %.6f vs predicted %.6f", c, R.target_ratio, R.target_predicted);
}

std::string c13(bool& ok)
{
    ok = true;
    double worst = 0;
    for (auto p : {unit_cube(3), regular_tetrahedron()}) {
        auto direct = angle_sums(p);
        auto r = projection_expectation(p, 10000, 13);
        for (int i = 0; i <= 1; ++i) {
            double z = std::fabs(r.alpha_hat[i] - direct[i].d()) / r.stderr_[i];
            worst = std::max(worst, z);
            ok = ok && std::fabs(r.alpha_hat[i] - direct[i].d()) <= 4 * r.stderr_[i];
        }
    }
    return fmt("largest |z| %.2f over cube and tetrahedron", worst);
}

} // namespace

int main()
{
    std::vector<Criterion> cs{
        {1, "cube alpha vector and Gram, exact", 1, c1},
        {2, "regular tetrahedron by Monte Carlo", 10, c2},
        {3, "construction calculus", 5, c3},
        {4, "span ranks, exact", 30, c4},
        {5, "simplicial span ranks, numeric", 300, c5},
        {6, "Gram on random 3-polytopes", 300, c6},
        {7, "Perles on random simplicial 3-polytopes", 300, c7},
        {8, "voxel complexes", 30, c8},
        {9, "gluing audit", 120, c9},
        {10, "Dehn-Sommerville and Perles operators", 30, c10},
        {11, "curved polytopes, exact", 10, c11},
        {12, "Schlafli finite differences", 120, c12},
        {13, "projection identity", 120, c13},
    };
    int failed = 0;
    for (auto& c : cs) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            detail = c.run(ok);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("error: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = s <= c.budget;
        if (!ok || !in_time) ++failed;
        std::printf("%s %2d %-42s %7.2fs/%gs  %s\n", ok && in_time ? "PASS" : "FAIL", c.id, c.what.c_str(), s, c.budget,
                    detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(cs.size()) - failed, cs.size());
    return failed ? 1 : 0;
}
