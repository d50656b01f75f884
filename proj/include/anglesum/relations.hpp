#pragma once

#include "vectors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace anglesum {

struct RelationReport {
    std::string relation;  // "euler", "gram", "ds", "perles", "h-perles", "sommerville", "generalized-gram", ...
    int k = 0;
    Scalar lhs, rhs, residual;
    double tolerance = 0;
    bool pass = false;
    bool evidence_only = false;

    std::string name() const
    {
        if (relation == "ds" || relation == "perles" || relation == "h-perles" || relation == "angle-derivative") return relation + "(" + std::to_string(k) + ")";
        return relation;
    }
};

inline RelationReport make_report(std::string rel, int k, const Scalar& lhs, const Scalar& rhs, double sigma, double tol)
{
    RelationReport r;
    r.relation = std::move(rel);
    r.k = k;
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = lhs - rhs;
    if (tol >= 0) r.tolerance = tol;
    else r.tolerance = r.residual.exact() ? 0.0 : std::max(1e-9, 4 * sigma);
    r.pass = r.residual.exact() && r.tolerance == 0 ? r.residual.is_zero() : std::fabs(r.residual.d()) <= r.tolerance;
    return r;
}

inline RelationReport check_euler(const FVector& f)
{
    const int d = f.d;
    return make_report("euler", 0, euler_char(f, d - 1), Scalar(1 + sgn_pow(d - 1)), 0, 0);
}

inline RelationReport check_gram(const AlphaVector& a, double tol = -1)
{
    return make_report("gram", 0, angle_char(a), Scalar(sgn_pow(a.d - 1)), angle_char_stderr(a), tol);
}

inline void check_k(int k, int d)
{
    if (k < -1 || k > d - 1) throw std::out_of_range("k must lie in -1..d-1");
}

inline Scalar ds_operator(const FVector& f, int k)
{
    check_k(k, f.d);
    Scalar s(0);
    for (int j = k; j <= f.d - 1; ++j) s += Scalar(sgn_pow(j)) * binom(j + 1, k + 1) * Scalar(f[j]);
    return s;
}

// face counts of a complex given as a plain count list indexed -1..top, evaluated with ambient dimension d
inline Scalar ds_operator(const std::vector<long long>& f_m1, int d, int k)
{
    check_k(k, d);
    Scalar s(0);
    for (int j = k; j <= d - 1; ++j) {
        long long v = (j + 1 < static_cast<int>(f_m1.size())) ? f_m1[j + 1] : 0;
        s += Scalar(sgn_pow(j)) * binom(j + 1, k + 1) * Scalar(v);
    }
    return s;
}

inline Scalar pe_operator(const AlphaVector& a, int k)
{
    check_k(k, a.d);
    Scalar s(0);
    for (int j = k; j <= a.d - 1; ++j) s += Scalar(sgn_pow(j)) * binom(j + 1, k + 1) * a[j];
    return s;
}

inline double pe_stderr(const AlphaVector& a, int k)
{
    double v = 0;
    for (int j = k; j <= a.d - 1; ++j) {
        double c = to_double(Rational(binom_big(j + 1, k + 1))) * a.stderr_at(j);
        v += c * c;
    }
    return std::sqrt(v);
}

inline RelationReport check_ds(const FVector& f, int k, double tol = -1)
{
    return make_report("ds", k, ds_operator(f, k), Scalar(sgn_pow(f.d - 1) * f[k]), 0, tol);
}

inline RelationReport check_perles(const AlphaFVector& af, int k, double tol = -1)
{
    const int d = af.d();
    Scalar rhs = Scalar(sgn_pow(d)) * (af.a[k] - Scalar(af.f[k]));
    double se = std::sqrt(std::pow(pe_stderr(af.a, k), 2) + std::pow(af.a.stderr_at(k), 2));
    return make_report("perles", k, pe_operator(af.a, k), rhs, se, tol);
}

inline std::vector<RelationReport> check_h_perles(const GammaVector& g, const HVector& h,
                                                  const std::vector<double>& sigma = {}, double tol = -1)
{
    if (g.d != h.d) throw std::invalid_argument("gamma and h dimensions differ");
    std::vector<RelationReport> out;
    for (int i = 0; i <= g.d; ++i)
        out.push_back(make_report("h-perles", i, g[i] + g[g.d - i], h[i], sigma.empty() ? 0.0 : sigma[i], tol));
    return out;
}

// standard error of gamma_i + gamma_{d-i} from independent alpha entry errors
inline std::vector<double> h_perles_sigma(const AlphaVector& a)
{
    const int d = a.d;
    auto coef = [&](int i, int j) -> double {  // coefficient of alpha_{j-1} in gamma_i
        if (j > i) return 0;
        return sgn_pow(i - j) * to_double(Rational(binom_big(d - j, d - i)));
    };
    std::vector<double> out;
    for (int i = 0; i <= d; ++i) {
        double v = 0;
        for (int j = 0; j <= d; ++j) {
            double c = coef(i, j) + coef(d - i, j);
            v += c * c * a.stderr_at(j - 1) * a.stderr_at(j - 1);
        }
        out.push_back(std::sqrt(v));
    }
    return out;
}

// ---- abstract simplicial complexes ----

using Simplex = std::vector<int>;

struct SimplicialComplex {
    std::set<Simplex> faces;  // all nonempty faces

    SimplicialComplex() = default;
    explicit SimplicialComplex(const std::vector<Simplex>& fs)
    {
        for (auto& f : fs) add(f);
    }
    void add(Simplex f)
    {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        const int n = static_cast<int>(f.size());
        for (int m = 1; m < (1 << n); ++m) {
            Simplex s;
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) s.push_back(f[i]);
            faces.insert(s);
        }
    }
    std::vector<Simplex> facets() const
    {
        std::set<Simplex> covered;
        for (auto& t : faces)
            for (size_t i = 0; i < t.size() && t.size() > 1; ++i) {
                Simplex r = t;
                r.erase(r.begin() + static_cast<long>(i));
                covered.insert(r);
            }
        std::vector<Simplex> out;
        for (auto& s : faces)
            if (!covered.count(s)) out.push_back(s);
        return out;
    }
    int dim() const
    {
        int m = -1;
        for (auto& f : faces) m = std::max(m, static_cast<int>(f.size()) - 1);
        return m;
    }
    bool pure() const
    {
        const int d = dim();
        for (auto& f : facets())
            if (static_cast<int>(f.size()) - 1 != d) return false;
        return true;
    }
    // counts f_{-1}..f_dim
    std::vector<long long> f() const
    {
        std::vector<long long> r(dim() + 2, 0);
        r[0] = 1;
        for (auto& s : faces) ++r[s.size()];
        return r;
    }
    long long euler() const
    {
        long long s = 0;
        for (auto& x : faces) s += (x.size() % 2 == 1) ? 1 : -1;
        return s;
    }
    SimplicialComplex link(const Simplex& F) const
    {
        SimplicialComplex L;
        for (auto& G : faces) {
            if (G.size() == F.size() || !std::includes(G.begin(), G.end(), F.begin(), F.end())) continue;
            Simplex rest;
            std::set_difference(G.begin(), G.end(), F.begin(), F.end(), std::back_inserter(rest));
            L.faces.insert(rest);
        }
        return L;
    }
    std::map<Simplex, int> ridge_counts() const
    {
        std::map<Simplex, int> cnt;
        for (auto& f : facets())
            for (size_t i = 0; i < f.size() && f.size() > 1; ++i) {
                Simplex r = f;
                r.erase(r.begin() + static_cast<long>(i));
                ++cnt[r];
            }
        return cnt;
    }
    bool pseudomanifold() const
    {
        for (auto& [r, c] : ridge_counts())
            if (c > 2) return false;
        return true;
    }
    // subcomplex generated by ridges lying in exactly one facet
    SimplicialComplex boundary() const
    {
        SimplicialComplex b;
        for (auto& [r, c] : ridge_counts())
            if (c == 1) b.add(r);
        return b;
    }
    // face counts of K minus its boundary complex, indexed -1..dim
    std::vector<long long> f_interior() const
    {
        auto a = f();
        auto b = boundary().f();
        for (size_t i = 0; i < b.size() && i < a.size(); ++i) a[i] -= b[i];
        return a;
    }
};

inline bool is_semi_eulerian(const SimplicialComplex& c)
{
    if (!c.pure()) throw std::invalid_argument("semi-Eulerian check needs a pure complex");
    const int n = c.dim();
    for (auto& F : c.faces) {
        const int k = static_cast<int>(F.size()) - 1;
        long long chi = c.link(F).euler();
        if (chi != 1 + sgn_pow(n - k - 1)) return false;
    }
    return true;
}

inline SimplicialComplex torus7()
{
    std::vector<Simplex> fs;
    for (int i = 0; i < 7; ++i) {
        fs.push_back({i, (i + 1) % 7, (i + 3) % 7});
        fs.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex(fs);
}

struct BallLemmaReport {
    std::string shape;  // "ball" or "annulus"
    std::vector<RelationReport> rows;
    bool pass() const
    {
        return std::all_of(rows.begin(), rows.end(), [](auto& r) { return r.pass; });
    }
};

// ambient dimension d: K is a (d-1)-complex
inline BallLemmaReport ds_ball_lemma_check(const SimplicialComplex& K, int k)
{
    const int d = K.dim() + 1;
    if (k < 0 || k > d - 1) throw std::out_of_range("k must lie in 0..d-1");
    if (!K.pure() || !K.pseudomanifold()) throw GeometryError("complex is not a pure pseudomanifold");
    auto B = K.boundary();
    // components of the boundary by shared vertices
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto& s : B.faces)
        for (int v : s)
            if (!parent.count(v)) parent[v] = v;
    for (auto& s : B.faces)
        for (size_t i = 1; i < s.size(); ++i) parent[find(s[i])] = find(s[0]);
    std::set<int> roots;
    for (auto& [v, p] : parent) roots.insert(find(v));
    const long long chi = K.euler();
    BallLemmaReport R;
    if (chi == 1 && roots.size() == 1) R.shape = "ball";
    else if (chi == 0 && roots.size() == 2) R.shape = "annulus";
    else throw GeometryError("complex is neither a ball nor an annulus");
    // links: spheres at interior faces, balls at boundary faces
    const int n = K.dim();
    for (auto& F : K.faces) {
        long long chi = K.link(F).euler();
        long long want = B.faces.count(F) ? 1 : 1 + sgn_pow(n - static_cast<int>(F.size()));
        if (chi != want) throw GeometryError("complex has a face whose link is neither a sphere nor a ball");
    }

    auto fK = K.f();
    auto fint = K.f_interior();
    auto at = [](const std::vector<long long>& v, int i) { return (i + 1 < static_cast<int>(v.size())) ? v[i + 1] : 0LL; };
    R.rows.push_back(make_report("ds-int", k, ds_operator(fint, d, k), Scalar(sgn_pow(d - 1) * at(fK, k)), 0, 0));
    R.rows.push_back(make_report("ds-closed", k, ds_operator(fK, d, k), Scalar(sgn_pow(d - 1) * at(fint, k)), 0, 0));
    return R;
}

} // namespace anglesum
