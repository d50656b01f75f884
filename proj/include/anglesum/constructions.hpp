#pragma once

#include "angles.hpp"

#include <optional>

namespace anglesum {

// ---- exact recursions ----

inline AlphaFVector prism_af(const AlphaFVector& q)
{
    const int d = q.d() + 1;
    AlphaFVector r{AlphaVector(d), FVector(d)};
    for (int i = 0; i <= d; ++i) {
        r.f.at(i) = 2 * q.f[i] + (i >= 1 ? q.f[i - 1] : 0);
        r.a.at(i) = q.a[i] + (i >= 1 ? q.a[i - 1] : Scalar(0));
        double s1 = q.a.stderr_at(i), s2 = i >= 1 ? q.a.stderr_at(i - 1) : 0.0;
        r.a.se[i + 1] = std::sqrt(s1 * s1 + s2 * s2);
        r.a.how[i + 1] = (i <= q.d() ? q.a.how[i + 1] : 0u) | (i >= 1 ? q.a.how[i] : 0u);
    }
    r.f.at(d) = 1;
    r.a.at(d) = Scalar(1);
    r.a.how[d + 1] = kExact;
    return r;
}

inline FVector pyramid_f(const FVector& q)
{
    const int d = q.d + 1;
    FVector r(d);
    for (int i = 0; i <= d - 1; ++i) r.at(i) = q[i] + q[i - 1];
    r.at(d) = 1;
    return r;
}

inline FVector bipyramid_f(const FVector& q)
{
    const int d = q.d + 1;
    FVector r(d);
    for (int i = 0; i <= d - 2; ++i) r.at(i) = q[i] + 2 * q[i - 1];
    r.at(d - 1) = 2 * q[d - 2];
    r.at(d) = 1;
    return r;
}

inline AlphaFVector pyr_zero_af(const FVector& q)
{
    const int d = q.d + 1;
    AlphaFVector r{AlphaVector(d), pyramid_f(q)};
    for (int i = 0; i <= d - 2; ++i) r.a.at(i) = Scalar::frac(q[i - 1], 2);
    r.a.at(d - 1) = Scalar::frac(q[d - 2], 2) + Scalar::frac(1, 2);
    return r;
}

inline AlphaFVector pyr_zero_af(const AlphaFVector& q) { return pyr_zero_af(q.f); }

inline AlphaFVector pyr_inf_af(const AlphaFVector& q)
{
    const int d = q.d() + 1;
    AlphaFVector r{AlphaVector(d), pyramid_f(q.f)};
    for (int i = 0; i <= d - 1; ++i) {
        r.a.at(i) = q.a[i] / Scalar(2) + (i >= 1 ? q.a[i - 1] : Scalar(0));
        double s1 = q.a.stderr_at(i) / 2, s2 = i >= 1 ? q.a.stderr_at(i - 1) : 0.0;
        r.a.se[i + 1] = std::sqrt(s1 * s1 + s2 * s2);
        r.a.how[i + 1] = (q.a.how[i + 1]) | (i >= 1 ? q.a.how[i] : 0u);
    }
    return r;
}

// polygons and segments: the angle sums follow from the face counts
inline std::optional<AlphaFVector> combinatorial_af(const FVector& f)
{
    if (f.d > 2) return std::nullopt;
    AlphaFVector r{AlphaVector(f.d), f};
    if (f.d == 1) r.a.at(0) = Scalar(1);
    if (f.d == 2) {
        r.a.at(0) = Scalar::frac(f[0] - 2, 2);
        r.a.at(1) = Scalar::frac(f[1], 2);
    }
    return r;
}

inline GammaVector gamma_prism(const GammaVector& g)
{
    GammaVector r(g.d + 1);
    for (int i = 0; i <= g.d; ++i) r.e[i] = g.e[i];
    r.e[g.d + 1] = Scalar(1);
    return r;
}

inline GammaVector gamma_pyr_inf(const GammaVector& g)
{
    GammaVector r(g.d + 1);
    for (int i = 0; i <= g.d + 1; ++i) r.e[i] = (g[i] + g[i - 1]) / Scalar(2);
    return r;
}

inline HVector h_pyramid(const HVector& h)
{
    HVector r(h.d + 1);
    for (int i = 0; i <= h.d; ++i) r.e[i] = h.e[i];
    r.e[h.d + 1] = Scalar(1);
    return r;
}

inline GammaVector gamma_pyr_zero(const HVector& h)
{
    GammaVector r(h.d + 1);
    for (int i = 1; i <= h.d; ++i) r.e[i] = h.e[i - 1] / Scalar(2);
    r.e[h.d + 1] = Scalar(1);
    return r;
}

// f-vector preimage under the pyramid map, entries -1..d-1
inline std::vector<long long> pyramid_preimage(const FVector& f)
{
    std::vector<long long> r;
    for (int i = -1; i <= f.d - 1; ++i) {
        long long s = 0;
        for (int j = i + 1; j <= f.d; ++j) s += sgn_pow(i - j + 1) * f[j];
        r.push_back(s);
    }
    return r;
}

// ---- base polytopes and geometric realizations ----

inline VPolytope base_point() { return make_polytope_q({{}}, "point"); }
inline VPolytope base_segment() { return make_polytope_q({{0}, {1}}, "seg"); }
inline VPolytope base_triangle() { return make_polytope_q({{0, 0}, {1, 0}, {0, 1}}, "tri"); }
inline VPolytope base_square() { return make_polytope_q({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, "sq"); }

inline VPolytope unit_cube(int d)
{
    std::vector<std::vector<Rational>> v;
    for (int m = 0; m < (1 << d); ++m) {
        std::vector<Rational> p;
        for (int j = 0; j < d; ++j) p.push_back((m >> j) & 1);
        v.push_back(p);
    }
    return make_polytope_q(v, "cube" + std::to_string(d));
}

inline VPolytope standard_simplex(int d)
{
    std::vector<std::vector<Rational>> v(d + 1, std::vector<Rational>(d, 0));
    for (int i = 0; i < d; ++i) v[i + 1][i] = 1;
    return make_polytope_q(v, "simplex" + std::to_string(d));
}

inline VPolytope cross_polytope(int d)
{
    std::vector<std::vector<Rational>> v;
    for (int i = 0; i < d; ++i)
        for (int s : {1, -1}) {
            std::vector<Rational> p(d, 0);
            p[i] = s;
            v.push_back(p);
        }
    return make_polytope_q(v, "cross" + std::to_string(d));
}

inline VPolytope regular_tetrahedron()
{
    return make_polytope_q({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}, "regular-tetrahedron");
}

// two regular tetrahedra glued along a facet
inline VPolytope t13_two_tetrahedra()
{
    return make_polytope_q({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}, {Rational(5, 3), Rational(5, 3), Rational(-5, 3)}},
                           "t1_3");
}

inline Point centroid(const VPolytope& q)
{
    Point c(q.d, Scalar(0));
    for (auto& v : q.vertices)
        for (int j = 0; j < q.d; ++j) c[j] += v[j];
    for (auto& x : c) x /= Scalar(q.n());
    return c;
}

inline VPolytope pyramid_geometric(const VPolytope& q, const Scalar& h)
{
    if (!(Scalar(0) < h)) throw std::invalid_argument("pyramid height must be positive");
    VPolytope r;
    r.d = q.d + 1;
    for (auto v : q.vertices) {
        v.push_back(Scalar(0));
        r.vertices.push_back(v);
    }
    auto c = centroid(q);
    c.push_back(h);
    r.vertices.push_back(c);
    r.label = "P[" + h.str() + "](" + q.label + ")";
    return r;
}

inline VPolytope prism_geometric(const VPolytope& q)
{
    VPolytope r;
    r.d = q.d + 1;
    for (int s = 0; s <= 1; ++s)
        for (auto v : q.vertices) {
            v.push_back(Scalar(s));
            r.vertices.push_back(v);
        }
    r.label = "B*(" + q.label + ")";
    return r;
}

inline VPolytope bipyramid_geometric(const VPolytope& q, const Scalar& h)
{
    VPolytope r;
    r.d = q.d + 1;
    for (auto v : q.vertices) {
        v.push_back(Scalar(0));
        r.vertices.push_back(v);
    }
    auto c = centroid(q);
    auto top = c, bot = c;
    top.push_back(h);
    bot.push_back(-h);
    r.vertices.push_back(top);
    r.vertices.push_back(bot);
    r.label = "bipyramid(" + q.label + ")";
    return r;
}

// new vertex beyond exactly the facets containing the given face
inline VPolytope stellar_subdivision(const VPolytope& p, const FaceLattice& L, FaceId id, const Scalar& push = Scalar(1),
                                     int max_halvings = 80)
{
    if (!is_simplicial(L)) throw GeometryError("stellar subdivision needs a simplicial polytope");
    if (id.dim < 0 || id.dim >= p.d) throw std::invalid_argument("stellar subdivision needs a proper face");
    const Face& F = L.of_dim(id.dim).at(id.index);
    const bool ex = p.exact() && push.exact();
    const int d = p.d;
    Point bary(d, Scalar(0));
    for (int v : F.verts)
        for (int j = 0; j < d; ++j) bary[j] += p.vertices[v][j];
    for (auto& x : bary) x /= Scalar(static_cast<long long>(F.verts.size()));

    auto nrm = [&](int k, int j) { return ex ? Scalar(L.facet_list[k].normal_q[j]) : Scalar(L.facet_list[k].normal[j]); };
    auto off = [&](int k) { return ex ? Scalar(L.facet_list[k].offset_q) : Scalar(L.facet_list[k].offset); };
    Point m(d, Scalar(0));
    for (int k : F.facets)
        for (int j = 0; j < d; ++j) m[j] += nrm(k, j);
    for (int it = 0; it < 1000; ++it) {
        int bad = -1;
        for (int k : F.facets) {
            Scalar s(0);
            for (int j = 0; j < d; ++j) s += nrm(k, j) * m[j];
            if (!(Scalar(0) < s)) {
                bad = k;
                break;
            }
        }
        if (bad < 0) break;
        for (int j = 0; j < d; ++j) m[j] += nrm(bad, j);
        if (it == 999) throw GeometryError("no direction beyond all facets of the face");
    }
    std::vector<char> want(L.facet_list.size(), 0);
    for (int k : F.facets) want[k] = 1;
    Scalar t = push;
    for (int h = 0; h <= max_halvings; ++h, t /= Scalar(2)) {
        Point x(d);
        for (int j = 0; j < d; ++j) x[j] = bary[j] + t * m[j];
        bool ok = true;
        for (size_t k = 0; k < L.facet_list.size() && ok; ++k) {
            Scalar s(0);
            for (int j = 0; j < d; ++j) s += nrm(static_cast<int>(k), j) * x[j];
            s -= off(static_cast<int>(k));
            bool beyond = Scalar(0) < s;
            bool beneath = s < Scalar(0);
            if (want[k] ? !beyond : !beneath) ok = false;
        }
        if (ok) {
            VPolytope r = p;
            r.vertices.push_back(x);
            r.label = "St[" + std::to_string(id.dim) + "](" + p.label + ")";
            return r;
        }
    }
    throw GeometryError("no push value gives the required beyond-set");
}

// T_k^d: stellar subdivision of the standard d-simplex at a (d-k)-face
inline VPolytope stellar_simplex(int d, int k)
{
    if (k < 0 || k > d) throw std::invalid_argument("T_k^d needs 0 <= k <= d");
    auto s = standard_simplex(d);
    if (k == 0) return s;
    auto L = face_lattice(s);
    std::vector<int> want;
    for (int i = 0; i <= d - k; ++i) want.push_back(i);
    auto& fs = L.of_dim(d - k);
    for (int j = 0; j < static_cast<int>(fs.size()); ++j)
        if (fs[j].verts == want) {
            auto r = stellar_subdivision(s, L, {d - k, j});
            r.label = "T_" + std::to_string(k) + "^" + std::to_string(d);
            return r;
        }
    throw std::logic_error("stellar_simplex: face not found");
}

} // namespace anglesum
