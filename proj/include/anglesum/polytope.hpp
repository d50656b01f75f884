#pragma once

#include "linalg.hpp"
#include "vectors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace anglesum {

using Point = std::vector<Scalar>;

struct VPolytope {
    int d = 0;
    std::vector<Point> vertices;
    std::string label;

    bool exact() const
    {
        for (auto& v : vertices)
            for (auto& x : v)
                if (!x.exact()) return false;
        return true;
    }
    std::vector<std::vector<double>> pts_d() const
    {
        std::vector<std::vector<double>> r;
        for (auto& v : vertices) {
            std::vector<double> p;
            for (auto& x : v) p.push_back(x.d());
            r.push_back(p);
        }
        return r;
    }
    std::vector<std::vector<Rational>> pts_q() const
    {
        std::vector<std::vector<Rational>> r;
        for (auto& v : vertices) {
            std::vector<Rational> p;
            for (auto& x : v) p.push_back(x.q());
            r.push_back(p);
        }
        return r;
    }
    int n() const { return static_cast<int>(vertices.size()); }
};

inline VPolytope make_polytope(const std::vector<std::vector<double>>& pts, std::string label = {})
{
    VPolytope p;
    p.d = pts.empty() ? 0 : static_cast<int>(pts[0].size());
    for (auto& v : pts) {
        Point q;
        for (double x : v) q.push_back(Scalar(x));
        p.vertices.push_back(q);
    }
    p.label = std::move(label);
    return p;
}

inline VPolytope make_polytope_q(const std::vector<std::vector<Rational>>& pts, std::string label = {})
{
    VPolytope p;
    p.d = pts.empty() ? 0 : static_cast<int>(pts[0].size());
    for (auto& v : pts) {
        Point q;
        for (auto& x : v) q.push_back(Scalar(x));
        p.vertices.push_back(q);
    }
    p.label = std::move(label);
    return p;
}

struct Facet {
    std::vector<int> verts;
    std::vector<Rational> normal_q;  // outward, only for exact polytopes
    Rational offset_q;
    std::vector<double> normal;      // outward unit normal
    double offset = 0;               // normal . x <= offset inside
    bool exact = false;
};

struct FacetOptions {
    int max_vertices_low_dim = 40;  // applies for d <= 4
    double max_subsets = 2e7;
    double rel_tol = 1e-9;
};

namespace detail {

inline int affine_rank(const VPolytope& p)
{
    if (p.n() <= 1) return 0;
    if (p.exact()) {
        auto q = p.pts_q();
        Mat<Rational> rows;
        for (size_t i = 1; i < q.size(); ++i) {
            std::vector<Rational> r(p.d);
            for (int j = 0; j < p.d; ++j) r[j] = q[i][j] - q[0][j];
            rows.push_back(r);
        }
        return bareiss_rank(rows);
    }
    auto x = p.pts_d();
    Mat<double> rows;
    for (size_t i = 1; i < x.size(); ++i) {
        std::vector<double> r(p.d);
        for (int j = 0; j < p.d; ++j) r[j] = x[i][j] - x[0][j];
        rows.push_back(r);
    }
    return svd_rank(rows, 1e-9).rank;
}

inline double diameter(const std::vector<std::vector<double>>& x)
{
    double m = 0;
    for (auto& a : x)
        for (auto& b : x) {
            double s = 0;
            for (size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
            m = std::max(m, s);
        }
    return std::sqrt(m);
}

inline bool next_combination(std::vector<int>& c, int n)
{
    int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

} // namespace detail

inline void check_full_dimensional(const VPolytope& p)
{
    if (p.d < 0) throw GeometryError("negative dimension");
    for (auto& v : p.vertices)
        if (static_cast<int>(v.size()) != p.d) throw GeometryError("vertex coordinate count differs from dimension");
    if (p.n() < p.d + 1 || detail::affine_rank(p) < p.d)
        throw GeometryError("vertices span less than " + std::to_string(p.d) + " dimensions");
}

inline std::vector<Facet> facets(const VPolytope& p, const FacetOptions& opt = {})
{
    check_full_dimensional(p);
    const int d = p.d, n = p.n();
    if (d <= 4 && n > opt.max_vertices_low_dim)
        throw GuardError("facet enumeration guard: " + std::to_string(n) + " vertices exceeds " +
                         std::to_string(opt.max_vertices_low_dim));
    if (to_double(Rational(binom_big(n, d))) > opt.max_subsets) throw GuardError("facet enumeration budget exceeded");
    std::vector<Facet> out;
    if (d == 0) return out;
    const bool ex = p.exact();
    auto xd = p.pts_d();
    const double tol = opt.rel_tol * std::max(1.0, detail::diameter(xd));
    std::vector<std::vector<Rational>> xq;
    if (ex) xq = p.pts_q();

    std::vector<std::vector<char>> member;
    std::vector<int> c(d);
    for (int i = 0; i < d; ++i) c[i] = i;
    do {
        bool covered = false;
        for (auto& m : member) {
            bool all = true;
            for (int i : c)
                if (!m[i]) {
                    all = false;
                    break;
                }
            if (all) {
                covered = true;
                break;
            }
        }
        if (covered) continue;
        Facet f;
        std::vector<int> pos, neg, on;
        if (ex) {
            std::vector<std::vector<Rational>> sub;
            for (int i : c) sub.push_back(xq[i]);
            auto nq = cofactor_normal(sub);
            bool zero = std::all_of(nq.begin(), nq.end(), [](const Rational& r) { return r == 0; });
            if (zero) continue;
            Rational off = dot(nq, xq[c[0]]);
            for (int k = 0; k < n; ++k) {
                Rational s = dot(nq, xq[k]) - off;
                (s > 0 ? pos : s < 0 ? neg : on).push_back(k);
            }
            if (!pos.empty() && !neg.empty()) continue;
            if (!pos.empty()) {
                for (auto& r : nq) r = -r;
                off = -off;
            }
            f.exact = true;
            f.normal_q = nq;
            f.offset_q = off;
            std::vector<double> nd;
            for (auto& r : nq) nd.push_back(to_double(r));
            double l = norm(nd);
            for (auto& x : nd) x /= l;
            f.normal = nd;
            f.offset = to_double(off) / l;
        } else {
            std::vector<std::vector<double>> sub;
            for (int i : c) sub.push_back(xd[i]);
            auto nd = cofactor_normal(sub);
            double l = norm(nd);
            double scale = 1;
            for (int i = 1; i < d; ++i) {
                double e = 0;
                for (int j = 0; j < d; ++j) e += (xd[c[i]][j] - xd[c[0]][j]) * (xd[c[i]][j] - xd[c[0]][j]);
                scale *= std::max(std::sqrt(e), 1e-300);
            }
            if (l <= 1e-12 * scale) continue;
            for (auto& x : nd) x /= l;
            double off = dot(nd, xd[c[0]]);
            for (int k = 0; k < n; ++k) {
                double s = dot(nd, xd[k]) - off;
                (s > tol ? pos : s < -tol ? neg : on).push_back(k);
            }
            if (!pos.empty() && !neg.empty()) continue;
            if (!pos.empty()) {
                for (auto& x : nd) x = -x;
                off = -off;
            }
            f.normal = nd;
            f.offset = off;
        }
        f.verts = on;
        std::vector<char> m(n, 0);
        for (int k : on) m[k] = 1;
        bool dup = false;
        for (auto& g : out)
            if (g.verts == f.verts) dup = true;
        if (dup) continue;
        member.push_back(m);
        out.push_back(std::move(f));
    } while (detail::next_combination(c, n));
    return out;
}

inline std::vector<int> hull_vertex_indices(const VPolytope& p, const std::vector<Facet>& fs)
{
    if (p.d == 0) return {0};
    std::vector<int> keep;
    for (int v = 0; v < p.n(); ++v) {
        std::vector<char> inter(p.n(), 1);
        bool any = false;
        for (auto& f : fs) {
            if (!std::binary_search(f.verts.begin(), f.verts.end(), v)) continue;
            any = true;
            std::vector<char> m(p.n(), 0);
            for (int k : f.verts) m[k] = 1;
            for (int k = 0; k < p.n(); ++k) inter[k] &= m[k];
        }
        if (!any) continue;
        int cnt = 0;
        for (char x : inter) cnt += x;
        if (cnt == 1) keep.push_back(v);
    }
    return keep;
}

// indices of points that are vertices of their convex hull
inline std::vector<int> hull_vertex_indices(const VPolytope& p, const FacetOptions& opt = {})
{
    if (p.d == 0) return {0};
    return hull_vertex_indices(p, facets(p, opt));
}

inline VPolytope hull(const VPolytope& p, const FacetOptions& opt = {})
{
    VPolytope q = p;
    std::vector<Point> uniq;
    for (auto& v : p.vertices)
        if (std::find(uniq.begin(), uniq.end(), v) == uniq.end()) uniq.push_back(v);
    q.vertices = uniq;
    auto keep = hull_vertex_indices(q, opt);
    VPolytope r = q;
    r.vertices.clear();
    for (int k : keep) r.vertices.push_back(q.vertices[k]);
    return r;
}

struct Face {
    int dim = -1;
    std::vector<int> verts;
    std::vector<int> facets;  // indices of facets containing this face
};

struct FaceLattice {
    int d = 0;
    int nverts = 0;
    std::vector<Facet> facet_list;
    std::vector<std::vector<Face>> faces;  // faces[i + 1] = i-faces
    // up[i + 1][j] = indices of (i+1)-faces containing faces[i + 1][j]
    std::vector<std::vector<std::vector<int>>> up;

    const std::vector<Face>& of_dim(int i) const { return faces.at(i + 1); }
    FVector f() const
    {
        FVector r(d);
        for (int i = -1; i <= d; ++i) r.at(i) = static_cast<long long>(faces[i + 1].size());
        return r;
    }
};

inline FaceLattice face_lattice(const VPolytope& p, const FacetOptions& opt = {})
{
    FaceLattice L;
    L.d = p.d;
    L.nverts = p.n();
    const int n = p.n();
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    L.faces.assign(p.d + 2, {});
    if (p.d == 0) {
        check_full_dimensional(p);
        if (n != 1) throw GeometryError("a 0-polytope has one vertex");
        L.faces[0].push_back({-1, {}, {}});
        L.faces[1].push_back({0, {0}, {}});
        L.up = {{{0}}, {{}}};
        return L;
    }
    L.facet_list = facets(p, opt);
    auto idx = hull_vertex_indices(p, L.facet_list);
    if (static_cast<int>(idx.size()) != n) throw GeometryError("vertex list contains points that are not vertices");

    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> todo;
    for (auto& f : L.facet_list)
        if (seen.insert(f.verts).second) todo.push_back(f.verts);
    while (!todo.empty()) {
        auto g = todo.back();
        todo.pop_back();
        for (auto& f : L.facet_list) {
            std::vector<int> x;
            std::set_intersection(g.begin(), g.end(), f.verts.begin(), f.verts.end(), std::back_inserter(x));
            if (seen.insert(x).second) todo.push_back(x);
        }
    }
    seen.insert({});
    seen.insert(all);
    std::vector<std::vector<int>> sets(seen.begin(), seen.end());
    std::sort(sets.begin(), sets.end(), [](auto& a, auto& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
    std::vector<int> dim(sets.size(), -1);
    for (size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) continue;
        int best = -1;
        for (size_t j = 0; j < i; ++j)
            if (sets[j].size() < sets[i].size() &&
                std::includes(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end()))
                best = std::max(best, dim[j]);
        dim[i] = best + 1;
    }
    for (size_t i = 0; i < sets.size(); ++i) {
        if (dim[i] > p.d) throw GeometryError("face lattice rank exceeds dimension");
        Face F;
        F.dim = dim[i];
        F.verts = sets[i];
        for (int k = 0; k < static_cast<int>(L.facet_list.size()); ++k)
            if (std::includes(L.facet_list[k].verts.begin(), L.facet_list[k].verts.end(), F.verts.begin(), F.verts.end()))
                F.facets.push_back(k);
        L.faces[F.dim + 1].push_back(F);
    }
    if (L.faces[p.d + 1].size() != 1 || L.faces[p.d].size() != L.facet_list.size())
        throw GeometryError("face lattice is not graded");
    L.up.assign(p.d + 2, {});
    for (int i = -1; i <= p.d; ++i) {
        auto& lo = L.faces[i + 1];
        L.up[i + 1].assign(lo.size(), {});
        if (i == p.d) continue;
        auto& hi = L.faces[i + 2];
        for (size_t a = 0; a < lo.size(); ++a)
            for (size_t b = 0; b < hi.size(); ++b)
                if (std::includes(hi[b].verts.begin(), hi[b].verts.end(), lo[a].verts.begin(), lo[a].verts.end()))
                    L.up[i + 1][a].push_back(static_cast<int>(b));
    }
    return L;
}

inline bool is_simplicial(const FaceLattice& L)
{
    for (auto& f : L.of_dim(L.d - 1))
        if (static_cast<int>(f.verts.size()) != L.d) return false;
    return true;
}

} // namespace anglesum
