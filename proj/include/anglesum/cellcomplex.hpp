#pragma once

#include "angles.hpp"
#include "constructions.hpp"
#include "gluing.hpp"

namespace anglesum {

inline constexpr double kCellTol = 1e-9;

struct CellFace {
    int dim = 0;
    std::vector<int> verts;                // global vertex ids, sorted
    std::vector<std::pair<int, int>> inc;  // (cell, index among that cell's faces of this dimension)
};

// convex cells in R^3 meeting face to face
struct CellComplex {
    int d = 3;
    std::vector<VPolytope> cells;
    std::vector<FaceLattice> lattices;
    std::vector<Point> verts;
    std::vector<std::vector<int>> gid;  // per cell: local vertex -> global vertex
    std::vector<CellFace> faces;
    std::map<std::vector<int>, int> index;
    std::string label;

    int size() const { return static_cast<int>(cells.size()); }
    std::vector<int> global(int c, const std::vector<int>& local) const
    {
        std::vector<int> g;
        for (int v : local) g.push_back(gid[c][v]);
        std::sort(g.begin(), g.end());
        return g;
    }
};
using CellComplex3 = CellComplex;

namespace detail {

inline double point_dist(const Point& a, const Point& b)
{
    double m = 0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a[j].d() - b[j].d()));
    return m;
}

inline Eigen::Vector3d as3(const Point& p) { return {p[0].d(), p[1].d(), p[2].d()}; }

// vertices of the intersection of two cells given by their facet inequalities
inline std::vector<Eigen::Vector3d> intersection_vertices(const FaceLattice& A, const FaceLattice& B, double tol)
{
    std::vector<std::pair<Eigen::Vector3d, double>> H;
    for (auto* L : {&A, &B})
        for (auto& f : L->facet_list) H.push_back({{f.normal[0], f.normal[1], f.normal[2]}, f.offset});
    const int n = static_cast<int>(H.size());
    std::vector<Eigen::Vector3d> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Eigen::Matrix3d M;
                M.row(0) = H[i].first;
                M.row(1) = H[j].first;
                M.row(2) = H[k].first;
                if (std::fabs(M.determinant()) < 1e-12) continue;
                Eigen::Vector3d x = M.partialPivLu().solve(Eigen::Vector3d(H[i].second, H[j].second, H[k].second));
                bool ok = true;
                for (auto& [nrm, off] : H) ok = ok && nrm.dot(x) <= off + tol;
                if (!ok) continue;
                bool dup = false;
                for (auto& y : out) dup = dup || (y - x).cwiseAbs().maxCoeff() <= tol;
                if (!dup) out.push_back(x);
            }
    return out;
}

inline int affine_rank3(const std::vector<Eigen::Vector3d>& pts, double tol)
{
    if (pts.size() <= 1) return 0;
    Mat<double> rows;
    for (size_t i = 1; i < pts.size(); ++i) rows.push_back({pts[i][0] - pts[0][0], pts[i][1] - pts[0][1], pts[i][2] - pts[0][2]});
    return svd_rank(rows, tol).rank;
}

} // namespace detail

inline CellComplex make_cell_complex(const std::vector<VPolytope>& cells, std::string label = {})
{
    if (cells.empty()) throw GeometryError("a cell complex needs at least one cell");
    CellComplex C;
    C.label = std::move(label);
    for (auto& p : cells) {
        if (p.d != 3) throw GuardError("cell complexes are realized in R^3 only");
        C.cells.push_back(p);
        C.lattices.push_back(face_lattice(p));
    }
    for (int c = 0; c < C.size(); ++c) {
        std::vector<int> g;
        for (auto& v : C.cells[c].vertices) {
            int hit = -1;
            for (int u = 0; u < static_cast<int>(C.verts.size()) && hit < 0; ++u)
                if (detail::point_dist(C.verts[u], v) <= kCellTol) hit = u;
            if (hit < 0) {
                hit = static_cast<int>(C.verts.size());
                C.verts.push_back(v);
            }
            g.push_back(hit);
        }
        std::set<int> distinct(g.begin(), g.end());
        if (distinct.size() != g.size()) throw GeometryError("a cell has coincident vertices");
        C.gid.push_back(g);
    }
    for (int c = 0; c < C.size(); ++c)
        for (int i = 0; i < C.d; ++i) {
            auto& fs = C.lattices[c].of_dim(i);
            for (int j = 0; j < static_cast<int>(fs.size()); ++j) {
                auto key = C.global(c, fs[j].verts);
                auto [it, fresh] = C.index.emplace(key, static_cast<int>(C.faces.size()));
                if (fresh) C.faces.push_back({i, key, {}});
                auto& F = C.faces[it->second];
                if (F.dim != i) throw GeometryError("cells disagree on the dimension of a shared face");
                F.inc.push_back({c, j});
            }
        }
    for (auto& F : C.faces)
        if (F.dim == C.d - 1 && F.inc.size() > 2) throw GeometryError("a facet lies in more than two cells");
    // any two cells meet in a common face of both
    for (int a = 0; a < C.size(); ++a)
        for (int b = a + 1; b < C.size(); ++b) {
            auto pts = detail::intersection_vertices(C.lattices[a], C.lattices[b], kCellTol);
            if (pts.empty()) continue;
            if (detail::affine_rank3(pts, 1e-7) == 3) throw GeometryError("two cells overlap in their interiors");
            std::vector<int> key;
            for (auto& x : pts) {
                int hit = -1;
                for (int u = 0; u < static_cast<int>(C.verts.size()) && hit < 0; ++u)
                    if ((detail::as3(C.verts[u]) - x).cwiseAbs().maxCoeff() <= 1e-7) hit = u;
                if (hit < 0) throw GeometryError("two cells meet outside a common face");
                key.push_back(hit);
            }
            std::sort(key.begin(), key.end());
            auto it = C.index.find(key);
            bool shared = false;
            if (it != C.index.end()) {
                bool in_a = false, in_b = false;
                for (auto& [c, j] : C.faces[it->second].inc) {
                    in_a = in_a || c == a;
                    in_b = in_b || c == b;
                }
                shared = in_a && in_b;
            }
            if (!shared) throw GeometryError("two cells meet outside a common face");
        }
    return C;
}

inline CellComplex single_cell(const VPolytope& p) { return make_cell_complex({p}, p.label); }

struct CellChars {
    AlphaVector a;
    FVector f;  // of the boundary complex; f_d = 0
    Scalar chi_alpha;
    long long chi_boundary = 0;
    std::vector<BoundaryComponent> components;
    std::vector<char> on_boundary;  // per face of the complex
    double interior_deviation = 0;  // largest |sum of incident angles - 1| over interior faces
    bool interior_exact = true;
};

inline std::vector<std::vector<std::vector<AngleEstimate>>> cell_angles(const CellComplex& C, const SamplingConfig& cfg)
{
    std::vector<std::vector<std::vector<AngleEstimate>>> out(C.size());
    for (int c = 0; c < C.size(); ++c) {
        out[c].resize(C.d);
        for (int i = 0; i < C.d; ++i) {
            const int n = static_cast<int>(C.lattices[c].of_dim(i).size());
            for (int j = 0; j < n; ++j) out[c][i].push_back(interior_angle(C.cells[c], C.lattices[c], {i, j}, cfg));
        }
    }
    return out;
}

inline std::vector<char> cell_boundary_mask(const CellComplex& C)
{
    std::vector<char> on(C.faces.size(), 0);
    for (auto& F : C.faces) {
        if (F.dim != C.d - 1 || F.inc.size() != 1) continue;
        const auto [c, j] = F.inc[0];
        auto& top = C.lattices[c].of_dim(C.d - 1)[j].verts;
        for (int i = 0; i < C.d; ++i)
            for (auto& G : C.lattices[c].of_dim(i))
                if (std::includes(top.begin(), top.end(), G.verts.begin(), G.verts.end()))
                    on[C.index.at(C.global(c, G.verts))] = 1;
    }
    return on;
}

inline CellChars cell_complex_chars(const CellComplex& C, const SamplingConfig& cfg = {})
{
    CellChars R;
    R.a = AlphaVector(C.d);
    R.f = FVector(C.d);
    R.f.at(C.d) = 0;
    R.on_boundary = cell_boundary_mask(C);
    auto ang = cell_angles(C, cfg);
    std::vector<double> var(C.d, 0.0);
    std::vector<unsigned> how(C.d, 0);
    std::vector<Scalar> face_angle(C.faces.size());
    for (size_t k = 0; k < C.faces.size(); ++k) {
        auto& F = C.faces[k];
        Scalar s(0);
        for (auto& [c, j] : F.inc) {
            auto& e = ang[c][F.dim][j];
            s += e.value;
            if (R.on_boundary[k]) {
                var[F.dim] += e.stderr_ * e.stderr_;
                how[F.dim] |= e.method;
            }
        }
        face_angle[k] = s;
        if (R.on_boundary[k]) {
            R.a.at(F.dim) += s;
            ++R.f.at(F.dim);
        } else {
            R.interior_exact = R.interior_exact && s.exact();
            R.interior_deviation = std::max(R.interior_deviation, std::fabs(s.d() - 1));
            if (s.exact() && s.q() != 1) R.interior_deviation = std::max(R.interior_deviation, 1.0);
        }
    }
    for (int i = 0; i < C.d; ++i) {
        R.a.se[i + 1] = std::sqrt(var[i]);
        R.a.how[i + 1] = how[i] ? how[i] : kExact;
    }
    R.a.at(C.d) = Scalar(C.size());
    R.chi_alpha = angle_char(R.a);
    R.chi_boundary = static_cast<long long>(euler_char(R.f, C.d - 1).d());
    UnionFind uf(C.faces.size());
    for (size_t k = 0; k < C.faces.size(); ++k) {
        if (!R.on_boundary[k]) continue;
        for (int v : C.faces[k].verts) uf.unite(static_cast<int>(k), C.index.at({v}));
    }
    std::map<int, BoundaryComponent> comps;
    for (size_t k = 0; k < C.faces.size(); ++k) {
        if (!R.on_boundary[k]) continue;
        auto& b = comps[uf.find(static_cast<int>(k))];
        b.chi += sgn_pow(C.faces[k].dim);
        b.chi_alpha += Scalar(sgn_pow(C.faces[k].dim)) * face_angle[k];
        ++b.faces;
    }
    for (auto& [r, b] : comps) R.components.push_back(b);
    std::stable_sort(R.components.begin(), R.components.end(), [](auto& x, auto& y) { return x.faces > y.faces; });
    return R;
}

inline RelationReport interior_angle_report(const CellChars& c)
{
    return make_report("interior-angle-sum", 0, Scalar(c.interior_deviation), Scalar(0), 0, c.interior_exact ? 0 : 1e-9);
}

// ---- gluing cell complexes ----

struct CellGluing {
    CellComplex c;
    GluingSpec spec;
    CellChars a, b, cc;
    std::vector<int> shared;  // faces of c lying in both parts
    std::vector<RelationReport> valuations;
    std::optional<Characteristics> predicted;
    bool agree = false;

    bool valuations_pass() const
    {
        return std::all_of(valuations.begin(), valuations.end(), [](auto& r) { return r.pass; });
    }
};

inline CellGluing glue_cells(const CellComplex& A, const CellComplex& B, const SamplingConfig& cfg = {})
{
    CellGluing R;
    std::vector<VPolytope> cells = A.cells;
    cells.insert(cells.end(), B.cells.begin(), B.cells.end());
    try {
        R.c = make_cell_complex(cells, A.label + "+" + B.label);
    } catch (const GeometryError& e) {
        throw GluingError(std::string("the parts do not glue: ") + e.what());
    }
    const int nA = A.size();
    auto& C = R.c;
    R.a = cell_complex_chars(A, cfg);
    R.b = cell_complex_chars(B, cfg);
    R.cc = cell_complex_chars(C, cfg);
    std::map<int, int> pos;
    for (int k = 0; k < static_cast<int>(C.faces.size()); ++k) {
        bool ina = false, inb = false;
        for (auto& [c, j] : C.faces[k].inc) (c < nA ? ina : inb) = true;
        if (ina && inb) {
            pos[k] = static_cast<int>(R.shared.size());
            R.shared.push_back(k);
        }
    }
    if (R.shared.empty()) throw GluingError("the complexes do not meet");
    // every shared face must lie on the boundary of both parts
    for (int k : R.shared) {
        std::vector<Point> pts;
        for (int v : C.faces[k].verts) pts.push_back(C.verts[v]);
        for (int side = 0; side < 2; ++side) {
            const CellComplex& P = side == 0 ? A : B;
            const CellChars& ch = side == 0 ? R.a : R.b;
            std::vector<int> key;
            for (auto& p : pts)
                for (int u = 0; u < static_cast<int>(P.verts.size()); ++u)
                    if (detail::point_dist(P.verts[u], p) <= kCellTol) key.push_back(u);
            std::sort(key.begin(), key.end());
            auto it = P.index.find(key);
            if (it == P.index.end() || !ch.on_boundary[it->second])
                throw GluingError("the intersection does not lie in the boundary of both parts");
        }
    }
    FacePoset P;
    for (int k : R.shared) {
        auto& F = C.faces[k];
        P.dim.push_back(F.dim);
        std::vector<int> sub;
        const auto [c, j] = F.inc[0];
        auto& top = C.lattices[c].of_dim(F.dim)[j].verts;
        if (F.dim > 0)
            for (auto& G : C.lattices[c].of_dim(F.dim - 1))
                if (std::includes(top.begin(), top.end(), G.verts.begin(), G.verts.end())) {
                    auto it = pos.find(C.index.at(C.global(c, G.verts)));
                    if (it != pos.end()) sub.push_back(it->second);
                }
        P.sub.push_back(sub);
    }
    R.spec = classify(P, C.d);
    if (R.spec.classifiable() && R.spec.kind != GluingKind::LowerDim)
        for (size_t i = 0; i < R.shared.size(); ++i)
            if (!R.spec.on_boundary[i] && R.cc.on_boundary[R.shared[i]]) {
                R.spec = unclassifiable(R.spec, "an interior face of the intersection stays on the boundary");
                break;
            }
    for (int i = 0; i < C.d; ++i) {
        long long rhs = R.a.f[i] + R.b.f[i] - 2 * R.spec.f_int[i] - R.spec.f_bd[i];
        R.valuations.push_back(make_report("f-valuation", i, Scalar(R.cc.f[i]), Scalar(rhs), 0, 0));
        Scalar ar = R.a.a[i] + R.b.a[i] - Scalar(R.spec.f_int[i]);
        R.valuations.push_back(make_report("a-valuation", i, R.cc.a[i], ar, 0, ar.exact() && R.cc.a[i].exact() ? 0 : 1e-9));
    }
    R.predicted = predict({R.a.chi_boundary, R.a.chi_alpha}, {R.b.chi_boundary, R.b.chi_alpha}, R.spec);
    if (R.predicted)
        R.agree = R.predicted->chi_boundary == R.cc.chi_boundary &&
                  std::fabs((R.predicted->chi_alpha - R.cc.chi_alpha).d()) <= 1e-9;
    return R;
}

// ---- Dehn-Sommerville and Perles across a gluing ----

inline bool all_simplices(const CellComplex& C)
{
    for (auto& p : C.cells)
        if (p.n() != p.d + 1) return false;
    return true;
}

inline RelationReport ds_report(const std::string& rel, const FVector& f, int k, const Scalar& expected_residual)
{
    const int d = f.d;
    return make_report(rel, k, ds_operator(f, k), Scalar(sgn_pow(d - 1) * f[k]) + expected_residual, 0, 0);
}

inline RelationReport pe_report(const std::string& rel, const AlphaVector& a, const FVector& f, int k,
                                const Scalar& expected_residual)
{
    const int d = a.d;
    Scalar rhs = Scalar(sgn_pow(d)) * (a[k] - Scalar(f[k])) + expected_residual;
    return make_report(rel, k, pe_operator(a, k), rhs, 0, pe_operator(a, k).exact() && rhs.exact() ? 0 : 1e-9);
}

struct DsPeGluingReport {
    CellGluing g;
    int k = 0;
    Scalar ds_expected, pe_expected;  // residuals the gluing theorems predict
    std::vector<RelationReport> hypotheses;  // DS and Perles on each part
    std::vector<RelationReport> rows;        // DS and Perles on the glued complex, valuations
    bool pass() const
    {
        auto ok = [](auto& v) { return std::all_of(v.begin(), v.end(), [](auto& r) { return r.pass; }); };
        return ok(hypotheses) && ok(rows);
    }
};

inline DsPeGluingReport ds_pe_gluing_check(const CellComplex& A, const CellComplex& B, int k, const SamplingConfig& cfg = {})
{
    if (!all_simplices(A) || !all_simplices(B)) throw GuardError("Dehn-Sommerville gluing checks need simplicial cells");
    DsPeGluingReport R;
    R.k = k;
    R.g = glue_cells(A, B, cfg);
    auto& s = R.g.spec;
    if (!s.classifiable()) throw GluingError("unclassifiable intersection: " + s.reason);
    const int d = R.g.c.d;
    check_k(k, d);
    R.ds_expected = Scalar(0);
    R.pe_expected = Scalar(0);
    if (s.kind == GluingKind::LowerDim) {
        std::vector<long long> fI(d + 1, 0);
        fI[0] = 1;
        for (int i = 0; i < d; ++i) fI[i + 1] = s.f_bd[i];
        R.pe_expected = Scalar(sgn_pow(d - 1) * s.f_bd[k]);
        R.ds_expected = R.pe_expected - ds_operator(fI, d, k);
    }
    R.hypotheses.push_back(ds_report("ds-A", R.g.a.f, k, Scalar(0)));
    R.hypotheses.push_back(pe_report("perles-A", R.g.a.a, R.g.a.f, k, Scalar(0)));
    R.hypotheses.push_back(ds_report("ds-B", R.g.b.f, k, Scalar(0)));
    R.hypotheses.push_back(pe_report("perles-B", R.g.b.a, R.g.b.f, k, Scalar(0)));
    R.rows.push_back(ds_report("ds", R.g.cc.f, k, R.ds_expected));
    R.rows.push_back(pe_report("perles", R.g.cc.a, R.g.cc.f, k, R.pe_expected));
    for (auto& v : R.g.valuations) R.rows.push_back(v);
    return R;
}

// ---- fixtures ----

// the regular tetrahedron with one facet subdivided from an interior point of that facet
inline CellComplex delta_prime()
{
    auto T = regular_tetrahedron();
    auto& V = T.vertices;
    Point p(3);
    for (int j = 0; j < 3; ++j) p[j] = (V[1][j] + V[2][j] + V[3][j]) / Scalar(3);
    std::vector<VPolytope> cells;
    for (auto [i, j] : {std::pair{1, 2}, {2, 3}, {1, 3}}) {
        VPolytope c;
        c.d = 3;
        c.vertices = {V[0], p, V[i], V[j]};
        cells.push_back(c);
    }
    return make_cell_complex(cells, "delta-prime");
}

// regular tetrahedron and its mirror image across the facet opposite (-1,-1,1)
inline std::pair<CellComplex, CellComplex> delta_delta_parts()
{
    auto T = regular_tetrahedron();
    VPolytope M = make_polytope_q({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {Rational(5, 3), Rational(5, 3), Rational(-5, 3)}},
                                  "mirror");
    return {single_cell(T), single_cell(M)};
}

// two tetrahedra meeting along the segment from the origin to e3
inline std::pair<CellComplex, CellComplex> edge_contact_parts()
{
    auto a = make_polytope_q({{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, "a");
    auto b = make_polytope_q({{0, 0, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}}, "b");
    return {single_cell(a), single_cell(b)};
}

// a new tetrahedron over a boundary facet of a cell, apex pushed out along the facet normal
inline VPolytope stack_on(const VPolytope& cell, const Facet& f, const Rational& push)
{
    Point c(3, Scalar(0));
    for (int v : f.verts)
        for (int j = 0; j < 3; ++j) c[j] += cell.vertices[v][j];
    for (int j = 0; j < 3; ++j) c[j] = c[j] / Scalar(3) + Scalar(push * f.normal_q[j]);
    VPolytope t;
    t.d = 3;
    for (int v : f.verts) t.vertices.push_back(cell.vertices[v]);
    t.vertices.push_back(c);
    return t;
}

// the regular tetrahedron with a shallow tetrahedron stacked on each of its facets
inline std::vector<VPolytope> stacked_ball_cells()
{
    auto T = regular_tetrahedron();
    auto L = face_lattice(T);
    std::vector<VPolytope> out{T};
    for (auto& f : L.facet_list) out.push_back(stack_on(T, f, Rational(1, 8)));
    return out;
}

inline SimplicialComplex triangle_disk() { return SimplicialComplex({{0, 1, 2}}); }
inline SimplicialComplex fan_disk() { return SimplicialComplex({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}}); }
inline SimplicialComplex triangle_annulus()
{
    return SimplicialComplex({{0, 1, 3}, {1, 3, 4}, {1, 2, 4}, {2, 4, 5}, {0, 2, 5}, {0, 3, 5}});
}

} // namespace anglesum
