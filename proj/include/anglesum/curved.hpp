#pragma once

#include "angles.hpp"
#include "gluing.hpp"
#include "relations.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <limits>
#include <numbers>
#include <optional>

namespace anglesum {

enum class Geometry { Spherical, Euclidean, Hyperbolic };

inline int curvature(Geometry g) { return g == Geometry::Spherical ? 1 : g == Geometry::Euclidean ? 0 : -1; }

inline std::string geometry_name(Geometry g)
{
    return g == Geometry::Spherical ? "spherical" : g == Geometry::Euclidean ? "euclidean" : "hyperbolic";
}

inline Geometry parse_geometry(const std::string& s)
{
    if (s == "spherical" || s == "S") return Geometry::Spherical;
    if (s == "euclidean" || s == "E") return Geometry::Euclidean;
    if (s == "hyperbolic" || s == "H") return Geometry::Hyperbolic;
    throw ParseError("unknown geometry '" + s + "' (spherical | euclidean | hyperbolic)");
}

inline constexpr int kMaxCurvedDim = 3;

// spherical: unit vectors in R^{d+1}; hyperbolic: Klein coordinates in the closed unit ball; euclidean: R^d
struct CurvedPolytope {
    Geometry geometry = Geometry::Euclidean;
    int d = 0;
    std::vector<Point> vertices;
    std::vector<char> ideal;
    std::string label;
};

inline double vol_sphere(int n) { return 2 * std::pow(std::numbers::pi, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0); }

inline CurvedPolytope make_curved(Geometry g, int d, const std::vector<Point>& verts, std::string label = {})
{
    if (d < 1 || d > kMaxCurvedDim) throw GuardError("curved polytopes are supported for 1 <= d <= 3");
    CurvedPolytope p;
    p.geometry = g;
    p.d = d;
    p.label = std::move(label);
    const int amb = g == Geometry::Spherical ? d + 1 : d;
    for (auto v : verts) {
        if (static_cast<int>(v.size()) != amb)
            throw GeometryError("vertex has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(amb));
        Scalar n2(0);
        for (auto& x : v) n2 += x * x;
        if (g == Geometry::Spherical) {
            if (n2.exact() && n2.q() != 1) throw GeometryError("spherical vertices must be unit vectors");
            if (!n2.exact()) {
                if (!(n2.d() > 1e-24)) throw GeometryError("spherical vertices must be nonzero");
                for (auto& x : v) x = Scalar(x.d() / std::sqrt(n2.d()));
            }
            p.ideal.push_back(0);
        } else if (g == Geometry::Hyperbolic) {
            bool on = n2.exact() ? n2.q() == 1 : std::fabs(n2.d() - 1) <= 1e-12;
            bool out = n2.exact() ? n2.q() > 1 : n2.d() > 1 + 1e-12;
            if (out) throw GeometryError("Klein vertices must lie in the closed unit ball");
            p.ideal.push_back(on ? 1 : 0);
        } else {
            p.ideal.push_back(0);
        }
        p.vertices.push_back(v);
    }
    return p;
}

inline CurvedPolytope make_curved(Geometry g, int d, const std::vector<std::vector<double>>& verts, std::string label = {})
{
    std::vector<Point> pts;
    for (auto& v : verts) {
        Point q;
        for (double x : v) q.push_back(Scalar(x));
        pts.push_back(q);
    }
    return make_curved(g, d, pts, std::move(label));
}

// all dihedral angles right: the simplex cut from S^d by the positive orthant
inline CurvedPolytope orthant_simplex(int d)
{
    std::vector<Point> v;
    for (int i = 0; i <= d; ++i) {
        Point e(d + 1, Scalar(0));
        e[i] = Scalar(1);
        v.push_back(e);
    }
    return make_curved(Geometry::Spherical, d, v, "orthant" + std::to_string(d));
}

inline CurvedPolytope octant_triangle()
{
    auto p = orthant_simplex(2);
    p.label = "octant";
    return p;
}

// a spherical simplex around the north pole: the Euclidean simplex scaled by t, lifted radially
inline CurvedPolytope small_spherical_simplex(const std::vector<std::vector<double>>& euclid, double t)
{
    std::vector<std::vector<double>> v;
    for (auto& x : euclid) {
        std::vector<double> w{1.0};
        for (double c : x) w.push_back(t * c);
        double n = 0;
        for (double c : w) n += c * c;
        for (double& c : w) c /= std::sqrt(n);
        v.push_back(w);
    }
    return make_curved(Geometry::Spherical, static_cast<int>(euclid[0].size()), v, "small-spherical");
}

inline CurvedPolytope klein_regular_polygon(int n, double r, double phase = 0)
{
    if (n < 3) throw GuardError("a polygon needs at least 3 vertices");
    std::vector<std::vector<double>> v;
    for (int i = 0; i < n; ++i) {
        double a = phase + 2 * std::numbers::pi * i / n;
        v.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return make_curved(Geometry::Hyperbolic, 2, v, "klein" + std::to_string(n));
}

inline CurvedPolytope ideal_triangle() { return klein_regular_polygon(3, 1.0); }

namespace detail {

struct ConeModel {
    int d = 0;
    Geometry g{};
    bool exact = false;
    std::vector<std::vector<Scalar>> w;  // lifted vertices in R^{d+1}
    VPolytope proxy;                     // a Euclidean polytope with the same face lattice
    FaceLattice L;
    std::vector<char> ideal;
    std::vector<std::vector<Scalar>> m;  // per facet: Euclidean coefficients, m . w <= 0 on the cone

    // bilinear form of the geometry on R^{d+1}: identity, or signature (-,+,...,+) with time first
    Scalar form(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const
    {
        Scalar s(0);
        for (size_t j = 0; j < a.size(); ++j) s += (g == Geometry::Hyperbolic && j == 0 ? -a[j] * b[j] : a[j] * b[j]);
        return s;
    }
};

inline std::vector<Scalar> linear_normal(const std::vector<std::vector<Scalar>>& vecs, bool exact)
{
    const int n = static_cast<int>(vecs[0].size());
    std::vector<Scalar> out(n);
    if (exact) {
        std::vector<std::vector<Rational>> pts{std::vector<Rational>(n, Rational(0))};
        for (auto& v : vecs) {
            std::vector<Rational> r;
            for (auto& x : v) r.push_back(x.q());
            pts.push_back(r);
        }
        auto c = cofactor_normal(pts);
        for (int j = 0; j < n; ++j) out[j] = Scalar(c[j]);
    } else {
        std::vector<std::vector<double>> pts{std::vector<double>(n, 0.0)};
        for (auto& v : vecs) {
            std::vector<double> r;
            for (auto& x : v) r.push_back(x.d());
            pts.push_back(r);
        }
        auto c = cofactor_normal(pts);
        double s = norm(c);
        for (int j = 0; j < n; ++j) out[j] = Scalar(s > 0 ? c[j] / s : 0.0);
    }
    return out;
}

inline ConeModel cone_model(const CurvedPolytope& p)
{
    if (p.geometry == Geometry::Euclidean) throw std::logic_error("cone_model is for curved geometries");
    ConeModel M;
    M.d = p.d;
    M.g = p.geometry;
    M.exact = true;
    M.ideal = p.ideal;
    for (auto& v : p.vertices)
        for (auto& x : v) M.exact = M.exact && x.exact();
    auto fix = [&](Scalar x) { return M.exact ? x : x.as_float(); };
    for (auto& v : p.vertices) {
        std::vector<Scalar> w;
        if (p.geometry == Geometry::Hyperbolic) w.push_back(Scalar(1));
        for (auto& x : v) w.push_back(fix(x));
        M.w.push_back(w);
    }
    M.proxy.d = p.d;
    M.proxy.label = p.label;
    if (p.geometry == Geometry::Hyperbolic) {
        for (auto& v : p.vertices) M.proxy.vertices.push_back(v);
    } else {
        std::vector<Scalar> c(p.d + 1, Scalar(0));
        for (auto& w : M.w)
            for (int j = 0; j <= p.d; ++j) c[j] += w[j];
        int drop = 0;
        for (int j = 0; j <= p.d; ++j)
            if (std::fabs(c[j].d()) > std::fabs(c[drop].d())) drop = j;
        for (auto& w : M.w) {
            Scalar s = dot(w, c);
            if (!(Scalar(0) < s) || s.d() < 1e-12) throw GeometryError("spherical vertices do not lie in an open hemisphere");
            Point q;
            for (int j = 0; j <= p.d; ++j)
                if (j != drop) q.push_back(w[j] / s);
            M.proxy.vertices.push_back(q);
        }
    }
    M.L = face_lattice(M.proxy);
    for (auto& f : M.L.facet_list) {
        std::vector<int> pick(p.d);
        std::iota(pick.begin(), pick.end(), 0);
        std::vector<Scalar> m;
        const int nv = static_cast<int>(f.verts.size());
        do {
            std::vector<std::vector<Scalar>> vecs;
            for (int i : pick) vecs.push_back(M.w[f.verts[i]]);
            m = linear_normal(vecs, M.exact);
            bool zero = true;
            for (auto& x : m) zero = zero && std::fabs(x.d()) < 1e-12;
            if (!zero) break;
            m.clear();
        } while (detail::next_combination(pick, nv));
        if (m.empty()) throw GeometryError("degenerate facet in a curved polytope");
        for (auto& w : M.w) {
            Scalar s = dot(m, w);
            if (std::fabs(s.d()) > 1e-12) {
                if (Scalar(0) < s)
                    for (auto& x : m) x = -x;
                break;
            }
        }
        M.m.push_back(m);
    }
    return M;
}

// interior angle in turns between two facets meeting along a codimension-2 face
inline AngleEstimate curved_dihedral(const ConeModel& M, int a, int b)
{
    const auto& x = M.m[a];
    const auto& y = M.m[b];
    Scalar xy = M.form(x, y), xx = M.form(x, x), yy = M.form(y, y);
    if (M.exact) {
        if (xy.q() == 0) return {Scalar::frac(1, 4), 0, kDihedral};
        Rational c2 = xy.q() * xy.q() / (xx.q() * yy.q());
        if (c2 == Rational(1, 4)) return {xy.q() < 0 ? Scalar::frac(1, 6) : Scalar::frac(1, 3), 0, kDihedral};
    }
    double c = std::clamp(-xy.d() / std::sqrt(xx.d() * yy.d()), -1.0, 1.0);
    return {Scalar(std::acos(c) / (2 * std::numbers::pi)), 0, kDihedral};
}

// orthonormal basis of the tangent space at a lifted point, with respect to the geometry's form
inline std::vector<std::vector<double>> tangent_basis(const ConeModel& M, const std::vector<Scalar>& wp)
{
    const int n = M.d + 1;
    auto f = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += (M.g == Geometry::Hyperbolic && j == 0 ? -1 : 1) * a[j] * b[j];
        return s;
    };
    std::vector<double> p;
    for (auto& x : wp) p.push_back(x.d());
    double pp = f(p, p);
    std::vector<std::vector<double>> basis;
    for (int e = 0; e < n && static_cast<int>(basis.size()) < M.d; ++e) {
        std::vector<double> u(n, 0.0);
        u[e] = 1;
        double c = f(u, p) / pp;
        for (int j = 0; j < n; ++j) u[j] -= c * p[j];
        for (auto& b : basis) {
            double cb = f(u, b);
            for (int j = 0; j < n; ++j) u[j] -= cb * b[j];
        }
        double l = f(u, u);
        if (l < 1e-10) continue;
        for (auto& x : u) x /= std::sqrt(l);
        basis.push_back(u);
    }
    return basis;
}

inline AngleEstimate curved_angle(const ConeModel& M, int dim, int idx, const SamplingConfig& cfg)
{
    const int d = M.d;
    const Face& F = M.L.of_dim(dim).at(idx);
    const int codim = d - dim;
    if (codim == 1) return {Scalar::frac(1, 2), 0, kExact};
    if (dim == 0 && M.ideal.at(F.verts[0])) return {Scalar(0), 0, kExact};
    if (codim == 2) return curved_dihedral(M, F.facets.at(0), F.facets.at(1));
    if (!cfg.force_monte_carlo) {
        if (codim == 3) {
            Scalar s(0);
            int m = 0;
            for (auto& G : M.L.of_dim(d - 2)) {
                if (!std::includes(G.verts.begin(), G.verts.end(), F.verts.begin(), F.verts.end())) continue;
                s += curved_dihedral(M, G.facets[0], G.facets[1]).value;
                ++m;
            }
            return {s / Scalar(2) - Scalar::frac(m - 2, 4), 0, kSphericalExcess};
        }
    }
    const int v = F.verts[0];
    auto basis = tangent_basis(M, M.w[v]);
    std::vector<std::vector<double>> normals;
    for (int k : F.facets) {
        std::vector<double> n;
        for (auto& b : basis) {
            double s = 0;
            for (size_t j = 0; j < b.size(); ++j) s += M.m[k][j].d() * b[j];
            n.push_back(s);
        }
        double l = norm(n);
        for (auto& x : n) x /= l;
        normals.push_back(n);
    }
    auto r = cone_fraction(normals, d, cfg, hash_ints(F.verts, 0xC0u + static_cast<unsigned>(dim)));
    return {Scalar(r.p), r.se, kMonteCarlo};
}

template <class F>
double tetra_integral(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c, const Eigen::Vector3d& e,
                      F f)
{
    using G = boost::math::quadrature::gauss<double, 20>;
    Eigen::Matrix3d J;
    J.col(0) = b - a;
    J.col(1) = c - b;
    J.col(2) = e - c;
    const double det = std::fabs(J.determinant());
    if (det == 0) return 0;
    return det * G::integrate(
                     [&](double u) {
                         return u * u * G::integrate(
                                            [&](double v) {
                                                return v * G::integrate(
                                                               [&](double w) {
                                                                   Eigen::Vector3d x = a + u * (J.col(0) + v * (J.col(1) + w * J.col(2)));
                                                                   return f(x);
                                                               },
                                                               0.0, 1.0);
                                            },
                                            0.0, 1.0);
                     },
                     0.0, 1.0);
}

// tetrahedra (centroid, facet centroid, edge) tiling a 3-polytope given by its lattice and coordinates
template <class F>
double polytope_integral(const FaceLattice& L, const std::vector<Eigen::Vector3d>& x, F f)
{
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (auto& p : x) c += p;
    c /= static_cast<double>(x.size());
    double s = 0;
    for (auto& facet : L.of_dim(2)) {
        Eigen::Vector3d fc = Eigen::Vector3d::Zero();
        for (int v : facet.verts) fc += x[v];
        fc /= static_cast<double>(facet.verts.size());
        for (auto& e : L.of_dim(1))
            if (std::includes(facet.verts.begin(), facet.verts.end(), e.verts.begin(), e.verts.end()))
                s += tetra_integral(c, fc, x[e.verts[0]], x[e.verts[1]], f);
    }
    return s;
}

} // namespace detail

struct CurvedAlpha {
    Geometry geometry = Geometry::Euclidean;
    AlphaVector a;  // a[-1] is the normalized volume
    FVector f;
    std::string volume_method;
    bool ideal = false;

    int d() const { return a.d; }
    int epsilon() const { return curvature(geometry); }
    // eps^{d/2}, read as cos(d pi / 2) for hyperbolic inputs
    Scalar eps_half_power() const
    {
        const int d = a.d;
        if (geometry == Geometry::Spherical) return Scalar(1);
        if (geometry == Geometry::Euclidean) return Scalar(0);
        return Scalar(d % 2 == 1 ? 0 : (d % 4 == 0 ? 1 : -1));
    }
    Scalar tilde_m1() const { return eps_half_power() * a[-1]; }
};

inline double normalized_volume_3(const CurvedPolytope& p, const detail::ConeModel& M, const SamplingConfig& cfg, double* se)
{
    *se = 0;
    if (p.geometry == Geometry::Spherical) {
        if (cfg.force_monte_carlo) {
            std::vector<std::vector<double>> normals;
            for (auto& m : M.m) {
                std::vector<double> n;
                for (auto& x : m) n.push_back(x.d());
                double l = norm(n);
                for (auto& x : n) x /= l;
                normals.push_back(n);
            }
            auto r = detail::cone_fraction(normals, 4, cfg, 0x5f3e11ULL);
            *se = r.se;
            return r.p;
        }
        Eigen::Vector4d c = Eigen::Vector4d::Zero();
        std::vector<Eigen::Vector4d> w;
        for (auto& v : M.w) {
            w.push_back({v[0].d(), v[1].d(), v[2].d(), v[3].d()});
            c += w.back();
        }
        c.normalize();
        Eigen::Matrix4d B = Eigen::Matrix4d::Identity();
        B.col(0) = c;
        Eigen::HouseholderQR<Eigen::Matrix4d> qr(B);
        Eigen::Matrix4d Q = qr.householderQ();
        std::vector<Eigen::Vector3d> y;
        for (auto& v : w) {
            Eigen::Vector4d g = v / v.dot(c);
            y.push_back({g.dot(Q.col(1)), g.dot(Q.col(2)), g.dot(Q.col(3))});
        }
        double vol = detail::polytope_integral(M.L, y, [](const Eigen::Vector3d& x) {
            double t = 1 + x.squaredNorm();
            return 1 / (t * t);
        });
        return vol / vol_sphere(3);
    }
    for (char i : p.ideal)
        if (i) throw GuardError("hyperbolic 3-volume with ideal vertices is not supported");
    std::vector<Eigen::Vector3d> x;
    for (auto& v : p.vertices) x.push_back({v[0].d(), v[1].d(), v[2].d()});
    auto dens = [](const Eigen::Vector3d& q) {
        double t = 1 - q.squaredNorm();
        return 1 / (t * t);
    };
    if (cfg.force_monte_carlo) {
        Eigen::Vector3d lo = x[0], hi = x[0];
        for (auto& q : x) {
            lo = lo.cwiseMin(q);
            hi = hi.cwiseMax(q);
        }
        std::mt19937_64 rng(mix_seed(cfg.seed, 0x4b1e1ULL));
        std::uniform_real_distribution<double> U(0.0, 1.0);
        const double box = (hi - lo).prod();
        double s1 = 0, s2 = 0;
        for (long long i = 0; i < cfg.samples; ++i) {
            Eigen::Vector3d q;
            for (int j = 0; j < 3; ++j) q[j] = lo[j] + U(rng) * (hi[j] - lo[j]);
            bool in = true;
            for (auto& fct : M.L.facet_list) in = in && Eigen::Vector3d(fct.normal[0], fct.normal[1], fct.normal[2]).dot(q) <= fct.offset;
            double val = in ? box * dens(q) : 0.0;
            s1 += val;
            s2 += val * val;
        }
        const double n = static_cast<double>(cfg.samples);
        double mean = s1 / n;
        *se = std::sqrt(std::max(0.0, s2 / n - mean * mean) / n) / vol_sphere(3);
        return mean / vol_sphere(3);
    }
    return detail::polytope_integral(M.L, x, dens) / vol_sphere(3);
}

inline CurvedAlpha curved_alpha(const CurvedPolytope& p, const SamplingConfig& cfg = {})
{
    CurvedAlpha R;
    R.geometry = p.geometry;
    for (char i : p.ideal) R.ideal = R.ideal || i;
    if (p.geometry == Geometry::Euclidean) {
        VPolytope q;
        q.d = p.d;
        q.vertices = p.vertices;
        auto af = alpha_f(q, cfg);
        R.a = af.a;
        R.f = af.f;
        R.volume_method = "none";
        return R;
    }
    auto M = detail::cone_model(p);
    const int d = p.d;
    R.f = M.L.f();
    R.a = AlphaVector(d);
    for (int i = 0; i < d; ++i) {
        Scalar s(0);
        double var = 0;
        unsigned how = 0;
        for (int j = 0; j < static_cast<int>(M.L.of_dim(i).size()); ++j) {
            auto e = detail::curved_angle(M, i, j, cfg);
            s += e.value;
            var += e.stderr_ * e.stderr_;
            how |= e.method;
        }
        R.a.at(i) = s;
        R.a.se[i + 1] = std::sqrt(var);
        R.a.how[i + 1] = how ? how : kExact;
    }
    const double pi = std::numbers::pi;
    if (d == 1) {
        auto& a = M.w[0];
        auto& b = M.w[1];
        double len;
        if (p.geometry == Geometry::Spherical) {
            len = std::acos(std::clamp(dot(a, b).d(), -1.0, 1.0));
        } else if (R.ideal) {
            len = std::numeric_limits<double>::infinity();
        } else {
            double c = -M.form(a, b).d() / std::sqrt(M.form(a, a).d() * M.form(b, b).d());
            len = std::acosh(std::max(1.0, c));
        }
        R.a.at(-1) = Scalar(len / vol_sphere(1));
        R.volume_method = "length";
    } else if (d == 2) {
        const long long n = R.f[0];
        Scalar s = R.a[0] / Scalar(2) - Scalar::frac(n - 2, 4);
        R.a.at(-1) = p.geometry == Geometry::Spherical ? s : -s;
        R.a.se[0] = R.a.se[1] / 2;
        R.a.how[0] = R.a.how[1];
        R.volume_method = "angle-excess";
    } else {
        // all facet normals pairwise orthogonal on a simplex: the cone is an orthant
        bool orthant = M.exact && R.f[0] == d + 1;
        for (size_t i = 0; orthant && i < M.m.size(); ++i)
            for (size_t j = i + 1; orthant && j < M.m.size(); ++j) orthant = M.form(M.m[i], M.m[j]).q() == 0;
        if (orthant && p.geometry == Geometry::Spherical) {
            R.a.at(-1) = Scalar(Rational(1, 1 << (d + 1)));
            R.volume_method = "orthant";
        } else {
            double se = 0;
            R.a.at(-1) = Scalar(normalized_volume_3(p, M, cfg, &se));
            R.a.se[0] = se;
            R.a.how[0] = cfg.force_monte_carlo ? kMonteCarlo : kExact;
            R.volume_method = cfg.force_monte_carlo ? "monte-carlo" : "quadrature";
        }
    }
    return R;
}

inline CurvedAlpha spherical_alpha(const CurvedPolytope& p, const SamplingConfig& cfg = {})
{
    if (p.geometry != Geometry::Spherical) throw std::invalid_argument("spherical_alpha needs a spherical polytope");
    return curved_alpha(p, cfg);
}

inline CurvedAlpha hyperbolic_alpha(const CurvedPolytope& p, const SamplingConfig& cfg = {})
{
    if (p.geometry != Geometry::Hyperbolic) throw std::invalid_argument("hyperbolic_alpha needs a hyperbolic polytope");
    return curved_alpha(p, cfg);
}

// sum_{i=0}^{d} (-1)^i alpha_i = eps^{d/2} (1 + (-1)^d) alpha_{-1}
inline RelationReport check_generalized_gram(const CurvedAlpha& c, double tol = -1)
{
    const int d = c.d();
    Scalar lhs(0);
    for (int i = 0; i <= d; ++i) lhs += Scalar(sgn_pow(i)) * c.a[i];
    Scalar rhs = d % 2 == 0 ? Scalar(2) * c.tilde_m1() : Scalar(0);
    double se = angle_char_stderr(c.a);
    if (d % 2 == 0) se = std::sqrt(se * se + 4 * c.a.stderr_at(-1) * c.a.stderr_at(-1));
    if (tol < 0 && !(lhs.exact() && rhs.exact())) tol = std::max(1e-9, 4 * se);
    return make_report("generalized-gram", 0, lhs, rhs, se, tol);
}

// (1 + (-1)^d) 2^{-d-1} = sum_{k=0}^{d} C(d+1,k) (-1/2)^k
inline RelationReport orthant_identity(int d)
{
    if (d < 1) throw std::out_of_range("orthant identity needs d >= 1");
    Rational lhs = Rational(1 + sgn_pow(d)) / Rational(BigInt(1) << (d + 1));
    Rational rhs = 0, pw = 1;
    for (int k = 0; k <= d; ++k) {
        rhs += Rational(binom_big(d + 1, k)) * pw;
        pw *= Rational(-1, 2);
    }
    auto r = make_report("orthant-identity", d, Scalar(lhs), Scalar(rhs), 0, 0);
    return r;
}

inline RelationReport spherical_perles_check(const CurvedPolytope& p, int k, const SamplingConfig& cfg = {})
{
    if (p.geometry != Geometry::Spherical) throw std::invalid_argument("spherical Perles needs a spherical polytope");
    auto c = curved_alpha(p, cfg);
    for (auto& f : detail::cone_model(p).L.facet_list)
        if (static_cast<int>(f.verts.size()) != p.d) throw GuardError("spherical Perles needs a simplicial polytope");
    return check_perles({c.a, c.f}, k, c.a.exact() ? -1 : 1e-9 + 4 * pe_stderr(c.a, k));
}

// ---- normalized Schlafli formula by finite differences ----

struct SchlafliReport {
    int d = 0;
    double h = 0;
    double c = 1;             // calibrated normalization constant
    double delta_volume = 0;  // central difference of alpha_{-1}
    double weighted = 0;      // sum over codim-2 faces of alpha_{-1}(F) times the central difference of alpha(F)
    double ratio = 0, ratio_half = 0;
    int target = -1;          // codim-2 face with the largest angle change
    double target_ratio = 0;  // delta alpha_{-1} / delta alpha(target)
    double target_predicted = 0;
    std::vector<RelationReport> rows;
    bool pass() const
    {
        return std::all_of(rows.begin(), rows.end(), [](auto& r) { return r.pass; });
    }
};

namespace detail {

inline CurvedPolytope moved(const CurvedPolytope& p, int v, const std::vector<double>& dir, double t)
{
    auto q = p;
    Point w;
    double n = 0;
    for (size_t j = 0; j < dir.size(); ++j) {
        double x = p.vertices[v][j].d() + t * dir[j];
        w.push_back(Scalar(x));
        n += x * x;
    }
    if (p.geometry == Geometry::Spherical)
        for (auto& x : w) x = Scalar(x.d() / std::sqrt(n));
    q.vertices[v] = w;
    for (auto& u : q.vertices)
        for (auto& x : u) x = x.as_float();
    return q;
}

// per codim-2 face (by vertex set): angle in turns; alpha_{-1} of the face; its own angle sums alpha_0..alpha_{d-2}
struct Codim2Data {
    std::vector<std::vector<int>> verts;
    std::vector<double> angle, vol;
    std::vector<std::vector<double>> own;
};

inline Codim2Data codim2_data(const CurvedPolytope& p)
{
    auto M = cone_model(p);
    Codim2Data D;
    const int d = p.d;
    for (int j = 0; j < static_cast<int>(M.L.of_dim(d - 2).size()); ++j) {
        auto& F = M.L.of_dim(d - 2)[j];
        D.verts.push_back(F.verts);
        D.angle.push_back(curved_angle(M, d - 2, j, {}).value.d());
        if (d == 2) {
            D.vol.push_back(1.0 / vol_sphere(0));
            D.own.push_back({1.0});
        } else {
            double c = std::clamp(dot(M.w[F.verts[0]], M.w[F.verts[1]]).d(), -1.0, 1.0);
            D.vol.push_back(std::acos(c) / vol_sphere(1));
            D.own.push_back({1.0, 1.0});
        }
    }
    return D;
}

} // namespace detail

struct SchlafliStep {
    double dv = 0, weighted = 0;
    std::vector<double> dk, dk_pred;  // k = 0..d-2
    std::vector<double> dangle;
};

inline SchlafliStep schlafli_step(const CurvedPolytope& p, int v, const std::vector<double>& dir, double h)
{
    auto base = detail::codim2_data(p);
    auto plus = detail::moved(p, v, dir, h), minus = detail::moved(p, v, dir, -h);
    auto ap = curved_alpha(plus), am = curved_alpha(minus);
    auto dp = detail::codim2_data(plus), dm = detail::codim2_data(minus);
    if (dp.verts != base.verts || dm.verts != base.verts) throw GuardError("step changes the combinatorial type");
    SchlafliStep S;
    S.dv = ap.a[-1].d() - am.a[-1].d();
    const int d = p.d;
    S.dk.assign(d - 1, 0.0);
    S.dk_pred.assign(d - 1, 0.0);
    for (int k = 0; k <= d - 2; ++k) S.dk[k] = ap.a[k].d() - am.a[k].d();
    for (size_t j = 0; j < base.verts.size(); ++j) {
        double da = dp.angle[j] - dm.angle[j];
        S.dangle.push_back(da);
        S.weighted += base.vol[j] * da;
        for (int k = 0; k <= d - 2; ++k) S.dk_pred[k] += base.own[j][k] * da;
    }
    return S;
}

// reference spherical triangle used to fix the normalization constant
inline CurvedPolytope schlafli_reference_triangle()
{
    return make_curved(Geometry::Spherical, 2,
                       std::vector<std::vector<double>>{{1, 0.1, 0.2}, {0.2, 1, 0.1}, {0.1, 0.3, 1}}, "reference");
}

inline double schlafli_calibration(double h = 1e-3)
{
    auto p = schlafli_reference_triangle();
    auto S = schlafli_step(p, 0, {0.3, -0.5, 0.2}, h);
    return S.dv / S.weighted;
}

inline SchlafliReport schlafli_fd(const CurvedPolytope& p, int vertex, const std::vector<double>& dir, double h, double c,
                                  double rel_tol = 1e-3)
{
    if (p.geometry != Geometry::Spherical) throw GuardError("the Schlafli check runs on spherical simplices");
    if (p.d < 2 || p.d > 3) throw GuardError("the Schlafli check runs for d = 2 and d = 3");
    if (static_cast<int>(p.vertices.size()) != p.d + 1) throw GuardError("the Schlafli check runs on simplices");
    if (vertex < 0 || vertex > p.d) throw std::out_of_range("vertex index");
    if (static_cast<int>(dir.size()) != p.d + 1) throw std::invalid_argument("direction has the wrong length");
    SchlafliReport R;
    R.d = p.d;
    R.h = h;
    R.c = c;
    auto S = schlafli_step(p, vertex, dir, h);
    auto S2 = schlafli_step(p, vertex, dir, h / 2);
    if (std::fabs(S.weighted) < 1e-14) throw GuardError("the perturbation does not change any codimension-2 angle");
    R.delta_volume = S.dv;
    R.weighted = S.weighted;
    R.ratio = S.dv / S.weighted;
    R.ratio_half = S2.dv / S2.weighted;
    if (std::fabs(R.ratio - R.ratio_half) > rel_tol * std::max(1.0, std::fabs(R.ratio)))
        throw GuardError("step too large: Richardson check disagrees beyond tolerance");
    auto base = detail::codim2_data(p);
    for (size_t j = 0; j < S.dangle.size(); ++j)
        if (R.target < 0 || std::fabs(S.dangle[j]) > std::fabs(S.dangle[R.target])) R.target = static_cast<int>(j);
    R.target_ratio = S.dv / S.dangle[R.target];
    R.target_predicted = c * base.vol[R.target];
    const double eps = 1.0;
    R.rows.push_back(make_report("schlafli", 0, Scalar(S.dv), Scalar(c * eps * S.weighted), 0,
                                 rel_tol * std::fabs(c * eps * S.weighted)));
    bool single = true;
    for (size_t j = 0; j < S.dangle.size(); ++j)
        single = single && (static_cast<int>(j) == R.target || std::fabs(S.dangle[j]) <= 1e-9 * std::fabs(S.dangle[R.target]));
    if (single)
        R.rows.push_back(make_report("schlafli-face", 0, Scalar(R.target_ratio), Scalar(eps * R.target_predicted), 0,
                                     rel_tol * std::fabs(R.target_predicted)));
    for (int k = 0; k <= p.d - 2; ++k)
        R.rows.push_back(make_report("angle-derivative", k, Scalar(S.dk[k]), Scalar(S.dk_pred[k]), 0,
                                     rel_tol * std::max(1e-12, std::fabs(S.dk_pred[k]))));
    return R;
}

// vertex 0 of the orthant 3-simplex tilted toward e2: only the dihedral angle at the edge e3 e4 moves
inline std::vector<double> orthant_edge_direction() { return {0, 1, 0, 0}; }

// ---- hyperbolic Perles cases ----

struct CurvedCase {
    std::string label;
    RelationReport report;
};

struct HyperbolicPerlesSuite {
    std::vector<CurvedCase> cases;
    bool pass() const
    {
        return std::all_of(cases.begin(), cases.end(), [](auto& c) { return c.report.pass; });
    }
    int evidence() const
    {
        return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](auto& c) { return c.report.evidence_only; }));
    }
};

namespace detail {

inline std::vector<CurvedPolytope> pyramid_pieces(const CurvedPolytope& p)
{
    if (p.geometry != Geometry::Hyperbolic) throw std::logic_error("pyramid decomposition is set up in the Klein model");
    auto M = cone_model(p);
    Point c(p.d, Scalar(0.0));
    for (auto& v : p.vertices)
        for (int j = 0; j < p.d; ++j) c[j] += v[j].as_float() / Scalar(static_cast<double>(p.vertices.size()));
    std::vector<CurvedPolytope> out;
    for (auto& f : M.L.facet_list) {
        std::vector<Point> v{c};
        for (int i : f.verts) v.push_back(p.vertices[i]);
        out.push_back(make_curved(Geometry::Hyperbolic, p.d, v, "pyramid"));
    }
    return out;
}

inline std::vector<Point> random_ball_points(int d, int n, double r_lo, double r_hi, std::mt19937_64& rng, bool on_sphere)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> U(r_lo, r_hi);
    std::vector<Point> out;
    const double r = U(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<double> x(d);
        double l = 0;
        for (auto& c : x) {
            c = g(rng);
            l += c * c;
        }
        l = std::sqrt(l);
        double rr = on_sphere ? r : U(rng);
        Point q;
        for (auto& c : x) q.push_back(Scalar(rr * c / l));
        out.push_back(q);
    }
    return out;
}

} // namespace detail

inline HyperbolicPerlesSuite hyperbolic_perles_cases(const SamplingConfig& cfg = {})
{
    HyperbolicPerlesSuite S;
    auto add = [&](std::string label, RelationReport r) { S.cases.push_back({std::move(label), std::move(r)}); };
    auto perles = [&](const CurvedAlpha& c, int k, double tol) { return check_perles({c.a, c.f}, k, tol); };
    std::mt19937_64 rng(mix_seed(cfg.seed, 0x4879ULL));

    auto seg = make_curved(Geometry::Hyperbolic, 1, std::vector<std::vector<double>>{{-0.5}, {0.7}}, "segment");
    add("segment", perles(curved_alpha(seg), 0, -1));

    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int n = 3; n <= 8; ++n)
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<double> ang;
            for (int i = 0; i < n; ++i) ang.push_back(2 * std::numbers::pi * U(rng));
            std::sort(ang.begin(), ang.end());
            const double r = rep == 2 ? 1.0 : 0.2 + 0.75 * U(rng);
            std::vector<std::vector<double>> v;
            for (double a : ang) v.push_back({r * std::cos(a), r * std::sin(a)});
            CurvedPolytope p;
            try {
                p = make_curved(Geometry::Hyperbolic, 2, v, std::to_string(n) + "-gon");
                auto c = curved_alpha(p);
                std::string lbl = std::to_string(n) + "-gon" + (rep == 2 ? " (ideal)" : "");
                add(lbl + " k=0", perles(c, 0, 1e-12));
                add(lbl + " k=1", perles(c, 1, 1e-12));
                add(lbl + " deficit", check_generalized_gram(c, 1e-12));
            } catch (const GeometryError&) {
                --rep;
            }
        }

    for (int rep = 0; rep < 4; ++rep) {
        auto pts = detail::random_ball_points(3, 4, 0.2, 0.9, rng, false);
        try {
            auto p = make_curved(Geometry::Hyperbolic, 3, pts, "simplex");
            auto c = curved_alpha(p);
            for (int k = 0; k <= 2; ++k) add("3-simplex k=" + std::to_string(k), perles(c, k, 1e-12));
            add("3-simplex gram", check_generalized_gram(c, 1e-12));
        } catch (const GeometryError&) {
            --rep;
        }
    }

    for (int rep = 0; rep < 3; ++rep) {
        const int n = 6 + rep;
        auto pts = detail::random_ball_points(3, n, 0.3, 0.9, rng, true);
        try {
            auto p = make_curved(Geometry::Hyperbolic, 3, pts, "simplicial");
            auto c = curved_alpha(p);
            std::string lbl = "simplicial " + std::to_string(n) + "-vertex";
            add(lbl + " k=2", perles(c, 2, 1e-12));
            add(lbl + " k=1", perles(c, 1, 1e-12));
            SamplingConfig mc = cfg;
            mc.force_monte_carlo = true;
            mc.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(rep));
            auto cm = curved_alpha(p, mc);
            auto r = perles(cm, 0, -1);
            r.evidence_only = true;
            add(lbl + " k=0 (monte carlo)", r);

            // pyramid decomposition from the Klein centroid
            auto pieces = detail::pyramid_pieces(p);
            std::vector<Scalar> sum(3, Scalar(0.0));
            std::vector<long long> fsum(4, 0);
            for (auto& q : pieces) {
                auto cq = curved_alpha(q);
                for (int j = 0; j < 3; ++j) sum[j] += cq.a[j];
                for (int j = 0; j <= 3; ++j) fsum[j] += cq.f[j];
            }
            for (int j = 0; j < 3; ++j)
                add(lbl + " fact1 j=" + std::to_string(j),
                    make_report("fact1", j, c.a[j], sum[j] - Scalar(c.f[j - 1]), 0, 1e-9));
            for (int j = 0; j <= 3; ++j)
                add(lbl + " fact2 j=" + std::to_string(j),
                    make_report("fact2", j, Scalar(fsum[j]), (binom(3, j) + binom(3, j + 1)) * Scalar(c.f[2]), 0, 0));
        } catch (const GeometryError&) {
            --rep;
        }
    }

    auto poly = klein_regular_polygon(7, 0.6, 0.3);
    auto cp = curved_alpha(poly);
    std::vector<Scalar> sum(2, Scalar(0.0));
    std::vector<long long> fsum(3, 0);
    for (auto& q : detail::pyramid_pieces(poly)) {
        auto cq = curved_alpha(q);
        for (int j = 0; j < 2; ++j) sum[j] += cq.a[j];
        for (int j = 0; j <= 2; ++j) fsum[j] += cq.f[j];
    }
    for (int j = 0; j < 2; ++j)
        add("7-gon fact1 j=" + std::to_string(j), make_report("fact1", j, cp.a[j], sum[j] - Scalar(cp.f[j - 1]), 0, 1e-9));
    for (int j = 0; j <= 2; ++j)
        add("7-gon fact2 j=" + std::to_string(j),
            make_report("fact2", j, Scalar(fsum[j]), (binom(2, j) + binom(2, j + 1)) * Scalar(cp.f[1]), 0, 0));
    return S;
}

// ---- gluing curved polygons ----

// polygons of one geometry meeting edge to edge
struct CurvedComplex {
    Geometry geometry = Geometry::Euclidean;
    std::vector<CurvedPolytope> cells;
};

struct CurvedComplexChars {
    AlphaVector a;  // a[-1] summed over cells
    FVector f;
    Scalar chi_alpha;
    Scalar gram_lhs;  // chi_alpha - eps^{d/2}(1 + (-1)^d) alpha_{-1}
    double interior_deviation = 0;
};

namespace detail {

struct CurvedIndex {
    std::vector<Point> verts;
    int id(const Point& p)
    {
        for (int u = 0; u < static_cast<int>(verts.size()); ++u) {
            double m = 0;
            for (size_t j = 0; j < p.size(); ++j) m = std::max(m, std::fabs(p[j].d() - verts[u][j].d()));
            if (m <= 1e-9) return u;
        }
        verts.push_back(p);
        return static_cast<int>(verts.size()) - 1;
    }
};

// faces of a 2-complex keyed by global vertex sets; per face the incident (cell, angle)
struct CurvedFaces {
    std::map<std::vector<int>, std::vector<Scalar>> angles;
    std::map<std::vector<int>, int> cells_on;
};

inline CurvedFaces curved_faces(const std::vector<CurvedPolytope>& cells, CurvedIndex& idx)
{
    CurvedFaces F;
    for (auto& p : cells) {
        if (p.d != 2) throw GuardError("curved complexes are supported for d = 2");
        std::vector<int> g;
        for (auto& v : p.vertices) g.push_back(idx.id(v));
        auto c = curved_alpha(p);
        if (p.geometry == Geometry::Euclidean) throw GuardError("curved complexes need a curved geometry");
        auto M = cone_model(p);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < static_cast<int>(M.L.of_dim(i).size()); ++j) {
                std::vector<int> key;
                for (int v : M.L.of_dim(i)[j].verts) key.push_back(g[v]);
                std::sort(key.begin(), key.end());
                F.angles[key].push_back(curved_angle(M, i, j, {}).value);
            }
        (void)c;
    }
    return F;
}

} // namespace detail

inline CurvedComplexChars curved_complex_chars(const CurvedComplex& C)
{
    detail::CurvedIndex idx;
    auto F = detail::curved_faces(C.cells, idx);
    CurvedComplexChars R;
    R.a = AlphaVector(2);
    R.f = FVector(2);
    R.f.at(2) = 0;
    std::set<std::vector<int>> bd;
    for (auto& [k, a] : F.angles)
        if (k.size() == 2) {
            if (a.size() > 2) throw GeometryError("an edge lies in more than two polygons");
            if (a.size() == 1) {
                bd.insert(k);
                bd.insert({k[0]});
                bd.insert({k[1]});
            }
        }
    for (auto& [k, a] : F.angles) {
        Scalar s(0);
        for (auto& x : a) s += x;
        const int dim = static_cast<int>(k.size()) - 1;
        if (bd.count(k)) {
            R.a.at(dim) += s;
            ++R.f.at(dim);
        } else {
            R.interior_deviation = std::max(R.interior_deviation, std::fabs(s.d() - 1));
        }
    }
    Scalar vol(0);
    for (auto& p : C.cells) vol += curved_alpha(p).a[-1];
    R.a.at(-1) = vol;
    R.a.at(2) = Scalar(static_cast<long long>(C.cells.size()));
    R.chi_alpha = angle_char(R.a);
    CurvedAlpha tmp;
    tmp.geometry = C.geometry;
    tmp.a = R.a;
    R.gram_lhs = R.chi_alpha - Scalar(2) * tmp.tilde_m1();
    return R;
}

struct CurvedGlueReport {
    GluingSpec spec;
    CurvedComplexChars a, b, c;
    RelationReport report;
};

inline CurvedGlueReport curved_glue_check(const CurvedComplex& A, const CurvedComplex& B,
                                          std::optional<GluingKind> expected = std::nullopt)
{
    if (A.geometry != B.geometry) throw GluingError("the parts live in different geometries");
    CurvedGlueReport R;
    R.a = curved_complex_chars(A);
    R.b = curved_complex_chars(B);
    CurvedComplex C{A.geometry, A.cells};
    C.cells.insert(C.cells.end(), B.cells.begin(), B.cells.end());
    R.c = curved_complex_chars(C);
    detail::CurvedIndex idx;
    auto FA = detail::curved_faces(A.cells, idx);
    auto FB = detail::curved_faces(B.cells, idx);
    std::vector<std::vector<int>> keys;
    for (auto& [k, a] : FA.angles)
        if (FB.angles.count(k)) keys.push_back(k);
    std::map<std::vector<int>, int> pos;
    for (size_t i = 0; i < keys.size(); ++i) pos[keys[i]] = static_cast<int>(i);
    FacePoset P;
    for (auto& k : keys) {
        P.dim.push_back(static_cast<int>(k.size()) - 1);
        std::vector<int> sub;
        if (k.size() == 2)
            for (int v : k)
                if (pos.count({v})) sub.push_back(pos[{v}]);
        P.sub.push_back(sub);
    }
    R.spec = classify(P, 2);
    if (!R.spec.classifiable()) throw GluingError("unclassifiable intersection: " + R.spec.reason);
    if (expected && *expected != R.spec.kind)
        throw GluingError("classification mismatch: computed " + kind_name(R.spec.kind) + ", expected " + kind_name(*expected));
    const int d = 2;
    Scalar pred = R.a.gram_lhs + R.b.gram_lhs;
    if (R.spec.kind != GluingKind::LowerDim)
        pred = pred - Scalar(R.spec.balls * sgn_pow(d - 1)) + Scalar(R.spec.annuli * (1 + sgn_pow(d))) -
               Scalar(R.spec.closed_chi);
    R.report = make_report("curved-gluing", 0, R.c.gram_lhs, pred, 0, 1e-9);
    return R;
}

} // namespace anglesum
