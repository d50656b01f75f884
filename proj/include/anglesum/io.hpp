#pragma once

#include "cellcomplex.hpp"
#include "constructions.hpp"
#include "curved.hpp"
#include "fixtures.hpp"

#include <json.hpp>

#include <fstream>

namespace anglesum {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// integers and "p/q" strings stay exact; JSON floats become float64
inline Scalar scalar_from_json(const Json& j)
{
    if (j.is_number_integer()) return Scalar(Rational(j.get<long long>()));
    if (j.is_number_float()) return Scalar(j.get<double>());
    if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
    throw ParseError("expected a number or a rational string, got " + j.dump());
}

inline Json scalar_to_json(const Scalar& s)
{
    if (!s.exact()) return s.d();
    const Rational& q = s.q();
    if (denominator(q) == 1 && boost::multiprecision::abs(numerator(q)) < (BigInt(1) << 62))
        return numerator(q).convert_to<long long>();
    return s.str();
}

namespace detail {

inline Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

inline std::vector<Point> json_points(const Json& j, int width)
{
    if (!j.contains("vertices") || !j["vertices"].is_array()) throw ParseError("missing 'vertices' array");
    std::vector<Point> out;
    for (auto& row : j["vertices"]) {
        if (!row.is_array()) throw ParseError("each vertex must be an array of coordinates");
        if (static_cast<int>(row.size()) != width)
            throw ParseError("vertex " + row.dump() + " has " + std::to_string(row.size()) + " coordinates, expected " +
                             std::to_string(width));
        Point p;
        for (auto& x : row) p.push_back(scalar_from_json(x));
        out.push_back(p);
    }
    if (out.empty()) throw ParseError("no vertices");
    return out;
}

inline int json_dim(const Json& j)
{
    if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("missing integer 'dim'");
    int d = j["dim"].get<int>();
    if (d < 0) throw ParseError("'dim' must be non-negative");
    return d;
}

} // namespace detail

// {"dim": d, "vertices": [[...], ...], "label": optional}
inline VPolytope polytope_from_json(const std::string& text)
{
    auto j = detail::parse_json(text);
    if (!j.is_object()) throw ParseError("polytope JSON must be an object");
    VPolytope p;
    p.d = detail::json_dim(j);
    p.vertices = detail::json_points(j, p.d);
    p.label = j.value("label", std::string("input"));
    return p;
}

// {"geometry": "spherical" | "hyperbolic" | "euclidean", "dim": d, "vertices": [...]}
inline CurvedPolytope curved_from_json(const std::string& text)
{
    auto j = detail::parse_json(text);
    if (!j.is_object()) throw ParseError("curved polytope JSON must be an object");
    if (!j.contains("geometry") || !j["geometry"].is_string()) throw ParseError("missing 'geometry'");
    auto g = parse_geometry(j["geometry"].get<std::string>());
    int d = detail::json_dim(j);
    auto pts = detail::json_points(j, g == Geometry::Spherical ? d + 1 : d);
    return make_curved(g, d, pts, j.value("label", std::string("input")));
}

inline Json polytope_to_json(const VPolytope& p)
{
    Json j;
    j["dim"] = p.d;
    j["label"] = p.label;
    Json v = Json::array();
    for (auto& q : p.vertices) {
        Json r = Json::array();
        for (auto& x : q) r.push_back(scalar_to_json(x));
        v.push_back(r);
    }
    j["vertices"] = v;
    return j;
}

namespace detail {

inline int parse_param(const std::string& name, const std::string& prefix, int lo, int hi)
{
    int v = lo - 1;
    try {
        size_t used = 0;
        v = std::stoi(name.substr(prefix.size()), &used);
        if (used != name.size() - prefix.size()) v = lo - 1;
    } catch (const std::exception&) {
    }
    if (v < lo || v > hi)
        throw ParseError("'" + name + "': parameter must be an integer in " + std::to_string(lo) + ".." + std::to_string(hi));
    return v;
}

} // namespace detail

inline std::vector<std::string> polytope_fixture_names()
{
    return {"cube", "tetrahedron", "t1_3", "cube:d", "simplex:d", "cross:d"};
}

inline bool is_polytope_fixture(const std::string& n)
{
    return n == "cube" || n == "tetrahedron" || n == "t1_3" || n.rfind("cube:", 0) == 0 || n.rfind("simplex:", 0) == 0 ||
           n.rfind("cross:", 0) == 0;
}

inline VPolytope polytope_fixture(const std::string& n)
{
    if (n == "cube") return unit_cube(3);
    if (n == "tetrahedron") return regular_tetrahedron();
    if (n == "t1_3") return t13_two_tetrahedra();
    if (n.rfind("cube:", 0) == 0) return unit_cube(detail::parse_param(n, "cube:", 1, 10));
    if (n.rfind("simplex:", 0) == 0) return standard_simplex(detail::parse_param(n, "simplex:", 1, 10));
    if (n.rfind("cross:", 0) == 0) return cross_polytope(detail::parse_param(n, "cross:", 1, 6));
    throw ParseError("unknown polytope fixture '" + n + "'");
}

inline std::vector<std::string> curved_fixture_names()
{
    return {"octant", "orthant:d", "ideal-triangle", "klein:n:r", "reference-triangle"};
}

inline CurvedPolytope curved_fixture(const std::string& n)
{
    if (n == "octant") return octant_triangle();
    if (n == "ideal-triangle") return ideal_triangle();
    if (n == "reference-triangle") return schlafli_reference_triangle();
    if (n.rfind("orthant:", 0) == 0) return orthant_simplex(detail::parse_param(n, "orthant:", 1, 3));
    if (n.rfind("klein:", 0) == 0) {
        auto rest = n.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw ParseError("klein fixture is klein:n:r");
        int k = detail::parse_param("klein:" + rest.substr(0, colon), "klein:", 3, 64);
        double r = 0;
        try {
            r = std::stod(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw ParseError("klein radius must be a number");
        }
        if (!(r > 0 && r <= 1)) throw GeometryError("klein radius must lie in (0, 1]");
        return klein_regular_polygon(k, r);
    }
    throw ParseError("unknown curved fixture '" + n + "'");
}

inline Json alpha_to_json(const AlphaVector& a, bool with_volume)
{
    Json j;
    Json v = Json::array(), se = Json::array(), how = Json::array();
    for (int i = with_volume ? -1 : 0; i <= a.d; ++i) {
        v.push_back(scalar_to_json(a[i]));
        se.push_back(a.stderr_at(i));
        how.push_back(method_names(a.how[i + 1]));
    }
    j["from"] = with_volume ? -1 : 0;
    j["values"] = v;
    j["stderr"] = se;
    j["method"] = how;
    return j;
}

inline Json f_to_json(const FVector& f)
{
    Json v = Json::array();
    for (int i = 0; i <= f.d; ++i) v.push_back(f[i]);
    return v;
}

inline Json report_to_json(const RelationReport& r)
{
    Json j;
    j["relation"] = r.relation;
    j["k"] = r.k;
    j["lhs"] = scalar_to_json(r.lhs);
    j["rhs"] = scalar_to_json(r.rhs);
    j["residual"] = scalar_to_json(r.residual);
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (r.evidence_only) j["evidence_only"] = true;
    return j;
}

inline std::string alpha_f_str(const AlphaVector& a, const FVector& f)
{
    std::string s = "(";
    for (int i = 0; i <= a.d; ++i) s += (i ? ", " : "") + a[i].str();
    s += " | ";
    for (int i = 0; i <= f.d; ++i) s += (i ? ", " : "") + std::to_string(f[i]);
    return s + ")";
}

} // namespace anglesum
