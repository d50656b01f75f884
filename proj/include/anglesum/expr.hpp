#pragma once

#include "constructions.hpp"

#include <memory>
#include <regex>
#include <sstream>

namespace anglesum {

enum class BaseKind { Point, Segment, Triangle, Square };
enum class OpKind { Prism, Pyr, Pyr0, PyrInf, Stellar };

struct ConstructionExpr {
    bool is_base = true;
    BaseKind base = BaseKind::Point;
    OpKind op = OpKind::Prism;
    Scalar height = Scalar(1);  // Pyr
    int face_dim = 0;            // Stellar
    int repeat = 1;              // Power(op, k, e)
    std::shared_ptr<ConstructionExpr> child;

    int dim() const
    {
        if (is_base) return base == BaseKind::Point ? 0 : base == BaseKind::Segment ? 1 : 2;
        int c = child->dim();
        return op == OpKind::Stellar ? c : c + repeat;
    }
    bool limiting() const
    {
        if (is_base) return false;
        return op == OpKind::Pyr0 || op == OpKind::PyrInf || child->limiting();
    }
    std::string str() const
    {
        if (is_base) {
            const char* n[] = {"point", "seg", "tri", "sq"};
            return n[static_cast<int>(base)];
        }
        std::string s;
        switch (op) {
        case OpKind::Prism: s = "B*"; break;
        case OpKind::Pyr: s = "P[" + height.str() + "]"; break;
        case OpKind::Pyr0: s = "P0"; break;
        case OpKind::PyrInf: s = "Pinf"; break;
        case OpKind::Stellar: s = "St[" + std::to_string(face_dim) + "]"; break;
        }
        if (repeat != 1) s += "^" + std::to_string(repeat);
        return s + " " + child->str();
    }
};

using ExprPtr = std::shared_ptr<ConstructionExpr>;

inline ExprPtr make_base(BaseKind b)
{
    auto e = std::make_shared<ConstructionExpr>();
    e->base = b;
    return e;
}

inline ExprPtr make_op(OpKind op, ExprPtr child, int repeat = 1)
{
    auto e = std::make_shared<ConstructionExpr>();
    e->is_base = false;
    e->op = op;
    e->child = std::move(child);
    e->repeat = repeat;
    return e;
}

// leftmost operator is outermost: "Pinf^2 P0^2 point" = Pinf(Pinf(P0(P0(point))))
inline ExprPtr parse_expr(const std::string& text)
{
    static const std::regex tok(R"(\s*(B\*|Pinf|P0|P\[[^\]]*\]|St\[[^\]]*\]|P|point|seg|tri|sq)(\^(\d+))?\s*)");
    std::vector<ExprPtr> ops;
    ExprPtr base;
    auto it = text.cbegin();
    std::smatch m;
    while (it != text.cend()) {
        if (std::all_of(it, text.cend(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) break;
        if (!std::regex_search(it, text.cend(), m, tok, std::regex_constants::match_continuous))
            throw ParseError("unexpected input at '" + std::string(it, text.cend()) + "'");
        if (base) throw ParseError("base polytope must be the last token");
        std::string t = m[1];
        int rep = m[3].matched ? std::stoi(m[3]) : 1;
        if (m[3].matched && rep < 1) throw ParseError("exponent must be positive");
        if (t == "point" || t == "seg" || t == "tri" || t == "sq") {
            if (m[3].matched) throw ParseError("exponent on a base polytope");
            base = make_base(t == "point" ? BaseKind::Point : t == "seg" ? BaseKind::Segment
                             : t == "tri"                    ? BaseKind::Triangle
                                                              : BaseKind::Square);
        } else {
            auto e = std::make_shared<ConstructionExpr>();
            e->is_base = false;
            e->repeat = rep;
            if (t == "B*") e->op = OpKind::Prism;
            else if (t == "Pinf") e->op = OpKind::PyrInf;
            else if (t == "P0") e->op = OpKind::Pyr0;
            else if (t == "P") e->op = OpKind::Pyr;
            else if (t[0] == 'P') {
                e->op = OpKind::Pyr;
                e->height = Scalar(parse_rational(t.substr(2, t.size() - 3)));
                if (!(Scalar(0) < e->height)) throw ParseError("pyramid height must be positive");
            } else {
                e->op = OpKind::Stellar;
                try {
                    e->face_dim = std::stoi(t.substr(3, t.size() - 4));
                } catch (const std::exception&) {
                    throw ParseError("bad stellar face dimension in " + t);
                }
            }
            ops.push_back(e);
        }
        it = m[0].second;
    }
    if (!base) throw ParseError("expression has no base polytope");
    ExprPtr cur = base;
    for (auto i = ops.rbegin(); i != ops.rend(); ++i) {
        (*i)->child = cur;
        cur = *i;
    }
    return cur;
}

struct EvalResult {
    FVector f;
    std::optional<AlphaFVector> af;  // set when computable by recursion or from the geometry
    std::optional<VPolytope> geometry;
    bool exact = false;
};

namespace detail {

struct Node {
    FVector f;
    std::optional<AlphaFVector> af;
    std::optional<VPolytope> geo;
};

inline AlphaFVector need_af(Node& n, const SamplingConfig& cfg)
{
    if (!n.af) {
        if (!n.geo) throw GeometryError("angle sums unavailable: no recursion and no realization");
        n.af = AlphaFVector{angle_sums(*n.geo, face_lattice(*n.geo), cfg), n.f};
    }
    return *n.af;
}

inline Node eval_node(const ConstructionExpr& e, const SamplingConfig& cfg)
{
    Node n;
    if (e.is_base) {
        switch (e.base) {
        case BaseKind::Point: n.geo = base_point(); break;
        case BaseKind::Segment: n.geo = base_segment(); break;
        case BaseKind::Triangle: n.geo = base_triangle(); break;
        case BaseKind::Square: n.geo = base_square(); break;
        }
        n.f = n.geo->d == 0 ? FVector(0) : face_lattice(*n.geo).f();
        if (n.geo->d == 0) n.af = AlphaFVector{AlphaVector(0), FVector(0)};
        else n.af = combinatorial_af(n.f);
        return n;
    }
    Node c = eval_node(*e.child, cfg);
    for (int r = 0; r < e.repeat; ++r) {
        Node x;
        switch (e.op) {
        case OpKind::Prism:
            x.af = prism_af(need_af(c, cfg));
            x.f = x.af->f;
            if (c.geo) x.geo = prism_geometric(*c.geo);
            break;
        case OpKind::PyrInf:
            x.af = pyr_inf_af(need_af(c, cfg));
            x.f = x.af->f;
            break;
        case OpKind::Pyr0:
            x.af = pyr_zero_af(c.f);
            x.f = x.af->f;
            break;
        case OpKind::Pyr:
            x.f = pyramid_f(c.f);
            if (c.geo) x.geo = pyramid_geometric(*c.geo, e.height);
            x.af = combinatorial_af(x.f);
            if (!x.geo && !x.af) throw GeometryError("P[h] over a limiting node has no realization");
            break;
        case OpKind::Stellar: {
            if (!c.geo) throw GeometryError("stellar subdivision of a limiting node has no realization");
            auto L = face_lattice(*c.geo);
            if (e.face_dim < 0 || e.face_dim >= c.geo->d) throw GeometryError("stellar face dimension out of range");
            x.geo = stellar_subdivision(*c.geo, L, {e.face_dim, 0});
            x.f = face_lattice(*x.geo).f();
            x.af = combinatorial_af(x.f);
            break;
        }
        }
        c = std::move(x);
    }
    return c;
}

} // namespace detail

inline EvalResult eval_expr(const ConstructionExpr& e, const SamplingConfig& cfg = {}, bool want_alpha = true)
{
    auto n = detail::eval_node(e, cfg);
    EvalResult r;
    r.f = n.f;
    if (want_alpha) detail::need_af(n, cfg);
    r.af = n.af;
    r.geometry = n.geo;
    r.exact = r.af && r.af->a.exact();
    return r;
}

inline EvalResult eval_expr(const std::string& text, const SamplingConfig& cfg = {}, bool want_alpha = true)
{
    return eval_expr(*parse_expr(text), cfg, want_alpha);
}

} // namespace anglesum
