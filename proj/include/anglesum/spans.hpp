#pragma once

#include "expr.hpp"
#include "relations.hpp"

namespace anglesum {

enum class FamilyKind { Simplices, Simplicial, General };

inline FamilyKind parse_family(const std::string& s)
{
    if (s == "simplices" || s == "simplex") return FamilyKind::Simplices;
    if (s == "simplicial") return FamilyKind::Simplicial;
    if (s == "general") return FamilyKind::General;
    throw ParseError("unknown family '" + s + "' (simplices | simplicial | general)");
}

inline int family_target(FamilyKind k, int d)
{
    switch (k) {
    case FamilyKind::Simplices: return (d - 1) / 2;
    case FamilyKind::Simplicial: return d - 1;
    case FamilyKind::General: return 2 * d - 3;
    }
    return 0;
}

struct FamilyMember {
    std::string label;  // construction expression or fixture name
    AlphaFVector af;
};

inline std::string power(const std::string& op, int k)
{
    if (k <= 0) return "";
    return k == 1 ? op + " " : op + "^" + std::to_string(k) + " ";
}

inline std::vector<std::string> simplex_family_exprs(int d)
{
    if (d < 1) throw GuardError("simplex family needs d >= 1");
    std::vector<std::string> out;
    if (d % 2 == 1)
        for (int i = 0; 2 * i <= d - 1; ++i) out.push_back(power("Pinf", d - 1 - 2 * i) + power("P0", 2 * i) + "seg");
    else
        for (int i = 0; 2 * i <= d - 2; ++i) out.push_back(power("Pinf", d - 2 - 2 * i) + power("P0", 2 * i) + "tri");
    return out;
}

inline std::vector<std::string> general_family_exprs(int d)
{
    if (d < 2) throw GuardError("general family needs d >= 2");
    std::vector<std::string> out;
    for (int i = 0; i <= d - 2; ++i) {
        out.push_back(power("Pinf", d - 2 - i) + power("B*", i) + "tri");
        out.push_back(power("Pinf", d - 2 - i) + power("B*", i + 1) + "seg");
    }
    return out;
}

inline std::vector<FamilyMember> eval_family(const std::vector<std::string>& exprs)
{
    std::vector<FamilyMember> out;
    for (auto& e : exprs) {
        auto r = eval_expr(e);
        if (!r.exact) throw std::logic_error("family member is not exact: " + e);
        out.push_back({e, *r.af});
    }
    return out;
}

inline std::vector<FamilyMember> simplex_family(int d) { return eval_family(simplex_family_exprs(d)); }
inline std::vector<FamilyMember> general_family(int d) { return eval_family(general_family_exprs(d)); }

inline std::vector<FamilyMember> simplicial_family(int d, const SamplingConfig& cfg = {})
{
    if (d < 2 || d > 5) throw GuardError("simplicial family is realized only for 2 <= d <= 5");
    auto out = simplex_family(d);
    for (int k = 1; k <= d / 2; ++k) {
        VPolytope p = (d == 3 && k == 1) ? t13_two_tetrahedra() : stellar_simplex(d, k);
        auto L = face_lattice(p);
        out.push_back({"T_" + std::to_string(k) + "^" + std::to_string(d), {angle_sums(p, L, cfg), L.f()}});
    }
    return out;
}

// alpha_0..alpha_{d-1}; with_f appends f_0..f_{d-1}
inline std::vector<Scalar> flatten(const AlphaFVector& af, bool with_f)
{
    std::vector<Scalar> v;
    for (int i = 0; i <= af.d() - 1; ++i) v.push_back(af.a[i]);
    if (with_f)
        for (int i = 0; i <= af.d() - 1; ++i) v.push_back(Scalar(af.f[i]));
    return v;
}

inline bool family_uses_f(FamilyKind k) { return k != FamilyKind::Simplices; }

struct RankResult {
    std::vector<std::vector<Scalar>> vectors;
    int affine_dim = 0;
    bool exact = true;
    std::vector<double> singular;
};

// tol < 0 requests exact elimination; all entries must then be exact
inline RankResult affine_rank(const std::vector<std::vector<Scalar>>& vs, double tol = -1)
{
    if (vs.empty()) throw std::invalid_argument("affine_rank needs at least one vector");
    for (auto& v : vs)
        if (v.size() != vs[0].size()) throw std::invalid_argument("affine_rank: vectors differ in length");
    RankResult R;
    R.vectors = vs;
    bool all_exact = true;
    for (auto& v : vs)
        for (auto& x : v) all_exact = all_exact && x.exact();
    if (tol < 0) {
        if (!all_exact) throw std::invalid_argument("affine_rank: float entries need an explicit tolerance");
        Mat<Rational> rows;
        for (size_t i = 1; i < vs.size(); ++i) {
            std::vector<Rational> r;
            for (size_t j = 0; j < vs[0].size(); ++j) r.push_back(vs[i][j].q() - vs[0][j].q());
            rows.push_back(r);
        }
        R.affine_dim = bareiss_rank(rows);
        R.exact = true;
        return R;
    }
    Mat<double> rows;
    for (size_t i = 1; i < vs.size(); ++i) {
        std::vector<double> r;
        for (size_t j = 0; j < vs[0].size(); ++j) r.push_back(vs[i][j].d() - vs[0][j].d());
        rows.push_back(r);
    }
    auto s = svd_rank(rows, tol);
    R.affine_dim = s.rank;
    R.singular = s.singular;
    R.exact = false;
    return R;
}

struct SpanReport {
    FamilyKind kind{};
    int d = 0;
    std::vector<FamilyMember> members;
    RankResult rank;
    int target = 0;
    bool pass() const { return rank.affine_dim == target; }
};

inline SpanReport span_report(FamilyKind kind, int d, const SamplingConfig& cfg = {}, double svd_tol = 1e-4)
{
    SpanReport R;
    R.kind = kind;
    R.d = d;
    R.target = family_target(kind, d);
    if (kind == FamilyKind::Simplices) R.members = simplex_family(d);
    else if (kind == FamilyKind::General) R.members = general_family(d);
    else R.members = simplicial_family(d, cfg);
    std::vector<std::vector<Scalar>> vs;
    bool ex = true;
    for (auto& m : R.members) {
        vs.push_back(flatten(m.af, family_uses_f(kind)));
        ex = ex && m.af.a.exact();
    }
    R.rank = affine_rank(vs, ex ? -1 : svd_tol);
    return R;
}

// ---- backing off limiting constructions ----

// replaces Pinf by P[t^j] and P0 by P[t^-j] where j counts limiting levels from the inside
inline ExprPtr geometric_approximant(const ConstructionExpr& e, const Rational& N, const Rational& delta, int& inf_level,
                                     int& zero_level)
{
    if (e.is_base) return make_base(e.base);
    ExprPtr c = geometric_approximant(*e.child, N, delta, inf_level, zero_level);
    for (int r = 0; r < e.repeat; ++r) {
        if (e.op == OpKind::PyrInf || e.op == OpKind::Pyr0) {
            auto p = make_op(OpKind::Pyr, c);
            Rational h = 1;
            if (e.op == OpKind::PyrInf)
                for (int j = 0; j <= inf_level; ++j) h *= N;
            else
                for (int j = 0; j <= zero_level; ++j) h *= delta;
            (e.op == OpKind::PyrInf ? inf_level : zero_level)++;
            p->height = Scalar(h);
            c = p;
        } else {
            auto p = std::make_shared<ConstructionExpr>(e);
            p->repeat = 1;
            p->child = c;
            c = p;
        }
    }
    return c;
}

inline ExprPtr geometric_approximant(const ConstructionExpr& e, const Rational& N, const Rational& delta)
{
    int a = 0, b = 0;
    return geometric_approximant(e, N, delta, a, b);
}

struct BackingOffReport {
    FamilyKind kind{};
    int d = 0;
    double eps = 0;
    Rational N, delta;
    int steps = 0;
    std::vector<std::string> approximants;
    std::vector<AlphaFVector> geometric;
    double max_deviation = 0;
    int exact_rank = 0;
    RankResult float_rank;
    bool converged = false;
    bool pass() const { return converged && float_rank.affine_dim == exact_rank; }
};

inline BackingOffReport backing_off(FamilyKind kind, int d, double eps, const SamplingConfig& cfg = {},
                                    int max_steps = 24, double svd_tol = 1e-6)
{
    if (kind == FamilyKind::Simplicial) throw GuardError("backing off applies to the simplex and general families");
    if (d > 5) throw GuardError("backing off is realized only for d <= 5");
    auto exprs = kind == FamilyKind::Simplices ? simplex_family_exprs(d) : general_family_exprs(d);
    auto limits = eval_family(exprs);
    const bool wf = family_uses_f(kind);
    std::vector<std::vector<Scalar>> lv;
    for (auto& m : limits) lv.push_back(flatten(m.af, wf));
    BackingOffReport R;
    R.kind = kind;
    R.d = d;
    R.eps = eps;
    R.exact_rank = affine_rank(lv).affine_dim;
    R.N = 2;
    R.delta = Rational(1, 2);
    for (int step = 0; step < max_steps; ++step) {
        R.steps = step + 1;
        R.approximants.clear();
        R.geometric.clear();
        R.max_deviation = 0;
        std::vector<std::vector<Scalar>> gv;
        for (size_t m = 0; m < exprs.size(); ++m) {
            auto g = geometric_approximant(*parse_expr(exprs[m]), R.N, R.delta);
            R.approximants.push_back(g->str());
            auto r = eval_expr(*g, cfg);
            R.geometric.push_back(*r.af);
            auto v = flatten(*r.af, wf);
            for (size_t j = 0; j < v.size(); ++j)
                R.max_deviation = std::max(R.max_deviation, std::fabs(v[j].d() - lv[m][j].d()));
            gv.push_back(v);
        }
        std::vector<std::vector<Scalar>> fv;
        for (auto& v : gv) {
            std::vector<Scalar> w;
            for (auto& x : v) w.push_back(x.as_float());
            fv.push_back(w);
        }
        R.float_rank = affine_rank(fv, svd_tol);
        if (R.max_deviation <= eps) {
            R.converged = true;
            return R;
        }
        R.N *= 2;
        R.delta /= 2;
    }
    return R;
}

// alternating sums of the pyramid preimage for Q and for its prism B*Q
struct PreimageReport {
    std::vector<long long> fbar, fbar_prism;
    long long alt_q = 0, alt_prism = 0;
    bool pass() const { return alt_prism == alt_q + 1; }
};

inline long long alt_sum_from0(const std::vector<long long>& fbar_m1)
{
    long long s = 0;
    for (size_t i = 1; i < fbar_m1.size(); ++i) s += ((i - 1) % 2 == 0 ? 1 : -1) * fbar_m1[i];
    return s;
}

inline PreimageReport preimage_check(const AlphaFVector& q)
{
    PreimageReport R;
    R.fbar = pyramid_preimage(q.f);
    R.fbar_prism = pyramid_preimage(prism_af(q).f);
    R.alt_q = alt_sum_from0(R.fbar);
    R.alt_prism = alt_sum_from0(R.fbar_prism);
    return R;
}

} // namespace anglesum
