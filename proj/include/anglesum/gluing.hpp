#pragma once

#include "relations.hpp"
#include "sampling.hpp"
#include "voxel.hpp"

#include <optional>
#include <random>

namespace anglesum {

// an abstract intersection complex: face dimensions and codimension-one faces
struct FacePoset {
    std::vector<int> dim;
    std::vector<std::vector<int>> sub;
};

enum class GluingKind { Balls, Annuli, Closed, Mixed, LowerDim, Unclassifiable };

inline std::string kind_name(GluingKind k)
{
    switch (k) {
    case GluingKind::Balls: return "balls";
    case GluingKind::Annuli: return "annuli";
    case GluingKind::Closed: return "closed";
    case GluingKind::Mixed: return "mixed";
    case GluingKind::LowerDim: return "lower-dim";
    case GluingKind::Unclassifiable: return "unclassifiable";
    }
    return "?";
}

struct IntersectionComponent {
    std::string kind;  // ball, annulus, closed, lower
    long long chi = 0;
    int boundary_parts = 0;
    long long faces = 0;
};

struct GluingSpec {
    GluingKind kind = GluingKind::Unclassifiable;
    int d = 0;
    int m = 0;   // components
    int l = -1;  // dimension of the intersection
    long long balls = 0, annuli = 0, closed = 0;
    long long closed_chi = 0;  // summed Euler characteristic of the closed components
    long long chi = 0;
    std::vector<IntersectionComponent> components;
    std::string reason;
    std::vector<char> on_boundary;     // per intersection face: lies in the boundary of the intersection
    std::vector<long long> f_int, f_bd; // indexed 0..d-1

    bool classifiable() const { return kind != GluingKind::Unclassifiable; }
    std::string str() const
    {
        std::string s = kind_name(kind);
        if (kind == GluingKind::LowerDim) return s + "(l=" + std::to_string(l) + ")";
        if (kind == GluingKind::Unclassifiable) return s + (reason.empty() ? "" : ": " + reason);
        if (kind == GluingKind::Mixed)
            return s + "(balls=" + std::to_string(balls) + ",annuli=" + std::to_string(annuli) +
                   ",closed=" + std::to_string(closed) + ")";
        return s + "(m=" + std::to_string(m) + ")";
    }
};

inline GluingSpec unclassifiable(GluingSpec s, std::string why)
{
    s.kind = GluingKind::Unclassifiable;
    s.reason = std::move(why);
    return s;
}

inline GluingSpec classify(const FacePoset& I, int d)
{
    const int n = static_cast<int>(I.dim.size());
    if (n == 0) throw GluingError("the complexes do not meet");
    GluingSpec S;
    S.d = d;
    S.f_int.assign(d, 0);
    S.f_bd.assign(d, 0);
    S.on_boundary.assign(n, 0);
    std::vector<std::vector<int>> sup(n);
    UnionFind comp(n);
    for (int i = 0; i < n; ++i)
        for (int j : I.sub[i]) {
            sup[j].push_back(i);
            comp.unite(i, j);
        }
    for (int i = 0; i < n; ++i) {
        S.l = std::max(S.l, I.dim[i]);
        S.chi += sgn_pow(I.dim[i]);
    }
    std::set<int> roots;
    for (int i = 0; i < n; ++i) roots.insert(comp.find(i));
    S.m = static_cast<int>(roots.size());

    auto count = [&] {
        for (int i = 0; i < n; ++i) {
            if (I.dim[i] >= d) continue;
            (S.on_boundary[i] ? S.f_bd : S.f_int)[I.dim[i]]++;
        }
    };
    if (S.l <= d - 2) {
        S.kind = GluingKind::LowerDim;
        S.on_boundary.assign(n, 1);
        count();
        for (int r : roots) {
            IntersectionComponent c{"lower", 0, 0, 0};
            for (int i = 0; i < n; ++i)
                if (comp.find(i) == r) {
                    c.chi += sgn_pow(I.dim[i]);
                    ++c.faces;
                }
            S.components.push_back(c);
        }
        return S;
    }
    for (int i = 0; i < n; ++i)
        if (sup[i].empty() && I.dim[i] != d - 1) {
            count();
            return unclassifiable(S, "intersection mixes dimensions");
        }
    // boundary of the intersection: closure of ridges lying in exactly one facet
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
        if (I.dim[i] == d - 2) {
            if (sup[i].size() > 2) {
                count();
                return unclassifiable(S, "a ridge lies in more than two facets of the intersection");
            }
            if (sup[i].size() == 1) stack.push_back(i);
        }
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        if (S.on_boundary[i]) continue;
        S.on_boundary[i] = 1;
        for (int j : I.sub[i]) stack.push_back(j);
    }
    count();
    if (d - 1 == 2) {
        for (int v = 0; v < n; ++v) {
            if (I.dim[v] != 0) continue;
            std::map<int, int> node;
            for (int e : sup[v]) node.emplace(e, static_cast<int>(node.size()));
            UnionFind lk(node.size());
            std::vector<int> deg(node.size(), 0);
            std::set<int> faces;
            for (int e : sup[v])
                for (int f : sup[e]) faces.insert(f);
            bool bad = false;
            for (int f : faces) {
                std::vector<int> at;
                for (int e : I.sub[f])
                    if (node.count(e)) at.push_back(node[e]);
                if (at.size() != 2) {
                    bad = true;
                    break;
                }
                lk.unite(at[0], at[1]);
                ++deg[at[0]];
                ++deg[at[1]];
            }
            std::set<int> lr;
            for (size_t a = 0; a < node.size(); ++a) {
                lr.insert(lk.find(static_cast<int>(a)));
                if (deg[a] > 2) bad = true;
            }
            if (bad || lr.size() > 1) return unclassifiable(S, "intersection is pinched at a vertex");
        }
    }
    for (int r : roots) {
        IntersectionComponent c;
        UnionFind bd(n);
        for (int i = 0; i < n; ++i) {
            if (comp.find(i) != r) continue;
            c.chi += sgn_pow(I.dim[i]);
            ++c.faces;
            if (S.on_boundary[i])
                for (int j : I.sub[i])
                    if (S.on_boundary[j]) bd.unite(i, j);
        }
        std::set<int> br;
        for (int i = 0; i < n; ++i)
            if (comp.find(i) == r && S.on_boundary[i]) br.insert(bd.find(i));
        c.boundary_parts = static_cast<int>(br.size());
        if (d - 1 == 0) c.kind = "ball";
        else if (d - 1 == 1) {
            if (c.boundary_parts == 2 && c.chi == 1) c.kind = "ball";
            else if (c.boundary_parts == 0 && c.chi == 0) c.kind = "closed";
        } else if (d - 1 == 2) {
            if (c.boundary_parts == 1 && c.chi == 1) c.kind = "ball";
            else if (c.boundary_parts == 2 && c.chi == 0) c.kind = "annulus";
            else if (c.boundary_parts == 0) c.kind = "closed";
        } else {
            return unclassifiable(S, "component classification is implemented for d <= 3");
        }
        if (c.kind.empty()) return unclassifiable(S, "a component is neither a ball, an annulus nor closed");
        S.components.push_back(c);
        if (c.kind == "ball") ++S.balls;
        else if (c.kind == "annulus") ++S.annuli;
        else {
            ++S.closed;
            S.closed_chi += c.chi;
        }
    }
    const long long m = S.m;
    S.kind = S.balls == m ? GluingKind::Balls : S.annuli == m ? GluingKind::Annuli : S.closed == m ? GluingKind::Closed
                                                                                      : GluingKind::Mixed;
    return S;
}

struct Characteristics {
    long long chi_boundary = 0;
    Scalar chi_alpha;
};

// the gluing theorems, component by component
inline std::optional<Characteristics> predict(const Characteristics& a, const Characteristics& b, const GluingSpec& s)
{
    if (!s.classifiable()) return std::nullopt;
    const int d = s.d;
    Characteristics c;
    if (s.kind == GluingKind::LowerDim) {
        c.chi_boundary = a.chi_boundary + b.chi_boundary - s.chi;
        c.chi_alpha = a.chi_alpha + b.chi_alpha;
        return c;
    }
    c.chi_boundary = a.chi_boundary + b.chi_boundary - s.balls * (1 + sgn_pow(d - 1)) - 2 * s.closed_chi;
    c.chi_alpha = a.chi_alpha + b.chi_alpha - Scalar(s.balls * sgn_pow(d - 1)) + Scalar(s.annuli * (1 + sgn_pow(d))) -
                  Scalar(s.closed_chi);
    return c;
}

// ---- voxel gluing ----

inline FacePoset voxel_intersection(const VoxelComplex& a, const VoxelComplex& b, std::vector<FaceKey>& keys)
{
    auto fa = all_faces(a);
    auto fb = all_faces(b);
    keys.clear();
    for (auto& [k, f] : fa)
        if (fb.count(k)) keys.push_back(k);
    std::map<FaceKey, int> idx;
    for (size_t i = 0; i < keys.size(); ++i) idx[keys[i]] = static_cast<int>(i);
    FacePoset P;
    for (auto& k : keys) {
        P.dim.push_back(std::popcount(k.second));
        std::vector<int> s;
        for (auto& q : subfaces(k))
            if (auto it = idx.find(q); it != idx.end()) s.push_back(it->second);
        P.sub.push_back(s);
    }
    return P;
}

struct VoxelGluing {
    VoxelComplex c;
    GluingSpec spec;
    VoxelChars a, b, cc;  // cell resolution
    std::vector<RelationReport> valuations;
    std::optional<Characteristics> predicted;
    bool agree = false;
    bool half_ratio_applies = false;
    bool half_ratio = false;

    bool valuations_pass() const
    {
        return std::all_of(valuations.begin(), valuations.end(), [](auto& r) { return r.pass; });
    }
};

inline bool half_ratio_holds(const VoxelChars& c) { return c.chi_alpha == Scalar::frac(c.chi_boundary, 2); }

inline VoxelGluing glue(const VoxelComplex& a, const VoxelComplex& b)
{
    if (a.d != b.d) throw GluingError("complexes live in different dimensions");
    for (auto& c : b.cells)
        if (a.has(c)) throw GluingError("the interiors of the complexes overlap");
    VoxelGluing R;
    std::vector<FaceKey> keys;
    auto P = voxel_intersection(a, b, keys);
    R.spec = classify(P, a.d);
    std::vector<Lattice> cells(a.cells.begin(), a.cells.end());
    cells.insert(cells.end(), b.cells.begin(), b.cells.end());
    R.c = make_voxel(a.d, cells, a.label + "+" + b.label, false);
    if (R.spec.classifiable() && R.spec.kind != GluingKind::LowerDim) {
        for (size_t i = 0; i < keys.size(); ++i)
            if (!R.spec.on_boundary[i] && make_face(R.c, keys[i].first, keys[i].second).boundary()) {
                R.spec = unclassifiable(R.spec, "an interior face of the intersection stays on the boundary");
                break;
            }
    }
    R.a = voxel_chars(a, Resolution::Cells);
    R.b = voxel_chars(b, Resolution::Cells);
    R.cc = voxel_chars(R.c, Resolution::Cells);
    const int d = a.d;
    for (int i = 0; i < d; ++i) {
        long long rhs = R.a.f[i] + R.b.f[i] - 2 * R.spec.f_int[i] - R.spec.f_bd[i];
        R.valuations.push_back(make_report("f-valuation", i, Scalar(R.cc.f[i]), Scalar(rhs), 0, 0));
        Scalar ar = R.a.a[i] + R.b.a[i] - Scalar(R.spec.f_int[i]);
        R.valuations.push_back(make_report("a-valuation", i, R.cc.a[i], ar, 0, 0));
    }
    R.predicted = predict({R.a.chi_boundary, R.a.chi_alpha}, {R.b.chi_boundary, R.b.chi_alpha}, R.spec);
    if (R.predicted)
        R.agree = R.predicted->chi_boundary == R.cc.chi_boundary && R.predicted->chi_alpha == R.cc.chi_alpha;
    R.half_ratio_applies = d % 2 == 1 && R.spec.classifiable() && R.spec.kind != GluingKind::LowerDim &&
                           half_ratio_holds(R.a) && half_ratio_holds(R.b);
    R.half_ratio = half_ratio_holds(R.cc);
    return R;
}

// ---- randomized audit ----

namespace detail {

inline std::vector<Lattice> grow(int d, const Lattice& start, int n, const std::vector<int>& box, std::mt19937_64& rng,
                                 const std::function<bool(const Lattice&)>& allowed)
{
    std::set<Lattice> s{start};
    std::vector<Lattice> order{start};
    for (int tries = 0; static_cast<int>(order.size()) < n && tries < 50 * n; ++tries) {
        Lattice c = order[rng() % order.size()];
        int j = static_cast<int>(rng() % d);
        c[j] += (rng() & 1) ? 1 : -1;
        if (c[j] < 0 || c[j] >= box[j] || s.count(c) || !allowed(c)) continue;
        s.insert(c);
        order.push_back(c);
    }
    return order;
}

} // namespace detail

// a random facet-connected voxel set grown from the middle of a side^d box
inline VoxelComplex random_voxel(int d, int n, std::mt19937_64& rng, int side = 5)
{
    std::vector<int> box(d, side);
    auto cells = detail::grow(d, Lattice(d, side / 2), n, box, rng, [](const Lattice&) { return true; });
    return make_voxel(d, cells, "random");
}

struct HalfRatioSample {
    VoxelChars chars;
    long long cells = 0;
    bool holds = false;
};

// evidence only: chi_alpha against chi(boundary)/2 on random embedded voxel complexes
inline std::vector<HalfRatioSample> half_ratio_experiment(int d, int count, std::uint64_t seed)
{
    std::vector<HalfRatioSample> out;
    for (int t = 0; t < count; ++t) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
        auto v = random_voxel(d, 2 + static_cast<int>(rng() % 40), rng);
        HalfRatioSample s;
        s.chars = voxel_chars(v, Resolution::Cells);
        s.cells = static_cast<long long>(v.cells.size());
        s.holds = half_ratio_holds(s.chars);
        out.push_back(s);
    }
    return out;
}

struct GluingAudit {
    int total = 0;
    int classifiable = 0;
    int agree = 0;
    int half_ratio_checked = 0;
    int half_ratio_pass = 0;
    int valuation_pass = 0;
    std::map<std::string, int> by_kind;
    std::vector<std::string> failures;

    bool pass() const
    {
        return classifiable > 0 && agree == classifiable && half_ratio_pass == half_ratio_checked &&
               valuation_pass == classifiable;
    }
};

// splits, lower-dimensional contacts, enclosed cavities and stacked frames in d = 2 and d = 3
inline GluingAudit random_gluing_audit(int count, std::uint64_t seed)
{
    GluingAudit A;
    std::mt19937_64 rng(mix_seed(seed, 0x61756469ULL));
    for (int t = 0; A.total < count && t < 20 * count; ++t) {
        const int d = (t % 4 == 3) ? 2 : 3;
        const int mode = d == 2 ? static_cast<int>((t / 4) % 3) : static_cast<int>((t / 4) % 4);
        std::vector<int> box(d, 4);
        std::optional<VoxelComplex> va, vb;
        for (int attempt = 0; attempt < 200 && !vb; ++attempt) {
            auto any = [](const Lattice&) { return true; };
            Lattice s0(d);
            for (auto& x : s0) x = static_cast<int>(rng() % 4);
            if (mode == 0) {
                auto S = detail::grow(d, s0, 4 + static_cast<int>(rng() % 12), box, rng, any);
                std::set<Lattice> inS(S.begin(), S.end());
                auto B = detail::grow(d, S[rng() % S.size()], 1 + static_cast<int>(rng() % (S.size() / 2 + 1)), box, rng,
                                      [&](const Lattice& c) { return inS.count(c) > 0; });
                std::set<Lattice> inB(B.begin(), B.end());
                std::vector<Lattice> Acells;
                for (auto& c : S)
                    if (!inB.count(c)) Acells.push_back(c);
                if (Acells.empty() || !strongly_connected({Acells.begin(), Acells.end()})) continue;
                va = make_voxel(d, Acells, "A");
                vb = make_voxel(d, B, "B");
            } else if (mode == 1) {
                auto S = detail::grow(d, s0, 2 + static_cast<int>(rng() % 8), box, rng, any);
                std::set<Lattice> inS(S.begin(), S.end());
                auto touches = [&](const Lattice& c) {
                    if (inS.count(c)) return true;
                    for (int j = 0; j < d; ++j)
                        for (int s : {-1, 1}) {
                            Lattice n = c;
                            n[j] += s;
                            if (inS.count(n)) return true;
                        }
                    return false;
                };
                Lattice c = S[rng() % S.size()];
                for (auto& x : c) x += static_cast<int>(rng() % 3) - 1;
                bool ok = true;
                for (int j = 0; j < d; ++j) ok = ok && c[j] >= 0 && c[j] < box[j];
                if (!ok || touches(c)) continue;
                auto B = detail::grow(d, c, 1 + static_cast<int>(rng() % 6), box, rng,
                                      [&](const Lattice& x) { return !touches(x); });
                va = make_voxel(d, S, "A");
                vb = make_voxel(d, B, "B");
            } else if (mode == 3) {
                // two stacked frames with random thickening meet along an annulus
                const int a = 3 + static_cast<int>(rng() % 2), b = 3 + static_cast<int>(rng() % 2);
                auto frame = [&](int z) {
                    std::vector<Lattice> out;
                    for (int x = 0; x < a; ++x)
                        for (int y = 0; y < b; ++y)
                            if (x == 0 || y == 0 || x == a - 1 || y == b - 1) out.push_back({x, y, z});
                    return out;
                };
                auto thicken = [&](std::vector<Lattice> cells, int z) {
                    std::set<Lattice> in(cells.begin(), cells.end());
                    const int extra = static_cast<int>(rng() % 5);
                    for (int e = 0; e < extra; ++e) {
                        Lattice c = cells[rng() % cells.size()];
                        c[2] = z;
                        if (!in.count(c)) {
                            in.insert(c);
                            cells.push_back(c);
                        }
                    }
                    return cells;
                };
                va = make_voxel(d, thicken(frame(1), 0), "A");
                vb = make_voxel(d, thicken(frame(2), 3), "B");
            } else {
                std::vector<int> inner(d, 2);
                Lattice c0(d);
                for (auto& x : c0) x = static_cast<int>(rng() % 2);
                auto B = detail::grow(d, c0, 1 + static_cast<int>(rng() % (1 << d)), inner, rng, any);
                for (auto& c : B)
                    for (auto& x : c) ++x;
                std::set<Lattice> inB(B.begin(), B.end());
                std::vector<Lattice> Acells;
                for (int m = 0; m < (1 << (2 * d)); ++m) {
                    Lattice c(d);
                    for (int j = 0; j < d; ++j) c[j] = (m >> (2 * j)) & 3;
                    if (!inB.count(c)) Acells.push_back(c);
                }
                va = make_voxel(d, Acells, "A");
                vb = make_voxel(d, B, "B");
            }
        }
        if (!vb) continue;
        VoxelGluing g;
        try {
            g = glue(*va, *vb);
        } catch (const GluingError&) {
            continue;
        }
        ++A.total;
        ++A.by_kind[kind_name(g.spec.kind)];
        if (!g.spec.classifiable()) continue;
        ++A.classifiable;
        if (g.agree) ++A.agree;
        else A.failures.push_back("prediction mismatch: " + g.spec.str());
        if (g.valuations_pass()) ++A.valuation_pass;
        else A.failures.push_back("valuation mismatch: " + g.spec.str());
        if (g.half_ratio_applies) {
            ++A.half_ratio_checked;
            if (g.half_ratio) ++A.half_ratio_pass;
            else A.failures.push_back("half ratio fails: " + g.spec.str());
        }
    }
    return A;
}

} // namespace anglesum
