#pragma once

#include "vectors.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace anglesum {

using Lattice = std::vector<int>;

// unit cubes [x, x+1]^d named by their lowest corner
struct VoxelComplex {
    int d = 0;
    std::set<Lattice> cells;
    std::string label;

    bool has(const Lattice& c) const { return cells.count(c) > 0; }
    long long size() const { return static_cast<long long>(cells.size()); }
};

inline constexpr int kMaxVoxelDim = 6;

inline bool strongly_connected(const std::set<Lattice>& cells)
{
    if (cells.empty()) return false;
    std::set<Lattice> seen{*cells.begin()};
    std::deque<Lattice> q{*cells.begin()};
    while (!q.empty()) {
        Lattice c = q.front();
        q.pop_front();
        for (size_t j = 0; j < c.size(); ++j)
            for (int s : {-1, 1}) {
                Lattice n = c;
                n[j] += s;
                if (cells.count(n) && seen.insert(n).second) q.push_back(n);
            }
    }
    return seen.size() == cells.size();
}

inline VoxelComplex make_voxel(int d, const std::vector<Lattice>& cells, std::string label = "",
                               bool require_connected = true)
{
    if (d < 1 || d > kMaxVoxelDim) throw GuardError("voxel complexes need 1 <= d <= " + std::to_string(kMaxVoxelDim));
    VoxelComplex v;
    v.d = d;
    v.label = std::move(label);
    for (auto& c : cells) {
        if (static_cast<int>(c.size()) != d) throw ParseError("voxel cell has the wrong number of coordinates");
        v.cells.insert(c);
    }
    if (v.cells.empty()) throw GeometryError("voxel complex is empty");
    if (require_connected && !strongly_connected(v.cells))
        throw GeometryError("voxel complex is not connected through shared facets");
    return v;
}

inline VoxelComplex refine(const VoxelComplex& v)
{
    std::vector<Lattice> out;
    for (auto& c : v.cells)
        for (int m = 0; m < (1 << v.d); ++m) {
            Lattice s(v.d);
            for (int j = 0; j < v.d; ++j) s[j] = 2 * c[j] + ((m >> j) & 1);
            out.push_back(s);
        }
    return make_voxel(v.d, out, v.label.empty() ? "" : v.label + "/2", false);
}

// ---- file format: "dim d" then one cell per line ----

inline VoxelComplex parse_voxel(const std::string& text, const std::string& label = "")
{
    std::istringstream in(text);
    std::string line;
    int d = -1;
    std::vector<Lattice> cells;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (d < 0) {
            if (first != "dim" || !(ls >> d)) throw ParseError("voxel file must start with 'dim d'");
            continue;
        }
        Lattice c;
        try {
            c.push_back(std::stoi(first));
        } catch (const std::exception&) {
            throw ParseError("voxel line " + std::to_string(lineno) + ": expected integers");
        }
        int x;
        while (ls >> x) c.push_back(x);
        if (!ls.eof()) throw ParseError("voxel line " + std::to_string(lineno) + ": expected integers");
        if (static_cast<int>(c.size()) != d)
            throw ParseError("voxel line " + std::to_string(lineno) + ": expected " + std::to_string(d) + " coordinates");
        cells.push_back(c);
    }
    if (d < 0) throw ParseError("voxel file has no 'dim' header");
    return make_voxel(d, cells, label);
}

inline VoxelComplex read_voxel_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_voxel(ss.str(), path);
}

inline std::string format_voxel(const VoxelComplex& v)
{
    std::ostringstream os;
    os << "dim " << v.d << "\n";
    for (auto& c : v.cells) {
        for (size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j];
        os << "\n";
    }
    return os.str();
}

// ---- lattice faces ----

// the face p + [0,1]^axes; transverse incidence pattern over the 2^m cells around it
struct VoxelFace {
    Lattice p;
    unsigned axes = 0;
    int dim = 0;
    std::vector<int> trans;
    std::uint64_t pattern = 0;
    int count = 0;

    int slots() const { return 1 << trans.size(); }
    bool boundary() const { return count > 0 && count < slots(); }
    Scalar angle() const { return Scalar::frac(count, slots()); }
    bool invariant(int t) const
    {
        for (int b = 0; b < slots(); ++b)
            if (((pattern >> b) & 1) != ((pattern >> (b ^ (1 << t))) & 1)) return false;
        return true;
    }
    int invariant_axes() const
    {
        int n = 0;
        for (int t = 0; t < static_cast<int>(trans.size()); ++t) n += invariant(t);
        return n;
    }
    // both the occupied and the empty cells form connected sets of the 2^m block
    bool manifold() const
    {
        for (int side : {0, 1}) {
            std::vector<int> members;
            for (int b = 0; b < slots(); ++b)
                if (static_cast<int>((pattern >> b) & 1) == side) members.push_back(b);
            if (members.empty()) continue;
            std::set<int> seen{members[0]};
            std::deque<int> q{members[0]};
            while (!q.empty()) {
                int b = q.front();
                q.pop_front();
                for (size_t t = 0; t < trans.size(); ++t) {
                    int n = b ^ (1 << t);
                    if (static_cast<int>((pattern >> n) & 1) == side && seen.insert(n).second) q.push_back(n);
                }
            }
            if (seen.size() != members.size()) return false;
        }
        return true;
    }
};

using FaceKey = std::pair<Lattice, unsigned>;

inline VoxelFace make_face(const VoxelComplex& v, const Lattice& p, unsigned axes)
{
    VoxelFace f;
    f.p = p;
    f.axes = axes;
    for (int j = 0; j < v.d; ++j) {
        if ((axes >> j) & 1) ++f.dim;
        else f.trans.push_back(j);
    }
    for (int b = 0; b < f.slots(); ++b) {
        Lattice c = p;
        for (size_t t = 0; t < f.trans.size(); ++t) c[f.trans[t]] += ((b >> t) & 1) - 1;
        if (v.has(c)) {
            f.pattern |= std::uint64_t{1} << b;
            ++f.count;
        }
    }
    return f;
}

// every lattice face of every cell, keyed by (p, axes)
inline std::map<FaceKey, VoxelFace> all_faces(const VoxelComplex& v)
{
    std::set<FaceKey> keys;
    const unsigned full = (1u << v.d) - 1;
    for (auto& c : v.cells)
        for (unsigned S = 0; S <= full; ++S) {
            std::vector<int> free;
            for (int j = 0; j < v.d; ++j)
                if (!((S >> j) & 1)) free.push_back(j);
            for (int e = 0; e < (1 << free.size()); ++e) {
                Lattice p = c;
                for (size_t t = 0; t < free.size(); ++t) p[free[t]] += (e >> t) & 1;
                keys.insert({p, S});
            }
        }
    std::map<FaceKey, VoxelFace> out;
    for (auto& k : keys) out.emplace(k, make_face(v, k.first, k.second));
    return out;
}

inline std::map<FaceKey, VoxelFace> boundary_faces(const VoxelComplex& v)
{
    auto all = all_faces(v);
    std::map<FaceKey, VoxelFace> out;
    for (auto& [k, f] : all)
        if (f.boundary()) out.emplace(k, f);
    return out;
}

// codimension-one faces of a lattice face
inline std::vector<FaceKey> subfaces(const FaceKey& k)
{
    std::vector<FaceKey> out;
    const auto& [p, S] = k;
    for (size_t j = 0; j < p.size(); ++j)
        if ((S >> j) & 1) {
            unsigned T = S & ~(1u << j);
            out.push_back({p, T});
            Lattice q = p;
            ++q[j];
            out.push_back({q, T});
        }
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

enum class Resolution { Cells, Coarse };

struct BoundaryComponent {
    long long chi = 0;
    Scalar chi_alpha;  // angle characteristic restricted to the faces of this component
    long long faces = 0;
};

struct VoxelChars {
    Resolution resolution = Resolution::Cells;
    AlphaVector a;
    FVector f;  // of the boundary complex; f_d = 0
    Scalar chi_alpha;
    long long chi_boundary = 0;
    std::vector<BoundaryComponent> components;  // largest first
};

// boundary components by shared faces
inline std::vector<BoundaryComponent> boundary_components(const std::map<FaceKey, VoxelFace>& bf)
{
    std::map<FaceKey, int> idx;
    for (auto& [k, f] : bf) idx.emplace(k, static_cast<int>(idx.size()));
    UnionFind uf(idx.size());
    for (auto& [k, f] : bf)
        for (auto& s : subfaces(k)) {
            auto it = idx.find(s);
            if (it != idx.end()) uf.unite(idx[k], it->second);
        }
    std::map<int, BoundaryComponent> by_root;
    for (auto& [k, f] : bf) {
        auto& c = by_root[uf.find(idx[k])];
        c.chi += sgn_pow(f.dim);
        c.chi_alpha += Scalar(sgn_pow(f.dim)) * f.angle();
        ++c.faces;
    }
    std::vector<BoundaryComponent> out;
    for (auto& [r, c] : by_root) out.push_back(c);
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.faces > b.faces; });
    return out;
}

inline VoxelChars cell_chars(const VoxelComplex& v, const std::map<FaceKey, VoxelFace>& bf)
{
    VoxelChars R;
    R.resolution = Resolution::Cells;
    R.a = AlphaVector(v.d);
    R.f = FVector(v.d);
    R.f.at(v.d) = 0;
    for (auto& [k, f] : bf) {
        R.a.at(f.dim) += f.angle();
        ++R.f.at(f.dim);
    }
    R.a.at(v.d) = Scalar(v.size());
    R.chi_alpha = angle_char(R.a);
    R.chi_boundary = static_cast<long long>(euler_char(R.f, v.d - 1).d());
    R.components = boundary_components(bf);
    return R;
}

// ---- flats: maximal connected boundary regions of constant local shape ----

struct Flat {
    int k = 0;  // dimension of the flat
    Scalar angle;
    long long chi_c = 0;  // alternating count of the open lattice faces inside the flat
    std::vector<FaceKey> faces;

    // Euler characteristic of the open flat normalized so that an open k-cell gives 1
    long long chi_int() const { return sgn_pow(k) * chi_c; }
};

inline std::vector<Flat> flats(const VoxelComplex& v, const std::map<FaceKey, VoxelFace>& bf)
{
    std::map<FaceKey, int> idx;
    std::vector<const VoxelFace*> fs;
    std::vector<int> kdim;
    for (auto& [k, f] : bf) {
        idx.emplace(k, static_cast<int>(fs.size()));
        fs.push_back(&f);
        kdim.push_back(f.dim + f.invariant_axes());
    }
    UnionFind uf(fs.size());
    for (auto& [k, f] : bf)
        for (auto& s : subfaces(k)) {
            auto it = idx.find(s);
            if (it != idx.end() && kdim[it->second] == kdim[idx[k]]) uf.unite(idx[k], it->second);
        }
    std::map<int, Flat> by;
    for (auto& [k, f] : bf) {
        int i = idx[k];
        auto [it, fresh] = by.try_emplace(uf.find(i));
        Flat& F = it->second;
        if (fresh) {
            F.k = kdim[i];
            F.angle = f.angle();
        } else if (!(F.angle == f.angle())) {
            throw std::logic_error("flat with non-constant angle");
        }
        F.chi_c += sgn_pow(f.dim);
        F.faces.push_back(k);
    }
    (void)v;
    std::vector<Flat> out;
    for (auto& [r, F] : by) out.push_back(std::move(F));
    std::stable_sort(out.begin(), out.end(), [](const Flat& a, const Flat& b) { return a.k > b.k; });
    return out;
}

inline std::vector<Flat> flats(const VoxelComplex& v) { return flats(v, boundary_faces(v)); }

inline Scalar flats_angle_char(const std::vector<Flat>& fl)
{
    Scalar s(0);
    for (auto& F : fl) s += Scalar(sgn_pow(F.k) * F.chi_int()) * F.angle;
    return s;
}

// ---- coarse resolution: flats cut into convex pieces ----

namespace detail {

using P2 = std::pair<long long, long long>;

inline long long cross(P2 o, P2 a, P2 b)
{
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

inline bool proper_cross(P2 a, P2 b, P2 c, P2 d)
{
    auto s = [](long long x) { return (x > 0) - (x < 0); };
    return s(cross(a, b, c)) * s(cross(a, b, d)) < 0 && s(cross(c, d, a)) * s(cross(c, d, b)) < 0;
}

struct PlanarFlat {
    std::set<P2> squares;  // lower-left corners of unit squares
    std::set<P2> corners;  // complex vertices lying in the plane

    int mask(P2 v) const
    {
        auto [u, w] = v;
        int m = 0;
        if (squares.count({u - 1, w - 1})) m |= 1;
        if (squares.count({u, w - 1})) m |= 2;
        if (squares.count({u - 1, w})) m |= 4;
        if (squares.count({u, w})) m |= 8;
        return m;
    }
    // a rational point num/den lies in the interior of the flat
    bool interior(long long nx, long long ny, long long den) const
    {
        auto cover = [&](long long n) {
            long long fl = n >= 0 ? n / den : -((-n + den - 1) / den);
            if (fl * den == n) return std::vector<long long>{fl - 1, fl};
            return std::vector<long long>{fl};
        };
        for (long long x : cover(nx))
            for (long long y : cover(ny))
                if (!squares.count({x, y})) return false;
        return true;
    }
    bool visible(P2 r, P2 w, const std::vector<std::pair<P2, P2>>& diags) const
    {
        long long dx = w.first - r.first, dy = w.second - r.second;
        long long L = std::lcm(std::max(1LL, std::llabs(dx)), std::max(1LL, std::llabs(dy)));
        for (long long j = 1; j < 2 * L; ++j)
            if (!interior(2 * L * r.first + j * dx, 2 * L * r.second + j * dy, 2 * L)) return false;
        for (auto& [a, b] : diags)
            if (proper_cross(r, w, a, b)) return false;
        return true;
    }
};

struct PartitionResult {
    long long diagonals = 0;
    long long pieces = 0;
    long long holes = 0;
};

inline PartitionResult partition_flat(const PlanarFlat& F)
{
    std::set<P2> bverts;
    for (auto [x, y] : F.squares)
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= 1; ++b) {
                P2 p{x + a, y + b};
                int m = F.mask(p);
                if (m == 9 || m == 6) throw GeometryError("flat touches itself at a vertex");
                if (m != 15) bverts.insert(p);
            }
    std::vector<P2> bv(bverts.begin(), bverts.end());
    std::map<P2, int> id;
    for (size_t i = 0; i < bv.size(); ++i) id[bv[i]] = static_cast<int>(i);
    UnionFind cyc(bv.size());
    for (auto [x, y] : F.squares) {
        if (!F.squares.count({x - 1, y})) cyc.unite(id[{x, y}], id[{x, y + 1}]);
        if (!F.squares.count({x + 1, y})) cyc.unite(id[{x + 1, y}], id[{x + 1, y + 1}]);
        if (!F.squares.count({x, y - 1})) cyc.unite(id[{x, y}], id[{x + 1, y}]);
        if (!F.squares.count({x, y + 1})) cyc.unite(id[{x, y + 1}], id[{x + 1, y + 1}]);
    }
    std::set<int> cycles;
    for (size_t i = 0; i < bv.size(); ++i) cycles.insert(cyc.find(static_cast<int>(i)));
    PartitionResult R;
    R.holes = static_cast<long long>(cycles.size()) - 1;

    std::vector<P2> cand;
    for (auto& c : F.corners)
        if (bverts.count(c)) cand.push_back(c);
    std::vector<std::pair<P2, P2>> diags;
    UnionFind link(bv.size());
    auto add = [&](P2 a, P2 b) {
        diags.push_back({a, b});
        link.unite(cyc.find(id[a]), cyc.find(id[b]));
    };
    auto by_length = [](P2 r) {
        return [r](P2 a, P2 b) {
            auto l = [&](P2 p) {
                long long x = p.first - r.first, y = p.second - r.second;
                return x * x + y * y;
            };
            return std::make_pair(l(a), a) < std::make_pair(l(b), b);
        };
    };
    for (auto& r : bv) {
        int m = F.mask(r);
        if (__builtin_popcount(m) != 3) continue;
        int miss = __builtin_ctz(~m & 15);
        int sx = (miss & 1) ? -1 : 1;  // direction into the quadrant opposite the missing square
        int sy = (miss & 2) ? -1 : 1;
        auto in_cone = [&](P2 w) { return (w.first - r.first) * sx >= 0 && (w.second - r.second) * sy >= 0 && w != r; };
        bool done = false;
        for (auto& [a, b] : diags)
            if ((a == r && in_cone(b)) || (b == r && in_cone(a))) done = true;
        if (done) continue;
        std::vector<P2> opts;
        for (auto& w : cand)
            if (in_cone(w)) opts.push_back(w);
        std::sort(opts.begin(), opts.end(), by_length(r));
        bool ok = false;
        for (auto& w : opts)
            if (F.visible(r, w, diags)) {
                add(r, w);
                ok = true;
                break;
            }
        if (!ok) throw GeometryError("no diagonal resolves a reflex vertex of a flat");
    }
    // join boundary cycles left disconnected from the rest
    for (;;) {
        std::set<int> comps;
        for (int c : cycles) comps.insert(link.find(c));
        if (comps.size() <= 1) break;
        int base = *comps.begin();
        bool ok = false;
        std::vector<std::tuple<long long, P2, P2>> opts;
        for (auto& a : cand)
            for (auto& b : cand) {
                if (link.find(cyc.find(id[a])) != base || link.find(cyc.find(id[b])) == base) continue;
                long long x = a.first - b.first, y = a.second - b.second;
                opts.push_back({x * x + y * y, a, b});
            }
        std::sort(opts.begin(), opts.end());
        for (auto& [l, a, b] : opts)
            if (F.visible(a, b, diags)) {
                add(a, b);
                ok = true;
                break;
            }
        if (!ok) throw GeometryError("cannot connect the boundary cycles of a flat");
    }
    R.diagonals = static_cast<long long>(diags.size());
    R.pieces = R.diagonals + 1 - R.holes;
    return R;
}

} // namespace detail

// the complex whose cells are the flats, with non-convex 2-flats cut along diagonals between corners
inline VoxelChars coarse_chars(const VoxelComplex& v, const std::map<FaceKey, VoxelFace>& bf)
{
    if (v.d > 3) throw GuardError("coarse resolution is implemented for d <= 3");
    for (auto& [k, f] : bf)
        if (!f.manifold()) throw GeometryError("coarse resolution needs a boundary without pinches");
    auto fl = flats(v, bf);
    VoxelChars R;
    R.resolution = Resolution::Coarse;
    R.a = AlphaVector(v.d);
    R.f = FVector(v.d);
    R.f.at(v.d) = 0;
    std::set<Lattice> corners;
    for (auto& F : fl)
        if (F.k == 0) corners.insert(F.faces[0].first);
    for (auto& F : fl) {
        if (F.k < v.d - 1 || v.d < 3) {
            R.a.at(F.k) += F.angle;
            ++R.f.at(F.k);
            continue;
        }
        detail::PlanarFlat P;
        int n = -1;
        for (auto& [p, S] : F.faces)
            if (std::popcount(S) == 2) {
                n = __builtin_ctz(~S & 7u);
                break;
            }
        const int a = n == 0 ? 1 : 0, b = n == 2 ? 1 : 2;
        int level = 0;
        for (auto& [p, S] : F.faces)
            if (std::popcount(S) == 2) {
                P.squares.insert({p[a], p[b]});
                level = p[n];
            }
        for (auto& c : corners)
            if (c[n] == level) P.corners.insert({c[a], c[b]});
        auto part = detail::partition_flat(P);
        R.a.at(1) += Scalar::frac(part.diagonals, 2);
        R.f.at(1) += part.diagonals;
        R.a.at(2) += Scalar::frac(part.pieces, 2);
        R.f.at(2) += part.pieces;
    }
    R.a.at(v.d) = Scalar(v.size());
    R.chi_alpha = angle_char(R.a);
    R.chi_boundary = static_cast<long long>(euler_char(R.f, v.d - 1).d());
    R.components = boundary_components(bf);
    return R;
}

inline VoxelChars voxel_chars(const VoxelComplex& v, Resolution r = Resolution::Coarse)
{
    auto bf = boundary_faces(v);
    return r == Resolution::Cells ? cell_chars(v, bf) : coarse_chars(v, bf);
}

inline AlphaVector voxel_alpha(const VoxelComplex& v, Resolution r = Resolution::Coarse) { return voxel_chars(v, r).a; }
inline FVector boundary_f(const VoxelComplex& v, Resolution r = Resolution::Coarse) { return voxel_chars(v, r).f; }

} // namespace anglesum
