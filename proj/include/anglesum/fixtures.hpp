#pragma once

#include "voxel.hpp"

namespace anglesum {

inline VoxelComplex voxel_box(const std::vector<int>& size, std::string label = "box")
{
    const int d = static_cast<int>(size.size());
    std::vector<Lattice> cells;
    Lattice c(d, 0);
    for (;;) {
        cells.push_back(c);
        int j = 0;
        while (j < d && ++c[j] == size[j]) c[j++] = 0;
        if (j == d) break;
    }
    return make_voxel(d, cells, std::move(label));
}

inline VoxelComplex voxel_cube(int d = 3) { return voxel_box(std::vector<int>(d, 1), "cube"); }

// flat slab (2g+1) x 3 x 1 with g unit holes in its middle row
inline VoxelComplex handlebody(int g)
{
    if (g < 0) throw std::invalid_argument("handlebody genus must be non-negative");
    std::vector<Lattice> cells;
    for (int x = 0; x < 2 * g + 1; ++x)
        for (int y = 0; y < 3; ++y)
            if (!(y == 1 && x % 2 == 1)) cells.push_back({x, y, 0});
    return make_voxel(3, cells, "handlebody:" + std::to_string(g));
}

inline VoxelComplex torus_ring()
{
    auto v = handlebody(1);
    v.label = "torus";
    return v;
}

inline VoxelComplex gamma_complex()
{
    std::vector<Lattice> cells;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                if (!(x == 1 && y == 1 && z == 1)) cells.push_back({x, y, z});
    return make_voxel(3, cells, "gamma");
}

// trefoil tunnel: two strands braided three times with the same crossing sign, one return loop beside the braid,
// both ends rising to the top face
inline std::vector<Lattice> trefoil_tunnel()
{
    std::vector<Lattice> path;
    auto go = [&](Lattice to) {
        if (path.empty()) {
            path.push_back(to);
            return;
        }
        Lattice c = path.back();
        int moved = 0;
        for (int j = 0; j < 3; ++j) moved += c[j] != to[j];
        if (moved != 1) throw std::logic_error("tunnel legs must be axis-parallel");
        while (c != to) {
            for (int j = 0; j < 3; ++j)
                if (c[j] != to[j]) c[j] += to[j] > c[j] ? 1 : -1;
            path.push_back(c);
        }
    };
    const int top = 4;
    const int cross[3] = {4, 10, 16};
    // strand geometry at crossing c: the strand at y=0 passes over, the strand at y=4 passes under
    auto over = [&](int c) {
        go({c, 0, 0});
        go({c, 0, 2});
        go({c, 4, 2});
        go({c + 2, 4, 2});
        go({c + 2, 4, 0});
    };
    auto under = [&](int c) {
        go({c - 2, 4, 0});
        go({c - 2, 4, -2});
        go({c - 2, 2, -2});
        go({c + 2, 2, -2});
        go({c + 2, 0, -2});
        go({c + 2, 0, 0});
    };
    go({0, 0, top});
    go({0, 0, 0});
    int y = 0;
    for (int c : cross) {
        if (y == 0) over(c);
        else under(c);
        y = 4 - y;
    }
    go({20, 4, 0});
    go({20, 8, 0});
    go({0, 8, 0});
    go({0, 4, 0});
    y = 4;
    for (int c : cross) {
        if (y == 0) over(c);
        else under(c);
        y = 4 - y;
    }
    go({20, 0, 0});
    go({20, 0, top});
    return path;
}

// a ball built from cubes containing a knotted tunnel; plugged by one cube at one of its ends
inline VoxelComplex furch_fixture(std::vector<Lattice>* tunnel_out = nullptr)
{
    auto tunnel = trefoil_tunnel();
    std::set<Lattice> hole(tunnel.begin(), tunnel.end());
    if (hole.size() != tunnel.size()) throw std::logic_error("trefoil tunnel revisits a cell");
    const Lattice plug = tunnel.back();
    hole.erase(plug);
    std::vector<Lattice> cells;
    for (int x = -2; x <= 22; ++x)
        for (int y = -2; y <= 10; ++y)
            for (int z = -4; z <= 4; ++z)
                if (!hole.count({x, y, z})) cells.push_back({x, y, z});
    if (tunnel_out) *tunnel_out = tunnel;
    return make_voxel(3, cells, "furch");
}

inline VoxelComplex fixture_by_name(const std::string& name)
{
    if (name == "cube") return voxel_cube(3);
    if (name == "square") return voxel_cube(2);
    if (name == "torus") return torus_ring();
    if (name == "gamma") return gamma_complex();
    if (name == "furch") return furch_fixture();
    if (name.rfind("handlebody:", 0) == 0) {
        int g = -1;
        try {
            g = std::stoi(name.substr(11));
        } catch (const std::exception&) {
        }
        if (g < 0 || g > 64) throw ParseError("handlebody genus must be an integer in 0..64");
        return handlebody(g);
    }
    throw ParseError("unknown voxel fixture '" + name + "' (cube, square, torus, gamma, furch, handlebody:g)");
}

inline std::vector<std::string> voxel_fixture_names()
{
    return {"cube", "square", "torus", "gamma", "furch", "handlebody:0", "handlebody:1", "handlebody:2", "handlebody:3"};
}

} // namespace anglesum
