#pragma once

#include "polytope.hpp"
#include "sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace anglesum {

struct AngleEstimate {
    Scalar value;
    double stderr_ = 0;
    Method method = kExact;
};

struct FaceId {
    int dim = 0;
    int index = 0;
};

namespace detail {

// interior dihedral angle in turns for a codim-2 face lying on facets a and b
inline AngleEstimate dihedral(const Facet& a, const Facet& b)
{
    if (a.exact && b.exact) {
        Rational dq = dot(a.normal_q, b.normal_q);
        Rational c2 = dq * dq / (dot(a.normal_q, a.normal_q) * dot(b.normal_q, b.normal_q));
        if (dq == 0) return {Scalar::frac(1, 4), 0, kDihedral};
        if (c2 == Rational(1, 4)) return {dq > 0 ? Scalar::frac(1, 3) : Scalar::frac(1, 6), 0, kDihedral};
        if (c2 == Rational(1, 2)) return {dq > 0 ? Scalar::frac(3, 8) : Scalar::frac(1, 8), 0, kDihedral};
        if (c2 == Rational(3, 4)) return {dq > 0 ? Scalar::frac(5, 12) : Scalar::frac(1, 12), 0, kDihedral};
    }
    double c = std::clamp(dot(a.normal, b.normal), -1.0, 1.0);
    return {Scalar((std::numbers::pi - std::acos(c)) / (2 * std::numbers::pi)), 0, kDihedral};
}

struct McResult {
    double p = 0;
    double se = 0;
    long long n = 0;
};

// fraction of Gaussian directions v with n_j . v < 0 for every supplied unit normal
inline McResult cone_fraction(const std::vector<std::vector<double>>& normals, int dim, const SamplingConfig& cfg,
                              std::uint64_t stream)
{
    if (cfg.samples < 1) throw std::invalid_argument("sampling budget must be positive");
    const long long chunk = std::max<long long>(1, cfg.chunk);
    const long long nchunks = (cfg.samples + chunk - 1) / chunk;
    const long long round = 16;
    long long hits = 0, total = 0;
    for (long long start = 0; start < nchunks; start += round) {
        long long end = std::min(nchunks, start + round);
        std::vector<long long> h(end - start, 0), t(end - start, 0);
        parallel_for(end - start, [&](long long k) {
            long long c = start + k;
            long long m = std::min(chunk, cfg.samples - c * chunk);
            std::mt19937_64 rng(mix_seed(cfg.seed, stream, static_cast<std::uint64_t>(c)));
            std::normal_distribution<double> g(0.0, 1.0);
            std::vector<double> v(dim);
            long long hit = 0;
            for (long long s = 0; s < m; ++s) {
                bool ok = true, in = true;
                do {
                    double l2 = 0;
                    for (auto& x : v) {
                        x = g(rng);
                        l2 += x * x;
                    }
                    double l = std::sqrt(l2);
                    ok = l > 0;
                    in = true;
                    for (auto& nrm : normals) {
                        double s2 = dot(nrm, v);
                        if (std::fabs(s2) < 1e-12 * l) {
                            ok = false;
                            break;
                        }
                        if (s2 > 0) in = false;
                    }
                } while (!ok);
                hit += in;
            }
            h[k] = hit;
            t[k] = m;
        });
        for (size_t k = 0; k < h.size(); ++k) {
            hits += h[k];
            total += t[k];
        }
        if (cfg.target_se > 0) {
            double p = static_cast<double>(hits) / total;
            if (std::sqrt(p * (1 - p) / total) <= cfg.target_se) break;
        }
    }
    McResult r;
    r.n = total;
    r.p = static_cast<double>(hits) / total;
    r.se = std::sqrt(std::max(r.p * (1 - r.p), 0.0) / total);
    return r;
}

} // namespace detail

inline AngleEstimate interior_angle(const VPolytope& p, const FaceLattice& L, FaceId id, const SamplingConfig& cfg = {})
{
    const int d = L.d;
    if (id.dim < 0 || id.dim >= d) throw std::invalid_argument("interior_angle: face is not proper");
    const Face& F = L.of_dim(id.dim).at(id.index);
    const int codim = d - id.dim;
    if (codim == 1) return {Scalar::frac(1, 2), 0, kExact};
    if (!cfg.force_monte_carlo) {
        if (codim == 2) {
            if (F.facets.size() != 2) throw GeometryError("codimension-2 face not on exactly two facets");
            return detail::dihedral(L.facet_list[F.facets[0]], L.facet_list[F.facets[1]]);
        }
        if (codim == 3) {
            // solid angle of the 3-dimensional normal slice from its dihedral angles
            Scalar s(0);
            int m = 0;
            auto& ridges = L.of_dim(d - 2);
            for (auto& G : ridges) {
                if (!std::includes(G.verts.begin(), G.verts.end(), F.verts.begin(), F.verts.end())) continue;
                s += detail::dihedral(L.facet_list[G.facets[0]], L.facet_list[G.facets[1]]).value;
                ++m;
            }
            Scalar v = s / Scalar(2) - Scalar::frac(m - 2, 4);
            return {v, 0, kSphericalExcess};
        }
    }
    (void)p;
    std::vector<std::vector<double>> normals;
    for (int k : F.facets) normals.push_back(L.facet_list[k].normal);
    auto r = detail::cone_fraction(normals, d, cfg, hash_ints(F.verts, static_cast<std::uint64_t>(id.dim)));
    return {Scalar(r.p), r.se, kMonteCarlo};
}

inline AlphaVector angle_sums(const VPolytope& p, const FaceLattice& L, const SamplingConfig& cfg = {})
{
    AlphaVector a(L.d);
    for (int i = 0; i < L.d; ++i) {
        Scalar s(0);
        double var = 0;
        unsigned how = 0;
        auto& fs = L.of_dim(i);
        for (int j = 0; j < static_cast<int>(fs.size()); ++j) {
            auto e = interior_angle(p, L, {i, j}, cfg);
            s += e.value;
            var += e.stderr_ * e.stderr_;
            how |= e.method;
        }
        a.at(i) = s;
        a.se[i + 1] = std::sqrt(var);
        a.how[i + 1] = how ? how : kExact;
    }
    return a;
}

inline AlphaVector angle_sums(const VPolytope& p, const SamplingConfig& cfg = {})
{
    if (p.d == 0) return AlphaVector(0);
    return angle_sums(p, face_lattice(p), cfg);
}

inline AlphaFVector alpha_f(const VPolytope& p, const SamplingConfig& cfg = {})
{
    if (p.d == 0) return {AlphaVector(0), FVector(0)};
    auto L = face_lattice(p);
    return {angle_sums(p, L, cfg), L.f()};
}

struct ProjectionReport {
    int d = 0;
    long long trials = 0;
    std::vector<double> mean_f;    // E f_i(P'), i = 0..d-2
    std::vector<double> alpha_hat; // (f_i(P) - E f_i(P')) / 2
    std::vector<double> stderr_;   // standard error of alpha_hat
    long long resampled = 0;
};

inline ProjectionReport projection_expectation(const VPolytope& p, long long trials, std::uint64_t seed,
                                               long long max_resample = 1000)
{
    if (p.d < 2) throw std::invalid_argument("projection_expectation needs d >= 2");
    if (trials < 1) throw std::invalid_argument("projection_expectation needs at least one trial");
    const int d = p.d;
    auto f = face_lattice(p).f();
    auto x = p.pts_d();
    ProjectionReport R;
    R.d = d;
    R.trials = trials;
    std::vector<double> sum(d - 1, 0), sum2(d - 1, 0);
    std::mt19937_64 rng(mix_seed(seed, 0x9a0c7e11ULL));
    std::normal_distribution<double> g(0.0, 1.0);
    for (long long t = 0; t < trials; ++t) {
        for (long long attempt = 0;; ++attempt) {
            if (attempt > max_resample) throw GeometryError("projection budget exceeded");
            std::vector<double> u(d);
            for (auto& c : u) c = g(rng);
            double l = norm(u);
            if (l == 0) continue;
            for (auto& c : u) c /= l;
            Eigen::MatrixXd U(d, 1);
            for (int i = 0; i < d; ++i) U(i, 0) = u[i];
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(U);
            Eigen::MatrixXd Q = qr.householderQ();
            std::vector<std::vector<double>> y;
            for (auto& v : x) {
                std::vector<double> w(d - 1);
                for (int j = 1; j < d; ++j) {
                    double s = 0;
                    for (int i = 0; i < d; ++i) s += Q(i, j) * v[i];
                    w[j - 1] = s;
                }
                y.push_back(w);
            }
            try {
                auto proj = hull(make_polytope(y));
                auto fl = face_lattice(proj).f();
                for (int i = 0; i <= d - 2; ++i) {
                    double c = static_cast<double>(fl[i]);
                    sum[i] += c;
                    sum2[i] += c * c;
                }
                break;
            } catch (const GeometryError&) {
                ++R.resampled;
            }
        }
    }
    for (int i = 0; i <= d - 2; ++i) {
        double m = sum[i] / trials;
        double var = trials > 1 ? (sum2[i] - trials * m * m) / (trials - 1) : 0;
        R.mean_f.push_back(m);
        R.alpha_hat.push_back((static_cast<double>(f[i]) - m) / 2);
        R.stderr_.push_back(std::sqrt(std::max(var, 0.0) / trials) / 2);
    }
    return R;
}

} // namespace anglesum
