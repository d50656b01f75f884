#pragma once

#include "scalar.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace anglesum {

enum Method : unsigned {
    kExact = 1u,
    kDihedral = 2u,
    kSphericalExcess = 4u,
    kMonteCarlo = 8u,
};

inline std::string method_names(unsigned m)
{
    std::string s;
    auto add = [&](unsigned bit, const char* name) {
        if (m & bit) s += s.empty() ? name : std::string("+") + name;
    };
    add(kExact, "exact");
    add(kDihedral, "dihedral");
    add(kSphericalExcess, "spherical-excess");
    add(kMonteCarlo, "monte-carlo");
    return s.empty() ? "exact" : s;
}

// f_{-1}..f_d; f_{-1} = 1 always, f_d = 1 for a polytope and 0 for a boundary complex
struct FVector {
    int d = 0;
    std::vector<long long> e;

    FVector() = default;
    explicit FVector(int dim) : d(dim), e(dim + 2, 0)
    {
        e[0] = 1;
        e[dim + 1] = 1;
    }
    static FVector from(int dim, const std::vector<long long>& f0_to_fd)
    {
        if (static_cast<int>(f0_to_fd.size()) != dim + 1)
            throw std::invalid_argument("FVector: expected d+1 entries f_0..f_d");
        FVector f(dim);
        for (int i = 0; i <= dim; ++i) f.e[i + 1] = f0_to_fd[i];
        return f;
    }
    long long operator[](int i) const { return (i < -1 || i > d) ? 0 : e[i + 1]; }
    long long& at(int i)
    {
        if (i < -1 || i > d) throw std::out_of_range("FVector index");
        return e[i + 1];
    }
    bool operator==(const FVector& o) const { return d == o.d && e == o.e; }
};

struct AlphaVector {
    int d = 0;
    std::vector<Scalar> e;      // alpha_{-1}..alpha_d
    std::vector<double> se;     // standard error per entry, 0 for exact entries
    std::vector<unsigned> how;  // Method bits per entry

    AlphaVector() = default;
    explicit AlphaVector(int dim) : d(dim), e(dim + 2, Scalar(0)), se(dim + 2, 0.0), how(dim + 2, kExact)
    {
        e[dim + 1] = Scalar(1);
    }
    static AlphaVector from(int dim, const std::vector<Scalar>& a0_to_ad, Scalar am1 = Scalar(0))
    {
        if (static_cast<int>(a0_to_ad.size()) != dim + 1)
            throw std::invalid_argument("AlphaVector: expected d+1 entries alpha_0..alpha_d");
        AlphaVector a(dim);
        a.e[0] = am1;
        for (int i = 0; i <= dim; ++i) a.e[i + 1] = a0_to_ad[i];
        return a;
    }
    Scalar operator[](int i) const { return (i < -1 || i > d) ? Scalar(0) : e[i + 1]; }
    Scalar& at(int i)
    {
        if (i < -1 || i > d) throw std::out_of_range("AlphaVector index");
        return e[i + 1];
    }
    double stderr_at(int i) const { return (i < -1 || i > d) ? 0.0 : se[i + 1]; }
    bool exact() const
    {
        for (auto& x : e)
            if (!x.exact()) return false;
        return true;
    }
};

struct AlphaFVector {
    AlphaVector a;
    FVector f;
    int d() const { return a.d; }
};

// h_0..h_d (also used for gamma_0..gamma_d)
struct HVector {
    int d = 0;
    std::vector<Scalar> e;
    HVector() = default;
    explicit HVector(int dim) : d(dim), e(dim + 1, Scalar(0)) {}
    Scalar operator[](int i) const
    {
        if (i < 0 || i > d) throw std::out_of_range("HVector index");
        return e[i];
    }
};

struct GammaVector {
    int d = 0;
    std::vector<Scalar> e;
    GammaVector() = default;
    explicit GammaVector(int dim) : d(dim), e(dim + 1, Scalar(0)) {}
    // extended: 0 below, 1 above
    Scalar operator[](int i) const
    {
        if (i < 0) return Scalar(0);
        if (i > d) return Scalar(1);
        return e[i];
    }
};

inline HVector h_from_f(const FVector& f)
{
    if (static_cast<int>(f.e.size()) != f.d + 2) throw std::invalid_argument("h_from_f: dimension mismatch");
    HVector h(f.d);
    const int d = f.d;
    for (int i = 0; i <= d; ++i) {
        Scalar s(0);
        for (int j = 0; j <= i; ++j) s += Scalar(sgn_pow(i - j)) * binom(d - j, d - i) * Scalar(f[j - 1]);
        h.e[i] = s;
    }
    return h;
}

inline FVector f_from_h(const HVector& h)
{
    const int d = h.d;
    FVector f(d);
    for (int j = -1; j <= d - 1; ++j) {
        Scalar s(0);
        for (int i = 0; i <= j + 1 && i <= d; ++i) s += binom(d - i, j + 1 - i) * h.e[i];
        if (!s.exact() || boost::multiprecision::denominator(s.q()) != 1)
            throw std::invalid_argument("f_from_h: non-integral face count");
        f.at(j) = static_cast<long long>(boost::multiprecision::numerator(s.q()));
    }
    f.at(d) = 1;
    return f;
}

inline GammaVector gamma_from_alpha(const AlphaVector& a)
{
    const int d = a.d;
    GammaVector g(d);
    for (int i = 0; i <= d; ++i) {
        Scalar s(0);
        for (int j = 0; j <= i; ++j) s += Scalar(sgn_pow(i - j)) * binom(d - j, d - i) * a[j - 1];
        g.e[i] = s;
    }
    return g;
}

inline AlphaVector alpha_from_gamma(const GammaVector& g)
{
    const int d = g.d;
    AlphaVector a(d);
    for (int j = -1; j <= d - 1; ++j) {
        Scalar s(0);
        for (int i = 0; i <= j + 1 && i <= d; ++i) s += binom(d - i, j + 1 - i) * g.e[i];
        a.at(j) = s;
    }
    for (int j = -1; j <= d; ++j) a.how[j + 1] = a[j].exact() ? kExact : kMonteCarlo;
    return a;
}

inline Scalar euler_char(const FVector& f, int top)
{
    Scalar s(0);
    for (int i = 0; i <= top; ++i) s += Scalar(sgn_pow(i)) * Scalar(f[i]);
    return s;
}

inline Scalar angle_char(const AlphaVector& a)
{
    Scalar s(0);
    for (int i = 0; i <= a.d - 1; ++i) s += Scalar(sgn_pow(i)) * a[i];
    return s;
}

inline double angle_char_stderr(const AlphaVector& a)
{
    double v = 0;
    for (int i = 0; i <= a.d - 1; ++i) v += a.stderr_at(i) * a.stderr_at(i);
    return std::sqrt(v);
}

} // namespace anglesum
