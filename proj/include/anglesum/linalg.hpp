#pragma once

#include "scalar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace anglesum {

template <class T>
using Mat = std::vector<std::vector<T>>;

inline bool is_zero_t(const Rational& x) { return x == 0; }
inline bool is_zero_t(double x) { return x == 0.0; }
inline double mag(const Rational& x) { return std::fabs(to_double(x)); }
inline double mag(double x) { return std::fabs(x); }

template <class T>
T det(Mat<T> a)
{
    const int n = static_cast<int>(a.size());
    T r = T(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        double best = -1;
        for (int i = c; i < n; ++i) {
            if (is_zero_t(a[i][c])) continue;
            double m = mag(a[i][c]);
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (piv < 0) return T(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            r = -r;
        }
        r *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (is_zero_t(a[i][c])) continue;
            T f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return r;
}

// normal of the hyperplane through d points in R^d by cofactor expansion; zero if degenerate
template <class T>
std::vector<T> cofactor_normal(const std::vector<std::vector<T>>& pts)
{
    const int d = static_cast<int>(pts.size());
    std::vector<T> n(d, T(0));
    if (d == 1) {
        n[0] = T(1);
        return n;
    }
    Mat<T> u(d - 1, std::vector<T>(d));
    for (int k = 1; k < d; ++k)
        for (int j = 0; j < d; ++j) u[k - 1][j] = pts[k][j] - pts[0][j];
    for (int j = 0; j < d; ++j) {
        Mat<T> m(d - 1, std::vector<T>(d - 1));
        for (int r = 0; r < d - 1; ++r)
            for (int c = 0, cc = 0; c < d; ++c)
                if (c != j) m[r][cc++] = u[r][c];
        T v = det(m);
        n[j] = (j % 2 == 0) ? v : T(-v);
    }
    return n;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b)
{
    T s = T(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// fraction-free (Bareiss) rank of a rational matrix
inline int bareiss_rank(const Mat<Rational>& rows)
{
    if (rows.empty()) return 0;
    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(rows[0].size());
    Mat<BigInt> a(m, std::vector<BigInt>(n));
    for (int i = 0; i < m; ++i) {
        BigInt l = 1;
        for (auto& x : rows[i]) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(x)));
        for (int j = 0; j < n; ++j) {
            Rational s = rows[i][j] * l;
            a[i][j] = boost::multiprecision::numerator(s);
        }
    }
    BigInt prev = 1;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        for (int i = r + 1; i < m; ++i) {
            for (int j = c + 1; j < n; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

struct SvdRank {
    int rank = 0;
    std::vector<double> singular;
};

// singular values above tol * max(1, sigma_max) count toward the rank
inline SvdRank svd_rank(const Mat<double>& rows, double tol)
{
    SvdRank out;
    if (rows.empty() || rows[0].empty()) return out;
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[0].size(); ++j) m(i, j) = rows[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    auto s = svd.singularValues();
    double thr = tol * std::max(1.0, s.size() ? s(0) : 0.0);
    for (int i = 0; i < s.size(); ++i) {
        out.singular.push_back(s(i));
        if (s(i) > thr) ++out.rank;
    }
    return out;
}

} // namespace anglesum
