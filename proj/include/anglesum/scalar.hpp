#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

namespace anglesum {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GluingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// input outside a documented size or dimension guard
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double to_double(const Rational& q) { return static_cast<double>(q); }

inline std::string rational_str(const Rational& q)
{
    std::ostringstream os;
    os << q;
    return os.str();
}

inline std::string double_str(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

// Exact rational or float64; any operation touching a float yields a float.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    Scalar(I i) : v_(Rational(static_cast<long long>(i)))
    {
    }
    Scalar(const Rational& q) : v_(q) {}
    Scalar(const BigInt& q) : v_(Rational(q)) {}
    Scalar(double x) : v_(x) {}

    static Scalar frac(long long p, long long q) { return Scalar(Rational(p, q)); }

    bool exact() const { return v_.index() == 0; }
    const Rational& q() const
    {
        if (!exact()) throw std::logic_error("Scalar: float has no exact value");
        return std::get<0>(v_);
    }
    double d() const { return exact() ? to_double(std::get<0>(v_)) : std::get<1>(v_); }
    Scalar as_float() const { return Scalar(d()); }

    std::string str() const { return exact() ? rational_str(q()) : double_str(std::get<1>(v_)); }

    bool is_zero() const { return exact() ? q() == 0 : std::get<1>(v_) == 0.0; }

    Scalar operator-() const { return exact() ? Scalar(Rational(-q())) : Scalar(-d()); }

    friend Scalar operator+(const Scalar& a, const Scalar& b)
    {
        if (a.exact() && b.exact()) return Scalar(Rational(a.q() + b.q()));
        return Scalar(a.d() + b.d());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b)
    {
        if (a.exact() && b.exact()) return Scalar(Rational(a.q() - b.q()));
        return Scalar(a.d() - b.d());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        if (a.exact() && b.exact()) return Scalar(Rational(a.q() * b.q()));
        return Scalar(a.d() * b.d());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b)
    {
        if (a.exact() && b.exact()) {
            if (b.q() == 0) throw std::domain_error("Scalar: division by zero");
            return Scalar(Rational(a.q() / b.q()));
        }
        return Scalar(a.d() / b.d());
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    // exact comparison when both exact, numeric otherwise
    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        if (a.exact() && b.exact()) return a.q() == b.q();
        return a.d() == b.d();
    }
    friend bool operator<(const Scalar& a, const Scalar& b)
    {
        if (a.exact() && b.exact()) return a.q() < b.q();
        return a.d() < b.d();
    }

private:
    std::variant<Rational, double> v_;
};

inline Scalar abs(const Scalar& s) { return s < Scalar(0) ? -s : s; }

inline BigInt binom_big(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline Scalar binom(int n, int k) { return Scalar(binom_big(n, k)); }

inline int sgn_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

// parses "3", "-2/5", "0.001", "1e-3" into an exact rational
namespace detail {

// cpp_int reads a leading 0 as octal and 0x as hex
inline BigInt parse_decimal_int(std::string m, const std::string& whole)
{
    bool neg = false;
    if (!m.empty() && (m[0] == '-' || m[0] == '+')) {
        neg = m[0] == '-';
        m = m.substr(1);
    }
    if (m.empty() || m.find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad number: " + whole);
    m.erase(0, std::min(m.find_first_not_of('0'), m.size() - 1));
    BigInt v(m);
    return neg ? BigInt(-v) : v;
}

} // namespace detail

inline Rational parse_rational(const std::string& s)
{
    if (s.empty()) throw ParseError("empty number");
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt p = detail::parse_decimal_int(s.substr(0, slash), s), q = detail::parse_decimal_int(s.substr(slash + 1), s);
            if (q == 0) throw ParseError("zero denominator in " + s);
            return Rational(p, q);
        }
        std::string m = s;
        long long exp10 = 0;
        auto e = m.find_first_of("eE");
        if (e != std::string::npos) {
            exp10 = std::stoll(m.substr(e + 1));
            m = m.substr(0, e);
        }
        bool neg = false;
        if (!m.empty() && (m[0] == '-' || m[0] == '+')) {
            neg = m[0] == '-';
            m = m.substr(1);
        }
        auto dot = m.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long long>(m.size() - dot - 1);
            m.erase(dot, 1);
        }
        if (m.empty() || m[0] == '-' || m[0] == '+' || exp10 > 4096 || exp10 < -4096) throw ParseError("bad number: " + s);
        Rational r{detail::parse_decimal_int(m, s)};
        BigInt ten = 1;
        for (long long i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i) ten *= 10;
        r = exp10 < 0 ? Rational(r / ten) : Rational(r * ten);
        return neg ? Rational(-r) : r;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad number: " + s);
    }
}

} // namespace anglesum
