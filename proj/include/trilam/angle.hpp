#pragma once

// Exact rational points of the circle R/Z and the maps x -> d*x mod 1.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trilam {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline BigInt parse_bigint(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return BigInt(std::string(s));
}

inline std::strong_ordering cmp_bigint(const BigInt& x, const BigInt& y) {
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace detail

// Exact non-negative fraction. Used for arc lengths, which live in [0,1]
// and so cannot be angles (a full turn is 1/1, distinct from 0/1).
struct Fraction {
    BigInt num{0};
    BigInt den{1};

    Fraction() = default;
    Fraction(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) { den = -den; num = -num; }
        if (num < 0) throw std::invalid_argument("negative fraction");
        BigInt g = boost::multiprecision::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    std::string str() const { return num.str() + "/" + den.str(); }

    friend bool operator==(const Fraction& x, const Fraction& y) {
        return x.num == y.num && x.den == y.den;
    }
    friend std::strong_ordering operator<=>(const Fraction& x, const Fraction& y) {
        return detail::cmp_bigint(x.num * y.den, y.num * x.den);
    }
};

// Point of R/Z stored as the fully reduced representative in [0,1).
struct RationalAngle {
    BigInt num{0};
    BigInt den{1};

    RationalAngle() = default;
    RationalAngle(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) { den = -den; num = -num; }
        num %= den;
        if (num < 0) num += den;
        BigInt g = boost::multiprecision::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static RationalAngle parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos)
            return RationalAngle(detail::parse_bigint(s), 1);
        return RationalAngle(detail::parse_bigint(s.substr(0, slash)),
                             detail::parse_bigint(s.substr(slash + 1)));
    }

    std::string str() const { return num.str() + "/" + den.str(); }

    // Comparisons use the representative in [0,1); this is the circular
    // order as seen from 0, which is all the combinatorics needs.
    friend bool operator==(const RationalAngle& x, const RationalAngle& y) {
        return x.num == y.num && x.den == y.den;
    }
    friend std::strong_ordering operator<=>(const RationalAngle& x, const RationalAngle& y) {
        return detail::cmp_bigint(x.num * y.den, y.num * x.den);
    }

    friend RationalAngle operator+(const RationalAngle& x, const RationalAngle& y) {
        return RationalAngle(x.num * y.den + y.num * x.den, x.den * y.den);
    }
    friend RationalAngle operator-(const RationalAngle& x, const RationalAngle& y) {
        return RationalAngle(x.num * y.den - y.num * x.den, x.den * y.den);
    }
};

inline double to_double(const RationalAngle& a) {
    return boost::multiprecision::cpp_rational(a.num, a.den).template convert_to<double>();
}

inline RationalAngle sigma(unsigned d, const RationalAngle& a) {
    if (d == 0) throw std::invalid_argument("sigma requires d >= 1");
    return RationalAngle(BigInt(d) * a.num, a.den);
}

// The d preimages of a under sigma_d, ascending in [0,1).
inline std::vector<RationalAngle> preimages(unsigned d, const RationalAngle& a) {
    if (d == 0) throw std::invalid_argument("preimages requires d >= 1");
    std::vector<RationalAngle> out;
    out.reserve(d);
    for (unsigned k = 0; k < d; ++k)
        out.emplace_back(a.num + BigInt(k) * a.den, BigInt(d) * a.den);
    return out;
}

struct OrbitStructure {
    std::size_t preperiod{};
    std::size_t period{};
    std::vector<RationalAngle> points; // distinct orbit points, in visit order
};

// Smallest (p, q) with sigma_d^{p+q}(a) = sigma_d^p(a). Rational angles
// always terminate: denominators never grow under sigma_d.
inline OrbitStructure orbit_structure(unsigned d, const RationalAngle& a) {
    std::map<RationalAngle, std::size_t> seen;
    std::vector<RationalAngle> pts;
    RationalAngle x = a;
    for (;;) {
        auto [it, fresh] = seen.emplace(x, pts.size());
        if (!fresh)
            return {it->second, pts.size() - it->second, std::move(pts)};
        pts.push_back(x);
        x = sigma(d, x);
    }
}

// Directed arc, positively oriented (counterclockwise) from start to end.
// Equal endpoints denote the full circle.
struct Arc {
    RationalAngle start;
    RationalAngle end;

    friend bool operator==(const Arc&, const Arc&) = default;
};

inline Fraction arc_length(const Arc& arc) {
    if (arc.start == arc.end) return Fraction(1, 1);
    RationalAngle diff = arc.end - arc.start;
    return Fraction(diff.num, diff.den);
}

// Strict interior of a proper (non-full-circle) directed arc.
inline bool in_open_arc(const RationalAngle& x, const Arc& arc) {
    if (arc.start == arc.end) throw std::invalid_argument("in_open_arc needs a proper arc");
    if (arc.start < arc.end) return arc.start < x && x < arc.end;
    return arc.start < x || x < arc.end;
}

} // namespace trilam
