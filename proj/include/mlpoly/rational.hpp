#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlpoly {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major
using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;

inline Int numer(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denom(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

inline Rat abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline bool is_integral(const Rat& q) { return denom(q) == 1; }

inline std::string to_string(const Rat& q) { return q.str(); }

inline Vec zeros(std::size_t n) { return Vec(n, Rat(0)); }

inline Vec unit(std::size_t n, std::size_t i) {
    Vec v = zeros(n);
    v[i] = 1;
    return v;
}

inline Rat dot(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec operator*(const Rat& s, const Vec& a) {
    Vec r(a);
    for (auto& x : r) x *= s;
    return r;
}

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline IVec to_ivec(const Vec& v) {
    IVec r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if (!is_integral(x)) throw std::invalid_argument("to_ivec: non-integral entry " + x.str());
        r.push_back(numer(x));
    }
    return r;
}

inline Vec to_vec(const IVec& v) {
    Vec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

// Positive scalar s with s*v integral and primitive. v must be nonzero.
inline Rat primitive_scale(const Vec& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, denom(x));
    Int g = 0;
    for (const auto& x : v) g = gcd(g, numer(x * Rat(l)));
    if (g == 0) throw std::invalid_argument("primitive_scale: zero vector");
    return Rat(l) / Rat(g);
}

inline bool is_primitive_integral(const Vec& v) {
    Int g = 0;
    for (const auto& x : v) {
        if (!is_integral(x)) return false;
        g = gcd(g, numer(x));
    }
    return g == 1;
}

// Least common multiple of all denominators.
inline Int common_denominator(const Vec& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, denom(x));
    return l;
}

}  // namespace mlpoly
