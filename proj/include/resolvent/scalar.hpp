#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace resolvent {

using Integer = boost::multiprecision::cpp_int;
// Always normalized: gcd(|num|, den) = 1 and den > 0.
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

template <class T>
struct is_rational : std::false_type {};
template <>
struct is_rational<Rational> : std::true_type {};
template <class T>
inline constexpr bool is_rational_v = is_rational<T>::value;

inline Complex to_complex(const Rational& r) { return Complex(r.convert_to<double>(), 0.0); }
inline Complex to_complex(const Complex& z) { return z; }

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }

inline double magnitude(const Rational& r) { return std::abs(r.convert_to<double>()); }
inline double magnitude(const Complex& z) { return std::abs(z); }

// "p/q" with the denominator always present, e.g. "4/1", "-3/7".
inline std::string format_rational(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in rational \"" + s + "\"");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const ParseError*>(&e)) throw;
        throw ParseError("malformed rational \"" + s + "\"");
    }
}

// Accepts "a", "a+bi", "a-bi", "bi", "i", "-i" with optional spaces.
inline Complex parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s.empty()) throw ParseError("empty complex literal");
    auto read_real = [&](const std::string& part) -> double {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw ParseError("malformed complex literal \"" + s + "\"");
        }
        if (used != part.size()) throw ParseError("malformed complex literal \"" + s + "\"");
        return v;
    };
    if (s.back() != 'i' && s.back() != 'j') return Complex(read_real(s), 0.0);
    std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not part of an exponent and not leading
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return Complex(0.0, read_real(body));
    return Complex(read_real(body.substr(0, split)), read_real(body.substr(split)));
}

// Deterministic uniform doubles from a 64-bit engine, independent of the
// standard library's distribution implementations.
template <class Engine>
double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

template <class Engine>
double uniform_in(Engine& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

template <class Engine>
Complex random_in_disk(Engine& eng, double radius = 1.0) {
    double r = radius * std::sqrt(uniform01(eng));
    double a = 2.0 * kPi * uniform01(eng);
    return std::polar(r, a);
}

template <class Engine>
Complex random_on_circle(Engine& eng) {
    return std::polar(1.0, 2.0 * kPi * uniform01(eng));
}

} // namespace resolvent
