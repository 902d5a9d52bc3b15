#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <string_view>

namespace foliage {

/// Exact rational. GMP keeps every result canonical (gcd 1, positive denominator).
using Rational = mpq_class;

/// Gaussian rational re + im*sqrt(-1).
struct Gauss {
    Rational re;
    Rational im;

    Gauss() = default;
    Gauss(const Rational& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    Gauss(const Rational& r, const Rational& i) : re(r), im(i) {}
    Gauss(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

    static Gauss i() { return {Rational(0), Rational(1)}; }

    Gauss& operator+=(const Gauss& o) { re += o.re; im += o.im; return *this; }
    Gauss& operator-=(const Gauss& o) { re -= o.re; im -= o.im; return *this; }
    Gauss& operator*=(const Gauss& o)
    {
        Rational r = re * o.re - im * o.im;
        Rational m = re * o.im + im * o.re;
        re = r;
        im = m;
        return *this;
    }
    Gauss& operator/=(const Gauss& o)
    {
        Rational n = o.re * o.re + o.im * o.im;
        Rational r = (re * o.re + im * o.im) / n;
        Rational m = (im * o.re - re * o.im) / n;
        re = r;
        im = m;
        return *this;
    }

    friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
    friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
    friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
    friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
    friend Gauss operator-(const Gauss& a) { return {Rational(-a.re), Rational(-a.im)}; }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }
};

inline Rational conj(const Rational& x) { return x; }
inline Gauss conj(const Gauss& x) { return {x.re, Rational(-x.im)}; }

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Gauss& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }

/// Embedding Q -> F for the two supported coefficient fields.
template <class F>
F embed(const Rational& x)
{
    return F(x);
}

std::string to_string(const Rational& x);
std::string to_string(const Gauss& x);

/// Parses "p", "-p" or "p/q" (q != 0). Throws InvalidInput on anything else.
Rational parse_rational(std::string_view text);

/// True when text is a well-formed rational literal with nonzero denominator.
bool is_rational_literal(std::string_view text);

/// Exact square root when x is the square of a rational.
bool rational_sqrt(const Rational& x, Rational& root);

inline std::ostream& operator<<(std::ostream& os, const Gauss& x) { return os << to_string(x); }

} // namespace foliage
