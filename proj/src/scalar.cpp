#include "foliage/scalar.hpp"

#include "foliage/errors.hpp"

#include <cctype>

namespace foliage {

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const Gauss& x)
{
    if (is_zero(x.im))
        return x.re.get_str();
    std::string im;
    if (x.im == 1)
        im = "i";
    else if (x.im == -1)
        im = "-i";
    else
        im = x.im.get_str() + "i";
    if (is_zero(x.re))
        return im;
    if (im.front() == '-')
        return x.re.get_str() + im;
    return x.re.get_str() + "+" + im;
}

bool is_rational_literal(std::string_view text)
{
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
        ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        ++digits;
    }
    if (digits == 0)
        return false;
    if (pos == text.size())
        return true;
    if (text[pos] != '/')
        return false;
    ++pos;
    bool nonzero = false;
    digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        nonzero = nonzero || text[pos] != '0';
        ++pos;
        ++digits;
    }
    return digits > 0 && pos == text.size() && nonzero;
}

Rational parse_rational(std::string_view text)
{
    if (!is_rational_literal(text))
        throw InvalidInput("malformed rational '" + std::string(text) + "'");
    std::string s(text);
    if (s.front() == '+')
        s.erase(0, 1);
    Rational x(s, 10);
    x.canonicalize();
    return x;
}

bool rational_sqrt(const Rational& x, Rational& root)
{
    if (sgn(x) < 0)
        return false;
    const mpz_class& n = x.get_num();
    const mpz_class& d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return false;
    mpz_class rn = sqrt(n);
    mpz_class rd = sqrt(d);
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

} // namespace foliage
