#include "alcove/rational.hpp"

#include <cctype>
#include <sstream>

namespace alcove {

Rational make_rational(long num, long den) {
    if (den == 0) throw precondition_error("rational with zero denominator");
    Rational r(num);
    r /= den;
    return r;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw parse_error("empty rational literal");

    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(s));
        }
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in '" + text + "'");
        Rational r(num);
        r /= Rational(den);
        return r;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("malformed rational literal '" + text + "'");
    }
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

long floor_long(const Rational& r) {
    BigInt num = numerator(r), den = denominator(r);
    BigInt q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return static_cast<long>(q);
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

bool is_integer_multiple(const Rational& x, long m) {
    if (m <= 0) throw precondition_error("is_integer_multiple needs m > 0");
    Rational y = x;
    y *= m;
    return is_integer(y);
}

Rational frac_part(const Rational& r) {
    Rational f = r;
    f -= floor_long(r);
    return f;
}

Rational evaluate(const AffineForm& f, const Rational& x) {
    Rational v = f.slope;
    v *= x;
    v += f.const_part;
    return v;
}

AffineForm interpolate_affine(const Rational& x1, const Rational& v1,
                              const Rational& x2, const Rational& v2) {
    if (x1 == x2)
        throw precondition_error("interpolate_affine: equal abscissae " +
                                 rational_str(x1));
    Rational slope = v2;
    slope -= v1;
    Rational dx = x2;
    dx -= x1;
    slope /= dx;
    Rational c = v1;
    Rational sx = slope;
    sx *= x1;
    c -= sx;
    return AffineForm{c, slope};
}

std::string affine_str(const AffineForm& f) {
    if (f.slope == 0) return rational_str(f.const_part);
    std::string sx = rational_str(f.slope) + "*x";
    if (f.const_part == 0) return sx;
    if (f.const_part > 0) return sx + " + " + rational_str(f.const_part);
    Rational neg = f.const_part;
    neg *= -1;
    return sx + " - " + rational_str(neg);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace alcove
