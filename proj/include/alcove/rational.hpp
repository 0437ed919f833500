#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "alcove/errors.hpp"

namespace alcove {

// All polytope data is measured in units of pi, so coordinates, bounds and
// slopes stay rational and every geometric predicate is decided exactly.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

Rational make_rational(long num, long den);

// Accepts "p/q" or "p" with optional sign; q > 0 after normalisation.
Rational parse_rational(const std::string& text);

// Renders "p/q", or just "p" when the denominator is one.
std::string rational_str(const Rational& r);

long floor_long(const Rational& r);
bool is_integer(const Rational& r);

// True when m * x is an integer; m must be positive.
bool is_integer_multiple(const Rational& x, long m);

Rational frac_part(const Rational& r);  // r - floor(r), in [0, 1)

// Degree-one polynomial const_part + slope * x.  The symbolic vertex tables
// store one of these per coordinate.
struct AffineForm {
    Rational const_part;
    Rational slope;

    bool operator==(const AffineForm& other) const = default;
    bool is_zero() const { return const_part == 0 && slope == 0; }
};

Rational evaluate(const AffineForm& f, const Rational& x);

// Line through (x1, v1) and (x2, v2); equal abscissae are refused.
AffineForm interpolate_affine(const Rational& x1, const Rational& v1,
                              const Rational& x2, const Rational& v2);

std::string affine_str(const AffineForm& f);

double to_double(const Rational& r);

}  // namespace alcove
