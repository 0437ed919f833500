#pragma once

#include <utility>
#include <vector>

#include "alcove/rational.hpp"

namespace alcove {

// The coupling parameter x = y/pi is admissible for order n exactly when it
// avoids the Farey fractions of order n.  Between consecutive excluded values
// the polytope combinatorics is constant, so intervals are the natural unit
// of classification.
enum class IntervalType { TypeI, TypeII };

struct FareyInterval {
    Rational lower;
    Rational upper;
    int order_n = 0;
    IntervalType interval_type = IntervalType::TypeII;
    int k_index = 0;  // floor(n * x) for any x inside
};

// F_n as an ascending vector of reduced fractions in [0, 1].
std::vector<Rational> farey_sequence(int n);

// For reduced kappa/n, the two neighbours a/b < kappa/n < c/d in F_n with
// b*kappa - a*n = 1 and n*c - kappa*d = 1.
std::pair<Rational, Rational> farey_neighbours(long kappa, long n);

// x avoids every excluded value of order n; requires 0 < x < 1.
bool is_admissible(const Rational& x, int n);

Rational mediant(const Rational& a, const Rational& b);

// Consecutive-interval decomposition of (0, 1), or of (0, 1/2] when
// restrict_to_half is set.  An interval is TypeI when one of its endpoints
// has reduced denominator exactly n (the polytope degenerates to a simplex
// there), TypeII otherwise.
std::vector<FareyInterval> classify_intervals(int n, bool restrict_to_half);

struct IntervalCountRow {
    int n = 0;
    int type_i = 0;
    int type_ii = 0;
};

// Counts over (0, 1/2) for each order in [n_min, n_max]; the y <-> pi - y
// symmetry makes the upper half redundant.
std::vector<IntervalCountRow> interval_counts_table(int n_min, int n_max);

}  // namespace alcove
