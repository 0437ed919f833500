#include "alcove/farey.hpp"

#include <numeric>

namespace alcove {

std::vector<Rational> farey_sequence(int n) {
    if (n < 1) throw precondition_error("farey_sequence needs n >= 1");
    std::vector<Rational> out;
    // Stern-Brocot stepping: from consecutive a/b, c/d the successor is
    // (k*c - a)/(k*d - b) with k = floor((n + b)/d).
    long a = 0, b = 1, c = 1, d = n;
    out.push_back(make_rational(a, b));
    while (c <= n) {
        long k = (n + b) / d;
        long a2 = k * c - a, b2 = k * d - b;
        a = c;
        b = d;
        c = a2;
        d = b2;
        out.push_back(make_rational(a, b));
    }
    return out;
}

namespace {

long mod_inverse(long value, long modulus) {
    long r0 = modulus, r1 = ((value % modulus) + modulus) % modulus;
    long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) return -1;
    return ((t0 % modulus) + modulus) % modulus;
}

}  // namespace

std::pair<Rational, Rational> farey_neighbours(long kappa, long n) {
    if (n < 2 || kappa < 1 || kappa >= n)
        throw precondition_error("farey_neighbours needs 1 <= kappa < n, n >= 2");
    long b = mod_inverse(kappa, n);  // unique solution in [1, n-1]
    if (b <= 0)
        throw precondition_error("farey_neighbours: kappa/n is not reduced");
    long a = (b * kappa - 1) / n;
    long d = n - b;
    long c = (1 + kappa * d) / n;
    return {make_rational(a, b), make_rational(c, d)};
}

bool is_admissible(const Rational& x, int n) {
    if (x <= 0 || x >= 1)
        throw precondition_error("is_admissible needs 0 < x < 1, got " +
                                 rational_str(x));
    return denominator(x) > n;
}

Rational mediant(const Rational& a, const Rational& b) {
    BigInt num = numerator(a) + numerator(b);
    BigInt den = denominator(a) + denominator(b);
    Rational r(num);
    r /= Rational(den);
    return r;
}

std::vector<FareyInterval> classify_intervals(int n, bool restrict_to_half) {
    if (n < 3) throw precondition_error("classify_intervals needs n >= 3");
    std::vector<Rational> fences = farey_sequence(n);
    Rational half = make_rational(1, 2);
    std::vector<FareyInterval> out;
    for (std::size_t i = 0; i + 1 < fences.size(); ++i) {
        const Rational& lo = fences[i];
        const Rational& hi = fences[i + 1];
        if (restrict_to_half && lo >= half) break;
        FareyInterval iv;
        iv.lower = lo;
        iv.upper = hi;
        iv.order_n = n;
        bool deg_end = denominator(lo) == n || denominator(hi) == n;
        iv.interval_type = deg_end ? IntervalType::TypeI : IntervalType::TypeII;
        Rational mid = mediant(lo, hi);
        mid *= n;
        iv.k_index = floor_long(mid);
        out.push_back(iv);
    }
    return out;
}

std::vector<IntervalCountRow> interval_counts_table(int n_min, int n_max) {
    if (n_min < 3 || n_max < n_min)
        throw precondition_error("interval_counts_table needs 3 <= n_min <= n_max");
    std::vector<IntervalCountRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        IntervalCountRow row;
        row.n = n;
        for (const FareyInterval& iv : classify_intervals(n, true)) {
            if (iv.interval_type == IntervalType::TypeI)
                ++row.type_i;
            else
                ++row.type_ii;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace alcove
