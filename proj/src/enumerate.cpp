#include <algorithm>
#include <cstdint>
#include <numeric>
#include <thread>
#include <unordered_set>
#include <vector>

#include "alcove/polytope.hpp"

// Vertex enumeration: every vertex of the (n-1)-dimensional polytope is the
// unique solution of n-1 window equalities plus the hyperplane condition.
// All candidate subsets of that size are solved exactly with fraction-free
// (Bareiss) elimination over integers; int64 arithmetic suffices for n <= 15
// and moderate denominators (minor bounds stay far below 2^63), with a
// GMP-integer fallback for everything else.

namespace alcove {
namespace {

struct PoolRow {
    std::uint32_t mask = 0;
    Sense sense = Sense::LessEq;
    int id = 0;
};

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    static const auto table = [] {
        std::array<std::array<std::uint64_t, 33>, 33> t{};
        for (int i = 0; i <= 32; ++i) {
            t[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
        }
        return t;
    }();
    return table[n][k];
}

void combination_from_rank(int m, int r, std::uint64_t rank, int* out) {
    int value = 0;
    for (int slot = 0; slot < r; ++slot) {
        while (binom(m - 1 - value, r - 1 - slot) <= rank) {
            rank -= binom(m - 1 - value, r - 1 - slot);
            ++value;
        }
        out[slot] = value++;
    }
}

bool next_combination(int m, int r, int* idx) {
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == m - r + pos) --pos;
    if (pos < 0) return false;
    ++idx[pos];
    for (int j = pos + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

template <class I>
I gcd_of(const I& a, const I& b);

template <>
std::int64_t gcd_of(const std::int64_t& a, const std::int64_t& b) {
    return std::gcd(a, b);
}

template <>
BigInt gcd_of(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

// Solves the subset system exactly.  On success w[i] = D * xi_i * q with
// D > 0, i.e. xi_i = w[i] / (D * q).  Returns false on a singular subset.
template <class I>
bool solve_subset(int n, const std::vector<PoolRow>& pool, const int* idx,
                  const I& p, const I& q, std::vector<I>& M,
                  std::vector<I>& w, I& D) {
    const int cols = n + 1;
    for (int r = 0; r < n - 1; ++r) {
        std::uint32_t mask = pool[idx[r]].mask;
        for (int c = 0; c < n; ++c) M[r * cols + c] = (mask >> c) & 1u;
        M[r * cols + n] = p;
    }
    for (int c = 0; c < n; ++c) M[(n - 1) * cols + c] = 1;
    M[(n - 1) * cols + n] = q;

    I prev(1);
    for (int k = 0; k < n; ++k) {
        int pr = -1;
        for (int r = k; r < n; ++r)
            if (M[r * cols + k] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) return false;
        if (pr != k)
            for (int c = k; c <= n; ++c)
                std::swap(M[k * cols + c], M[pr * cols + c]);
        const I piv = M[k * cols + k];
        for (int i = k + 1; i < n; ++i) {
            const I mik = M[i * cols + k];
            for (int j = k + 1; j <= n; ++j)
                M[i * cols + j] =
                    (piv * M[i * cols + j] - mik * M[k * cols + j]) / prev;
            M[i * cols + k] = 0;
        }
        prev = piv;
    }

    D = M[(n - 1) * cols + (n - 1)];
    for (int i = n - 1; i >= 0; --i) {
        I acc = D * M[i * cols + n];
        for (int j = i + 1; j < n; ++j) acc -= M[i * cols + j] * w[j];
        w[i] = acc / M[i * cols + i];
    }
    if (D < 0) {
        D = -D;
        for (int i = 0; i < n; ++i) w[i] = -w[i];
    }
    return true;
}

// Checks w / (D*q) against every window inequality.
template <class I>
bool feasible(int n, const std::vector<PoolRow>& pool, const std::vector<I>& w,
              const I& p, const I& D) {
    for (int i = 0; i < n; ++i)
        if (w[i] < 0) return false;
    const I bound = p * D;
    for (const PoolRow& row : pool) {
        I sum(0);
        for (int c = 0; c < n; ++c)
            if ((row.mask >> c) & 1u) sum += w[c];
        if (row.sense == Sense::LessEq ? sum > bound : sum < bound)
            return false;
    }
    return true;
}

template <class I>
std::vector<I> canonical_key(int n, const std::vector<I>& w, const I& D,
                             const I& q) {
    std::vector<I> key(n + 1);
    I den = D * q;
    I g = den;
    for (int i = 0; i < n; ++i) g = gcd_of<I>(g, w[i] < 0 ? I(-w[i]) : w[i]);
    if (g == 0) g = 1;
    for (int i = 0; i < n; ++i) key[i] = w[i] / g;
    key[n] = den / g;
    return key;
}

struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int64_t x : v) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct BigKeyHash {
    std::size_t operator()(const std::vector<BigInt>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (const BigInt& x : v) {
            h ^= std::hash<std::string>{}(x.str());
            h *= 1099511628211ull;
        }
        return h;
    }
};

template <class I, class Hash>
std::vector<std::vector<I>> enumerate_keys(int n,
                                           const std::vector<PoolRow>& pool,
                                           const I& p, const I& q,
                                           int threads) {
    const int m = static_cast<int>(pool.size());
    const int r = n - 1;
    const std::uint64_t total = binom(m, r);
    if (threads <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        threads = hc == 0 ? 1 : static_cast<int>(hc);
    }
    threads = std::max(1, std::min<int>(threads, 64));
    if (total < 4096) threads = 1;

    std::vector<std::unordered_set<std::vector<I>, Hash>> found(threads);
    auto worker = [&](int t) {
        std::uint64_t lo = total * t / threads;
        std::uint64_t hi = total * (t + 1) / threads;
        if (lo >= hi) return;
        std::vector<int> idx(r);
        combination_from_rank(m, r, lo, idx.data());
        std::vector<I> M(static_cast<std::size_t>(n) * (n + 1));
        std::vector<I> w(n);
        I D;
        for (std::uint64_t rank = lo; rank < hi; ++rank) {
            if (solve_subset<I>(n, pool, idx.data(), p, q, M, w, D) &&
                feasible<I>(n, pool, w, p, D))
                found[t].insert(canonical_key<I>(n, w, D, q));
            if (rank + 1 < hi) next_combination(m, r, idx.data());
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> ts;
        ts.reserve(threads);
        for (int t = 0; t < threads; ++t) ts.emplace_back(worker, t);
        for (auto& t : ts) t.join();
    }

    std::vector<std::vector<I>> merged;
    for (auto& s : found)
        for (auto& key : s) merged.push_back(key);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return merged;
}

template <class I>
Rational key_coord(const std::vector<I>& key, int i) {
    Rational r(key[i]);
    r /= Rational(key.back());
    return r;
}

}  // namespace

void enumerate_vertices(PolytopeModel& model, const BuildOptions& opt) {
    const int n = model.n;
    std::vector<PoolRow> pool;
    for (const Halfspace& h : model.inequalities) {
        if (h.vacuous) continue;
        PoolRow row;
        for (int c = 0; c < n; ++c)
            if (h.coeffs[c]) row.mask |= 1u << c;
        row.sense = h.sense;
        row.id = h.ell + (h.sense == Sense::GreaterEq ? n : 0);
        pool.push_back(row);
    }

    const BigInt pb = numerator(model.x), qb = denominator(model.x);
    const bool fits_int64 =
        !opt.force_bigint && n <= 15 && qb <= 100000 && pb <= 100000;

    std::vector<std::vector<Rational>> points;
    if (fits_int64) {
        auto keys = enumerate_keys<std::int64_t, KeyHash>(
            n, pool, static_cast<std::int64_t>(pb),
            static_cast<std::int64_t>(qb), opt.threads);
        for (const auto& key : keys) {
            std::vector<Rational> pt(n);
            for (int i = 0; i < n; ++i) pt[i] = key_coord(key, i);
            points.push_back(std::move(pt));
        }
    } else {
        auto keys =
            enumerate_keys<BigInt, BigKeyHash>(n, pool, pb, qb, opt.threads);
        for (const auto& key : keys) {
            std::vector<Rational> pt(n);
            for (int i = 0; i < n; ++i) pt[i] = key_coord(key, i);
            points.push_back(std::move(pt));
        }
    }

    std::sort(points.begin(), points.end());
    model.vertices.clear();
    model.vertex_active.clear();
    for (auto& pt : points) {
        AlcovePoint v(std::move(pt));
        std::vector<int> active;
        for (std::size_t i = 0; i < model.inequalities.size(); ++i) {
            const Halfspace& h = model.inequalities[i];
            if (h.vacuous) continue;
            Rational sum(0);
            for (int c = 0; c < n; ++c)
                if (h.coeffs[c]) sum += v.coords[c];
            if (sum == model.x) active.push_back(static_cast<int>(i));
        }
        model.vertices.push_back(std::move(v));
        model.vertex_active.push_back(std::move(active));
    }
}

}  // namespace alcove
