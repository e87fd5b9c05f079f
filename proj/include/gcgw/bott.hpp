#pragma once

// Two independent routes to the dimensions of twisted-form cohomology over
// the projective line's leaf-space model: the closed-form binomial table,
// and a brute-force Cech computation on the two-chart cover by truncated
// Laurent polynomials.  The pair is kept deliberately independent: one is
// arithmetic, the other is an exact rank computation.

#include <string>

#include "gcgw/linalg.hpp"
#include "gcgw/ratfunc.hpp"

namespace gcgw {

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r = 1;
    for (long t = 0; t < k; ++t) {
        r *= Integer(n - t);
        r /= Integer(t + 1);
    }
    return r;
}

// dim H^q of the sheaf of p-forms twisted by the degree-m line bundle over
// the n-dimensional projective leaf space
inline Integer bott_dims(long n, long m, long p, long q) {
    if (n < 1) throw input_error("bott_dims needs n >= 1");
    if (p < 0 || q < 0) return 0;
    if (q == 0 && p <= n && m > p) return binomial(m + n - p, m) * binomial(m - 1, p);
    if (q == n && p <= n && m < p - n) return binomial(-m + p, -m) * binomial(-m - 1, n - p);
    if (m == 0 && p == q && p <= n) return 1;
    return 0;
}

// Cech cohomology of the degree-m transition cocycle z^m on the standard
// two-chart cover of the line, computed by truncating both chart rings at
// polynomial degree d and the overlap ring at Laurent degree [-d, d].
// Stability under d -> d+1 is asserted, so the returned value is the stable
// dimension.
inline int cech_oracle_p1(long m, int q, int truncation_degree) {
    if (q != 0 && q != 1) throw input_error("cech_oracle_p1: q must be 0 or 1");
    if (truncation_degree < std::abs(m) + 2)
        throw input_error("cech_oracle_p1: truncation must be at least |m| + 2");

    auto compute = [&](int d) {
        // C^0 = {(f0, f1)}: chart polynomials, f0 of degree <= d0 and f1 of
        // degree <= d1 = d0 + |m| so that every image monomial lands inside
        // the overlap window; C^1 = Laurent exponents [m - d1, max(d0, m)].
        // delta(f0, f1) = f0(z) - z^m f1(1/z).
        int d0 = d, d1 = d + static_cast<int>(std::abs(m));
        long lo = m - d1, hi = std::max<long>(d0, m);
        int c0 = (d0 + 1) + (d1 + 1);
        int c1 = static_cast<int>(hi - lo + 1);
        QiMatrix delta(c1, c0);
        auto row_of = [&](long e) { return static_cast<int>(e - lo); };
        for (int j = 0; j <= d0; ++j) delta(row_of(j), j) = GaussianRational(1);
        for (int j = 0; j <= d1; ++j) delta(row_of(m - j), d0 + 1 + j) = GaussianRational(-1);
        int rank = delta.rank();
        int h0 = c0 - rank;
        int h1 = c1 - rank;
        return std::make_pair(h0, h1);
    };
    auto [h0a, h1a] = compute(truncation_degree);
    auto [h0b, h1b] = compute(truncation_degree + 1);
    if (h0a != h0b || h1a != h1b)
        throw contract_error("cech_oracle_p1: dimensions did not stabilize at the given truncation");
    return q == 0 ? h0a : h1a;
}

// Laurent coefficient extraction for a univariate rational function around
// the origin: the coefficient of z^target in the expansion of f.
inline GaussianRational laurent_coefficient(const RationalFunction& f, int var, int target) {
    if (f.is_zero()) return GaussianRational(0);
    // strip powers of z from numerator and denominator
    auto strip = [&](const Polynomial& p) {
        int low = 1 << 20;
        for (const auto& [e, c] : p.terms) low = std::min(low, e[var]);
        Polynomial out(p.nvars);
        for (const auto& [e, c] : p.terms) {
            Expo e2 = e;
            e2[var] -= low;
            out.add_term(e2, c);
        }
        return std::make_pair(low, out);
    };
    auto [a, nhat] = strip(f.num);
    auto [b, dhat] = strip(f.den);
    int shift = target - (a - b);
    if (shift < 0) return GaussianRational(0);
    // series coefficients of nhat / dhat up to order `shift`
    auto coeff_of = [&](const Polynomial& p, int e) {
        for (const auto& [ex, c] : p.terms)
            if (ex[var] == e) return c;
        return GaussianRational(0);
    };
    GaussianRational d0 = coeff_of(dhat, 0);
    if (d0.is_zero()) throw contract_error("laurent_coefficient: denominator not normalized");
    std::vector<GaussianRational> inv(shift + 1);
    inv[0] = GaussianRational(1) / d0;
    for (int t = 1; t <= shift; ++t) {
        GaussianRational s;
        for (int j = 1; j <= t; ++j) s += coeff_of(dhat, j) * inv[t - j];
        inv[t] = -(s / d0);
    }
    GaussianRational out;
    for (int t = 0; t <= shift; ++t) out += coeff_of(nhat, t) * inv[shift - t];
    return out;
}

} // namespace gcgw
