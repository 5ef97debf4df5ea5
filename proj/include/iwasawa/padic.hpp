#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "iwasawa/errors.hpp"

namespace iwasawa {

/****************************************************************************
 *
 * Fixed-precision p-adic scalars.
 *
 * A value of K = Q_p is stored as p^e * u with u a unit representative,
 * together with the absolute precision to which the value is known:
 * "known_to() = m" means the value is pinned modulo p^m. Freshly
 * constructed values carry n guaranteed digits (m = e + n); addition of
 * operands with mismatched valuations can only lose digits, never invent
 * them. A value all of whose certain digits vanish collapses to the
 * zero flag, which asserts membership in p^m Z_p and nothing more.
 *
 * All moduli are kept below 2^62 so that products fit in __int128.
 *
 ****************************************************************************/

struct PadicContext {
    long long p = 3; // odd prime
    int n = 12;      // guaranteed digit count for fresh values

    PadicContext() = default;
    PadicContext(long long p_, int n_);

    bool operator==(const PadicContext& o) const { return p == o.p && n == o.n; }
    bool operator!=(const PadicContext& o) const { return !(*this == o); }

    // p^k for 0 <= k <= n.
    long long pow(int k) const;
    long long pn() const { return pow(n); }

    std::string describe() const;
};

namespace detail {
long long pow_ll(long long base, int exp);           // no overflow checks
long long mod_pow(long long b, long long e, long long m);
long long mod_inverse(long long a, long long m);     // gcd(a, m) = 1 required
int val_p(long long v, long long p);                 // v != 0
bool is_prime(long long v);
} // namespace detail

class PadicNumber {
public:
    // Exact-style constructors; all carry n relative digits.
    static PadicNumber zero(const PadicContext& ctx);
    static PadicNumber zero_at(const PadicContext& ctx, long long known);
    static PadicNumber from_integer(const PadicContext& ctx, long long v);
    static PadicNumber from_rational(const PadicContext& ctx, long long num, long long den);
    // Residue class modulo p^n (absolute): the series-coefficient view.
    static PadicNumber from_residue(const PadicContext& ctx, long long r);
    // Raw (e, u) pair as in the serialized form; u reduced into [1, p^n).
    static PadicNumber from_unit_exponent(const PadicContext& ctx, long long e, long long u);

    const PadicContext& context() const { return ctx_; }
    bool is_zero() const { return zero_; }
    // e for nonzero values, empty for the zero flag.
    std::optional<long long> valuation() const;
    long long exponent() const { return e_; }   // nonzero values only
    long long unit() const { return u_; }       // nonzero values only
    long long known_to() const { return known_; }
    // Count of certain digits (known_to - e for nonzero values).
    long long digits() const;

    bool is_integral() const { return zero_ || e_ >= 0; }
    // Canonical representative in [0, p^k); requires an integral value.
    long long residue(int k) const;

    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber operator/(const PadicNumber& o) const;
    PadicNumber operator-() const;

    PadicNumber pow(long long m) const;

    // Re-certify at a lower absolute precision; collapses to the zero flag
    // when no certain digit survives.
    PadicNumber capped(long long known) const;

    // Equality of the certain digits (difference is the zero flag).
    bool equals_at_precision(const PadicNumber& o) const;

    std::string describe() const;

private:
    PadicNumber(const PadicContext& ctx, bool zero, long long e, long long u, long long known);
    static PadicNumber make(const PadicContext& ctx, long long e, long long rep, long long known);
    void require_same_context(const PadicNumber& o) const;

    PadicContext ctx_;
    bool zero_ = true;
    long long e_ = 0;
    long long u_ = 0;
    long long known_ = 0;
};

// Image of the fixed topological generator under the cyclotomic character.
// The default convention is u = 1 + p; an override must satisfy
// u = 1 mod p and u != 1 mod p^2.
PadicNumber cyclotomic_u(const PadicContext& ctx);
PadicNumber cyclotomic_u(const PadicContext& ctx, long long override_u);

} // namespace iwasawa
