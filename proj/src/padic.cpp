#include "iwasawa/padic.hpp"

#include <algorithm>
#include <sstream>

namespace iwasawa {

namespace detail {

long long pow_ll(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

long long mod_pow(long long b, long long e, long long m) {
    if (m == 1) return 0;
    unsigned __int128 acc = 1, cur = static_cast<unsigned __int128>(((b % m) + m) % m);
    while (e > 0) {
        if (e & 1) acc = acc * cur % static_cast<unsigned __int128>(m);
        cur = cur * cur % static_cast<unsigned __int128>(m);
        e >>= 1;
    }
    return static_cast<long long>(acc);
}

long long mod_inverse(long long a, long long m) {
    long long r0 = m, r1 = ((a % m) + m) % m;
    __int128 t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        __int128 t2 = t0 - static_cast<__int128>(q) * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw PreconditionViolated("mod_inverse: argument not invertible");
    long long t = static_cast<long long>(t0 % static_cast<__int128>(m));
    return t < 0 ? t + m : t;
}

int val_p(long long v, long long p) {
    if (v < 0) v = -v;
    int e = 0;
    while (v % p == 0) { v /= p; ++e; }
    return e;
}

bool is_prime(long long v) {
    if (v < 2) return false;
    for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

namespace {
// 4611686018427387904 = 2^62; moduli are kept strictly below this.
constexpr long long kModulusCap = 1LL << 62;
} // namespace

} // namespace detail

PadicContext::PadicContext(long long p_, int n_) : p(p_), n(n_) {
    if (p < 3 || p % 2 == 0 || !detail::is_prime(p))
        throw PreconditionViolated("PadicContext: p must be an odd prime >= 3");
    if (n < 1)
        throw PreconditionViolated("PadicContext: precision must be >= 1");
    long long acc = 1;
    for (int i = 0; i < n; ++i) {
        if (acc > (detail::kModulusCap - 1) / p)
            throw PreconditionViolated("PadicContext: p^n exceeds the 2^62 working cap");
        acc *= p;
    }
}

long long PadicContext::pow(int k) const {
    if (k < 0 || k > n)
        throw PreconditionViolated("PadicContext::pow: exponent outside [0, n]");
    return detail::pow_ll(p, k);
}

std::string PadicContext::describe() const {
    std::ostringstream os;
    os << "Z_" << p << " at precision " << n;
    return os.str();
}

PadicNumber::PadicNumber(const PadicContext& ctx, bool zero, long long e, long long u,
                         long long known)
    : ctx_(ctx), zero_(zero), e_(e), u_(u), known_(known) {}

PadicNumber PadicNumber::zero(const PadicContext& ctx) { return zero_at(ctx, ctx.n); }

PadicNumber PadicNumber::zero_at(const PadicContext& ctx, long long known) {
    return PadicNumber(ctx, true, 0, 0, known);
}

// Canonicalize p^e * rep at absolute precision `known`. rep may carry p-powers
// and need not be reduced; rep = 0 collapses to the zero flag.
PadicNumber PadicNumber::make(const PadicContext& ctx, long long e, long long rep,
                              long long known) {
    if (known - e > ctx.n)
        throw PreconditionViolated("PadicNumber: relative precision above n");
    if (known <= e) {
        // Every digit of rep lies beyond the certainty horizon.
        return zero_at(ctx, known);
    }
    int rel = static_cast<int>(known - e);
    long long m = ctx.pow(rel);
    rep %= m;
    if (rep < 0) rep += m;
    if (rep == 0) return zero_at(ctx, known);
    int v = detail::val_p(rep, ctx.p);
    long long u = (rep / detail::pow_ll(ctx.p, v)) % ctx.pow(rel - v);
    return PadicNumber(ctx, false, e + v, u, known);
}

PadicNumber PadicNumber::from_integer(const PadicContext& ctx, long long v) {
    if (v == 0) return zero(ctx);
    bool neg = v < 0;
    if (neg) v = -v;
    int e = detail::val_p(v, ctx.p);
    long long unit_part = v / detail::pow_ll(ctx.p, e);
    long long u = unit_part % ctx.pn();
    if (neg) u = ctx.pn() - u;
    return PadicNumber(ctx, false, e, u, e + ctx.n);
}

PadicNumber PadicNumber::from_rational(const PadicContext& ctx, long long num, long long den) {
    if (den == 0) throw DivisionByZero("from_rational: zero denominator");
    return from_integer(ctx, num) / from_integer(ctx, den);
}

PadicNumber PadicNumber::from_residue(const PadicContext& ctx, long long r) {
    if (r < 0 || r >= ctx.pn())
        throw PreconditionViolated("from_residue: representative outside [0, p^n)");
    return make(ctx, 0, r, ctx.n);
}

PadicNumber PadicNumber::from_unit_exponent(const PadicContext& ctx, long long e, long long u) {
    if (u <= 0 || u >= ctx.pn() || u % ctx.p == 0)
        throw PreconditionViolated("from_unit_exponent: u must lie in [1, p^n) and be prime to p");
    return PadicNumber(ctx, false, e, u, e + ctx.n);
}

std::optional<long long> PadicNumber::valuation() const {
    if (zero_) return std::nullopt;
    return e_;
}

long long PadicNumber::digits() const { return zero_ ? 0 : known_ - e_; }

long long PadicNumber::residue(int k) const {
    if (!is_integral())
        throw PreconditionViolated("residue: value has negative valuation");
    if (k < 0 || k > ctx_.n)
        throw PreconditionViolated("residue: digit count outside [0, n]");
    if (zero_ || e_ >= k) return 0;
    unsigned __int128 r = static_cast<unsigned __int128>(u_) *
                          static_cast<unsigned __int128>(detail::pow_ll(ctx_.p, static_cast<int>(e_)));
    return static_cast<long long>(r % static_cast<unsigned __int128>(ctx_.pow(k)));
}

void PadicNumber::require_same_context(const PadicNumber& o) const {
    if (ctx_ != o.ctx_)
        throw ContextMismatch("p-adic operands from different contexts: " + ctx_.describe() +
                              " vs " + o.ctx_.describe());
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    require_same_context(o);
    if (zero_ && o.zero_) return zero_at(ctx_, std::min(known_, o.known_));
    if (zero_) return o.capped(std::min(known_, o.known_));
    if (o.zero_) return capped(std::min(known_, o.known_));
    long long known = std::min(known_, o.known_);
    long long base = std::min(e_, o.e_);
    // known - base <= n: each operand has at most n digits above its valuation.
    int width = static_cast<int>(known - base);
    long long m = ctx_.pow(width);
    long long a = (e_ - base >= width) ? 0
                : static_cast<long long>(static_cast<unsigned __int128>(u_ % ctx_.pow(width - static_cast<int>(e_ - base))) *
                      static_cast<unsigned __int128>(detail::pow_ll(ctx_.p, static_cast<int>(e_ - base))) %
                      static_cast<unsigned __int128>(m));
    long long b = (o.e_ - base >= width) ? 0
                : static_cast<long long>(static_cast<unsigned __int128>(o.u_ % ctx_.pow(width - static_cast<int>(o.e_ - base))) *
                      static_cast<unsigned __int128>(detail::pow_ll(ctx_.p, static_cast<int>(o.e_ - base))) %
                      static_cast<unsigned __int128>(m));
    return make(ctx_, base, a + b, known);
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    long long m = ctx_.pow(static_cast<int>(known_ - e_));
    return PadicNumber(ctx_, false, e_, m - u_, known_);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    require_same_context(o);
    if (zero_ && o.zero_) return zero_at(ctx_, known_ + o.known_);
    if (zero_) return zero_at(ctx_, known_ + o.e_);
    if (o.zero_) return zero_at(ctx_, o.known_ + e_);
    int rel = static_cast<int>(std::min(known_ - e_, o.known_ - o.e_));
    long long m = ctx_.pow(rel);
    long long u = static_cast<long long>(static_cast<unsigned __int128>(u_ % m) *
                                         static_cast<unsigned __int128>(o.u_ % m) %
                                         static_cast<unsigned __int128>(m));
    return PadicNumber(ctx_, false, e_ + o.e_, u, e_ + o.e_ + rel);
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const {
    require_same_context(o);
    if (o.zero_) throw DivisionByZero("p-adic division by a value indistinguishable from zero");
    if (zero_) return zero_at(ctx_, known_ - o.e_);
    int rel = static_cast<int>(std::min(known_ - e_, o.known_ - o.e_));
    long long m = ctx_.pow(rel);
    long long u = static_cast<long long>(static_cast<unsigned __int128>(u_ % m) *
                                         static_cast<unsigned __int128>(detail::mod_inverse(o.u_ % m, m)) %
                                         static_cast<unsigned __int128>(m));
    return PadicNumber(ctx_, false, e_ - o.e_, u, e_ - o.e_ + rel);
}

PadicNumber PadicNumber::pow(long long m) const {
    if (m == 0) return from_integer(ctx_, 1);
    if (zero_) {
        if (m < 0) throw DivisionByZero("pow: negative power of zero");
        return zero_at(ctx_, known_ * m);
    }
    PadicNumber base = m < 0 ? from_integer(ctx_, 1) / *this : *this;
    long long k = m < 0 ? -m : m;
    PadicNumber acc = from_integer(ctx_, 1);
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

PadicNumber PadicNumber::capped(long long known) const {
    if (known >= known_) return *this;
    if (zero_ || e_ >= known) return zero_at(ctx_, known);
    long long u = u_ % ctx_.pow(static_cast<int>(known - e_));
    return PadicNumber(ctx_, false, e_, u, known);
}

bool PadicNumber::equals_at_precision(const PadicNumber& o) const {
    return (*this - o).is_zero();
}

std::string PadicNumber::describe() const {
    std::ostringstream os;
    if (zero_)
        os << "O(" << ctx_.p << "^" << known_ << ")";
    else
        os << u_ << "*" << ctx_.p << "^" << e_ << " + O(" << ctx_.p << "^" << known_ << ")";
    return os.str();
}

PadicNumber cyclotomic_u(const PadicContext& ctx) {
    return PadicNumber::from_integer(ctx, 1 + ctx.p);
}

PadicNumber cyclotomic_u(const PadicContext& ctx, long long override_u) {
    long long p2 = ctx.p * ctx.p;
    if (override_u <= 0 || override_u % ctx.p != 1 % ctx.p || (override_u - 1) % ctx.p != 0 ||
        (override_u - 1) % p2 == 0)
        throw InvalidGenerator("cyclotomic generator image must satisfy u = 1 mod p, u != 1 mod p^2");
    return PadicNumber::from_integer(ctx, override_u);
}

} // namespace iwasawa
