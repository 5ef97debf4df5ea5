#include "iwasawa/series.hpp"

#include <algorithm>
#include <sstream>

namespace iwasawa {

namespace {

// Raw coefficient vectors modulo p^b. Products are accumulated in 128-bit
// cells; a reduction pass runs before the accumulator can overflow.
size_t reduction_stride(long long mod) {
    unsigned __int128 m2 = static_cast<unsigned __int128>(mod) * static_cast<unsigned __int128>(mod);
    unsigned __int128 budget = (~static_cast<unsigned __int128>(0)) / (m2 * 2);
    if (budget > (static_cast<unsigned __int128>(1) << 40)) return static_cast<size_t>(1) << 40;
    return static_cast<size_t>(budget);
}

std::vector<long long> ring_mul(const std::vector<long long>& a, const std::vector<long long>& b,
                                size_t out_len, long long mod) {
    std::vector<unsigned __int128> acc(out_len, 0);
    const size_t stride = std::max<size_t>(1, reduction_stride(mod));
    size_t rows = 0;
    for (size_t i = 0; i < a.size() && i < out_len; ++i) {
        if (a[i] == 0) continue;
        const unsigned __int128 ai = static_cast<unsigned __int128>(a[i]);
        const size_t jmax = std::min(b.size(), out_len - i);
        for (size_t j = 0; j < jmax; ++j)
            acc[i + j] += ai * static_cast<unsigned __int128>(b[j]);
        if (++rows >= stride) {
            for (auto& v : acc) v %= static_cast<unsigned __int128>(mod);
            rows = 0;
        }
    }
    std::vector<long long> out(out_len);
    for (size_t k = 0; k < out_len; ++k)
        out[k] = static_cast<long long>(acc[k] % static_cast<unsigned __int128>(mod));
    return out;
}

std::vector<long long> ring_inverse(const std::vector<long long>& a, size_t len, long long mod,
                                    long long p) {
    if (a.empty() || a[0] % p == 0)
        throw PreconditionViolated("series inversion requires a unit constant term");
    std::vector<long long> w(len, 0);
    const long long inv0 = detail::mod_inverse(a[0] % mod, mod);
    const size_t stride = std::max<size_t>(1, reduction_stride(mod));
    w[0] = inv0;
    for (size_t k = 1; k < len; ++k) {
        unsigned __int128 s = 0;
        size_t terms = 0;
        const size_t imax = std::min(k, a.size() - 1);
        for (size_t i = 1; i <= imax; ++i) {
            s += static_cast<unsigned __int128>(a[i] % mod) * static_cast<unsigned __int128>(w[k - i]);
            if (++terms >= stride) { s %= static_cast<unsigned __int128>(mod); terms = 0; }
        }
        s %= static_cast<unsigned __int128>(mod);
        unsigned __int128 t = static_cast<unsigned __int128>(mod - static_cast<long long>(s)) %
                              static_cast<unsigned __int128>(mod);
        w[k] = static_cast<long long>(t * static_cast<unsigned __int128>(inv0) %
                                      static_cast<unsigned __int128>(mod));
    }
    return w;
}

int residue_val(long long r, long long p, int cap) {
    if (r == 0) return cap;
    int v = 0;
    while (r % p == 0 && v < cap) { r /= p; ++v; }
    return v;
}

long long mul_mod(long long a, long long b, long long mod) {
    return static_cast<long long>(static_cast<unsigned __int128>(a) *
                                  static_cast<unsigned __int128>(b) %
                                  static_cast<unsigned __int128>(mod));
}

} // namespace

/* ------------------------------------------------------------------ */
/*  IwasawaSeries basics                                               */
/* ------------------------------------------------------------------ */

IwasawaSeries::IwasawaSeries(const PadicContext& ctx, int truncation)
    : ctx_(ctx), m_(truncation), c_(static_cast<size_t>(truncation), 0) {
    if (truncation < 1)
        throw PreconditionViolated("series truncation must be >= 1");
}

IwasawaSeries IwasawaSeries::from_residues(const PadicContext& ctx, int truncation,
                                           std::vector<long long> coeffs) {
    IwasawaSeries s(ctx, truncation);
    if (coeffs.size() > static_cast<size_t>(truncation))
        throw PreconditionViolated("more coefficients than the truncation length");
    const long long pn = ctx.pn();
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] < 0 || coeffs[i] >= pn)
            throw PreconditionViolated("series coefficient outside [0, p^n)");
        s.c_[i] = coeffs[i];
    }
    return s;
}

IwasawaSeries IwasawaSeries::from_integers(const PadicContext& ctx, int truncation,
                                           const std::vector<long long>& coeffs) {
    std::vector<long long> reduced(coeffs.size());
    const long long pn = ctx.pn();
    for (size_t i = 0; i < coeffs.size(); ++i)
        reduced[i] = ((coeffs[i] % pn) + pn) % pn;
    return from_residues(ctx, truncation, std::move(reduced));
}

IwasawaSeries IwasawaSeries::constant(const PadicContext& ctx, int truncation, long long value) {
    return from_integers(ctx, truncation, {value});
}

IwasawaSeries IwasawaSeries::monomial(const PadicContext& ctx, int truncation, int degree,
                                      long long value) {
    if (degree < 0 || degree >= truncation)
        throw PreconditionViolated("monomial degree outside [0, truncation)");
    std::vector<long long> coeffs(static_cast<size_t>(degree) + 1, 0);
    const long long pn = ctx.pn();
    coeffs[static_cast<size_t>(degree)] = ((value % pn) + pn) % pn;
    return from_residues(ctx, truncation, std::move(coeffs));
}

long long IwasawaSeries::coefficient(int idx) const {
    if (idx < 0 || idx >= m_) throw PreconditionViolated("coefficient index out of range");
    return c_[static_cast<size_t>(idx)];
}

PadicNumber IwasawaSeries::coefficient_value(int idx) const {
    return PadicNumber::from_residue(ctx_, coefficient(idx));
}

bool IwasawaSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](long long v) { return v == 0; });
}

bool IwasawaSeries::is_unit() const { return c_[0] % ctx_.p != 0; }

int IwasawaSeries::order() const {
    for (int i = 0; i < m_; ++i)
        if (c_[static_cast<size_t>(i)] != 0) return i;
    return m_;
}

void IwasawaSeries::require_compatible(const IwasawaSeries& o) const {
    if (ctx_ != o.ctx_ || m_ != o.m_)
        throw ContextMismatch("series operands disagree in context or truncation");
}

IwasawaSeries IwasawaSeries::operator+(const IwasawaSeries& o) const {
    require_compatible(o);
    IwasawaSeries out(ctx_, m_);
    const long long pn = ctx_.pn();
    for (int i = 0; i < m_; ++i)
        out.c_[static_cast<size_t>(i)] = (c_[static_cast<size_t>(i)] + o.c_[static_cast<size_t>(i)]) % pn;
    return out;
}

IwasawaSeries IwasawaSeries::operator-(const IwasawaSeries& o) const {
    require_compatible(o);
    IwasawaSeries out(ctx_, m_);
    const long long pn = ctx_.pn();
    for (int i = 0; i < m_; ++i)
        out.c_[static_cast<size_t>(i)] =
            ((c_[static_cast<size_t>(i)] - o.c_[static_cast<size_t>(i)]) % pn + pn) % pn;
    return out;
}

IwasawaSeries IwasawaSeries::operator*(const IwasawaSeries& o) const {
    require_compatible(o);
    IwasawaSeries out(ctx_, m_);
    out.c_ = ring_mul(c_, o.c_, static_cast<size_t>(m_), ctx_.pn());
    return out;
}

bool IwasawaSeries::operator==(const IwasawaSeries& o) const {
    return ctx_ == o.ctx_ && m_ == o.m_ && c_ == o.c_;
}

IwasawaSeries IwasawaSeries::scaled(long long value) const {
    const long long pn = ctx_.pn();
    long long v = ((value % pn) + pn) % pn;
    IwasawaSeries out(ctx_, m_);
    for (int i = 0; i < m_; ++i)
        out.c_[static_cast<size_t>(i)] = mul_mod(c_[static_cast<size_t>(i)], v, pn);
    return out;
}

IwasawaSeries IwasawaSeries::shifted_up(int k) const {
    if (k < 0) throw PreconditionViolated("negative shift");
    IwasawaSeries out(ctx_, m_);
    for (int i = m_ - 1; i >= k; --i)
        out.c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i - k)];
    return out;
}

std::string IwasawaSeries::describe() const {
    std::ostringstream os;
    os << "[";
    int printed = 0;
    for (int i = 0; i < m_ && printed < 8; ++i) {
        if (c_[static_cast<size_t>(i)] == 0) continue;
        if (printed) os << " + ";
        os << c_[static_cast<size_t>(i)] << "*X^" << i;
        ++printed;
    }
    if (printed == 0) os << "0";
    os << "] mod (" << ctx_.p << "^" << ctx_.n << ", X^" << m_ << ")";
    return os.str();
}

/* ------------------------------------------------------------------ */
/*  Weierstrass preparation                                            */
/* ------------------------------------------------------------------ */

IwasawaSeries DistinguishedPoly::as_series(const PadicContext& ctx, int truncation) const {
    if (degree >= truncation)
        throw PreconditionViolated("distinguished polynomial does not fit the truncation");
    std::vector<long long> c(coeffs.begin(), coeffs.end());
    c.resize(static_cast<size_t>(degree) + 1, 0);
    c[static_cast<size_t>(degree)] = 1;
    return IwasawaSeries::from_residues(ctx, truncation, std::move(c));
}

IwasawaSeries WeierstrassData::recompose() const {
    const PadicContext& ctx = unit.context();
    IwasawaSeries p = poly.as_series(ctx, unit.truncation());
    return (p * unit).scaled(detail::pow_ll(ctx.p, mu));
}

// The division iteration runs on the exact truncated polynomial, zero-padded
// to M + lambda*(b+1) working coefficients so that every edge effect of the
// shift-down operator stays p-adically invisible below X^M.
WeierstrassData weierstrass_prep(const IwasawaSeries& f, int guard) {
    const PadicContext& ctx = f.context();
    const int n = ctx.n;
    const int m = f.truncation();
    if (guard < 0) guard = n;
    if (m - guard < 1)
        throw PreconditionViolated("guard band leaves no certified window");

    int mu = n;
    for (long long r : f.residues())
        mu = std::min(mu, residue_val(r, ctx.p, n));
    if (mu >= n)
        throw PrecisionExhausted("mu undeterminable: every coefficient vanishes mod p^n");

    const int b = n - mu;
    const long long pb = ctx.pow(b);
    const long long pmu = detail::pow_ll(ctx.p, mu);
    std::vector<long long> fhat(f.residues().size());
    for (size_t i = 0; i < fhat.size(); ++i) fhat[i] = f.residues()[i] / pmu;

    int lambda = -1;
    for (size_t i = 0; i < fhat.size(); ++i)
        if (fhat[i] % ctx.p != 0) { lambda = static_cast<int>(i); break; }
    if (lambda < 0 || lambda >= m - guard)
        throw PrecisionExhausted("lambda undeterminable: no unit coefficient below the guard window");

    if (lambda == 0) {
        IwasawaSeries unit = IwasawaSeries::from_residues(ctx, m, fhat);
        return WeierstrassData{mu, DistinguishedPoly{0, {}, b}, unit, b};
    }

    const size_t mw = static_cast<size_t>(m) + static_cast<size_t>(lambda) * (b + 1);
    std::vector<long long> g(fhat);
    g.resize(mw, 0);
    std::vector<long long> v(g.begin() + lambda, g.end());
    v.resize(mw, 0);
    std::vector<long long> w = ring_inverse(v, mw, pb, ctx.p);
    std::vector<long long> plow(g.begin(), g.begin() + lambda);

    // Fixpoint of q = W * (1 - tau(q * plow)); contracts by a factor of p
    // per round since plow = 0 mod p.
    std::vector<long long> q = w;
    bool settled = false;
    for (int round = 0; round <= b + 2; ++round) {
        std::vector<long long> qp = ring_mul(q, plow, mw, pb);
        std::vector<long long> s(mw, 0);
        for (size_t j = 0; j + lambda < mw; ++j) s[j] = (pb - qp[j + lambda]) % pb;
        s[0] = (s[0] + 1) % pb;
        std::vector<long long> qn = ring_mul(w, s, mw, pb);
        if (qn == q) { settled = true; break; }
        q = std::move(qn);
    }
    if (!settled)
        throw Error("internal: Weierstrass division iteration did not settle");

    std::vector<long long> qg = ring_mul(q, g, mw, pb);
    std::vector<long long> rem(static_cast<size_t>(lambda));
    for (int i = 0; i < lambda; ++i) {
        long long ri = (pb - qg[static_cast<size_t>(i)]) % pb;
        if (ri % ctx.p != 0)
            throw Error("internal: Weierstrass remainder not divisible by p");
        rem[static_cast<size_t>(i)] = (pb - ri) % pb;  // coefficient of P = X^lambda - r
    }
    for (int j = lambda; j < m; ++j) {
        long long expect = (j == lambda) ? 1 : 0;
        if ((qg[static_cast<size_t>(j)] - expect) % pb != 0)
            throw Error("internal: Weierstrass division residual above the remainder block");
    }

    q.resize(static_cast<size_t>(m));
    std::vector<long long> unit_res = ring_inverse(q, static_cast<size_t>(m), pb, ctx.p);
    IwasawaSeries unit = IwasawaSeries::from_residues(ctx, m, unit_res);
    return WeierstrassData{mu, DistinguishedPoly{lambda, rem, b}, unit, b};
}

std::pair<int, int> mu_lambda(const IwasawaSeries& f, int guard) {
    WeierstrassData w = weierstrass_prep(f, guard);
    return {w.mu, w.lambda()};
}

/* ------------------------------------------------------------------ */
/*  Operator calculus                                                 */
/* ------------------------------------------------------------------ */

IwasawaSeries iota(const IwasawaSeries& f) {
    const PadicContext& ctx = f.context();
    const int m = f.truncation();
    const long long pn = ctx.pn();
    // 1/(1+X) - 1 = -X + X^2 - X^3 + ...
    std::vector<long long> g(static_cast<size_t>(m), 0);
    for (int j = 1; j < m; ++j) g[static_cast<size_t>(j)] = (j % 2 == 1) ? pn - 1 : 1;

    std::vector<long long> acc(static_cast<size_t>(m), 0);
    for (int idx = m - 1; idx >= 0; --idx) {
        acc = ring_mul(acc, g, static_cast<size_t>(m), pn);
        acc[0] = (acc[0] + f.coefficient(idx)) % pn;
    }
    return IwasawaSeries::from_residues(ctx, m, acc);
}

IwasawaSeries twist(const IwasawaSeries& f, long long mtw, const PadicNumber& u) {
    const PadicContext& ctx = f.context();
    if (u.context() != ctx)
        throw ContextMismatch("generator image from a different context");
    if (u.is_zero() || u.exponent() != 0)
        throw PreconditionViolated("generator image must be a unit");
    const int m = f.truncation();
    const long long pn = ctx.pn();
    PadicNumber um = u.pow(mtw);
    const long long c1 = um.residue(ctx.n);
    const long long c0 = (um - PadicNumber::from_integer(ctx, 1)).residue(ctx.n);

    // Horner against the linear substitution X -> c0 + c1 X.
    std::vector<long long> acc(static_cast<size_t>(m), 0);
    for (int idx = m - 1; idx >= 0; --idx) {
        for (int j = m - 1; j >= 0; --j) {
            unsigned __int128 t = static_cast<unsigned __int128>(acc[static_cast<size_t>(j)]) *
                                  static_cast<unsigned __int128>(c0);
            if (j > 0)
                t += static_cast<unsigned __int128>(acc[static_cast<size_t>(j - 1)]) *
                     static_cast<unsigned __int128>(c1);
            acc[static_cast<size_t>(j)] = static_cast<long long>(t % static_cast<unsigned __int128>(pn));
        }
        acc[0] = (acc[0] + f.coefficient(idx)) % pn;
    }
    return IwasawaSeries::from_residues(ctx, m, acc);
}

IwasawaSeries twist(const IwasawaSeries& f, long long mtw) {
    return twist(f, mtw, cyclotomic_u(f.context()));
}

PadicNumber eval_at(const IwasawaSeries& f, const PadicNumber& x) {
    const PadicContext& ctx = f.context();
    if (x.context() != ctx)
        throw ContextMismatch("evaluation point from a different context");
    if (x.is_zero()) {
        if (x.known_to() < 1)
            throw OutOfDisk("evaluation point not certified inside the open unit disk");
    } else if (x.exponent() < 1) {
        throw OutOfDisk("evaluation requires valuation(x) >= 1");
    }
    const int m = f.truncation();
    PadicNumber acc = PadicNumber::from_residue(ctx, f.coefficient(m - 1));
    for (int idx = m - 2; idx >= 0; --idx)
        acc = acc * x + PadicNumber::from_residue(ctx, f.coefficient(idx));
    long long tail = x.is_zero() ? static_cast<long long>(m) * x.known_to()
                                 : static_cast<long long>(m) * x.exponent();
    return acc.capped(std::min<long long>(ctx.n, tail));
}

/* ------------------------------------------------------------------ */
/*  Divisibility and gcd                                               */
/* ------------------------------------------------------------------ */

namespace {

// Long division of poly (leading 1 at index size-1) by a monic distinguished
// divisor, exact modulo p^b. Returns the remainder block of size deg(divisor).
std::vector<long long> monic_poly_remainder(std::vector<long long> num, int num_deg,
                                            const std::vector<long long>& den_low, int den_deg,
                                            long long pb) {
    for (int shift = num_deg - den_deg; shift >= 0; --shift) {
        long long c = num[static_cast<size_t>(shift + den_deg)];
        if (c == 0) continue;
        num[static_cast<size_t>(shift + den_deg)] = 0;
        for (int i = 0; i < den_deg; ++i) {
            size_t k = static_cast<size_t>(shift + i);
            num[k] = (num[k] - mul_mod(c, den_low[static_cast<size_t>(i)], pb) % pb + pb) % pb;
        }
    }
    num.resize(static_cast<size_t>(den_deg));
    return num;
}

std::vector<long long> poly_from_weierstrass(const DistinguishedPoly& poly, long long pb) {
    std::vector<long long> out(poly.coeffs.size() + 1);
    for (size_t i = 0; i < poly.coeffs.size(); ++i) out[i] = poly.coeffs[i] % pb;
    out.back() = 1;
    return out;
}

} // namespace

DivisibilityResult divides(const IwasawaSeries& f, const IwasawaSeries& g, int guard, int slack,
                           int certainty_cap) {
    if (f.is_zero())
        throw PreconditionViolated("divisor is zero at precision");
    WeierstrassData wf = weierstrass_prep(f, guard);
    if (wf.mu == 0 && wf.lambda() == 0)
        throw PreconditionViolated("divisor is a unit of the Iwasawa algebra");
    if (g.is_zero())
        return {true, std::max(1, f.context().n - slack)};
    WeierstrassData wg = weierstrass_prep(g, guard);

    int bw = std::min(wf.certified, wg.certified);
    if (certainty_cap >= 0) bw = std::min(bw, certainty_cap);
    const int thr = bw - slack;
    if (thr < 1)
        throw PrecisionExhausted("no certified digits left for remainder classification");
    if (wf.mu > wg.mu) return {false, thr};
    if (wf.lambda() > wg.lambda()) return {false, thr};
    if (wf.lambda() == 0) return {true, thr};

    const long long pb = f.context().pow(bw);
    std::vector<long long> num = poly_from_weierstrass(wg.poly, pb);
    std::vector<long long> den = poly_from_weierstrass(wf.poly, pb);
    den.pop_back();
    std::vector<long long> rem =
        monic_poly_remainder(std::move(num), wg.lambda(), den, wf.lambda(), pb);
    for (long long r : rem)
        if (residue_val(r, f.context().p, bw) < thr) return {false, thr};
    return {true, thr};
}

IwasawaSeries exact_quotient(const IwasawaSeries& g, const IwasawaSeries& f, int guard, int slack,
                             int certainty_cap) {
    if (f.is_zero() || g.is_zero())
        throw PreconditionViolated("exact_quotient requires nonzero operands");
    WeierstrassData wf = weierstrass_prep(f, guard);
    WeierstrassData wg = weierstrass_prep(g, guard);
    int bw = std::min(wf.certified, wg.certified);
    if (certainty_cap >= 0) bw = std::min(bw, certainty_cap);
    const int thr = bw - slack;
    if (thr < 1)
        throw PrecisionExhausted("no certified digits left for quotient classification");
    if (wf.mu > wg.mu || wf.lambda() > wg.lambda())
        throw PreconditionViolated("exact_quotient: divisor does not divide");

    const PadicContext& ctx = f.context();
    const long long pb = ctx.pow(bw);
    std::vector<long long> num = poly_from_weierstrass(wg.poly, pb);
    std::vector<long long> den = poly_from_weierstrass(wf.poly, pb);
    den.pop_back();
    const int qdeg = wg.lambda() - wf.lambda();
    std::vector<long long> quot(static_cast<size_t>(qdeg) + 1, 0);
    for (int shift = qdeg; shift >= 0; --shift) {
        long long c = num[static_cast<size_t>(shift + wf.lambda())];
        quot[static_cast<size_t>(shift)] = c;
        if (c == 0) continue;
        num[static_cast<size_t>(shift + wf.lambda())] = 0;
        for (int i = 0; i < wf.lambda(); ++i) {
            size_t k = static_cast<size_t>(shift + i);
            num[k] = (num[k] - mul_mod(c, den[static_cast<size_t>(i)], pb) % pb + pb) % pb;
        }
    }
    for (int i = 0; i < wf.lambda(); ++i)
        if (residue_val(num[static_cast<size_t>(i)], ctx.p, bw) < thr)
            throw PreconditionViolated("exact_quotient: nonzero remainder");

    IwasawaSeries qs = IwasawaSeries::from_residues(ctx, g.truncation(), quot);
    return associate_normal_form(qs.scaled(detail::pow_ll(ctx.p, wg.mu - wf.mu)), guard);
}

GcdOutcome series_gcd_certified(const IwasawaSeries& f, const IwasawaSeries& g, int guard,
                                int slack) {
    if (f.is_zero() || g.is_zero())
        throw PreconditionViolated("gcd requires operands nonzero at precision");
    const PadicContext& ctx = f.context();
    WeierstrassData wf = weierstrass_prep(f, guard);
    WeierstrassData wg = weierstrass_prep(g, guard);
    const int mu = std::min(wf.mu, wg.mu);
    int bw = std::min(wf.certified, wg.certified);
    if (bw - slack < 1)
        throw PrecisionExhausted("no certified digits left for the Euclidean algorithm");

    // Exact Euclid on the distinguished parts: every division is by a monic
    // distinguished polynomial (no digit loss); a nonzero remainder has its
    // p-power content stripped (the only loss, tracked in bw) and is then
    // re-prepared to distinguished form for the next round.
    DistinguishedPoly d{0, {}, bw};
    if (wf.lambda() > 0 && wg.lambda() > 0) {
        long long pb = ctx.pow(bw);
        std::vector<long long> a = poly_from_weierstrass(wf.poly, pb);
        std::vector<long long> b = poly_from_weierstrass(wg.poly, pb);
        if (a.size() < b.size()) std::swap(a, b);
        while (true) {
            const int da = static_cast<int>(a.size()) - 1;
            const int db = static_cast<int>(b.size()) - 1;
            if (db == 0) { b.clear(); a = {1}; break; }  // coprime at height one
            std::vector<long long> low(b.begin(), b.end() - 1);
            std::vector<long long> rem = monic_poly_remainder(a, da, low, db, pb);
            // The division is exact mod p^bw, so a vanishing remainder is
            // exactly zero; anything else carries its content into bw.
            int content = bw;
            for (long long r : rem) content = std::min(content, residue_val(r, ctx.p, bw));
            if (content >= bw) { a = std::move(b); break; }
            bw -= content;
            pb = ctx.pow(bw);
            const long long pc = detail::pow_ll(ctx.p, content);
            for (long long& r : rem) r = (r / pc) % pb;
            IwasawaSeries rs = IwasawaSeries::from_residues(ctx, f.truncation(), rem);
            WeierstrassData wr = weierstrass_prep(rs, guard);
            // content extraction makes the remainder primitive
            if (wr.mu != 0)
                throw Error("internal: primitive Euclid remainder with positive mu");
            std::vector<long long> next = poly_from_weierstrass(wr.poly, pb);
            a.swap(b);
            b = std::move(next);
            for (long long& r : a) r %= pb;
            if (a.size() < b.size()) std::swap(a, b);
        }
        const int deg = static_cast<int>(a.size()) - 1;
        if (deg > 0) {
            std::vector<long long> coeffs(a.begin(), a.end() - 1);
            for (long long c : coeffs)
                if (c % ctx.p != 0)
                    throw PrecisionExhausted("gcd not distinguished at certified precision");
            d = DistinguishedPoly{deg, coeffs, bw};
        } else {
            d.certified = bw;
        }
    }
    IwasawaSeries value = d.as_series(ctx, f.truncation()).scaled(detail::pow_ll(ctx.p, mu));
    return GcdOutcome{std::move(value), d.certified};
}

IwasawaSeries series_gcd(const IwasawaSeries& f, const IwasawaSeries& g, int guard, int slack) {
    return series_gcd_certified(f, g, guard, slack).value;
}

bool associates(const IwasawaSeries& f, const IwasawaSeries& g, int guard) {
    if (f.is_zero() || g.is_zero())
        throw PreconditionViolated("associates requires operands nonzero at precision");
    WeierstrassData wf = weierstrass_prep(f, guard);
    WeierstrassData wg = weierstrass_prep(g, guard);
    if (wf.mu != wg.mu || wf.lambda() != wg.lambda()) return false;
    const long long pb = f.context().pow(std::min(wf.certified, wg.certified));
    for (int i = 0; i < wf.lambda(); ++i)
        if ((wf.poly.coeffs[static_cast<size_t>(i)] - wg.poly.coeffs[static_cast<size_t>(i)]) % pb != 0)
            return false;
    return true;
}

IwasawaSeries from_linear_factors(const PadicContext& ctx, int truncation,
                                  const std::vector<PadicNumber>& roots, int mu) {
    if (mu < 0 || mu >= ctx.n)
        throw PreconditionViolated("mu must lie in [0, n)");
    if (roots.size() >= static_cast<size_t>(truncation))
        throw PreconditionViolated("more linear factors than the truncation can hold");
    const long long pn = ctx.pn();
    std::vector<long long> acc(static_cast<size_t>(truncation), 0);
    acc[0] = detail::pow_ll(ctx.p, mu);
    for (const PadicNumber& r : roots) {
        if (r.context() != ctx)
            throw ContextMismatch("root from a different context");
        bool inside = r.is_zero() ? r.known_to() >= 1 : r.exponent() >= 1;
        if (!inside)
            throw OutOfDisk("linear-factor root must have valuation >= 1");
        const long long neg = (pn - r.residue(ctx.n)) % pn;
        for (int j = truncation - 1; j >= 0; --j) {
            long long low = mul_mod(acc[static_cast<size_t>(j)], neg, pn);
            long long high = (j > 0) ? acc[static_cast<size_t>(j - 1)] : 0;
            acc[static_cast<size_t>(j)] = (low + high) % pn;
        }
    }
    return IwasawaSeries::from_residues(ctx, truncation, acc);
}

IwasawaSeries associate_normal_form(const IwasawaSeries& f, int guard) {
    WeierstrassData w = weierstrass_prep(f, guard);
    return w.poly.as_series(f.context(), f.truncation())
        .scaled(detail::pow_ll(f.context().p, w.mu));
}

bool equal_below(const IwasawaSeries& a, const IwasawaSeries& b, int degree) {
    if (a.context() != b.context())
        throw ContextMismatch("series from different contexts");
    int lim = std::min({degree, a.truncation(), b.truncation()});
    for (int i = 0; i < lim; ++i)
        if (a.coefficient(i) != b.coefficient(i)) return false;
    return true;
}

} // namespace iwasawa
