#pragma once

#include <utility>
#include <vector>

#include "iwasawa/padic.hpp"

namespace iwasawa {

/****************************************************************************
 *
 * Elements of the Iwasawa algebra Z_p[[X]] truncated modulo (p^n, X^M).
 *
 * A series is an exact object: a coefficient vector of canonical residues
 * in [0, p^n), index k holding the coefficient of X^k. Ring operations,
 * linear substitutions and order-raising compositions are exact in this
 * quotient; claims about an underlying untruncated series are certified
 * only up to X^(M - guard), which is where the preparation, divisibility
 * and gcd routines place their guard bands.
 *
 ****************************************************************************/

class IwasawaSeries {
public:
    IwasawaSeries(const PadicContext& ctx, int truncation);

    // Canonical residues in [0, p^n); shorter vectors are zero-padded.
    static IwasawaSeries from_residues(const PadicContext& ctx, int truncation,
                                       std::vector<long long> coeffs);
    // Arbitrary integers, reduced mod p^n (negatives allowed).
    static IwasawaSeries from_integers(const PadicContext& ctx, int truncation,
                                       const std::vector<long long>& coeffs);
    static IwasawaSeries constant(const PadicContext& ctx, int truncation, long long value);
    static IwasawaSeries monomial(const PadicContext& ctx, int truncation, int degree,
                                  long long value = 1);

    const PadicContext& context() const { return ctx_; }
    int truncation() const { return m_; }
    const std::vector<long long>& residues() const { return c_; }
    long long coefficient(int idx) const;
    PadicNumber coefficient_value(int idx) const;

    bool is_zero() const;              // zero at precision: every residue vanishes
    bool is_unit() const;              // unit constant term
    int order() const;                 // index of first nonzero residue (m_ if zero)

    IwasawaSeries operator+(const IwasawaSeries& o) const;
    IwasawaSeries operator-(const IwasawaSeries& o) const;
    IwasawaSeries operator*(const IwasawaSeries& o) const;
    bool operator==(const IwasawaSeries& o) const;

    IwasawaSeries scaled(long long value) const;       // multiply by an integer
    IwasawaSeries shifted_up(int k) const;             // multiply by X^k

    std::string describe() const;

private:
    void require_compatible(const IwasawaSeries& o) const;

    PadicContext ctx_;
    int m_ = 0;
    std::vector<long long> c_;
};

// Monic polynomial with every non-leading coefficient divisible by p.
// Coefficients are canonical residues certified modulo p^certified.
struct DistinguishedPoly {
    int degree = 0;
    std::vector<long long> coeffs;  // a_0 .. a_{degree-1}; leading 1 implicit
    int certified = 0;

    IwasawaSeries as_series(const PadicContext& ctx, int truncation) const;
};

// F = p^mu * poly * unit, with unit invertible and the recomposition exact
// modulo (p^n, X^M). `certified` is the digit count to which poly and unit
// are pinned (n - mu).
struct WeierstrassData {
    int mu = 0;
    DistinguishedPoly poly;
    IwasawaSeries unit;
    int certified = 0;

    int lambda() const { return poly.degree; }
    IwasawaSeries recompose() const;
};

struct DivisibilityResult {
    bool divides = false;
    int certified = 0;  // digit level at which the remainder was classified
    explicit operator bool() const { return divides; }
};

// Remainder classification slack. Division by a monic distinguished
// polynomial is exact in the truncated ring, so by default a remainder
// counts as zero only when it vanishes at the full certified level; a
// positive slack would misread high-degree remainders, which are p-adically
// small for free (a distinguished polynomial of degree d evaluated inside
// the open unit disk has valuation on the order of d times the root
// valuations).
inline constexpr int kDefaultRemainderSlack = 0;

// Weierstrass preparation by the p-adically convergent division iteration.
// guard < 0 selects the default band of ctx.n coefficients; the unit index
// lambda must fall below M - guard.
WeierstrassData weierstrass_prep(const IwasawaSeries& f, int guard = -1);

std::pair<int, int> mu_lambda(const IwasawaSeries& f, int guard = -1);

// Involution F(X) -> F(1/(1+X) - 1); exact in X.
IwasawaSeries iota(const IwasawaSeries& f);

// Twist F(X) -> F(u^m (1+X) - 1) for the given generator image u.
IwasawaSeries twist(const IwasawaSeries& f, long long m, const PadicNumber& u);
IwasawaSeries twist(const IwasawaSeries& f, long long m);

// Sum of the truncated series at a point of positive valuation; the result
// is certified to min(n, M * val(x)) absolute digits.
PadicNumber eval_at(const IwasawaSeries& f, const PadicNumber& x);

// Whether f divides g in the Iwasawa algebra, decided on Weierstrass data.
// certainty_cap, when >= 0, bounds the digit level at which either operand
// is actually pinned (gcd outputs carry such a level); the remainder is
// classified at min(certifications, cap) - slack.
DivisibilityResult divides(const IwasawaSeries& f, const IwasawaSeries& g, int guard = -1,
                           int slack = kDefaultRemainderSlack, int certainty_cap = -1);

// Quotient g / f in associate normal form; f must divide g.
IwasawaSeries exact_quotient(const IwasawaSeries& g, const IwasawaSeries& f, int guard = -1,
                             int slack = kDefaultRemainderSlack, int certainty_cap = -1);

struct GcdOutcome {
    IwasawaSeries value;
    int certified = 0;  // digit level to which the distinguished part is pinned
};

// Associate-class gcd p^min(mu_f, mu_g) * D with D the distinguished gcd,
// computed by the monic Euclidean algorithm over the fraction field. Each
// normalization by a leading coefficient of positive valuation costs
// certified digits; the outcome records what is left.
GcdOutcome series_gcd_certified(const IwasawaSeries& f, const IwasawaSeries& g, int guard = -1,
                                int slack = kDefaultRemainderSlack);
IwasawaSeries series_gcd(const IwasawaSeries& f, const IwasawaSeries& g, int guard = -1,
                         int slack = kDefaultRemainderSlack);

// Equality of Weierstrass data (same mu, same distinguished part).
bool associates(const IwasawaSeries& f, const IwasawaSeries& g, int guard = -1);

// p^mu * product of (X - r) over the given roots, each of valuation >= 1.
IwasawaSeries from_linear_factors(const PadicContext& ctx, int truncation,
                                  const std::vector<PadicNumber>& roots, int mu);

// Associate normal form p^mu * P of a nonzero series.
IwasawaSeries associate_normal_form(const IwasawaSeries& f, int guard = -1);

// Coefficient-wise equality below the given degree.
bool equal_below(const IwasawaSeries& a, const IwasawaSeries& b, int degree);

} // namespace iwasawa
