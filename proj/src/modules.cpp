#include "iwasawa/modules.hpp"

#include <algorithm>

namespace iwasawa {

CharElement::CharElement(IwasawaSeries value, DistinguishedPoly poly, int mu)
    : value_(std::move(value)), poly_(std::move(poly)), mu_(mu) {}

CharElement CharElement::normalize(const IwasawaSeries& f, int guard, int certified_cap) {
    WeierstrassData w = weierstrass_prep(f, guard);
    if (certified_cap >= 0) w.poly.certified = std::min(w.poly.certified, certified_cap);
    IwasawaSeries value = w.poly.as_series(f.context(), f.truncation())
                              .scaled(detail::pow_ll(f.context().p, w.mu));
    return CharElement(std::move(value), std::move(w.poly), w.mu);
}

CharElement CharElement::one(const PadicContext& ctx, int truncation) {
    return CharElement(IwasawaSeries::constant(ctx, truncation, 1),
                       DistinguishedPoly{0, {}, ctx.n}, 0);
}

bool CharElement::same_class(const CharElement& o) const {
    if (mu_ != o.mu_ || poly_.degree != o.poly_.degree) return false;
    const long long pb = value_.context().pow(std::min(poly_.certified, o.poly_.certified));
    for (int i = 0; i < poly_.degree; ++i)
        if ((poly_.coeffs[static_cast<size_t>(i)] - o.poly_.coeffs[static_cast<size_t>(i)]) % pb != 0)
            return false;
    return true;
}

LambdaMatrix::LambdaMatrix(int r, int c, std::vector<IwasawaSeries> e)
    : rows(r), cols(c), entries(std::move(e)) {
    if (rows < 1 || cols < 1)
        throw PreconditionViolated("matrix dimensions must be positive");
    if (entries.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
        throw PreconditionViolated("matrix entry count does not match dimensions");
    for (const IwasawaSeries& s : entries)
        if (s.context() != entries.front().context() ||
            s.truncation() != entries.front().truncation())
            throw ContextMismatch("matrix entries disagree in context or truncation");
}

const IwasawaSeries& LambdaMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw PreconditionViolated("matrix index out of range");
    return entries[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
}

namespace {

// Cofactor expansion along the first row; exact in the truncated ring and
// fine at the <= 6x6 desk scale.
IwasawaSeries determinant(const LambdaMatrix& mat, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
    const PadicContext& ctx = mat.context();
    const int m = mat.truncation();
    if (rows.size() == 1) return mat.at(rows[0], cols[0]);
    IwasawaSeries acc(ctx, m);
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < cols.size(); ++j) {
        const IwasawaSeries& pivot = mat.at(rows[0], cols[j]);
        if (pivot.is_zero()) continue;
        std::vector<int> sub_cols;
        sub_cols.reserve(cols.size() - 1);
        for (size_t t = 0; t < cols.size(); ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        IwasawaSeries term = pivot * determinant(mat, sub_rows, sub_cols);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

CharElement char_of_presentation(const LambdaMatrix& mat, int generators, int guard, int slack) {
    if (generators < 1 || mat.rows != generators)
        throw PreconditionViolated("presentation must have one row per generator");
    if (mat.cols < generators)
        throw PreconditionViolated("presentation needs at least `generators` relations");
    if (mat.rows > kMaxPresentationRows || mat.cols > kMaxPresentationCols)
        throw PreconditionViolated("presentation exceeds the desk-scale cap");

    std::vector<int> all_rows(static_cast<size_t>(generators));
    for (int i = 0; i < generators; ++i) all_rows[static_cast<size_t>(i)] = i;

    // Walk all r-subsets of the columns.
    std::vector<int> pick(static_cast<size_t>(generators));
    for (int i = 0; i < generators; ++i) pick[static_cast<size_t>(i)] = i;
    bool have = false;
    int cert = -1;
    IwasawaSeries acc(mat.context(), mat.truncation());
    while (true) {
        IwasawaSeries minor = determinant(mat, all_rows, pick);
        if (!minor.is_zero()) {
            if (!have) {
                acc = associate_normal_form(minor, guard);
                have = true;
            } else if (!CharElement::normalize(acc, guard).is_unit()) {
                GcdOutcome g = series_gcd_certified(acc, minor, guard, slack);
                acc = std::move(g.value);
                cert = cert < 0 ? g.certified : std::min(cert, g.certified);
            }
        }
        // next combination
        int i = generators - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == mat.cols - generators + i) --i;
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
        for (int t = i + 1; t < generators; ++t)
            pick[static_cast<size_t>(t)] = pick[static_cast<size_t>(t - 1)] + 1;
    }
    if (!have)
        throw NotTorsion("every maximal minor vanishes at precision");
    return CharElement::normalize(acc, guard, cert);
}

CharElement torsion_char_of_vector_quotient(const IwasawaSeries& a, const IwasawaSeries& b,
                                            int guard, int slack) {
    if (a.is_zero() && b.is_zero())
        throw PreconditionViolated("both components vanish at precision");
    if (a.is_zero()) return CharElement::normalize(b, guard);
    if (b.is_zero()) return CharElement::normalize(a, guard);
    GcdOutcome g = series_gcd_certified(a, b, guard, slack);
    return CharElement::normalize(g.value, guard, g.certified);
}

bool exact_sequence_check(const std::vector<CharElement>& chars, int guard) {
    if (chars.size() < 2)
        throw PreconditionViolated("exact sequence needs at least two terms");
    const PadicContext& ctx = chars.front().value().context();
    const int m = chars.front().value().truncation();
    IwasawaSeries odd = IwasawaSeries::constant(ctx, m, 1);
    IwasawaSeries even = IwasawaSeries::constant(ctx, m, 1);
    for (size_t i = 0; i < chars.size(); ++i) {
        if (i % 2 == 0)
            odd = odd * chars[i].value();
        else
            even = even * chars[i].value();
    }
    return associates(odd, even, guard);
}

int order_at(const IwasawaSeries& f, const IwasawaSeries& g, int guard, int slack,
             int certainty_cap) {
    int ord = 0;
    IwasawaSeries cur = g;
    while (!cur.is_zero() && divides(f, cur, guard, slack, certainty_cap).divides) {
        cur = exact_quotient(cur, f, guard, slack, certainty_cap);
        ++ord;
    }
    return ord;
}

bool compare_outside_support(const CharElement& a, const CharElement& b,
                             const std::vector<IwasawaSeries>& excluded,
                             const std::vector<IwasawaSeries>& probe_pool, int guard, int slack) {
    std::vector<CharElement> excl;
    excl.reserve(excluded.size());
    bool p_excluded = false;
    for (const IwasawaSeries& e : excluded) {
        CharElement c = CharElement::normalize(e, guard);
        if (c.mu() >= 1 && c.lambda() == 0) p_excluded = true;
        excl.push_back(std::move(c));
    }
    if (!p_excluded && a.mu() != b.mu()) return false;
    const int cap = std::min(a.certified(), b.certified());
    for (const IwasawaSeries& probe : probe_pool) {
        CharElement f = CharElement::normalize(probe, guard);
        bool skip = false;
        for (const CharElement& e : excl)
            if (f.same_class(e)) { skip = true; break; }
        if (skip) continue;
        if (f.is_unit())
            throw PreconditionViolated("probe is a unit, not an irreducible");
        if (order_at(f.value(), a.value(), guard, slack, cap) !=
            order_at(f.value(), b.value(), guard, slack, cap))
            return false;
    }
    return true;
}

} // namespace iwasawa
