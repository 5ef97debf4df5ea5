#pragma once

#include <vector>

#include "iwasawa/series.hpp"

namespace iwasawa {

/****************************************************************************
 *
 * Finitely presented torsion modules over the Iwasawa algebra, handled at
 * the level of their characteristic elements. A presentation is a
 * generators x relations matrix; its characteristic element is the gcd of
 * the maximal minors (the divisorial hull of the 0th Fitting ideal, which
 * is the characteristic ideal since the algebra is a regular 2-dimensional
 * UFD). Everything is stored in associate normal form p^mu * P.
 *
 ****************************************************************************/

// Associate-class representative of a characteristic ideal generator.
class CharElement {
public:
    // Normalize an arbitrary nonzero series; certified_cap bounds the digit
    // level the value is actually pinned to (gcd outputs carry one).
    static CharElement normalize(const IwasawaSeries& f, int guard = -1, int certified_cap = -1);
    // The trivial ideal (unit class).
    static CharElement one(const PadicContext& ctx, int truncation);

    const IwasawaSeries& value() const { return value_; }
    const DistinguishedPoly& poly() const { return poly_; }
    int mu() const { return mu_; }
    int lambda() const { return poly_.degree; }
    bool is_unit() const { return mu_ == 0 && poly_.degree == 0; }
    int certified() const { return poly_.certified; }

    bool same_class(const CharElement& o) const;

private:
    CharElement(IwasawaSeries value, DistinguishedPoly poly, int mu);

    IwasawaSeries value_;
    DistinguishedPoly poly_;
    int mu_ = 0;
};

struct LambdaMatrix {
    int rows = 0;  // generators
    int cols = 0;  // relations
    std::vector<IwasawaSeries> entries;  // row-major

    LambdaMatrix(int rows, int cols, std::vector<IwasawaSeries> entries);
    const IwasawaSeries& at(int r, int c) const;
    const PadicContext& context() const { return entries.front().context(); }
    int truncation() const { return entries.front().truncation(); }
};

// Desk-scale caps on minor enumeration.
inline constexpr int kMaxPresentationRows = 6;
inline constexpr int kMaxPresentationCols = 8;

// gcd of the r x r minors of a presentation of Lambda^r; NotTorsion when
// every maximal minor vanishes at precision.
CharElement char_of_presentation(const LambdaMatrix& mat, int generators, int guard = -1,
                                 int slack = kDefaultRemainderSlack);

// Characteristic element of the torsion submodule of Lambda^2 / Lambda(a, b):
// the gcd of the pair.
CharElement torsion_char_of_vector_quotient(const IwasawaSeries& a, const IwasawaSeries& b,
                                            int guard = -1, int slack = kDefaultRemainderSlack);

// Multiplicativity of characteristic elements along an exact sequence:
// the product over odd positions must be an associate of the product over
// even positions.
bool exact_sequence_check(const std::vector<CharElement>& chars, int guard = -1);

// Multiplicity of the irreducible probe f in g (ord_f), by repeated division.
int order_at(const IwasawaSeries& f, const IwasawaSeries& g, int guard = -1,
             int slack = kDefaultRemainderSlack, int certainty_cap = -1);

// Divisor agreement of a and b away from the excluded support: equal
// multiplicity at every probe outside `excluded`, and equal mu unless p
// itself is excluded.
bool compare_outside_support(const CharElement& a, const CharElement& b,
                             const std::vector<IwasawaSeries>& excluded,
                             const std::vector<IwasawaSeries>& probe_pool, int guard = -1,
                             int slack = kDefaultRemainderSlack);

} // namespace iwasawa
