#pragma once

#include <optional>
#include <vector>

#include "iwasawa/modules.hpp"

namespace iwasawa {

/****************************************************************************
 *
 * The image lattice of a paired Coleman map on one isotypic component:
 * a pair (F, G) of series belongs to the image iff F(u^j - 1) equals
 * c_j * G(u^j - 1) for j = 0 .. k-2. An infinite constant marks the
 * degenerate condition G(u^j - 1) = 0. The quotient of Lambda^2 by the
 * lattice is pseudo-isomorphic to Lambda modulo the product of the
 * linear factors X - (u^j - 1); quotient_invariants recomputes that
 * description and spot-checks it before reporting (mu, lambda, char).
 *
 ****************************************************************************/

// One evaluation constraint constant: a scalar of K, or the infinity marker.
struct ImageConstant {
    std::optional<PadicNumber> value;  // empty = infinity marker

    static ImageConstant infinity() { return ImageConstant{std::nullopt}; }
    static ImageConstant finite(PadicNumber v) { return ImageConstant{std::move(v)}; }
    bool is_infinite() const { return !value.has_value(); }
};

struct SignedImageSpec {
    int k = 2;                  // weight, >= 2
    int i = 0;                  // twist
    PadicNumber u;              // cyclotomic generator image
    std::vector<ImageConstant> c;  // exactly k - 1 constants

    SignedImageSpec(int k, int i, PadicNumber u, std::vector<ImageConstant> c);
};

struct QuotientInvariants {
    int mu = 0;
    int lambda = 0;
    CharElement char_element;
};

// Membership of the pair (f, g) in the image lattice.
bool contains(const SignedImageSpec& spec, const IwasawaSeries& f, const IwasawaSeries& g);

// (mu, lambda, char) of Lambda^2 modulo the image lattice, computed from the
// evaluation model and verified by sampling membership witnesses.
QuotientInvariants quotient_invariants(const SignedImageSpec& spec, int truncation,
                                       int guard = -1);

// The twisted factor Tw^(i-k+1) applied to the product of X - (u^j - 1),
// j = 0 .. k-2, in associate normal form.
CharElement eta_element(int k, int i, const PadicNumber& u, int truncation, int guard = -1);

} // namespace iwasawa
