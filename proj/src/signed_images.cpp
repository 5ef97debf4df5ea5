#include "iwasawa/signed_images.hpp"

#include <random>

namespace iwasawa {

SignedImageSpec::SignedImageSpec(int k_, int i_, PadicNumber u_, std::vector<ImageConstant> c_)
    : k(k_), i(i_), u(std::move(u_)), c(std::move(c_)) {
    if (k < 2) throw PreconditionViolated("weight k must be >= 2");
    if (c.size() != static_cast<size_t>(k - 1))
        throw PreconditionViolated("expected exactly k - 1 image constants");
    const PadicContext& ctx = u.context();
    // The generator image must actually generate: u = 1 mod p, u != 1 mod p^2.
    PadicNumber delta = u - PadicNumber::from_integer(ctx, 1);
    if (delta.is_zero() || delta.exponent() != 1)
        throw InvalidGenerator("generator image must satisfy u = 1 mod p, u != 1 mod p^2");
    for (const ImageConstant& cc : c)
        if (!cc.is_infinite() && cc.value->context() != ctx)
            throw ContextMismatch("image constant from a different context");
}

namespace {

std::vector<PadicNumber> evaluation_points(const SignedImageSpec& spec) {
    const PadicContext& ctx = spec.u.context();
    std::vector<PadicNumber> pts;
    pts.reserve(static_cast<size_t>(spec.k - 1));
    for (int j = 0; j <= spec.k - 2; ++j)
        pts.push_back(spec.u.pow(j) - PadicNumber::from_integer(ctx, 1));
    return pts;
}

// A scalar comparison must have at least one certain digit to count.
bool certified_equal(const PadicNumber& a, const PadicNumber& b) {
    PadicNumber diff = a - b;
    if (!diff.is_zero()) return false;
    if (diff.known_to() < 1)
        throw PrecisionExhausted("image membership comparison is uncertain");
    return true;
}

bool certified_zero(const PadicNumber& a) {
    if (!a.is_zero()) return false;
    if (a.known_to() < 1)
        throw PrecisionExhausted("image membership comparison is uncertain");
    return true;
}

} // namespace

bool contains(const SignedImageSpec& spec, const IwasawaSeries& f, const IwasawaSeries& g) {
    std::vector<PadicNumber> pts = evaluation_points(spec);
    for (int j = 0; j <= spec.k - 2; ++j) {
        PadicNumber gv = eval_at(g, pts[static_cast<size_t>(j)]);
        if (spec.c[static_cast<size_t>(j)].is_infinite()) {
            if (!certified_zero(gv)) return false;
            continue;
        }
        PadicNumber fv = eval_at(f, pts[static_cast<size_t>(j)]);
        if (!certified_equal(fv, *spec.c[static_cast<size_t>(j)].value * gv)) return false;
    }
    return true;
}

QuotientInvariants quotient_invariants(const SignedImageSpec& spec, int truncation, int guard) {
    const PadicContext& ctx = spec.u.context();
    std::vector<PadicNumber> pts = evaluation_points(spec);
    IwasawaSeries full = from_linear_factors(ctx, truncation, pts, 0);

    // Sample the model before reporting. The full product annihilates the
    // quotient, each single-point witness survives it, and no witness is
    // rescued by p-multiplication (the mu = 0 content).
    std::mt19937_64 rng(0x1a2b3c4d5e6f7788ULL ^ static_cast<unsigned long long>(spec.k));
    const long long pn = ctx.pn();
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<long long> fc(4), gc(4);
        for (int t = 0; t < 4; ++t) {
            fc[static_cast<size_t>(t)] = static_cast<long long>(rng() % static_cast<unsigned long long>(pn));
            gc[static_cast<size_t>(t)] = static_cast<long long>(rng() % static_cast<unsigned long long>(pn));
        }
        IwasawaSeries rf = IwasawaSeries::from_residues(ctx, truncation, fc);
        IwasawaSeries rg = IwasawaSeries::from_residues(ctx, truncation, gc);
        if (!contains(spec, full * rf, full * rg))
            throw Error("internal: full product failed to annihilate the quotient");
    }
    for (int j = 0; j <= spec.k - 2; ++j) {
        std::vector<PadicNumber> others;
        for (int l = 0; l <= spec.k - 2; ++l)
            if (l != j) others.push_back(pts[static_cast<size_t>(l)]);
        IwasawaSeries qj = from_linear_factors(ctx, truncation, others, 0);
        PadicNumber wv = eval_at(qj, pts[static_cast<size_t>(j)]);
        // Horizon at which the j-th comparison stops seeing the witness.
        const ImageConstant& cj = spec.c[static_cast<size_t>(j)];
        long long horizon = ctx.n;
        if (!cj.is_infinite() && !cj.value->is_zero())
            horizon = ctx.n + std::min<long long>(0, cj.value->exponent());
        if (wv.is_zero() || wv.exponent() >= horizon)
            throw PrecisionExhausted("component witness indistinguishable from zero at precision");
        IwasawaSeries zero(ctx, truncation);
        bool inf = cj.is_infinite();
        const IwasawaSeries& wf = inf ? zero : qj;
        const IwasawaSeries& wg = inf ? qj : zero;
        if (contains(spec, wf, wg))
            throw Error("internal: witness for a live component was absorbed");
        // p-robustness of the witness (the mu = 0 content), where the
        // remaining margin can certify it.
        if (wv.exponent() + 1 < horizon &&
            contains(spec, wf.scaled(ctx.p), wg.scaled(ctx.p)))
            throw Error("internal: p-multiple of a witness was absorbed");
    }

    CharElement ch = CharElement::normalize(full, guard);
    return QuotientInvariants{0, spec.k - 1, std::move(ch)};
}

CharElement eta_element(int k, int i, const PadicNumber& u, int truncation, int guard) {
    if (k < 2) throw PreconditionViolated("weight k must be >= 2");
    const PadicContext& ctx = u.context();
    std::vector<PadicNumber> pts;
    pts.reserve(static_cast<size_t>(k - 1));
    for (int j = 0; j <= k - 2; ++j)
        pts.push_back(u.pow(j) - PadicNumber::from_integer(ctx, 1));
    IwasawaSeries full = from_linear_factors(ctx, truncation, pts, 0);
    IwasawaSeries twisted = twist(full, i - k + 1, u);
    return CharElement::normalize(twisted, guard);
}

} // namespace iwasawa
