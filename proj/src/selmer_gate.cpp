#include "iwasawa/selmer_gate.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace iwasawa {

std::string associate_key(const IwasawaSeries& f, int guard) {
    IwasawaSeries nf = associate_normal_form(f, guard);
    int top = nf.truncation();
    while (top > 0 && nf.coefficient(top - 1) == 0) --top;
    std::ostringstream os;
    for (int i = 0; i < top; ++i) {
        if (i) os << ",";
        os << nf.coefficient(i);
    }
    return os.str();
}

namespace {

CharElement normalized_probe(const IrreducibleProbe& probe, int guard) {
    CharElement c = CharElement::normalize(probe.series, guard);
    if (probe.is_p) {
        if (c.mu() != 1 || c.lambda() != 0)
            throw PreconditionViolated("is_p probe is not an associate of p");
    } else {
        if (!probe.asserted_irreducible)
            throw PreconditionViolated("probe lacks the irreducibility assertion");
        if (c.mu() != 0 || c.lambda() < 1)
            throw PreconditionViolated("probe is not a distinguished irreducible candidate");
    }
    return c;
}

bool divides_value(const IwasawaSeries& f, const CharElement& g, int guard, int slack) {
    if (g.is_unit()) return false;
    return divides(f, g.value(), guard, slack).divides;
}

long long rng_below(std::mt19937_64& rng, long long n) {
    return n <= 1 ? 0 : static_cast<long long>(rng() % static_cast<unsigned long long>(n));
}

} // namespace

void validate_scenario(const GateScenario& s, int guard, int slack) {
    if (s.k < 2) throw PreconditionViolated("scenario weight k must be >= 2");
    if (!s.fine_fbar.is_unit()) {
        if (!divides(s.fine_fbar.value(), s.sharp.value(), guard, slack).divides ||
            !divides(s.fine_fbar.value(), s.flat.value(), guard, slack).divides)
            throw PreconditionViolated("scenario invariant broken: fine_fbar must divide sharp and flat");
    }
}

namespace {

// For an irreducible probe, F | gcd(sharp, flat) iff F divides both; the
// direct pair of exact divisions avoids the digit loss of a Euclid run.
bool probe_divides_gcd(const CharElement& f, const GateScenario& s, int guard, int slack) {
    return divides_value(f.value(), s.sharp, guard, slack) &&
           divides_value(f.value(), s.flat, guard, slack);
}

void require_assumptions(const GateScenario& s) {
    if (!s.h_imc || !s.h0)
        throw HypothesisViolated("scenario does not assert (H-IMC) and (H0)");
}

} // namespace

GateVerdict gate_check(const GateScenario& s, const IrreducibleProbe& probe, int guard,
                       int slack) {
    require_assumptions(s);
    CharElement f = normalized_probe(probe, guard);
    if (divides_value(f.value(), s.eta, guard, slack))
        throw HypothesisViolated("probe divides eta, outside the theorem's hypotheses");
    CharElement fi = CharElement::normalize(iota(f.value()), guard);
    bool lhs = !divides_value(fi.value(), s.fine_f, guard, slack) &&
               !divides_value(f.value(), s.fine_fbar, guard, slack);
    bool rhs = !probe_divides_gcd(f, s, guard, slack);
    return {lhs, rhs};
}

GateVerdict fine_gate_check(const GateScenario& s, const IrreducibleProbe& probe, int guard,
                            int slack) {
    require_assumptions(s);
    CharElement f = normalized_probe(probe, guard);
    if (divides_value(f.value(), s.eta, guard, slack))
        throw HypothesisViolated("probe divides eta, outside the theorem's hypotheses");
    if (divides_value(f.value(), s.fine_fbar, guard, slack))
        throw HypothesisViolated("probe divides fine_fbar, outside the theorem's hypotheses");
    CharElement fi = CharElement::normalize(iota(f.value()), guard);
    bool lhs = !divides_value(fi.value(), s.fine_f, guard, slack);
    bool rhs = !probe_divides_gcd(f, s, guard, slack);
    return {lhs, rhs};
}

MuVerdict mu_corollary(const GateScenario& s) {
    require_assumptions(s);
    bool a = s.fine_f.mu() == 0 && s.fine_fbar.mu() == 0;
    bool b = std::min(s.sharp.mu(), s.flat.mu()) == 0;
    return {a, b};
}

GateScenario synth_scenario(std::uint64_t seed, const SynthConfig& config,
                            const PadicContext& ctx, int truncation,
                            const std::optional<PadicNumber>& u_override) {
    if (config.k < 2) throw PreconditionViolated("synth: weight k must be >= 2");
    if (config.pool_size < 4) throw PreconditionViolated("synth: pool too small");
    if (config.mu_budget < 0 || config.mu_budget >= ctx.n)
        throw PreconditionViolated("synth: mu budget outside [0, n)");

    const PadicNumber u = u_override ? *u_override : cyclotomic_u(ctx);
    const PadicNumber one = PadicNumber::from_integer(ctx, 1);
    std::mt19937_64 rng(seed);

    CharElement eta = eta_element(config.k, config.i, u, truncation);
    std::vector<IwasawaSeries> eta_factors;
    std::set<long long> blocked_roots;
    for (int s = config.k - 1 - config.i; s <= 2 * config.k - 3 - config.i; ++s) {
        PadicNumber root = u.pow(s) - one;
        eta_factors.push_back(from_linear_factors(ctx, truncation, {root}, 0));
        blocked_roots.insert(root.residue(ctx.n));
        blocked_roots.insert((u.pow(-s) - one).residue(ctx.n));
    }

    // Atom pool: p, linears with roots u^s - 1 off the blocked set, random
    // roots of valuation >= 1, and Eisenstein quadratics.
    std::vector<IrreducibleProbe> atoms;
    atoms.push_back({IwasawaSeries::constant(ctx, truncation, ctx.p), true, true});
    std::set<long long> used_roots = blocked_roots;
    const int want_linears = std::max(3, config.pool_size / 2);
    int linears = 0;
    for (int step = 0; step <= 2 * config.pool_size && linears < want_linears; ++step) {
        int s = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
        PadicNumber root = u.pow(s) - one;
        long long rr = root.residue(ctx.n);
        if (used_roots.count(rr)) continue;
        used_roots.insert(rr);
        atoms.push_back({from_linear_factors(ctx, truncation, {root}, 0), true, false});
        ++linears;
    }
    while (linears < want_linears) {
        long long t = 1 + rng_below(rng, ctx.pow(ctx.n - 1) - 1);
        long long rr = (ctx.p * t) % ctx.pn();
        if (rr == 0 || used_roots.count(rr)) continue;
        used_roots.insert(rr);
        PadicNumber root = PadicNumber::from_residue(ctx, rr);
        atoms.push_back({from_linear_factors(ctx, truncation, {root}, 0), true, false});
        ++linears;
    }
    std::set<std::pair<long long, long long>> used_quads;
    while (static_cast<int>(atoms.size()) < config.pool_size) {
        long long a = (ctx.p * rng_below(rng, ctx.pow(ctx.n - 1))) % ctx.pn();
        long long t = 1 + rng_below(rng, ctx.p - 1);  // unit digit, so val(b) = 1
        long long b = (ctx.p * (t + ctx.p * rng_below(rng, ctx.pow(ctx.n - 2)))) % ctx.pn();
        if (used_quads.count({a, b})) continue;
        used_quads.insert({a, b});
        IwasawaSeries quad = IwasawaSeries::from_residues(ctx, truncation, {b, a}) +
                             IwasawaSeries::monomial(ctx, truncation, 2);
        atoms.push_back({quad, true, false});
    }

    // Draw the fine characteristic elements from the non-p atoms.
    auto draw_factors = [&](int max_atoms, int mu) {
        std::vector<IwasawaSeries> out;
        int count = static_cast<int>(rng_below(rng, max_atoms + 1));
        for (int t = 0; t < count; ++t) {
            size_t idx = 1 + static_cast<size_t>(rng_below(rng, static_cast<long long>(atoms.size()) - 1));
            int mult = 1 + static_cast<int>(rng_below(rng, 2));
            for (int r = 0; r < mult; ++r)
                out.push_back(associate_normal_form(atoms[idx].series));
        }
        for (int r = 0; r < mu; ++r)
            out.push_back(IwasawaSeries::constant(ctx, truncation, ctx.p));
        return out;
    };
    const int mu_f = static_cast<int>(rng_below(rng, config.mu_budget + 1));
    const int mu_fbar = config.mu_budget - mu_f;
    std::vector<IwasawaSeries> fine_f_factors = draw_factors(2, mu_f);
    std::vector<IwasawaSeries> fine_fbar_factors = draw_factors(2, mu_fbar);

    // The planted gcd: fine_fbar * iota(fine_f), optionally times one eta factor.
    std::vector<IwasawaSeries> g0 = fine_fbar_factors;
    for (const IwasawaSeries& f : fine_f_factors)
        g0.push_back(associate_normal_form(iota(f)));
    if (config.eta_slack)
        g0.push_back(eta_factors[static_cast<size_t>(rng_below(
            rng, static_cast<long long>(eta_factors.size())))]);

    // Disjoint cofactor sets keep gcd(sharp, flat) exactly at the plant.
    std::vector<size_t> shuffled(atoms.size());
    for (size_t t = 0; t < shuffled.size(); ++t) shuffled[t] = t;
    for (size_t t = shuffled.size(); t > 1; --t)
        std::swap(shuffled[t - 1], shuffled[static_cast<size_t>(rng_below(rng, static_cast<long long>(t)))]);
    const int ns = 1 + static_cast<int>(rng_below(rng, 2));
    const int nf = 1 + static_cast<int>(rng_below(rng, 2));
    std::vector<IwasawaSeries> sharp_factors = g0;
    std::vector<IwasawaSeries> flat_factors = g0;
    for (int t = 0; t < ns; ++t)
        sharp_factors.push_back(associate_normal_form(atoms[shuffled[static_cast<size_t>(t)]].series));
    for (int t = 0; t < nf; ++t)
        flat_factors.push_back(associate_normal_form(atoms[shuffled[static_cast<size_t>(ns + t)]].series));

    auto product = [&](const std::vector<IwasawaSeries>& factors) {
        IwasawaSeries acc = IwasawaSeries::constant(ctx, truncation, 1);
        for (const IwasawaSeries& f : factors) acc = acc * f;
        return acc;
    };
    auto normalize_product = [&](const std::vector<IwasawaSeries>& factors) {
        IwasawaSeries value = product(factors);
        return CharElement::normalize(value);
    };

    CharElement fine_f = fine_f_factors.empty() ? CharElement::one(ctx, truncation)
                                                : normalize_product(fine_f_factors);
    CharElement fine_fbar = fine_fbar_factors.empty() ? CharElement::one(ctx, truncation)
                                                      : normalize_product(fine_fbar_factors);
    CharElement sharp = normalize_product(sharp_factors);
    CharElement flat = normalize_product(flat_factors);

    // Offer the iota-partners of the drawn fine_f factors as probes too.
    std::set<std::string> pool_keys;
    for (const IrreducibleProbe& a : atoms) pool_keys.insert(associate_key(a.series));
    std::vector<IrreducibleProbe> pool = atoms;
    for (const IwasawaSeries& f : fine_f_factors) {
        IwasawaSeries partner = associate_normal_form(iota(f));
        std::string key = associate_key(partner);
        if (pool_keys.count(key)) continue;
        pool_keys.insert(key);
        CharElement c = CharElement::normalize(partner);
        pool.push_back({partner, true, c.mu() == 1 && c.lambda() == 0});
    }

    FactorRecords records{fine_f_factors, fine_fbar_factors, sharp_factors, flat_factors,
                          eta_factors};

    // The construction must guarantee the biconditionals for every offered
    // probe, which requires finite-precision divisibility against the built
    // products to agree with the factor multisets. A probe too p-adically
    // close to the factor mass of a fat product can genuinely divide it at
    // working precision; such probes are not offered. The pool is refilled
    // with verified Eisenstein quadratics, whose root valuation 1/2 keeps
    // their contribution to the valuation mass at exactly one digit.
    auto key_count = [](const std::vector<IwasawaSeries>& rec, const std::string& key) {
        int n = 0;
        for (const IwasawaSeries& f : rec)
            if (associate_key(f) == key) ++n;
        return n;
    };
    auto faithful = [&](const IrreducibleProbe& pr) {
        IwasawaSeries f = associate_normal_form(pr.series);
        std::string key = associate_key(f);
        auto matches = [&](const std::vector<IwasawaSeries>& rec, const CharElement& el,
                           const IwasawaSeries& probe, const std::string& probe_key) {
            bool expect = key_count(rec, probe_key) > 0;
            bool got = el.is_unit() ? false : divides(probe, el.value()).divides;
            return expect == got;
        };
        IwasawaSeries fi = associate_normal_form(iota(f));
        return matches(records.eta, eta, f, key) && matches(records.fine_fbar, fine_fbar, f, key) &&
               matches(records.sharp, sharp, f, key) && matches(records.flat, flat, f, key) &&
               matches(records.fine_f, fine_f, fi, associate_key(fi));
    };
    std::vector<IrreducibleProbe> offered;
    for (const IrreducibleProbe& pr : pool)
        if (faithful(pr)) offered.push_back(pr);
    int refill_tries = 0;
    while (static_cast<int>(offered.size()) < config.pool_size && refill_tries < 200) {
        ++refill_tries;
        long long a = (ctx.p * rng_below(rng, ctx.pow(ctx.n - 1))) % ctx.pn();
        long long t = 1 + rng_below(rng, ctx.p - 1);
        long long b = (ctx.p * (t + ctx.p * rng_below(rng, ctx.pow(ctx.n - 2)))) % ctx.pn();
        IwasawaSeries quad = IwasawaSeries::from_residues(ctx, truncation, {b, a}) +
                             IwasawaSeries::monomial(ctx, truncation, 2);
        std::string key = associate_key(quad);
        if (pool_keys.count(key)) continue;
        IrreducibleProbe pr{quad, true, false};
        if (!faithful(pr)) continue;
        pool_keys.insert(key);
        offered.push_back(pr);
    }
    pool = std::move(offered);
    return GateScenario{config.k,
                        config.i,
                        u,
                        std::move(fine_f),
                        std::move(fine_fbar),
                        std::move(sharp),
                        std::move(flat),
                        std::move(eta),
                        true,
                        true,
                        std::move(pool),
                        true,
                        std::move(records)};
}

bool corrupt_scenario(GateScenario& s) {
    if (!s.factors)
        throw PreconditionViolated("cannot corrupt a scenario without factor records");
    std::map<std::string, int> used;
    for (const IwasawaSeries& f : s.factors->sharp) ++used[associate_key(f)];
    for (const IwasawaSeries& f : s.factors->flat) ++used[associate_key(f)];
    for (const IwasawaSeries& f : s.factors->eta) ++used[associate_key(f)];
    std::set<std::string> fine_f_keys, fine_fbar_keys;
    for (const IwasawaSeries& f : s.factors->fine_f) fine_f_keys.insert(associate_key(f));
    for (const IwasawaSeries& f : s.factors->fine_fbar) fine_fbar_keys.insert(associate_key(f));

    for (const IrreducibleProbe& probe : s.pool) {
        IwasawaSeries cand = associate_normal_form(probe.series);
        std::string key = associate_key(cand);
        if (used.count(key)) continue;
        if (fine_fbar_keys.count(key)) continue;
        if (fine_f_keys.count(associate_key(iota(cand)))) continue;
        // Plant the factor on both signed elements.
        s.sharp = CharElement::normalize(s.sharp.value() * cand);
        s.flat = CharElement::normalize(s.flat.value() * cand);
        s.factors->sharp.push_back(cand);
        s.factors->flat.push_back(cand);
        s.consistent = false;
        return true;
    }
    return false;
}

bool oracle_check(const GateScenario& s, const std::vector<IrreducibleProbe>& pool) {
    if (!s.factors)
        throw PreconditionViolated("oracle requires the generator's recorded factor lists");
    auto count_map = [](const std::vector<IwasawaSeries>& v) {
        std::map<std::string, int> m;
        for (const IwasawaSeries& f : v) ++m[associate_key(f)];
        return m;
    };
    const auto mf = count_map(s.factors->fine_f);
    const auto mfbar = count_map(s.factors->fine_fbar);
    const auto msharp = count_map(s.factors->sharp);
    const auto mflat = count_map(s.factors->flat);
    const auto meta = count_map(s.factors->eta);
    auto cnt = [](const std::map<std::string, int>& m, const std::string& k) {
        auto it = m.find(k);
        return it == m.end() ? 0 : it->second;
    };

    for (const IrreducibleProbe& probe : pool) {
        CharElement c = normalized_probe(probe, -1);
        std::string key = associate_key(c.value());
        if (cnt(meta, key) > 0) continue;  // outside the theorem's hypotheses
        std::string ikey = associate_key(iota(c.value()));
        bool lhs = cnt(mf, ikey) == 0 && cnt(mfbar, key) == 0;
        bool rhs = std::min(cnt(msharp, key), cnt(mflat, key)) == 0;
        if (lhs != rhs) return false;
        if (cnt(mfbar, key) == 0) {
            bool fine_lhs = cnt(mf, ikey) == 0;
            if (fine_lhs != rhs) return false;
        }
    }
    return true;
}

} // namespace iwasawa
