#include <doctest.h>

#include "iwasawa/selmer_gate.hpp"

using namespace iwasawa;

namespace {

const PadicContext kCtx(3, 12);
constexpr int kM = 48;

IwasawaSeries S(std::initializer_list<long long> coeffs) {
    return IwasawaSeries::from_integers(kCtx, kM, std::vector<long long>(coeffs));
}

IrreducibleProbe probe(const IwasawaSeries& s) { return {s, true, false}; }

IrreducibleProbe p_probe() {
    return {IwasawaSeries::constant(kCtx, kM, kCtx.p), true, true};
}

// The worked configuration: k = 2, i = 0, eta an associate of X - 3,
// fine_f = 1, fine_fbar = X + 6, sharp = (X+6)(X+3), flat = (X+6)(X^2+3).
GateScenario worked_scenario(int i) {
    PadicNumber u = cyclotomic_u(kCtx);
    CharElement eta = eta_element(2, i, u, kM);
    return GateScenario{2,
                        i,
                        u,
                        CharElement::one(kCtx, kM),
                        CharElement::normalize(S({6, 1})),
                        CharElement::normalize(S({6, 1}) * S({3, 1})),
                        CharElement::normalize(S({6, 1}) * S({3, 0, 1})),
                        std::move(eta),
                        true,
                        true,
                        {p_probe(), probe(S({3, 1})), probe(S({6, 1}))},
                        false,
                        std::nullopt};
}

} // namespace

TEST_CASE("gate on the worked scenario") {
    GateScenario s = worked_scenario(0);
    validate_scenario(s);

    GateVerdict v = gate_check(s, probe(S({3, 1})));
    CHECK(v.lhs);
    CHECK(v.rhs);

    GateVerdict w = gate_check(s, probe(S({6, 1})));
    CHECK_FALSE(w.lhs);
    CHECK_FALSE(w.rhs);

    // k = 2, i = 1 has eta = X, so the probe X violates the hypothesis.
    GateScenario s1 = worked_scenario(1);
    CHECK_THROWS_AS(gate_check(s1, probe(IwasawaSeries::monomial(kCtx, kM, 1))),
                    HypothesisViolated);
}

TEST_CASE("fine gate on the worked scenario") {
    GateScenario s = worked_scenario(0);
    GateVerdict v = fine_gate_check(s, probe(S({3, 1})));
    CHECK(v.lhs);
    CHECK(v.rhs);
    // probe dividing fine_fbar violates the second hypothesis
    CHECK_THROWS_AS(fine_gate_check(s, probe(S({6, 1}))), HypothesisViolated);
}

TEST_CASE("fine gate sees a planted iota partner on both sides") {
    // fine_f = X + 6 and the probe is its iota partner, so iota(probe)
    // divides fine_f and the probe divides the planted gcd: false == false.
    PadicNumber u = cyclotomic_u(kCtx);
    IwasawaSeries a = S({6, 1});
    IwasawaSeries partner = associate_normal_form(iota(a));
    GateScenario s{2,
                   0,
                   u,
                   CharElement::normalize(a),
                   CharElement::one(kCtx, kM),
                   CharElement::normalize(partner * S({3, 1})),
                   CharElement::normalize(partner * S({3, 0, 1})),
                   eta_element(2, 0, u, kM),
                   true,
                   true,
                   {},
                   false,
                   std::nullopt};
    GateVerdict v = fine_gate_check(s, probe(partner));
    CHECK_FALSE(v.lhs);
    CHECK_FALSE(v.rhs);
    GateVerdict g = gate_check(s, probe(partner));
    CHECK_FALSE(g.lhs);
    CHECK_FALSE(g.rhs);
}

TEST_CASE("gate with the p probe never violates the eta hypothesis") {
    for (int i : {-2, 0, 1, 3}) {
        GateScenario s = worked_scenario(i);
        CHECK_NOTHROW(gate_check(s, p_probe()));
    }
}

TEST_CASE("gates refuse scenarios without the asserted hypotheses") {
    GateScenario s = worked_scenario(0);
    s.h_imc = false;
    CHECK_THROWS_AS(gate_check(s, probe(S({3, 1}))), HypothesisViolated);
    CHECK_THROWS_AS(mu_corollary(s), HypothesisViolated);
}

TEST_CASE("mu corollary readings") {
    GateScenario s = worked_scenario(0);
    s.fine_f = CharElement::normalize(IwasawaSeries::monomial(kCtx, kM, 1));
    s.fine_fbar = CharElement::one(kCtx, kM);
    s.sharp = CharElement::normalize(S({3, 1}).scaled(3));
    s.flat = CharElement::normalize(IwasawaSeries::monomial(kCtx, kM, 2));
    MuVerdict v = mu_corollary(s);
    CHECK(v.a);
    CHECK(v.b);

    GateScenario t = worked_scenario(0);
    t.fine_f = CharElement::one(kCtx, kM);
    t.fine_fbar = CharElement::one(kCtx, kM);
    t.sharp = CharElement::one(kCtx, kM);
    t.flat = CharElement::one(kCtx, kM);
    MuVerdict w = mu_corollary(t);
    CHECK(w.a);
    CHECK(w.b);
}

TEST_CASE("synthetic scenarios satisfy the biconditional for every probe") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        SynthConfig cfg;
        cfg.k = 3;
        cfg.i = 1;
        cfg.pool_size = 8;
        cfg.mu_budget = static_cast<int>(seed % 3);
        GateScenario s = synth_scenario(seed, cfg, kCtx, kM);
        validate_scenario(s);
        CHECK(s.consistent);
        CHECK(oracle_check(s, s.pool));
        CHECK(std::min(s.sharp.mu(), s.flat.mu()) == cfg.mu_budget);

        for (const IrreducibleProbe& pr : s.pool) {
            if (divides(CharElement::normalize(pr.series).value(), s.eta.value()).divides)
                continue;
            GateVerdict v = gate_check(s, pr);
            CHECK(v.lhs == v.rhs);
            if (!divides(CharElement::normalize(pr.series).value(), s.fine_fbar.value()).divides ||
                s.fine_fbar.is_unit()) {
                GateVerdict f = fine_gate_check(s, pr);
                CHECK(f.lhs == f.rhs);
            }
        }

        MuVerdict mv = mu_corollary(s);
        CHECK(mv.a == mv.b);
        CHECK(mv.a == (cfg.mu_budget == 0));
    }
}

TEST_CASE("an extra factor on one signed side leaves the oracle satisfied") {
    SynthConfig cfg;
    cfg.k = 2;
    cfg.i = 0;
    cfg.pool_size = 10;
    GateScenario s = synth_scenario(21, cfg, kCtx, kM);
    REQUIRE(oracle_check(s, s.pool));
    // multiply sharp alone by a spare pool factor: the gcd is unchanged
    bool planted = false;
    for (const IrreducibleProbe& pr : s.pool) {
        IwasawaSeries cand = associate_normal_form(pr.series);
        std::string key = associate_key(cand);
        bool used = false;
        for (const IwasawaSeries& f : s.factors->sharp)
            if (associate_key(f) == key) used = true;
        for (const IwasawaSeries& f : s.factors->flat)
            if (associate_key(f) == key) used = true;
        for (const IwasawaSeries& f : s.factors->eta)
            if (associate_key(f) == key) used = true;
        if (used) continue;
        s.sharp = CharElement::normalize(s.sharp.value() * cand);
        s.factors->sharp.push_back(cand);
        planted = true;
        break;
    }
    REQUIRE(planted);
    CHECK(oracle_check(s, s.pool));
}

TEST_CASE("generator determinism") {
    SynthConfig cfg;
    cfg.k = 4;
    cfg.i = 2;
    cfg.pool_size = 10;
    cfg.mu_budget = 1;
    GateScenario a = synth_scenario(77, cfg, kCtx, kM);
    GateScenario b = synth_scenario(77, cfg, kCtx, kM);
    CHECK(a.fine_f.value() == b.fine_f.value());
    CHECK(a.fine_fbar.value() == b.fine_fbar.value());
    CHECK(a.sharp.value() == b.sharp.value());
    CHECK(a.flat.value() == b.flat.value());
    CHECK(a.pool.size() == b.pool.size());
    GateScenario c = synth_scenario(78, cfg, kCtx, kM);
    bool all_equal = a.fine_f.value() == c.fine_f.value() &&
                     a.fine_fbar.value() == c.fine_fbar.value() &&
                     a.sharp.value() == c.sharp.value();
    CHECK_FALSE(all_equal);
}

TEST_CASE("corruption is flagged by the oracle") {
    SynthConfig cfg;
    cfg.k = 2;
    cfg.i = 0;
    cfg.pool_size = 10;
    int corrupted = 0;
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        GateScenario s = synth_scenario(seed, cfg, kCtx, kM);
        REQUIRE(oracle_check(s, s.pool));
        if (!corrupt_scenario(s)) continue;
        ++corrupted;
        CHECK_FALSE(s.consistent);
        CHECK_FALSE(oracle_check(s, s.pool));
        // the structural invariant survives corruption
        validate_scenario(s);
    }
    CHECK(corrupted >= 4);
}

TEST_CASE("eta slack does not break the gates away from eta") {
    SynthConfig cfg;
    cfg.k = 3;
    cfg.i = 0;
    cfg.pool_size = 8;
    cfg.eta_slack = true;
    GateScenario s = synth_scenario(5, cfg, kCtx, kM);
    CHECK(oracle_check(s, s.pool));
    for (const IrreducibleProbe& pr : s.pool) {
        if (divides(CharElement::normalize(pr.series).value(), s.eta.value()).divides) continue;
        GateVerdict v = gate_check(s, pr);
        CHECK(v.lhs == v.rhs);
    }
}
