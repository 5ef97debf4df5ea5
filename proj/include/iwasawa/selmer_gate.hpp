#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/signed_images.hpp"

namespace iwasawa {

/****************************************************************************
 *
 * The divisibility gates: given characteristic elements (fine_f, fine_fbar,
 * sharp, flat, eta) for a weight/twist pair, an irreducible probe F with
 * F not dividing eta is tested on both sides of the biconditional
 *
 *   iota(F) does not divide fine_f  AND  F does not divide fine_fbar
 *       <=>  F does not divide gcd(sharp, flat).
 *
 * The generator builds scenarios in which the biconditional provably holds
 * for every pool probe, by planting gcd(sharp, flat) = fine_fbar * iota(fine_f)
 * up to factors supported on eta; the oracle re-derives both sides from the
 * recorded factor multisets without any series division.
 *
 ****************************************************************************/

struct IrreducibleProbe {
    IwasawaSeries series;
    bool asserted_irreducible = true;
    bool is_p = false;
};

// Factor lists recorded by the generator; repetition encodes multiplicity,
// every entry is an associate normal form.
struct FactorRecords {
    std::vector<IwasawaSeries> fine_f;
    std::vector<IwasawaSeries> fine_fbar;
    std::vector<IwasawaSeries> sharp;
    std::vector<IwasawaSeries> flat;
    std::vector<IwasawaSeries> eta;
};

struct GateScenario {
    int k = 2;
    int i = 0;
    PadicNumber u;

    CharElement fine_f;
    CharElement fine_fbar;
    CharElement sharp;
    CharElement flat;
    CharElement eta;

    // Standing arithmetic hypotheses, asserted rather than computed.
    bool h_imc = true;
    bool h0 = true;

    std::vector<IrreducibleProbe> pool;
    bool consistent = false;
    std::optional<FactorRecords> factors;
};

// Checks the structural invariant fine_fbar | sharp and fine_fbar | flat.
void validate_scenario(const GateScenario& s, int guard = -1,
                       int slack = kDefaultRemainderSlack);

struct GateVerdict {
    bool lhs = false;
    bool rhs = false;
};

struct MuVerdict {
    bool a = false;
    bool b = false;
};

// Both sides of the main biconditional; requires F not dividing eta.
GateVerdict gate_check(const GateScenario& s, const IrreducibleProbe& probe, int guard = -1,
                       int slack = kDefaultRemainderSlack);

// The intermediate biconditional; additionally requires F not dividing
// fine_fbar.
GateVerdict fine_gate_check(const GateScenario& s, const IrreducibleProbe& probe, int guard = -1,
                            int slack = kDefaultRemainderSlack);

// mu-invariant reading: a = both fine mu vanish, b = one signed mu vanishes.
MuVerdict mu_corollary(const GateScenario& s);

struct SynthConfig {
    int k = 2;
    int i = 0;
    int pool_size = 10;   // minimum number of probes offered
    int mu_budget = 0;    // p-power mass split across fine_f / fine_fbar
    bool eta_slack = false;  // multiply the planted gcd by one eta factor
};

// Deterministic scenario generator; identical (seed, config, context) give
// identical scenarios.
GateScenario synth_scenario(std::uint64_t seed, const SynthConfig& config,
                            const PadicContext& ctx, int truncation,
                            const std::optional<PadicNumber>& u_override = std::nullopt);

// Multiplies sharp and flat by a spare pool factor outside the planted gcd,
// invalidating the scenario; returns false if no such factor exists.
bool corrupt_scenario(GateScenario& s);

// Factor-multiset verification of both biconditionals over the pool.
bool oracle_check(const GateScenario& s, const std::vector<IrreducibleProbe>& pool);

// Canonical key of the associate class of a nonzero series (used for factor
// bookkeeping and fixture determinism).
std::string associate_key(const IwasawaSeries& f, int guard = -1);

} // namespace iwasawa
