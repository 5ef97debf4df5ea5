// Command-line front door for the Iwasawa algebra calculus: parses series /
// matrix / scenario documents, dispatches to the library, and emits one
// structured JSON document per invocation.
//
// Exit codes: 0 success, 2 precision exhausted, 3 hypothesis or precondition
// violated, 4 parse/schema error, 1 internal failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "iwasawa/io.hpp"

using namespace iwasawa;
using io::json;

namespace {

struct GlobalOpts {
    std::optional<long long> p;
    std::optional<long long> precision;
    std::optional<long long> truncation;
    std::optional<long long> u;
    int guard = -1;
    int slack = kDefaultRemainderSlack;
    bool pretty = false;
};

json load_doc(const std::string& arg) {
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
        try {
            return json::parse(arg);
        } catch (const std::exception& e) {
            throw ParseError(std::string("malformed inline JSON: ") + e.what());
        }
    }
    return io::load_json_file(arg);
}

// Resolves the working context from file-embedded contexts, global flags,
// the IWA_CONTEXT environment file, and the built-in defaults, in that
// order. Disagreement anywhere is a schema error.
class ContextResolver {
public:
    explicit ContextResolver(const GlobalOpts& g) : g_(g) {
        if (const char* path = std::getenv("IWA_CONTEXT")) {
            json j = io::load_json_file(path);
            if (j.contains("p")) env_p_ = j["p"].get<long long>();
            if (j.contains("precision")) env_n_ = j["precision"].get<long long>();
            if (j.contains("truncation")) env_m_ = j["truncation"].get<long long>();
            if (j.contains("u")) env_u_ = j["u"].get<long long>();
        }
    }

    void note(const PadicContext& ctx, int truncation) {
        if (!seen_) {
            seen_ctx_ = ctx;
            seen_m_ = truncation;
            seen_ = true;
        } else if (seen_ctx_ != ctx || seen_m_ != truncation) {
            throw ParseError("input documents disagree in context or truncation");
        }
        if (g_.p && *g_.p != ctx.p)
            throw ParseError("--p disagrees with a file-embedded context");
        if (g_.precision && *g_.precision != ctx.n)
            throw ParseError("--precision disagrees with a file-embedded context");
        if (g_.truncation && *g_.truncation != truncation)
            throw ParseError("--truncation disagrees with a file-embedded truncation");
    }

    IwasawaSeries load_series(const std::string& arg) {
        IwasawaSeries s = io::series_from_json(load_doc(arg));
        note(s.context(), s.truncation());
        return s;
    }

    PadicContext context() const {
        if (seen_) return seen_ctx_;
        long long p = g_.p.value_or(env_p_.value_or(3));
        long long n = g_.precision.value_or(env_n_.value_or(12));
        try {
            return PadicContext(p, static_cast<int>(n));
        } catch (const Error& e) {
            throw ParseError(std::string("bad context flags: ") + e.what());
        }
    }

    int truncation() const {
        if (seen_) return seen_m_;
        long long m = g_.truncation.value_or(env_m_.value_or(48));
        if (m < 1 || m > 100000) throw ParseError("--truncation outside [1, 100000]");
        return static_cast<int>(m);
    }

    PadicNumber generator() const {
        PadicContext ctx = context();
        if (g_.u) return cyclotomic_u(ctx, *g_.u);
        if (env_u_) return cyclotomic_u(ctx, *env_u_);
        return cyclotomic_u(ctx);
    }

private:
    GlobalOpts g_;
    bool seen_ = false;
    PadicContext seen_ctx_;
    int seen_m_ = 48;
    std::optional<long long> env_p_, env_n_, env_m_, env_u_;
};

void emit(const json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

json scalar_result(const PadicNumber& x) {
    json j;
    j["value"] = io::scalar_to_json(x);
    j["precision"] = x.known_to();
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computer algebra for the Iwasawa algebra Z_p[[X]]"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--p", g.p, "prime of the working context");
    app.add_option("--precision", g.precision, "p-adic digit count");
    app.add_option("--truncation", g.truncation, "X-adic truncation length");
    app.add_option("--u", g.u, "cyclotomic generator image override");
    app.add_option("--guard", g.guard, "guard band for preparation (default: precision)");
    app.add_option("--slack", g.slack, "zero-classification slack (default: 2)");
    app.add_flag("--pretty", g.pretty, "indent the output document");

    std::string series_arg, f_arg, g_arg, matrix_arg, chars_arg, spec_arg, scenario_arg,
        probe_arg, x_arg, out_arg;
    long long twist_m = 0, gens = 1, eta_k = 2, eta_i = 0, seed = 0, batch = 0;
    SynthConfig synth_cfg;

    CLI::App* prep = app.add_subcommand("prep", "Weierstrass preparation of a series");
    prep->add_option("--series", series_arg, "series document")->required();

    CLI::App* invariants = app.add_subcommand("invariants", "mu and lambda of a series");
    invariants->add_option("--series", series_arg, "series document")->required();

    CLI::App* iota_cmd = app.add_subcommand("iota", "apply the involution");
    iota_cmd->add_option("--series", series_arg, "series document")->required();

    CLI::App* twist_cmd = app.add_subcommand("twist", "apply the twist X -> u^m(1+X)-1");
    twist_cmd->add_option("--series", series_arg, "series document")->required();
    twist_cmd->add_option("--m", twist_m, "twist exponent")->required();

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate at a point of valuation >= 1");
    eval_cmd->add_option("--series", series_arg, "series document")->required();
    eval_cmd->add_option("--x", x_arg, "scalar document (file or inline)")->required();

    CLI::App* divides_cmd = app.add_subcommand("divides", "divisibility of g by f");
    divides_cmd->add_option("--f", f_arg, "divisor series")->required();
    divides_cmd->add_option("--g", g_arg, "dividend series")->required();

    CLI::App* gcd_cmd = app.add_subcommand("gcd", "associate-class gcd of two series");
    gcd_cmd->add_option("--f", f_arg, "first series")->required();
    gcd_cmd->add_option("--g", g_arg, "second series")->required();

    CLI::App* charideal = app.add_subcommand("charideal", "characteristic element of a presentation");
    charideal->add_option("--matrix", matrix_arg, "matrix document")->required();
    charideal->add_option("--generators", gens, "number of generators")->required();

    CLI::App* exactcheck = app.add_subcommand("exactcheck", "characteristic multiplicativity of a sequence");
    exactcheck->add_option("--chars", chars_arg, "array of series documents")->required();

    CLI::App* eta_cmd = app.add_subcommand("eta", "twisted product of linear factors");
    eta_cmd->add_option("--k", eta_k, "weight")->required();
    eta_cmd->add_option("--i", eta_i, "twist")->required();

    CLI::App* imagepair = app.add_subcommand("imagepair", "invariants of the paired image quotient");
    imagepair->add_option("--spec", spec_arg, "image spec document")->required();

    CLI::App* gate = app.add_subcommand("gate", "both sides of the main biconditional");
    gate->add_option("--scenario", scenario_arg, "scenario document")->required();
    gate->add_option("--probe", probe_arg, "probe document")->required();

    CLI::App* finegate = app.add_subcommand("finegate", "the intermediate biconditional");
    finegate->add_option("--scenario", scenario_arg, "scenario document")->required();
    finegate->add_option("--probe", probe_arg, "probe document")->required();

    CLI::App* mucheck = app.add_subcommand("mucheck", "mu-invariant reading of a scenario");
    mucheck->add_option("--scenario", scenario_arg, "scenario document")->required();

    CLI::App* synth = app.add_subcommand("synth", "deterministic synthetic scenario");
    synth->add_option("--seed", seed, "generator seed")->required();
    synth->add_option("--k", synth_cfg.k, "weight")->required();
    synth->add_option("--i", synth_cfg.i, "twist")->required();
    synth->add_option("--pool-size", synth_cfg.pool_size, "minimum probe count");
    synth->add_option("--mu-budget", synth_cfg.mu_budget, "p-power mass on the fine elements");
    synth->add_flag("--eta-slack", synth_cfg.eta_slack, "multiply the planted gcd by an eta factor");
    synth->add_option("--out", out_arg, "also write the scenario to this path");

    CLI::App* oracle = app.add_subcommand("oracle", "factor-multiset verification");
    oracle->add_option("--scenario", scenario_arg, "scenario document");
    oracle->add_option("--batch", batch, "verify this many generated scenarios");
    oracle->add_option("--seed", seed, "first seed of the batch");
    oracle->add_option("--k", synth_cfg.k, "weight for batch generation");
    oracle->add_option("--i", synth_cfg.i, "twist for batch generation");
    oracle->add_option("--pool-size", synth_cfg.pool_size, "minimum probe count");
    oracle->add_option("--mu-budget", synth_cfg.mu_budget, "p-power mass on the fine elements");

    // global flags are accepted after the subcommand name as well
    for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    try {
        ContextResolver resolver(g);

        if (prep->parsed()) {
            IwasawaSeries s = resolver.load_series(series_arg);
            WeierstrassData w = weierstrass_prep(s, g.guard);
            json out;
            out["mu"] = w.mu;
            out["lambda"] = w.lambda();
            out["poly"] = io::series_to_json(w.poly.as_series(s.context(), s.truncation()));
            out["unit"] = io::series_to_json(w.unit);
            out["certified"] = w.certified;
            emit(out, g.pretty);
        } else if (invariants->parsed()) {
            IwasawaSeries s = resolver.load_series(series_arg);
            auto [mu, lambda] = mu_lambda(s, g.guard);
            json out;
            out["mu"] = mu;
            out["lambda"] = lambda;
            emit(out, g.pretty);
        } else if (iota_cmd->parsed()) {
            IwasawaSeries s = resolver.load_series(series_arg);
            emit(io::series_to_json(iota(s)), g.pretty);
        } else if (twist_cmd->parsed()) {
            IwasawaSeries s = resolver.load_series(series_arg);
            emit(io::series_to_json(twist(s, twist_m, resolver.generator())), g.pretty);
        } else if (eval_cmd->parsed()) {
            IwasawaSeries s = resolver.load_series(series_arg);
            PadicNumber x = io::scalar_from_json(load_doc(x_arg), s.context());
            emit(scalar_result(eval_at(s, x)), g.pretty);
        } else if (divides_cmd->parsed()) {
            IwasawaSeries f = resolver.load_series(f_arg);
            IwasawaSeries gg = resolver.load_series(g_arg);
            DivisibilityResult r = divides(f, gg, g.guard, g.slack);
            json out;
            out["divides"] = r.divides;
            out["certified"] = r.certified;
            emit(out, g.pretty);
        } else if (gcd_cmd->parsed()) {
            IwasawaSeries f = resolver.load_series(f_arg);
            IwasawaSeries gg = resolver.load_series(g_arg);
            emit(io::series_to_json(series_gcd(f, gg, g.guard, g.slack)), g.pretty);
        } else if (charideal->parsed()) {
            LambdaMatrix m = io::matrix_from_json(load_doc(matrix_arg));
            resolver.note(m.context(), m.truncation());
            CharElement c = char_of_presentation(m, static_cast<int>(gens), g.guard, g.slack);
            emit(io::series_to_json(c.value()), g.pretty);
        } else if (exactcheck->parsed()) {
            json docs = load_doc(chars_arg);
            if (!docs.is_array()) throw ParseError("exactcheck expects an array of series documents");
            std::vector<CharElement> chars;
            for (const json& doc : docs) {
                IwasawaSeries s = io::series_from_json(doc);
                resolver.note(s.context(), s.truncation());
                chars.push_back(CharElement::normalize(s, g.guard));
            }
            json out;
            out["exact"] = exact_sequence_check(chars, g.guard);
            emit(out, g.pretty);
        } else if (eta_cmd->parsed()) {
            CharElement e = eta_element(static_cast<int>(eta_k), static_cast<int>(eta_i),
                                        resolver.generator(), resolver.truncation(), g.guard);
            emit(io::series_to_json(e.value()), g.pretty);
        } else if (imagepair->parsed()) {
            SignedImageSpec spec =
                io::image_spec_from_json(load_doc(spec_arg), resolver.context());
            QuotientInvariants q = quotient_invariants(spec, resolver.truncation(), g.guard);
            json out;
            out["mu"] = q.mu;
            out["lambda"] = q.lambda;
            out["char"] = io::series_to_json(q.char_element.value());
            emit(out, g.pretty);
        } else if (gate->parsed() || finegate->parsed()) {
            GateScenario s = io::scenario_from_json(load_doc(scenario_arg));
            resolver.note(s.fine_f.value().context(), s.fine_f.value().truncation());
            IrreducibleProbe probe = io::probe_from_json(load_doc(probe_arg));
            resolver.note(probe.series.context(), probe.series.truncation());
            GateVerdict v = gate->parsed() ? gate_check(s, probe, g.guard, g.slack)
                                           : fine_gate_check(s, probe, g.guard, g.slack);
            json out;
            out["lhs"] = v.lhs;
            out["rhs"] = v.rhs;
            emit(out, g.pretty);
        } else if (mucheck->parsed()) {
            GateScenario s = io::scenario_from_json(load_doc(scenario_arg));
            resolver.note(s.fine_f.value().context(), s.fine_f.value().truncation());
            MuVerdict v = mu_corollary(s);
            json out;
            out["a"] = v.a;
            out["b"] = v.b;
            emit(out, g.pretty);
        } else if (synth->parsed()) {
            std::optional<PadicNumber> u_override;
            if (g.u) u_override = resolver.generator();
            GateScenario s = synth_scenario(static_cast<std::uint64_t>(seed), synth_cfg,
                                            resolver.context(), resolver.truncation(), u_override);
            json doc = io::scenario_to_json(s);
            if (!out_arg.empty()) io::save_json_file(out_arg, doc, g.pretty);
            emit(doc, g.pretty);
        } else if (oracle->parsed()) {
            if (batch > 0) {
                json results = json::array();
                for (long long t = 0; t < batch; ++t) {
                    GateScenario s =
                        synth_scenario(static_cast<std::uint64_t>(seed + t), synth_cfg,
                                       resolver.context(), resolver.truncation(), std::nullopt);
                    json r;
                    r["seed"] = seed + t;
                    r["consistent"] = oracle_check(s, s.pool);
                    results.push_back(std::move(r));
                }
                json out;
                out["results"] = std::move(results);
                emit(out, g.pretty);
            } else {
                if (scenario_arg.empty())
                    throw ParseError("oracle needs --scenario or --batch");
                GateScenario s = io::scenario_from_json(load_doc(scenario_arg));
                json out;
                out["consistent"] = oracle_check(s, s.pool);
                emit(out, g.pretty);
            }
        }
        return 0;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
