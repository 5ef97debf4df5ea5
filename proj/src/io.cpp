#include "iwasawa/io.hpp"

#include <fstream>

namespace iwasawa::io {

namespace {

long long get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("expected integer field '") + key + "'");
    return j[key].get<long long>();
}

bool get_bool(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_boolean())
        throw ParseError(std::string("expected boolean field '") + key + "'");
    return j[key].get<bool>();
}

long long parse_decimal(const json& j, const char* what) {
    if (!j.is_string())
        throw ParseError(std::string(what) + " must be a decimal string");
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789-") != std::string::npos)
        throw ParseError(std::string(what) + " is not a decimal integer: '" + s + "'");
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw ParseError(std::string(what) + " overflows the supported range: '" + s + "'");
    }
}

PadicContext context_from(const json& j) {
    long long p = get_int(j, "p");
    long long n = get_int(j, "precision");
    try {
        return PadicContext(p, static_cast<int>(n));
    } catch (const Error& e) {
        throw ParseError(std::string("bad context: ") + e.what());
    }
}

} // namespace

json series_to_json(const IwasawaSeries& s) {
    json j;
    j["p"] = s.context().p;
    j["precision"] = s.context().n;
    j["truncation"] = s.truncation();
    int top = s.truncation();
    while (top > 0 && s.coefficient(top - 1) == 0) --top;
    json coeffs = json::array();
    for (int i = 0; i < top; ++i) coeffs.push_back(std::to_string(s.coefficient(i)));
    j["coeffs"] = std::move(coeffs);
    return j;
}

IwasawaSeries series_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("series document must be an object");
    PadicContext ctx = context_from(j);
    long long m = get_int(j, "truncation");
    if (m < 1 || m > 100000) throw ParseError("series truncation outside [1, 100000]");
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw ParseError("series document needs a 'coeffs' array");
    std::vector<long long> coeffs;
    coeffs.reserve(j["coeffs"].size());
    for (const json& c : j["coeffs"]) coeffs.push_back(parse_decimal(c, "series coefficient"));
    if (coeffs.size() > static_cast<size_t>(m))
        throw ParseError("series has more coefficients than its truncation");
    for (long long c : coeffs)
        if (c < 0 || c >= ctx.pn())
            throw ParseError("series coefficient not a canonical residue in [0, p^precision)");
    return IwasawaSeries::from_residues(ctx, static_cast<int>(m), std::move(coeffs));
}

json scalar_to_json(const PadicNumber& x) {
    json j;
    if (x.is_zero()) {
        j["zero"] = true;
        return j;
    }
    j["e"] = x.exponent();
    j["u"] = std::to_string(x.unit());
    return j;
}

PadicNumber scalar_from_json(const json& j, const PadicContext& ctx) {
    if (!j.is_object()) throw ParseError("scalar document must be an object");
    if (j.contains("zero")) {
        if (!get_bool(j, "zero")) throw ParseError("scalar 'zero' flag must be true when present");
        return PadicNumber::zero(ctx);
    }
    long long e = get_int(j, "e");
    if (e < -1000000 || e > 1000000) throw ParseError("scalar exponent outside [-1e6, 1e6]");
    if (!j.contains("u")) throw ParseError("scalar document needs 'u'");
    long long u = parse_decimal(j["u"], "scalar unit");
    try {
        return PadicNumber::from_unit_exponent(ctx, e, u);
    } catch (const Error& er) {
        throw ParseError(std::string("bad scalar: ") + er.what());
    }
}

json matrix_to_json(const LambdaMatrix& m) {
    json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(series_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

LambdaMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix document must be an object");
    long long rows = get_int(j, "rows");
    long long cols = get_int(j, "cols");
    if (rows < 1 || cols < 1 || rows > 64 || cols > 64)
        throw ParseError("matrix dimensions outside the supported range");
    if (!j.contains("entries") || !j["entries"].is_array() ||
        j["entries"].size() != static_cast<size_t>(rows))
        throw ParseError("matrix needs 'entries' with one array per row");
    std::vector<IwasawaSeries> entries;
    entries.reserve(static_cast<size_t>(rows * cols));
    for (const json& row : j["entries"]) {
        if (!row.is_array() || row.size() != static_cast<size_t>(cols))
            throw ParseError("matrix row has the wrong number of entries");
        for (const json& cell : row) entries.push_back(series_from_json(cell));
    }
    try {
        return LambdaMatrix(static_cast<int>(rows), static_cast<int>(cols), std::move(entries));
    } catch (const Error& e) {
        throw ParseError(std::string("bad matrix: ") + e.what());
    }
}

json image_spec_to_json(const SignedImageSpec& spec) {
    json j;
    j["k"] = spec.k;
    j["i"] = spec.i;
    j["u"] = scalar_to_json(spec.u);
    json cs = json::array();
    for (const ImageConstant& c : spec.c) {
        if (c.is_infinite())
            cs.push_back("inf");
        else
            cs.push_back(scalar_to_json(*c.value));
    }
    j["c"] = std::move(cs);
    return j;
}

SignedImageSpec image_spec_from_json(const json& j, const PadicContext& ctx) {
    if (!j.is_object()) throw ParseError("image spec document must be an object");
    long long k = get_int(j, "k");
    long long i = get_int(j, "i");
    if (k < 2 || k > 64) throw ParseError("weight k outside [2, 64]");
    if (!j.contains("u")) throw ParseError("image spec needs 'u'");
    PadicNumber u = scalar_from_json(j["u"], ctx);
    if (!j.contains("c") || !j["c"].is_array())
        throw ParseError("image spec needs a 'c' array");
    std::vector<ImageConstant> cs;
    for (const json& c : j["c"]) {
        if (c.is_string() && c.get<std::string>() == "inf")
            cs.push_back(ImageConstant::infinity());
        else
            cs.push_back(ImageConstant::finite(scalar_from_json(c, ctx)));
    }
    if (cs.size() != static_cast<size_t>(k - 1))
        throw ParseError("image spec needs exactly k - 1 constants");
    return SignedImageSpec(static_cast<int>(k), static_cast<int>(i), std::move(u), std::move(cs));
}

json probe_to_json(const IrreducibleProbe& p) {
    json j;
    j["series"] = series_to_json(p.series);
    j["asserted_irreducible"] = p.asserted_irreducible;
    j["is_p"] = p.is_p;
    return j;
}

IrreducibleProbe probe_from_json(const json& j) {
    if (!j.is_object() || !j.contains("series"))
        throw ParseError("probe document needs a 'series'");
    return IrreducibleProbe{series_from_json(j["series"]), get_bool(j, "asserted_irreducible"),
                            get_bool(j, "is_p")};
}

json scenario_to_json(const GateScenario& s) {
    json j;
    json meta;
    meta["k"] = s.k;
    meta["i"] = s.i;
    meta["u"] = scalar_to_json(s.u);
    j["meta"] = std::move(meta);
    j["fine_f"] = series_to_json(s.fine_f.value());
    j["fine_fbar"] = series_to_json(s.fine_fbar.value());
    j["sharp"] = series_to_json(s.sharp.value());
    j["flat"] = series_to_json(s.flat.value());
    j["eta"] = series_to_json(s.eta.value());
    json assumptions;
    assumptions["h_imc"] = s.h_imc;
    assumptions["h0"] = s.h0;
    j["assumptions"] = std::move(assumptions);
    json pool = json::array();
    for (const IrreducibleProbe& p : s.pool) pool.push_back(probe_to_json(p));
    j["pool"] = std::move(pool);
    if (s.factors) {
        json factors;
        auto dump_list = [](const std::vector<IwasawaSeries>& v) {
            json a = json::array();
            for (const IwasawaSeries& f : v) a.push_back(series_to_json(f));
            return a;
        };
        factors["fine_f"] = dump_list(s.factors->fine_f);
        factors["fine_fbar"] = dump_list(s.factors->fine_fbar);
        factors["sharp"] = dump_list(s.factors->sharp);
        factors["flat"] = dump_list(s.factors->flat);
        factors["eta"] = dump_list(s.factors->eta);
        json construction;
        construction["consistent"] = s.consistent;
        construction["factors"] = std::move(factors);
        j["construction"] = std::move(construction);
    }
    return j;
}

GateScenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("scenario document must be an object");
    for (const char* key : {"meta", "fine_f", "fine_fbar", "sharp", "flat", "eta", "assumptions",
                            "pool"})
        if (!j.contains(key))
            throw ParseError(std::string("scenario document needs '") + key + "'");

    IwasawaSeries fine_f = series_from_json(j["fine_f"]);
    const PadicContext ctx = fine_f.context();
    const int m = fine_f.truncation();
    auto load_series = [&](const json& doc) {
        IwasawaSeries s = series_from_json(doc);
        if (s.context() != ctx || s.truncation() != m)
            throw ParseError("scenario series disagree in context or truncation");
        return s;
    };

    const json& meta = j["meta"];
    long long k = get_int(meta, "k");
    long long i = get_int(meta, "i");
    if (k < 2 || k > 64) throw ParseError("scenario weight outside [2, 64]");
    if (!meta.contains("u")) throw ParseError("scenario meta needs 'u'");
    PadicNumber u = scalar_from_json(meta["u"], ctx);

    IwasawaSeries fine_fbar = load_series(j["fine_fbar"]);
    IwasawaSeries sharp = load_series(j["sharp"]);
    IwasawaSeries flat = load_series(j["flat"]);
    IwasawaSeries eta = load_series(j["eta"]);

    const json& assumptions = j["assumptions"];
    bool h_imc = get_bool(assumptions, "h_imc");
    bool h0 = get_bool(assumptions, "h0");

    if (!j["pool"].is_array()) throw ParseError("scenario pool must be an array");
    std::vector<IrreducibleProbe> pool;
    for (const json& p : j["pool"]) {
        IrreducibleProbe probe = probe_from_json(p);
        if (probe.series.context() != ctx || probe.series.truncation() != m)
            throw ParseError("scenario probe disagrees in context or truncation");
        pool.push_back(std::move(probe));
    }

    bool consistent = false;
    std::optional<FactorRecords> factors;
    if (j.contains("construction")) {
        const json& construction = j["construction"];
        consistent = get_bool(construction, "consistent");
        if (!construction.contains("factors"))
            throw ParseError("scenario construction needs 'factors'");
        const json& f = construction["factors"];
        auto load_list = [&](const char* key) {
            if (!f.contains(key) || !f[key].is_array())
                throw ParseError(std::string("factor list '") + key + "' missing");
            std::vector<IwasawaSeries> out;
            for (const json& doc : f[key]) out.push_back(load_series(doc));
            return out;
        };
        factors = FactorRecords{load_list("fine_f"), load_list("fine_fbar"), load_list("sharp"),
                                load_list("flat"), load_list("eta")};
    }

    GateScenario scenario{static_cast<int>(k),
                          static_cast<int>(i),
                          std::move(u),
                          CharElement::normalize(fine_f),
                          CharElement::normalize(fine_fbar),
                          CharElement::normalize(sharp),
                          CharElement::normalize(flat),
                          CharElement::normalize(eta),
                          h_imc,
                          h0,
                          std::move(pool),
                          consistent,
                          std::move(factors)};
    validate_scenario(scenario);
    return scenario;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j, bool pretty) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

} // namespace iwasawa::io
