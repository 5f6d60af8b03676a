#include "voa_cli/cli.hpp"

#include "voa/blocks.hpp"
#include "voa/coord_change.hpp"
#include "voa/models.hpp"
#include "voa/ode.hpp"
#include "voa/schwarzian.hpp"
#include "voa/sewing.hpp"
#include "voa/sphere.hpp"
#include "voa_cli/parse.hpp"
#include "voa_cli/report.hpp"
#include "voa_cli/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

namespace voa::cli {

namespace {

struct Report {
    Json result = Json::object();
    bool pass = true;
    std::vector<std::vector<std::string>> table;  // header row first; empty when CSV is not offered
};

struct ModelChoice {
    std::string name = "heisenberg";
    std::string mu = "0";
    std::string c = "1/2";
    std::string h = "0";
};

struct ModelHandle {
    std::shared_ptr<VertexAlgebra> alg;
    std::unique_ptr<Module> owned;
    const Module* mod = nullptr;
};

ModelHandle make_model(const ModelChoice& choice) {
    ModelHandle m;
    if (choice.name == "heisenberg" || choice.name == "fock") {
        auto heis = heisenberg_model();
        m.alg = heis;
        if (choice.name == "fock") m.owned = std::make_unique<FockModule>(*heis, parse_rational(choice.mu));
    } else if (choice.name == "virasoro" || choice.name == "virasoro-verma") {
        auto vir = virasoro_model(parse_rational(choice.c));
        m.alg = vir;
        if (choice.name == "virasoro-verma")
            m.owned = std::make_unique<VirasoroModule>(*vir, parse_rational(choice.h), false);
    } else {
        throw ConfigError("unknown model " + choice.name + " (heisenberg, fock, virasoro, virasoro-verma)");
    }
    m.mod = m.owned ? m.owned.get() : &m.alg->adjoint();
    return m;
}

Json model_config(const ModelChoice& choice) {
    Json j{{"name", choice.name}};
    if (choice.name == "fock") j["mu"] = choice.mu;
    if (choice.name == "virasoro" || choice.name == "virasoro-verma") j["c"] = choice.c;
    if (choice.name == "virasoro-verma") j["h"] = choice.h;
    return j;
}

Json model_descriptor(const Module& m, int cap, bool labels) {
    std::vector<int> dims;
    Json basis = Json::array();
    for (int n = 0; n <= cap; ++n) {
        auto b = m.basis(n);
        dims.push_back(static_cast<int>(b.size()));
        if (labels)
            for (const auto& l : b) basis.push_back(l.str());
    }
    Json j{{"name", m.name()},
           {"algebra", m.algebra().name()},
           {"c", exact_scalar(m.algebra().central_charge())},
           {"delta", exact_scalar(m.delta())},
           {"cap", cap},
           {"dims", dims}};
    if (labels) j["basis"] = basis;
    return j;
}

void add_model_options(CLI::App* cmd, ModelChoice& choice) {
    cmd->add_option("--model", choice.name, "heisenberg, fock, virasoro or virasoro-verma")->capture_default_str();
    cmd->add_option("--mu", choice.mu, "Fock momentum")->capture_default_str();
    cmd->add_option("--c", choice.c, "Virasoro central charge")->capture_default_str();
    cmd->add_option("--h", choice.h, "Virasoro highest weight")->capture_default_str();
}

const Json& need(const Json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError("fixture is missing \"" + key + "\"");
    return j.at(key);
}

Rational json_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ConfigError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Label json_label(const Json& j) {
    if (j.is_string()) return parse_label(j.get<std::string>());
    if (!j.is_array()) throw ConfigError("expected a label, got " + j.dump());
    std::vector<int> parts;
    for (const auto& p : j) {
        if (!p.is_number_integer() || p.get<int>() <= 0) throw ConfigError("label parts must be positive: " + j.dump());
        parts.push_back(p.get<int>());
    }
    return Label(parts);
}

// [a0, a1, ...], "polynomial" (order = degree + 1), {"poly": ..., "order": N}
// or {"floor": f, "order": N, "coeffs": [...]}.
TruncSeries json_series(const Json& j, const std::string& var) {
    if (j.is_array()) {
        std::vector<Rational> c;
        for (const auto& x : j) c.push_back(json_rational(x));
        return TruncSeries(var, 0, static_cast<int>(c.size()), c);
    }
    if (j.is_string()) return to_series(parse_polynomial(j.get<std::string>(), ""), var);
    if (j.is_object() && j.contains("poly"))
        return to_series(parse_polynomial(need(j, "poly").get<std::string>(), ""), var,
                         j.contains("order") ? j.at("order").get<int>() : -1);
    if (j.is_object()) {
        int floor = need(j, "floor").get<int>(), order = need(j, "order").get<int>();
        std::vector<Rational> c;
        for (const auto& x : need(j, "coeffs")) c.push_back(json_rational(x));
        if (static_cast<int>(c.size()) != order - floor)
            throw ConfigError("series needs order - floor = " + std::to_string(order - floor) + " coefficients");
        return TruncSeries(var, floor, order, c);
    }
    throw ConfigError("cannot read a series from " + j.dump());
}

std::complex<double> json_complex(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError("expected a number or [re, im], got " + j.dump());
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

ModelChoice json_model(const Json& j) {
    ModelChoice m;
    m.name = need(j, "name").get<std::string>();
    if (j.contains("mu")) m.mu = json_rational(j.at("mu")).str();
    if (j.contains("c")) m.c = json_rational(j.at("c")).str();
    if (j.contains("h")) m.h = json_rational(j.at("h")).str();
    return m;
}

Json vector_json(const GradedVector& v) {
    Json j = Json::object();
    for (const auto& [l, a] : v.terms()) j[l.str()] = exact_value(a);
    return j;
}

Json vec_series_json(const VecSeries& s) {
    Json coeffs = Json::array();
    for (int e = s.floor; e < s.order; ++e) coeffs.push_back(Json{{"exponent", e}, {"vector", vector_json(s.coeff(e))}});
    return Json{{"provenance", "exact"}, {"floor", s.floor}, {"order", s.order}, {"coeffs", coeffs}};
}

Json rational_function_json(const RationalFunction& f) {
    Json poles = Json::array();
    for (const auto& [x, n] : f.poles()) poles.push_back(Json::array({exact_value(x), n}));
    return Json{{"provenance", "exact"}, {"numerator", exact_values(f.numerator())}, {"poles", poles}, {"text", f.str("zeta")}};
}

Json glue_json(const GlueResult& g) {
    Json j{{"pass", g.pass}, {"underdetermined", g.underdetermined}};
    if (g.section) j["section"] = rational_function_json(*g.section);
    if (g.violation)
        j["violation"] = Json{{"provenance", "exact"},
                              {"centers", exact_values(g.violation->centers)},
                              {"exponents", g.violation->exponents},
                              {"residue_sum", exact_value(g.violation->residue_sum)},
                              {"text", g.violation->str()}};
    return j;
}

std::vector<std::vector<std::string>> series_table(const TruncSeries& s) {
    std::vector<std::vector<std::string>> t = {{"exponent", "coeff"}};
    for (int e = s.floor(); e < s.order(); ++e) t.push_back({std::to_string(e), s.coeff(e).str()});
    return t;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

struct Common {
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 1;
    bool timings = false;
};

Report cmd_character(const ModelChoice& choice, int cap, bool normalize, const std::string& insertion, bool labels,
                     Json& config) {
    config["model"] = model_config(choice);
    config["cap"] = cap;
    config["normalize"] = normalize;
    config["insertion"] = insertion;
    ModelHandle m = make_model(choice);
    GradedVector vac(Label{});
    SewnSeries s;
    if (insertion == "trace") {
        s = torus_character(*m.mod, vac, cap);
    } else if (insertion == "left" || insertion == "right") {
        s = sew(torus_block(*m.mod), {vac}, cap, insertion == "left" ? InsertionSide::Left : InsertionSide::Right);
    } else {
        throw ConfigError("--insertion must be trace, left or right");
    }
    if (normalize) s = normalize_character(s, m.mod->algebra().central_charge());
    Report r;
    r.result = Json{{"model", model_descriptor(*m.mod, cap, labels)}, {"character", exact_qseries(s.standard)}};
    r.table = {{"n", "exponent", "coeff"}};
    for (int n = 0; n < s.standard.order(); ++n)
        r.table.push_back({std::to_string(n), (s.standard.offset() + Rational(n)).str(), s.standard.coeff(n).str()});
    return r;
}

Report cmd_extract(const std::string& series, int order, Json& config) {
    config["series"] = series;
    config["order"] = order;
    TruncSeries rho = to_series(parse_series_text(series, "z"), "z", order);
    std::vector<Rational> c = extract_coeffs(rho);
    Report r;
    r.result = Json{{"series", exact_series(rho)}, {"coeffs", Json{{"provenance", "exact"}, {"c", exact_values(c)}}}};
    r.table = {{"n", "c"}};
    for (std::size_t n = 0; n < c.size(); ++n) r.table.push_back({std::to_string(n), c[n].str()});
    return r;
}

Report cmd_huang(const std::string& series, int order, const ModelChoice& choice, const std::string& v,
                 const std::string& w, int z_order, Json& config) {
    config["series"] = series;
    config["model"] = model_config(choice);
    config["v"] = v;
    config["w"] = w;
    config["z_order"] = z_order;
    ModelHandle m = make_model(choice);
    Label lv = parse_label(v), lw = parse_label(w);
    if (order < 0) order = z_order + 2 * lv.weight() + lw.weight() + 1;
    config["order"] = order;
    TruncSeries alpha = to_series(parse_series_text(series, "z"), "z", order);
    HuangResult h = huang_conjugation_check(alpha, GradedVector(lv), GradedVector(lw), *m.mod, z_order);
    Report r;
    r.pass = h.pass;
    r.result = Json{{"pass", h.pass}, {"lhs", vec_series_json(h.lhs)}, {"rhs", vec_series_json(h.rhs)}};
    r.table = {{"check", "pass"}, {"huang-conjugation", h.pass ? "true" : "false"}};
    return r;
}

Report cmd_schwarzian(const std::string& series, int order, Json& config) {
    config["series"] = series;
    config["order"] = order;
    TruncSeries f = to_series(parse_series_text(series, "z"), "z", order + 3);
    TruncSeries s = schwarzian(f).truncated(order);
    Report r;
    r.result = Json{{"series", exact_series(f)}, {"schwarzian", exact_series(s)}};
    r.table = series_table(s);
    return r;
}

Report cmd_uniformize(const std::string& series, int order, Json& config) {
    config["series"] = series;
    config["order"] = order;
    TruncSeries Q = to_series(parse_series_text(series, "z"), "z", order);
    TruncSeries f = uniformize(Q);
    TruncSeries back = schwarzian(f);
    bool ok = agree_to(back, Q, std::min(back.order(), Q.order()));
    Report r;
    r.pass = ok;
    r.result = Json{{"Q", exact_series(Q)}, {"f", exact_series(f)}, {"round_trip", ok}};
    r.table = series_table(f);
    return r;
}

Report cmd_three_point(const std::string& fixture, const ModelChoice& flag_model, const std::string& z0s,
                       const std::string& v, const std::string& w, const std::string& wd, Json& config) {
    ModelChoice choice = flag_model;
    Rational z0;
    Label lv, lw, lwd;
    if (!fixture.empty()) {
        config["fixture"] = fixture;
        Json j = read_json_file(fixture);
        choice = json_model(need(j, "model"));
        z0 = json_rational(need(j, "z0"));
        lv = json_label(need(j, "v"));
        lw = json_label(need(j, "w"));
        lwd = json_label(need(j, "w_dual"));
    } else {
        z0 = parse_rational(z0s);
        lv = parse_label(v);
        lw = parse_label(w);
        lwd = parse_label(wd);
    }
    config["model"] = model_config(choice);
    config["z0"] = z0.str();
    config["v"] = lv.str();
    config["w"] = lw.str();
    config["w_dual"] = lwd.str();
    ModelHandle m = make_model(choice);
    Rational value = three_point_block(*m.mod, GradedVector(lv), z0, GradedVector(lw), GradedVector(lwd));
    Report r;
    r.result = Json{{"value", exact_scalar(value)}};
    r.table = {{"value"}, {value.str()}};
    return r;
}

Report cmd_glue(const std::string& fixture, Json& config) {
    if (fixture.empty()) throw ConfigError("blocks glue needs --fixture");
    config["fixture"] = fixture;
    Json j = read_json_file(fixture);
    Rational z0 = json_rational(need(j, "z0"));
    GlueResult g = rational_glue(z0, json_series(need(j, "at_zero"), "t"), json_series(need(j, "at_z0"), "t"),
                                 json_series(need(j, "at_infinity"), "t"));
    Report r;
    r.pass = g.pass;
    r.result = glue_json(g);
    r.table = {{"pass", "section", "violation"},
               {g.pass ? "true" : "false", g.section ? g.section->str("zeta") : "", g.violation ? g.violation->str() : ""}};
    return r;
}

SpherePoint json_point(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return SpherePoint::infinity();
    return SpherePoint::finite(json_rational(j));
}

Report cmd_residue_check(const std::string& fixture, Json& config) {
    if (fixture.empty()) throw ConfigError("blocks residue-check needs --fixture");
    config["fixture"] = fixture;
    Json j = read_json_file(fixture);
    std::vector<SpherePoint> pts;
    for (const auto& p : need(j, "points")) pts.push_back(json_point(p));
    LaurentTail tails;
    for (const auto& s : need(j, "tails")) tails.at.push_back(json_series(s, "t"));
    if (tails.at.size() != pts.size()) throw ConfigError("one tail per marked point");
    GlueResult g;
    try {
        g = strong_residue_check(SpherePoints(pts), tails);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    Report r;
    r.pass = g.pass;
    r.result = glue_json(g);
    r.table = {{"pass", "section", "violation"},
               {g.pass ? "true" : "false", g.section ? g.section->str("zeta") : "", g.violation ? g.violation->str() : ""}};
    return r;
}

struct MatrixFile {
    PoleODE ode;
    std::map<int, RVector> seeds;
    std::optional<Rational> r1, alpha;
};

MatrixFile read_matrix(const std::string& path) {
    Json j = read_json_file(path);
    std::vector<std::vector<TruncSeries>> rows;
    for (const auto& row : need(j, "entries")) {
        rows.emplace_back();
        for (const auto& e : row) rows.back().push_back(json_series(e, "q"));
    }
    bool polynomial = j.value("polynomial", false);
    MatrixFile m{PoleODE(rows, polynomial), {}, {}, {}};
    if (j.contains("seeds"))
        for (const auto& [k, v] : j.at("seeds").items()) {
            RVector seed;
            for (const auto& x : v) seed.push_back(json_rational(x));
            m.seeds[std::stoi(k)] = seed;
        }
    if (j.contains("r1")) m.r1 = json_rational(j.at("r1"));
    if (j.contains("alpha")) m.alpha = json_rational(j.at("alpha"));
    return m;
}

Report cmd_ode_solve(const std::string& matrix, int order, Json& config) {
    if (matrix.empty()) throw ConfigError("ode solve needs --matrix");
    config["matrix"] = matrix;
    config["order"] = order;
    MatrixFile m = read_matrix(matrix);
    Report r;
    r.result["dim"] = m.ode.dim();
    r.result["resonance_bound"] = resonance_bound(m.ode);
    FormalSolution s;
    try {
        s = formal_solve(m.ode, m.seeds, order);
    } catch (const ResonanceError& e) {
        Json kernel = Json::array();
        for (const auto& k : e.kernel()) kernel.push_back(exact_values(k));
        r.pass = false;
        r.result["resonance"] = Json{{"n", e.n()}, {"kernel", Json{{"provenance", "exact"}, {"basis", kernel}}}, {"message", e.what()}};
        return r;
    }
    Json modes = Json::array();
    r.table = {{"n", "component", "coeff"}};
    bool residual_zero = true;
    for (int n = 0; n <= order; ++n) {
        const RVector& v = s.modes[static_cast<std::size_t>(n)];
        modes.push_back(exact_values(v));
        for (std::size_t i = 0; i < v.size(); ++i) r.table.push_back({std::to_string(n), std::to_string(i), v[i].str()});
        for (const auto& x : recursion_residual(m.ode, s, n)) residual_zero = residual_zero && x.is_zero();
    }
    r.result["modes"] = Json{{"provenance", "exact"}, {"values", modes}};
    r.result["residual_zero"] = residual_zero;
    r.pass = residual_zero;
    if (m.r1) {
        try {
            RadiusEstimate est = radius_estimate(m.ode, *m.r1, m.alpha);
            GrowthReport g = growth_check(est, s);
            r.result["radius"] = Json{{"provenance", "exact"},       {"r1", exact_value(est.r1)},
                                      {"alpha", exact_value(est.alpha)}, {"beta", exact_value(est.beta)},
                                      {"gamma", exact_value(est.gamma)}, {"r0", exact_value(est.r0)}};
            Json growth{{"pass", g.pass}, {"base", g.base}, {"c", exact_scalar(g.c)}};
            if (g.violation) growth["violation"] = *g.violation;
            r.result["growth"] = growth;
            r.pass = r.pass && g.pass;
        } catch (const NoMajorantError& e) {
            r.result["radius"] = Json{{"error", e.what()}};
            r.pass = false;
        }
    }
    return r;
}

Report cmd_ode_continue(const std::string& matrix, const std::string& path, int steps, Json& config) {
    if (matrix.empty() || path.empty()) throw ConfigError("ode continue needs --matrix and --path");
    config["matrix"] = matrix;
    config["path"] = path;
    config["steps"] = steps;
    MatrixFile m = read_matrix(matrix);
    Json p = read_json_file(path);
    NumericPath np;
    np.steps = steps;
    for (const auto& w : need(p, "waypoints")) np.waypoints.push_back(json_complex(w));
    CVector init;
    for (const auto& x : need(p, "initial")) init.push_back(json_complex(x));
    if (static_cast<int>(init.size()) != m.ode.dim()) throw ConfigError("initial value needs one entry per row");
    NumericResult res;
    try {
        res = numeric_continue(m.ode, init, np);
    } catch (const std::range_error& e) {
        Report r;
        r.pass = false;
        r.result = Json{{"error", e.what()}};
        return r;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    Report r;
    r.result = Json{{"value", float_complex_vector(res.value, res.error)}};
    r.table = {{"component", "re", "im"}};
    for (std::size_t i = 0; i < res.value.size(); ++i) {
        std::ostringstream re, im;
        re.precision(17);
        im.precision(17);
        re << res.value[i].real();
        im << res.value[i].imag();
        r.table.push_back({std::to_string(i), re.str(), im.str()});
    }
    return r;
}

Report cmd_suite(const std::vector<std::string>& names, const Common& common, std::ostream& err, Json& config) {
    std::vector<std::string> chosen = names;
    if (chosen.empty())
        for (const auto& info : suite_catalog()) chosen.push_back(info.name);
    config["suites"] = chosen;
    Report r;
    Json suites = Json::array();
    r.table = {{"criterion", "name", "pass", "instances", "failures"}};
    for (const auto& name : chosen) {
        bool known = false;
        for (const auto& info : suite_catalog()) known = known || info.name == name;
        if (!known) throw ConfigError("unknown suite " + name);
        auto t0 = std::chrono::steady_clock::now();
        SuiteResult s = run_suite(name, common.seed);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (common.timings) err << name << ": " << secs << " s\n";
        suites.push_back(to_json(s));
        r.pass = r.pass && s.pass;
        r.table.push_back({std::to_string(s.criterion), s.name, s.pass ? "true" : "false", std::to_string(s.instances),
                           std::to_string(s.failures)});
    }
    r.result = Json{{"pass", r.pass}, {"suites", suites}};
    return r;
}

std::string render(const Report& r, const std::string& command, const Json& config, const std::string& format) {
    if (format == "csv") {
        if (r.table.empty()) throw ConfigError("--format csv is not available for " + command);
        std::string out;
        for (const auto& row : r.table) {
            for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
            out += "\n";
        }
        return out;
    }
    Json doc{{"schema", kSchema}, {"command", command}, {"config", config}, {"pass", r.pass}, {"result", r.result}};
    return doc.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations with VOA conformal blocks", "voa-blocks"};
    app.set_help_flag("--help", "print this help");
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", common.out, "write the report to this file");
    app.add_option("--seed", common.seed, "seed for randomized suites")->capture_default_str();
    app.add_flag("--timings", common.timings, "print suite timings to stderr");

    ModelChoice model;
    int cap = 8, order = -1, z_order = 4, steps = 1000;
    bool normalize = false, labels = false;
    std::string insertion = "trace", series, v, w, wd, z0 = "1", fixture, matrix, path;
    std::vector<std::string> suite_names;

    auto* character = app.add_subcommand("character", "graded character of a module as a q-series");
    add_model_options(character, model);
    character->add_option("--cap", cap, "highest weight")->check(CLI::PositiveNumber)->capture_default_str();
    character->add_flag("--normalize", normalize, "multiply by q^{-c/24}");
    character->add_option("--insertion", insertion, "trace, or sew with q^{L0} on the left or right")->capture_default_str();
    character->add_flag("--labels", labels, "list basis labels in the model descriptor");

    auto* coord = app.add_subcommand("coord", "coordinate changes");
    coord->require_subcommand(1);
    auto* extract = coord->add_subcommand("extract", "exponential coefficients of a coordinate change");
    extract->add_option("--series", series, "rho as a polynomial or [a0, a1, ...]")->required();
    extract->add_option("--order", order, "rho is known below z^order (default degree + 1)")->check(CLI::PositiveNumber);
    auto* huang = coord->add_subcommand("huang", "conjugation of a vertex operator by U(alpha)");
    huang->add_option("--series", series, "alpha")->required();
    huang->add_option("--order", order, "alpha is known below z^order (default: what the check needs)")->check(CLI::PositiveNumber);
    add_model_options(huang, model);
    huang->add_option("--v", v, "label of the inserted vector, e.g. 2,1")->required();
    huang->add_option("--w", w, "label of the module vector")->capture_default_str();
    huang->add_option("--z-order", z_order, "compare coefficients of z^e for e below this")->check(CLI::PositiveNumber)->capture_default_str();

    auto* schwarz = app.add_subcommand("schwarzian", "Schwarzian derivative of a series");
    schwarz->add_option("--series", series, "f with f(0) = 0, f'(0) != 0")->required();
    int s_order = 6;
    schwarz->add_option("--order", s_order, "output known below z^order")->check(CLI::PositiveNumber)->capture_default_str();

    auto* unif = app.add_subcommand("uniformize", "a coordinate f with Schwarzian Q");
    unif->add_option("--series", series, "Q")->required();
    unif->add_option("--order", order, "Q is known below z^order (default degree + 1)")->check(CLI::PositiveNumber);

    auto* blocks = app.add_subcommand("blocks", "genus-zero conformal blocks");
    blocks->require_subcommand(1);
    auto* three = blocks->add_subcommand("three-point", "<Y(v, z0) w, w'> summed exactly");
    three->add_option("--fixture", fixture, "JSON with model, z0, v, w, w_dual");
    add_model_options(three, model);
    three->add_option("--z0", z0, "insertion point")->capture_default_str();
    three->add_option("--v", v, "label in V");
    three->add_option("--w", w, "label in W");
    three->add_option("--wd", wd, "label in W'");
    auto* glue = blocks->add_subcommand("glue", "glue expansions at 0, z0 and infinity");
    glue->add_option("--fixture", fixture, "JSON with z0, at_zero, at_z0, at_infinity")->required();
    auto* residue = blocks->add_subcommand("residue-check", "strong residue check on Laurent tails");
    residue->add_option("--fixture", fixture, "JSON with points and tails")->required();

    auto* ode = app.add_subcommand("ode", "q d/dq psi = A(q) psi");
    ode->require_subcommand(1);
    int ode_order = 10;
    auto* solve = ode->add_subcommand("solve", "formal solution and its certified growth");
    solve->add_option("--matrix", matrix, "JSON with entries, seeds, r1, alpha")->required();
    solve->add_option("--order", ode_order, "highest mode")->check(CLI::NonNegativeNumber)->capture_default_str();
    auto* cont = ode->add_subcommand("continue", "numerical continuation along a path");
    cont->add_option("--matrix", matrix, "JSON with entries")->required();
    cont->add_option("--path", path, "JSON with waypoints and initial")->required();
    cont->add_option("--steps", steps, "RK4 steps per segment")->check(CLI::PositiveNumber)->capture_default_str();

    auto* suite = app.add_subcommand("suite", "randomized property suites");
    suite->add_option("--name", suite_names, "suite name (repeatable; default all)");

    std::vector<std::string> argv_store = {"voa-blocks"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Json config{{"seed", common.seed}, {"format", common.format}};
    if (!common.out.empty()) config["out"] = common.out;
    std::string command;
    try {
        Report r;
        if (character->parsed()) {
            command = "character";
            r = cmd_character(model, cap, normalize, insertion, labels, config);
        } else if (extract->parsed()) {
            command = "coord extract";
            r = cmd_extract(series, order, config);
        } else if (huang->parsed()) {
            command = "coord huang";
            r = cmd_huang(series, order, model, v, w, z_order, config);
        } else if (schwarz->parsed()) {
            command = "schwarzian";
            r = cmd_schwarzian(series, s_order, config);
        } else if (unif->parsed()) {
            command = "uniformize";
            r = cmd_uniformize(series, order, config);
        } else if (three->parsed()) {
            command = "blocks three-point";
            r = cmd_three_point(fixture, model, z0, v, w, wd, config);
        } else if (glue->parsed()) {
            command = "blocks glue";
            r = cmd_glue(fixture, config);
        } else if (residue->parsed()) {
            command = "blocks residue-check";
            r = cmd_residue_check(fixture, config);
        } else if (solve->parsed()) {
            command = "ode solve";
            r = cmd_ode_solve(matrix, ode_order, config);
        } else if (cont->parsed()) {
            command = "ode continue";
            r = cmd_ode_continue(matrix, path, steps, config);
        } else {
            command = "suite";
            r = cmd_suite(suite_names, common, err, config);
        }
        std::string text = render(r, command, config, common.format);
        if (common.out.empty()) {
            out << text;
        } else {
            std::ofstream f(common.out, std::ios::binary);
            if (!f) throw ConfigError("cannot write " + common.out);
            f << text;
        }
        return r.pass ? 0 : 1;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace voa::cli
