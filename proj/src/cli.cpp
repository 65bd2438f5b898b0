#include "tbcalc/cli.hpp"

#include "tbcalc/calccomp.hpp"
#include "tbcalc/dsl.hpp"
#include "tbcalc/ftverify.hpp"
#include "tbcalc/parametrix.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace tbcalc {

namespace {

struct Flags {
    std::string config_path;
    std::string trunc;
    std::string out;
    std::optional<std::int64_t> seed;

    std::string expr;
    std::string law;
    std::string left, right;
    std::optional<int> n;
    std::string vd, vt;
    std::string alpha_d, alpha_t, eps;
    std::string from, to;
    std::string suite;
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageError(what + ": " + e.what());
    }
}

// "zero" or "gaussian_well:depth,width".
RadialPotential potential_from_flag(const std::string& text) {
    if (text == "zero") return RadialPotential::zero();
    const std::string prefix = "gaussian_well:";
    if (text.rfind(prefix, 0) == 0) {
        std::string rest = text.substr(prefix.size());
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw UsageError("--vt gaussian_well needs depth,width");
        try {
            return RadialPotential::gaussian_well(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
        } catch (const std::logic_error&) {
            throw UsageError("--vt: bad number in '" + text + "'");
        }
    }
    throw UsageError("--vt must be 'zero' or 'gaussian_well:depth,width'");
}

IndexSet face_from_json(const Json& j) {
    if (j.is_string()) {
        DslValue v = evaluate_dsl(j.get<std::string>());
        if (auto* s = std::get_if<IndexSet>(&v)) return *s;
        throw UsageError("face expression must evaluate to a single index set");
    }
    return set_from_json(j);
}

template <class C>
C collection_from_any(const Json& j, const std::string& what) {
    if (!j.is_object()) throw UsageError(what + " must be a JSON object keyed by face name");
    C c;
    auto f = c.faces();
    for (const auto& [key, value] : j.items()) {
        std::size_t i = 0;
        while (i < f.size() && key != C::names[i]) ++i;
        if (i == f.size()) throw UsageError(what + ": unknown face '" + key + "'");
        *f[i] = face_from_json(value);
    }
    return c;
}

template <class C>
Json compose_json(const Json& left, const Json& right, const std::optional<Rational>& trunc,
                  C (*law)(const C&, const C&)) {
    C result = law(collection_from_any<C>(left, "left"), collection_from_any<C>(right, "right"));
    Json out = {{"result", collection_to_json(result)}};
    if (trunc) out["truncated"] = collection_points_json(result, Surd(*trunc));
    return out;
}

RunConfig build_config(Command cmd, const Flags& f) {
    RunConfig rc;
    rc.command = cmd;
    rc.output_path = f.out;
    rc.seed = f.seed;
    if (!f.config_path.empty()) {
        rc.config = read_json_file(f.config_path);
        if (!rc.config.is_object()) throw UsageError("--config must hold a JSON object");
    }
    const Json& cfg = rc.config;
    if (cfg.contains("C")) rc.truncation = rational_from_any(cfg.at("C"));
    if (!f.trunc.empty()) rc.truncation = rational_arg(f.trunc);
    if (cfg.contains("solver")) rc.solver = solver_from_json(cfg.at("solver"));

    bool wants_model = cmd == Command::Parametrix || cmd == Command::Analyze || cmd == Command::RelIndex;
    if (wants_model) {
        Json mj = cfg.contains("model") ? cfg.at("model") : Json::object();
        if (!mj.is_object()) throw UsageError("model must be a JSON object");
        if (f.n) mj["n"] = *f.n;
        if (!f.vd.empty()) mj["VD"] = rational_to_json(rational_arg(f.vd));
        if (!mj.contains("n")) throw UsageError("the model needs -n (or model.n in --config)");
        ModelOperator m = model_from_json(mj);
        if (!f.vt.empty()) {
            int decay = m.vt.decay_order;
            m.vt = potential_from_flag(f.vt);
            m.vt.decay_order = decay;
        }
        m.validate();
        rc.model = m;
    }
    if (cmd == Command::Parametrix || cmd == Command::Analyze) {
        std::optional<Rational> ad, at;
        if (cfg.contains("weights")) {
            const Json& w = cfg.at("weights");
            if (!w.is_object()) throw UsageError("weights must be an object");
            if (w.contains("alpha_d")) ad = rational_from_any(w.at("alpha_d"));
            if (w.contains("alpha_t")) at = rational_from_any(w.at("alpha_t"));
        }
        if (!f.alpha_d.empty()) ad = rational_arg(f.alpha_d);
        if (!f.alpha_t.empty()) at = rational_arg(f.alpha_t);
        if (!ad || !at) throw UsageError("weights need --alpha-d and --alpha-t (or weights in --config)");
        rc.weights = WeightPair{*ad, *at};
    }
    return rc;
}

void emit(const RunConfig& rc, const std::string& text, std::ostream& out) {
    if (rc.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(rc.output_path);
    if (!file) throw UsageError("cannot write " + rc.output_path);
    file << text;
}

int cmd_indexset(const RunConfig& rc, const Flags& f, std::ostream& out) {
    std::string expr = f.expr;
    if (expr.empty() && rc.config.contains("expr")) expr = rc.config.at("expr").get<std::string>();
    if (expr.empty()) throw UsageError("indexset needs an expression");
    DslValue v = evaluate_dsl(expr);
    std::string text;
    if (rc.truncation && std::holds_alternative<IndexSet>(v))
        text = points_to_string(std::get<IndexSet>(v).truncate(Surd(*rc.truncation)));
    else
        text = render(v);
    emit(rc, text + "\n", out);
    return 0;
}

int cmd_compose(const RunConfig& rc, const Flags& f, std::ostream& out) {
    const Json& cfg = rc.config;
    std::string law = !f.law.empty() ? f.law : cfg.value("law", std::string());
    Json left = !f.left.empty() ? parse_json_text(f.left, "--left") : cfg.value("left", Json());
    Json right = !f.right.empty() ? parse_json_text(f.right, "--right") : cfg.value("right", Json());
    if (law.empty() || left.is_null() || right.is_null()) throw UsageError("compose needs --law, --left and --right");
    Json result;
    if (law == "b") result = compose_json<BCollection>(left, right, rc.truncation, compose_b);
    else if (law == "scbt") result = compose_json<ScbtCollection>(left, right, rc.truncation, compose_scbt);
    else if (law == "ch") result = compose_json<ChCollection>(left, right, rc.truncation, compose_ch);
    else if (law == "3b") result = compose_json<TbCollection>(left, right, rc.truncation, compose_3b);
    else throw UsageError("unknown law '" + law + "' (b, scbt, ch, 3b)");
    Json doc = {{"law", law}};
    doc.update(result);
    emit(rc, doc.dump(2) + "\n", out);
    return 0;
}

int cmd_parametrix(const RunConfig& rc, const Flags& f, std::ostream& out, std::ostream& err) {
    Rational c = rc.truncation.value_or(Rational(4));
    Rational eps = !f.eps.empty() ? rational_arg(f.eps)
                   : rc.config.contains("epsilon") ? rational_from_any(rc.config.at("epsilon"))
                                                   : Rational(0);
    FullLedger ledger = run_model_ledger(*rc.model, *rc.weights, c, eps, false);
    emit(rc, ledger.to_json().dump(2) + "\n", out);
    if (const BoundCheck* bad = ledger.first_failure()) {
        err << "bound violation: " << bad->bound << " face " << bad->face << " j=" << bad->j << "\n";
        return 5;
    }
    return 0;
}

int cmd_analyze(const RunConfig& rc, std::ostream& out) {
    EllipticityReport r = full_ellipticity(*rc.model, *rc.weights, rc.solver);
    emit(rc, r.to_json().dump(2) + "\n", out);
    return r.overall ? 0 : 1;
}

int cmd_relindex(const RunConfig& rc, const Flags& f, std::ostream& out) {
    std::optional<Rational> a, b;
    if (rc.config.contains("from")) a = rational_from_any(rc.config.at("from"));
    if (rc.config.contains("to")) b = rational_from_any(rc.config.at("to"));
    if (!f.from.empty()) a = rational_arg(f.from);
    if (!f.to.empty()) b = rational_arg(f.to);
    if (!a || !b) throw UsageError("relindex needs --from and --to");
    emit(rc, std::to_string(relative_index(*rc.model, *a, *b)) + "\n", out);
    return 0;
}

int cmd_ftverify(const RunConfig& rc, const Flags& f, std::ostream& out) {
    const Json& cfg = rc.config;
    std::vector<ConormalSpec> cases;
    if (cfg.contains("cases")) {
        if (!cfg.at("cases").is_array()) throw UsageError("cases must be an array");
        for (const auto& c : cfg.at("cases")) cases.push_back(case_from_json(c));
    }
    std::string suite = !f.suite.empty() ? f.suite : cfg.value("suite", std::string());
    if (!suite.empty()) {
        if (suite != "default") throw UsageError("unknown suite '" + suite + "'");
        auto d = default_cases();
        cases.insert(cases.begin(), d.begin(), d.end());
    }
    if (cases.empty()) throw UsageError("ftverify needs --suite default or cases in --config");
    FtTolerances tol = cfg.contains("tolerances") ? FtTolerances::from_json(cfg.at("tolerances")) : FtTolerances{};
    QuadConfig quad = cfg.contains("quadrature") ? QuadConfig::from_json(cfg.at("quadrature")) : QuadConfig{};
    SuiteReport r = run_suite(cases, tol, quad);
    emit(rc, r.to_json().dump(2) + "\n", out);
    return r.passed() ? 0 : 1;
}

std::vector<char*> make_argv(std::vector<std::string>& storage) {
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    return argv;
}

} // namespace

Rational rational_arg(std::string_view text) {
    auto q = parse_rational(text);
    if (!q) throw UsageError("expected a rational number, got '" + std::string(text) + "'");
    return *q;
}

Rational rational_from_any(const Json& j) {
    if (j.is_string()) return rational_arg(j.get<std::string>());
    if (j.is_number_float()) return rational_arg(j.dump());
    return rational_from_json(j);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Index-set calculus, parametrix ledgers and Fourier decay checks", "tbcalc"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config_path, "JSON file with command settings");
    app.add_option("--trunc", f.trunc, "truncation bound C (rational)");
    app.add_option("--out", f.out, "write the result to this file instead of stdout");
    app.add_option("--seed", f.seed, "seed for randomized suites (all commands here are deterministic)");

    auto* indexset = app.add_subcommand("indexset", "evaluate an index-set expression");
    indexset->add_option("expr", f.expr, "expression, e.g. \"eu(N0,N0)\"");

    auto* compose = app.add_subcommand("compose", "compose two index-set collections");
    compose->add_option("--law", f.law, "b, scbt, ch or 3b");
    compose->add_option("--left", f.left, "left collection as JSON (faces as point lists or expressions)");
    compose->add_option("--right", f.right, "right collection as JSON");

    auto model_options = [&](CLI::App* sub) {
        sub->add_option("-n", f.n, "dimension n >= 4");
        sub->add_option("--vd", f.vd, "constant potential on the D-face (rational)");
    };
    auto* parametrix = app.add_subcommand("parametrix", "run the parametrix index-set ledger");
    model_options(parametrix);
    parametrix->add_option("--vt", f.vt, "zero or gaussian_well:depth,width");
    parametrix->add_option("--alpha-d", f.alpha_d, "weight at the D-face");
    parametrix->add_option("--alpha-t", f.alpha_t, "weight at the T-face");
    parametrix->add_option("--eps", f.eps, "ladder step (0 or omitted: automatic)");

    auto* analyze = app.add_subcommand("analyze", "full ellipticity report");
    model_options(analyze);
    analyze->add_option("--vt", f.vt, "zero or gaussian_well:depth,width");
    analyze->add_option("--alpha-d", f.alpha_d, "weight at the D-face");
    analyze->add_option("--alpha-t", f.alpha_t, "weight at the T-face");

    auto* relindex = app.add_subcommand("relindex", "relative index between two D-weights");
    model_options(relindex);
    relindex->add_option("--from", f.from, "starting weight");
    relindex->add_option("--to", f.to, "final weight");

    auto* ftverify = app.add_subcommand("ftverify", "numerical Fourier-transform decay checks");
    ftverify->add_option("--suite", f.suite, "built-in suite: default");

    std::vector<std::string> storage{"tbcalc"};
    storage.insert(storage.end(), args.begin(), args.end());
    auto argv = make_argv(storage);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        Command cmd = indexset->parsed()     ? Command::IndexSet
                      : compose->parsed()    ? Command::Compose
                      : parametrix->parsed() ? Command::Parametrix
                      : analyze->parsed()    ? Command::Analyze
                      : relindex->parsed()   ? Command::RelIndex
                                             : Command::FtVerify;
        RunConfig rc = build_config(cmd, f);
        switch (cmd) {
        case Command::IndexSet: return cmd_indexset(rc, f, out);
        case Command::Compose: return cmd_compose(rc, f, out);
        case Command::Parametrix: return cmd_parametrix(rc, f, out, err);
        case Command::Analyze: return cmd_analyze(rc, out);
        case Command::RelIndex: return cmd_relindex(rc, f, out);
        case Command::FtVerify: return cmd_ftverify(rc, f, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
    return 4;
}

} // namespace tbcalc
