#include "discop/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "discop/io.hpp"

namespace discop {

namespace {

std::int64_t resolve_window(const CLI::Option* opt, std::int64_t flag_value) {
    if (opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("DISCOP_DEFAULT_WINDOW")) {
        try {
            std::size_t used = 0;
            std::string s(env);
            std::int64_t v = std::stoll(s, &used);
            if (used == s.size() && v > 0) return v;
        } catch (...) {
        }
        throw BadParameters("DISCOP_DEFAULT_WINDOW must be a positive integer");
    }
    return 32;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

void emit(const Json& doc, const std::string& out_path, bool to_stdout, std::ostream& out) {
    std::string text = dump_document(doc);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw ParseError(out_path, "cannot write file");
        f << text;
    }
    if (to_stdout) out << text;
}

std::string verdict_text(const Verdict& v) {
    if (v.is_holds()) return "holds";
    if (v.is_window()) return "verified on window " + std::to_string(v.window());
    const Witness& w = v.witness();
    std::string s = "fails [" + w.condition + " at ";
    for (std::size_t i = 0; i < w.points.size(); ++i) {
        if (i) s += ", ";
        s += w.points[i].str();
    }
    s += ": " + w.lhs + " vs " + w.rhs;
    if (w.depth) s += " (n = " + std::to_string(*w.depth) + ")";
    return s + "]";
}

void print_classification(const ClassificationReport& rep, std::ostream& out) {
    out << "densely_defined: " << verdict_text(rep.densely_defined) << "\n";
    out << "bounded: " << verdict_text(rep.bounded) << "\n";
    out << "sup_h: " << rep.sup_h.str() << "\n";
    out << "normal: " << verdict_text(rep.normal) << "\n";
    out << "quasinormal: " << verdict_text(rep.quasinormal) << "\n";
    out << "multiplicative: " << verdict_text(rep.multiplicative) << "\n";
    out << "formally_normal_on_basis: " << verdict_text(rep.formally_normal_on_basis) << "\n";
    out << "symmetric: " << verdict_text(rep.symmetric) << "\n";
    out << "almost_surjective: " << verdict_text(rep.almost_surjective) << "\n";
    out << "n_max: " << rep.n_max << "\n";
    if (!rep.infinite_orbit_witnesses.empty()) {
        out << "infinite_orbit_witnesses:";
        for (const Label& x : rep.infinite_orbit_witnesses) out << " " << x.str();
        out << "\n";
    }
    for (const std::string& v : rep.consistency_violations)
        out << "consistency_violation: " << v << "\n";
}

void print_decomposition(const ShiftDecomposition& dec, std::ostream& out) {
    for (const ShiftBlock& b : dec.blocks) {
        out << "block " << b.anchor.str() << ": ";
        if (const auto* c = std::get_if<ConstantGamma>(&b.gamma)) {
            out << "constant gamma " << c->value.str() << " of length " << c->length;
        } else {
            const auto& g = std::get<GeometricGamma>(b.gamma);
            out << "geometric gamma base " << g.base.str() << " ratio " << g.ratio.str();
        }
        out << " (" << b.relabeling.size() << " basis vectors)\n";
    }
    if (dec.window) out << "window: " << *dec.window << "\n";
}

struct ClassifyArgs {
    std::string input;
    std::int64_t window = 0;
    CLI::Option* window_opt = nullptr;
    std::int64_t nmax = 4;
    std::string format = "text";
    std::string out_path;
};

struct DecomposeArgs {
    std::string input;
    std::int64_t window = 0;
    CLI::Option* window_opt = nullptr;
    std::string format = "text";
    std::string out_path;
    bool orbits_only = false;
};

struct ApplyArgs {
    std::string input;
    std::string op;
    std::string basis;
    CLI::Option* basis_opt = nullptr;
    std::string vector_json;
    CLI::Option* vector_opt = nullptr;
    std::int64_t window = 0;
    CLI::Option* window_opt = nullptr;
    std::string format = "text";
    std::string out_path;
};

struct OracleArgs {
    std::int64_t max_points = 3;
    std::string weight_grid = "0,1,2";
    std::string format = "text";
    std::string out_path;
};

struct GenerateArgs {
    std::string family;
    std::int64_t n = 3;
    std::string weights = "1,1,1";
    std::string base = "1";
    std::string ratio;
    CLI::Option* ratio_opt = nullptr;
    std::int64_t preview = 8;
    std::string out_path;
};

std::vector<Rat> parse_rat_csv(const std::string& csv, const char* what) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto r = Rat::parse(item);
        if (!r) throw BadParameters(std::string(what) + ": '" + item + "' is not a rational");
        out.push_back(std::move(*r));
    }
    if (out.empty()) throw BadParameters(std::string(what) + ": empty list");
    return out;
}

int run_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
    Instance inst = load_instance(a.input);
    Window window(resolve_window(a.window_opt, a.window));
    ClassificationReport rep = full_report(inst, window, a.nmax);
    Json doc = classification_document(rep);
    emit(doc, a.out_path, a.format == "machine", out);
    if (a.format == "text") print_classification(rep, out);
    if (!rep.consistency_violations.empty()) {
        for (const std::string& v : rep.consistency_violations)
            err << "consistency violation: " << v << "\n";
        return kExitConsistency;
    }
    return kExitOk;
}

int run_decompose(const DecomposeArgs& a, std::ostream& out, std::ostream& err) {
    Instance inst = load_instance(a.input);
    Window window(resolve_window(a.window_opt, a.window));
    if (a.orbits_only) {
        const char* kind_name[] = {"fixed_point", "cycle", "infinite_line"};
        for (const OrbitRecord& rec : orbits(inst, window)) {
            out << kind_name[static_cast<int>(rec.kind)] << " anchored at "
                << rec.anchor.str() << ", ratio " << rec.ratio.str() << ", members";
            for (const Label& m : rec.members) out << " " << m.str();
            out << "\n";
        }
        return kExitOk;
    }
    ShiftDecomposition dec = shift_decomposition(inst, window);
    Verdict check = verify_unitary_equivalence(inst, dec, window);
    if (check.is_fails()) {
        err << "internal consistency: intertwining check failed: "
            << verdict_text(check) << "\n";
        return kExitConsistency;
    }
    Json doc = decomposition_document(dec);
    emit(doc, a.out_path, a.format == "machine", out);
    if (a.format == "text") print_decomposition(dec, out);
    return kExitOk;
}

int run_apply(const ApplyArgs& a, std::ostream& out, std::ostream& err) {
    (void)err;
    Instance inst = load_instance(a.input);
    bool have_basis = a.basis_opt->count() > 0;
    bool have_vector = a.vector_opt->count() > 0;
    if (have_basis == have_vector)
        throw BadParameters("provide exactly one of --basis and --vector");

    FinSuppFn result;
    if (a.op == "c" || a.op == "c_star") {
        FinSuppFn f;
        if (have_basis) {
            f = FinSuppFn::basis(parse_label(a.basis));
        } else {
            Json vec;
            try {
                vec = Json::parse(a.vector_json);
            } catch (const Json::parse_error& e) {
                throw ParseError("--vector", e.what());
            }
            if (!vec.is_object()) throw BadParameters("--vector must be a JSON object");
            for (const auto& [key, value] : vec.items()) {
                if (!value.is_string())
                    throw BadParameters("--vector entries must be 're,im' strings");
                auto z = ComplexRat::parse(value.get<std::string>());
                if (!z) throw BadParameters("--vector: '" + value.get<std::string>() +
                                            "' is not a complex rational");
                f.add(parse_label(key), *z);
            }
        }
        result = a.op == "c" ? apply_c(inst, f) : apply_c_star(inst, f);
    } else {
        if (!have_basis) throw BadParameters("--op " + a.op + " takes --basis");
        Label x = parse_label(a.basis);
        if (a.op == "cstar_c") result = apply_cstar_c_basis(inst, x);
        else if (a.op == "c_cstar") result = apply_c_cstar_basis(inst, x);
        else if (a.op == "cstar_c_c") result = apply_cstar_c_c_basis(inst, x);
        else result = apply_c_cstar_c_basis(inst, x);
    }

    Json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "apply";
    doc["op"] = a.op;
    Json res = Json::object();
    for (const auto& [x, v] : result.entries()) res[x.str()] = v.str();
    doc["result"] = std::move(res);
    emit(doc, a.out_path, a.format == "machine", out);
    if (a.format == "text") out << result.str() << "\n";
    return kExitOk;
}

int run_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<Rat> grid = parse_rat_csv(a.weight_grid, "--weight-grid");
    CrosscheckReport rep = exhaustive_crosscheck(a.max_points, grid);
    Json doc = crosscheck_document(rep);
    emit(doc, a.out_path, a.format == "machine", out);
    if (a.format == "text") {
        out << "instances: " << rep.instances_enumerated << "\n";
        out << "disagreements: " << rep.disagreements.size() << "\n";
        for (const Disagreement& d : rep.disagreements)
            out << "  " << d.property << " on " << d.instance << ": classifier "
                << d.classifier << ", oracle " << d.oracle << "\n";
    }
    if (!rep.disagreements.empty()) {
        err << rep.disagreements.size() << " oracle disagreement(s)\n";
        return kExitConsistency;
    }
    return kExitOk;
}

int run_generate(const GenerateArgs& a, std::ostream& out) {
    auto named_points = [](std::int64_t n) {
        std::vector<Label> pts;
        for (std::int64_t i = 0; i < n; ++i)
            pts.push_back(Label::named("x" + std::to_string(i)));
        return pts;
    };
    auto require_ratio = [&]() {
        if (a.ratio_opt->count() == 0) throw BadParameters("--ratio is required");
        auto r = Rat::parse(a.ratio);
        if (!r) throw BadParameters("--ratio: not a rational");
        return *r;
    };

    std::optional<Instance> inst;
    if (a.family == "identity" || a.family == "collapse") {
        if (a.n < 1) throw BadParameters("--n must be at least 1");
        std::vector<Label> pts = named_points(a.n);
        std::map<Label, Rat> mu;
        std::map<Label, Label> phi;
        for (std::int64_t i = 0; i < a.n; ++i) {
            mu[pts[static_cast<std::size_t>(i)]] = Rat(1);
            phi[pts[static_cast<std::size_t>(i)]] =
                a.family == "identity" ? pts[static_cast<std::size_t>(i)] : pts.back();
        }
        inst = Instance(FiniteInstance(pts, std::move(mu), std::move(phi)));
    } else if (a.family == "cycle") {
        std::vector<Rat> ws = parse_rat_csv(a.weights, "--weights");
        for (const Rat& w : ws)
            if (!w.is_positive()) throw BadParameters("--weights must be positive");
        auto n = static_cast<std::int64_t>(ws.size());
        std::vector<Label> pts = named_points(n);
        std::map<Label, Rat> mu;
        std::map<Label, Label> phi;
        for (std::int64_t i = 0; i < n; ++i) {
            mu[pts[static_cast<std::size_t>(i)]] = ws[static_cast<std::size_t>(i)];
            phi[pts[static_cast<std::size_t>(i)]] = pts[static_cast<std::size_t>((i + 1) % n)];
        }
        inst = Instance(FiniteInstance(pts, std::move(mu), std::move(phi)));
    } else if (a.family == "line") {
        auto base = Rat::parse(a.base);
        if (!base || !base->is_positive()) throw BadParameters("--base must be positive");
        Rat ratio = require_ratio();
        if (!ratio.is_positive()) throw BadParameters("--ratio must be positive");
        inst = Instance(OrbitFamilyInstance({OrbitSpec::line(*base, ratio)}));
    } else if (a.family == "ray_loop") {
        Rat ratio = require_ratio();
        if (!(Rat(1) < ratio)) throw BadParameters("ray_loop needs --ratio greater than 1");
        inst = Instance(OrbitFamilyInstance({OrbitSpec::ray_loop(ratio)}));
    } else {
        inst = Instance(construct_unbounded_normal_measure(LineSkeletonTemplate{}));
    }

    Json doc = render_instance(*inst, a.preview);
    std::string text = dump_document(doc);
    if (!a.out_path.empty()) {
        std::ofstream f(a.out_path);
        if (!f) throw ParseError(a.out_path, "cannot write file");
        f << text;
    } else {
        out << text;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"composition operators on discrete measure spaces, exactly"};
    app.name("discop");
    app.require_subcommand(1);

    ClassifyArgs ca;
    CLI::App* classify = app.add_subcommand("classify", "run every decision procedure");
    classify->add_option("input", ca.input, "instance document")->required();
    ca.window_opt = classify->add_option("--window", ca.window, "enumeration window");
    classify->add_option("--nmax", ca.nmax, "largest power for the multiplicative check");
    classify->add_option("--format", ca.format)->check(CLI::IsMember({"text", "machine"}));
    classify->add_option("--out", ca.out_path, "write the machine report here");

    DecomposeArgs da;
    CLI::App* decompose = app.add_subcommand("decompose", "backward-shift decomposition");
    decompose->add_option("input", da.input, "instance document")->required();
    da.window_opt = decompose->add_option("--window", da.window, "enumeration window");
    decompose->add_option("--format", da.format)->check(CLI::IsMember({"text", "machine"}));
    decompose->add_option("--out", da.out_path, "write the machine report here");
    decompose->add_flag("--orbits", da.orbits_only, "list the orbit partition instead");

    ApplyArgs aa;
    CLI::App* apply = app.add_subcommand("apply", "apply an operator to a vector");
    apply->add_option("input", aa.input, "instance document")->required();
    apply->add_option("--op", aa.op, "operator")
        ->required()
        ->check(CLI::IsMember({"c", "c_star", "cstar_c", "c_cstar", "cstar_c_c", "c_cstar_c"}));
    aa.basis_opt = apply->add_option("--basis", aa.basis, "basis vector label");
    aa.vector_opt =
        apply->add_option("--vector", aa.vector_json, "JSON object label -> 're,im'");
    aa.window_opt = apply->add_option("--window", aa.window, "enumeration window");
    apply->add_option("--format", aa.format)->check(CLI::IsMember({"text", "machine"}));
    apply->add_option("--out", aa.out_path, "write the machine report here");

    OracleArgs oa;
    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive matrix crosscheck");
    oracle->add_option("--max-points", oa.max_points, "largest point count (up to 5)");
    oracle->add_option("--weight-grid", oa.weight_grid, "comma-separated weights");
    oracle->add_option("--format", oa.format)->check(CLI::IsMember({"text", "machine"}));
    oracle->add_option("--out", oa.out_path, "write the machine report here");

    GenerateArgs ga;
    CLI::App* generate = app.add_subcommand("generate", "emit a named instance document");
    generate->add_option("--family", ga.family, "instance family")
        ->required()
        ->check(CLI::IsMember(
            {"identity", "cycle", "line", "ray_loop", "unbounded_normal", "collapse"}));
    generate->add_option("--n", ga.n, "point count for identity/collapse");
    generate->add_option("--weights", ga.weights, "cycle weights, comma separated");
    generate->add_option("--base", ga.base, "line base weight");
    ga.ratio_opt = generate->add_option("--ratio", ga.ratio, "line or ray_loop ratio");
    generate->add_option("--preview", ga.preview, "orbits shown for infinite families");
    generate->add_option("--out", ga.out_path, "write the document here");

    try {
        std::vector<const char*> argv;
        argv.push_back("discop");
        for (const std::string& s : args) argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (classify->parsed()) return run_classify(ca, out, err);
        if (decompose->parsed()) return run_decompose(da, out, err);
        if (apply->parsed()) return run_apply(aa, out, err);
        if (oracle->parsed()) return run_oracle(oa, out, err);
        return run_generate(ga, out);
    } catch (const NotNormal& e) {
        err << e.what() << "\n";
        return kExitNotNormal;
    } catch (const NotBijectiveOnSupport& e) {
        err << e.what() << "\n";
        return kExitNotBijective;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace discop
