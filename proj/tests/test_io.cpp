#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "discop/cli.hpp"
#include "discop/errors.hpp"
#include "discop/io.hpp"
#include "fixtures.hpp"

using namespace discop;
using fixtures::L;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("label strings round trip through the parser") {
    CHECK(parse_label("3:-2") == Label::at(3, -2));
    CHECK(parse_label("0:0") == Label::at(0, 0));
    CHECK(parse_label("a:b") == L("a:b"));
    CHECK(parse_label("x1") == L("x1"));
    CHECK(parse_label(Label::at(-4, 7).str()) == Label::at(-4, 7));
}

TEST_CASE("parsing a one-point finite instance document") {
    Json doc = Json::parse(R"({
        "kind": "finite",
        "points": ["p"],
        "mu": {"p": "1"},
        "phi": {"p": "p"}
    })");
    Instance inst = parse_instance(doc);
    REQUIRE(inst.is_finite());
    CHECK(inst.weight(L("p")) == Rat(1));
    CHECK(inst.image(L("p")) == L("p"));
    CHECK(render_instance(inst) == doc);
}

TEST_CASE("parsing a structured family document") {
    Json doc = Json::parse(R"({
        "kind": "orbit_family",
        "orbits": [
            {"type": "ray_loop", "ratio": "2"},
            {"type": "line", "base": "1", "ratio": "1/2"}
        ]
    })");
    Instance inst = parse_instance(doc);
    REQUIRE(inst.is_family());
    CHECK(inst.weight(Label::at(0, 3)) == Rat(4));
    CHECK(inst.weight(Label::at(1, -1)) == Rat(2));
    CHECK(render_instance(inst) == doc);
}

TEST_CASE("unknown points in the map are named validation errors") {
    Json doc = Json::parse(R"({
        "kind": "finite",
        "points": ["a", "b"],
        "mu": {"a": "1", "b": "1"},
        "phi": {"a": "b", "b": "z"}
    })");
    try {
        parse_instance(doc);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.field == "phi");
        CHECK(std::string(e.what()).find("z") != std::string::npos);
    }
}

TEST_CASE("a loop ratio of one is rejected where it is declared") {
    Json doc = Json::parse(R"({
        "kind": "orbit_family",
        "orbits": [{"type": "ray_loop", "ratio": "1"}]
    })");
    CHECK_THROWS_AS(parse_instance(doc), ValidationError);
}

TEST_CASE("malformed text is a parse error with a byte position") {
    try {
        parse_instance_text("{\"kind\": ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("render and parse invert each other across the enumeration") {
    for (const FiniteInstance& fi : enumerate_instances(3, {Rat(0), Rat(1), Rat(2)})) {
        Instance back = parse_instance(render_instance(Instance{fi}));
        REQUIRE(back.is_finite());
        CHECK(back.finite() == fi);
    }
}

TEST_CASE("verdict and witness serialization round trips") {
    Witness w{"multiplicative_power", {L("c")}, "9", "3", 2};
    CHECK(witness_from_json(to_json(w)) == w);
    Witness no_depth{"onto_support", {L("a"), L("b")}, "0", "1", std::nullopt};
    CHECK(witness_from_json(to_json(no_depth)) == no_depth);

    CHECK(verdict_from_json(to_json(Verdict::holds())) == Verdict::holds());
    CHECK(verdict_from_json(to_json(Verdict::fails(w))) == Verdict::fails(w));
    CHECK(verdict_from_json(to_json(Verdict::on_window(6))) == Verdict::on_window(6));

    for (const SupH& s : {SupH::exact(Rat(2)), SupH::unbounded(), SupH::window(Rat(1, 3))})
        CHECK(sup_h_from_json(to_json(s)) == s);
}

TEST_CASE("classification documents round trip and name the window") {
    Instance lazy = fixtures::lazy_line_half();
    ClassificationReport rep = full_report(lazy, Window{8});
    Json doc = classification_document(rep);
    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("kind") == "classification");
    CHECK(doc.at("window") == 8);
    CHECK(classification_from_document(doc) == rep);

    ClassificationReport exact = full_report(Instance{fixtures::collapse3()});
    Json exact_doc = classification_document(exact);
    CHECK_FALSE(exact_doc.contains("window"));
    CHECK(classification_from_document(exact_doc) == exact);
}

TEST_CASE("decomposition documents round trip") {
    Instance inst{fixtures::swap_ab()};
    ShiftDecomposition dec = shift_decomposition(inst);
    CHECK(decomposition_from_document(decomposition_document(dec)) == dec);

    ShiftDecomposition windowed = shift_decomposition(fixtures::lazy_line_half(), Window{5});
    REQUIRE(windowed.window == 5);
    CHECK(decomposition_from_document(decomposition_document(windowed)) == windowed);
}

TEST_CASE("crosscheck documents round trip") {
    CrosscheckReport rep = exhaustive_crosscheck(2, {Rat(0), Rat(1)});
    Json doc = crosscheck_document(rep);
    CHECK(crosscheck_from_document(doc) == rep);
}

TEST_CASE("document bytes are deterministic") {
    Instance inst = fixtures::ray_loop(2);
    std::string a = dump_document(classification_document(full_report(inst)));
    std::string b = dump_document(classification_document(full_report(inst)));
    CHECK(a == b);
    CHECK(a.back() == '\n');
}

TEST_CASE("the unbounded family file form carries its construction marker") {
    OrbitFamilyInstance fam = construct_unbounded_normal_measure(LineSkeletonTemplate{});
    Json doc = render_instance(Instance{fam});
    REQUIRE(doc.contains("infinite_family"));
    CHECK(doc.at("infinite_family").at("name") == "unbounded_normal");
    Instance back = parse_instance(doc);
    REQUIRE(back.is_family());
    CHECK(back.family() == fam);
}

TEST_CASE("cli: classify a family file and read the machine report") {
    auto path = write_temp("discop_rayloop.json", dump_document(render_instance(
                                                      fixtures::ray_loop(2))));
    CliResult r = cli({"classify", path.string(), "--format", "machine"});
    REQUIRE(r.code == kExitOk);
    Json doc = Json::parse(r.out);
    CHECK(doc.at("kind") == "classification");
    CHECK(doc.at("quasinormal").at("status") == "holds");
    CHECK(doc.at("normal").at("status") == "fails");
    CHECK(doc.at("sup_h").at("value") == "2");
}

TEST_CASE("cli: identical invocations produce identical bytes") {
    auto path = write_temp("discop_line.json",
                           dump_document(render_instance(fixtures::line(1, 1, 1, 2))));
    CliResult first = cli({"classify", path.string(), "--format", "machine"});
    CliResult second = cli({"classify", path.string(), "--format", "machine"});
    REQUIRE(first.code == kExitOk);
    CHECK(first.out == second.out);
}

TEST_CASE("cli: malformed input exits with the usage code") {
    auto path = write_temp("discop_broken.json", "{\"kind\": \"finite\"");
    CliResult r = cli({"classify", path.string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());

    CliResult missing = cli({"classify", "/nonexistent/nowhere.json"});
    CHECK(missing.code == kExitUsage);
}

TEST_CASE("cli: decomposing a non-normal instance reports the dedicated code") {
    auto path = write_temp("discop_collapse.json",
                           dump_document(render_instance(Instance{fixtures::collapse3()})));
    CliResult r = cli({"decompose", path.string()});
    CHECK(r.code == kExitNotNormal);

    CliResult orbits_run = cli({"decompose", path.string(), "--orbits"});
    CHECK(orbits_run.code == kExitNotBijective);
}

TEST_CASE("cli: orbit listing for a support bijection") {
    auto path = write_temp("discop_swap.json",
                           dump_document(render_instance(Instance{fixtures::swap_ab()})));
    CliResult r = cli({"decompose", path.string(), "--orbits"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("cycle") != std::string::npos);
    CHECK(r.out.find("fixed_point") != std::string::npos);
}

TEST_CASE("cli: the oracle subcommand crosschecks a small universe") {
    CliResult r = cli({"oracle", "--max-points", "2", "--weight-grid", "0,1", "--format", "machine"});
    REQUIRE(r.code == kExitOk);
    Json doc = Json::parse(r.out);
    CHECK(doc.at("kind") == "crosscheck");
    CHECK(doc.at("disagreements").empty());
}

TEST_CASE("cli: generate writes parseable instance files") {
    CliResult bad = cli({"generate", "--family", "ray_loop", "--ratio", "1"});
    CHECK(bad.code == kExitUsage);

    CliResult cyc = cli({"generate", "--family", "cycle", "--weights", "1,2,4"});
    REQUIRE(cyc.code == kExitOk);
    Instance inst = parse_instance_text(cyc.out);
    REQUIRE(inst.is_finite());
    CHECK(inst.finite().points().size() == 3);

    CliResult ub = cli({"generate", "--family", "unbounded_normal"});
    REQUIRE(ub.code == kExitOk);
    Instance fam = parse_instance_text(ub.out);
    CHECK(classify_normal(fam).is_holds());
}

TEST_CASE("cli: apply evaluates the operator on a basis vector") {
    auto path = write_temp("discop_swap2.json",
                           dump_document(render_instance(Instance{fixtures::swap_ab()})));
    CliResult r = cli({"apply", path.string(), "--op", "c", "--basis", "a", "--format", "machine"});
    REQUIRE(r.code == kExitOk);
    Json doc = Json::parse(r.out);
    CHECK(doc.at("kind") == "apply");
    CHECK(doc.at("result").at("b") == "1,0");
}

TEST_CASE("cli: the window flag and the environment default are both honored") {
    auto path = write_temp("discop_line2.json",
                           dump_document(render_instance(fixtures::line(1, 1, 1, 2))));
    CliResult seven = cli({"decompose", path.string(), "--format", "machine", "--window", "7"});
    REQUIRE(seven.code == kExitOk);
    Json doc = Json::parse(seven.out);
    CHECK(doc.at("blocks").at(0).at("relabeling").size() == 7);

    setenv("DISCOP_DEFAULT_WINDOW", "5", 1);
    CliResult five = cli({"decompose", path.string(), "--format", "machine"});
    unsetenv("DISCOP_DEFAULT_WINDOW");
    REQUIRE(five.code == kExitOk);
    Json env_doc = Json::parse(five.out);
    CHECK(env_doc.at("blocks").at(0).at("relabeling").size() == 5);
}
