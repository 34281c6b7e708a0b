#include "discop/io.hpp"

#include <charconv>
#include <set>

namespace discop {

namespace {

bool parse_int(const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

const Json& field(const Json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

std::string str_field(const Json& j, const std::string& path, const char* key) {
    const Json& v = field(j, path, key);
    if (!v.is_string())
        throw ValidationError(path.empty() ? key : path + "." + key, "must be a string");
    return v.get<std::string>();
}

std::int64_t int_field(const Json& j, const std::string& path, const char* key) {
    const Json& v = field(j, path, key);
    if (!v.is_number_integer())
        throw ValidationError(path.empty() ? key : path + "." + key, "must be an integer");
    return v.get<std::int64_t>();
}

Rat rat_field(const Json& j, const std::string& path, const char* key) {
    std::string s = str_field(j, path, key);
    auto r = Rat::parse(s);
    if (!r)
        throw ValidationError(path.empty() ? key : path + "." + key,
                              "'" + s + "' is not a rational");
    return *r;
}

Json orbit_json(const OrbitSpec& o) {
    return o.visit([](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, OrbitSpec::FixedPoint>) {
            return Json{{"type", "fixed"}, {"weight", s.weight.str()}};
        } else if constexpr (std::is_same_v<T, OrbitSpec::Cycle>) {
            Json ws = Json::array();
            for (const Rat& w : s.weights) ws.push_back(w.str());
            return Json{{"type", "cycle"}, {"weights", ws}};
        } else if constexpr (std::is_same_v<T, OrbitSpec::Line>) {
            return Json{{"type", "line"}, {"base", s.base.str()}, {"ratio", s.ratio.str()}};
        } else {
            return Json{{"type", "ray_loop"}, {"ratio", s.ratio.str()}};
        }
    });
}

OrbitSpec orbit_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path, "must be an object");
    std::string type = str_field(j, path, "type");
    if (type == "fixed") {
        Rat w = rat_field(j, path, "weight");
        if (!w.is_positive()) throw ValidationError(path + ".weight", "must be positive");
        return OrbitSpec::fixed_point(std::move(w));
    }
    if (type == "cycle") {
        const Json& ws = field(j, path, "weights");
        if (!ws.is_array() || ws.empty())
            throw ValidationError(path + ".weights", "must be a non-empty array");
        std::vector<Rat> weights;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const std::string wp = path + ".weights[" + std::to_string(i) + "]";
            if (!ws[i].is_string()) throw ValidationError(wp, "must be a rational string");
            auto r = Rat::parse(ws[i].get<std::string>());
            if (!r || !r->is_positive()) throw ValidationError(wp, "must be a positive rational");
            weights.push_back(std::move(*r));
        }
        return OrbitSpec::cycle(std::move(weights));
    }
    if (type == "line") {
        Rat base = rat_field(j, path, "base");
        Rat ratio = rat_field(j, path, "ratio");
        if (!base.is_positive()) throw ValidationError(path + ".base", "must be positive");
        if (!ratio.is_positive()) throw ValidationError(path + ".ratio", "must be positive");
        return OrbitSpec::line(std::move(base), std::move(ratio));
    }
    if (type == "ray_loop") {
        Rat ratio = rat_field(j, path, "ratio");
        if (!(Rat(1) < ratio))
            throw ValidationError(path + ".ratio", "must be greater than 1");
        return OrbitSpec::ray_loop(std::move(ratio));
    }
    throw ValidationError(path + ".type", "unknown orbit type '" + type + "'");
}

Instance parse_finite(const Json& doc) {
    const Json& pts = field(doc, "", "points");
    if (!pts.is_array()) throw ValidationError("points", "must be an array");
    std::vector<Label> points;
    std::set<Label> pointset;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!pts[i].is_string())
            throw ValidationError("points[" + std::to_string(i) + "]", "must be a string");
        Label p = parse_label(pts[i].get<std::string>());
        if (!pointset.insert(p).second)
            throw ValidationError("points[" + std::to_string(i) + "]",
                                  "duplicate point '" + p.str() + "'");
        points.push_back(std::move(p));
    }
    const Json& mu_doc = field(doc, "", "mu");
    const Json& phi_doc = field(doc, "", "phi");
    if (!mu_doc.is_object()) throw ValidationError("mu", "must be an object");
    if (!phi_doc.is_object()) throw ValidationError("phi", "must be an object");
    for (const auto& [key, value] : mu_doc.items())
        if (!pointset.count(parse_label(key)))
            throw ValidationError("mu", "unknown point '" + key + "'");
    for (const auto& [key, value] : phi_doc.items()) {
        if (!pointset.count(parse_label(key)))
            throw ValidationError("phi", "unknown point '" + key + "'");
        if (!value.is_string() || !pointset.count(parse_label(value.get<std::string>())))
            throw ValidationError("phi", "unknown point '" +
                                             (value.is_string() ? value.get<std::string>()
                                                                : value.dump()) +
                                             "'");
    }
    std::map<Label, Rat> mu;
    std::map<Label, Label> phi;
    for (const Label& p : points) {
        auto mit = mu_doc.find(p.str());
        if (mit == mu_doc.end()) throw ValidationError("mu", "missing point '" + p.str() + "'");
        if (!mit->is_string()) throw ValidationError("mu." + p.str(), "must be a rational string");
        auto r = Rat::parse(mit->get<std::string>());
        if (!r || r->is_negative())
            throw ValidationError("mu." + p.str(), "must be a nonnegative rational");
        mu[p] = std::move(*r);
        auto pit = phi_doc.find(p.str());
        if (pit == phi_doc.end())
            throw ValidationError("phi", "missing point '" + p.str() + "'");
        phi[p] = parse_label(pit->get<std::string>());
    }
    return Instance(FiniteInstance(std::move(points), std::move(mu), std::move(phi)));
}

Instance parse_family(const Json& doc) {
    if (doc.contains("infinite_family")) {
        const Json& fam = doc["infinite_family"];
        std::string name = str_field(fam, "infinite_family", "name");
        if (name == "unbounded_normal")
            return Instance(construct_unbounded_normal_measure(LineSkeletonTemplate{}));
        throw ValidationError("infinite_family.name",
                              "'" + name + "' cannot be reconstructed from a document");
    }
    const Json& orbits = field(doc, "", "orbits");
    if (!orbits.is_array()) throw ValidationError("orbits", "must be an array");
    std::vector<OrbitSpec> specs;
    for (std::size_t i = 0; i < orbits.size(); ++i)
        specs.push_back(orbit_from_json(orbits[i], "orbits[" + std::to_string(i) + "]"));
    return Instance(OrbitFamilyInstance(std::move(specs)));
}

}  // namespace

Label parse_label(const std::string& s) {
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        std::int64_t orbit = 0, index = 0;
        if (parse_int(s.substr(0, colon), orbit) && parse_int(s.substr(colon + 1), index))
            return Label::at(orbit, index);
    }
    return Label::named(s);
}

Json render_instance(const Instance& inst, std::int64_t family_preview) {
    if (inst.is_lazy())
        throw ValidationError("kind", "black-box instances have no file form");
    Json doc;
    if (inst.is_finite()) {
        const FiniteInstance& fi = inst.finite();
        doc["kind"] = "finite";
        Json pts = Json::array();
        Json mu = Json::object();
        Json phi = Json::object();
        for (const Label& p : fi.points()) {
            pts.push_back(p.str());
            mu[p.str()] = fi.mu(p).str();
            phi[p.str()] = fi.phi(p).str();
        }
        doc["points"] = std::move(pts);
        doc["mu"] = std::move(mu);
        doc["phi"] = std::move(phi);
        return doc;
    }
    const OrbitFamilyInstance& fam = inst.family();
    doc["kind"] = "orbit_family";
    Json orbits = Json::array();
    if (fam.has_rule()) {
        doc["infinite_family"] = Json{{"name", fam.rule().name},
                                      {"note", fam.rule().note},
                                      {"h_unbounded", fam.rule().h_unbounded}};
        for (std::int64_t i = 0; i < family_preview; ++i)
            orbits.push_back(orbit_json(fam.orbit(i)));
    } else {
        for (const OrbitSpec& o : fam.orbit_list()) orbits.push_back(orbit_json(o));
    }
    doc["orbits"] = std::move(orbits);
    return doc;
}

Instance parse_instance(const Json& doc) {
    if (!doc.is_object()) throw ParseError("$", "document must be an object");
    std::string kind = str_field(doc, "", "kind");
    if (kind == "finite") return parse_finite(doc);
    if (kind == "orbit_family") return parse_family(doc);
    throw ValidationError("kind", "must be 'finite' or 'orbit_family'");
}

Instance parse_instance_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    return parse_instance(doc);
}

Json to_json(const Witness& w) {
    Json j;
    j["condition"] = w.condition;
    Json pts = Json::array();
    for (const Label& p : w.points) pts.push_back(p.str());
    j["points"] = std::move(pts);
    j["lhs"] = w.lhs;
    j["rhs"] = w.rhs;
    if (w.depth) j["depth"] = *w.depth;
    return j;
}

Witness witness_from_json(const Json& j) {
    Witness w;
    w.condition = str_field(j, "witness", "condition");
    const Json& pts = field(j, "witness", "points");
    if (!pts.is_array()) throw ValidationError("witness.points", "must be an array");
    for (const Json& p : pts) {
        if (!p.is_string()) throw ValidationError("witness.points", "entries must be strings");
        w.points.push_back(parse_label(p.get<std::string>()));
    }
    w.lhs = str_field(j, "witness", "lhs");
    w.rhs = str_field(j, "witness", "rhs");
    if (j.contains("depth")) w.depth = int_field(j, "witness", "depth");
    return w;
}

Json to_json(const Verdict& v) {
    Json j;
    switch (v.status()) {
        case Verdict::Status::Holds: j["status"] = "holds"; break;
        case Verdict::Status::Fails:
            j["status"] = "fails";
            j["witness"] = to_json(v.witness());
            break;
        case Verdict::Status::VerifiedOnWindow:
            j["status"] = "verified_on_window";
            j["window"] = v.window();
            break;
    }
    return j;
}

Verdict verdict_from_json(const Json& j) {
    std::string status = str_field(j, "verdict", "status");
    if (status == "holds") return Verdict::holds();
    if (status == "fails") return Verdict::fails(witness_from_json(field(j, "verdict", "witness")));
    if (status == "verified_on_window")
        return Verdict::on_window(int_field(j, "verdict", "window"));
    throw ValidationError("verdict.status", "unknown status '" + status + "'");
}

Json to_json(const SupH& s) {
    Json j;
    switch (s.kind) {
        case SupH::Kind::Exact: j["kind"] = "exact"; j["value"] = s.value->str(); break;
        case SupH::Kind::Unbounded: j["kind"] = "unbounded"; break;
        case SupH::Kind::Window: j["kind"] = "window"; j["value"] = s.value->str(); break;
    }
    return j;
}

SupH sup_h_from_json(const Json& j) {
    std::string kind = str_field(j, "sup_h", "kind");
    if (kind == "unbounded") return SupH::unbounded();
    Rat v = rat_field(j, "sup_h", "value");
    if (kind == "exact") return SupH::exact(std::move(v));
    if (kind == "window") return SupH::window(std::move(v));
    throw ValidationError("sup_h.kind", "unknown kind '" + kind + "'");
}

Json classification_document(const ClassificationReport& rep) {
    Json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "classification";
    doc["densely_defined"] = to_json(rep.densely_defined);
    doc["bounded"] = to_json(rep.bounded);
    doc["normal"] = to_json(rep.normal);
    doc["quasinormal"] = to_json(rep.quasinormal);
    doc["multiplicative"] = to_json(rep.multiplicative);
    doc["formally_normal_on_basis"] = to_json(rep.formally_normal_on_basis);
    doc["symmetric"] = to_json(rep.symmetric);
    doc["almost_surjective"] = to_json(rep.almost_surjective);
    doc["sup_h"] = to_json(rep.sup_h);
    doc["n_max"] = rep.n_max;
    Json iow = Json::array();
    for (const Label& x : rep.infinite_orbit_witnesses) iow.push_back(x.str());
    doc["infinite_orbit_witnesses"] = std::move(iow);
    doc["consistency_violations"] = rep.consistency_violations;
    const Verdict* all[] = {&rep.densely_defined,          &rep.bounded,
                            &rep.normal,                   &rep.quasinormal,
                            &rep.multiplicative,           &rep.formally_normal_on_basis,
                            &rep.symmetric,                &rep.almost_surjective};
    for (const Verdict* v : all)
        if (v->is_window()) { doc["window"] = v->window(); break; }
    return doc;
}

ClassificationReport classification_from_document(const Json& doc) {
    if (int_field(doc, "", "schema_version") != 1)
        throw ValidationError("schema_version", "unsupported version");
    if (str_field(doc, "", "kind") != "classification")
        throw ValidationError("kind", "not a classification document");
    ClassificationReport rep;
    rep.densely_defined = verdict_from_json(field(doc, "", "densely_defined"));
    rep.bounded = verdict_from_json(field(doc, "", "bounded"));
    rep.normal = verdict_from_json(field(doc, "", "normal"));
    rep.quasinormal = verdict_from_json(field(doc, "", "quasinormal"));
    rep.multiplicative = verdict_from_json(field(doc, "", "multiplicative"));
    rep.formally_normal_on_basis = verdict_from_json(field(doc, "", "formally_normal_on_basis"));
    rep.symmetric = verdict_from_json(field(doc, "", "symmetric"));
    rep.almost_surjective = verdict_from_json(field(doc, "", "almost_surjective"));
    rep.sup_h = sup_h_from_json(field(doc, "", "sup_h"));
    rep.n_max = int_field(doc, "", "n_max");
    for (const Json& p : field(doc, "", "infinite_orbit_witnesses"))
        rep.infinite_orbit_witnesses.push_back(parse_label(p.get<std::string>()));
    for (const Json& s : field(doc, "", "consistency_violations"))
        rep.consistency_violations.push_back(s.get<std::string>());
    return rep;
}

Json decomposition_document(const ShiftDecomposition& dec) {
    Json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "decomposition";
    Json blocks = Json::array();
    for (const ShiftBlock& b : dec.blocks) {
        Json jb;
        jb["anchor"] = b.anchor.str();
        if (const auto* c = std::get_if<ConstantGamma>(&b.gamma)) {
            jb["gamma"] =
                Json{{"kind", "constant"}, {"value", c->value.str()}, {"length", c->length}};
        } else {
            const auto& g = std::get<GeometricGamma>(b.gamma);
            jb["gamma"] =
                Json{{"kind", "geometric"}, {"base", g.base.str()}, {"ratio", g.ratio.str()}};
        }
        Json rel = Json::array();
        for (const auto& [y, idx] : b.relabeling) rel.push_back(Json::array({y.str(), idx}));
        jb["relabeling"] = std::move(rel);
        blocks.push_back(std::move(jb));
    }
    doc["blocks"] = std::move(blocks);
    if (dec.window) doc["window"] = *dec.window;
    return doc;
}

ShiftDecomposition decomposition_from_document(const Json& doc) {
    if (int_field(doc, "", "schema_version") != 1)
        throw ValidationError("schema_version", "unsupported version");
    if (str_field(doc, "", "kind") != "decomposition")
        throw ValidationError("kind", "not a decomposition document");
    ShiftDecomposition dec;
    const Json& blocks = field(doc, "", "blocks");
    if (!blocks.is_array()) throw ValidationError("blocks", "must be an array");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::string path = "blocks[" + std::to_string(i) + "]";
        const Json& jb = blocks[i];
        ShiftBlock b;
        b.anchor = parse_label(str_field(jb, path, "anchor"));
        const Json& jg = field(jb, path, "gamma");
        std::string gk = str_field(jg, path + ".gamma", "kind");
        if (gk == "constant") {
            b.gamma = ConstantGamma{rat_field(jg, path + ".gamma", "value"),
                                    int_field(jg, path + ".gamma", "length")};
        } else if (gk == "geometric") {
            b.gamma = GeometricGamma{rat_field(jg, path + ".gamma", "base"),
                                     rat_field(jg, path + ".gamma", "ratio")};
        } else {
            throw ValidationError(path + ".gamma.kind", "unknown kind '" + gk + "'");
        }
        const Json& rel = field(jb, path, "relabeling");
        if (!rel.is_array()) throw ValidationError(path + ".relabeling", "must be an array");
        for (const Json& pair : rel) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
                !pair[1].is_number_integer())
                throw ValidationError(path + ".relabeling", "entries must be [label, index]");
            b.relabeling.emplace_back(parse_label(pair[0].get<std::string>()),
                                      pair[1].get<std::int64_t>());
        }
        dec.blocks.push_back(std::move(b));
    }
    if (doc.contains("window")) dec.window = int_field(doc, "", "window");
    return dec;
}

Json crosscheck_document(const CrosscheckReport& rep) {
    Json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "crosscheck";
    doc["instances_enumerated"] = rep.instances_enumerated;
    Json ds = Json::array();
    for (const Disagreement& d : rep.disagreements)
        ds.push_back(Json{{"instance", d.instance},
                          {"property", d.property},
                          {"classifier", d.classifier},
                          {"oracle", d.oracle}});
    doc["disagreements"] = std::move(ds);
    return doc;
}

CrosscheckReport crosscheck_from_document(const Json& doc) {
    if (int_field(doc, "", "schema_version") != 1)
        throw ValidationError("schema_version", "unsupported version");
    if (str_field(doc, "", "kind") != "crosscheck")
        throw ValidationError("kind", "not a crosscheck document");
    CrosscheckReport rep;
    rep.instances_enumerated = int_field(doc, "", "instances_enumerated");
    const Json& ds = field(doc, "", "disagreements");
    if (!ds.is_array()) throw ValidationError("disagreements", "must be an array");
    for (const Json& d : ds)
        rep.disagreements.push_back({str_field(d, "disagreements", "instance"),
                                     str_field(d, "disagreements", "property"),
                                     str_field(d, "disagreements", "classifier"),
                                     str_field(d, "disagreements", "oracle")});
    return rep;
}

std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace discop
