#include "fillnorm/documents.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fillnorm/errors.hpp"

namespace fillnorm {
namespace documents {

namespace {

void check_fields(const Json& doc, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    if (!doc.is_object())
        throw ValidationError("document '" + where + "': expected an object");
    for (const auto& [key, _] : doc.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            throw ValidationError("document '" + where + "': unknown field '" + key + "'");
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != kVersion)
        throw ValidationError("document '" + where + "': missing or unsupported version");
}

const Json& require(const Json& doc, const std::string& where, const char* field) {
    if (!doc.contains(field))
        throw ValidationError("document '" + where + "': missing field '" + field + "'");
    return doc[field];
}

Word parse_in_table(const std::map<std::string, Letter>& table, const std::string& text,
                    const std::string& where) {
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto it = table.find(tok);
        if (it == table.end())
            throw ValidationError("document '" + where + "': unknown symbol '" + tok + "'");
        out.push_back(it->second);
    }
    return out;
}

std::vector<BoundaryTerm> parse_terms(const Json& arr, const GroupPresentation& g,
                                      const std::string& where) {
    std::vector<BoundaryTerm> out;
    if (!arr.is_array())
        throw ValidationError("document '" + where + "': boundary must be an array");
    for (const auto& t : arr) {
        for (const auto& [key, _] : t.items())
            if (key != "coef" && key != "element" && key != "target")
                throw ValidationError("document '" + where + "': unknown field '" + key +
                                      "' in a boundary term");
        if (!t.contains("coef") || !t.contains("target"))
            throw ValidationError("document '" + where +
                                  "': boundary term needs coef and target");
        BoundaryTerm term;
        term.coef = t["coef"].get<std::int64_t>();
        term.element = g.parse_word(t.value("element", ""));
        term.target = t["target"].get<std::string>();
        out.push_back(std::move(term));
    }
    return out;
}

SpecPtr resolve_ref(const Json& ref, const std::string& where) {
    if (ref.is_string()) return builtins::complex(ref.get<std::string>());
    return parse_complex(ref, where);
}

const char* status_name(FillStatus s) {
    switch (s) {
        case FillStatus::WindowExactUpperBound: return "exact-in-window";
        case FillStatus::Stabilized: return "stabilized";
        case FillStatus::InfeasibleInWindow: return "infeasible-in-window";
    }
    return "?";
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

GroupPtr parse_presentation(const Json& doc, const std::string& where) {
    check_fields(doc, where,
                 {"version", "name", "generators", "relators", "rules", "order",
                  "order_params"});
    std::vector<Generator> gens;
    for (const auto& g : require(doc, where, "generators")) {
        for (const auto& [key, _] : g.items())
            if (key != "name" && key != "inverse")
                throw ValidationError("document '" + where + "': unknown generator field '" +
                                      key + "'");
        gens.push_back({require(g, where, "name").get<std::string>(),
                        require(g, where, "inverse").get<std::string>()});
    }
    std::map<std::string, Letter> table;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        table[gens[i].name] = static_cast<Letter>(2 * i);
        table[gens[i].inverse_name] = static_cast<Letter>(2 * i + 1);
    }
    std::vector<Word> relators;
    for (const auto& r : doc.value("relators", Json::array()))
        relators.push_back(parse_in_table(table, r.get<std::string>(), where));
    std::vector<RewriteRule> rules;
    for (const auto& r : doc.value("rules", Json::array())) {
        for (const auto& [key, _] : r.items())
            if (key != "lhs" && key != "rhs")
                throw ValidationError("document '" + where + "': unknown rule field '" + key +
                                      "'");
        rules.push_back({parse_in_table(table, require(r, where, "lhs").get<std::string>(), where),
                         parse_in_table(table, r.value("rhs", ""), where)});
    }
    RuleOrder order = RuleOrder::Shortlex;
    std::string oname = doc.value("order", "shortlex");
    if (oname == "weighted")
        order = RuleOrder::Weighted;
    else if (oname == "collection")
        order = RuleOrder::Collection;
    else if (oname != "shortlex")
        throw ValidationError("document '" + where + "': unknown order '" + oname + "'");
    std::vector<std::int64_t> params;
    for (const auto& p : doc.value("order_params", Json::array()))
        params.push_back(p.get<std::int64_t>());
    return std::make_shared<GroupPresentation>(require(doc, where, "name").get<std::string>(),
                                               std::move(gens), std::move(relators),
                                               std::move(rules), order, std::move(params));
}

SpecPtr parse_complex(const Json& doc, const std::string& where) {
    check_fields(doc, where, {"version", "name", "group", "orbits"});
    const Json& gref = require(doc, where, "group");
    GroupPtr grp = gref.is_string() ? builtins::group(gref.get<std::string>())
                                    : parse_presentation(gref, where);
    std::vector<CellOrbit> orbits;
    for (const auto& o : require(doc, where, "orbits")) {
        for (const auto& [key, _] : o.items())
            if (key != "id" && key != "dim" && key != "boundary")
                throw ValidationError("document '" + where + "': unknown orbit field '" + key +
                                      "'");
        CellOrbit orbit;
        orbit.id = require(o, where, "id").get<std::string>();
        orbit.dim = require(o, where, "dim").get<int>();
        orbit.boundary = parse_terms(o.value("boundary", Json::array()), *grp, where);
        orbits.push_back(std::move(orbit));
    }
    return std::make_shared<ComplexSpec>(require(doc, where, "name").get<std::string>(), grp,
                                         std::move(orbits));
}

MapSpec parse_map(const Json& doc, const std::string& where) {
    check_fields(doc, where, {"version", "label", "source", "target", "word_map", "images"});
    MapSpec m;
    m.label = require(doc, where, "label").get<std::string>();
    m.source = resolve_ref(require(doc, where, "source"), where);
    m.target = resolve_ref(require(doc, where, "target"), where);
    for (const auto& [gen, word] : doc.value("word_map", Json::object()).items())
        m.word_map[gen] = word.get<std::string>();
    for (const auto& [orbit, terms] : doc.value("images", Json::object()).items())
        m.images[orbit] = parse_terms(terms, *m.target->group(), where);
    return m;
}

Json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("document '" + path + "': cannot open");
    Json doc = Json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw ValidationError("document '" + path + "': not valid JSON");
    return doc;
}

SpecPtr resolve_complex(const std::string& ref) {
    if (std::filesystem::exists(ref)) return parse_complex(load_document(ref), ref);
    return builtins::complex(ref);
}

std::string rational_string(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Json chain_literal_json(const std::vector<ChainLiteralTerm>& terms) {
    Json arr = Json::array();
    for (const auto& t : terms)
        arr.push_back({{"coef", t.coef}, {"orbit", t.orbit}, {"element", t.word}});
    return arr;
}

Json certificate_json(const FillingCertificate& cert) {
    Json j;
    j["status"] = status_name(cert.status);
    j["lp_bound"] = rational_string(cert.lp_bound);
    j["radius"] = cert.radius;
    j["node_count"] = cert.node_count;
    j["elapsed_ms"] = cert.elapsed_ms;
    if (cert.value) {
        j["value"] = *cert.value;
        j["witness"] = chain_literal_json(chain_to_literal(*cert.witness));
    } else {
        j["value"] = nullptr;
    }
    return j;
}

Json fv_table_json(const FVTable& table) {
    Json j;
    j["complex"] = table.complex_label;
    j["dim"] = table.dim;
    j["enum_radius"] = table.enum_radius;
    Json rows = Json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"k", r.k},
                        {"value", r.value},
                        {"status", r.status},
                        {"mode", r.mode == CycleEnumMode::Exhaustive ? "exhaustive" : "circuits"},
                        {"witness", chain_literal_json(r.witness)},
                        {"fill_radius", r.fill_radius},
                        {"elapsed_ms", r.elapsed_ms}});
    j["rows"] = rows;
    return j;
}

std::string fv_table_csv(const FVTable& table) {
    std::ostringstream out;
    out << "k,value,status,mode,witness_id,radius,ms\n";
    for (const auto& r : table.rows) {
        std::string lit = chain_literal_json(r.witness).dump();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a(lit)));
        out << r.k << ',' << r.value << ',' << r.status << ','
            << (r.mode == CycleEnumMode::Exhaustive ? "exhaustive" : "circuits") << ',' << buf
            << ',' << r.fill_radius << ',' << r.elapsed_ms << '\n';
    }
    return out.str();
}

Json operator_bound_json(const OperatorBound& b) {
    return {{"map", b.map_label},
            {"dim", b.dim},
            {"constant", b.constant},
            {"witness_orbit", b.witness_orbit}};
}

Json equivalence_json(const EquivalenceReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"cycle", chain_literal_json(s.cycle)},
                           {"norm_a", s.norm_a},
                           {"norm_b", s.norm_b}});
    return {{"complex_a", r.label_a},
            {"complex_b", r.label_b},
            {"bound_ab", operator_bound_json(r.bound_ab)},
            {"bound_ba", operator_bound_json(r.bound_ba)},
            {"samples", samples},
            {"skipped", r.skipped},
            {"all_within", r.all_within}};
}

Json dehn_json(const DehnReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"k", row.k},
                        {"fv", row.fv},
                        {"circuit_max", row.circuit_max},
                        {"holds", row.holds}});
    return {{"complex", r.complex_label}, {"rows", rows}, {"all_hold", r.all_hold}};
}

Json subgroup_json(const SubgroupCheckReport& r) {
    Json j;
    j["embedding"] = r.embedding_label;
    j["h_table"] = fv_table_json(r.h_table);
    j["g_table"] = fv_table_json(r.g_table);
    j["constant"] = r.fit.constant ? Json(*r.fit.constant) : Json(nullptr);
    j["skipped_k"] = r.fit.skipped_k;
    j["all_rows_exact"] = r.all_rows_exact;
    j["verdict"] = !r.fit.constant          ? "no constant up to cap"
                   : r.all_rows_exact       ? "verified"
                                            : "consistent with bound";
    if (r.retraction_bound) {
        j["retraction_bound"] = operator_bound_json(*r.retraction_bound);
        j["retraction_ok"] = r.retraction_ok;
    }
    return j;
}

Json confluence_json(const ConfluenceReport& r, const GroupPresentation& p) {
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        Json nfs = Json::array();
        for (const auto& nf : v.normal_forms) nfs.push_back(p.word_to_string(nf));
        violations.push_back({{"word", p.word_to_string(v.word)}, {"normal_forms", nfs}});
    }
    return {{"presentation", p.name()},
            {"length_bound", r.length_bound},
            {"words_checked", r.words_checked},
            {"violations", violations},
            {"confluent", r.confluent()}};
}

}  // namespace documents
}  // namespace fillnorm
