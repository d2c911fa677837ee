#include "fillnorm/builtins.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "fillnorm/errors.hpp"

namespace fillnorm {
namespace builtins {

namespace {

Word parse_with(const std::vector<Generator>& gens, const std::string& text) {
    std::map<std::string, Letter> table;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        table[gens[i].name] = static_cast<Letter>(2 * i);
        table[gens[i].inverse_name] = static_cast<Letter>(2 * i + 1);
    }
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto it = table.find(tok);
        if (it == table.end())
            throw Error(Error::Category::Internal, "bad builtin rule symbol '" + tok + "'");
        out.push_back(it->second);
    }
    return out;
}

std::vector<RewriteRule> rules_from(
    const std::vector<Generator>& gens,
    const std::vector<std::pair<std::string, std::string>>& rs) {
    std::vector<RewriteRule> out;
    for (const auto& [l, r] : rs) out.push_back({parse_with(gens, l), parse_with(gens, r)});
    return out;
}

std::vector<Word> relators_from(const std::vector<Generator>& gens,
                                const std::vector<std::string>& rs) {
    std::vector<Word> out;
    for (const auto& r : rs) out.push_back(parse_with(gens, r));
    return out;
}

// free-reduction rules for every listed generator
std::vector<std::pair<std::string, std::string>> cancellations(
    const std::vector<Generator>& gens) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& g : gens) {
        out.push_back({g.name + " " + g.inverse_name, ""});
        out.push_back({g.inverse_name + " " + g.name, ""});
    }
    return out;
}

// rules moving every letter of `late` to the right of every letter of `early`
std::vector<std::pair<std::string, std::string>> commutations(const Generator& early,
                                                              const Generator& late) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& a : {late.name, late.inverse_name})
        for (const std::string& b : {early.name, early.inverse_name})
            out.push_back({a + " " + b, b + " " + a});
    return out;
}

GroupPtr make_abelian(const std::string& name, const std::vector<Generator>& gens,
                      const std::vector<std::string>& relators) {
    auto rs = cancellations(gens);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            for (auto& r : commutations(gens[i], gens[j])) rs.push_back(r);
    return std::make_shared<GroupPresentation>(name, gens, relators_from(gens, relators),
                                               rules_from(gens, rs));
}

GroupPtr make_z1() { return make_abelian("z1", {{"x", "X"}}, {}); }

GroupPtr make_z2() {
    return make_abelian("z2", {{"x", "X"}, {"y", "Y"}}, {"x y X Y"});
}

GroupPtr make_z3() {
    return make_abelian("z3", {{"x", "X"}, {"y", "Y"}, {"z", "Z"}},
                        {"x y X Y", "x z X Z", "y z Y Z"});
}

GroupPtr make_free2() {
    std::vector<Generator> gens{{"a", "A"}, {"b", "B"}};
    return std::make_shared<GroupPresentation>("free2", gens, std::vector<Word>{},
                                               rules_from(gens, cancellations(gens)));
}

GroupPtr make_heisenberg3() {
    std::vector<Generator> gens{{"x", "X"}, {"y", "Y"}, {"z", "Z"}};
    auto rs = cancellations(gens);
    // collect y past x, emitting the central correction z^{-eps*delta}
    rs.push_back({"y x", "x y Z"});
    rs.push_back({"y X", "X y z"});
    rs.push_back({"Y x", "x Y z"});
    rs.push_back({"Y X", "X Y Z"});
    // z is central: push it to the tail
    for (auto& r : commutations(gens[0], gens[2])) rs.push_back(r);
    for (auto& r : commutations(gens[1], gens[2])) rs.push_back(r);
    return std::make_shared<GroupPresentation>(
        "heisenberg3", gens,
        relators_from(gens, {"x y X Y Z", "x z X Z", "y z Y Z"}), rules_from(gens, rs),
        RuleOrder::Collection, std::vector<std::int64_t>{1, 2, 0});
}

GroupPtr make_z2_redundant() {
    std::vector<Generator> gens{{"x", "X"}, {"y", "Y"}, {"t", "T"}};
    auto rs = cancellations(gens);
    for (auto& r : commutations(gens[0], gens[1])) rs.push_back(r);
    rs.push_back({"t", "x y"});
    rs.push_back({"T", "Y X"});
    return std::make_shared<GroupPresentation>(
        "z2-redundant", gens, relators_from(gens, {"x y X Y", "t Y X"}),
        rules_from(gens, rs), RuleOrder::Weighted, std::vector<std::int64_t>{1, 1, 3});
}

GroupPtr make_gersten_group(int k) {
    std::vector<Generator> gens{{"x", "X"}};
    auto rs = cancellations(gens);
    rs.push_back({"x x", ""});
    rs.push_back({"X", "x"});
    std::string long_rel;
    for (int i = 0; i < 2 * k; ++i) long_rel += i ? " x" : "x";
    return std::make_shared<GroupPresentation>("gersten-group(" + std::to_string(k) + ")",
                                               gens, relators_from(gens, {"x x", long_rel}),
                                               rules_from(gens, rs));
}

GroupPtr make_trivial() {
    return std::make_shared<GroupPresentation>("trivial", std::vector<Generator>{},
                                               std::vector<Word>{},
                                               std::vector<RewriteRule>{});
}

// "name(k)" -> k, or nullopt when `text` is not of that shape
std::optional<int> parse_param(const std::string& text, const std::string& base) {
    if (text.size() < base.size() + 3 || text.compare(0, base.size(), base) != 0) return {};
    if (text[base.size()] != '(' || text.back() != ')') return {};
    std::string num = text.substr(base.size() + 1, text.size() - base.size() - 2);
    if (num.empty()) return {};
    for (char c : num)
        if (!std::isdigit(static_cast<unsigned char>(c))) return {};
    return std::stoi(num);
}

SpecPtr rename(const SpecPtr& spec, const std::string& name) {
    return std::make_shared<ComplexSpec>(name, spec->group(), spec->orbits());
}

SpecPtr make_z3_cubes() {
    GroupPtr g = make_z3();
    auto w = [&](const std::string& s) { return g->parse_word(s); };
    std::vector<CellOrbit> orbits;
    orbits.push_back({"v", 0, {}});
    orbits.push_back({"ex", 1, {{1, w("x"), "v"}, {-1, {}, "v"}}});
    orbits.push_back({"ey", 1, {{1, w("y"), "v"}, {-1, {}, "v"}}});
    orbits.push_back({"ez", 1, {{1, w("z"), "v"}, {-1, {}, "v"}}});
    orbits.push_back({"sxy", 2,
                      {{1, {}, "ex"}, {1, w("x"), "ey"}, {-1, w("y"), "ex"}, {-1, {}, "ey"}}});
    orbits.push_back({"sxz", 2,
                      {{1, {}, "ex"}, {1, w("x"), "ez"}, {-1, w("z"), "ex"}, {-1, {}, "ez"}}});
    orbits.push_back({"syz", 2,
                      {{1, {}, "ey"}, {1, w("y"), "ez"}, {-1, w("z"), "ey"}, {-1, {}, "ez"}}});
    orbits.push_back({"cube", 3,
                      {{1, w("x"), "syz"},
                       {-1, {}, "syz"},
                       {-1, w("y"), "sxz"},
                       {1, {}, "sxz"},
                       {1, w("z"), "sxy"},
                       {-1, {}, "sxy"}}});
    return std::make_shared<ComplexSpec>("z3-cubes", g, std::move(orbits));
}

SpecPtr make_gersten_complex(int k) {
    if (k < 2) throw ValidationError("gersten(k) requires k >= 2");
    GroupPtr g = make_trivial();
    std::vector<CellOrbit> orbits;
    orbits.push_back({"v", 0, {}});
    // a single loop edge: both endpoint terms coincide and cancel
    orbits.push_back({"e", 1, {}});
    orbits.push_back({"d2", 2, {{2, {}, "e"}}});
    orbits.push_back({"d2k", 2, {{2 * k, {}, "e"}}});
    return std::make_shared<ComplexSpec>("gersten(" + std::to_string(k) + ")", g,
                                         std::move(orbits));
}

MapSpec doubling_map(const SpecPtr& spec) {
    MapSpec m;
    m.label = spec->name() + "-doubling";
    m.source = spec;
    m.target = spec;
    for (const auto& o : spec->orbits())
        m.images[o.id] = {{o.dim == 0 ? 1 : 2, Word{}, o.id}};
    return m;
}

}  // namespace

GroupPtr group(const std::string& name) {
    if (name == "z1") return make_z1();
    if (name == "z2") return make_z2();
    if (name == "z3") return make_z3();
    if (name == "free2") return make_free2();
    if (name == "heisenberg3") return make_heisenberg3();
    if (name == "z2-redundant") return make_z2_redundant();
    if (name == "trivial") return make_trivial();
    if (auto k = parse_param(name, "gersten-group")) {
        if (*k < 2) throw ValidationError("gersten-group(k) requires k >= 2");
        return make_gersten_group(*k);
    }
    throw ValidationError("unknown built-in presentation '" + name + "'");
}

SpecPtr complex(const std::string& name) {
    if (name == "z2-torus") return rename(build_presentation_complex(make_z2()), "z2-torus");
    if (name == "z3-cubes") return make_z3_cubes();
    if (name == "free2") return rename(build_presentation_complex(make_free2()), "free2");
    if (name == "heisenberg3")
        return rename(build_presentation_complex(make_heisenberg3()), "heisenberg3");
    if (name == "z2-redundant")
        return rename(build_presentation_complex(make_z2_redundant()), "z2-redundant");
    if (auto k = parse_param(name, "gersten")) return make_gersten_complex(*k);
    throw ValidationError("unknown built-in complex '" + name + "'");
}

MapPair map_pair(const std::string& name) {
    if (name == "z2-std-red") {
        SpecPtr std_spec = complex("z2-torus");
        SpecPtr red_spec = complex("z2-redundant");
        MapSpec fwd;
        fwd.label = "z2-std-to-red";
        fwd.source = std_spec;
        fwd.target = red_spec;
        fwd.word_map = {{"x", "x"}, {"y", "y"}};
        fwd.images = {{"v", {{1, {}, "v"}}},
                      {"e_x", {{1, {}, "e_x"}}},
                      {"e_y", {{1, {}, "e_y"}}},
                      {"r1", {{1, {}, "r1"}}}};
        MapSpec bwd;
        bwd.label = "z2-red-to-std";
        bwd.source = red_spec;
        bwd.target = std_spec;
        bwd.word_map = {{"x", "x"}, {"y", "y"}, {"t", "x y"}};
        const auto& g = *std_spec->group();
        bwd.images = {{"v", {{1, {}, "v"}}},
                      {"e_x", {{1, {}, "e_x"}}},
                      {"e_y", {{1, {}, "e_y"}}},
                      {"e_t", {{1, {}, "e_x"}, {1, g.parse_word("x"), "e_y"}}},
                      {"r1", {{1, {}, "r1"}}}};
        return {std::move(fwd), std::move(bwd)};
    }
    if (name.size() > 9 && name.ends_with("-doubling")) {
        std::string base = name.substr(0, name.size() - 9);
        if (auto k = parse_param(base, "gersten")) {
            SpecPtr spec = make_gersten_complex(*k);
            MapSpec d = doubling_map(spec);
            return {d, d};
        }
    }
    if (name.rfind("identity:", 0) == 0) {
        SpecPtr spec = complex(name.substr(9));
        MapSpec id = make_identity_map(spec);
        return {id, id};
    }
    throw ValidationError("unknown built-in map pair '" + name + "'");
}

Embedding embedding(const std::string& name) {
    if (name == "z2-into-z3") {
        SpecPtr h = complex("z2-torus");
        SpecPtr g = complex("z3-cubes");
        MapSpec emb;
        emb.label = "z2-into-z3";
        emb.source = h;
        emb.target = g;
        emb.word_map = {{"x", "x"}, {"y", "y"}};
        emb.images = {{"v", {{1, {}, "v"}}},
                      {"e_x", {{1, {}, "ex"}}},
                      {"e_y", {{1, {}, "ey"}}},
                      {"r1", {{1, {}, "sxy"}}}};
        MapSpec ret;
        ret.label = "z3-onto-z2";
        ret.source = g;
        ret.target = h;
        ret.word_map = {{"x", "x"}, {"y", "y"}, {"z", ""}};
        ret.images = {{"v", {{1, {}, "v"}}},
                      {"ex", {{1, {}, "e_x"}}},
                      {"ey", {{1, {}, "e_y"}}},
                      {"sxy", {{1, {}, "r1"}}}};
        return {std::move(emb), std::move(ret)};
    }
    if (name == "free2-into-z2") {
        SpecPtr h = complex("free2");
        SpecPtr g = complex("z2-torus");
        MapSpec emb;
        emb.label = "free2-into-z2";
        emb.source = h;
        emb.target = g;
        emb.word_map = {{"a", "x"}, {"b", "y"}};
        emb.images = {{"v", {{1, {}, "v"}}},
                      {"e_a", {{1, {}, "e_x"}}},
                      {"e_b", {{1, {}, "e_y"}}}};
        return {std::move(emb), std::nullopt};
    }
    throw ValidationError("unknown built-in embedding '" + name + "'");
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"z1", "presentation", -1, "infinite cyclic group, shortlex rules"},
        {"z2", "presentation", -1, "free abelian rank 2, shortlex rules"},
        {"z3", "presentation", -1, "free abelian rank 3, shortlex rules"},
        {"free2", "presentation", -1, "free group of rank 2"},
        {"heisenberg3", "presentation", -1,
         "integer Heisenberg group, collection rules, normal form x^a y^b z^c"},
        {"z2-redundant", "presentation", -1,
         "rank-2 free abelian with redundant generator t = xy, weighted rules"},
        {"gersten-group(k)", "presentation", -1,
         "one generator with relators x^2 and x^2k; requires k >= 2"},
        {"trivial", "presentation", -1, "trivial group, no generators"},
        {"z2-torus", "complex", 2, "presentation 2-complex of z2"},
        {"z3-cubes", "complex", 3, "cubical complex of z3 with squares and a 3-cube"},
        {"free2", "complex", 1, "presentation complex of free2 (no 2-cells)"},
        {"heisenberg3", "complex", 2, "presentation 2-complex of heisenberg3"},
        {"z2-redundant", "complex", 2, "presentation 2-complex of the redundant z2"},
        {"gersten(k)", "complex", 2,
         "one loop edge with 2-cells of boundary degree 2 and 2k; requires k >= 2"},
        {"z2-std-red", "map", -1, "comparison pair z2-torus <-> z2-redundant"},
        {"gersten(k)-doubling", "map", -1, "coefficient-doubling self-map of gersten(k)"},
        {"identity:<complex>", "map", -1, "identity pair on any built-in complex"},
        {"z2-into-z3", "map", -1, "coordinate-plane embedding with retraction"},
        {"free2-into-z2", "map", -1, "1-skeleton embedding, no retraction"},
    };
    return entries;
}

}  // namespace builtins
}  // namespace fillnorm
