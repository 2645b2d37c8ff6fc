#include "orbitgf/spec_io.hpp"

#include <unistd.h>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "orbitgf/error.hpp"

namespace orbitgf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SpecParse, path + ": " + what);
}

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void require_keys(const json& j, const std::string& path, std::set<std::string> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  allowed.insert("kind");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(at(path, key), "unknown field");
  }
}

const json& field(const json& j, const std::string& path, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) fail(at(path, key), "missing field");
  return *it;
}

std::size_t as_uint(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

long as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::size_t uint_field(const json& j, const std::string& path, const std::string& key) {
  return as_uint(field(j, path, key), at(path, key));
}

// A word is a list of [generator, exponent] pairs, or {"exponents": [...]}
// giving an exponent for every generator. Letters must lie after `after`.
PcWord parse_word(const json& j, const std::string& path, std::size_t gens, long after) {
  PcWord word;
  if (j.is_object()) {
    require_keys(j, path, {"exponents"});
    const std::string p = at(path, "exponents");
    const auto& e = as_array(field(j, path, "exponents"), path);
    if (e.size() != gens) {
      fail(p, "expected " + std::to_string(gens) + " exponents, got " + std::to_string(e.size()));
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      const long x = as_int(e[i], at(p, i));
      if (x == 0) continue;
      if (static_cast<long>(i) <= after) {
        fail(at(p, i), "generator " + std::to_string(i) + " is not allowed in this relation");
      }
      word.emplace_back(i, x);
    }
    return word;
  }
  as_array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected a [generator, exponent] pair");
    const std::size_t g = as_uint(j[i][0], at(p, 0));
    if (g >= gens) fail(at(p, 0), "generator " + std::to_string(g) + " out of range");
    if (static_cast<long>(g) <= after) {
      fail(at(p, 0), "generator " + std::to_string(g) + " is not allowed in this relation");
    }
    word.emplace_back(g, as_int(j[i][1], at(p, 1)));
  }
  return word;
}

json word_to_json(const PcWord& w) {
  json out = json::array();
  for (const auto& [g, e] : w) out.push_back(json::array({g, e}));
  return out;
}

PcPresentation parse_pc(const json& j, const std::string& path) {
  require_keys(j, path, {"relative_orders", "generators", "convention", "powers", "conjugates"});
  PcPresentation pc;
  const std::string ro = at(path, "relative_orders");
  const auto& orders = as_array(field(j, path, "relative_orders"), ro);
  if (orders.empty()) fail(ro, "needs at least one generator");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const std::size_t r = as_uint(orders[i], at(ro, i));
    if (r < 2) fail(at(ro, i), "relative order must be at least 2");
    pc.relative_orders.push_back(r);
  }
  const std::size_t n = pc.size();
  if (j.contains("generators")) {
    const std::string gp = at(path, "generators");
    const auto& names = as_array(j["generators"], gp);
    if (names.size() != n) fail(gp, "expected " + std::to_string(n) + " names");
    for (std::size_t i = 0; i < n; ++i) pc.generator_names.push_back(as_string(names[i], at(gp, i)));
  }
  if (j.contains("convention")) {
    const auto c = as_string(j["convention"], at(path, "convention"));
    if (c == "left") {
      pc.convention = PcConvention::Left;
    } else if (c != "right") {
      fail(at(path, "convention"), "expected \"left\" or \"right\"");
    }
  }
  if (j.contains("powers")) {
    const std::string pp = at(path, "powers");
    const auto& list = as_array(j["powers"], pp);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = at(pp, i);
      require_keys(list[i], p, {"gen", "word"});
      const std::size_t g = uint_field(list[i], p, "gen");
      if (g >= n) fail(at(p, "gen"), "generator out of range");
      pc.powers.push_back(
          {g, parse_word(field(list[i], p, "word"), at(p, "word"), n, static_cast<long>(g))});
    }
  }
  if (j.contains("conjugates")) {
    const std::string cp = at(path, "conjugates");
    const auto& list = as_array(j["conjugates"], cp);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = at(cp, i);
      require_keys(list[i], p, {"gen", "by", "word"});
      const std::size_t g = uint_field(list[i], p, "gen");
      const std::size_t by = uint_field(list[i], p, "by");
      if (g >= n) fail(at(p, "gen"), "generator out of range");
      if (by >= g) fail(at(p, "by"), "must be smaller than gen");
      pc.conjugates.push_back(
          {g, by, parse_word(field(list[i], p, "word"), at(p, "word"), n, static_cast<long>(by))});
    }
  }
  return pc;
}

json pc_to_json(const PcPresentation& pc) {
  json j;
  j["kind"] = "pc";
  j["relative_orders"] = pc.relative_orders;
  if (!pc.generator_names.empty()) j["generators"] = pc.generator_names;
  if (pc.convention == PcConvention::Left) j["convention"] = "left";
  if (!pc.powers.empty()) {
    json list = json::array();
    for (const auto& p : pc.powers) list.push_back({{"gen", p.gen}, {"word", word_to_json(p.word)}});
    j["powers"] = list;
  }
  if (!pc.conjugates.empty()) {
    json list = json::array();
    for (const auto& c : pc.conjugates) {
      list.push_back({{"gen", c.gen}, {"by", c.by}, {"word", word_to_json(c.word)}});
    }
    j["conjugates"] = list;
  }
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::size_t parse_count(const std::string& text, const std::string& name) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::SpecParse, "bad number '" + text + "' in '" + name + "'");
  }
}

GroupSpec embedded(const std::string& file) {
  const auto& files = embedded_spec_files();
  auto it = files.find(file);
  if (it == files.end()) throw Error(ErrorCode::SpecParse, "missing embedded spec " + file);
  try {
    return spec_from_json(json::parse(it->second), file + ":$");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SpecParse, file + ": " + e.what());
  }
}

GroupSpec product(std::vector<GroupSpec> factors) {
  return GroupSpec{spec::DirectProduct{std::move(factors)}};
}

GroupSpec cyc(std::size_t n) { return GroupSpec{spec::Cyclic{n}}; }

using Builtin = std::pair<std::string, std::function<GroupSpec()>>;

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> list = [] {
    std::vector<Builtin> b;
    for (std::size_t n = 1; n <= 12; ++n) {
      b.emplace_back("C" + std::to_string(n), [n] { return cyc(n); });
    }
    b.emplace_back("C2xC2", [] { return product({cyc(2), cyc(2)}); });
    b.emplace_back("S3", [] {
      return GroupSpec{spec::Permutations{3, {{1, 0, 2}, {1, 2, 0}}}};
    });
    b.emplace_back("A4", [] {
      return GroupSpec{spec::Permutations{4, {{1, 2, 0, 3}, {1, 0, 3, 2}}}};
    });
    b.emplace_back("D8", [] { return GroupSpec{spec::Dihedral{8}}; });
    b.emplace_back("Q8", [] { return GroupSpec{spec::Quaternion{8}}; });
    b.emplace_back("D10", [] { return GroupSpec{spec::Dihedral{10}}; });
    b.emplace_back("D12", [] { return GroupSpec{spec::Dihedral{12}}; });
    b.emplace_back("D16", [] { return GroupSpec{spec::Dihedral{16}}; });
    b.emplace_back("M16", [] {
      PcPresentation pc;
      pc.relative_orders = {2, 8};
      pc.generator_names = {"b", "a"};
      pc.conjugates = {{1, 0, {{1, 5}}}};
      return GroupSpec{spec::Pc{pc}};
    });
    b.emplace_back("SD16", [] { return GroupSpec{spec::Semidihedral{16}}; });
    b.emplace_back("Q16", [] { return GroupSpec{spec::Quaternion{16}}; });
    b.emplace_back("G18_1", [] { return GroupSpec{spec::Dihedral{18}}; });
    b.emplace_back("G18_4", [] { return embedded("G18_4.json"); });
    b.emplace_back("Heis27", [] {
      return GroupSpec{spec::Extraspecial{3, 27, ExtraspecialType::OddExponentP}};
    });
    for (const char* base : {"Q8", "S3", "Heis27"}) {
      for (std::size_t k : {2, 3, 4}) {
        const std::string name = std::string(base) + "xC" + std::to_string(k);
        const std::string factor = base;
        b.emplace_back(name, [factor, k] { return product({named_spec(factor), cyc(k)}); });
      }
    }
    b.emplace_back("D8xD8", [] { return product({named_spec("D8"), named_spec("D8")}); });
    b.emplace_back("G54_6", [] { return embedded("G54_6.json"); });
    b.emplace_back("G54_8", [] { return embedded("G54_8.json"); });
    b.emplace_back("frob72", [] { return embedded("frob72.json"); });
    b.emplace_back("frob1029", [] { return embedded("frob1029.json"); });
    for (int f = 0; f <= static_cast<int>(StemFamily::Gamma8); ++f) {
      const auto family = static_cast<StemFamily>(f);
      const unsigned p = is_gamma(family) ? 2 : 3;
      const std::string name = is_gamma(family) ? to_string(family) : to_string(family) + "_p3";
      b.emplace_back(name, [family, p] { return GroupSpec{spec::Stem{family, p}}; });
    }
    b.emplace_back("Extraspecial243", [] {
      return GroupSpec{spec::Extraspecial{3, 243, ExtraspecialType::OddExponentP}};
    });
    b.emplace_back("G128_1758", [] { return embedded("G128_1758.json"); });
    b.emplace_back("G128_2022", [] { return embedded("G128_2022.json"); });
    b.emplace_back("G128_2022_completed", [] { return embedded("G128_2022_completed.json"); });
    return b;
  }();
  return list;
}

}  // namespace

GroupSpec spec_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return named_spec(j.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  if (!j.is_object()) fail(path, "expected a group spec object or a name");
  const std::string kind = as_string(field(j, path, "kind"), at(path, "kind"));
  if (kind == "trivial") {
    require_keys(j, path, {});
    return GroupSpec{spec::Trivial{}};
  }
  if (kind == "cyclic") {
    require_keys(j, path, {"n"});
    const auto n = uint_field(j, path, "n");
    if (n < 1) fail(at(path, "n"), "must be at least 1");
    return GroupSpec{spec::Cyclic{n}};
  }
  if (kind == "direct_product") {
    require_keys(j, path, {"factors"});
    const std::string fp = at(path, "factors");
    const auto& list = as_array(field(j, path, "factors"), fp);
    spec::DirectProduct d;
    for (std::size_t i = 0; i < list.size(); ++i) d.factors.push_back(spec_from_json(list[i], at(fp, i)));
    return GroupSpec{std::move(d)};
  }
  if (kind == "dihedral" || kind == "quaternion" || kind == "semidihedral") {
    require_keys(j, path, {"order"});
    const auto order = uint_field(j, path, "order");
    if (kind == "dihedral") return GroupSpec{spec::Dihedral{order}};
    if (kind == "quaternion") return GroupSpec{spec::Quaternion{order}};
    return GroupSpec{spec::Semidihedral{order}};
  }
  if (kind == "extraspecial") {
    require_keys(j, path, {"p", "order", "type"});
    spec::Extraspecial e;
    e.p = static_cast<unsigned>(uint_field(j, path, "p"));
    e.order = uint_field(j, path, "order");
    e.type = e.p == 2 ? ExtraspecialType::TwoType : ExtraspecialType::OddExponentP;
    if (j.contains("type")) {
      const auto t = as_string(j["type"], at(path, "type"));
      if (t == "two-type") {
        e.type = ExtraspecialType::TwoType;
      } else if (t == "odd-exponent-p") {
        e.type = ExtraspecialType::OddExponentP;
      } else {
        fail(at(path, "type"), "expected \"odd-exponent-p\" or \"two-type\"");
      }
    }
    return GroupSpec{e};
  }
  if (kind == "permutations") {
    require_keys(j, path, {"degree", "generators"});
    spec::Permutations p;
    p.degree = uint_field(j, path, "degree");
    const std::string gp = at(path, "generators");
    const auto& gens = as_array(field(j, path, "generators"), gp);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& row = as_array(gens[i], at(gp, i));
      std::vector<std::size_t> perm;
      for (std::size_t k = 0; k < row.size(); ++k) perm.push_back(as_uint(row[k], at(at(gp, i), k)));
      p.generators.push_back(std::move(perm));
    }
    return GroupSpec{std::move(p)};
  }
  if (kind == "table") {
    require_keys(j, path, {"rows"});
    const std::string rp = at(path, "rows");
    const auto& rows = as_array(field(j, path, "rows"), rp);
    spec::Table t;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = as_array(rows[i], at(rp, i));
      if (row.size() != rows.size()) fail(at(rp, i), "table must be square");
      std::vector<Element> r;
      for (std::size_t k = 0; k < row.size(); ++k) {
        r.push_back(static_cast<Element>(as_uint(row[k], at(at(rp, i), k))));
      }
      t.rows.push_back(std::move(r));
    }
    return GroupSpec{std::move(t)};
  }
  if (kind == "pc") return GroupSpec{spec::Pc{parse_pc(j, path)}};
  if (kind == "semidirect") {
    require_keys(j, path, {"normal", "acting", "action"});
    spec::Semidirect sd;
    sd.normal = std::make_shared<GroupSpec>(spec_from_json(field(j, path, "normal"), at(path, "normal")));
    sd.acting = std::make_shared<GroupSpec>(spec_from_json(field(j, path, "acting"), at(path, "acting")));
    const std::string ap = at(path, "action");
    const auto& list = as_array(field(j, path, "action"), ap);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = at(ap, i);
      require_keys(list[i], p, {"element", "images", "permutation"});
      spec::SemidirectAction a;
      a.element = static_cast<Element>(uint_field(list[i], p, "element"));
      if (list[i].contains("images") == list[i].contains("permutation")) {
        fail(p, "give exactly one of \"images\" and \"permutation\"");
      }
      if (list[i].contains("permutation")) {
        const std::string pp = at(p, "permutation");
        const auto& perm = as_array(list[i]["permutation"], pp);
        std::vector<Element> v;
        for (std::size_t k = 0; k < perm.size(); ++k) {
          v.push_back(static_cast<Element>(as_uint(perm[k], at(pp, k))));
        }
        a.permutation = std::move(v);
      } else {
        const std::string ip = at(p, "images");
        std::optional<PcPresentation> npc;
        try {
          npc = presentation_of(*sd.normal);
        } catch (const Error& e) {
          fail(at(path, "normal"), e.what());
        }
        if (!npc) fail(ip, "generator images need a normal subgroup given by a presentation");
        const std::size_t gens = npc->size();
        const auto& imgs = as_array(list[i]["images"], ip);
        if (imgs.size() != gens) fail(ip, "expected " + std::to_string(gens) + " images");
        std::vector<PcWord> words;
        for (std::size_t k = 0; k < imgs.size(); ++k) {
          words.push_back(parse_word(imgs[k], at(ip, k), gens, -1));
        }
        a.images = std::move(words);
      }
      sd.action.push_back(std::move(a));
    }
    return GroupSpec{std::move(sd)};
  }
  if (kind == "stem") {
    require_keys(j, path, {"family", "p"});
    spec::Stem s;
    try {
      s.family = parse_stem_family(as_string(field(j, path, "family"), at(path, "family")));
    } catch (const Error& e) {
      fail(at(path, "family"), e.what());
    }
    s.p = static_cast<unsigned>(uint_field(j, path, "p"));
    return GroupSpec{s};
  }
  fail(at(path, "kind"), "unknown kind '" + kind + "'");
}

json spec_to_json(const GroupSpec& s) {
  struct Visitor {
    json operator()(const spec::Trivial&) const { return {{"kind", "trivial"}}; }
    json operator()(const spec::Cyclic& c) const { return {{"kind", "cyclic"}, {"n", c.n}}; }
    json operator()(const spec::DirectProduct& d) const {
      json f = json::array();
      for (const auto& x : d.factors) f.push_back(spec_to_json(x));
      return {{"kind", "direct_product"}, {"factors", f}};
    }
    json operator()(const spec::Dihedral& d) const {
      return {{"kind", "dihedral"}, {"order", d.order}};
    }
    json operator()(const spec::Quaternion& q) const {
      return {{"kind", "quaternion"}, {"order", q.order}};
    }
    json operator()(const spec::Semidihedral& q) const {
      return {{"kind", "semidihedral"}, {"order", q.order}};
    }
    json operator()(const spec::Extraspecial& e) const {
      return {{"kind", "extraspecial"},
              {"p", e.p},
              {"order", e.order},
              {"type", e.type == ExtraspecialType::TwoType ? "two-type" : "odd-exponent-p"}};
    }
    json operator()(const spec::Permutations& p) const {
      return {{"kind", "permutations"}, {"degree", p.degree}, {"generators", p.generators}};
    }
    json operator()(const spec::Table& t) const { return {{"kind", "table"}, {"rows", t.rows}}; }
    json operator()(const spec::Pc& pc) const { return pc_to_json(pc.presentation); }
    json operator()(const spec::Semidirect& sd) const {
      json action = json::array();
      for (const auto& a : sd.action) {
        json e{{"element", a.element}};
        if (a.permutation) e["permutation"] = *a.permutation;
        if (a.images) {
          json imgs = json::array();
          for (const auto& w : *a.images) imgs.push_back(word_to_json(w));
          e["images"] = imgs;
        }
        action.push_back(e);
      }
      return {{"kind", "semidirect"},
              {"normal", spec_to_json(*sd.normal)},
              {"acting", spec_to_json(*sd.acting)},
              {"action", action}};
    }
    json operator()(const spec::Stem& st) const {
      return {{"kind", "stem"}, {"family", to_string(st.family)}, {"p", st.p}};
    }
  };
  return std::visit(Visitor{}, s.v);
}

GroupSpec parse_spec_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SpecParse, std::string("$: invalid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

GroupSpec load_spec_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::SpecParse, "cannot read " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

GroupSpec named_spec(const std::string& name) {
  for (const auto& [n, make] : builtins()) {
    if (n == name) return make();
  }
  const auto parts = split(name, ':');
  const std::string& kind = parts.empty() ? name : parts[0];
  auto arg = [&](std::size_t i) { return parse_count(parts.at(i), name); };
  if (kind == "trivial" && parts.size() == 1) return GroupSpec{spec::Trivial{}};
  if (parts.size() == 2) {
    if (kind == "cyclic") return cyc(arg(1));
    if (kind == "dihedral") return GroupSpec{spec::Dihedral{arg(1)}};
    if (kind == "quaternion") return GroupSpec{spec::Quaternion{arg(1)}};
    if (kind == "semidihedral") return GroupSpec{spec::Semidihedral{arg(1)}};
  }
  if (kind == "extraspecial" && (parts.size() == 3 || parts.size() == 4)) {
    spec::Extraspecial e;
    e.p = static_cast<unsigned>(arg(1));
    e.order = arg(2);
    e.type = e.p == 2 ? ExtraspecialType::TwoType : ExtraspecialType::OddExponentP;
    if (parts.size() == 4) {
      if (parts[3] == "two") {
        e.type = ExtraspecialType::TwoType;
      } else if (parts[3] == "odd") {
        e.type = ExtraspecialType::OddExponentP;
      } else {
        throw Error(ErrorCode::SpecParse, "unknown extraspecial type in '" + name + "'");
      }
    }
    return GroupSpec{e};
  }
  if (kind == "stem" && parts.size() == 3) {
    return GroupSpec{spec::Stem{parse_stem_family(parts[1]), static_cast<unsigned>(arg(2))}};
  }
  throw Error(ErrorCode::SpecParse, "unknown group '" + name + "'");
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& b : builtins()) v.push_back(b.first);
    return v;
  }();
  return names;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::filesystem::path& file, const std::string& contents) {
  const auto dir = file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");
  std::filesystem::create_directories(dir);
  const auto tmp = dir / ("." + file.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace orbitgf
