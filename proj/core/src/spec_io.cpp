#include "zipshift/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "zipshift/errors.hpp"

namespace zipshift {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ParseError(path + ": " + why);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError("invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) fail(path, "unknown key '" + item.key() + "'");
  }
}

const Json& require(const Json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::size_t as_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Alphabet parse_alphabet(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of symbol names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string name = as_string(j[i], path + "[" + std::to_string(i) + "]");
    if (!valid_symbol_name(name)) fail(path + "[" + std::to_string(i) + "]", "invalid symbol name '" + name + "'");
    names.push_back(name);
  }
  try {
    return Alphabet(names);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Symbol symbol_at(const Alphabet& a, const std::string& name, const std::string& path) {
  auto s = a.find(name);
  if (!s) fail(path, "unknown symbol '" + name + "'");
  return *s;
}

Word word_at(const Alphabet& a, const std::string& text, const std::string& path) {
  try {
    return parse_word(a, text);
  } catch (const UnknownSymbol& e) {
    fail(path, e.what());
  }
}

SpaceDefinition definition_from(const Json& j, const std::string& path) {
  check_keys(j, path, {"alphabet_a", "alphabet_a_prime", "n", "phi", "kind", "forbidden", "graph", "window"});
  SpaceDefinition def;
  def.a = parse_alphabet(require(j, path, "alphabet_a"), path + ".alphabet_a");
  def.a_prime = parse_alphabet(require(j, path, "alphabet_a_prime"), path + ".alphabet_a_prime");
  def.n = as_count(require(j, path, "n"), path + ".n");
  std::string kind = as_string(require(j, path, "kind"), path + ".kind");
  if (kind == "full") def.kind = SpaceKind::Full;
  else if (kind == "sft") def.kind = SpaceKind::Sft;
  else if (kind == "sofic") def.kind = SpaceKind::Sofic;
  else fail(path + ".kind", "expected full, sft or sofic, got '" + kind + "'");

  const Json& phi = require(j, path, "phi");
  if (!phi.is_object()) fail(path + ".phi", "expected an object");
  for (const auto& item : phi.items()) {
    std::string p = path + ".phi[\"" + item.key() + "\"]";
    Word w = word_at(def.a_prime, item.key(), p);
    def.phi[w] = symbol_at(def.a, as_string(item.value(), p), p);
  }

  if (j.contains("forbidden")) {
    if (def.kind != SpaceKind::Sft) fail(path + ".forbidden", "only allowed for kind sft");
    const Json& f = j["forbidden"];
    if (!f.is_array()) fail(path + ".forbidden", "expected a list of words");
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::string p = path + ".forbidden[" + std::to_string(i) + "]";
      def.forbidden.push_back(word_at(def.a_prime, as_string(f[i], p), p));
    }
  }
  if (j.contains("graph")) {
    if (def.kind != SpaceKind::Sofic) fail(path + ".graph", "only allowed for kind sofic");
    const Json& g = j["graph"];
    std::string gp = path + ".graph";
    check_keys(g, gp, {"vertices", "edges"});
    const Json& vs = require(g, gp, "vertices");
    if (!vs.is_array() || vs.empty()) fail(gp + ".vertices", "expected a non-empty list");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::string name = as_string(vs[i], gp + ".vertices[" + std::to_string(i) + "]");
      if (!index.emplace(name, i).second) fail(gp + ".vertices[" + std::to_string(i) + "]", "duplicate vertex '" + name + "'");
      def.presentation.vertex_names.push_back(name);
    }
    const Json& es = require(g, gp, "edges");
    if (!es.is_array()) fail(gp + ".edges", "expected a list");
    for (std::size_t i = 0; i < es.size(); ++i) {
      std::string p = gp + ".edges[" + std::to_string(i) + "]";
      if (!es[i].is_array() || es[i].size() != 3) fail(p, "expected [from, to, label]");
      auto vertex = [&](std::size_t k) {
        std::string name = as_string(es[i][k], p + "[" + std::to_string(k) + "]");
        auto it = index.find(name);
        if (it == index.end()) fail(p + "[" + std::to_string(k) + "]", "unknown vertex '" + name + "'");
        return it->second;
      };
      std::size_t from = vertex(0), to = vertex(1);
      Symbol label = symbol_at(def.a_prime, as_string(es[i][2], p + "[2]"), p + "[2]");
      def.presentation.edges.push_back({from, to, label});
    }
  } else if (def.kind == SpaceKind::Sofic) {
    fail(path, "kind sofic needs a graph");
  }
  if (j.contains("window")) def.window = as_count(j["window"], path + ".window");
  return def;
}

ZipShiftSpace space_from(const Json& j, const std::string& path) {
  SpaceDefinition def = definition_from(j, path);
  try {
    return ZipShiftSpace(std::move(def));
  } catch (const InvalidSpace& e) {
    fail(path, e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OrderedJson definition_json(const SpaceDefinition& def) {
  OrderedJson j;
  j["alphabet_a"] = def.a.names();
  j["alphabet_a_prime"] = def.a_prime.names();
  j["n"] = def.n;
  j["kind"] = def.kind == SpaceKind::Full ? "full" : def.kind == SpaceKind::Sft ? "sft" : "sofic";
  OrderedJson phi = OrderedJson::object();
  for (const auto& [w, s] : def.phi) phi[format_word(def.a_prime, w)] = def.a.name(s);
  j["phi"] = phi;
  if (def.kind == SpaceKind::Sft) {
    OrderedJson f = OrderedJson::array();
    for (const Word& w : def.forbidden) f.push_back(format_word(def.a_prime, w));
    j["forbidden"] = f;
  }
  if (def.kind == SpaceKind::Sofic) {
    OrderedJson g;
    g["vertices"] = def.presentation.vertex_names;
    OrderedJson es = OrderedJson::array();
    for (const auto& e : def.presentation.edges)
      es.push_back({def.presentation.vertex_names[e.from], def.presentation.vertex_names[e.to], def.a_prime.name(e.label)});
    g["edges"] = es;
    j["graph"] = g;
  }
  if (def.window != 0) j["window"] = def.window;
  return j;
}

}  // namespace

SpaceDefinition parse_space_definition(std::string_view text) { return definition_from(parse_json(text), "$"); }

ZipShiftSpace parse_space(std::string_view text) { return space_from(parse_json(text), "$"); }

ZipShiftSpace load_space(const std::filesystem::path& path) {
  std::string text = read_file(path);
  try {
    return parse_space(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string space_to_json(const SpaceDefinition& def) { return definition_json(def).dump(2) + "\n"; }

BlockCodeSpec parse_code(std::string_view text, const std::filesystem::path& base_dir) {
  Json j = parse_json(text);
  check_keys(j, "$", {"source", "target", "window", "psi_plus", "psi_minus"});
  auto space = [&](const char* key) {
    const Json& s = require(j, "$", key);
    std::string p = std::string("$.") + key;
    if (s.is_string()) return load_space(base_dir / s.get<std::string>());
    return space_from(s, p);
  };
  BlockCodeSpec spec{space("source"), space("target"), as_count(require(j, "$", "window"), "$.window"), {}, {}};
  const auto& src = spec.source;
  const auto& tgt = spec.target;
  const Json& plus = require(j, "$", "psi_plus");
  if (!plus.is_object()) fail("$.psi_plus", "expected an object");
  for (const auto& item : plus.items()) {
    std::string p = "$.psi_plus[\"" + item.key() + "\"]";
    Word w = word_at(src.a_prime(), item.key(), p);
    if (w.size() != spec.window) fail(p, "word length differs from window");
    spec.psi_plus[w] = symbol_at(tgt.a_prime(), as_string(item.value(), p), p);
  }
  const Json& minus = require(j, "$", "psi_minus");
  if (!minus.is_object()) fail("$.psi_minus", "expected an object");
  for (const auto& item : minus.items()) {
    std::string p = "$.psi_minus[\"" + item.key() + "\"]";
    auto semi = item.key().find(';');
    if (semi == std::string::npos) fail(p, "expected '<A symbol> ; <A' word>'");
    Word left = word_at(src.a(), item.key().substr(0, semi), p);
    Word right = word_at(src.a_prime(), item.key().substr(semi + 1), p);
    if (left.size() != 1 || right.size() != spec.window) fail(p, "expected one A symbol and a window-length word");
    spec.psi_minus[{left[0], right}] = symbol_at(tgt.a(), as_string(item.value(), p), p);
  }
  return spec;
}

BlockCodeSpec load_code(const std::filesystem::path& path) {
  std::string text = read_file(path);
  try {
    return parse_code(text, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string code_to_json(const BlockCodeSpec& spec) {
  OrderedJson j;
  j["source"] = definition_json(spec.source.definition());
  j["target"] = definition_json(spec.target.definition());
  j["window"] = spec.window;
  OrderedJson plus = OrderedJson::object();
  for (const auto& [w, c] : spec.psi_plus) plus[format_word(spec.source.a_prime(), w)] = spec.target.a_prime().name(c);
  j["psi_plus"] = plus;
  OrderedJson minus = OrderedJson::object();
  for (const auto& [key, c] : spec.psi_minus)
    minus[spec.source.a().name(key.first) + " ; " + format_word(spec.source.a_prime(), key.second)] = spec.target.a().name(c);
  j["psi_minus"] = minus;
  return j.dump(2) + "\n";
}

}  // namespace zipshift
