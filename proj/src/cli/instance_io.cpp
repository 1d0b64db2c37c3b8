#include "dynsml/cli/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace dynsml::cli {

using exactalg::AlgNum;
using exactalg::Exponents;
using exactalg::FieldPtr;
using exactalg::Integer;
using exactalg::MultiPoly;
using exactalg::Rational;

JsonLocator::JsonLocator(std::string_view text) : text_(text) {
  try {
    skip_ws();
    scan_value("");
  } catch (const std::out_of_range&) {
    // Truncated text: keep what was located so far.
  }
}

void JsonLocator::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

std::string JsonLocator::scan_string() {
  std::string out;
  ++pos_;  // opening quote
  while (text_.at(pos_) != '"') {
    if (text_[pos_] == '\\') {
      ++pos_;
      const char c = text_.at(pos_);
      out += c == 'n' ? '\n' : c == 't' ? '\t' : c;
    } else {
      out += text_[pos_];
    }
    ++pos_;
  }
  ++pos_;
  return out;
}

void JsonLocator::scan_value(const std::string& path) {
  offsets_.emplace(path, pos_);
  const char c = text_.at(pos_);
  if (c == '{') {
    ++pos_;
    skip_ws();
    while (text_.at(pos_) != '}') {
      if (text_[pos_] != '"') return;
      std::string key = scan_string();
      std::string token;
      for (char k : key) token += k == '~' ? "~0" : k == '/' ? "~1" : std::string(1, k);
      skip_ws();
      if (text_.at(pos_) != ':') return;
      ++pos_;
      skip_ws();
      scan_value(path + "/" + token);
      skip_ws();
      if (text_.at(pos_) == ',') {
        ++pos_;
        skip_ws();
      }
    }
    ++pos_;
  } else if (c == '[') {
    ++pos_;
    skip_ws();
    for (std::size_t i = 0; text_.at(pos_) != ']'; ++i) {
      scan_value(path + "/" + std::to_string(i));
      skip_ws();
      if (text_.at(pos_) == ',') {
        ++pos_;
        skip_ws();
      }
    }
    ++pos_;
  } else if (c == '"') {
    scan_string();
  } else {
    while (pos_ < text_.size() && !std::strchr(",]} \t\r\n", text_[pos_])) ++pos_;
  }
}

std::pair<long, long> JsonLocator::line_column(std::size_t offset) const {
  long line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
    if (text_[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::pair<long, long> JsonLocator::locate(const json::json_pointer& where) const {
  for (json::json_pointer p = where;; p = p.parent_pointer()) {
    auto it = offsets_.find(p.to_string());
    if (it != offsets_.end()) return line_column(it->second);
    if (p.empty()) return {1, 1};
  }
}

namespace {

class Reader {
 public:
  Reader(const json& doc, const JsonLocator& loc) : doc_(doc), loc_(loc) {}

  [[noreturn]] void error(const json::json_pointer& at, const std::string& msg) const {
    auto [line, col] = loc_.locate(at);
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg +
                                    (at.empty() ? "" : " (at " + at.to_string() + ")"));
  }

  const json& get(const json::json_pointer& at) const {
    if (!doc_.contains(at)) error(at.parent_pointer(), "missing field '" + at.back() + "'");
    return doc_.at(at);
  }

  const json& array(const json::json_pointer& at) const {
    const json& v = get(at);
    if (!v.is_array()) error(at, "expected a list");
    return v;
  }

  long integer(const json::json_pointer& at, long lo) const {
    const json& v = get(at);
    if (!v.is_number_integer()) error(at, "expected an integer");
    const long x = v.get<long>();
    if (x < lo) error(at, "expected an integer >= " + std::to_string(lo));
    return x;
  }

  Integer big_integer(const json::json_pointer& at) const {
    const json& v = get(at);
    if (v.is_number_integer()) return Integer(v.get<long>());
    if (v.is_string()) {
      Integer z;
      if (z.set_str(v.get<std::string>(), 10) == 0) return z;
    }
    error(at, "expected an integer or a decimal string");
  }

  Rational rational(const json::json_pointer& at) const {
    const json& v = get(at);
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) error(at, "expected a rational string such as \"-3/4\"");
    try {
      return exactalg::parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      error(at, e.what());
    }
  }

  AlgNum number(const json::json_pointer& at, const FieldPtr& f) const {
    const json& v = get(at);
    if (!v.is_array()) return AlgNum(f, rational(at));
    if (v.size() != static_cast<std::size_t>(f->degree()))
      error(at, "coordinate vector needs " + std::to_string(f->degree()) + " entries");
    std::vector<Rational> coords;
    for (std::size_t i = 0; i < v.size(); ++i) coords.push_back(rational(at / i));
    return AlgNum(f, coords);
  }

  MultiPoly poly(const json::json_pointer& at, const FieldPtr& f, std::size_t n) const {
    const json& terms = array(at);
    MultiPoly out(f, n);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto term = at / t;
      const json& obj = get(term);
      if (!obj.is_object()) error(term, "a term must be an object {\"coeff\": ..., \"exps\": [...]}");
      for (auto it = obj.begin(); it != obj.end(); ++it)
        if (it.key() != "coeff" && it.key() != "exps") error(term / it.key(), "unknown term field '" + it.key() + "'");
      const json& exps = array(term / "exps");
      if (exps.size() != n) error(term / "exps", "exponent vector needs " + std::to_string(n) + " entries");
      Exponents e;
      for (std::size_t i = 0; i < n; ++i) {
        const long x = integer(term / "exps" / i, 0);
        if (x > 1000000) error(term / "exps" / i, "exponent too large");
        e.push_back(static_cast<std::uint32_t>(x));
      }
      out.add_term(e, number(term / "coeff", f));
    }
    return out;
  }

  exactalg::PolyMap map(const json::json_pointer& at, const FieldPtr& f, std::size_t n) const {
    const json& comps = array(at);
    if (comps.size() != n) error(at, "map needs " + std::to_string(n) + " components");
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(poly(at / i, f, n));
    return exactalg::PolyMap(std::move(out));
  }

 private:
  const json& doc_;
  const JsonLocator& loc_;
};

SolverConfig read_config(const Reader& r, const json& doc) {
  SolverConfig c;
  const json::json_pointer at("/config");
  if (!doc.contains(at)) return c;
  const json& obj = doc.at(at);
  if (!obj.is_object()) r.error(at, "config must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& k = it.key();
    const auto p = at / k;
    if (k == "prime") {
      c.prime_override = static_cast<unsigned long>(r.integer(p, 2));
    } else if (k == "precision") {
      c.precision = r.integer(p, 1);
    } else if (k == "terms") {
      c.terms = r.integer(p, 1);
    } else if (k == "search_bound") {
      c.search_bound = r.integer(p, 0);
    } else if (k == "spot_radius") {
      c.spot_radius = r.integer(p, 0);
    } else if (k == "max_depth") {
      c.max_depth = r.integer(p, 0);
    } else if (k == "min_prime") {
      c.min_prime = static_cast<unsigned long>(r.integer(p, 2));
    } else if (k == "max_prime") {
      c.max_prime = static_cast<unsigned long>(r.integer(p, 2));
    } else if (k == "prime_attempts") {
      c.prime_attempts = static_cast<int>(r.integer(p, 1));
    } else if (k == "threads") {
      c.threads = static_cast<unsigned>(r.integer(p, 1));
    } else {
      r.error(p, "unknown config field '" + k + "'");
    }
  }
  return c;
}

}  // namespace

ProblemInstance parse_instance(std::string_view text) {
  JsonLocator loc(text);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = loc.line_column(e.byte > 0 ? e.byte - 1 : 0);
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                    ": malformed JSON (" + e.what() + ")");
  }
  Reader r(doc, loc);
  if (!doc.is_object()) r.error(json::json_pointer(), "instance must be a JSON object");

  struct {
    FieldPtr field;
    std::optional<Congruence> congruence;
    std::vector<AlgNum> q;
    std::vector<MultiPoly> variety;
  } in;
  const json& field = r.get(json::json_pointer("/field"));
  const std::string type = field.is_object() && field.contains("type") && field["type"].is_string()
                               ? field["type"].get<std::string>()
                               : "";
  if (type == "Q") {
    in.field = exactalg::NumberField::rationals();
  } else if (type == "number_field") {
    const json::json_pointer mp("/field/minpoly");
    const json& coeffs = r.array(mp);
    exactalg::upoly::ZPoly minpoly;
    for (std::size_t i = 0; i < coeffs.size(); ++i) minpoly.push_back(r.big_integer(mp / i));
    try {
      in.field = exactalg::make_field(minpoly);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidArgument) r.error(mp, e.what());
      throw;
    }
    if (field.contains("congruence")) {
      const json::json_pointer cp("/field/congruence");
      Congruence c;
      c.modulus = static_cast<unsigned long>(r.integer(cp / "mod", 1));
      c.residue = static_cast<unsigned long>(r.integer(cp / "residue", 0));
      if (c.residue >= c.modulus) r.error(cp / "residue", "residue must be below mod");
      in.congruence = c;
    }
  } else {
    r.error(json::json_pointer("/field"), "field must be {\"type\": \"Q\"} or {\"type\": \"number_field\", ...}");
  }

  const auto n = static_cast<std::size_t>(r.integer(json::json_pointer("/n"), 1));
  exactalg::PolyMap sigma = r.map(json::json_pointer("/sigma"), in.field, n);
  exactalg::PolyMap sigma_inv = r.map(json::json_pointer("/sigma_inv"), in.field, n);
  const json::json_pointer pp("/point");
  const json& pt = r.array(pp);
  if (pt.size() != n) r.error(pp, "point needs " + std::to_string(n) + " coordinates");
  for (std::size_t i = 0; i < n; ++i) in.q.push_back(r.number(pp / i, in.field));
  const json::json_pointer vp("/variety");
  const json& gens = r.array(vp);
  if (gens.empty()) r.error(vp, "variety needs at least one generator");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    in.variety.push_back(r.poly(vp / i, in.field, n));
    if (in.variety.back().is_zero()) r.error(vp / i, "variety generators must be nonzero");
  }
  return ProblemInstance{in.field, in.congruence, std::move(sigma), std::move(sigma_inv), std::move(in.q),
                         std::move(in.variety), read_config(r, doc)};
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

namespace {

json number_json(const AlgNum& a) {
  if (a.field()->is_rationals()) return exactalg::to_string(a.rational_part());
  json out = json::array();
  for (const auto& c : a.coords()) out.push_back(exactalg::to_string(c));
  return out;
}

json poly_json(const MultiPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({{"coeff", number_json(c)}, {"exps", e}});
  return out;
}

}  // namespace

json instance_to_json(const ProblemInstance& in) {
  json doc;
  if (in.field->is_rationals()) {
    doc["field"] = {{"type", "Q"}};
  } else {
    json mp = json::array();
    for (const auto& c : in.field->minpoly()) mp.push_back(exactalg::to_string(c));
    doc["field"] = {{"type", "number_field"}, {"minpoly", mp}};
    if (in.congruence) doc["field"]["congruence"] = {{"mod", in.congruence->modulus}, {"residue", in.congruence->residue}};
  }
  doc["n"] = in.n();
  for (const char* key : {"sigma", "sigma_inv"}) {
    const auto& m = std::string(key) == "sigma" ? in.sigma : in.sigma_inv;
    json comps = json::array();
    for (const auto& c : m.components()) comps.push_back(poly_json(c));
    doc[key] = comps;
  }
  json pt = json::array();
  for (const auto& x : in.q) pt.push_back(number_json(x));
  doc["point"] = pt;
  json gens = json::array();
  for (const auto& g : in.variety) gens.push_back(poly_json(g));
  doc["variety"] = gens;
  const SolverConfig& c = in.config;
  json cfg = {{"precision", c.precision},     {"terms", c.terms},         {"search_bound", c.search_bound},
              {"spot_radius", c.spot_radius}, {"max_depth", c.max_depth}, {"min_prime", c.min_prime},
              {"max_prime", c.max_prime},     {"prime_attempts", c.prime_attempts}, {"threads", c.threads}};
  if (c.prime_override) cfg["prime"] = *c.prime_override;
  doc["config"] = cfg;
  return doc;
}

}  // namespace dynsml::cli
