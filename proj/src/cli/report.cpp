#include "dynsml/cli/report.hpp"

#include <sstream>

namespace dynsml::cli {

using decide::ClassReport;
using decide::ProgressionSet;
using exactalg::Integer;
using strassman::BoundResult;
using strassman::Completeness;
using strassman::RootClass;
using strassman::Verdict;
using strassman::ZeroAnalysis;

Report make_report(ProgressionSet result) {
  Report r;
  r.density = decide::density_flag(result);
  r.automorphism = std::move(result);
  return r;
}

Report make_report(sml::RecurrenceZeroSet result) {
  Report r;
  if (!result.full_classes.empty()) {
    r.density = {decide::Density::NotDense, "f vanishes on " + progression_text(result.modulus, result.full_classes) +
                                                " from m = " + std::to_string(result.start) + " on"};
  } else if (result.certificate) {
    r.density = decide::density_flag(*result.certificate);
  }
  r.recurrence = std::move(result);
  return r;
}

std::string progression_text(unsigned long modulus, const std::vector<unsigned long>& classes) {
  if (classes.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < classes.size(); ++i) out += (i ? ", " : "") + std::to_string(classes[i]);
  return out + " (mod " + std::to_string(modulus) + ")";
}

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ParseError, "malformed report: " + what); }

std::string z(const Integer& x) { return exactalg::to_string(x); }

Integer read_z(const json& v) {
  Integer out;
  if (!v.is_string() || out.set_str(v.get<std::string>(), 10) != 0) bad("expected an integer string");
  return out;
}

template <class T>
T field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("wrong type for '") + key + "'");
  }
}

Verdict read_verdict(const std::string& s) {
  if (s == "BoundedZeros") return Verdict::BoundedZeros;
  if (s == "IdenticallyZeroAtPrecision") return Verdict::IdenticallyZeroAtPrecision;
  bad("unknown verdict " + s);
}

Completeness read_completeness(const std::string& s) {
  if (s == "Certified") return Completeness::Certified;
  if (s == "SearchLimited") return Completeness::SearchLimited;
  bad("unknown completeness " + s);
}

json bound_json(const BoundResult& b) {
  return {{"verdict", strassman::to_string(b.verdict)}, {"bound", b.bound}, {"min_val", b.min_val},
          {"terms", b.terms}, {"precision", b.precision}};
}

BoundResult read_bound(const json& j) {
  return {read_verdict(field<std::string>(j, "verdict")), field<long>(j, "bound"), field<long>(j, "min_val"),
          field<long>(j, "terms"), field<long>(j, "precision")};
}

json analysis_json(const ZeroAnalysis& a) {
  json roots = json::array();
  for (const auto& r : a.roots)
    roots.push_back({{"center", z(r.center)}, {"depth", r.depth}, {"simple", r.simple}, {"count", r.count}});
  return {{"verdict", strassman::to_string(a.verdict)},
          {"bound", a.bound},
          {"chosen", a.chosen},
          {"terms", a.terms},
          {"precision", a.precision},
          {"roots", roots},
          {"zeros", a.zeros},
          {"completeness", strassman::to_string(a.completeness)},
          {"exact_checks", a.exact_checks},
          {"unknown_checks", a.unknown_checks}};
}

ZeroAnalysis read_analysis(const json& j) {
  ZeroAnalysis a;
  a.verdict = read_verdict(field<std::string>(j, "verdict"));
  a.bound = field<long>(j, "bound");
  a.chosen = field<long>(j, "chosen");
  a.terms = field<long>(j, "terms");
  a.precision = field<long>(j, "precision");
  for (const auto& r : field<json>(j, "roots"))
    a.roots.push_back(RootClass{read_z(field<json>(r, "center")), field<long>(r, "depth"), field<bool>(r, "simple"),
                                field<long>(r, "count")});
  a.zeros = field<std::vector<long>>(j, "zeros");
  a.completeness = read_completeness(field<std::string>(j, "completeness"));
  a.exact_checks = field<long>(j, "exact_checks");
  a.unknown_checks = field<long>(j, "unknown_checks");
  return a;
}

json progression_json(const ProgressionSet& r) {
  json checks = json::array();
  for (const auto& c : r.embedding.checks) checks.push_back({{"name", c.name}, {"detail", c.detail}});
  json base = json::array();
  for (const auto& x : r.period.base_point) base.push_back(z(x));
  json classes = json::array();
  for (const auto& c : r.class_reports) {
    json bounds = json::array();
    for (const auto& b : c.generator_bounds) bounds.push_back(bound_json(b));
    classes.push_back({{"index", c.index}, {"analysis", analysis_json(c.analysis)}, {"generator_bounds", bounds}});
  }
  return {{"answer", {{"modulus", r.modulus}, {"full_classes", r.full_classes}, {"sporadic", r.sporadic}}},
          {"embedding",
           {{"p", r.embedding.p},
            {"N", r.embedding.N},
            {"root_mod_p", z(r.embedding.root_mod_p)},
            {"theta_image", z(r.embedding.theta_image)},
            {"checks", checks}}},
          {"period", {{"j", r.period.j}, {"d", r.period.d}, {"e", r.period.e}, {"base_point", base}}},
          {"precision", r.precision},
          {"terms", r.terms},
          {"search_bound", r.search_bound},
          {"primes_tried", r.primes_tried},
          {"classes", classes}};
}

ProgressionSet read_progression(const json& j) {
  ProgressionSet r;
  const json ans = field<json>(j, "answer");
  r.modulus = field<unsigned long>(ans, "modulus");
  r.full_classes = field<std::vector<unsigned long>>(ans, "full_classes");
  r.sporadic = field<std::vector<long>>(ans, "sporadic");
  const json emb = field<json>(j, "embedding");
  r.embedding.p = field<unsigned long>(emb, "p");
  r.embedding.N = field<long>(emb, "N");
  r.embedding.root_mod_p = read_z(field<json>(emb, "root_mod_p"));
  r.embedding.theta_image = read_z(field<json>(emb, "theta_image"));
  for (const auto& c : field<json>(emb, "checks"))
    r.embedding.checks.push_back({field<std::string>(c, "name"), field<std::string>(c, "detail")});
  const json per = field<json>(j, "period");
  r.period.j = field<unsigned long>(per, "j");
  r.period.d = field<unsigned long>(per, "d");
  r.period.e = field<unsigned long>(per, "e");
  for (const auto& x : field<json>(per, "base_point")) r.period.base_point.push_back(read_z(x));
  r.precision = field<long>(j, "precision");
  r.terms = field<long>(j, "terms");
  r.search_bound = field<long>(j, "search_bound");
  r.primes_tried = field<std::vector<unsigned long>>(j, "primes_tried");
  for (const auto& c : field<json>(j, "classes")) {
    ClassReport cr;
    cr.index = field<unsigned long>(c, "index");
    cr.analysis = read_analysis(field<json>(c, "analysis"));
    for (const auto& b : field<json>(c, "generator_bounds")) cr.generator_bounds.push_back(read_bound(b));
    r.class_reports.push_back(std::move(cr));
  }
  return r;
}

}  // namespace

json render_machine(const Report& r) {
  json doc;
  if (r.automorphism) {
    doc["kind"] = "automorphism";
    doc["result"] = progression_json(*r.automorphism);
  } else if (r.recurrence) {
    const auto& s = *r.recurrence;
    doc["kind"] = "recurrence";
    doc["result"] = {{"answer",
                      {{"modulus", s.modulus}, {"full_classes", s.full_classes}, {"start", s.start},
                       {"sporadic", s.sporadic}}},
                     {"shift", s.shift},
                     {"certificate", s.certificate ? progression_json(*s.certificate) : json()}};
  }
  doc["density"] = {{"flag", decide::to_string(r.density.flag)}, {"witness", r.density.witness}};
  if (r.elapsed_ms) doc["elapsed_ms"] = *r.elapsed_ms;
  return doc;
}

Report parse_machine(const json& doc) {
  Report r;
  const std::string kind = field<std::string>(doc, "kind");
  const json res = field<json>(doc, "result");
  if (kind == "automorphism") {
    r.automorphism = read_progression(res);
  } else if (kind == "recurrence") {
    sml::RecurrenceZeroSet s;
    const json ans = field<json>(res, "answer");
    s.modulus = field<unsigned long>(ans, "modulus");
    s.full_classes = field<std::vector<unsigned long>>(ans, "full_classes");
    s.start = field<long>(ans, "start");
    s.sporadic = field<std::vector<long>>(ans, "sporadic");
    s.shift = field<std::size_t>(res, "shift");
    const json cert = field<json>(res, "certificate");
    if (!cert.is_null()) s.certificate = read_progression(cert);
    r.recurrence = std::move(s);
  } else {
    bad("unknown kind " + kind);
  }
  const json den = field<json>(doc, "density");
  auto flag = decide::density_from_string(field<std::string>(den, "flag"));
  if (!flag) bad("unknown density flag");
  r.density = {*flag, field<std::string>(den, "witness")};
  if (doc.contains("elapsed_ms")) r.elapsed_ms = field<long>(doc, "elapsed_ms");
  return r;
}

namespace {

std::string list_text(const std::vector<long>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + std::to_string(xs[i]);
  return out + "}";
}

void certificates(std::ostream& os, const ProgressionSet& r) {
  os << "certificates:\n";
  os << "  prime p = " << r.embedding.p << " (tried";
  for (auto p : r.primes_tried) os << ' ' << p;
  os << "), theta -> " << z(r.embedding.theta_image) << " mod " << r.embedding.p << "^" << r.embedding.N
     << " (root " << z(r.embedding.root_mod_p) << " mod p)\n";
  for (const auto& c : r.embedding.checks) os << "    check " << c.name << ": " << c.detail << "\n";
  os << "  period j = " << r.period.j << " = d*e = " << r.period.d << "*" << r.period.e << "\n";
  os << "  precision N = " << r.precision << ", Mahler terms K = " << r.terms << ", search bound M = "
     << r.search_bound << "\n";
  for (const auto& c : r.class_reports) {
    const auto& a = c.analysis;
    os << "  class " << c.index << " (mod " << r.period.j << "): ";
    if (a.verdict == Verdict::IdenticallyZeroAtPrecision) {
      os << "full, certified at precision (K=" << a.terms << ", N=" << a.precision << ") + " << a.exact_checks
         << " exact checks";
      if (a.unknown_checks) os << ", " << a.unknown_checks << " unevaluated";
      os << "\n";
      continue;
    }
    os << "finite, Strassman bound B = " << a.bound << " (generator " << a.chosen << ", N=" << a.precision
       << "), zeros " << list_text(a.zeros) << ", " << strassman::to_string(a.completeness);
    if (a.unknown_checks) os << ", " << a.unknown_checks << " unevaluated";
    os << "\n";
    for (const auto& rc : a.roots)
      os << "    root class " << z(rc.center) << " mod " << r.embedding.p << "^" << rc.depth
         << (rc.simple ? " simple" : " unresolved, at most " + std::to_string(rc.count)) << "\n";
  }
}

}  // namespace

std::string render_human(const Report& r) {
  std::ostringstream os;
  if (r.automorphism) {
    const auto& s = *r.automorphism;
    os << "answer: {m in Z : sigma^m(q) in X}\n";
    os << "  progressions: " << progression_text(s.modulus, s.full_classes) << "\n";
    os << "  sporadic: " << list_text(s.sporadic) << "\n";
    os << "  complete: " << (s.complete() ? "yes" : "no (search limited)") << "\n";
  } else if (r.recurrence) {
    const auto& s = *r.recurrence;
    os << "answer: {m >= 0 : f(m) = 0}\n";
    os << "  progressions: " << progression_text(s.modulus, s.full_classes);
    if (!s.full_classes.empty() && s.start > 0) os << " for m >= " << s.start;
    os << "\n  sporadic: " << list_text(s.sporadic) << "\n";
    os << "  complete: " << (s.complete() ? "yes" : "no (search limited)") << "\n";
  }
  os << "density: " << decide::to_string(r.density.flag) << " (" << r.density.witness << ")\n";
  if (r.automorphism) certificates(os, *r.automorphism);
  if (r.recurrence && r.recurrence->certificate) {
    if (r.recurrence->shift) os << "note: " << r.recurrence->shift << " trailing zero coefficients stripped\n";
    certificates(os, *r.recurrence->certificate);
  }
  if (r.elapsed_ms) os << "elapsed: " << *r.elapsed_ms << " ms\n";
  return os.str();
}

}  // namespace dynsml::cli
