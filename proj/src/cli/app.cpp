#include "dynsml/cli/app.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dynsml/arc/arc.hpp"
#include "dynsml/cli/instance_io.hpp"
#include "dynsml/cli/report.hpp"

namespace dynsml::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return kParse;
    case ErrorCode::InvalidArgument:
    case ErrorCode::ArityMismatch:
    case ErrorCode::NotInverse:
    case ErrorCode::NonConstantJacobian:
    case ErrorCode::ZeroJacobian:
    case ErrorCode::ReducibleMinpoly:
    case ErrorCode::IrreducibilityInconclusive:
    case ErrorCode::UnsupportedPrime:
    case ErrorCode::DenominatorNotUnit:
    case ErrorCode::DegenerateRecurrence:
      return kValidation;
    case ErrorCode::NoPrimeInRange:
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::Inconclusive:
      return kInconclusive;
    case ErrorCode::NotASimpleRoot:
    case ErrorCode::NonUnitInverse:
    case ErrorCode::JacobianNotInvertible:
    case ErrorCode::ValuationBoundViolated:
    case ErrorCode::InternalContradiction:
      return kCertificate;
  }
  return kCertificate;
}

namespace {

struct Flags {
  std::optional<unsigned long> prime;
  std::optional<long> precision, terms, search_bound;
  std::optional<unsigned> threads;
  bool machine = false;
  bool timing = false;
  unsigned long class_index = 0;
};

void add_pipeline_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--prime", f.prime, "use this prime instead of searching (p >= 5)");
  sub->add_option("--precision", f.precision, "p-adic precision N")->check(CLI::PositiveNumber);
  sub->add_option("--terms", f.terms, "Mahler terms K")->check(CLI::PositiveNumber);
  sub->add_option("--search-bound", f.search_bound, "exact search radius M per class")->check(CLI::NonNegativeNumber);
  sub->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--machine", f.machine, "print the machine-readable report");
  sub->add_flag("--timing", f.timing, "include elapsed time in the report");
}

void apply(const Flags& f, SolverConfig& c) {
  if (f.prime) c.prime_override = *f.prime;
  if (f.precision) c.precision = *f.precision;
  if (f.terms) c.terms = *f.terms;
  if (f.search_bound) c.search_bound = *f.search_bound;
  if (f.threads) c.threads = *f.threads;
}

std::vector<exactalg::Rational> rationals(const std::string& text) {
  std::istringstream is(text);
  std::vector<exactalg::Rational> out;
  for (std::string tok; is >> tok;) {
    try {
      out.push_back(exactalg::parse_rational(tok));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, "bad rational '" + tok + "': " + e.what());
    }
  }
  return out;
}

void emit(const Report& r, const Flags& f, std::ostream& out) {
  if (f.machine)
    out << render_machine(r).dump(2) << "\n";
  else
    out << render_human(r);
}

int cmd_decide(const std::string& path, const Flags& f, std::ostream& out, std::ostream& err) {
  ProblemInstance in = load_instance(path);
  apply(f, in.config);
  const auto t0 = std::chrono::steady_clock::now();
  decide::ProgressionSet result = decide::decide(in);
  if (auto bad = decide::verify_certificates(in, result)) {
    err << "certificate verification failed: " << *bad << "\n";
    return kCertificate;
  }
  Report r = make_report(std::move(result));
  if (f.timing)
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  emit(r, f, out);
  return kOk;
}

int cmd_sml(const std::string& coeffs, const std::string& initial, const Flags& f, std::ostream& out) {
  sml::LinearRecurrence rec{rationals(coeffs), rationals(initial)};
  SolverConfig cfg;
  apply(f, cfg);
  const auto t0 = std::chrono::steady_clock::now();
  Report r = make_report(sml::zero_set_of_recurrence(rec, cfg));
  if (f.timing)
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  emit(r, f, out);
  return kOk;
}

int cmd_validate(const std::string& path, const Flags& f, std::ostream& out) {
  ProblemInstance in = load_instance(path);
  check_instance_shape(in);
  auto cert = exactalg::validate_automorphism(in.sigma, in.sigma_inv);
  if (f.machine)
    out << json{{"automorphism", true}, {"dimension", in.n()}, {"jac_det", cert.jac_det.to_string()}}.dump(2) << "\n";
  else
    out << "automorphism: ok\n  dimension n = " << in.n() << "\n  det J(sigma) = " << cert.jac_det.to_string()
        << "\n  sigma o sigma_inv = sigma_inv o sigma = identity\n";
  return kOk;
}

int cmd_embed(const std::string& path, const Flags& f, std::ostream& out) {
  ProblemInstance in = load_instance(path);
  apply(f, in.config);
  check_instance_shape(in);
  auto aut = exactalg::validate_automorphism(in.sigma, in.sigma_inv);
  const SolverConfig& c = in.config;
  auto cert = c.prime_override
                  ? embedding::certify_prime(in, aut.jac_det, *c.prime_override, in.congruence, c.precision)
                  : embedding::select_prime(in, aut.jac_det, {c.min_prime, c.max_prime, in.congruence}, c.precision);
  const auto digits = embedding::padic_digits(cert.theta_image, cert.p, cert.N);
  if (f.machine) {
    json checks = json::array();
    for (const auto& ch : cert.checks) checks.push_back({{"name", ch.name}, {"detail", ch.detail}});
    out << json{{"p", cert.p}, {"N", cert.N}, {"root_mod_p", exactalg::to_string(cert.root_mod_p)},
                {"theta_image", exactalg::to_string(cert.theta_image)}, {"digits", digits}, {"checks", checks}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "p=" << cert.p << "\n";
  out << "theta -> " << exactalg::to_string(cert.theta_image) << " mod " << cert.p << "^" << cert.N << "\n";
  out << "digits (least significant first):";
  for (auto d : digits) out << ' ' << d;
  out << "\n";
  for (const auto& ch : cert.checks) out << "check " << ch.name << ": " << ch.detail << "\n";
  return kOk;
}

int cmd_arc(const std::string& path, const Flags& f, std::ostream& out) {
  ProblemInstance in = load_instance(path);
  apply(f, in.config);
  check_instance_shape(in);
  auto aut = exactalg::validate_automorphism(in.sigma, in.sigma_inv);
  decide::Prepared pr = decide::prepare(in, aut, in.config.prime_override.value_or(0), in.config);
  const unsigned long j = pr.period.j;
  if (f.class_index >= j) fail(ErrorCode::InvalidArgument, "class index must be below j = " + std::to_string(j));
  const long K = in.config.terms;
  const auto& ctx = pr.emb.ctx;
  const dynamics::Point start =
      dynamics::orbit_values(pr.emb.sigma, 1, pr.emb.q, static_cast<long>(f.class_index), ctx.modulus()).values.back();
  const dynamics::OrbitTable table = dynamics::orbit_values(pr.emb.sigma, j, start, K, ctx.modulus());
  dynamics::ExactOrbit exact(aut.forward, aut.inverse, in.q);
  auto pts = exact.sweep(static_cast<long>(f.class_index), static_cast<long>(j), K + 1);
  const bool have = pts.size() == static_cast<std::size_t>(K + 1);
  arc::ArcBundle b = arc::build_arc_bundle(table, f.class_index, ctx, have ? &pts : nullptr, pr.cert.theta_image);
  for (const auto& series : b.series) arc::certify_arc_valuations(series);
  if (f.machine) {
    json coords = json::array();
    for (const auto& series : b.series) {
      json rows = json::array();
      for (long k = 0; k <= series.K(); ++k)
        rows.push_back({{"k", k},
                        {"valuation", series.valuation(k).to_string()},
                        {"residue", exactalg::to_string(series.coeffs()[static_cast<std::size_t>(k)].residue)}});
      coords.push_back(rows);
    }
    out << json{{"p", ctx.p()}, {"N", ctx.N()}, {"j", j}, {"class", f.class_index}, {"coordinates", coords}}.dump(2)
        << "\n";
    return kOk;
  }
  out << "p=" << ctx.p() << " N=" << ctx.N() << " j=" << j << " (d=" << pr.period.d << ", e=" << pr.period.e
      << ") class " << f.class_index << "\n";
  out << "valuation law v(b_k) >= floor(k/2) + 1: verified for k <= " << K << "\n";
  for (std::size_t c = 0; c < b.series.size(); ++c) out << "coordinate " << c << ":\n" << b.series[c].dump();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbit intersections of polynomial automorphisms with subvarieties, decided p-adically"};
  app.require_subcommand(1);
  Flags f;
  std::string path, coeffs, initial;

  auto* dec = app.add_subcommand("decide", "compute {m : sigma^m(q) in X} with certificates");
  dec->add_option("instance", path, "instance file (JSON)")->required();
  add_pipeline_flags(dec, f);

  auto* rec = app.add_subcommand("sml", "zero set over m >= 0 of a linear recurrence");
  rec->add_option("coeffs", coeffs, "a_1 .. a_r as rationals, space separated")->required();
  rec->add_option("initial", initial, "f(0) .. f(r-1), space separated")->required();
  add_pipeline_flags(rec, f);

  auto* val = app.add_subcommand("validate", "check that sigma_inv inverts sigma");
  val->add_option("instance", path, "instance file (JSON)")->required();
  val->add_flag("--machine", f.machine, "print JSON");

  auto* emb = app.add_subcommand("embed", "select a prime and embed the field into Z_p");
  emb->add_option("instance", path, "instance file (JSON)")->required();
  add_pipeline_flags(emb, f);

  auto* arc = app.add_subcommand("arc", "Mahler coefficients of the analytic arc of one residue class");
  arc->add_option("instance", path, "instance file (JSON)")->required();
  arc->add_option("--class", f.class_index, "residue class i (mod j)");
  add_pipeline_flags(arc, f);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (dec->parsed()) return cmd_decide(path, f, out, err);
    if (rec->parsed()) return cmd_sml(coeffs, initial, f, out);
    if (val->parsed()) return cmd_validate(path, f, out);
    if (emb->parsed()) return cmd_embed(path, f, out);
    if (arc->parsed()) return cmd_arc(path, f, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace dynsml::cli
