#include "dynsml/decide/decide.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include "dynsml/arc/arc.hpp"

namespace dynsml::decide {

using exactalg::AlgNum;
using exactalg::Integer;
using padic::PadicContext;
using strassman::Completeness;
using strassman::Verdict;

// Exact Mahler data is computed only when the exact orbit prefix is short.
constexpr unsigned long kExactPrefixLimit = 8192;

bool ProgressionSet::complete() const {
  return std::all_of(class_reports.begin(), class_reports.end(),
                     [](const ClassReport& r) { return r.analysis.completeness == Completeness::Certified; });
}

bool ProgressionSet::contains(long m) const {
  const long j = static_cast<long>(modulus);
  const auto r = static_cast<unsigned long>(((m % j) + j) % j);
  if (std::binary_search(full_classes.begin(), full_classes.end(), r)) return true;
  return std::binary_search(sporadic.begin(), sporadic.end(), m);
}

Normalized normalize_progressions(const std::vector<bool>& full, unsigned long j, std::vector<long> sporadic) {
  if (j == 0 || full.size() != j) fail(ErrorCode::InvalidArgument, "class indicator must have length j");
  Normalized out;
  for (unsigned long d = 1; d <= j; ++d) {
    if (j % d) continue;
    bool periodic = true;
    for (unsigned long i = d; i < j && periodic; ++i) periodic = full[i] == full[i % d];
    if (!periodic) continue;
    out.modulus = d;
    for (unsigned long i = 0; i < d; ++i)
      if (full[i]) out.full_classes.push_back(i);
    break;
  }
  std::sort(sporadic.begin(), sporadic.end());
  sporadic.erase(std::unique(sporadic.begin(), sporadic.end()), sporadic.end());
  const long jl = static_cast<long>(j);
  for (long m : sporadic)
    if (full[static_cast<std::size_t>(((m % jl) + jl) % jl)])
      fail(ErrorCode::InternalContradiction, "sporadic zero " + std::to_string(m) + " lies in a full class");
  out.sporadic = std::move(sporadic);
  return out;
}

std::string to_string(Density d) { return d == Density::NotDense ? "NotDense" : "NoObstructionFromThisX"; }

std::optional<Density> density_from_string(const std::string& s) {
  if (s == "NotDense") return Density::NotDense;
  if (s == "NoObstructionFromThisX") return Density::NoObstructionFromThisX;
  return std::nullopt;
}

DensityFlag density_flag(const ProgressionSet& r) {
  if (r.full_classes.empty())
    return {Density::NoObstructionFromThisX, "only finitely many orbit points lie on X"};
  const unsigned long c = r.full_classes.front();
  return {Density::NotDense, "sigma^(" + std::to_string(c) + " + " + std::to_string(r.modulus) +
                                 "t)(q) in X for all t, so the orbit lies in the union of sigma^r(X), 0 <= r < " +
                                 std::to_string(r.modulus)};
}

std::optional<SolverConfig> retry_policy(ErrorCode failure, const SolverConfig& config, int attempt) {
  if (failure != ErrorCode::Inconclusive && failure != ErrorCode::PrecisionExhausted) return std::nullopt;
  SolverConfig next = config;
  if (attempt == 0) {
    next.precision *= 2;
    return next;
  }
  if (attempt == 1) {
    next.terms *= 2;
    return next;
  }
  return std::nullopt;
}

Prepared prepare(const ProblemInstance& in, const exactalg::AutomorphismCert& aut, unsigned long p,
                 const SolverConfig& config) {
  const long N = config.precision;
  embedding::EmbeddingCert cert =
      p ? embedding::certify_prime(in, aut.jac_det, p, in.congruence, N)
        : embedding::select_prime(in, aut.jac_det, {config.min_prime, config.max_prime, in.congruence}, N);
  PadicContext ctx(cert.p, N);
  embedding::EmbeddedInstance emb = embedding::embed_problem(in, aut, cert, ctx);
  dynamics::PeriodCertificate period = dynamics::find_period(emb);
  return Prepared{aut, std::move(cert), std::move(emb), std::move(period)};
}

namespace {

bool all_vanish(const std::vector<exactalg::MultiPoly>& variety, const std::vector<AlgNum>& pt) {
  return std::all_of(variety.begin(), variety.end(), [&](const auto& g) { return g.evaluate(pt).is_zero(); });
}

template <class F>
void for_each_class(unsigned long count, unsigned threads, F&& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<unsigned long> next{0};
  auto worker = [&] {
    for (unsigned long i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned k = static_cast<unsigned>(std::min<unsigned long>(threads, count));
  if (k <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ProgressionSet decide_at_prime(const ProblemInstance& in, const exactalg::AutomorphismCert& aut, unsigned long p,
                               const SolverConfig& config) {
  Prepared pr = prepare(in, aut, p, config);
  const PadicContext& ctx = pr.emb.ctx;
  const unsigned long j = pr.period.j;
  const long K = config.terms;
  const auto span = static_cast<std::size_t>(j) * static_cast<std::size_t>(K + 1);

  std::vector<dynamics::Point> orbit{pr.emb.q};
  orbit.reserve(span);
  while (orbit.size() < span) orbit.push_back(pr.emb.sigma.evaluate(orbit.back(), ctx.modulus()));

  const bool exact_prefix = span <= kExactPrefixLimit;
  dynamics::ExactOrbit exact(aut.forward, aut.inverse, in.q);
  const strassman::SearchParams params{config.search_bound, config.spot_radius, 8, config.max_depth};

  std::vector<ClassReport> reports(j);
  for_each_class(j, config.threads, [&](unsigned long i) {
    dynamics::OrbitTable table{j, orbit[i], {}};
    for (long m = 0; m <= K; ++m) table.values.push_back(orbit[i + j * static_cast<std::size_t>(m)]);
    std::vector<std::vector<AlgNum>> pts;
    if (exact_prefix) pts = exact.sweep(static_cast<long>(i), static_cast<long>(j), K + 1);
    const bool have_exact = pts.size() == static_cast<std::size_t>(K + 1);

    arc::ArcBundle bundle =
        arc::build_arc_bundle(table, i, ctx, have_exact ? &pts : nullptr, pr.cert.theta_image);
    for (const auto& s : bundle.series) arc::certify_arc_valuations(s);

    ClassReport rep;
    rep.index = i;
    std::vector<strassman::GeneratorSeries> gens;
    for (std::size_t l = 0; l < in.variety.size(); ++l) {
      std::vector<AlgNum> vals;
      if (have_exact)
        for (const auto& pt : pts) vals.push_back(in.variety[l].evaluate(pt));
      arc::MahlerSeries ms = arc::compose_with_poly(pr.emb.variety[l], bundle, ctx, have_exact ? &vals : nullptr,
                                                   pr.cert.theta_image);
      arc::certify_arc_valuations(ms);
      if (ms.all_zero()) {
        rep.generator_bounds.push_back(BoundResult{Verdict::IdenticallyZeroAtPrecision, 0, 0, K, ctx.N()});
        gens.push_back({std::move(ms), std::nullopt});
        continue;
      }
      arc::PowerSeriesTrunc ps = arc::mahler_to_power_series(ms);
      rep.generator_bounds.push_back(strassman::strassman_bound(ps));
      gens.push_back({std::move(ms), std::move(ps)});
    }

    strassman::ClassPlan plan = strassman::plan_class(gens, params);
    std::map<long, std::optional<bool>> truth;
    auto evaluate = [&](long mh) -> std::optional<bool> {
      for (const auto& g : gens) {
        if (g.mahler.all_zero()) continue;
        arc::Approx a = g.mahler.evaluate(Integer(mh));
        if (a.precision < 1) continue;
        Integer pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), ctx.p(), static_cast<unsigned long>(a.precision));
        if (a.value.residue % pk != 0) return false;
      }
      auto pt = exact.at(static_cast<long>(i) + static_cast<long>(j) * mh);
      if (!pt) return std::nullopt;
      return all_vanish(in.variety, *pt);
    };
    for (long mh : plan.candidates) truth.emplace(mh, evaluate(mh));
    for (long mh : plan.window) truth.emplace(mh, evaluate(mh));
    rep.analysis = strassman::finalize_class(plan, truth, ctx.p());
    reports[i] = std::move(rep);
  });

  std::vector<bool> full(j);
  std::vector<long> sporadic;
  for (unsigned long i = 0; i < j; ++i) {
    const auto& a = reports[i].analysis;
    full[i] = a.verdict == Verdict::IdenticallyZeroAtPrecision;
    if (!full[i])
      for (long z : a.zeros) sporadic.push_back(static_cast<long>(i) + static_cast<long>(j) * z);
  }
  Normalized norm = normalize_progressions(full, j, std::move(sporadic));

  ProgressionSet out;
  out.modulus = norm.modulus;
  out.full_classes = std::move(norm.full_classes);
  out.sporadic = std::move(norm.sporadic);
  out.class_reports = std::move(reports);
  out.embedding = std::move(pr.cert);
  out.period = std::move(pr.period);
  out.precision = config.precision;
  out.terms = K;
  out.search_bound = config.search_bound;
  out.primes_tried = {out.embedding.p};
  return out;
}

namespace {

ProgressionSet escalate(const ProblemInstance& in, const exactalg::AutomorphismCert& aut, const SolverConfig& cfg) {
  if (cfg.prime_override) return decide_at_prime(in, aut, *cfg.prime_override, cfg);
  ProgressionSet first = decide_at_prime(in, aut, 0, cfg);
  std::vector<unsigned long> tried{first.embedding.p};
  std::optional<ProgressionSet> chosen;
  if (first.complete()) chosen = std::move(first);
  SolverConfig next = cfg;
  for (int a = 1; a < cfg.prime_attempts && !chosen; ++a) {
    next.min_prime = tried.back() + 1;
    if (next.min_prime > next.max_prime) break;
    try {
      ProgressionSet r = decide_at_prime(in, aut, 0, next);
      tried.push_back(r.embedding.p);
      if (r.complete()) chosen = std::move(r);
    } catch (const Error&) {
      // The first prime's answer stands; later primes only try to certify it.
      break;
    }
  }
  ProgressionSet out = chosen ? std::move(*chosen) : std::move(first);
  out.primes_tried = std::move(tried);
  return out;
}

}  // namespace

ProgressionSet decide(const ProblemInstance& in) {
  check_instance_shape(in);
  if (in.config.prime_override) PadicContext(*in.config.prime_override, in.config.precision);
  const exactalg::AutomorphismCert aut = exactalg::validate_automorphism(in.sigma, in.sigma_inv);
  SolverConfig cfg = in.config;
  for (int attempt = 0;; ++attempt) {
    try {
      return escalate(in, aut, cfg);
    } catch (const Error& e) {
      auto next = retry_policy(e.code(), cfg, attempt);
      if (!next)
        fail(e.code(),
             std::string(e.what()) + " [after " + std::to_string(attempt) + " retries; N=" +
                 std::to_string(cfg.precision) + ", K=" + std::to_string(cfg.terms) + "]",
             e.detail());
      cfg = *next;
    }
  }
}

std::optional<std::string> verify_certificates(const ProblemInstance& in, const ProgressionSet& r) {
  const exactalg::AutomorphismCert aut = exactalg::validate_automorphism(in.sigma, in.sigma_inv);
  if (r.embedding.N != r.precision) return "embedding precision differs from the report precision";
  if (auto bad = embedding::verify_embedding(in, aut.jac_det, r.embedding)) return "embedding check failed: " + *bad;
  PadicContext ctx(r.embedding.p, r.precision);
  embedding::EmbeddedInstance emb = embedding::embed_problem(in, aut, r.embedding, ctx);
  if (!dynamics::verify_period(emb, r.period)) return "period certificate failed";
  const unsigned long j = r.period.j;
  if (r.class_reports.size() != j) return "wrong number of class reports";
  std::vector<bool> full(j);
  std::vector<long> sporadic;
  for (unsigned long i = 0; i < j; ++i) {
    const ClassReport& c = r.class_reports[i];
    if (c.index != i) return "class reports out of order";
    if (c.generator_bounds.size() != in.variety.size()) return "missing generator bounds";
    const auto& a = c.analysis;
    full[i] = a.verdict == Verdict::IdenticallyZeroAtPrecision;
    if (full[i]) {
      if (std::any_of(c.generator_bounds.begin(), c.generator_bounds.end(),
                      [](const BoundResult& b) { return b.verdict != Verdict::IdenticallyZeroAtPrecision; }))
        return "class " + std::to_string(i) + " is full but a generator has a finite bound";
      continue;
    }
    if (a.chosen < 0 || static_cast<std::size_t>(a.chosen) >= c.generator_bounds.size() ||
        c.generator_bounds[static_cast<std::size_t>(a.chosen)].bound != a.bound)
      return "class " + std::to_string(i) + " cites a bound it does not carry";
    if (static_cast<long>(a.zeros.size()) > a.bound) return "class " + std::to_string(i) + " exceeds its bound";
    for (long z : a.zeros) {
      long hits = 0;
      for (const auto& rc : a.roots) hits += rc.contains(Integer(z), r.embedding.p);
      if (hits != 1) return "zero " + std::to_string(z) + " of class " + std::to_string(i) + " not in one root class";
      sporadic.push_back(static_cast<long>(i) + static_cast<long>(j) * z);
    }
  }
  Normalized norm;
  try {
    norm = normalize_progressions(full, j, sporadic);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  if (norm.modulus != r.modulus || norm.full_classes != r.full_classes || norm.sporadic != r.sporadic)
    return "answer does not match the class reports";
  for (long m : r.sporadic)
    if (!all_vanish(in.variety, dynamics::exact_orbit_point(aut, in.q, m)))
      return "sporadic point " + std::to_string(m) + " is not on X";
  return std::nullopt;
}

}  // namespace dynsml::decide
