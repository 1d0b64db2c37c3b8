#include "dynsml/strassman/strassman.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "dynsml/error.hpp"

namespace dynsml::strassman {

namespace {

using padic::PadicContext;
using padic::ValBound;

Integer pow_p(unsigned long p, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
  return r;
}

void reduce(Integer& z, const Integer& m) { mpz_mod(z.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t()); }

long valuation(const Integer& z, unsigned long p, long prec) { return padic::valuation_capped(z, p, prec); }

// Coefficients of a(c + p^r x) mod m.
std::vector<Integer> shifted(const std::vector<Integer>& a, const Integer& c, long r, unsigned long p,
                             const Integer& m) {
  std::vector<Integer> b = a;
  const std::size_t J = b.size();
  for (std::size_t i = 0; i + 1 < J; ++i)
    for (std::size_t k = J - 1; k-- > i;) {
      b[k] += c * b[k + 1];
      reduce(b[k], m);
    }
  const Integer scale = pow_p(p, r);
  Integer s = 1;
  for (std::size_t k = 0; k < J; ++k) {
    b[k] *= s;
    reduce(b[k], m);
    s *= scale;
    reduce(s, m);
  }
  return b;
}

Integer horner(const std::vector<Integer>& a, const Integer& z, const Integer& m) {
  Integer acc = 0;
  for (std::size_t j = a.size(); j-- > 0;) {
    acc = acc * z + a[j];
    reduce(acc, m);
  }
  return acc;
}

struct LocalBound {
  bool known = false;  // some coefficient has a certain valuation
  long vstar = 0;
  long count = 0;
};

LocalBound local_bound(const std::vector<Integer>& g, unsigned long p, long prec) {
  LocalBound lb;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g[k] == 0) continue;
    const long v = valuation(g[k], p, prec);
    if (!lb.known || v < lb.vstar) {
      lb.known = true;
      lb.vstar = v;
      lb.count = static_cast<long>(k);
    } else if (v == lb.vstar) {
      lb.count = static_cast<long>(k);
    }
  }
  return lb;
}

}  // namespace

bool RootClass::contains(const Integer& z, unsigned long p) const {
  Integer d = z - center;
  return mpz_divisible_p(d.get_mpz_t(), pow_p(p, depth).get_mpz_t()) != 0;
}

BoundResult strassman_bound(const PowerSeriesTrunc& series) {
  const long prec = series.precision();
  BoundResult r;
  r.terms = series.source_terms;
  r.precision = prec;
  bool any = false;
  for (std::size_t j = 0; j < series.coeffs.size(); ++j) {
    const ValBound v = series.ctx.valuation(series.coeffs[j]);
    if (!v.is_exact()) continue;
    if (!any || v.v < r.min_val) {
      any = true;
      r.min_val = v.v;
      r.bound = static_cast<long>(j);
    } else if (v.v == r.min_val) {
      r.bound = static_cast<long>(j);
    }
  }
  if (!any) {
    if (series.tail_valuation_bound >= prec) {
      r.verdict = Verdict::IdenticallyZeroAtPrecision;
      return r;
    }
    fail(ErrorCode::Inconclusive, "all computed coefficients vanish but the tail bound is weaker than the precision");
  }
  if (r.min_val >= series.tail_valuation_bound)
    fail(ErrorCode::Inconclusive, "minimal coefficient valuation " + std::to_string(r.min_val) +
                                      " is not below the tail bound " +
                                      std::to_string(series.tail_valuation_bound) + "; raise K or N");
  return r;
}

std::vector<RootClass> isolate_roots(const PowerSeriesTrunc& series, long max_depth) {
  const unsigned long p = series.ctx.p();
  const long prec = series.precision();
  const Integer& m = series.ctx.modulus();
  std::vector<Integer> a;
  for (const auto& c : series.coeffs) a.push_back(c.residue);
  max_depth = std::max(0l, std::min(max_depth, prec));

  std::vector<RootClass> out;
  struct Item {
    Integer center;
    long depth;
    long parent_count;
  };
  std::deque<Item> queue{{Integer(0), 0, LONG_MAX}};
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    const std::vector<Integer> g = shifted(a, it.center, it.depth, p, m);
    const LocalBound lb = local_bound(g, p, prec);
    if (!lb.known) {
      // Nothing is visible at this precision: no bound beyond the parent's.
      out.push_back({it.center, it.depth, false, it.parent_count});
      continue;
    }
    if (lb.count == 0) continue;
    if (lb.count == 1) {
      // Unique zero: the next digit is the one t with v(g(t)) > v*.
      Integer center = it.center;
      long depth = it.depth, vstar = lb.vstar;
      while (depth < max_depth && vstar < prec) {
        const Integer step = pow_p(p, depth);
        long hits = 0;
        unsigned long digit = 0;
        for (unsigned long t = 0; t < p; ++t) {
          const Integer val = horner(a, center + step * t, m);
          if (valuation(val, p, prec) > vstar) {
            ++hits;
            digit = t;
          }
        }
        if (hits != 1) break;
        center += step * digit;
        reduce(center, m);
        ++depth;
        ++vstar;
      }
      out.push_back({center, depth, true, 1});
      continue;
    }
    if (it.depth >= max_depth) {
      out.push_back({it.center, it.depth, false, lb.count});
      continue;
    }
    const Integer step = pow_p(p, it.depth);
    for (unsigned long t = 0; t < p; ++t) queue.push_back({it.center + step * t, it.depth + 1, lb.count});
  }
  std::sort(out.begin(), out.end(), [](const RootClass& x, const RootClass& y) {
    return x.depth != y.depth ? x.depth < y.depth : x.center < y.center;
  });
  return out;
}

ClassPlan plan_class(const std::vector<GeneratorSeries>& gens, const SearchParams& params) {
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "no generator series supplied");
  ClassPlan plan;
  const auto& ctx = gens.front().mahler.ctx();
  bool all_zero = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& gs = gens[i];
    if (gs.mahler.all_zero()) continue;
    all_zero = false;
    PowerSeriesTrunc ps = gs.power ? *gs.power : arc::mahler_to_power_series(gs.mahler);
    BoundResult b = strassman_bound(ps);
    if (b.verdict == Verdict::IdenticallyZeroAtPrecision)
      fail(ErrorCode::Inconclusive, "power series vanishes at precision " + std::to_string(ps.precision()) +
                                        " although its Mahler series does not; raise N");
    if (plan.chosen < 0 || b.bound < plan.bound.bound) {
      plan.chosen = static_cast<long>(i);
      plan.bound = b;
    }
  }
  if (all_zero) {
    plan.verdict = Verdict::IdenticallyZeroAtPrecision;
    plan.bound = BoundResult{Verdict::IdenticallyZeroAtPrecision, 0, 0, gens.front().mahler.K(), ctx.N()};
    for (long m = -params.spot_radius; m <= params.spot_radius; ++m) plan.window.push_back(m);
    return plan;
  }
  const auto& chosen = gens[static_cast<std::size_t>(plan.chosen)];
  PowerSeriesTrunc ps = chosen.power ? *chosen.power : arc::mahler_to_power_series(chosen.mahler);
  const long depth = params.max_depth > 0 ? params.max_depth : ctx.N() / 2 + 1;
  plan.roots = isolate_roots(ps, depth);
  long total = 0;
  for (const auto& r : plan.roots) total += r.count;
  if (total > plan.bound.bound)
    fail(ErrorCode::InternalContradiction, "root classes hold more zeros than the Strassman bound");

  std::set<long> cand;
  const long M = params.search_bound;
  for (const auto& r : plan.roots) {
    const Integer step = pow_p(ctx.p(), r.depth);
    // smallest m >= -M with m = center (mod step)
    Integer first = r.center - Integer(-M);
    mpz_mod(first.get_mpz_t(), first.get_mpz_t(), step.get_mpz_t());
    first += Integer(-M);
    for (Integer z = first; z <= M; z += step) cand.insert(z.get_si());
  }
  plan.candidates.assign(cand.begin(), cand.end());
  for (long m = -params.window; m <= params.window; ++m)
    if (!cand.count(m)) plan.window.push_back(m);
  return plan;
}

ZeroAnalysis finalize_class(const ClassPlan& plan, const std::map<long, std::optional<bool>>& truth,
                            unsigned long p) {
  auto lookup = [&](long m) -> std::optional<bool> {
    auto it = truth.find(m);
    if (it == truth.end()) fail(ErrorCode::InternalContradiction, "exact evaluation missing for index " + std::to_string(m));
    return it->second;
  };
  ZeroAnalysis z;
  z.verdict = plan.verdict;
  z.bound = plan.bound.bound;
  z.chosen = plan.chosen;
  z.terms = plan.bound.terms;
  z.precision = plan.bound.precision;
  z.roots = plan.roots;
  if (plan.verdict == Verdict::IdenticallyZeroAtPrecision) {
    for (long m : plan.window) {
      auto t = lookup(m);
      if (!t) {
        ++z.unknown_checks;
      } else if (*t) {
        ++z.exact_checks;
      } else {
        fail(ErrorCode::InternalContradiction,
             "class looks identically zero at precision but exact evaluation at " + std::to_string(m) +
                 " is nonzero; raise N",
             m);
      }
    }
    z.completeness = Completeness::Certified;
    return z;
  }
  bool candidates_known = true;
  for (long m : plan.candidates) {
    auto t = lookup(m);
    if (!t) {
      ++z.unknown_checks;
      candidates_known = false;
      continue;
    }
    ++z.exact_checks;
    if (*t) z.zeros.push_back(m);
  }
  for (long m : plan.window) {
    auto t = lookup(m);
    if (!t) continue;
    ++z.exact_checks;
    if (*t)
      fail(ErrorCode::InternalContradiction, "exact zero at " + std::to_string(m) + " lies outside every root class", m);
  }
  if (static_cast<long>(z.zeros.size()) > z.bound)
    fail(ErrorCode::InternalContradiction, "more integer zeros than the Strassman bound allows");
  bool all_matched = candidates_known;
  for (const auto& r : plan.roots) {
    long hits = 0;
    for (long m : z.zeros) hits += r.contains(Integer(m), p) ? 1 : 0;
    if (r.simple && hits > 1) fail(ErrorCode::InternalContradiction, "two integer zeros in a class with one root");
    if (!r.simple || hits != 1) all_matched = false;
  }
  z.completeness = all_matched ? Completeness::Certified : Completeness::SearchLimited;
  return z;
}

ZeroAnalysis classify_zero_set(const std::vector<GeneratorSeries>& gens,
                               const std::function<std::optional<bool>(long)>& exact_evaluator,
                               const SearchParams& params) {
  ClassPlan plan = plan_class(gens, params);
  std::map<long, std::optional<bool>> truth;
  for (long m : plan.candidates) truth[m] = exact_evaluator(m);
  for (long m : plan.window) truth[m] = exact_evaluator(m);
  return finalize_class(plan, truth, gens.front().mahler.ctx().p());
}

std::string to_string(Verdict v) {
  return v == Verdict::BoundedZeros ? "BoundedZeros" : "IdenticallyZeroAtPrecision";
}

std::string to_string(Completeness c) { return c == Completeness::Certified ? "Certified" : "SearchLimited"; }

}  // namespace dynsml::strassman
