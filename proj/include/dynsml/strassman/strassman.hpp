#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dynsml/arc/arc.hpp"

namespace dynsml::strassman {

using arc::PowerSeriesTrunc;
using exactalg::Integer;

enum class Verdict { BoundedZeros, IdenticallyZeroAtPrecision };
enum class Completeness { Certified, SearchLimited };

struct BoundResult {
  Verdict verdict = Verdict::BoundedZeros;
  long bound = 0;      // B: at most B zeros in Z_p (BoundedZeros)
  long min_val = 0;    // v* attained at index B
  long terms = 0;      // K of the stamp
  long precision = 0;  // precision of the stamp
  bool operator==(const BoundResult&) const = default;
};

// Largest index attaining the minimal exact coefficient valuation. Returns
// IdenticallyZeroAtPrecision when every coefficient is 0 mod p^precision and
// the tail is no better known. Throws Inconclusive when the minimum is not
// separated from the tail bound.
BoundResult strassman_bound(const PowerSeriesTrunc& series);

// z = center (mod p^depth). `count` bounds the zeros in the class (with
// multiplicity); simple classes hold exactly one zero of Z_p.
struct RootClass {
  Integer center;
  long depth = 0;
  bool simple = false;
  long count = 0;
  bool operator==(const RootClass&) const = default;

  bool contains(const Integer& z, unsigned long p) const;
};

// Breadth-first refinement of Z_p into residue classes carrying zeros.
// Classes with one zero are followed digit by digit; several zeros split the
// class; classes still ambiguous at max_depth are returned unresolved.
std::vector<RootClass> isolate_roots(const PowerSeriesTrunc& series, long max_depth);

// One generator's data on a residue class.
struct GeneratorSeries {
  arc::MahlerSeries mahler;
  std::optional<PowerSeriesTrunc> power;  // absent when not needed (all-zero Mahler data)
};

struct ZeroAnalysis {
  Verdict verdict = Verdict::BoundedZeros;
  long bound = 0;           // B of the chosen generator
  long chosen = -1;         // index of that generator
  long terms = 0, precision = 0;
  std::vector<RootClass> roots;
  std::vector<long> zeros;  // integer zeros of the whole system found by exact search
  Completeness completeness = Completeness::SearchLimited;
  long exact_checks = 0;    // exact evaluations that agreed with the verdict
  long unknown_checks = 0;  // candidates whose exact value could not be computed
  bool operator==(const ZeroAnalysis&) const = default;
};

// Work plan of classify_zero_set: which integers need exact evaluation.
struct ClassPlan {
  Verdict verdict = Verdict::BoundedZeros;
  BoundResult bound;
  long chosen = -1;
  std::vector<RootClass> roots;
  std::vector<long> candidates;  // integers in surviving classes, |m| <= M
  std::vector<long> window;      // unpruned sanity window, or the spot checks
};

struct SearchParams {
  long search_bound = 1000;  // M
  long spot_radius = 50;     // M'
  long window = 8;
  long max_depth = 0;        // 0: N/2 + 1
};

ClassPlan plan_class(const std::vector<GeneratorSeries>& gens, const SearchParams& params);

// truth[m]: exact answer to "all generators vanish at m", nullopt when the
// exact value is out of reach. Throws InternalContradiction.
ZeroAnalysis finalize_class(const ClassPlan& plan, const std::map<long, std::optional<bool>>& truth,
                            unsigned long p);

ZeroAnalysis classify_zero_set(const std::vector<GeneratorSeries>& gens,
                               const std::function<std::optional<bool>(long)>& exact_evaluator,
                               const SearchParams& params);

std::string to_string(Verdict v);
std::string to_string(Completeness c);

}  // namespace dynsml::strassman
