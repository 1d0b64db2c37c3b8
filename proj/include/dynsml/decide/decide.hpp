#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynsml/decide/instance.hpp"
#include "dynsml/dynamics/dynamics.hpp"
#include "dynsml/embedding/embedding.hpp"
#include "dynsml/strassman/strassman.hpp"

namespace dynsml::decide {

using strassman::BoundResult;
using strassman::ZeroAnalysis;

// Analysis of the residue class i (mod j): the orbit points sigma^(i + j*m).
struct ClassReport {
  unsigned long index = 0;
  ZeroAnalysis analysis;
  std::vector<BoundResult> generator_bounds;  // one per variety generator
  bool operator==(const ClassReport&) const = default;
};

// {m in Z : sigma^m(q) in X} = union of the classes c + modulus*Z for c in
// full_classes, plus the finite set sporadic.
struct ProgressionSet {
  unsigned long modulus = 1;
  std::vector<unsigned long> full_classes;
  std::vector<long> sporadic;
  std::vector<ClassReport> class_reports;
  embedding::EmbeddingCert embedding;
  dynamics::PeriodCertificate period;
  long precision = 0;     // N used
  long terms = 0;         // K used
  long search_bound = 0;  // M used
  std::vector<unsigned long> primes_tried;
  bool operator==(const ProgressionSet&) const = default;

  // Every finite class certified complete.
  bool complete() const;
  bool contains(long m) const;
};

struct Normalized {
  unsigned long modulus = 1;
  std::vector<unsigned long> full_classes;
  std::vector<long> sporadic;
  bool operator==(const Normalized&) const = default;
};

// full[i] tells whether class i (mod j) is entirely in the set. The result
// uses the smallest period of that indicator.
Normalized normalize_progressions(const std::vector<bool>& full, unsigned long j, std::vector<long> sporadic);

enum class Density { NotDense, NoObstructionFromThisX };

struct DensityFlag {
  Density flag = Density::NoObstructionFromThisX;
  std::string witness;
  bool operator==(const DensityFlag&) const = default;
};

DensityFlag density_flag(const ProgressionSet& result);
std::string to_string(Density d);
std::optional<Density> density_from_string(const std::string& s);

// Escalation after Inconclusive or PrecisionExhausted: attempt 0 doubles N,
// attempt 1 doubles K, later attempts give up (nullopt). Other failures are
// never retried.
std::optional<SolverConfig> retry_policy(ErrorCode failure, const SolverConfig& config, int attempt);

// Everything up to the period certificate for one prime.
struct Prepared {
  exactalg::AutomorphismCert aut;
  embedding::EmbeddingCert cert;
  embedding::EmbeddedInstance emb;
  dynamics::PeriodCertificate period;
};

// p = 0 selects the smallest qualifying prime >= min_prime.
Prepared prepare(const ProblemInstance& in, const exactalg::AutomorphismCert& aut, unsigned long p,
                 const SolverConfig& config);

// The full decision procedure, with prime escalation and the retry policy.
ProgressionSet decide(const ProblemInstance& in);

// One run at a fixed prime and configuration (no retries).
ProgressionSet decide_at_prime(const ProblemInstance& in, const exactalg::AutomorphismCert& aut, unsigned long p,
                               const SolverConfig& config);

// Re-checks the embedding, period, sporadic points (exact), per-class bounds
// and the partition. Returns a description of the first failure.
std::optional<std::string> verify_certificates(const ProblemInstance& in, const ProgressionSet& result);

}  // namespace dynsml::decide
