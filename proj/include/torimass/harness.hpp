#pragma once

// Seeded instance generators and the verification suites (monotonicity,
// keyprop, comparison, domination, limit) with their JSON/CSV reports.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "torimass/json_io.hpp"
#include "torimass/plconvex.hpp"
#include "torimass/scalar.hpp"

namespace torimass {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "torimass/1";

std::uint64_t splitmix64(std::uint64_t x);
// Seed of case `index` in a suite run with `seed`.
std::uint64_t case_seed(std::uint64_t seed, std::size_t index);

struct GeneratorOptions {
  long slope_box = 3;
  long offset_box = 4;
  // Slopes confined to a hyperplane (a single point when n = 1), giving
  // zero-volume Newton polytopes.
  bool degenerate = false;
};

struct ComparablePair {
  PLConvexFunction<Rational> f;
  PLConvexFunction<Rational> g;
  SingularityOrder order;
};

// g random with k_g pieces; f carries all of g's slopes (fresh offsets) plus
// k_f - k_g extra slopes from a wider box, so P_g lies in P_f.
ComparablePair generate_comparable_pair(std::size_t n, std::size_t k_f, std::size_t k_g, std::uint64_t seed,
                                        const GeneratorOptions& options = {});

struct DominationTriple {
  PLConvexFunction<Rational> phi;
  PLConvexFunction<Rational> psi;
  PLConvexFunction<Rational> rho;
};

// phi carries the slopes of psi and rho plus extras. Unless `raw`, psi is
// shifted so that psi <= phi at every atom of MA(phi) with equality at one.
DominationTriple generate_domination_triple(std::size_t n, std::uint64_t seed, bool raw);

// A function whose Newton polytope is the box around P_f and P_g inflated by
// one; the common reference for the moment-integral chain.
PLConvexFunction<Rational> reference_function(const PLConvexFunction<Rational>& f,
                                              const PLConvexFunction<Rational>& g);

struct CaseResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string label;
  bool pass = false;
  bool skipped = false;
  std::string reason;
  std::vector<std::pair<std::string, std::string>> values;

  friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

struct VerificationReport {
  std::string suite;
  Profile profile = Profile::kRational;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::vector<CaseResult> cases;

  bool pass() const;
  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t skipped() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t cases = 0;  // 0 selects the suite default
  double tol = 0.02;
  Profile profile = Profile::kRational;
  std::size_t jobs = 1;
  std::size_t samples = 200000;
};

const std::vector<std::string>& suite_names();
std::size_t default_case_count(const std::string& suite);

// Throws InvalidInput for an unknown suite name.
VerificationReport run_suite(const std::string& suite, const SuiteConfig& config);

VerificationReport verify_monotonicity(const SuiteConfig& config);
VerificationReport verify_keyprop(const SuiteConfig& config);
VerificationReport verify_comparison_principle(const SuiteConfig& config);
VerificationReport verify_domination_principle(const SuiteConfig& config);
VerificationReport verify_limit(const SuiteConfig& config);

// Single-case checks, shared by the suites and usable on explicit inputs.
template <class S>
CaseResult monotonicity_case(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g);
template <class S>
CaseResult comparison_case(const PLConvexFunction<S>& phi, const PLConvexFunction<S>& psi);
template <class S>
CaseResult domination_case(const PLConvexFunction<S>& phi, const PLConvexFunction<S>& psi,
                           const PLConvexFunction<S>& rho);
template <class S>
CaseResult keyprop_case(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v, std::size_t big_n,
                        std::size_t samples, std::uint64_t seed, double tol);
template <class S>
CaseResult limit_case(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v);

// Report documents: {"schema", "pass", "suites": [...], "metadata": {...}}.
// The metadata block holds the only run-dependent fields.
Json report_body(const VerificationReport& report);
VerificationReport report_from_body(const Json& body);
Json report_document(const std::vector<VerificationReport>& reports, const Json& metadata);
std::vector<VerificationReport> reports_from_document(const Json& document);
// One row per (suite, case, key) with the same value strings as the JSON.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

#define TORIMASS_HARNESS_EXTERN(S)                                                                           \
  extern template CaseResult monotonicity_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&);      \
  extern template CaseResult comparison_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&);        \
  extern template CaseResult domination_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&,         \
                                             const PLConvexFunction<S>&);                                    \
  extern template CaseResult keyprop_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&, std::size_t, \
                                          std::size_t, std::uint64_t, double);                               \
  extern template CaseResult limit_case(const PLConvexFunction<S>&, const PLConvexFunction<S>&);

TORIMASS_HARNESS_EXTERN(Rational)
TORIMASS_HARNESS_EXTERN(double)
#undef TORIMASS_HARNESS_EXTERN

}  // namespace torimass
