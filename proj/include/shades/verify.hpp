#pragma once

// Named claims checked exhaustively (or by seeded sampling) over a finite
// parameter range. CONFIRMED is always scoped to the range that was run.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shades/extremal.hpp"
#include "shades/families.hpp"

namespace shades {

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
  int n_min = 1;
  std::optional<int> n_max;  // per-claim default when unset
  std::optional<int> k_max;  // per-claim default when unset
  int samples = 1000;        // random families per m for lemma-1.2
  SearchBudget budget{4'000'000'000ULL, 3600.0, true};
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = 1;
  int parallelism = 1;
  bool timings = false;  // include per-report elapsed seconds (not reproducible)
};

struct ClaimInfo {
  std::string id;
  std::vector<std::string> param_names;
  std::string description;
};

const std::vector<ClaimInfo>& known_claims();
const ClaimInfo& claim_info(const std::string& id);  // throws std::invalid_argument

/// Reports for every tuple in range, sorted by tuple.
std::vector<VerificationReport> run_claim(const std::string& id, const RunConfig& config);

struct VerifySummary {
  std::size_t confirmed = 0, refuted = 0, budget_exceeded = 0;
};
VerifySummary summarize(const std::vector<VerificationReport>& reports);

void write_report(std::ostream& out, const VerificationReport& report, const RunConfig& config);
void write_summary(std::ostream& out, const VerifySummary& summary, const RunConfig& config);

}  // namespace shades
