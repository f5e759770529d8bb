#pragma once

// End-to-end verification of one configuration, and sweeps over N or n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roughcert/config.hpp"
#include "roughcert/estimates.hpp"
#include "roughcert/trignorms.hpp"

namespace roughcert {

struct CheckRecord {
  std::string name;
  bool passed = false;
  bool skipped = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;  // what `measured` is and how it is compared
};

/// Headline numbers of one run; NaN where a value was not computed.
struct ConstructionSummary {
  double N = 0.0;
  int n = 0;
  long long s = 0, t_start = 0, t_step = 0;
  double c, absD, margin, modular, luxemburg, sup_m, c7, c8, ratio_p4, slope_p4;
  ConstructionSummary();
};

struct ExponentFit {
  double p = 0.0;       // exponent actually measured (> 2)
  double target = 0.0;  // 1/2 - 1/p
  trignorms::NormFit fit;
};

struct VerificationReport {
  RunConfig config;
  ConstructionSummary summary;
  std::vector<CheckRecord> checks;
  bool aborted = false;
  std::string abort_stage;
  std::string abort_message;

  // Plot data, not serialized.
  std::optional<logkernel::KernelProfile> window_profile;
  std::vector<circle::Arc> guards;
  std::vector<ExponentFit> fits;

  const CheckRecord* find(const std::string& name) const;
  bool all_passed() const;  // every non-skipped check passed and not aborted
  /// 0 all non-skipped checks pass, 1 a check failed, 3 aborted.
  int exit_code() const;
};

/// Builds the construction for `cfg`, evaluates every check and returns the
/// report. Module errors abort the run: the report keeps the checks finished
/// so far, with `aborted` set and the failing stage named. Deterministic for
/// a fixed config, independent of cfg.jobs.
VerificationReport run_verify(const RunConfig& cfg);

/// Construction, summary and plot data only (no checks).
VerificationReport run_profile(const RunConfig& cfg);

enum class Axis { N, n };

/// One report per axis value, in input order. Needs at least two values;
/// in schedule mode only N can be swept. Points run concurrently on
/// cfg.jobs threads; a failing point yields an aborted report.
std::vector<VerificationReport> run_sweep(const RunConfig& cfg, Axis axis,
                                          const std::vector<double>& values);

}  // namespace roughcert

namespace roughcert {

struct OracleStats {
  std::size_t cases = 0;
  double max_rel_error = 0.0;
};

/// closed_form vs quadrature(1e-11) on `cases` pseudo-random (arc, xi) pairs
/// with log-uniform lengths in [1e-6, 0.3].
OracleStats quadrature_agreement(std::size_t cases, std::uint64_t seed);
/// series vs closed_form with log-uniform lengths in [1e-8, 1e-6].
OracleStats series_agreement(std::size_t cases, std::uint64_t seed);

/// Number of pseudo-random small-coefficient ArcFunctions on which
/// lemma_orlicz_check fails.
std::size_t lemma_failures(const orlicz::YoungFunction& yf, std::size_t count, std::uint64_t seed);

}  // namespace roughcert
