#pragma once

#include <string>
#include <vector>

#include "drstokes/config.hpp"
#include "drstokes/verification_report.hpp"

namespace drstokes {

struct RunOptions {
  /// Run independent checks concurrently.
  bool parallel = false;
  /// Worker cap; 0 means hardware concurrency (or DRSTOKES_THREADS).
  int threads = 0;
};

/// Worker count: DRSTOKES_THREADS when set, else hardware concurrency,
/// capped by `requested` when positive.
int worker_count(int requested);

/// Symbolic checks: complex identities on random polynomial forms, the
/// rewrite rules, right / left / bilateral fundamental solutions, the defect
/// and its closed form, consequences of S u = 0 and the sign-flip controls.
/// A normalization that runs out of budget gives a STUCK record.
VerificationReport cmd_verify_algebra(const RunConfig& cfg, const RunOptions& opts = {});

/// Grid refinement suites (inversion, commutation, Stokes residual). Throws
/// ConfigError before any computation if a grid exceeds 256^3 nodes or the
/// levels do not double.
VerificationReport cmd_verify_kernels(const RunConfig& cfg, const RunOptions& opts = {});

/// One row of the reconstruction table.
struct ReconstructionRow {
  std::string solution;
  std::vector<double> point;
  /// "u1.2": tuple slot of degree 1, coefficient of dx_2 (1-based); "u0" for
  /// the scalar slot.
  std::string component;
  double reconstructed = 0;
  double reference = 0;
  double abs_err = 0;
};

/// Header: solution,point,component,reconstructed,reference,abs_err. The
/// point column holds space-separated coordinates; numbers use %.17g.
std::string to_csv(const std::vector<ReconstructionRow>& rows);
/// Throws FormatError on a malformed table.
std::vector<ReconstructionRow> rows_from_csv(const std::string& text);

/// Reconstruction of the analytic solutions on the configured domain (q = 1
/// only; other q throw UnsupportedConfiguration). One record per solution
/// kind plus a refinement record; the table is written when `rows` is given.
VerificationReport cmd_reconstruct(const RunConfig& cfg, std::vector<ReconstructionRow>* rows = nullptr,
                                   const RunOptions& opts = {});

/// Merges JSON report texts.
VerificationReport cmd_report_merge(const std::vector<std::string>& report_texts);

/// Config echo stored in reports.
std::map<std::string, std::string> config_echo(const RunConfig& cfg);

}  // namespace drstokes
