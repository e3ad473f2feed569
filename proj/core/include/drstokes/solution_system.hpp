#pragma once

#include <string>
#include <vector>

#include "drstokes/rewrite.hpp"
#include "drstokes/stokes_blocks.hpp"

namespace drstokes {

enum class DerivationStatus { Reduced, Stuck };

struct DerivedIdentity {
  std::string name;
  /// Human-readable statement of the target, e.g. "ds0 d0 u0 = 0".
  std::string statement;
  DerivationStatus status = DerivationStatus::Stuck;
  /// Non-empty when the printed derivation in the source text differs from
  /// the identity actually verified.
  std::string note;
  /// First non-reducing residual, for STUCK records.
  std::string residual;
};

/// Treats the rows of S u = 0 (abstract M, Mt) as symbolic equations in
/// unknowns u_q..u_0 and checks that the consequences used for regularity
/// (third-order closed forms, fourth-order systems, harmonic lower
/// components) follow by applying d / ds and rewriting.
std::vector<DerivedIdentity> verify_solution_system(int n, int q, int j0, const RewriteOptions& opts = {});

std::string to_string(DerivationStatus s);

}  // namespace drstokes
