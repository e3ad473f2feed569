#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drstokes/bump.hpp"
#include "drstokes/stokes_assembly.hpp"

namespace drstokes {

/// Right-hand side given symbolically so it can be resampled on every grid:
/// one bump form per tuple slot, degrees q, q-1, ..., 0.
struct BumpTuple {
  int n = 2;
  int q = 1;
  std::vector<BumpForm> comps;

  FormTuple sample(const GridSpec& grid) const;
  static BumpTuple zero(int n, int q);
};

struct ResidualLevel {
  int nodes = 0;
  double h = 0;
  double residual_right = 0;
  double residual_left = 0;
};

struct ResidualSettings {
  int base_nodes = 32;
  int refinements = 3;
  double half_extent = 1.0;
  KernelSettings kernel;
  double min_order = 1.5;
};

struct ResidualReport {
  StokesSpec spec;
  std::vector<ResidualLevel> levels;
  /// From the last two levels; empty when a residual is exactly zero there.
  std::optional<double> observed_order_right;
  std::optional<double> observed_order_left;
  bool pass = false;
};

/// Refinement table of |S Psi f - f| / |f| and |Psi S f - f| / |f| (max
/// norms over one fixed interior region, kResidualMargin nodes in at the
/// base level) on grids with base_nodes * 2^k nodes per axis. Psi is the
/// bilateral fundamental solution; the spec must have j0 = q and identity or
/// scalar top matrices. A level passes if both orders reach min_order; an
/// all-zero table passes trivially.
ResidualReport residual_report(const StokesSpec& spec, const BumpTuple& f, const ResidualSettings& settings);

/// JSON text: {"spec": {...}, "levels": [{"h", "residual_right",
/// "residual_left"}], "observed_order_right", "observed_order_left", "status"}.
std::string to_json(const ResidualReport& r);
ResidualReport residual_report_from_json(const std::string& text);

}  // namespace drstokes
