#include "drstokes/residual_report.hpp"

#include <cmath>
#include <json.hpp>

#include "drstokes/errors.hpp"

namespace drstokes {

using nlohmann::json;

namespace {

json matrix_json(const MatrixCoefficient& m) {
  if (m.size() == 0) return nullptr;
  json rows = json::array();
  for (const auto& row : m.entries()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.str());
    rows.push_back(std::move(r));
  }
  return {{"degree", m.degree()}, {"entries", std::move(rows)}};
}

MatrixCoefficient matrix_from_json(const json& j, int n) {
  if (j.is_null()) return {};
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j.at("entries")) {
    std::vector<Rational> row;
    for (const auto& v : r) row.emplace_back(v.get<std::string>());
    rows.push_back(std::move(row));
  }
  return MatrixCoefficient(n, j.at("degree").get<int>(), std::move(rows));
}

json spec_json(const StokesSpec& s) {
  json levels = json::array();
  for (const auto& [deg, l] : s.levels) levels.push_back({{"degree", deg}, {"M", matrix_json(l.M)}, {"Mt", matrix_json(l.Mt)}});
  return {{"n", s.n}, {"q", s.q}, {"j0", s.j0}, {"lame", std::move(levels)}};
}

StokesSpec spec_from_json(const json& j) {
  StokesSpec s;
  s.n = j.at("n").get<int>();
  s.q = j.at("q").get<int>();
  s.j0 = j.at("j0").get<int>();
  for (const auto& l : j.at("lame"))
    s.levels[l.at("degree").get<int>()] = {matrix_from_json(l.at("M"), s.n), matrix_from_json(l.at("Mt"), s.n)};
  return s;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::optional<double> order_of(double coarse, double fine, double hc, double hf) {
  if (coarse == 0 || fine == 0) return std::nullopt;
  return observed_order(coarse, fine, hc, hf);
}

}  // namespace

FormTuple BumpTuple::sample(const GridSpec& grid) const {
  if (static_cast<int>(comps.size()) != q + 1) throw DimensionMismatch("bump tuple needs q + 1 components");
  FormTuple t;
  for (int i = 0; i <= q; ++i) {
    if (comps[i].degree() != q - i) throw DegreeMismatch("bump tuple degrees must descend from q to 0");
    t.push_back(drstokes::sample(comps[i], grid));
  }
  return t;
}

BumpTuple BumpTuple::zero(int n, int q) {
  BumpTuple t{n, q, {}};
  for (int i = 0; i <= q; ++i) t.comps.emplace_back(n, q - i, BumpSum{});
  return t;
}

ResidualReport residual_report(const StokesSpec& spec, const BumpTuple& f, const ResidualSettings& settings) {
  spec.validate();
  if (f.n != spec.n || f.q != spec.q) throw DimensionMismatch("right-hand side does not match the Stokes spec");
  if (settings.base_nodes < 8 || settings.refinements < 1) throw ParameterError("residual report needs >= 8 nodes and >= 1 level");
  if (spec.j0 != spec.q) throw UnsupportedConfiguration("grid fundamental solution needs j0 = q");

  std::optional<GridBlockOperator> psi;
  if (spec.is_identity()) {
    psi.emplace(psi_identity_operator(spec.n, spec.q));
  } else if (auto s = spec.top_scalars()) {
    psi.emplace(psi_scalar_operator(spec.n, spec.q, s->first, s->second));
  } else {
    throw UnsupportedConfiguration("grid fundamental solution needs identity or scalar matrices");
  }

  // S f is formed exactly on the bump sums and sampled afterwards, so the
  // left residual measures Psi_h rather than the differencing of f.
  const BumpTuple Sf{f.n, f.q, stokes_rows(spec, f.comps)};

  ResidualReport r;
  r.spec = spec;
  int nodes = settings.base_nodes;
  for (int k = 0; k < settings.refinements; ++k, nodes *= 2) {
    const GridSpec grid = GridSpec::cube(spec.n, settings.half_extent, nodes);
    const PotentialPlans plans(grid, settings.kernel);
    const FormTuple fh = f.sample(grid);
    ResidualLevel lv{nodes, grid.spacing[0], 0, 0};
    const double scale = max_abs(fh);
    if (scale > 0) {
      const FormTuple right = apply_stokes(spec, psi->apply(plans, fh)) - fh;
      const FormTuple left = psi->apply(plans, Sf.sample(grid)) - fh;
      // Same physical region at every level: the margin doubles with the nodes.
      const int margin = kResidualMargin << k;
      lv.residual_right = max_abs_interior(right, margin) / scale;
      lv.residual_left = max_abs_interior(left, margin) / scale;
    }
    r.levels.push_back(lv);
  }

  bool pass = true;
  if (r.levels.size() >= 2) {
    const auto& c = r.levels[r.levels.size() - 2];
    const auto& fl = r.levels.back();
    r.observed_order_right = order_of(c.residual_right, fl.residual_right, c.h, fl.h);
    r.observed_order_left = order_of(c.residual_left, fl.residual_left, c.h, fl.h);
    auto ok = [&](const std::optional<double>& o, double fine) {
      return o ? *o >= settings.min_order : fine == 0;
    };
    pass = ok(r.observed_order_right, fl.residual_right) && ok(r.observed_order_left, fl.residual_left);
  }
  r.pass = pass;
  return r;
}

std::string to_json(const ResidualReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"nodes", l.nodes}, {"h", l.h}, {"residual_right", l.residual_right}, {"residual_left", l.residual_left}});
  json j = {{"spec", spec_json(r.spec)},
            {"levels", std::move(levels)},
            {"observed_order_right", optional_json(r.observed_order_right)},
            {"observed_order_left", optional_json(r.observed_order_left)},
            {"status", r.pass ? "pass" : "fail"}};
  return j.dump(2);
}

ResidualReport residual_report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ResidualReport r;
    r.spec = spec_from_json(j.at("spec"));
    for (const auto& l : j.at("levels"))
      r.levels.push_back({l.value("nodes", 0), l.at("h").get<double>(), l.at("residual_right").get<double>(),
                          l.at("residual_left").get<double>()});
    r.observed_order_right = optional_from_json(j.at("observed_order_right"));
    r.observed_order_left = optional_from_json(j.at("observed_order_left"));
    const std::string status = j.at("status").get<std::string>();
    if (status != "pass" && status != "fail") throw FormatError("status must be pass or fail");
    r.pass = status == "pass";
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("residual report: ") + e.what());
  }
}

}  // namespace drstokes
