#include <cstdlib>

#include "doctest.h"
#include "drstokes/commands.hpp"
#include "drstokes/config.hpp"
#include "drstokes/errors.hpp"
#include "drstokes/verification_report.hpp"

using namespace drstokes;

namespace {

const CheckRecord* find(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.records)
    if (c.name == name) return &c;
  return nullptr;
}

VerificationReport sample_report() {
  VerificationReport r;
  r.tool_version = library_version();
  r.command = "verify-kernels";
  r.timestamp = "2026-01-01T00:00:00Z";
  r.config = {{"n", "2"}, {"q", "1"}};
  r.records.push_back({"inversion.q0", "Laplacian Phi u - u -> 0", CheckStatus::Pass,
                       {{"residual_32", 0.01}, {"residual_order", 2.0}, {"nodes", 32LL}}, ""});
  r.records.push_back({"stokes.q1", "S Psi f - f -> 0", CheckStatus::Stuck, {{"note", std::string("budget")}}, "ran out"});
  return r;
}

}  // namespace

TEST_SUITE("cli_reporting") {
  TEST_CASE("config text parses with comments and overrides") {
    RunConfig c = RunConfig::parse("# kernels\nn = 3\nkernel.method = direct  # slow\ngrid.levels = 16, 32\n");
    CHECK(c.integer("n") == 3);
    CHECK(c.text("kernel.method") == "direct");
    CHECK(c.integers("grid.levels") == std::vector<long long>{16, 32});
    CHECK(c.is_default("q"));
    CHECK_FALSE(c.is_default("n"));
    c.set_override("tol.order=1.8");
    CHECK(c.real("tol.order") == doctest::Approx(1.8));
    CHECK(c.texts("solution.kind").size() == 3);
  }

  TEST_CASE("bad config is rejected") {
    CHECK_THROWS_AS(RunConfig::parse("nodes = 3\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse("n = two\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse("kernel.method = magic\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse("just words\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/drstokes.cfg"), ConfigError);
    RunConfig c;
    CHECK_THROWS_AS(c.set_override("n"), ConfigError);
    CHECK_THROWS_AS(c.set("algebra.corrupt", "maybe"), ConfigError);
    try {
      RunConfig::parse("n = 2\n\nq = x\n", "run.cfg");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("run.cfg:3") != std::string::npos);
    }
  }

  TEST_CASE("report JSON round-trips") {
    const VerificationReport r = sample_report();
    CHECK(r.overall() == CheckStatus::Stuck);
    CHECK(exit_code(r) == 1);
    const std::string text = to_json(r);
    const VerificationReport back = report_from_json(text);
    CHECK(to_json(back) == text);
    CHECK(std::get<long long>(back.records[0].metrics.at("nodes")) == 32);
    CHECK(std::get<std::string>(back.records[1].metrics.at("note")) == "budget");
    CHECK(back.records[1].detail == "ran out");
  }

  TEST_CASE("malformed reports are rejected") {
    CHECK_THROWS_AS(report_from_json("{"), FormatError);
    CHECK_THROWS_AS(report_from_json("{\"tool_version\": \"0\"}"), FormatError);
    std::string text = to_json(sample_report());
    text.replace(text.find("\"overall\": \"STUCK\""), 18, "\"overall\": \"PASS\"");
    CHECK_THROWS_AS(report_from_json(text), FormatError);
    CHECK_THROWS_AS(parse_check_status("OK"), FormatError);
  }

  TEST_CASE("overall status") {
    VerificationReport r;
    CHECK(r.overall() == CheckStatus::Fail);
    r.records.push_back({"a", "", CheckStatus::Pass, {}, ""});
    CHECK(exit_code(r) == 0);
    r.records.push_back({"b", "", CheckStatus::Stuck, {}, ""});
    CHECK(r.overall() == CheckStatus::Stuck);
    r.records.push_back({"c", "", CheckStatus::Fail, {}, ""});
    CHECK(r.overall() == CheckStatus::Fail);
  }

  TEST_CASE("merge prefixes names and configs") {
    VerificationReport a = sample_report();
    a.records[1].status = CheckStatus::Pass;
    VerificationReport b = a;
    b.command = "reconstruct";
    const VerificationReport m = cmd_report_merge({to_json(a), to_json(b)});
    CHECK(m.command == "report-merge");
    CHECK(m.records.size() == 4);
    CHECK(find(m, "reconstruct/stokes.q1"));
    CHECK(m.config.at("verify-kernels#0.n") == "2");
    CHECK(m.overall() == CheckStatus::Pass);
    CHECK_THROWS_AS(cmd_report_merge({"not json"}), FormatError);
  }

  TEST_CASE("reconstruction table round-trips") {
    std::vector<ReconstructionRow> rows = {{"exterior_pole", {0.1, -0.25}, "u1.2", 0.1 + 1e-17, 0.1, 1e-17},
                                           {"constant_pressure", {1.0 / 3, 2.0}, "u0", 1.0, 1.0, 0.0}};
    const std::vector<ReconstructionRow> back = rows_from_csv(to_csv(rows));
    REQUIRE(back.size() == 2);
    CHECK(back[0].point == rows[0].point);
    CHECK(back[0].reconstructed == rows[0].reconstructed);
    CHECK(back[1].component == "u0");
    CHECK(to_csv(back) == to_csv(rows));
    CHECK_THROWS_AS(rows_from_csv("a,b\n1,2\n"), FormatError);
    CHECK_THROWS_AS(rows_from_csv(to_csv(rows) + "x,1 2,u0,nope,1,0\n"), FormatError);
  }

  TEST_CASE("memory guard and level checks fire before any work") {
    RunConfig c;
    c.set("n", "3");
    c.set("grid.levels", "256,512");
    CHECK_THROWS_AS(cmd_verify_kernels(c), ConfigError);
    c.set("grid.levels", "24,50");
    CHECK_THROWS_AS(cmd_verify_kernels(c), ConfigError);
    c.set("grid.levels", "24");
    CHECK_THROWS_AS(cmd_verify_kernels(c), ConfigError);
    c.set("n", "4");
    CHECK_THROWS_AS(cmd_verify_kernels(c), ConfigError);
  }

  TEST_CASE("zero tolerance fails the kernel suite") {
    RunConfig c;
    c.set("kernel.suites", "inversion");
    c.set("grid.levels", "32,64");
    c.set("tol.kernel_residual", "0");
    const VerificationReport r = cmd_verify_kernels(c);
    CHECK(r.overall() == CheckStatus::Fail);
    CHECK(exit_code(r) == 1);
    const CheckRecord* rec = find(r, "inversion.q1");
    REQUIRE(rec);
    CHECK(rec->detail.find("above") != std::string::npos);
  }

  TEST_CASE("kernel suite passes and is deterministic under parallelism") {
    RunConfig c;
    c.set("kernel.suites", "inversion,commutation");
    const VerificationReport a = cmd_verify_kernels(c);
    const VerificationReport b = cmd_verify_kernels(c, {true, 3});
    CHECK(a.overall() == CheckStatus::Pass);
    VerificationReport bb = b;
    bb.timestamp = a.timestamp;
    CHECK(to_json(bb) == to_json(a));
  }

  TEST_CASE("algebra command reports negative controls and budget exhaustion") {
    RunConfig c;
    c.set("algebra.max_q", "1");
    c.set("algebra.corpus", "10");
    CHECK(cmd_verify_algebra(c).overall() == CheckStatus::Pass);
    c.set("algebra.corrupt", "true");
    CHECK(cmd_verify_algebra(c).overall() == CheckStatus::Fail);
    c.set("algebra.corrupt", "false");
    c.set("algebra.budget", "5");
    CHECK(cmd_verify_algebra(c).overall() == CheckStatus::Stuck);
  }

  TEST_CASE("reconstruction command supports q = 1 only") {
    RunConfig c;
    c.set("q", "2");
    CHECK_THROWS_AS(cmd_reconstruct(c), UnsupportedConfiguration);
    c.set("q", "1");
    c.set("solution.pole", "0.5,0");
    CHECK_THROWS_AS(cmd_reconstruct(c), ConfigError);
  }

  TEST_CASE("reconstruction command reproduces the analytic solutions") {
    RunConfig c;
    std::vector<ReconstructionRow> rows;
    const VerificationReport r = cmd_reconstruct(c, &rows);
    CHECK(r.overall() == CheckStatus::Pass);
    CHECK(rows.size() == 3 * 20 * 3);
    for (const auto& row : rows) CHECK(row.abs_err <= 1e-3);
  }

  TEST_CASE("thread count honours the environment") {
    setenv("DRSTOKES_THREADS", "2", 1);
    CHECK(worker_count(0) == 2);
    CHECK(worker_count(1) == 1);
    unsetenv("DRSTOKES_THREADS");
    CHECK(worker_count(0) >= 1);
  }
}
