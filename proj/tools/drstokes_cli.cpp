// drstokes: verification front end.
//
//   drstokes verify-algebra  [--config f] [--set k=v]... [--out report.json] [--parallel]
//   drstokes verify-kernels  ...
//   drstokes reconstruct     ...            (table goes to output.csv when set)
//   drstokes report-merge    a.json b.json ... [--out merged.json]
//   drstokes keys            lists every config key
//
// Exit codes: 0 overall PASS, 1 any FAIL or STUCK, 2 configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "drstokes/commands.hpp"
#include "drstokes/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw drstokes::ConfigError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw drstokes::ConfigError("cannot write '" + path + "'");
  out << text;
}

void print_summary(const drstokes::VerificationReport& r) {
  for (const auto& c : r.records) {
    std::cerr << "  " << to_string(c.status) << "  " << c.name;
    if (!c.detail.empty()) std::cerr << "  (" << c.detail << ")";
    std::cerr << '\n';
  }
  std::cerr << r.command << ": " << to_string(r.overall()) << " (" << r.records.size() << " checks)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification driver for the Stokes-type operator toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::vector<std::string> overrides, inputs;
  bool parallel = false;
  int threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "override one key (key=value); repeatable");
    sub->add_option("--out", out_path, "report path (default: stdout)");
    sub->add_flag("--parallel", parallel, "run independent checks concurrently");
    sub->add_option("--threads", threads, "worker cap (DRSTOKES_THREADS also caps)")->check(CLI::NonNegativeNumber);
  };
  CLI::App* algebra = app.add_subcommand("verify-algebra", "symbolic identity checks");
  CLI::App* kernels = app.add_subcommand("verify-kernels", "grid potential refinement suites");
  CLI::App* recon = app.add_subcommand("reconstruct", "Green homotopy reconstruction of analytic solutions");
  CLI::App* merge = app.add_subcommand("report-merge", "merge JSON reports");
  CLI::App* keys = app.add_subcommand("keys", "list config keys and defaults");
  for (CLI::App* s : {algebra, kernels, recon}) add_common(s);
  merge->add_option("reports", inputs, "report files")->required()->check(CLI::ExistingFile);
  merge->add_option("--out", out_path, "merged report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (keys->parsed()) {
      for (const auto& k : drstokes::config_keys())
        std::cout << k.name << " = " << k.default_value << "    # " << k.help << '\n';
      return 0;
    }
    if (merge->parsed()) {
      std::vector<std::string> texts;
      for (const auto& p : inputs) texts.push_back(read_file(p));
      const auto rep = drstokes::cmd_report_merge(texts);
      write_text(out_path, drstokes::to_json(rep));
      print_summary(rep);
      return drstokes::exit_code(rep);
    }

    drstokes::RunConfig cfg = config_path.empty() ? drstokes::RunConfig() : drstokes::RunConfig::load(config_path);
    for (const auto& o : overrides) cfg.set_override(o);
    const drstokes::RunOptions opts{parallel, threads};

    drstokes::VerificationReport rep;
    if (algebra->parsed()) {
      rep = drstokes::cmd_verify_algebra(cfg, opts);
    } else if (kernels->parsed()) {
      rep = drstokes::cmd_verify_kernels(cfg, opts);
    } else {
      std::vector<drstokes::ReconstructionRow> rows;
      const std::string csv = cfg.text("output.csv");
      rep = drstokes::cmd_reconstruct(cfg, csv.empty() ? nullptr : &rows, opts);
      if (!csv.empty()) write_text(csv, drstokes::to_csv(rows));
    }
    write_text(out_path, drstokes::to_json(rep));
    print_summary(rep);
    return drstokes::exit_code(rep);
  } catch (const drstokes::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const drstokes::UnsupportedConfiguration& e) {
    std::cerr << "unsupported configuration: " << e.what() << '\n';
    return 2;
  } catch (const drstokes::FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 2;
  } catch (const drstokes::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
