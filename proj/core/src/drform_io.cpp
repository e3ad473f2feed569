#include "drstokes/drform_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "drstokes/errors.hpp"

namespace drstokes {
namespace {

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  char buf[32];
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += ',';
    if constexpr (std::is_floating_point_v<T>) {
      std::snprintf(buf, sizeof buf, "%.17g", xs[k]);
      s += buf;
    } else {
      s += std::to_string(xs[k]);
    }
  }
  return s;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw FormatError("bad number '" + tok + "'");
    } catch (const std::logic_error&) {
      throw FormatError("bad number '" + tok + "'");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) throw FormatError("bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::string field(std::istringstream& in, const std::string& key) {
  std::string tok;
  if (!(in >> tok) || tok.rfind(key + "=", 0) != 0) throw FormatError("expected '" + key + "=' in header");
  return tok.substr(key.size() + 1);
}

}  // namespace

void write_drform(std::ostream& out, const GridForm& u) {
  const GridSpec& g = u[0].grid();
  out << "DRFORM 1 n=" << u.dim() << " q=" << u.degree() << " dims=" << join(g.counts) << " h=" << join(g.spacing)
      << " origin=" << join(g.origin) << '\n';
  const auto& Is = multi_indices(u.dim(), u.degree());
  char buf[32];
  for (std::size_t a = 0; a < Is.size(); ++a) {
    out << "I=" << Is[a].to_string() << '\n';
    const auto& v = u[a].values();
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", v[k]);
      out << buf << (k + 1 == v.size() ? '\n' : ' ');
    }
  }
}

GridForm read_drform(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty DRFORM input");
  std::istringstream hdr(line);
  std::string magic, version;
  hdr >> magic >> version;
  if (magic != "DRFORM" || version != "1") throw FormatError("missing 'DRFORM 1' header");
  const auto n_v = parse_ints(field(hdr, "n"));
  const auto q_v = parse_ints(field(hdr, "q"));
  if (n_v.size() != 1 || q_v.size() != 1) throw FormatError("n and q must be single integers");
  const int n = n_v[0], q = q_v[0];
  if (n < 1 || q < 0 || q > n) throw FormatError("invalid n or q");
  GridSpec g;
  g.counts = parse_ints(field(hdr, "dims"));
  g.spacing = parse_doubles(field(hdr, "h"));
  g.origin = parse_doubles(field(hdr, "origin"));
  if (static_cast<int>(g.counts.size()) != n) throw FormatError("dims length differs from n");
  try {
    g.validate();
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  GridForm u = zero_grid_form(g, q);
  const auto& Is = multi_indices(n, q);
  for (std::size_t a = 0; a < Is.size(); ++a) {
    std::string tag;
    if (!(in >> tag) || tag.rfind("I=", 0) != 0) throw FormatError("expected component tag I=...");
    auto idx = parse_ints(tag.substr(2));
    for (int& i : idx) --i;
    if (idx != Is[a].indices()) throw FormatError("component " + tag + " out of lexicographic order");
    auto& v = u[a].values();
    for (auto& x : v) {
      std::string tok;
      if (!(in >> tok)) throw FormatError("truncated component " + tag);
      x = parse_doubles(tok).at(0);
    }
  }
  std::string rest;
  if (in >> rest) throw FormatError("trailing data after last component");
  return u;
}

void save_drform(const std::string& path, const GridForm& u) {
  std::ofstream f(path);
  if (!f) throw FormatError("cannot open " + path + " for writing");
  write_drform(f, u);
}

GridForm load_drform(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path);
  return read_drform(f);
}

}  // namespace drstokes
