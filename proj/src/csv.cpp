#include "wdd/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "wdd/error.hpp"

namespace wdd::csv {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t == "inf" || t == "+inf") return INFINITY;
  if (t == "-inf") return -INFINITY;
  if (t == "nan") return NAN;
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw Error(ErrorKind::Parse, "not a number: '" + t + "'");
  }
  return v;
}

bool parse_meta_line(const std::string& line, std::map<std::string, std::string>& meta) {
  const std::string t = trim(line);
  if (t.empty() || t.front() != '#') return false;
  std::istringstream is(t.substr(1));
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    meta[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return true;
}

void write_vector(std::ostream& os, const ComplexVector& x,
                  const std::map<std::string, std::string>& meta) {
  if (!meta.empty()) {
    os << '#';
    for (const auto& [k, v] : meta) os << ' ' << k << '=' << v;
    os << '\n';
  }
  os << "index,re,im\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << i << ',' << format_double(x[i].real()) << ',' << format_double(x[i].imag()) << '\n';
  }
}

ComplexVector read_vector(std::istream& is, std::map<std::string, std::string>* meta) {
  std::map<std::string, std::string> local;
  std::vector<std::pair<std::size_t, Complex>> rows;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (parse_meta_line(t, local)) continue;
    if (!header) {
      if (t != "index,re,im") {
        throw Error(ErrorKind::Parse, "expected header 'index,re,im', got '" + t + "'");
      }
      header = true;
      continue;
    }
    const auto f = split(t, ',');
    if (f.size() != 3) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 3 fields");
    }
    try {
      const auto idx = static_cast<std::size_t>(std::stoull(f[0]));
      rows.emplace_back(idx, Complex(parse_double(f[1]), parse_double(f[2])));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": bad index");
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + e.detail());
    }
  }
  if (!header) throw Error(ErrorKind::Parse, "missing header 'index,re,im'");
  ComplexVector x(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [i, z] : rows) {
    if (i >= rows.size() || seen[i]) {
      throw Error(ErrorKind::Parse, "indices must be a permutation of 0..d-1");
    }
    seen[i] = true;
    x[i] = z;
  }
  if (meta) *meta = std::move(local);
  return x;
}

void write_vector_file(const std::string& path, const ComplexVector& x,
                       const std::map<std::string, std::string>& meta) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_vector(os, x, meta);
  if (!os) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

ComplexVector read_vector_file(const std::string& path,
                               std::map<std::string, std::string>* meta) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return read_vector(is, meta);
}

}  // namespace wdd::csv
