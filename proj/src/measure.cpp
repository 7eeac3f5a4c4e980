#include "wdd/measure.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "wdd/csv.hpp"
#include "wdd/error.hpp"
#include "wdd/fft.hpp"
#include "wdd/rng.hpp"

namespace wdd {

void require_divides(std::size_t n, std::size_t d, const char* name) {
  if (n == 0 || d % n != 0) {
    throw Error(ErrorKind::NonDivisor, std::string(name) + " must divide d (" + name + "=" +
                                           std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
}

MeasurementSet spectrogram_full(const ComplexVector& x, const ComplexVector& m) {
  return spectrogram_subsampled(x, m, x.size(), x.size());
}

MeasurementSet spectrogram_subsampled(const ComplexVector& x, const ComplexVector& m,
                                      std::size_t K, std::size_t L) {
  const std::size_t d = x.size();
  if (m.size() != d) throw Error(ErrorKind::LengthMismatch, "spectrogram: mask and signal lengths differ");
  require_divides(K, d, "K");
  require_divides(L, d, "L");
  const std::size_t a = d / L;
  MeasurementSet out{RMatrix(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(L)), d, K, L, std::nullopt};
  ComplexVector folded(K);
  for (std::size_t l = 0; l < L; ++l) {
    // Window S_{-la} m; rows k*d/K of the length-d DFT equal the length-K DFT of the fold.
    std::fill(folded.begin(), folded.end(), Complex(0.0));
    const std::size_t shift = l * a;
    for (std::size_t n = 0; n < d; ++n) folded[n % K] += x[n] * m[(n + d - shift) % d];
    fft::transform(folded.span(), fft::Direction::Forward);
    for (std::size_t k = 0; k < K; ++k) {
      out.Y(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = std::norm(folded[k]);
    }
  }
  return out;
}

MeasurementSet spectrogram_general(const ComplexVector& x, const std::vector<ComplexVector>& masks,
                                   std::size_t L) {
  const std::size_t d = x.size();
  require_divides(L, d, "L");
  const std::size_t K = masks.size();
  const std::size_t a = d / L;
  MeasurementSet out{RMatrix(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(L)), d, K, L, std::nullopt};
  for (std::size_t k = 0; k < K; ++k) {
    if (masks[k].size() != d) throw Error(ErrorKind::LengthMismatch, "spectrogram_general: mask length");
    for (std::size_t l = 0; l < L; ++l) {
      Complex s = 0.0;
      for (std::size_t n = 0; n < d; ++n) s += x[n] * masks[k][(n + d - l * a) % d];
      out.Y(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = std::norm(s);
    }
  }
  return out;
}

MeasurementSet add_noise(const MeasurementSet& clean, double snr_db, std::uint64_t seed) {
  MeasurementSet out = clean;
  NoiseRecord rec;
  rec.snr_db = snr_db;
  rec.seed = seed;
  rec.generator = CounterRng::kName;
  if (std::isinf(snr_db) && snr_db > 0) {
    out.noise = rec;
    return out;
  }
  const double D = static_cast<double>(clean.K * clean.L);
  rec.sigma2 = clean.Y.squaredNorm() / (D * std::pow(10.0, snr_db / 10.0));
  const double sigma = std::sqrt(rec.sigma2);
  CounterRng rng(seed);
  double fro = 0.0;
  for (Eigen::Index l = 0; l < out.Y.cols(); ++l) {
    for (Eigen::Index k = 0; k < out.Y.rows(); ++k) {
      const double n = sigma * rng.normal();
      out.Y(k, l) += n;
      fro += n * n;
    }
  }
  rec.frobenius = std::sqrt(fro);
  out.noise = rec;
  return out;
}

double snr_realized(const RMatrix& clean, const RMatrix& noise) {
  const double n2 = noise.squaredNorm();
  if (n2 == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(clean.squaredNorm() / n2);
}

void write_measurements(std::ostream& os, const MeasurementSet& y) {
  const double snr = y.noise ? y.noise->snr_db : std::numeric_limits<double>::infinity();
  os << "# d=" << y.d << " K=" << y.K << " L=" << y.L << " snr_db=" << csv::format_double(snr)
     << " seed=" << (y.noise ? std::to_string(y.noise->seed) : std::string("none")) << '\n';
  if (y.noise) {
    os << "# sigma2=" << csv::format_double(y.noise->sigma2)
       << " noise_fro=" << csv::format_double(y.noise->frobenius)
       << " generator=" << (y.noise->generator.empty() ? "none" : y.noise->generator) << '\n';
  }
  os << "k,l,value\n";
  for (Eigen::Index k = 0; k < y.Y.rows(); ++k) {
    for (Eigen::Index l = 0; l < y.Y.cols(); ++l) {
      os << k << ',' << l << ',' << csv::format_double(y.Y(k, l)) << '\n';
    }
  }
}

MeasurementSet read_measurements(std::istream& is) {
  std::map<std::string, std::string> meta;
  std::string line;
  bool header = false;
  std::vector<std::tuple<long, long, double>> rows;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (csv::parse_meta_line(line, meta)) continue;
    if (!header) {
      if (line.rfind("k,l,value", 0) != 0) throw Error(ErrorKind::Parse, "expected header 'k,l,value'");
      header = true;
      continue;
    }
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c)) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 3 fields");
    }
    try {
      rows.emplace_back(std::stol(a), std::stol(b), csv::parse_double(c));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": bad index");
    }
  }
  auto get = [&](const char* key) -> std::size_t {
    auto it = meta.find(key);
    if (it == meta.end()) throw Error(ErrorKind::Parse, std::string("measurement file lacks '") + key + "'");
    try {
      return std::stoull(it->second);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, std::string("measurement field '") + key + "' is not an integer");
    }
  };
  MeasurementSet y;
  y.d = get("d");
  y.K = get("K");
  y.L = get("L");
  require_divides(y.K, y.d, "K");
  require_divides(y.L, y.d, "L");
  y.Y = RMatrix::Constant(static_cast<Eigen::Index>(y.K), static_cast<Eigen::Index>(y.L), NAN);
  for (const auto& [k, l, v] : rows) {
    if (k < 0 || l < 0 || static_cast<std::size_t>(k) >= y.K || static_cast<std::size_t>(l) >= y.L) {
      throw Error(ErrorKind::Parse, "measurement index out of range");
    }
    y.Y(k, l) = v;
  }
  if (rows.size() != y.K * y.L || y.Y.hasNaN()) {
    throw Error(ErrorKind::Parse, "measurement file must list every (k,l) entry exactly once");
  }
  const double snr = meta.count("snr_db") ? csv::parse_double(meta["snr_db"])
                                          : std::numeric_limits<double>::infinity();
  if (meta.count("seed") && meta["seed"] != "none") {
    NoiseRecord rec;
    rec.snr_db = snr;
    rec.seed = std::stoull(meta["seed"]);
    if (meta.count("sigma2")) rec.sigma2 = csv::parse_double(meta["sigma2"]);
    if (meta.count("noise_fro")) rec.frobenius = csv::parse_double(meta["noise_fro"]);
    if (meta.count("generator") && meta["generator"] != "none") rec.generator = meta["generator"];
    y.noise = rec;
  }
  return y;
}

void write_measurements_file(const std::string& path, const MeasurementSet& y) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_measurements(os, y);
}

MeasurementSet read_measurements_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return read_measurements(is);
}

}  // namespace wdd
