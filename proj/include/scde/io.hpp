#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "scde/errors.hpp"
#include "scde/model.hpp"

namespace scde {

//! 17 significant digits: round-trips every double exactly.
inline std::string format_g17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

//! Read one float per line; blank lines and lines starting with '#' are
//! ignored. Parse failures report the 1-based line number.
inline std::vector<double> read_sample_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw InvalidInput("cannot open input file '" + path + "'");
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#')
      continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(begin, end - begin + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size())
        throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(path, lineno, tok);
    }
  }
  return out;
}

inline std::ofstream open_output(const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw InvalidInput("cannot open output file '" + path + "'");
  return out;
}

inline void write_density_csv(const std::string& path, const DensityCurve& curve)
{
  auto out = open_output(path);
  out << "x,f\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    out << format_g17(curve.x(i)) << "," << format_g17(curve.f()[i]) << "\n";
}

inline void write_ecf_csv(const std::string& path, const EcfTable& ecf)
{
  auto out = open_output(path);
  out << "t,re,im,abs2\n";
  for (std::size_t i = 0; i < ecf.values().size(); ++i) {
    const Complex v = ecf.values()[i];
    out << format_g17(ecf.grid().node(i)) << "," << format_g17(v.real()) << ","
        << format_g17(v.imag()) << "," << format_g17(std::norm(v)) << "\n";
  }
}

inline void write_records_csv(const std::string& path,
                              const std::vector<BenchmarkRecord>& records)
{
  auto out = open_output(path);
  out << "dist,estimator,n,mise_mean,mise_stderr,reps,seed\n";
  for (const auto& r : records)
    out << r.distribution << "," << r.estimator << "," << r.n << ","
        << format_g17(r.mise_mean) << "," << format_g17(r.mise_stderr) << ","
        << r.replicates << "," << r.seed << "\n";
}

} // namespace scde
