// SPDX-License-Identifier: Apache-2.0
#include "kickent/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "kickent/errors.hpp"

namespace kickent {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); }

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

double to_double(const std::string& cell, int line) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE) {
    throw IoError("csv line " + std::to_string(line) + ": bad number '" + cell + "'");
  }
  return v;
}

std::optional<double> to_optional(const std::string& cell, int line) {
  if (cell.empty()) return std::nullopt;
  return to_double(cell, line);
}

}  // namespace

void write_csv(std::ostream& out, const EntropySeries& series) {
  out << kCsvHeader << '\n';
  for (const EntropyRecord& r : series.records) {
    out << series.run_id << ',' << r.T << ',' << fmt17(r.b) << ',' << fmt17(r.K1) << ',' << fmt17(r.K2) << ','
        << r.size << ',' << opt(r.S_classical) << ',' << opt(r.S_quantum) << ',' << opt(r.raw_norm) << '\n';
  }
}

void emit_csv(const EntropySeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(out, series);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

EntropySeries read_csv(std::istream& in) {
  EntropySeries series;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("csv: missing or unexpected header");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> c = split_row(line);
    if (c.size() != 9) throw IoError("csv line " + std::to_string(lineno) + ": expected 9 fields");
    if (series.records.empty()) series.run_id = c[0];
    EntropyRecord r;
    r.T = static_cast<int>(to_double(c[1], lineno));
    r.b = to_double(c[2], lineno);
    r.K1 = to_double(c[3], lineno);
    r.K2 = to_double(c[4], lineno);
    r.size = static_cast<long>(to_double(c[5], lineno));
    r.S_classical = to_optional(c[6], lineno);
    r.S_quantum = to_optional(c[7], lineno);
    r.raw_norm = to_optional(c[8], lineno);
    series.records.push_back(r);
  }
  return series;
}

EntropySeries read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_csv(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace kickent
