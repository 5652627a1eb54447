#include "charred/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace charred {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& field, std::size_t line) {
  const char* s = field.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw CsvError("line " + std::to_string(line) + ": bad number '" + field + "'");
  return v;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

void write_csv(std::ostream& os, const SolutionGrid& grid) {
  os << "x,t,u,status,blowup_t\n";
  for (std::size_t j = 0; j < grid.nt(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      os << fmt17(grid.xs[i]) << ',' << fmt17(grid.ts[j]) << ','
         << fmt17(grid.value(i, j)) << ',' << to_token(grid.state(i, j)) << ',';
      double bt = grid.blowup_time[i];
      if (!std::isnan(bt)) os << fmt17(bt);
      os << '\n';
    }
  }
}

void write_csv_file(const std::string& path, const SolutionGrid& grid) {
  std::ofstream f(path);
  if (!f) throw CsvError("cannot open '" + path + "' for writing");
  write_csv(f, grid);
  if (!f) throw CsvError("write to '" + path + "' failed");
}

SolutionGrid read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw CsvError("empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,t,u,status,blowup_t")
    throw CsvError("unexpected header '" + line + "'");

  SolutionGrid grid;
  std::vector<double> blowup_by_col;
  std::size_t lineno = 1;
  bool first_block = true;
  std::size_t i = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_row(line);
    if (f.size() != 5)
      throw CsvError("line " + std::to_string(lineno) + ": expected 5 fields");
    double x = parse_double(f[0], lineno);
    double t = parse_double(f[1], lineno);
    double u = parse_double(f[2], lineno);
    auto st = status_from_token(f[3]);
    if (!st)
      throw CsvError("line " + std::to_string(lineno) + ": bad status '" + f[3] + "'");
    double bt = f[4].empty() ? std::numeric_limits<double>::quiet_NaN()
                             : parse_double(f[4], lineno);

    if (grid.ts.empty() || t != grid.ts.back()) {
      if (!grid.ts.empty() && first_block) first_block = false;
      if (!first_block && i != grid.nx())
        throw CsvError("line " + std::to_string(lineno) + ": ragged t block");
      grid.ts.push_back(t);
      i = 0;
    }
    if (first_block) {
      grid.xs.push_back(x);
      blowup_by_col.push_back(bt);
    } else {
      if (i >= grid.nx() || x != grid.xs[i])
        throw CsvError("line " + std::to_string(lineno) + ": x axis mismatch");
    }
    grid.u.push_back(u);
    grid.status.push_back(*st);
    ++i;
  }
  if (grid.ts.empty()) throw CsvError("no data rows");
  if (i != grid.nx()) throw CsvError("truncated final t block");
  grid.blowup_time = std::move(blowup_by_col);
  return grid;
}

SolutionGrid read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CsvError("cannot open '" + path + "'");
  return read_csv(f);
}

}  // namespace charred
