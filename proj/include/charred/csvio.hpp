#pragma once

#include <iosfwd>
#include <string>

#include "charred/solve.hpp"

namespace charred {

struct CsvError : std::runtime_error {
  explicit CsvError(const std::string& msg) : std::runtime_error(msg) {}
};

// Columns: x,t,u,status,blowup_t. Rows run over t then x (same layout as the
// grid storage). Doubles are printed with 17 significant digits so a write /
// read cycle is bit-exact; blowup_t is empty for columns that never blow up.
void write_csv(std::ostream& os, const SolutionGrid& grid);
void write_csv_file(const std::string& path, const SolutionGrid& grid);

SolutionGrid read_csv(std::istream& is);
SolutionGrid read_csv_file(const std::string& path);

}  // namespace charred
