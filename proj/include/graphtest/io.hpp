#pragma once

#include <filesystem>
#include <string>

#include "graphtest/simgen.hpp"

namespace graphtest {

// Shortest round-trip-exact decimal form, capped at 17 significant digits.
std::string format_g17(double x);

// Writes via a temp file in the same directory + rename.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// Header: scenario,d,gamma,test,kernel,reps,power,se,seconds
std::string power_table_csv(const PowerTable& table);

struct BenchRow {
  std::string test;
  std::string kernel;
  std::size_t m = 0, n = 0, d = 0;
  std::size_t trials = 0;
  double mean_seconds = 0.0;
};

// Header: test,kernel,m,n,d,trials,mean_seconds
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace graphtest
