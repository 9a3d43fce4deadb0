#include "graphtest/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace graphtest {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string power_table_csv(const PowerTable& table) {
  std::string out = "scenario,d,gamma,test,kernel,reps,power,se,seconds\n";
  for (const PowerRow& r : table.rows) {
    out += std::string(to_string(r.scenario));
    out += ',';
    out += std::to_string(r.d);
    out += ',';
    out += format_g17(r.gamma);
    out += ',';
    out += r.test;
    out += ',';
    out += r.kernel;
    out += ',';
    out += std::to_string(r.reps);
    out += ',';
    out += format_g17(r.power);
    out += ',';
    out += format_g17(r.se);
    out += ',';
    out += format_g17(r.seconds);
    out += '\n';
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "test,kernel,m,n,d,trials,mean_seconds\n";
  for (const BenchRow& r : rows) {
    out += r.test + ',' + r.kernel + ',' + std::to_string(r.m) + ',' + std::to_string(r.n) +
           ',' + std::to_string(r.d) + ',' + std::to_string(r.trials) + ',' +
           format_g17(r.mean_seconds) + '\n';
  }
  return out;
}

}  // namespace graphtest
