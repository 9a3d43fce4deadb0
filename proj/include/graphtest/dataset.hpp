#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "graphtest/kernels.hpp"
#include "graphtest/stats.hpp"

namespace graphtest {

// Malformed or unusable input data (distinct from usage errors; the CLI
// maps it to exit code 1).
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A two-class dataset loaded from a delimited file. Rows are reordered so
// all class-1 rows precede class-2 rows (stable within class); class ids
// are mapped to {1, 2} by ascending original id.
struct Dataset {
  PooledSample pooled;
  LabelVector labels;
  std::string source;
  std::array<double, 2> class_ids{0.0, 0.0};  // original ids for labels 1, 2
};

struct SubsampleSpec {
  std::size_t total_size = 0;
  std::uint64_t seed = 0;
};

// One observation per row; the label sits in `label_column` (0-based) and
// every other field is a numeric coordinate. Throws data_error with line
// numbers on ragged rows, non-numeric fields, wrong class counts.
Dataset load_delimited(const std::filesystem::path& path, char delimiter = ',',
                       std::size_t label_column = 0);

// Inverse of load_delimited for an already class-ordered Dataset: original
// class ids first, then coordinates, 17 significant digits.
void save_delimited(const Dataset& ds, const std::filesystem::path& path, char delimiter = ',');

// Proportional subsample: per-class counts by largest-remainder rounding
// (each class >= 1), uniform without-replacement draws within class,
// selected rows kept in their original order.
Dataset subsample(const Dataset& ds, const SubsampleSpec& spec);

}  // namespace graphtest
