#include "graphtest/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "graphtest/io.hpp"
#include "graphtest/rng.hpp"

namespace graphtest {

namespace {

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0' && std::isfinite(out);
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == delimiter) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

Dataset load_delimited(const std::filesystem::path& path, char delimiter,
                       std::size_t label_column) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open data file: " + path.string());

  struct Row {
    double label;
    std::vector<double> coords;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, delimiter);
    if (width == 0) {
      width = fields.size();
      if (width < 2) {
        throw data_error(path.string() + ":" + std::to_string(lineno) +
                         ": need a label and at least one coordinate per row");
      }
      if (label_column >= width) {
        throw data_error(path.string() + ":" + std::to_string(lineno) +
                         ": label column out of range");
      }
    } else if (fields.size() != width) {
      throw data_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(width) + " fields, got " + std::to_string(fields.size()));
    }
    Row row;
    row.coords.reserve(width - 1);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      double x = 0.0;
      if (!parse_double(fields[f], x)) {
        throw data_error(path.string() + ":" + std::to_string(lineno) + ": field " +
                         std::to_string(f + 1) + " is not numeric: '" + fields[f] + "'");
      }
      if (f == label_column) {
        row.label = x;
      } else {
        row.coords.push_back(x);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw data_error("empty data file: " + path.string());

  std::vector<double> classes;
  for (const Row& r : rows) {
    if (std::find(classes.begin(), classes.end(), r.label) == classes.end()) {
      classes.push_back(r.label);
    }
  }
  if (classes.size() != 2) {
    std::ostringstream msg;
    msg << path.string() << ": expected exactly 2 classes, found " << classes.size() << " (";
    std::sort(classes.begin(), classes.end());
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (i) msg << ", ";
      msg << format_g17(classes[i]);
    }
    msg << ")";
    throw data_error(msg.str());
  }
  std::sort(classes.begin(), classes.end());

  Dataset ds;
  ds.source = path.string();
  ds.class_ids = {classes[0], classes[1]};
  const std::size_t d = rows[0].coords.size();
  std::vector<std::uint8_t> labels;
  labels.reserve(rows.size());
  ds.pooled.dim = d;
  ds.pooled.data.reserve(rows.size() * d);
  for (int cls = 0; cls < 2; ++cls) {  // stable reorder: class 1 rows first
    for (const Row& r : rows) {
      if (r.label != classes[static_cast<std::size_t>(cls)]) continue;
      ds.pooled.data.insert(ds.pooled.data.end(), r.coords.begin(), r.coords.end());
      labels.push_back(static_cast<std::uint8_t>(cls + 1));
    }
  }
  ds.labels = LabelVector::from_labels(std::move(labels));
  ds.pooled.m = ds.labels.m;
  ds.pooled.n = ds.labels.n;
  if (ds.pooled.size() < 3) {
    throw data_error(path.string() + ": need at least 3 observations");
  }
  ds.pooled.validate();
  return ds;
}

void save_delimited(const Dataset& ds, const std::filesystem::path& path, char delimiter) {
  std::string out;
  for (std::size_t i = 0; i < ds.pooled.size(); ++i) {
    const double cls = ds.class_ids[ds.labels.labels[i] - 1];
    out += format_g17(cls);
    for (double x : ds.pooled.row(i)) {
      out.push_back(delimiter);
      out += format_g17(x);
    }
    out.push_back('\n');
  }
  atomic_write_file(path, out);
}

Dataset subsample(const Dataset& ds, const SubsampleSpec& spec) {
  const std::size_t N = ds.pooled.size();
  if (spec.total_size < 2) throw std::invalid_argument("subsample: total_size >= 2 required");
  if (spec.total_size > N) throw std::invalid_argument("subsample: total_size exceeds dataset");

  // Largest-remainder apportionment of total_size to the class sizes.
  const std::size_t counts[2] = {ds.labels.m, ds.labels.n};
  std::size_t take[2];
  double frac[2];
  std::size_t assigned = 0;
  for (int c = 0; c < 2; ++c) {
    const double quota =
        static_cast<double>(spec.total_size) * static_cast<double>(counts[c]) /
        static_cast<double>(N);
    take[c] = static_cast<std::size_t>(std::floor(quota));
    frac[c] = quota - static_cast<double>(take[c]);
    assigned += take[c];
  }
  while (assigned < spec.total_size) {
    const int c = (frac[0] >= frac[1]) ? 0 : 1;  // ties to the smaller class id
    ++take[c];
    frac[c] = -1.0;
    ++assigned;
  }
  for (int c = 0; c < 2; ++c) {
    if (take[c] == 0) {  // every class keeps at least one observation
      ++take[c];
      --take[1 - c];
    }
    if (take[c] > counts[c]) {
      take[1 - c] += take[c] - counts[c];
      take[c] = counts[c];
    }
  }

  RngStream rng = RngStream::from(spec.seed, 0x53554253ULL);  // subsample stream
  Dataset out;
  out.source = ds.source;
  out.class_ids = ds.class_ids;
  out.pooled.dim = ds.pooled.dim;
  std::vector<std::uint8_t> labels;
  for (int c = 0; c < 2; ++c) {
    const std::size_t offset = (c == 0) ? 0 : ds.labels.m;
    std::vector<std::size_t> idx(counts[c]);
    std::iota(idx.begin(), idx.end(), offset);
    // Partial Fisher-Yates: the first take[c] slots are a uniform draw.
    for (std::size_t i = 0; i < take[c]; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.next_below(idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(take[c]);
    std::sort(idx.begin(), idx.end());  // keep original row order
    for (std::size_t i : idx) {
      auto row = ds.pooled.row(i);
      out.pooled.data.insert(out.pooled.data.end(), row.begin(), row.end());
      labels.push_back(static_cast<std::uint8_t>(c + 1));
    }
  }
  out.labels = LabelVector::from_labels(std::move(labels));
  out.pooled.m = out.labels.m;
  out.pooled.n = out.labels.n;
  return out;
}

}  // namespace graphtest
