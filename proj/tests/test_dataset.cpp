#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "graphtest/dataset.hpp"

using namespace graphtest;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& content, const char* name) {
    path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
  }
  ~TempFile() {
    std::error_code ec;
    fs::remove(path, ec);
  }
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("load_delimited: three-line hand example") {
  TempFile f("1,0,0\n1,0,1\n2,5,5\n", "gt_basic.csv");
  const Dataset ds = load_delimited(f.path);
  CHECK(ds.labels.m == 2);
  CHECK(ds.labels.n == 1);
  CHECK(ds.pooled.dim == 2);
  CHECK(ds.class_ids[0] == 1.0);
  CHECK(ds.class_ids[1] == 2.0);
  CHECK(ds.pooled.row(2)[0] == 5.0);
}

TEST_CASE("load_delimited: classes map by ascending original id and rows reorder by class") {
  TempFile f("7,1\n-1,2\n7,3\n-1,4\n7,5\n", "gt_order.csv");
  const Dataset ds = load_delimited(f.path);
  CHECK(ds.class_ids[0] == -1.0);
  CHECK(ds.class_ids[1] == 7.0);
  CHECK(ds.labels.m == 2);  // class -1
  CHECK(ds.labels.n == 3);
  // class -1 rows first, file order preserved within class
  CHECK(ds.pooled.row(0)[0] == 2.0);
  CHECK(ds.pooled.row(1)[0] == 4.0);
  CHECK(ds.pooled.row(2)[0] == 1.0);
}

TEST_CASE("load_delimited: descriptive errors") {
  TempFile three("1,0\n2,0\n3,0\n", "gt_three.csv");
  CHECK_THROWS_WITH_AS(load_delimited(three.path), doctest::Contains("expected exactly 2 classes"),
                       data_error);
  TempFile ragged("1,0,0\n2,1\n", "gt_ragged.csv");
  CHECK_THROWS_WITH_AS(load_delimited(ragged.path), doctest::Contains(":2:"), data_error);
  TempFile nonnum("1,0,x\n2,1,2\n", "gt_nonnum.csv");
  CHECK_THROWS_WITH_AS(load_delimited(nonnum.path), doctest::Contains("not numeric"), data_error);
  TempFile empty("", "gt_empty.csv");
  CHECK_THROWS_AS(load_delimited(empty.path), data_error);
  CHECK_THROWS_AS(load_delimited("/nonexistent/file.csv"), data_error);
}

TEST_CASE("load_delimited: label column override and tab delimiter") {
  TempFile f("0.5\t1\t1.5\n2.5\t1\t3.5\n9.5\t2\t1.25\n", "gt_tab.csv");
  const Dataset ds = load_delimited(f.path, '\t', 1);
  CHECK(ds.labels.m == 2);
  CHECK(ds.pooled.dim == 2);
  CHECK(ds.pooled.row(0)[0] == 0.5);
  CHECK(ds.pooled.row(0)[1] == 1.5);
}

TEST_CASE("save/load round-trip preserves the dataset") {
  TempFile f("2,0.25,-1.5\n1,3,0.125\n2,7,8\n1,-0.0625,2\n", "gt_round.csv");
  const Dataset ds = load_delimited(f.path);
  const fs::path out = fs::temp_directory_path() / "gt_round_out.csv";
  save_delimited(ds, out);
  const Dataset back = load_delimited(out);
  CHECK(back.pooled.data == ds.pooled.data);
  CHECK(back.labels.labels == ds.labels.labels);
  CHECK(back.class_ids == ds.class_ids);
  fs::remove(out);
}

TEST_CASE("subsample: largest-remainder apportionment") {
  // 48 / 73 split, total 40: quotas 15.87 / 24.13 -> 16 / 24.
  std::string content;
  for (int i = 0; i < 48; ++i) content += "1," + std::to_string(i) + "\n";
  for (int i = 0; i < 73; ++i) content += "2," + std::to_string(100 + i) + "\n";
  TempFile f(content, "gt_lightning_shape.csv");
  const Dataset ds = load_delimited(f.path);
  const Dataset sub = subsample(ds, {40, 7});
  CHECK(sub.labels.m == 16);
  CHECK(sub.labels.n == 24);

  const Dataset sub2 = subsample(ds, {40, 7});
  CHECK(sub2.pooled.data == sub.pooled.data);  // seeded determinism
}

TEST_CASE("subsample: symmetric dataset splits evenly") {
  std::string content;
  for (int i = 0; i < 100; ++i) content += "1," + std::to_string(i) + "\n";
  for (int i = 0; i < 100; ++i) content += "2," + std::to_string(1000 + i) + "\n";
  TempFile f(content, "gt_sym.csv");
  const Dataset ds = load_delimited(f.path);
  const Dataset sub = subsample(ds, {40, 3});
  CHECK(sub.labels.m == 20);
  CHECK(sub.labels.n == 20);
}

TEST_CASE("subsample: full size returns the identity multiset") {
  TempFile f("1,1\n1,2\n2,3\n2,4\n2,5\n", "gt_full.csv");
  const Dataset ds = load_delimited(f.path);
  const Dataset sub = subsample(ds, {5, 11});
  CHECK(sub.pooled.data == ds.pooled.data);
  CHECK(sub.labels.labels == ds.labels.labels);
}

TEST_CASE("subsample: tiny classes keep at least one observation") {
  std::string content = "1,0\n";
  for (int i = 0; i < 30; ++i) content += "2," + std::to_string(i) + "\n";
  TempFile f(content, "gt_tiny.csv");
  const Dataset ds = load_delimited(f.path);
  const Dataset sub = subsample(ds, {10, 2});
  CHECK(sub.labels.m == 1);
  CHECK(sub.labels.n == 9);
  CHECK_THROWS_AS(subsample(ds, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(subsample(ds, {99, 2}), std::invalid_argument);
}

TEST_CASE("atomic write leaves no temp file behind") {
  const fs::path out = fs::temp_directory_path() / "gt_atomic.csv";
  TempFile f("1,1\n1,2\n2,3\n", "gt_at_src.csv");
  const Dataset ds = load_delimited(f.path);
  save_delimited(ds, out);
  CHECK(fs::exists(out));
  CHECK(!fs::exists(out.string() + ".tmp"));
  CHECK(read_file(out) == "1,1\n1,2\n2,3\n");
  fs::remove(out);
}
