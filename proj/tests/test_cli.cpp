#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "spatialgraph/geometry.hpp"

namespace fs = std::filesystem;
using spatialgraph::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "sg_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::size_t count_lines(const fs::path& p) {
  const auto s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("check-degrees") {
  const auto dir = scratch("check");
  write_file(dir / "good.txt", "3\n3\n3\n3\n");
  write_file(dir / "bad.txt", "3\n2\n");
  auto r = call({"check-degrees", (dir / "good.txt").string()});
  CHECK(r.code == 0);
  CHECK(r.out == "graphical\n");
  r = call({"check-degrees", (dir / "bad.txt").string()});
  CHECK(r.code == 1);
  CHECK(r.out == "not graphical\n");
  CHECK(call({"check-degrees", (dir / "missing.txt").string()}).code == 2);
}

TEST_CASE("gen-points") {
  const auto dir = scratch("gen");
  auto r = call({"gen-points", "--n", "1000", "--dim", "2", "--mode", "uniform", "--seed", "7",
                 "--out", (dir / "p.csv").string()});
  CHECK(r.code == 0);
  CHECK(count_lines(dir / "p.csv") == 1001);

  r = call({"gen-points", "--mode", "poisson-disk", "--radius", "0.03", "--dim", "2", "--seed",
            "1", "--out", (dir / "pd.csv").string()});
  CHECK(r.code == 0);
  const auto cloud = spatialgraph::read_points_csv(dir / "pd.csv");
  bool ok = true;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      ok = ok && spatialgraph::torus_distance(cloud.point(i), cloud.point(j)) >= 0.03;
    }
  }
  CHECK(ok);

  r = call({"gen-points", "--mode", "poisson-disk", "--radius", "0.6", "--seed", "1", "--out",
            (dir / "x.csv").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("radius") != std::string::npos);
  r = call({"gen-points", "--n", "10", "--radius", "0.1", "--seed", "1", "--out",
            (dir / "x.csv").string()});
  CHECK(r.code == 2);
  CHECK(call({"gen-points", "--n", "10", "--out", (dir / "x.csv").string()}).code == 2);
}

TEST_CASE("distance") {
  const auto dir = scratch("distance");
  write_file(dir / "e.tsv", "1\t2\t0.5\n");
  const auto r = call({"distance", "--edges", (dir / "e.tsv").string(), "--target", "uniform:a=0,b=1"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.250000000\n");
  CHECK(call({"distance", "--edges", (dir / "e.tsv").string(), "--target", "uniform:a=0"}).code == 2);
}

TEST_CASE("sample writes deterministic artifacts") {
  const auto dir = scratch("sample");
  REQUIRE(call({"gen-points", "--n", "300", "--seed", "3", "--out", (dir / "p.csv").string()}).code == 0);
  const std::vector<std::string> base{"sample", "--degrees", "regular:3", "--points",
                                      (dir / "p.csv").string(), "--target",
                                      "normal:mu=0.3,sigma=0.15,lo=0,hi=0.75", "--seed", "11"};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out-dir", (dir / "a").string()});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out-dir", (dir / "b").string()});
  const auto ra = call(args_a);
  const auto rb = call(args_b);
  CHECK(ra.code == rb.code);
  CHECK((ra.code == 0 || ra.code == 3));
  for (const char* f : {"edges.tsv", "trace.csv", "meta.json"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  const auto meta = nlohmann::json::parse(slurp(dir / "a" / "meta.json"));
  CHECK(meta["schema"] == 1);
  CHECK(meta["n"] == 300);
  CHECK(meta["m"] == 450);
  CHECK(meta["seed"] == 11);
  CHECK(meta["wall_time_ms"].is_null());
  if (meta["status"] == "complete") {
    CHECK(meta["d_K"].is_number());
    CHECK(count_lines(dir / "a" / "edges.tsv") == 450);
  } else {
    CHECK(meta["d_K"].is_null());
  }
  CHECK(count_lines(dir / "a" / "trace.csv") == meta["edges_placed"].get<std::size_t>() + 1);
}

TEST_CASE("sample early stop and errors") {
  const auto dir = scratch("sample_err");
  REQUIRE(call({"gen-points", "--n", "100", "--seed", "3", "--out", (dir / "p.csv").string()}).code == 0);
  auto r = call({"sample", "--degrees", "regular:3", "--points", (dir / "p.csv").string(),
                 "--target", "uniform:a=0,b=0.75", "--gamma", "0.5", "--seed", "1", "--out-dir",
                 (dir / "half").string()});
  CHECK(r.code == 0);
  CHECK(count_lines(dir / "half" / "edges.tsv") == 75);
  const auto meta = nlohmann::json::parse(slurp(dir / "half" / "meta.json"));
  CHECK(meta["status"] == "early_stop");

  write_file(dir / "bad.txt", "3\n3\n1\n1\n");
  r = call({"sample", "--degrees", (dir / "bad.txt").string(), "--weights",
            (dir / "w.tsv").string(), "--target", "uniform:a=0,b=1", "--seed", "1"});
  CHECK(r.code == 2);

  write_file(dir / "w.tsv", "1\t2\t0.5\n1\t3\t0.5\n1\t4\t0.5\n2\t3\t0.5\n2\t4\t0.5\n3\t4\t0.5\n");
  r = call({"sample", "--degrees", (dir / "bad.txt").string(), "--weights",
            (dir / "w.tsv").string(), "--target", "uniform:a=0,b=1", "--seed", "1", "--out-dir",
            (dir / "x").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("not graphical") != std::string::npos);

  // every length outside the target: nothing can be placed
  r = call({"sample", "--degrees", "regular:1", "--weights", (dir / "w.tsv").string(), "--target",
            "uniform:a=0.6,b=0.9", "--seed", "1", "--out-dir", (dir / "fail").string()});
  CHECK(r.code == 3);
  CHECK(fs::exists(dir / "fail" / "meta.json"));

  r = call({"sample", "--degrees", "regular:3", "--points", (dir / "p.csv").string(), "--target",
            "uniform:a=0,b=1", "--gamma", "1.5", "--seed", "1"});
  CHECK(r.code == 2);
  r = call({"sample", "--degrees", "regular:3", "--target", "uniform:a=0,b=1", "--seed", "1"});
  CHECK(r.code == 2);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}
