#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "spatialgraph/experiments.hpp"
#include "test_oracles.hpp"

using namespace spatialgraph;

TEST_CASE("gamma lower bound against the frozen root") {
  GammaBoundInputs in{1.0, 3.0, 3.0};
  const auto b = gamma_lower_bound(in);
  CHECK(b.gamma_star == doctest::Approx(0.6878981).epsilon(1e-6));
  CHECK(b.epsilon == doctest::Approx(0.42).epsilon(1e-12));
  // the returned gamma solves its own equation
  const double t = b.L * 3.0 * 1.0 / (1.0 * 9.0);
  CHECK(b.gamma_star / ((1 - b.gamma_star) * (1 - b.gamma_star)) ==
        doctest::Approx(t).epsilon(1e-10));
  CHECK(b.gamma_star == doctest::Approx(testing::gamma_root_closed_form(t)).epsilon(1e-10));

  const std::vector<double> frozen{0.6878981, 0.59092, 0.44114, 0.32334};
  const std::vector<double> Cs{1, 2, 5, 10};
  double prev = 1.0;
  for (std::size_t k = 0; k < Cs.size(); ++k) {
    in.C = Cs[k];
    const double g = gamma_lower_bound(in).gamma_star;
    CHECK(g == doctest::Approx(frozen[k]).epsilon(2e-5));
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("gamma bound on a custom epsilon grid") {
  GammaBoundInputs in{1.0, 3.0, 3.0};
  in.epsilon_grid = {0.1, 0.5, 0.9};
  const auto b = gamma_lower_bound(in);
  // L(0.5) = 9/0.5 + 4 = 22 is the smallest of the three
  CHECK(b.epsilon == 0.5);
  CHECK(b.L == doctest::Approx(22.0));
  CHECK(b.gamma_star == doctest::Approx(testing::gamma_root_closed_form(22.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("default bound inputs") {
  const auto in = default_gamma_bound_inputs(DegreeSequence::regular(1000, 3), 2.0);
  CHECK(in.d_max == 3.0);
  CHECK(in.d_bar == 3.0);
  CHECK(in.eta == 1.0);
  CHECK(in.c == doctest::Approx(1.0 - 9.0 / 6000.0));
  CHECK(in.C == 2.0);
}

TEST_CASE("small convergence study is deterministic") {
  StudyOptions opts;
  opts.threads = 2;
  const auto a = convergence_study({60, 120}, 3, reference_matched_target(), 3, 5, opts);
  opts.threads = 1;
  const auto b = convergence_study({60, 120}, 3, reference_matched_target(), 3, 5, opts);
  REQUIRE(a.rows.size() == 6);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].n == b.rows[k].n);
    CHECK(a.rows[k].seed == b.rows[k].seed);
    CHECK(a.rows[k].status == b.rows[k].status);
    CHECK(a.rows[k].d_K == b.rows[k].d_K);
    if (a.rows[k].status == RunStatus::failure) {
      CHECK_FALSE(a.rows[k].d_K.has_value());
    } else {
      CHECK(*a.rows[k].d_K >= 0.0);
    }
  }
  CHECK(a.rows[0].n == 60);
  CHECK(a.rows[5].n == 120);
  CHECK(a.completion_rate.at(60) >= 0.0);

  const auto path = std::filesystem::temp_directory_path() / "sg_conv.csv";
  write_convergence_csv(path, a);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("d_K") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("boundary traces") {
  const auto runs = boundary_trace_study(200, 3, {0.2, 0.04}, 0.15, 2, 9);
  REQUIRE(runs.size() == 4);
  for (const auto& r : runs) {
    CHECK(r.m == 300);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      CHECK(r.trace[k].k == k + 1);
      CHECK(r.trace[k].alpha == doctest::Approx(static_cast<double>(k + 1) / 300.0));
    }
    if (r.status == RunStatus::complete) CHECK(r.trace.size() == 300);
  }
  const auto dir = std::filesystem::temp_directory_path() / "sg_traces";
  std::filesystem::remove_all(dir);
  write_boundary_traces(dir, runs);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), {}) == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("gamma estimate on a small instance") {
  // A loose tolerance qualifies every grid value.
  const auto loose = estimate_gamma_star(100, 3, reference_matched_target(), 10.0, 3, 2);
  CHECK(loose.grid.size() == 20);
  CHECK(loose.grid.front() == doctest::Approx(0.05));
  CHECK(loose.grid.back() == 1.0);
  CHECK_FALSE(loose.no_qualifying_gamma);
  // an impossible tolerance qualifies nothing
  const auto strict = estimate_gamma_star(100, 3, reference_matched_target(), 1e-9, 3, 2);
  CHECK(strict.no_qualifying_gamma);
}
