#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "spatialgraph/error.hpp"
#include "spatialgraph/geometry.hpp"
#include "spatialgraph/weight_table.hpp"

using namespace spatialgraph;

TEST_CASE("torus distance wraps each coordinate") {
  const std::vector<double> a{0.1, 0.1}, b{0.9, 0.9};
  CHECK(torus_distance(a, b) == doctest::Approx(std::sqrt(0.08)).epsilon(1e-14));
  const std::vector<double> c{0.0}, d{0.75};
  CHECK(torus_distance(c, d) == doctest::Approx(0.25));
  CHECK(torus_distance(a, a) == 0.0);
}

TEST_CASE("torus distance is a metric on random triples") {
  const auto cloud = generate_uniform(60, 2, 5);
  double max_dist = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      const double dij = torus_distance(cloud.point(i), cloud.point(j));
      CHECK(dij == torus_distance(cloud.point(j), cloud.point(i)));
      max_dist = std::max(max_dist, dij);
      for (std::size_t k = 0; k < cloud.size(); k += 7) {
        CHECK(dij <= torus_distance(cloud.point(i), cloud.point(k)) +
                         torus_distance(cloud.point(k), cloud.point(j)) + 1e-12);
      }
    }
  }
  CHECK(max_dist <= std::sqrt(2.0) / 2.0 + 1e-12);
}

TEST_CASE("uniform generation is deterministic and in range") {
  const auto a = generate_uniform(500, 3, 42);
  const auto b = generate_uniform(500, 3, 42);
  const auto c = generate_uniform(500, 3, 43);
  CHECK(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin()));
  CHECK_FALSE(std::equal(a.coords().begin(), a.coords().end(), c.coords().begin()));
  for (double x : a.coords()) {
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("PointCloud rejects coordinates outside [0,1)") {
  CHECK_THROWS_AS(PointCloud(2, {0.5, 1.0}), InputError);
  CHECK_THROWS_AS(PointCloud(2, {0.5, -0.1}), InputError);
  CHECK_THROWS_AS(PointCloud(2, {0.5, 0.1, 0.2}), InputError);
}

TEST_CASE("Poisson-disk samples respect the radius") {
  for (std::size_t dim : {1u, 2u, 3u}) {
    const double r = dim == 1 ? 0.01 : (dim == 2 ? 0.05 : 0.12);
    const auto cloud = generate_poisson_disk(r, dim, 9);
    CHECK(cloud.size() > 5);
    double nearest_max = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      double nearest = 1.0;
      for (std::size_t j = 0; j < cloud.size(); ++j) {
        if (i == j) continue;
        const double d = torus_distance(cloud.point(i), cloud.point(j));
        CHECK(d >= r);
        nearest = std::min(nearest, d);
      }
      nearest_max = std::max(nearest_max, nearest);
    }
    // Maximality: no hole is much larger than 2r.
    CHECK(nearest_max < 2.0 * r + 1e-12);
  }
  CHECK_THROWS_AS(generate_poisson_disk(0.5, 2, 1), DomainError);
  CHECK_THROWS_AS(generate_poisson_disk(0.0, 2, 1), DomainError);
  CHECK_THROWS_AS(generate_poisson_disk(1e-6, 2, 1), DomainError);
}

TEST_CASE("analytic torus-distance density") {
  CHECK(torus_distance_density(0.3, 1) == 2.0);
  CHECK(torus_distance_density(0.25, 2) == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(torus_distance_density(0.6, 2), DomainError);
  CHECK_THROWS_AS(torus_distance_density(0.1, 3), DomainError);

  SUBCASE("matches the distance histogram of a uniform cloud") {
    const auto cloud = generate_uniform(1500, 2, 77);
    std::vector<double> r;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      for (std::size_t j = i + 1; j < cloud.size(); ++j) {
        const double d = torus_distance(cloud.point(i), cloud.point(j));
        if (d <= 0.5) r.push_back(d);
      }
    }
    // Conditional on r <= 1/2 the density is 2 pi r / (pi/4) = 8r.
    const double frac = static_cast<double>(r.size()) /
                        (1500.0 * 1499.0 / 2.0);
    CHECK(frac == doctest::Approx(std::numbers::pi / 4).epsilon(0.01));
    const auto hist = estimate_density_histogram(r, 10, 0.0, 0.5);
    for (std::size_t b = 0; b < 10; ++b) {
      const double mid = 0.025 + 0.05 * static_cast<double>(b);
      CHECK(hist.densities()[b] == doctest::Approx(8.0 * mid).epsilon(0.03));
    }
  }
}

TEST_CASE("PiecewiseDensity normalizes and integrates") {
  const std::vector<double> mass{1.0, 3.0};
  const PiecewiseDensity p({0.0, 0.5, 1.0}, mass);
  CHECK(p(0.25) == doctest::Approx(0.5));
  CHECK(p(0.75) == doctest::Approx(1.5));
  CHECK(p(1.0) == doctest::Approx(1.5));
  CHECK(p(1.1) == 0.0);
  CHECK(p.cdf(0.5) == doctest::Approx(0.25));
  CHECK(p.cdf(2.0) == 1.0);
  CHECK(p.cdf(-1.0) == 0.0);
  // cdf derivative equals the density inside bins
  for (double x : {0.1, 0.3, 0.6, 0.9}) {
    const double h = 1e-6;
    CHECK((p.cdf(x + h) - p.cdf(x - h)) / (2 * h) == doctest::Approx(p(x)).epsilon(1e-6));
  }
}

TEST_CASE("points csv round trip") {
  const auto cloud = generate_uniform(20, 2, 3);
  const auto path = std::filesystem::temp_directory_path() / "sg_points_rt.csv";
  write_points_csv(path, cloud);
  const auto back = read_points_csv(path);
  CHECK(back.dim() == 2);
  REQUIRE(back.size() == 20);
  for (std::size_t i = 0; i < cloud.coords().size(); ++i) {
    CHECK(back.coords()[i] == cloud.coords()[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("weight tables") {
  const auto cloud = generate_uniform(30, 2, 8);
  const auto table = WeightTable::from_points(cloud);
  CHECK(table.size() == 30);
  CHECK(table(3, 17) == torus_distance(cloud.point(3), cloud.point(17)));
  CHECK(table(17, 3) == table(3, 17));
  CHECK(pair_index(5, 0, 1) == 0);
  CHECK(pair_index(5, 3, 4) == 9);
  const auto explicit_table = WeightTable::from_upper_triangle(3, {1.0, 2.0, 3.0});
  CHECK(explicit_table(0, 2) == 2.0);
  CHECK(explicit_table(2, 1) == 3.0);
}
