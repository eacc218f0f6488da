#include <doctest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "spatialgraph/distributions.hpp"
#include "spatialgraph/error.hpp"
#include "spatialgraph/reference.hpp"

using namespace spatialgraph;

TEST_CASE("truncated normal agrees with boost") {
  const auto t = make_truncated_normal(0.2, 0.03, {0.1, 0.35});
  const boost::math::normal_distribution<double> nd(0.2, 0.03);
  const double mass = boost::math::cdf(nd, 0.35) - boost::math::cdf(nd, 0.1);
  for (double r : {0.1, 0.15, 0.2, 0.27, 0.35}) {
    CHECK(t.density(r) == doctest::Approx(boost::math::pdf(nd, r) / mass).epsilon(1e-12));
    CHECK(t.cdf(r) ==
          doctest::Approx((boost::math::cdf(nd, r) - boost::math::cdf(nd, 0.1)) / mass)
              .epsilon(1e-12));
  }
  CHECK(t.density(0.05) == 0.0);
  CHECK(t.density(0.4) == 0.0);
  CHECK(t.cdf(0.0) == 0.0);
  CHECK(t.cdf(1.0) == 1.0);
}

TEST_CASE("cdf derivative matches density") {
  const std::vector<TargetSpec> targets{make_truncated_normal(0.03, 0.0044721, {0.0, 0.06}),
                                        make_uniform(0.1, 0.4), normal_rel(0.1)};
  for (const auto& t : targets) {
    const auto s = t.support();
    for (int k = 1; k < 20; ++k) {
      const double x = s.lo + s.length() * k / 20.0;
      const double h = 1e-7 * s.length();
      const double fd = (t.cdf(x + h) - t.cdf(x - h)) / (2 * h);
      CHECK(fd == doctest::Approx(t.density(x)).epsilon(1e-5));
    }
  }
}

TEST_CASE("default truncation") {
  const auto t = make_truncated_normal(0.04, 0.006);
  CHECK(t.support().lo == doctest::Approx(0.01));
  CHECK(t.support().hi == doctest::Approx(0.07));
  const auto clipped = make_truncated_normal(0.01, 0.01);
  CHECK(clipped.support().lo == 0.0);
}

TEST_CASE("parse_target_spec") {
  const auto t = parse_target_spec("normal:mu=0.03,sigma=0.0044721,lo=0,hi=0.06");
  CHECK(t.support().lo == 0.0);
  CHECK(t.support().hi == 0.06);
  CHECK(std::holds_alternative<TruncatedNormal>(t.model()));
  const auto u = parse_target_spec("uniform:a=0,b=1");
  CHECK(u.density(0.3) == 1.0);
  CHECK(u.cdf(0.3) == doctest::Approx(0.3));
  CHECK_THROWS_AS(parse_target_spec("normal:mu=0.1"), InputError);
  CHECK_THROWS_AS(parse_target_spec("normal:mu=0.1,sigma=0.01,lo=0"), InputError);
  CHECK_THROWS_AS(parse_target_spec("normal:mu=0.1,sigma=-1"), InputError);
  CHECK_THROWS_AS(parse_target_spec("uniform:a=1,b=0"), InputError);
  CHECK_THROWS_AS(parse_target_spec("uniform:a=0,b=1,c=2"), InputError);
  CHECK_THROWS_AS(parse_target_spec("cauchy:x=1"), InputError);
  CHECK_THROWS_AS(parse_target_spec("uniform:a=zero,b=1"), InputError);
}

TEST_CASE("histogram target from csv") {
  const auto path = std::filesystem::temp_directory_path() / "sg_hist.csv";
  {
    std::ofstream f(path);
    f << "lo,hi,mass\n0,0.1,1\n0.1,0.2,3\n";
  }
  const auto t = parse_target_spec("hist:" + path.string());
  CHECK(t.density(0.05) == doctest::Approx(2.5));
  CHECK(t.density(0.15) == doctest::Approx(7.5));
  CHECK(t.cdf(0.1) == doctest::Approx(0.25));
  std::filesystem::remove(path);
}

TEST_CASE("importance ratio and its bound") {
  const auto f = make_uniform(0.1, 0.3);
  const auto g = ReferenceDensity::torus_analytic(2);
  CHECK(importance_ratio(f, g, 0.2) == doctest::Approx(5.0 / (2 * M_PI * 0.2)));
  CHECK(importance_ratio(f, g, 0.4) == 0.0);
  // sup f/g on [0.1, 0.3] is at r = 0.1
  const auto diag = ratio_bound(f, g, 10000);
  CHECK(diag.C_estimate == doctest::Approx(5.0 / (2 * M_PI * 0.1)).epsilon(1e-3));
  CHECK(diag.C_estimate <= 5.0 / (2 * M_PI * 0.1));

  const auto same = ReferenceDensity::from_target(f);
  CHECK(ratio_bound(f, same).C_estimate == doctest::Approx(1.0));

  const auto narrow = ReferenceDensity::from_target(make_uniform(0.2, 0.3));
  CHECK_THROWS_AS(importance_ratio(f, narrow, 0.15), SupportMismatch);
}

TEST_CASE("growth exponent fit") {
  const std::vector<double> ns{100, 200, 400, 800};
  std::vector<double> cs;
  for (double n : ns) cs.push_back(3.0 * std::pow(n, 0.7));
  CHECK(fit_growth_exponent(ns, cs) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("reference selection") {
  const auto cloud = generate_uniform(100, 2, 4);
  const auto weights = WeightTable::from_points(cloud);
  const auto in_range = default_reference(make_uniform(0.1, 0.3), weights);
  CHECK(std::holds_alternative<ReferenceDensity::TorusAnalytic>(in_range.model()));
  const auto beyond = default_reference(make_uniform(0.1, 0.6), weights);
  CHECK(std::holds_alternative<PiecewiseDensity>(beyond.model()));
  const auto explicit_table = WeightTable::from_upper_triangle(3, {1.0, 2.0, 3.0});
  CHECK(std::holds_alternative<PiecewiseDensity>(
      default_reference(make_uniform(0.1, 0.3), explicit_table).model()));
  CHECK_THROWS_AS(parse_reference_spec("bogus", make_uniform(0.1, 0.3), weights), InputError);
}
