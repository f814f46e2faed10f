#include <doctest.h>

#include <cmath>

#include "stablereg/ecf.hpp"
#include "stablereg/error.hpp"
#include "stablereg/estimators.hpp"
#include "stablereg/stable_model.hpp"

using namespace stablereg;

namespace {

std::vector<double> noiseless(const StableParams& p, const TGrid& grid) {
  std::vector<double> m;
  for (double t : grid.points()) m.push_back(theoretical_cf_modulus_sq(p, t));
  return m;
}

TGrid grid_for(Method method, double alpha) {
  switch (method) {
    case Method::Lad: return lad_grid();
    case Method::KogonWilliams: return kogon_williams_grid();
    case Method::LsMidInterval: return ls_mid_interval_grid();
    case Method::Koutrouvelis: return TGrid::koutrouvelis(koutrouvelis_optimal_k(alpha, 200).k);
  }
  return lad_grid();
}

}  // namespace

TEST_CASE("grids") {
  const auto lad = lad_grid();
  CHECK(lad.size() == 20);
  CHECK(lad[0] == doctest::Approx(0.1));
  CHECK(lad[19] == doctest::Approx(1.05));
  CHECK(lad_grid(LadGrid::Capped)[19] == 1.0);
  const auto kw = kogon_williams_grid();
  CHECK(kw.size() == 10);
  CHECK(kw[9] == doctest::Approx(1.0));
  const auto mid = ls_mid_interval_grid();
  CHECK(mid.size() == 10);
  CHECK(mid[0] == 0.5);
  CHECK(mid[9] == 1.0);
}

TEST_CASE("sigma from intercept") {
  CHECK(sigma_from_intercept(std::log(2.0), 1.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sigma_from_intercept(std::log(2.0 * std::pow(0.5, 1.5)), 1.5) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sigma_from_intercept(0.0, 1.0) == 0.5);
  CHECK_THROWS_AS(sigma_from_intercept(0.0, 0.0), Error);
  CHECK_THROWS_AS(sigma_from_intercept(0.0, -0.3), Error);
}

TEST_CASE("noiseless moduli are recovered exactly by every estimator") {
  const Standardization unit{};
  for (Method method :
       {Method::Lad, Method::KogonWilliams, Method::LsMidInterval, Method::Koutrouvelis}) {
    for (double alpha : {0.7, 0.9, 1.1, 1.2, 1.3, 1.5, 1.8, 1.9}) {
      for (double sigma : {0.5, 1.0, 2.0}) {
        const StableParams p(alpha, sigma);
        const TGrid grid = grid_for(method, alpha);
        const auto e = estimate_from_moduli(method, noiseless(p, grid), grid, unit, {});
        CAPTURE(to_string(method));
        CAPTURE(alpha);
        CAPTURE(sigma);
        CHECK(std::abs(e.alpha_hat - alpha) < 1e-8);
        CHECK(std::abs(e.sigma_hat - sigma) < 1e-8);
      }
    }
  }
}

TEST_CASE("slopes above 2 are not clamped") {
  const TGrid grid = lad_grid();
  std::vector<double> m;
  for (double t : grid.points()) m.push_back(std::exp(-2.0 * std::pow(t, 2.3)));
  const auto e = estimate_from_moduli(Method::Lad, m, grid, Standardization{}, {});
  CHECK(e.alpha_hat == doctest::Approx(2.3).epsilon(1e-9));
}

TEST_CASE("scale of the standardization multiplies sigma") {
  const TGrid grid = kogon_williams_grid();
  const auto m = noiseless(StableParams(1.4, 1.0), grid);
  const auto e = estimate_from_moduli(Method::KogonWilliams, m, grid,
                                      Standardization{0.0, 3.0, StandardizationMethod::FamaRoll},
                                      {});
  CHECK(e.sigma_hat == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("Koutrouvelis K table") {
  CHECK(koutrouvelis_optimal_k(1.3, 200).k == 22);
  CHECK_FALSE(koutrouvelis_optimal_k(1.3, 200).out_of_range);
  CHECK(koutrouvelis_optimal_k(1.9, 800).k == 9);
  CHECK(koutrouvelis_optimal_k(0.5, 1600).k == 56);
  const auto small = koutrouvelis_optimal_k(1.3, 100);
  CHECK(small.k == 22);
  CHECK(small.out_of_range);
  // Monotone in alpha at fixed n.
  std::size_t prev = 1000;
  for (double a = 0.3; a <= 1.9 + 1e-9; a += 0.1) {
    const auto k = koutrouvelis_optimal_k(a, 200).k;
    CHECK(k <= prev);
    prev = k;
  }
}

TEST_CASE("method and K-selection parsing") {
  CHECK(parse_method("lad") == Method::Lad);
  CHECK(parse_method("kw") == Method::KogonWilliams);
  CHECK(parse_method("ls-mid") == Method::LsMidInterval);
  CHECK(parse_method("koutrouvelis") == Method::Koutrouvelis);
  CHECK_FALSE(parse_method("ols").has_value());
  CHECK(KSelection::parse("fixed:12").fixed_k() == 12);
  CHECK(KSelection::parse("oracle:1.3").true_alpha() == 1.3);
  CHECK(KSelection::parse("mcculloch").mode() == KSelection::Mode::McCullochInitial);
  CHECK(KSelection::parse("fixed:12").to_string() == "fixed:12");
  CHECK_THROWS_AS(KSelection::parse("fixed:1"), Error);
  CHECK_THROWS_AS(KSelection::parse("sometimes"), Error);
}

TEST_CASE("sample size floor") {
  const std::vector<double> nine{1, 2, 3, 4, 5, 6, 7, 8, 9};
  try {
    estimate_lad(nine);
    FAIL("expected SampleTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SampleTooSmall);
    CHECK(std::string(e.what()).find("sample too small") != std::string::npos);
  }
}

TEST_CASE("every pipeline is affine equivariant") {
  const auto s = sample_stable_values(StableParams(1.5, 1.0), 300, 17);
  std::vector<double> pow2, affine;
  for (double x : s) {
    pow2.push_back(4.0 * x);
    affine.push_back(2.7 * x - 3.1);
  }
  const std::vector<std::pair<Method, KSelection>> cases = {
      {Method::Lad, KSelection::mcculloch()},
      {Method::KogonWilliams, KSelection::mcculloch()},
      {Method::LsMidInterval, KSelection::mcculloch()},
      {Method::Koutrouvelis, KSelection::mcculloch()},
      {Method::Koutrouvelis, KSelection::oracle(1.5)},
      {Method::Koutrouvelis, KSelection::fixed(15)}};
  for (const auto& [method, ks] : cases) {
    EstimatorOptions opts;
    opts.k_selection = ks;
    const auto a = estimate(method, s, opts);
    const auto b = estimate(method, pow2, opts);
    const auto c = estimate(method, affine, opts);
    CAPTURE(to_string(method));
    CAPTURE(ks.to_string());
    CHECK(b.alpha_hat == a.alpha_hat);
    CHECK(b.sigma_hat == 4.0 * a.sigma_hat);
    CHECK(c.alpha_hat == doctest::Approx(a.alpha_hat).epsilon(1e-9));
    CHECK(c.sigma_hat == doctest::Approx(2.7 * a.sigma_hat).epsilon(1e-9));
  }
  EstimatorOptions fr;
  fr.kogon_williams_standardization = StandardizationMethod::FamaRoll;
  CHECK(estimate_kogon_williams(pow2, fr).alpha_hat == estimate_kogon_williams(s, fr).alpha_hat);
}

TEST_CASE("estimates are deterministic and record their inputs") {
  const auto s = sample_stable_values(StableParams(1.1, 2.0), 200, 23);
  const auto a = estimate_lad(s);
  const auto b = estimate_lad(s);
  CHECK(a.alpha_hat == b.alpha_hat);
  CHECK(a.sigma_hat == b.sigma_hat);
  CHECK(a.method == Method::Lad);
  CHECK(a.grid.size() == 20);
  CHECK(a.standardization.method == StandardizationMethod::FamaRoll);
  CHECK_FALSE(a.resolved_k.has_value());
  const auto k = estimate_koutrouvelis(s, KSelection::oracle(1.3));
  REQUIRE(k.resolved_k.has_value());
  CHECK(k.resolved_k->k == 22);
  CHECK(k.grid.size() == 22);
  const auto kw = estimate_kogon_williams(s);
  CHECK(kw.standardization.method == StandardizationMethod::McCulloch);
}

TEST_CASE("estimates land near the truth on a large sample") {
  const auto s = sample_stable_values(StableParams(1.5, 2.0, 0.0, 4.0), 20000, 29);
  for (Method m :
       {Method::Lad, Method::KogonWilliams, Method::LsMidInterval, Method::Koutrouvelis}) {
    const auto e = estimate(m, s);
    CAPTURE(to_string(m));
    CHECK(std::abs(e.alpha_hat - 1.5) < 0.06);
    CHECK(std::abs(e.sigma_hat - 2.0) < 0.1);
  }
}
