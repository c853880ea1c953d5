#include <cmath>

#include <doctest.h>

#include "dnmcast/carsales.hpp"
#include "dnmcast/session.hpp"

using namespace dnmcast;

namespace {

Session carsales_session_through(int t_end) {
  Session session(build_carsales());
  auto rows = carsales_series();
  const std::vector<std::string> names{"demand", "health", "price", "supply"};
  for (int t = 0; t <= t_end; ++t) {
    std::vector<std::pair<std::string, std::string>> slice;
    for (std::size_t v = 0; v < names.size(); ++v) {
      slice.push_back({names[v], rows[static_cast<std::size_t>(t)][v]});
    }
    session.observe(t, slice);
    if (t >= 1) session.update_weights(2);
  }
  return session;
}

double max_profile_diff(const ForecastProfile& a, const ForecastProfile& b) {
  double m = 0.0;
  for (std::size_t h = 0; h < a.horizons.size(); ++h) {
    for (std::size_t v = 0; v < a.horizons[h].size(); ++v) {
      const auto& da = a.horizons[h][v].second;
      const auto& db = b.horizons[h][v].second;
      for (int s = 0; s < da.size(); ++s) m = std::max(m, std::fabs(da[s] - db[s]));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("observe validates and advances time") {
  Session session(build_carsales());
  CHECK(session.current_time() == -1);
  session.observe(0, {{"demand", "H"}, {"health", "H"}, {"price", "H"}, {"supply", "L"}});
  CHECK(session.current_time() == 0);

  // Partial observation is fine; missing variables stay unobserved.
  session.observe(1, {{"demand", "L"}});
  CHECK(session.current_time() == 1);
  CHECK(session.history().observed(1, 0).has_value());
  CHECK_FALSE(session.history().observed(1, 3).has_value());

  // Filling a gap at or below the current time is allowed.
  session.observe(1, {{"health", "H"}});

  CHECK_THROWS_AS(session.observe(0, {{"supply", "H"}}), ObservationConflictError);
  session.observe(0, {{"supply", "L"}});  // same value re-observation is a no-op

  CHECK_THROWS_AS(session.observe(5, {{"demand", "L"}}), DomainError);
  CHECK_THROWS_AS(session.observe(2, {{"demand", "X"}}), DomainError);
  CHECK_THROWS_AS(session.observe(2, {{"ghost", "H"}}), DomainError);
}

TEST_CASE("weight updates follow the worked series") {
  auto s3 = carsales_session_through(3);
  CHECK(s3.alpha("supply") == doctest::Approx(1.0).epsilon(1e-12));
  auto s10 = carsales_session_through(10);
  CHECK(s10.alpha("supply") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(s10.alpha_trace().empty());
}

TEST_CASE("update is skipped, not failed, on incomplete windows") {
  Session session(build_carsales());
  session.observe(0, {{"demand", "H"}, {"health", "H"}, {"price", "H"}, {"supply", "L"}});
  auto outcomes = session.update_weights(2);
  REQUIRE(outcomes.size() == 1);
  CHECK_FALSE(outcomes[0].updated);
  CHECK(session.alpha("supply") == 0.5);

  // A model with only tabular CPDs has nothing to update.
  DnmSpec spec;
  spec.slice.variables = {{"x", {"H", "L"}}};
  spec.cpds["x"] = TemplateTabularCpd{"x", {}, {0.4, 0.6}};
  Session tab(spec);
  tab.observe(0, {{"x", "H"}});
  CHECK(tab.update_weights(2).empty());
}

TEST_CASE("one-step forecasts reproduce the worked values") {
  // After t=5 the weight is 0 and the lagged row (p=H, s=H) applies.
  auto s5 = carsales_session_through(5);
  CHECK(s5.alpha("supply") == 0.0);
  CHECK(s5.forecast(1).at(1, "supply")[0] == doctest::Approx(0.90).epsilon(1e-9));

  // After t=3 the weight is 1; the forecast marginalizes Q over (d, h).
  auto s3 = carsales_session_through(3);
  CHECK(s3.forecast(1).at(1, "supply")[0] == doctest::Approx(0.555975).epsilon(1e-9));

  // After t=4 the weight is 0.5.
  auto s4 = carsales_session_through(4);
  CHECK(s4.forecast(1).at(1, "supply")[0] == doctest::Approx(0.7279875).epsilon(1e-9));

  // Unlagged slice variables forecast at their slice priors.
  CHECK(s4.forecast(1).at(1, "health")[0] == doctest::Approx(0.85).epsilon(1e-9));
  CHECK(s4.forecast(1).at(1, "price")[0] == doctest::Approx(0.4175).epsilon(1e-9));
  CHECK(s4.forecast(1).at(1, "demand")[0] == doctest::Approx(0.483).epsilon(1e-9));
}

TEST_CASE("windowed forecast equals the full unroll") {
  for (int t_end : {0, 3, 7, 11}) {
    auto session = carsales_session_through(t_end);
    for (int l : {1, 3}) {
      auto fast = session.forecast(l);
      auto slow = session.forecast_full_unroll(l);
      CHECK(max_profile_diff(fast, slow) < 1e-9);
    }
  }
}

TEST_CASE("iterated scroll equals a single unroll") {
  auto session = carsales_session_through(6);
  auto profile = session.forecast_full_unroll(5);

  Projection projection(session);
  for (int h = 1; h <= 5; ++h) {
    projection.scroll();
    auto lead = projection.leading_marginals();
    for (std::size_t v = 0; v < lead.size(); ++v) {
      const auto& direct = profile.horizons[static_cast<std::size_t>(h - 1)][v].second;
      for (int s = 0; s < direct.size(); ++s) {
        CHECK(lead[v].second[s] == doctest::Approx(direct[s]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("a pure contemporaneous weight makes every horizon identical") {
  auto s3 = carsales_session_through(3);  // weight is 1.0 here
  REQUIRE(s3.alpha("supply") == 1.0);
  auto profile = s3.forecast(3);
  for (int h = 1; h <= 3; ++h) {
    CHECK(profile.at(h, "supply")[0] == doctest::Approx(0.555975).epsilon(1e-9));
    CHECK(profile.at(h, "demand")[0] == doctest::Approx(0.483).epsilon(1e-9));
  }
}

TEST_CASE("scrolling a model without lagged arcs repeats the slice prior") {
  DnmSpec spec;
  spec.slice.variables = {{"x", {"H", "L"}}, {"y", {"H", "L"}}};
  spec.slice.contemporaneous_arcs = {{"x", "y"}};
  spec.cpds["x"] = TemplateTabularCpd{"x", {}, {0.3, 0.7}};
  spec.cpds["y"] = TemplateTabularCpd{"y", {"x"}, {0.9, 0.1, 0.2, 0.8}};
  Session session(spec);
  session.observe(0, {{"x", "H"}, {"y", "L"}});

  auto profile = session.forecast(4);
  const double y_prior = 0.3 * 0.9 + 0.7 * 0.2;
  for (int h = 1; h <= 4; ++h) {
    CHECK(profile.at(h, "x")[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(profile.at(h, "y")[0] == doctest::Approx(y_prior).epsilon(1e-12));
  }
}

TEST_CASE("forecast before the provision is satisfiable is refused") {
  Session session(build_carsales());
  // Slice 0 supply must be observed; forecasting t=1 without it cannot work.
  session.observe(0, {{"demand", "H"}, {"health", "H"}, {"price", "H"}});
  CHECK_THROWS_AS(session.forecast(1), ProvisionError);
}

TEST_CASE("forecast with a partially observed boundary falls back and agrees") {
  Session session(build_carsales());
  auto rows = carsales_series();
  const std::vector<std::string> names{"demand", "health", "price", "supply"};
  for (int t = 0; t <= 3; ++t) {
    std::vector<std::pair<std::string, std::string>> slice;
    for (std::size_t v = 0; v < names.size(); ++v) {
      if (t == 3 && names[v] == "price") continue;  // boundary source missing
      slice.push_back({names[v], rows[static_cast<std::size_t>(t)][v]});
    }
    session.observe(t, slice);
  }
  auto fast = session.forecast(1);
  auto slow = session.forecast_full_unroll(1);
  CHECK(max_profile_diff(fast, slow) < 1e-12);
}
