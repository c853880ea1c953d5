#ifndef DNMCAST_DIAGNOSTICS_HPP
#define DNMCAST_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "dnmcast/backtest.hpp"

namespace dnmcast {

// One-step-ahead forecast residuals for a variable, projected onto a
// designated state: r_t = 1[observed_t = state] - forecast probability of
// the state issued at t-1.  Values lie in [-1, 1].
struct ResidualSeries {
  std::string variable;
  std::string state;
  std::vector<int> times;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
};

ResidualSeries residuals(const BacktestReport& report, const std::string& variable,
                         const std::string& state);

// Sample autocorrelations rho_1..rho_K with the conventional +-2/sqrt(n)
// band; lags outside the band are flagged.
struct AcfReport {
  std::vector<double> rho;
  int n = 0;
  double band = 0.0;
  std::vector<int> flagged_lags;  // 1-based
};

// Throws UndefinedAcfError for a constant series; requires n > max_lag >= 1.
AcfReport sample_acf(const std::vector<double>& series, int max_lag);

// Mean-zero check plus the ACF band flags.  Adequate iff |z| < 2 and no
// lag is flagged.
struct WhitenessReport {
  int n = 0;
  double mean = 0.0;
  double z = 0.0;
  AcfReport acf;
  bool adequate = false;
};

WhitenessReport whiteness_summary(const ResidualSeries& series, int max_lag);

}  // namespace dnmcast

#endif  // DNMCAST_DIAGNOSTICS_HPP
