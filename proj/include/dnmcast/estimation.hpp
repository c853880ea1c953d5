#ifndef DNMCAST_ESTIMATION_HPP
#define DNMCAST_ESTIMATION_HPP

#include <optional>
#include <string>

#include "dnmcast/history.hpp"
#include "dnmcast/temporal.hpp"

namespace dnmcast {

// delta_i: how much better the contemporaneous table predicted the
// observed outcome than the lagged table did.  Always in [-1, 1].
struct DeltaTerm {
  double value = 0.0;
};

// q and r are the two tables' probabilities of the observed outcome.
DeltaTerm delta_term(double q_prob_of_observed, double r_prob_of_observed);

// Two-period window likelihood of the observed outcomes under the additive
// mixture, as a quadratic in the weight:
//   L(alpha) = a*alpha^2 + b*alpha + c
// with a = delta_t * delta_{t-1}, b = delta_t * r_{t-1} + delta_{t-1} * r_t
// and c = r_{t-1} * r_t, where r_i is the lagged table's probability of
// the outcome observed in period i.
struct QuadraticLikelihood {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double eval(double alpha) const { return (a * alpha + b) * alpha + c; }
};

// Probabilities of the observed outcome in one period under each table.
struct PeriodTerms {
  double q = 0.0;
  double r = 0.0;
};

QuadraticLikelihood likelihood_coefficients(const PeriodTerms& current,
                                            const PeriodTerms& previous);

// Location of the parabola's extremum, -b / (2a).  Throws DomainError when
// a == 0 (no extremum).
double alpha_extremum(const QuadraticLikelihood& quad);

enum class MaximizerBranch {
  concave_interior,  // a < 0 with the extremum inside [0,1]
  endpoint_low,      // alpha* = 0 chosen by comparison or clamping
  endpoint_high,     // alpha* = 1 chosen by comparison or clamping
  tie_previous,      // flat likelihood or exact endpoint tie; kept previous
  numeric,           // grid plus golden-section refinement
};

struct WeightEstimate {
  double alpha_star = 0.0;
  std::optional<double> alpha_m;  // absent when a == 0 or on the numeric path
  MaximizerBranch branch = MaximizerBranch::tie_previous;
  int window_begin = 0;
  int window_end = 0;
};

// Direct argmax of the quadratic over [0,1].  On an exact tie the previous
// weight is kept when it attains the maximum, otherwise the smaller weight
// wins.
WeightEstimate maximize_quadratic_on_unit(const QuadraticLikelihood& quad,
                                          double previous_alpha);

// Maximum-likelihood weight for one mixture node over the last `window`
// periods of the history.  The window shrinks at the front when early
// periods cannot reference lagged context before time 0; it never shrinks
// because of missing data, which raises IncompleteWindowError instead.
//
// Additive two-period windows use the closed form above; additive
// single-period windows are linear in alpha and pick an endpoint by the
// sign of delta; everything else (longer windows, multiplicative nodes)
// maximizes the window likelihood numerically on a 1001-point grid
// followed by golden-section refinement (final bracket well below the
// 1e-6 contract).
WeightEstimate mle_alpha_window(const CompiledModel& model, const ObservationHistory& history,
                                const std::string& node, int window, double previous_alpha);

// One period of an estimation window: the full Q and R rows plus the
// observed outcome.
struct WindowTerm {
  Distribution q_row;
  Distribution r_row;
  int outcome = 0;
};

// Product over the window of the mixture conditional probability of the
// observed outcome, at one weight.
double window_likelihood(const std::vector<WindowTerm>& terms, MixtureKind kind,
                         double alpha);

// The numeric maximizer: 1001-point grid scan then golden-section
// refinement.  Both likelihood families are log-concave in alpha, so the
// grid's best point brackets the global maximum.
WeightEstimate maximize_window_numeric(const std::vector<WindowTerm>& terms,
                                       MixtureKind kind);

}  // namespace dnmcast

#endif  // DNMCAST_ESTIMATION_HPP
