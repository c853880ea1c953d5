#include "dnmcast/estimation.hpp"

#include <algorithm>
#include <cmath>

namespace dnmcast {

DeltaTerm delta_term(double q_prob_of_observed, double r_prob_of_observed) {
  if (!(q_prob_of_observed >= 0.0 && q_prob_of_observed <= 1.0) ||
      !(r_prob_of_observed >= 0.0 && r_prob_of_observed <= 1.0)) {
    throw DomainError("delta term inputs must be probabilities");
  }
  return {q_prob_of_observed - r_prob_of_observed};
}

QuadraticLikelihood likelihood_coefficients(const PeriodTerms& current,
                                            const PeriodTerms& previous) {
  const double d_cur = delta_term(current.q, current.r).value;
  const double d_prev = delta_term(previous.q, previous.r).value;
  return {d_cur * d_prev, d_cur * previous.r + d_prev * current.r, previous.r * current.r};
}

double alpha_extremum(const QuadraticLikelihood& quad) {
  if (quad.a == 0.0) throw DomainError("likelihood is not a parabola (a = 0)");
  return -quad.b / (2.0 * quad.a);
}

WeightEstimate maximize_quadratic_on_unit(const QuadraticLikelihood& quad,
                                          double previous_alpha) {
  if (!(previous_alpha >= 0.0 && previous_alpha <= 1.0)) {
    throw DomainError("previous weight must lie in [0,1]");
  }
  WeightEstimate est;

  if (quad.a < 0.0) {
    const double am = alpha_extremum(quad);
    est.alpha_m = am;
    if (am >= 0.0 && am <= 1.0) {
      est.alpha_star = am;
      est.branch = MaximizerBranch::concave_interior;
    } else if (am < 0.0) {
      est.alpha_star = 0.0;
      est.branch = MaximizerBranch::endpoint_low;
    } else {
      est.alpha_star = 1.0;
      est.branch = MaximizerBranch::endpoint_high;
    }
    return est;
  }

  if (quad.a > 0.0) est.alpha_m = alpha_extremum(quad);  // interior minimum

  if (quad.a == 0.0 && quad.b == 0.0) {
    est.alpha_star = previous_alpha;
    est.branch = MaximizerBranch::tie_previous;
    return est;
  }

  const double at_zero = quad.eval(0.0);
  const double at_one = quad.eval(1.0);
  if (at_zero > at_one) {
    est.alpha_star = 0.0;
    est.branch = MaximizerBranch::endpoint_low;
  } else if (at_one > at_zero) {
    est.alpha_star = 1.0;
    est.branch = MaximizerBranch::endpoint_high;
  } else if (previous_alpha == 0.0 || previous_alpha == 1.0) {
    est.alpha_star = previous_alpha;
    est.branch = MaximizerBranch::tie_previous;
  } else {
    est.alpha_star = 0.0;
    est.branch = MaximizerBranch::endpoint_low;
  }
  return est;
}

double window_likelihood(const std::vector<WindowTerm>& terms, MixtureKind kind,
                         double alpha) {
  double like = 1.0;
  for (const WindowTerm& term : terms) {
    double p;
    if (kind == MixtureKind::additive) {
      p = alpha * term.q_row[term.outcome] + (1.0 - alpha) * term.r_row[term.outcome];
    } else {
      double sum = 0.0;
      double obs = 0.0;
      for (int s = 0; s < term.q_row.size(); ++s) {
        double u = std::pow(term.q_row[s], alpha) * std::pow(term.r_row[s], 1.0 - alpha);
        sum += u;
        if (s == term.outcome) obs = u;
      }
      p = sum > 0.0 ? obs / sum : 0.0;
    }
    like *= p;
  }
  return like;
}

WeightEstimate maximize_window_numeric(const std::vector<WindowTerm>& terms,
                                       MixtureKind kind) {
  constexpr int kGridPoints = 1001;
  double best_alpha = 0.0;
  double best_like = -1.0;
  int best_index = 0;
  for (int j = 0; j < kGridPoints; ++j) {
    double alpha = static_cast<double>(j) / (kGridPoints - 1);
    double like = window_likelihood(terms, kind, alpha);
    if (like > best_like) {
      best_like = like;
      best_alpha = alpha;
      best_index = j;
    }
  }

  double lo = static_cast<double>(std::max(0, best_index - 1)) / (kGridPoints - 1);
  double hi = static_cast<double>(std::min(kGridPoints - 1, best_index + 1)) / (kGridPoints - 1);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = window_likelihood(terms, kind, x1);
  double f2 = window_likelihood(terms, kind, x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = window_likelihood(terms, kind, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = window_likelihood(terms, kind, x1);
    }
    if (f1 > best_like) {
      best_like = f1;
      best_alpha = x1;
    }
    if (f2 > best_like) {
      best_like = f2;
      best_alpha = x2;
    }
  }

  WeightEstimate est;
  est.alpha_star = best_alpha;
  est.branch = MaximizerBranch::numeric;
  return est;
}

WeightEstimate mle_alpha_window(const CompiledModel& model, const ObservationHistory& history,
                                const std::string& node, int window, double previous_alpha) {
  if (window < 1) throw DomainError("window must be >= 1");
  if (!(previous_alpha >= 0.0 && previous_alpha <= 1.0)) {
    throw DomainError("previous weight must lie in [0,1]");
  }
  auto var_opt = model.find_variable(node);
  if (!var_opt) throw DomainError("unknown variable '" + node + "'");
  const int var = *var_opt;
  if (!model.is_mixture(var)) {
    throw DomainError("variable '" + node + "' has no mixture CPD");
  }
  const auto* mix = model.mixture(var);

  const int t = history.max_time();
  const int first_estimable = model.first_regular_slice(var);
  if (t < first_estimable) {
    throw IncompleteWindowError("no estimable period yet for '" + node + "'");
  }
  const int begin = std::max(first_estimable, t - window + 1);

  std::vector<WindowTerm> terms;
  terms.reserve(static_cast<std::size_t>(t - begin + 1));
  for (int i = begin; i <= t; ++i) {
    auto outcome = history.observed(i, var);
    if (!outcome) {
      throw IncompleteWindowError("'" + node + "' unobserved at t=" + std::to_string(i));
    }
    WindowTerm term;
    term.outcome = *outcome;

    std::vector<int> q_states;
    for (int p : model.q_parent_vars(var)) {
      auto s = history.observed(i, p);
      if (!s) {
        throw IncompleteWindowError("'" + model.variable(p).name + "' unobserved at t=" +
                                    std::to_string(i));
      }
      q_states.push_back(*s);
    }
    std::vector<int> r_states;
    for (std::size_t k = 0; k < mix->r_parents.size(); ++k) {
      int p = model.r_parent_vars(var)[k];
      int ref = i - mix->r_parents[k].lag;
      auto s = history.observed(ref, p);
      if (!s) {
        throw IncompleteWindowError("'" + model.variable(p).name + "' unobserved at t=" +
                                    std::to_string(ref));
      }
      r_states.push_back(*s);
    }
    term.q_row = model.q_row(var, q_states);
    term.r_row = model.r_row(var, r_states);
    terms.push_back(std::move(term));
  }

  WeightEstimate est;
  if (mix->decomposition == MixtureKind::additive && terms.size() == 2) {
    PeriodTerms prev{terms[0].q_row[terms[0].outcome], terms[0].r_row[terms[0].outcome]};
    PeriodTerms cur{terms[1].q_row[terms[1].outcome], terms[1].r_row[terms[1].outcome]};
    est = maximize_quadratic_on_unit(likelihood_coefficients(cur, prev), previous_alpha);
  } else if (mix->decomposition == MixtureKind::additive && terms.size() == 1) {
    const double slope = terms[0].q_row[terms[0].outcome] - terms[0].r_row[terms[0].outcome];
    if (slope > 0.0) {
      est.alpha_star = 1.0;
      est.branch = MaximizerBranch::endpoint_high;
    } else if (slope < 0.0) {
      est.alpha_star = 0.0;
      est.branch = MaximizerBranch::endpoint_low;
    } else {
      est.alpha_star = previous_alpha;
      est.branch = MaximizerBranch::tie_previous;
    }
  } else {
    est = maximize_window_numeric(terms, mix->decomposition);
  }
  est.window_begin = begin;
  est.window_end = t;
  return est;
}

}  // namespace dnmcast
