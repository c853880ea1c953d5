#include "dnmcast/session.hpp"

#include <cmath>

#include "dnmcast/inference.hpp"

namespace dnmcast {

const Distribution& ForecastProfile::at(int horizon, const std::string& variable) const {
  const auto& slice = horizons.at(static_cast<std::size_t>(horizon - 1));
  for (const auto& [name, dist] : slice) {
    if (name == variable) return dist;
  }
  throw DomainError("no forecast for variable '" + variable + "'");
}

Session::Session(std::shared_ptr<const CompiledModel> model)
    : model_(std::move(model)), alphas_(model_->initial_alphas()) {}

Session::Session(DnmSpec spec)
    : Session(std::make_shared<const CompiledModel>(CompiledModel::compile(std::move(spec)))) {}

double Session::alpha(const std::string& node) const {
  auto var = model_->find_variable(node);
  if (!var || !model_->is_mixture(*var)) {
    throw DomainError("variable '" + node + "' has no mixture CPD");
  }
  return alphas_[static_cast<std::size_t>(*var)];
}

void Session::observe(int t,
                      const std::vector<std::pair<std::string, std::string>>& assignments) {
  if (t < 0) throw DomainError("observation time must be nonnegative");
  if (t > time_ + 1) {
    throw DomainError("observation at t=" + std::to_string(t) +
                      " would skip slices; session is at t=" + std::to_string(time_));
  }
  // Validate everything before touching the history.
  std::vector<std::pair<int, int>> resolved;
  for (const auto& [name, label] : assignments) {
    auto var = model_->find_variable(name);
    if (!var) throw DomainError("unknown variable '" + name + "'");
    int state = model_->variable(*var).state_index(label);
    if (state < 0) {
      throw DomainError("unknown state '" + label + "' for variable '" + name + "'");
    }
    resolved.push_back({*var, state});
  }
  for (const auto& [var, state] : resolved) {
    auto prior = history_.observed(t, var);
    if (prior && *prior != state) {
      throw ObservationConflictError("conflicting re-observation of '" +
                                     model_->variable(var).name + "' at t=" +
                                     std::to_string(t));
    }
  }
  for (const auto& [var, state] : resolved) history_.record(t, var, state);
  if (t > time_) time_ = t;
}

std::vector<Session::UpdateOutcome> Session::update_weights(int window) {
  std::vector<UpdateOutcome> outcomes;
  for (int var : model_->mixture_variables()) {
    const std::string& name = model_->variable(var).name;
    UpdateOutcome outcome;
    outcome.node = name;
    try {
      WeightEstimate est = mle_alpha_window(*model_, history_, name, window,
                                            alphas_[static_cast<std::size_t>(var)]);
      alphas_[static_cast<std::size_t>(var)] = est.alpha_star;
      trace_.push_back({time_, name, est.alpha_star});
      outcome.updated = true;
      outcome.alpha = est.alpha_star;
    } catch (const IncompleteWindowError& e) {
      outcome.updated = false;
      outcome.alpha = alphas_[static_cast<std::size_t>(var)];
      outcome.note = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

ForecastProfile Session::profile_from_forecast_net(const ForecastNetwork& net) const {
  ForecastProfile profile;
  profile.horizons.resize(static_cast<std::size_t>(net.horizons));
  for (int h = 1; h <= net.horizons; ++h) {
    auto& slice = profile.horizons[static_cast<std::size_t>(h - 1)];
    for (int v = 0; v < model_->variable_count(); ++v) {
      Distribution posterior =
          posterior_eliminate(net.network, net.evidence, net.future_node(v, h));
      slice.push_back({model_->variable(v).name, std::move(posterior)});
    }
  }
  return profile;
}

ForecastProfile Session::forecast(int horizons) const {
  auto net = try_build_forecast_network(*model_, history_, time_, horizons, alphas_);
  if (net) return profile_from_forecast_net(*net);
  return forecast_full_unroll(horizons);
}

ForecastProfile Session::forecast_full_unroll(int horizons) const {
  if (horizons < 1) throw DomainError("forecast horizon must be >= 1");
  const int last = time_ + horizons;
  GroundNetwork ground = unroll(*model_, last, alphas_);

  Evidence evidence;
  for (int t = 0; t <= time_; ++t) {
    for (const auto& [var, state] : history_.slice(t)) {
      evidence[ground.node(var, t)] = state;
    }
  }
  for (const auto& [var, slice] : ground.must_observe) {
    if (!history_.observed(slice, var)) {
      throw ProvisionError("'" + model_->variable(var).name + "' must be observed at t=" +
                           std::to_string(slice));
    }
  }

  ForecastProfile profile;
  profile.horizons.resize(static_cast<std::size_t>(horizons));
  for (int h = 1; h <= horizons; ++h) {
    auto& slice = profile.horizons[static_cast<std::size_t>(h - 1)];
    for (int v = 0; v < model_->variable_count(); ++v) {
      Distribution posterior =
          posterior_eliminate(ground.network, evidence, ground.node(v, time_ + h));
      slice.push_back({model_->variable(v).name, std::move(posterior)});
    }
  }
  return profile;
}

Projection::Projection(const Session& session)
    : model_(session.model_ptr()),
      history_(session.history()),
      base_time_(session.current_time()),
      alphas_(session.alphas()) {}

std::vector<std::pair<std::string, Distribution>> Projection::leading_marginals() const {
  if (horizon_ < 1) throw DomainError("scroll the projection before querying it");
  auto net = try_build_forecast_network(*model_, history_, base_time_, horizon_, alphas_);
  std::vector<std::pair<std::string, Distribution>> out;
  if (net) {
    for (int v = 0; v < model_->variable_count(); ++v) {
      out.push_back({model_->variable(v).name,
                     posterior_eliminate(net->network, net->evidence,
                                         net->future_node(v, horizon_))});
    }
    return out;
  }

  GroundNetwork ground = unroll(*model_, base_time_ + horizon_, alphas_);
  Evidence evidence;
  for (int t = 0; t <= base_time_; ++t) {
    for (const auto& [var, state] : history_.slice(t)) {
      evidence[ground.node(var, t)] = state;
    }
  }
  for (const auto& [var, slice] : ground.must_observe) {
    if (!history_.observed(slice, var)) {
      throw ProvisionError("'" + model_->variable(var).name + "' must be observed at t=" +
                           std::to_string(slice));
    }
  }
  for (int v = 0; v < model_->variable_count(); ++v) {
    out.push_back({model_->variable(v).name,
                   posterior_eliminate(ground.network, evidence,
                                       ground.node(v, base_time_ + horizon_))});
  }
  return out;
}

}  // namespace dnmcast
