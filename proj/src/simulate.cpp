#include "dnmcast/simulate.hpp"

#include "dnmcast/rng.hpp"

namespace dnmcast {

namespace {

int sample_state(const Distribution& dist, SplitMix64& rng) {
  double u = rng.next_unit();
  double cum = 0.0;
  for (int s = 0; s < dist.size(); ++s) {
    cum += dist[s];
    if (u < cum) return s;
  }
  return dist.size() - 1;
}

Distribution row_from_table(const std::vector<double>& table, const std::vector<int>& cards,
                            const std::vector<int>& states, int target_card) {
  int row = 0;
  for (std::size_t i = 0; i < cards.size(); ++i) row = row * cards[i] + states[i];
  std::vector<double> out(static_cast<std::size_t>(target_card));
  for (int s = 0; s < target_card; ++s) {
    out[static_cast<std::size_t>(s)] = table[static_cast<std::size_t>(row * target_card + s)];
  }
  return Distribution(std::move(out));
}

}  // namespace

TimeSeries simulate_series(const CompiledModel& model, int periods, std::uint64_t seed,
                           const std::map<std::string, std::string>& initial_values) {
  if (periods < 1) throw DomainError("period count must be >= 1");
  const int n = model.variable_count();

  std::vector<int> init_state(static_cast<std::size_t>(n), -1);
  for (const auto& [name, label] : initial_values) {
    auto var = model.find_variable(name);
    if (!var) throw DomainError("unknown variable '" + name + "'");
    int s = model.variable(*var).state_index(label);
    if (s < 0) throw DomainError("unknown state '" + label + "' for '" + name + "'");
    init_state[static_cast<std::size_t>(*var)] = s;
  }

  SplitMix64 rng(derive_stream_seed(seed, 0));
  std::vector<std::vector<int>> trajectory(static_cast<std::size_t>(periods),
                                           std::vector<int>(static_cast<std::size_t>(n), 0));

  for (int t = 0; t < periods; ++t) {
    for (int v : model.slice_topological_order()) {
      const int card = model.variable(v).cardinality();
      Distribution dist;
      if (model.is_mixture(v) && t >= model.first_regular_slice(v)) {
        const auto* mix = model.mixture(v);
        std::vector<int> q_states;
        for (int p : model.q_parent_vars(v)) {
          q_states.push_back(trajectory[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)]);
        }
        std::vector<int> r_states;
        for (std::size_t i = 0; i < mix->r_parents.size(); ++i) {
          int p = model.r_parent_vars(v)[i];
          r_states.push_back(trajectory[static_cast<std::size_t>(t - mix->r_parents[i].lag)]
                                       [static_cast<std::size_t>(p)]);
        }
        Distribution q = model.q_row(v, q_states);
        Distribution r = model.r_row(v, r_states);
        dist = mix->decomposition == MixtureKind::additive
                   ? mixture_eval_additive(q, r, mix->alpha_init).distribution
                   : mixture_eval_multiplicative(q, r, mix->alpha_init).distribution;
      } else if (model.is_mixture(v)) {
        const InitialProvision* provision = model.provision(v);
        if (provision->must_observe) {
          if (init_state[static_cast<std::size_t>(v)] >= 0) {
            trajectory[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)] =
                init_state[static_cast<std::size_t>(v)];
            continue;
          }
          dist = Distribution(std::vector<double>(static_cast<std::size_t>(card), 1.0 / card));
        } else {
          const auto& tab = *provision->table;
          std::vector<int> cards;
          std::vector<int> states;
          for (const auto& p : tab.parents) {
            int pv = *model.find_variable(p);
            cards.push_back(model.variable(pv).cardinality());
            states.push_back(trajectory[static_cast<std::size_t>(t)][static_cast<std::size_t>(pv)]);
          }
          dist = row_from_table(tab.table, cards, states, card);
        }
      } else {
        const auto* tab = model.tabular(v);
        std::vector<int> cards;
        std::vector<int> states;
        for (int p : model.tabular_parent_vars(v)) {
          cards.push_back(model.variable(p).cardinality());
          states.push_back(trajectory[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)]);
        }
        dist = row_from_table(tab->table, cards, states, card);
      }
      trajectory[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)] =
          sample_state(dist, rng);
    }
  }

  TimeSeries series;
  for (int v = 0; v < n; ++v) series.variables.push_back(model.variable(v).name);
  for (int t = 0; t < periods; ++t) {
    series.times.push_back(t);
    std::vector<std::optional<std::string>> row;
    for (int v = 0; v < n; ++v) {
      row.push_back(model.variable(v).states[static_cast<std::size_t>(
          trajectory[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)])]);
    }
    series.cells.push_back(std::move(row));
  }
  return series;
}

}  // namespace dnmcast
