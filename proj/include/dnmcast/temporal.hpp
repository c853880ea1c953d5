#ifndef DNMCAST_TEMPORAL_HPP
#define DNMCAST_TEMPORAL_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dnmcast/history.hpp"
#include "dnmcast/network.hpp"

namespace dnmcast {

// One time slice of the temporal model: the variables and the arcs that
// act within a single time period.
struct SliceTemplate {
  std::vector<Variable> variables;
  std::vector<std::pair<std::string, std::string>> contemporaneous_arcs;
};

// An arc from `source` at time t - lag to `target` at time t.
struct LaggedArc {
  std::string source;
  int lag = 1;
  std::string target;
};

// Reference to a lagged parent from a node's point of view.
struct LaggedParentRef {
  std::string variable;
  int lag = 1;

  friend bool operator==(const LaggedParentRef&, const LaggedParentRef&) = default;
};

// Conditional table over contemporaneous parents only.  Rows are stored
// row-major over `parents` in declared order (last parent fastest), each
// row a distribution over the target's states.
struct TemplateTabularCpd {
  std::string target;
  std::vector<std::string> parents;
  std::vector<double> table;
};

enum class MixtureKind { additive, multiplicative };

// A node whose conditional distribution combines a contemporaneous table Q
// with a lagged table R through a likelihood weight alpha.  Additive:
// alpha*Q + (1-alpha)*R.  Multiplicative: proportional to Q^alpha *
// R^(1-alpha), renormalized per row.
struct TemplateMixtureCpd {
  std::string target;
  std::vector<std::string> q_parents;
  std::vector<double> q_table;
  std::vector<LaggedParentRef> r_parents;
  std::vector<double> r_table;
  MixtureKind decomposition = MixtureKind::additive;
  double alpha_init = 0.5;
};

using TemplateCpd = std::variant<TemplateTabularCpd, TemplateMixtureCpd>;

// What a lagged node does at slices that would need context before time 0:
// either the slice value must be observed, or an initial table over
// contemporaneous parents stands in.
struct InitialProvision {
  bool must_observe = true;
  std::optional<TemplateTabularCpd> table;
};

// The full temporal model specification.
struct DnmSpec {
  SliceTemplate slice;
  std::vector<LaggedArc> lagged_arcs;
  std::map<std::string, TemplateCpd> cpds;
  std::map<std::string, InitialProvision> initial_slices;
};

// Result of evaluating one mixture row.  The normalizer is the constant
// that scaled the unnormalized entries to sum to one (always 1 for the
// additive form).
struct MixtureEvalResult {
  Distribution distribution;
  double normalizer = 1.0;
};

// Pointwise convex combination alpha*Q + (1-alpha)*R.
MixtureEvalResult mixture_eval_additive(const Distribution& q_row,
                                        const Distribution& r_row, double alpha);

// Entries proportional to Q_i^alpha * R_i^(1-alpha), normalized; 0^0 = 1.
// Throws DegenerateMixtureError when every unnormalized entry is zero.
MixtureEvalResult mixture_eval_multiplicative(const Distribution& q_row,
                                              const Distribution& r_row, double alpha);

// Per-mixture-node likelihood weights, indexed by template variable; NaN
// entries are ignored (non-mixture variables).
using AlphaVector = std::vector<double>;

// A validated temporal model.  Immutable; all mutable session state
// (current weights, history) lives outside.
class CompiledModel {
 public:
  // Collects every violation without throwing.
  static ValidationReport validate(const DnmSpec& spec);

  // Validates and indexes; throws ValidationError on any violation.
  static CompiledModel compile(DnmSpec spec);

  // Holds pointers into its own spec storage; movable but not copyable.
  CompiledModel(const CompiledModel&) = delete;
  CompiledModel& operator=(const CompiledModel&) = delete;
  CompiledModel(CompiledModel&&) = default;
  CompiledModel& operator=(CompiledModel&&) = default;

  const DnmSpec& spec() const { return spec_; }
  int variable_count() const { return static_cast<int>(spec_.slice.variables.size()); }
  const Variable& variable(int i) const { return spec_.slice.variables[static_cast<std::size_t>(i)]; }
  std::optional<int> find_variable(const std::string& name) const;

  int max_lag() const { return max_lag_; }
  bool is_mixture(int var) const { return mixture_[static_cast<std::size_t>(var)] != nullptr; }
  const TemplateMixtureCpd* mixture(int var) const { return mixture_[static_cast<std::size_t>(var)]; }
  const TemplateTabularCpd* tabular(int var) const { return tabular_[static_cast<std::size_t>(var)]; }

  // First slice at which a variable's regular CPD applies; before this the
  // initial provision is in force.  Zero for non-lagged variables.
  int first_regular_slice(int var) const { return first_regular_[static_cast<std::size_t>(var)]; }

  const InitialProvision* provision(int var) const;

  // Indices of variables with a mixture CPD, in template order.
  const std::vector<int>& mixture_variables() const { return mixture_vars_; }

  // Topological order of the contemporaneous slice graph.
  const std::vector<int>& slice_topological_order() const { return slice_topo_; }

  // Initial weights: alpha_init for mixture variables, NaN elsewhere.
  AlphaVector initial_alphas() const;

  // Q and R rows for a mixture variable, given parent state indices in the
  // CPD's declared parent order.
  Distribution q_row(int var, std::span<const int> q_parent_states) const;
  Distribution r_row(int var, std::span<const int> r_parent_states) const;

  // Parent indices resolved to template variables.
  const std::vector<int>& q_parent_vars(int var) const { return q_parent_vars_[static_cast<std::size_t>(var)]; }
  const std::vector<int>& r_parent_vars(int var) const { return r_parent_vars_[static_cast<std::size_t>(var)]; }
  const std::vector<int>& tabular_parent_vars(int var) const { return q_parent_vars_[static_cast<std::size_t>(var)]; }

 private:
  CompiledModel() = default;
  void index();

  DnmSpec spec_;
  int max_lag_ = 0;
  std::map<std::string, int> name_index_;
  std::vector<const TemplateMixtureCpd*> mixture_;
  std::vector<const TemplateTabularCpd*> tabular_;
  std::vector<int> first_regular_;
  std::vector<int> mixture_vars_;
  std::vector<int> slice_topo_;
  std::vector<std::vector<int>> q_parent_vars_;  // tabular parents for tabular nodes
  std::vector<std::vector<int>> r_parent_vars_;
};

// A static network obtained by instantiating the template over slices
// 0..last_slice and materializing mixture rows at the given weights.
// Nodes whose initial provision is "must be observed" carry a uniform
// placeholder CPD and are listed in must_observe; inference over them is
// only meaningful when evidence pins them.
struct GroundNetwork {
  DiscreteNetwork network;
  int template_variable_count = 0;
  int last_slice = 0;
  std::vector<std::pair<int, int>> must_observe;  // (template var, slice)

  int node(int template_var, int slice) const {
    return slice * template_variable_count + template_var;
  }
};

GroundNetwork unroll(const CompiledModel& model, int last_slice, const AlphaVector& alphas);

// Forecast window: the slices t+1..t+horizons plus point-mass root nodes
// for every observed lagged source at slices <= t.  Exact whenever all
// those sources are observed, because the observed sources block every
// path from the remaining past into the future; returns nullopt when one
// is missing (or lies before time 0) so the caller can fall back to a full
// unroll.
struct ForecastNetwork {
  DiscreteNetwork network;
  int base_time = 0;
  int horizons = 0;
  Evidence evidence;                       // boundary observations
  std::map<std::pair<int, int>, int> node_of;  // (template var, slice) -> node

  int future_node(int template_var, int horizon) const {
    return node_of.at({template_var, base_time + horizon});
  }
};

std::optional<ForecastNetwork> try_build_forecast_network(const CompiledModel& model,
                                                          const ObservationHistory& history,
                                                          int base_time, int horizons,
                                                          const AlphaVector& alphas);

}  // namespace dnmcast

#endif  // DNMCAST_TEMPORAL_HPP
