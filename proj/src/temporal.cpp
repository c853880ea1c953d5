#include "dnmcast/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

namespace dnmcast {

MixtureEvalResult mixture_eval_additive(const Distribution& q_row,
                                        const Distribution& r_row, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("mixture weight must lie in [0,1], got " + std::to_string(alpha));
  }
  if (q_row.size() != r_row.size()) {
    throw DomainError("mixture rows differ in length");
  }
  std::vector<double> out(static_cast<std::size_t>(q_row.size()));
  for (int i = 0; i < q_row.size(); ++i) {
    out[static_cast<std::size_t>(i)] = alpha * q_row[i] + (1.0 - alpha) * r_row[i];
  }
  return {Distribution(std::move(out)), 1.0};
}

MixtureEvalResult mixture_eval_multiplicative(const Distribution& q_row,
                                              const Distribution& r_row, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("mixture weight must lie in [0,1], got " + std::to_string(alpha));
  }
  if (q_row.size() != r_row.size()) {
    throw DomainError("mixture rows differ in length");
  }
  std::vector<double> out(static_cast<std::size_t>(q_row.size()));
  double sum = 0.0;
  for (int i = 0; i < q_row.size(); ++i) {
    // std::pow(0,0) is 1, which is the convention wanted here.
    double u = std::pow(q_row[i], alpha) * std::pow(r_row[i], 1.0 - alpha);
    out[static_cast<std::size_t>(i)] = u;
    sum += u;
  }
  if (!(sum > 0.0)) {
    throw DegenerateMixtureError("multiplicative mixture has empty support");
  }
  for (double& v : out) v /= sum;
  return {Distribution(std::move(out)), 1.0 / sum};
}

namespace {

int table_rows(const std::vector<int>& parent_cards) {
  int rows = 1;
  for (int c : parent_cards) rows *= c;
  return rows;
}

bool rows_are_distributions(const std::vector<double>& table, int rows, int card) {
  if (static_cast<int>(table.size()) != rows * card) return false;
  for (int r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (int s = 0; s < card; ++s) {
      double v = table[static_cast<std::size_t>(r * card + s)];
      if (!(v >= 0.0)) return false;
      sum += v;
    }
    if (!(sum > 1.0 - kDistributionSumTol && sum < 1.0 + kDistributionSumTol)) return false;
  }
  return true;
}

bool identifier_ok(const std::string& s) {
  if (s.empty()) return false;
  return s.find(',') == std::string::npos && s.find('@') == std::string::npos &&
         s.find('\n') == std::string::npos;
}

}  // namespace

ValidationReport CompiledModel::validate(const DnmSpec& spec) {
  ValidationReport report;
  const auto& vars = spec.slice.variables;

  std::map<std::string, int> index;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!identifier_ok(vars[i].name)) {
      report.add(vars[i].name.empty() ? "variable #" + std::to_string(i) : vars[i].name,
                 "variable names must be nonempty and free of ',' '@' and newlines");
    }
    for (const auto& s : vars[i].states) {
      if (!identifier_ok(s)) {
        report.add(vars[i].name, "state label '" + s + "' contains a reserved character");
      }
    }
    if (index.count(vars[i].name)) {
      report.add(vars[i].name, "duplicate variable name");
    }
    index[vars[i].name] = static_cast<int>(i);
    if (vars[i].states.size() < 2) report.add(vars[i].name, "needs at least two states");
  }

  auto lookup = [&](const std::string& name) -> int {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
  };

  // Contemporaneous arcs must reference template variables and form a DAG.
  std::set<std::pair<int, int>> contemporaneous;
  for (const auto& [from, to] : spec.slice.contemporaneous_arcs) {
    int f = lookup(from), t = lookup(to);
    if (f < 0 || t < 0) {
      report.add(from + "->" + to, "arc endpoint is not a template variable");
      continue;
    }
    if (f == t) report.add(from, "self arc");
    if (!contemporaneous.insert({f, t}).second) {
      report.add(from + "->" + to, "duplicate contemporaneous arc");
    }
  }

  std::set<std::tuple<int, int, int>> lagged;  // (source, lag, target)
  for (const auto& arc : spec.lagged_arcs) {
    int f = lookup(arc.source), t = lookup(arc.target);
    if (f < 0 || t < 0) {
      report.add(arc.source + "->" + arc.target, "lagged arc endpoint is not a template variable");
      continue;
    }
    if (arc.lag < 1) {
      report.add(arc.source + "->" + arc.target,
                 "lag must be >= 1, got " + std::to_string(arc.lag));
      continue;
    }
    if (!lagged.insert({f, arc.lag, t}).second) {
      report.add(arc.source + "->" + arc.target, "duplicate lagged arc");
    }
  }
  if (!report.ok()) return report;

  // DAG check on the contemporaneous slice only; lagged arcs always point
  // forward in time, so the unrolled graph is acyclic iff the slice is.
  {
    NetworkStructure s;
    s.variables = vars;
    s.parents.resize(vars.size());
    for (const auto& [f, t] : contemporaneous) {
      s.parents[static_cast<std::size_t>(t)].push_back(f);
    }
    ValidationReport slice_report = validate_structure(s);
    for (auto& v : slice_report.violations) report.violations.push_back(std::move(v));
  }

  // Exactly one CPD per variable, and its parents must match the declared
  // arcs exactly.
  for (const auto& [name, cpd] : spec.cpds) {
    if (lookup(name) < 0) report.add(name, "CPD for unknown variable");
  }
  for (std::size_t vi = 0; vi < vars.size(); ++vi) {
    const std::string& name = vars[vi].name;
    auto it = spec.cpds.find(name);
    if (it == spec.cpds.end()) {
      report.add(name, "no CPD");
      continue;
    }
    const int v = static_cast<int>(vi);
    const int card = vars[vi].cardinality();

    std::set<int> arcs_in;
    for (const auto& [f, t] : contemporaneous) {
      if (t == v) arcs_in.insert(f);
    }
    std::set<std::pair<int, int>> lags_in;  // (source, lag)
    for (const auto& [f, k, t] : lagged) {
      if (t == v) lags_in.insert({f, k});
    }

    if (const auto* tab = std::get_if<TemplateTabularCpd>(&it->second)) {
      if (!lags_in.empty()) {
        report.add(name, "has lagged arcs but a tabular CPD; use a mixture CPD");
      }
      std::set<int> used;
      std::vector<int> cards;
      for (const auto& p : tab->parents) {
        int pi = lookup(p);
        if (pi < 0) {
          report.add(name, "unknown CPD parent '" + p + "'");
        } else if (!used.insert(pi).second) {
          report.add(name, "duplicate CPD parent '" + p + "'");
        } else {
          cards.push_back(vars[static_cast<std::size_t>(pi)].cardinality());
        }
      }
      if (used != arcs_in) {
        report.add(name, "CPD parents do not match the declared contemporaneous arcs");
      }
      if (!rows_are_distributions(tab->table, table_rows(cards), card)) {
        report.add(name, "CPD table is not a complete set of valid rows");
      }
    } else {
      const auto& mix = std::get<TemplateMixtureCpd>(it->second);
      if (!(mix.alpha_init >= 0.0 && mix.alpha_init <= 1.0)) {
        report.add(name, "alpha_init outside [0,1]");
      }
      std::set<int> q_used;
      std::vector<int> q_cards;
      for (const auto& p : mix.q_parents) {
        int pi = lookup(p);
        if (pi < 0) {
          report.add(name, "unknown Q parent '" + p + "'");
        } else if (!q_used.insert(pi).second) {
          report.add(name, "duplicate Q parent '" + p + "'");
        } else {
          q_cards.push_back(vars[static_cast<std::size_t>(pi)].cardinality());
        }
      }
      if (q_used != arcs_in) {
        report.add(name, "Q parents do not match the declared contemporaneous arcs");
      }
      std::set<std::pair<int, int>> r_used;
      std::vector<int> r_cards;
      for (const auto& rp : mix.r_parents) {
        int pi = lookup(rp.variable);
        if (pi < 0) {
          report.add(name, "unknown R parent '" + rp.variable + "'");
        } else if (!r_used.insert({pi, rp.lag}).second) {
          report.add(name, "duplicate R parent '" + rp.variable + "'");
        } else {
          r_cards.push_back(vars[static_cast<std::size_t>(pi)].cardinality());
        }
      }
      if (r_used != lags_in) {
        report.add(name, "R parents do not match the declared lagged arcs");
      }
      if (mix.r_parents.empty()) {
        report.add(name, "mixture CPD needs at least one lagged parent");
      }
      if (!rows_are_distributions(mix.q_table, table_rows(q_cards), card)) {
        report.add(name, "Q table is not a complete set of valid rows");
      }
      if (!rows_are_distributions(mix.r_table, table_rows(r_cards), card)) {
        report.add(name, "R table is not a complete set of valid rows");
      }

      // A node that looks back `lag` slices needs a provision for the
      // slices that would reach before time 0.
      int need = 0;
      for (const auto& rp : mix.r_parents) need = std::max(need, rp.lag);
      if (need >= 1) {
        auto pit = spec.initial_slices.find(name);
        if (pit == spec.initial_slices.end()) {
          report.add(name, "lagged node lacks an initial-slice provision");
        } else if (!pit->second.must_observe) {
          if (!pit->second.table) {
            report.add(name, "initial provision has neither 'observed' nor a table");
          } else {
            const auto& tab = *pit->second.table;
            std::set<int> used;
            std::vector<int> cards;
            for (const auto& p : tab.parents) {
              int pi = lookup(p);
              if (pi < 0 || !used.insert(pi).second) {
                report.add(name, "bad initial-table parent '" + p + "'");
              } else if (!arcs_in.count(pi)) {
                report.add(name, "initial-table parent '" + p + "' is not a contemporaneous parent");
              } else {
                cards.push_back(vars[static_cast<std::size_t>(pi)].cardinality());
              }
            }
            if (!rows_are_distributions(tab.table, table_rows(cards), card)) {
              report.add(name, "initial table is not a complete set of valid rows");
            }
          }
        }
      }
    }
  }

  for (const auto& [name, provision] : spec.initial_slices) {
    (void)provision;
    if (lookup(name) < 0) report.add(name, "initial provision for unknown variable");
  }

  return report;
}

CompiledModel CompiledModel::compile(DnmSpec spec) {
  ValidationReport report = validate(spec);
  if (!report.ok()) throw ValidationError(std::move(report));
  CompiledModel model;
  model.spec_ = std::move(spec);
  model.index();
  return model;
}

void CompiledModel::index() {
  const int n = variable_count();
  mixture_.assign(static_cast<std::size_t>(n), nullptr);
  tabular_.assign(static_cast<std::size_t>(n), nullptr);
  first_regular_.assign(static_cast<std::size_t>(n), 0);
  q_parent_vars_.assign(static_cast<std::size_t>(n), {});
  r_parent_vars_.assign(static_cast<std::size_t>(n), {});

  for (int v = 0; v < n; ++v) name_index_[variable(v).name] = v;

  max_lag_ = 0;
  for (int v = 0; v < n; ++v) {
    const auto& cpd = spec_.cpds.at(variable(v).name);
    if (const auto* tab = std::get_if<TemplateTabularCpd>(&cpd)) {
      tabular_[static_cast<std::size_t>(v)] = tab;
      for (const auto& p : tab->parents) {
        q_parent_vars_[static_cast<std::size_t>(v)].push_back(*find_variable(p));
      }
    } else {
      const auto& mix = std::get<TemplateMixtureCpd>(cpd);
      mixture_[static_cast<std::size_t>(v)] = &mix;
      mixture_vars_.push_back(v);
      for (const auto& p : mix.q_parents) {
        q_parent_vars_[static_cast<std::size_t>(v)].push_back(*find_variable(p));
      }
      int need = 0;
      for (const auto& rp : mix.r_parents) {
        r_parent_vars_[static_cast<std::size_t>(v)].push_back(*find_variable(rp.variable));
        need = std::max(need, rp.lag);
        max_lag_ = std::max(max_lag_, rp.lag);
      }
      first_regular_[static_cast<std::size_t>(v)] = need;
    }
  }

  // Contemporaneous topological order (Kahn).
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    for (int p : q_parent_vars_[static_cast<std::size_t>(v)]) {
      children[static_cast<std::size_t>(p)].push_back(v);
      ++indeg[static_cast<std::size_t>(v)];
    }
  }
  std::vector<int> ready;
  for (int v = n - 1; v >= 0; --v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    slice_topo_.push_back(v);
    for (int c : children[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
    }
  }
}

std::optional<int> CompiledModel::find_variable(const std::string& name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

const InitialProvision* CompiledModel::provision(int var) const {
  auto it = spec_.initial_slices.find(variable(var).name);
  return it == spec_.initial_slices.end() ? nullptr : &it->second;
}

AlphaVector CompiledModel::initial_alphas() const {
  AlphaVector alphas(static_cast<std::size_t>(variable_count()),
                     std::numeric_limits<double>::quiet_NaN());
  for (int v : mixture_vars_) {
    alphas[static_cast<std::size_t>(v)] = mixture_[static_cast<std::size_t>(v)]->alpha_init;
  }
  return alphas;
}

namespace {

Distribution table_row(const std::vector<double>& table, const std::vector<int>& cards,
                       std::span<const int> states, int target_card) {
  int row = 0;
  for (std::size_t i = 0; i < cards.size(); ++i) row = row * cards[i] + states[i];
  std::vector<double> out(static_cast<std::size_t>(target_card));
  for (int s = 0; s < target_card; ++s) {
    out[static_cast<std::size_t>(s)] = table[static_cast<std::size_t>(row * target_card + s)];
  }
  return Distribution(std::move(out));
}

}  // namespace

Distribution CompiledModel::q_row(int var, std::span<const int> q_parent_states) const {
  const auto* mix = mixture_[static_cast<std::size_t>(var)];
  std::vector<int> cards;
  for (int p : q_parent_vars_[static_cast<std::size_t>(var)]) cards.push_back(variable(p).cardinality());
  return table_row(mix->q_table, cards, q_parent_states, variable(var).cardinality());
}

Distribution CompiledModel::r_row(int var, std::span<const int> r_parent_states) const {
  const auto* mix = mixture_[static_cast<std::size_t>(var)];
  std::vector<int> cards;
  for (int p : r_parent_vars_[static_cast<std::size_t>(var)]) cards.push_back(variable(p).cardinality());
  return table_row(mix->r_table, cards, r_parent_states, variable(var).cardinality());
}

namespace {

std::string ground_name(const std::string& var, int slice) {
  return var + "@" + std::to_string(slice);
}

// Builds the materialized CPT for a mixture node instantiated at a slice.
// Parent order is q-parents (at `slice`) then r-parents (at slice - lag);
// parent node indices are supplied by the caller.
TabularCpd materialize_mixture(const CompiledModel& model, int var, double alpha,
                               int node_index, const std::vector<int>& parent_nodes,
                               const std::vector<int>& parent_cards) {
  const auto* mix = model.mixture(var);
  const int card = model.variable(var).cardinality();
  const int nq = static_cast<int>(mix->q_parents.size());
  const int nr = static_cast<int>(mix->r_parents.size());
  const int n_parents = nq + nr;

  int rows = 1;
  for (int c : parent_cards) rows *= c;

  std::vector<double> table(static_cast<std::size_t>(rows * card));
  std::vector<int> assign(static_cast<std::size_t>(n_parents), 0);
  for (int r = 0; r < rows; ++r) {
    std::span<const int> q_states(assign.data(), static_cast<std::size_t>(nq));
    std::span<const int> r_states(assign.data() + nq, static_cast<std::size_t>(nr));
    Distribution q = model.q_row(var, q_states);
    Distribution rr = model.r_row(var, r_states);
    MixtureEvalResult mixed = mix->decomposition == MixtureKind::additive
                                  ? mixture_eval_additive(q, rr, alpha)
                                  : mixture_eval_multiplicative(q, rr, alpha);
    for (int s = 0; s < card; ++s) {
      table[static_cast<std::size_t>(r * card + s)] = mixed.distribution[s];
    }
    for (int i = n_parents - 1; i >= 0; --i) {
      if (++assign[static_cast<std::size_t>(i)] < parent_cards[static_cast<std::size_t>(i)]) break;
      assign[static_cast<std::size_t>(i)] = 0;
    }
  }
  return TabularCpd(node_index, parent_nodes, parent_cards, card, std::move(table));
}

TabularCpd tabular_from_template(const CompiledModel& model, const TemplateTabularCpd& tab,
                                 int var, int node_index, const std::vector<int>& parent_nodes) {
  std::vector<int> cards;
  for (const auto& p : tab.parents) {
    cards.push_back(model.variable(*model.find_variable(p)).cardinality());
  }
  return TabularCpd(node_index, parent_nodes, cards, model.variable(var).cardinality(),
                    tab.table);
}

TabularCpd uniform_placeholder(const CompiledModel& model, int var, int node_index) {
  const int card = model.variable(var).cardinality();
  std::vector<double> row(static_cast<std::size_t>(card), 1.0 / card);
  return TabularCpd(node_index, {}, {}, card, std::move(row));
}

}  // namespace

GroundNetwork unroll(const CompiledModel& model, int last_slice, const AlphaVector& alphas) {
  if (last_slice < 0) throw DomainError("slice count must be nonnegative");
  const int n = model.variable_count();

  NetworkStructure structure;
  std::vector<TabularCpd> cpds;
  std::vector<std::pair<int, int>> must_observe;
  structure.variables.reserve(static_cast<std::size_t>(n * (last_slice + 1)));
  structure.parents.resize(static_cast<std::size_t>(n * (last_slice + 1)));

  auto node_of = [n](int var, int slice) { return slice * n + var; };

  for (int s = 0; s <= last_slice; ++s) {
    for (int v = 0; v < n; ++v) {
      Variable ground_var = model.variable(v);
      ground_var.name = ground_name(ground_var.name, s);
      structure.variables.push_back(std::move(ground_var));
    }
  }
  for (int s = 0; s <= last_slice; ++s) {
    for (int v = 0; v < n; ++v) {
      const int node = node_of(v, s);
      if (model.is_mixture(v)) {
        if (s >= model.first_regular_slice(v)) {
          std::vector<int> parent_nodes;
          std::vector<int> parent_cards;
          for (int p : model.q_parent_vars(v)) {
            parent_nodes.push_back(node_of(p, s));
            parent_cards.push_back(model.variable(p).cardinality());
          }
          const auto* mix = model.mixture(v);
          for (std::size_t i = 0; i < mix->r_parents.size(); ++i) {
            int p = model.r_parent_vars(v)[i];
            parent_nodes.push_back(node_of(p, s - mix->r_parents[i].lag));
            parent_cards.push_back(model.variable(p).cardinality());
          }
          structure.parents[static_cast<std::size_t>(node)] = parent_nodes;
          cpds.push_back(materialize_mixture(model, v, alphas[static_cast<std::size_t>(v)],
                                             node, parent_nodes, parent_cards));
        } else {
          const InitialProvision* provision = model.provision(v);
          if (provision->must_observe) {
            structure.parents[static_cast<std::size_t>(node)] = {};
            cpds.push_back(uniform_placeholder(model, v, node));
            must_observe.push_back({v, s});
          } else {
            std::vector<int> parent_nodes;
            for (const auto& p : provision->table->parents) {
              parent_nodes.push_back(node_of(*model.find_variable(p), s));
            }
            structure.parents[static_cast<std::size_t>(node)] = parent_nodes;
            cpds.push_back(tabular_from_template(model, *provision->table, v, node, parent_nodes));
          }
        }
      } else {
        const auto* tab = model.tabular(v);
        std::vector<int> parent_nodes;
        for (int p : model.tabular_parent_vars(v)) parent_nodes.push_back(node_of(p, s));
        structure.parents[static_cast<std::size_t>(node)] = parent_nodes;
        cpds.push_back(tabular_from_template(model, *tab, v, node, parent_nodes));
      }
    }
  }

  GroundNetwork ground{DiscreteNetwork(std::move(structure), std::move(cpds)), n, last_slice,
                       std::move(must_observe)};
  return ground;
}

std::optional<ForecastNetwork> try_build_forecast_network(const CompiledModel& model,
                                                          const ObservationHistory& history,
                                                          int base_time, int horizons,
                                                          const AlphaVector& alphas) {
  if (horizons < 1) throw DomainError("forecast horizon must be >= 1");
  const int n = model.variable_count();

  // Boundary pairs: lagged sources at slices <= base_time referenced by
  // some future slice.  All must be observed for the window to be exact.
  std::set<std::pair<int, int>> boundary;  // (var, slice)
  for (int v = 0; v < n; ++v) {
    if (!model.is_mixture(v)) continue;
    const auto* mix = model.mixture(v);
    for (std::size_t i = 0; i < mix->r_parents.size(); ++i) {
      int src = model.r_parent_vars(v)[i];
      int lag = mix->r_parents[i].lag;
      for (int f = base_time + 1; f <= base_time + horizons; ++f) {
        int ref = f - lag;
        if (ref > base_time) continue;
        if (ref < 0) return std::nullopt;  // window reaches before time 0
        if (!history.observed(ref, src)) return std::nullopt;
        boundary.insert({src, ref});
      }
    }
  }

  NetworkStructure structure;
  std::vector<TabularCpd> cpds;
  std::map<std::pair<int, int>, int> node_of;
  Evidence evidence;

  auto add_variable = [&](int var, int slice) {
    Variable ground_var = model.variable(var);
    ground_var.name = ground_name(ground_var.name, slice);
    node_of[{var, slice}] = static_cast<int>(structure.variables.size());
    structure.variables.push_back(std::move(ground_var));
    structure.parents.emplace_back();
    return static_cast<int>(structure.variables.size()) - 1;
  };

  for (const auto& [var, slice] : boundary) {
    int node = add_variable(var, slice);
    const int card = model.variable(var).cardinality();
    int state = *history.observed(slice, var);
    std::vector<double> point(static_cast<std::size_t>(card), 0.0);
    point[static_cast<std::size_t>(state)] = 1.0;
    cpds.push_back(TabularCpd(node, {}, {}, card, std::move(point)));
    evidence[node] = state;
  }

  for (int f = base_time + 1; f <= base_time + horizons; ++f) {
    for (int v = 0; v < n; ++v) add_variable(v, f);
  }
  for (int f = base_time + 1; f <= base_time + horizons; ++f) {
    for (int v = 0; v < n; ++v) {
      const int node = node_of.at({v, f});
      std::vector<int> parent_nodes;
      std::vector<int> parent_cards;
      if (model.is_mixture(v)) {
        const auto* mix = model.mixture(v);
        for (int p : model.q_parent_vars(v)) {
          parent_nodes.push_back(node_of.at({p, f}));
          parent_cards.push_back(model.variable(p).cardinality());
        }
        for (std::size_t i = 0; i < mix->r_parents.size(); ++i) {
          int p = model.r_parent_vars(v)[i];
          parent_nodes.push_back(node_of.at({p, f - mix->r_parents[i].lag}));
          parent_cards.push_back(model.variable(p).cardinality());
        }
        structure.parents[static_cast<std::size_t>(node)] = parent_nodes;
        cpds.push_back(materialize_mixture(model, v, alphas[static_cast<std::size_t>(v)],
                                           node, parent_nodes, parent_cards));
      } else {
        for (int p : model.tabular_parent_vars(v)) {
          parent_nodes.push_back(node_of.at({p, f}));
        }
        structure.parents[static_cast<std::size_t>(node)] = parent_nodes;
        cpds.push_back(tabular_from_template(model, *model.tabular(v), v, node, parent_nodes));
      }
    }
  }

  // CPD list must line up with node indices.
  std::sort(cpds.begin(), cpds.end(),
            [](const TabularCpd& a, const TabularCpd& b) { return a.target() < b.target(); });

  ForecastNetwork out{DiscreteNetwork(std::move(structure), std::move(cpds)), base_time,
                      horizons, std::move(evidence), std::move(node_of)};
  return out;
}

}  // namespace dnmcast
