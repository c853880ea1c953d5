#include "dnmcast/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dnmcast {

namespace {

// Kahn topological sort; returns empty when the graph has a cycle.
std::vector<int> topo_sort(const std::vector<std::vector<int>>& parents, int n) {
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    for (int p : parents[static_cast<std::size_t>(v)]) {
      children[static_cast<std::size_t>(p)].push_back(v);
      ++indeg[static_cast<std::size_t>(v)];
    }
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<int> ready;
  for (int v = n - 1; v >= 0; --v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (int c : children[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
    }
  }
  if (static_cast<int>(order.size()) != n) order.clear();
  return order;
}

}  // namespace

ValidationReport validate_structure(const NetworkStructure& structure) {
  ValidationReport report;
  const int n = static_cast<int>(structure.variables.size());

  if (structure.parents.size() != structure.variables.size()) {
    report.add("network", "parent lists and variable list differ in length");
    return report;
  }

  std::set<std::string> seen;
  for (int v = 0; v < n; ++v) {
    const Variable& var = structure.variables[static_cast<std::size_t>(v)];
    if (var.name.empty()) report.add("variable #" + std::to_string(v), "empty name");
    if (!seen.insert(var.name).second) {
      report.add(var.name, "duplicate variable name");
    }
    if (var.states.size() < 2) {
      report.add(var.name, "needs at least two states");
    }
    std::set<std::string> state_seen;
    for (const auto& s : var.states) {
      if (!state_seen.insert(s).second) {
        report.add(var.name, "duplicate state label '" + s + "'");
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    const std::string& name = structure.variables[static_cast<std::size_t>(v)].name;
    std::set<int> parent_seen;
    for (int p : structure.parents[static_cast<std::size_t>(v)]) {
      if (p < 0 || p >= n) {
        report.add(name, "parent index " + std::to_string(p) + " out of range");
      } else if (!parent_seen.insert(p).second) {
        report.add(name, "duplicate parent '" +
                             structure.variables[static_cast<std::size_t>(p)].name + "'");
      }
    }
  }
  if (!report.ok()) return report;

  if (topo_sort(structure.parents, n).empty() && n > 0) {
    // Name the variables on some cycle: those never removed by repeatedly
    // stripping sources and sinks.
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!alive[static_cast<std::size_t>(v)]) continue;
        bool has_parent = false;
        for (int p : structure.parents[static_cast<std::size_t>(v)]) {
          if (alive[static_cast<std::size_t>(p)]) has_parent = true;
        }
        bool has_child = false;
        for (int c = 0; c < n; ++c) {
          if (c == v || !alive[static_cast<std::size_t>(c)]) continue;
          for (int p : structure.parents[static_cast<std::size_t>(c)]) {
            if (p == v) has_child = true;
          }
        }
        if (!has_parent || !has_child) {
          alive[static_cast<std::size_t>(v)] = false;
          changed = true;
        }
      }
    }
    std::ostringstream names;
    for (int v = 0; v < n; ++v) {
      if (alive[static_cast<std::size_t>(v)]) {
        if (names.tellp() > 0) names << ", ";
        names << structure.variables[static_cast<std::size_t>(v)].name;
      }
    }
    report.add("network", "cycle involving {" + names.str() + "}");
  }
  return report;
}

TabularCpd::TabularCpd(int target, std::vector<int> parent_order,
                       std::vector<int> parent_cards, int target_card,
                       std::vector<double> table)
    : target_(target),
      parent_order_(std::move(parent_order)),
      parent_cards_(std::move(parent_cards)),
      target_card_(target_card),
      table_(std::move(table)) {
  row_count_ = 1;
  for (int c : parent_cards_) row_count_ *= c;
}

int TabularCpd::row_index(std::span<const int> parent_states) const {
  int idx = 0;
  for (std::size_t i = 0; i < parent_cards_.size(); ++i) {
    idx = idx * parent_cards_[i] + parent_states[i];
  }
  return idx;
}

bool TabularCpd::rows_valid(double tol) const {
  if (static_cast<int>(table_.size()) != row_count_ * target_card_) return false;
  for (int r = 0; r < row_count_; ++r) {
    auto vals = row(r);
    double sum = 0.0;
    for (double v : vals) {
      if (!(v >= 0.0)) return false;
      sum += v;
    }
    if (!(sum > 1.0 - tol && sum < 1.0 + tol)) return false;
  }
  return true;
}

DiscreteNetwork::DiscreteNetwork(NetworkStructure structure,
                                 std::vector<TabularCpd> cpds)
    : structure_(std::move(structure)), cpds_(std::move(cpds)) {
  ValidationReport report = validate_structure(structure_);
  const int n = static_cast<int>(structure_.variables.size());

  if (report.ok()) {
    if (static_cast<int>(cpds_.size()) != n) {
      report.add("network", "expected one CPD per variable");
    } else {
      for (int v = 0; v < n; ++v) {
        const auto& cpd = cpds_[static_cast<std::size_t>(v)];
        const std::string& name = structure_.variables[static_cast<std::size_t>(v)].name;
        if (cpd.target() != v ||
            cpd.parent_order() != structure_.parents[static_cast<std::size_t>(v)]) {
          report.add(name, "CPD parents disagree with structure");
          continue;
        }
        if (cpd.target_card() !=
            structure_.variables[static_cast<std::size_t>(v)].cardinality()) {
          report.add(name, "CPD row width disagrees with state count");
          continue;
        }
        bool cards_ok = true;
        for (std::size_t i = 0; i < cpd.parent_order().size(); ++i) {
          int p = cpd.parent_order()[i];
          if (cpd.parent_cards()[i] !=
              structure_.variables[static_cast<std::size_t>(p)].cardinality()) {
            cards_ok = false;
          }
        }
        if (!cards_ok) {
          report.add(name, "CPD parent cardinalities disagree with structure");
        } else if (!cpd.rows_valid()) {
          report.add(name, "CPD has a row that is not a valid distribution");
        }
      }
    }
  }
  if (!report.ok()) throw ValidationError(std::move(report));

  for (int v = 0; v < n; ++v) {
    index_.emplace(structure_.variables[static_cast<std::size_t>(v)].name, v);
  }
  topo_order_ = [this, n] {
    std::vector<int> order;
    // Reuse the sorted order from validation; recompute here.
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      for (int p : structure_.parents[static_cast<std::size_t>(v)]) {
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
      order.push_back(v);
      for (int c : children[static_cast<std::size_t>(v)]) {
        if (--indeg[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
      }
    }
    return order;
  }();
}

Evidence DiscreteNetwork::evidence_from_labels(
    const std::vector<std::pair<std::string, std::string>>& assignments) const {
  Evidence ev;
  for (const auto& [name, label] : assignments) {
    auto idx = find_variable(name);
    if (!idx) throw DomainError("unknown variable '" + name + "'");
    int s = variable(*idx).state_index(label);
    if (s < 0) {
      throw DomainError("unknown state '" + label + "' for variable '" + name + "'");
    }
    ev[*idx] = s;
  }
  return ev;
}

}  // namespace dnmcast
