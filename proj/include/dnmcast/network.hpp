#ifndef DNMCAST_NETWORK_HPP
#define DNMCAST_NETWORK_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dnmcast/types.hpp"

namespace dnmcast {

// Structure of a static discrete belief network: variables plus an ordered
// parent list per variable.  Plain data; validate_structure checks it.
struct NetworkStructure {
  std::vector<Variable> variables;
  std::vector<std::vector<int>> parents;  // one list per variable, indices
};

// Checks that names are unique, parent references resolve, parent lists
// carry no duplicates, and the graph is acyclic.  Cycles are reported with
// the names of the variables involved.
ValidationReport validate_structure(const NetworkStructure& structure);

// A conditional probability table.  Rows are stored flat in row-major
// order over parent_order (last parent varies fastest), each row a
// distribution over the target's states.
class TabularCpd {
 public:
  TabularCpd() = default;
  TabularCpd(int target, std::vector<int> parent_order,
             std::vector<int> parent_cards, int target_card,
             std::vector<double> table);

  int target() const { return target_; }
  const std::vector<int>& parent_order() const { return parent_order_; }
  const std::vector<int>& parent_cards() const { return parent_cards_; }
  int target_card() const { return target_card_; }
  int row_count() const { return row_count_; }
  const std::vector<double>& table() const { return table_; }

  // Row index for a full parent-state assignment given in parent_order.
  int row_index(std::span<const int> parent_states) const;

  std::span<const double> row(int row_idx) const {
    return {table_.data() + static_cast<std::size_t>(row_idx) * target_card_,
            static_cast<std::size_t>(target_card_)};
  }

  // Every row must be a valid distribution.
  bool rows_valid(double tol = kDistributionSumTol) const;

 private:
  int target_ = -1;
  std::vector<int> parent_order_;
  std::vector<int> parent_cards_;
  int target_card_ = 0;
  int row_count_ = 0;
  std::vector<double> table_;  // row_count_ * target_card_
};

// Partial assignment of observed states, keyed by variable index.  std::map
// keeps iteration deterministic.
using Evidence = std::map<int, int>;

// An immutable validated discrete belief network: structure plus one CPT
// per variable.  Safe for concurrent read by any number of inference or
// sampling calls.
class DiscreteNetwork {
 public:
  // Throws ValidationError when the structure or the CPTs are invalid.
  DiscreteNetwork(NetworkStructure structure, std::vector<TabularCpd> cpds);

  int variable_count() const { return static_cast<int>(structure_.variables.size()); }
  const Variable& variable(int i) const { return structure_.variables[static_cast<std::size_t>(i)]; }
  const std::vector<int>& parents(int i) const { return structure_.parents[static_cast<std::size_t>(i)]; }
  const TabularCpd& cpd(int i) const { return cpds_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& topological_order() const { return topo_order_; }

  std::optional<int> find_variable(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Evidence built from name/state-label pairs; throws DomainError on
  // unknown names or labels.
  Evidence evidence_from_labels(
      const std::vector<std::pair<std::string, std::string>>& assignments) const;

 private:
  NetworkStructure structure_;
  std::vector<TabularCpd> cpds_;
  std::vector<int> topo_order_;
  std::map<std::string, int> index_;
};

}  // namespace dnmcast

#endif  // DNMCAST_NETWORK_HPP
