#include "dnmcast/inference.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

namespace dnmcast {

namespace {

constexpr int kMaxFreeVariables = 28;
constexpr std::uint64_t kEnumBlock = 8192;

struct EnumPlan {
  std::vector<int> free_vars;       // unobserved variables, network order
  std::vector<int> free_cards;
  std::uint64_t completions = 1;
  std::vector<int> base_states;     // evidence pre-filled, -1 elsewhere
};

EnumPlan make_plan(const DiscreteNetwork& net, const Evidence& evidence, int query) {
  if (query < 0 || query >= net.variable_count()) {
    throw DomainError("query variable index out of range");
  }
  for (const auto& [v, s] : evidence) {
    if (v < 0 || v >= net.variable_count()) {
      throw DomainError("evidence variable index out of range");
    }
    if (s < 0 || s >= net.variable(v).cardinality()) {
      throw DomainError("evidence state out of range for '" + net.variable(v).name + "'");
    }
  }

  EnumPlan plan;
  plan.base_states.assign(static_cast<std::size_t>(net.variable_count()), -1);
  for (const auto& [v, s] : evidence) plan.base_states[static_cast<std::size_t>(v)] = s;
  for (int v = 0; v < net.variable_count(); ++v) {
    if (plan.base_states[static_cast<std::size_t>(v)] < 0) {
      plan.free_vars.push_back(v);
      plan.free_cards.push_back(net.variable(v).cardinality());
      plan.completions *= static_cast<std::uint64_t>(net.variable(v).cardinality());
    }
  }
  if (static_cast<int>(plan.free_vars.size()) > kMaxFreeVariables) {
    throw DomainError("too many unobserved variables for enumeration (" +
                      std::to_string(plan.free_vars.size()) + ")");
  }
  return plan;
}

// Joint probability of one full assignment.
double joint_weight(const DiscreteNetwork& net, const std::vector<int>& states) {
  double w = 1.0;
  for (int v = 0; v < net.variable_count(); ++v) {
    const TabularCpd& cpd = net.cpd(v);
    int row = 0;
    for (int p : cpd.parent_order()) {
      row = row * net.variable(p).cardinality() + states[static_cast<std::size_t>(p)];
    }
    w *= cpd.row(row)[static_cast<std::size_t>(states[static_cast<std::size_t>(v)])];
    if (w == 0.0) return 0.0;
  }
  return w;
}

// Accumulates query-state mass for completions [begin, end).
void accumulate_range(const DiscreteNetwork& net, const EnumPlan& plan, int query,
                      std::uint64_t begin, std::uint64_t end, std::vector<double>& acc) {
  std::vector<int> states = plan.base_states;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    std::uint64_t rem = idx;
    for (int i = static_cast<int>(plan.free_vars.size()) - 1; i >= 0; --i) {
      std::uint64_t card = static_cast<std::uint64_t>(plan.free_cards[static_cast<std::size_t>(i)]);
      states[static_cast<std::size_t>(plan.free_vars[static_cast<std::size_t>(i)])] =
          static_cast<int>(rem % card);
      rem /= card;
    }
    acc[static_cast<std::size_t>(states[static_cast<std::size_t>(query)])] +=
        joint_weight(net, states);
  }
}

Distribution normalize_posterior(std::vector<double> acc, const DiscreteNetwork& net,
                                 int query) {
  double total = std::accumulate(acc.begin(), acc.end(), 0.0);
  if (!(total > 0.0)) {
    throw InconsistentEvidenceError("evidence has probability zero for query '" +
                                    net.variable(query).name + "'");
  }
  for (double& v : acc) v /= total;
  return Distribution(std::move(acc));
}

}  // namespace

Distribution posterior_enumerate_serial(const DiscreteNetwork& net,
                                        const Evidence& evidence, int query) {
  EnumPlan plan = make_plan(net, evidence, query);
  std::vector<double> acc(static_cast<std::size_t>(net.variable(query).cardinality()), 0.0);
  accumulate_range(net, plan, query, 0, plan.completions, acc);
  return normalize_posterior(std::move(acc), net, query);
}

Distribution posterior_enumerate(const DiscreteNetwork& net, const Evidence& evidence,
                                 int query) {
  EnumPlan plan = make_plan(net, evidence, query);
  const int k = net.variable(query).cardinality();
  const std::uint64_t blocks = (plan.completions + kEnumBlock - 1) / kEnumBlock;

  std::vector<double> partials(static_cast<std::size_t>(blocks) * static_cast<std::size_t>(k), 0.0);
  const std::int64_t nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nblocks; ++b) {
    std::uint64_t begin = static_cast<std::uint64_t>(b) * kEnumBlock;
    std::uint64_t end = std::min(begin + kEnumBlock, plan.completions);
    std::vector<double> local(static_cast<std::size_t>(k), 0.0);
    accumulate_range(net, plan, query, begin, end, local);
    for (int s = 0; s < k; ++s) {
      partials[static_cast<std::size_t>(b) * static_cast<std::size_t>(k) +
               static_cast<std::size_t>(s)] = local[static_cast<std::size_t>(s)];
    }
  }

  // Fixed combination order keeps the sum identical for any thread count.
  std::vector<double> acc(static_cast<std::size_t>(k), 0.0);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    for (int s = 0; s < k; ++s) {
      acc[static_cast<std::size_t>(s)] +=
          partials[static_cast<std::size_t>(b) * static_cast<std::size_t>(k) +
                   static_cast<std::size_t>(s)];
    }
  }
  return normalize_posterior(std::move(acc), net, query);
}

namespace {

// Factor over a sorted set of variables, values stored row-major with the
// last variable varying fastest.
struct Factor {
  std::vector<int> vars;
  std::vector<int> cards;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

Factor factor_from_cpd(const DiscreteNetwork& net, int v, const Evidence& evidence) {
  const TabularCpd& cpd = net.cpd(v);

  std::vector<int> scope = cpd.parent_order();
  scope.push_back(v);
  std::vector<int> sorted_scope = scope;
  std::sort(sorted_scope.begin(), sorted_scope.end());

  // Keep only unobserved scope variables; observed ones are sliced out.
  Factor f;
  for (int sv : sorted_scope) {
    if (!evidence.count(sv)) {
      f.vars.push_back(sv);
      f.cards.push_back(net.variable(sv).cardinality());
    }
  }
  std::size_t n = 1;
  for (int c : f.cards) n *= static_cast<std::size_t>(c);
  f.values.assign(n, 0.0);

  std::vector<int> states(static_cast<std::size_t>(net.variable_count()), -1);
  for (const auto& [ev, es] : evidence) states[static_cast<std::size_t>(ev)] = es;

  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rem = idx;
    for (int i = static_cast<int>(f.vars.size()) - 1; i >= 0; --i) {
      std::size_t card = static_cast<std::size_t>(f.cards[static_cast<std::size_t>(i)]);
      states[static_cast<std::size_t>(f.vars[static_cast<std::size_t>(i)])] =
          static_cast<int>(rem % card);
      rem /= card;
    }
    int row = 0;
    for (int p : cpd.parent_order()) {
      row = row * net.variable(p).cardinality() + states[static_cast<std::size_t>(p)];
    }
    f.values[idx] = cpd.row(row)[static_cast<std::size_t>(states[static_cast<std::size_t>(v)])];
  }
  return f;
}

Factor multiply(const Factor& a, const Factor& b) {
  Factor out;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                 std::back_inserter(out.vars));
  out.cards.resize(out.vars.size());

  std::vector<int> a_pos(out.vars.size(), -1), b_pos(out.vars.size(), -1);
  for (std::size_t i = 0; i < out.vars.size(); ++i) {
    auto ia = std::lower_bound(a.vars.begin(), a.vars.end(), out.vars[i]);
    if (ia != a.vars.end() && *ia == out.vars[i]) {
      a_pos[i] = static_cast<int>(ia - a.vars.begin());
      out.cards[i] = a.cards[static_cast<std::size_t>(a_pos[i])];
    }
    auto ib = std::lower_bound(b.vars.begin(), b.vars.end(), out.vars[i]);
    if (ib != b.vars.end() && *ib == out.vars[i]) {
      b_pos[i] = static_cast<int>(ib - b.vars.begin());
      out.cards[i] = b.cards[static_cast<std::size_t>(b_pos[i])];
    }
  }

  std::size_t n = 1;
  for (int c : out.cards) n *= static_cast<std::size_t>(c);
  out.values.assign(n, 0.0);

  std::vector<int> assign(out.vars.size(), 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t ai = 0, bi = 0;
    for (std::size_t i = 0; i < out.vars.size(); ++i) {
      if (a_pos[i] >= 0) ai = ai * static_cast<std::size_t>(a.cards[static_cast<std::size_t>(a_pos[i])]) + static_cast<std::size_t>(assign[i]);
      if (b_pos[i] >= 0) bi = bi * static_cast<std::size_t>(b.cards[static_cast<std::size_t>(b_pos[i])]) + static_cast<std::size_t>(assign[i]);
    }
    out.values[idx] = a.values[ai] * b.values[bi];
    for (int i = static_cast<int>(out.vars.size()) - 1; i >= 0; --i) {
      if (++assign[static_cast<std::size_t>(i)] < out.cards[static_cast<std::size_t>(i)]) break;
      assign[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

Factor sum_out(const Factor& f, int var) {
  auto it = std::lower_bound(f.vars.begin(), f.vars.end(), var);
  std::size_t pos = static_cast<std::size_t>(it - f.vars.begin());

  Factor out;
  out.vars = f.vars;
  out.vars.erase(out.vars.begin() + static_cast<std::ptrdiff_t>(pos));
  out.cards = f.cards;
  int var_card = f.cards[pos];
  out.cards.erase(out.cards.begin() + static_cast<std::ptrdiff_t>(pos));

  std::size_t n = 1;
  for (int c : out.cards) n *= static_cast<std::size_t>(c);
  out.values.assign(n, 0.0);

  std::size_t inner = 1;  // stride of var in f
  for (std::size_t i = pos + 1; i < f.cards.size(); ++i) {
    inner *= static_cast<std::size_t>(f.cards[i]);
  }
  std::size_t outer = f.size() / (inner * static_cast<std::size_t>(var_card));

  std::size_t out_idx = 0;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in, ++out_idx) {
      double s = 0.0;
      std::size_t base = o * inner * static_cast<std::size_t>(var_card) + in;
      for (int k = 0; k < var_card; ++k) {
        s += f.values[base + static_cast<std::size_t>(k) * inner];
      }
      out.values[out_idx] = s;
    }
  }
  return out;
}

}  // namespace

Distribution posterior_eliminate(const DiscreteNetwork& net, const Evidence& evidence,
                                 int query) {
  // Validates indices and evidence states.
  make_plan(net, evidence, query);

  std::vector<Factor> factors;
  factors.reserve(static_cast<std::size_t>(net.variable_count()));
  double scalar = 1.0;  // product of factors whose scope became empty
  for (int v = 0; v < net.variable_count(); ++v) {
    Factor f = factor_from_cpd(net, v, evidence);
    if (f.vars.empty()) {
      scalar *= f.values[0];
    } else {
      factors.push_back(std::move(f));
    }
  }

  const bool query_observed = evidence.count(query) > 0;

  // Min-degree elimination over all unobserved variables; the query is
  // kept unless it is itself observed.
  std::vector<int> to_eliminate;
  for (int v = 0; v < net.variable_count(); ++v) {
    if (!evidence.count(v) && (query_observed || v != query)) to_eliminate.push_back(v);
  }

  std::vector<std::set<int>> neighbors(static_cast<std::size_t>(net.variable_count()));
  for (const Factor& f : factors) {
    for (int a : f.vars) {
      for (int b : f.vars) {
        if (a != b) neighbors[static_cast<std::size_t>(a)].insert(b);
      }
    }
  }

  std::set<int> remaining(to_eliminate.begin(), to_eliminate.end());
  while (!remaining.empty()) {
    // Smallest degree, lowest index on ties: deterministic.
    int best = -1;
    std::size_t best_deg = 0;
    for (int v : remaining) {
      std::size_t deg = 0;
      for (int nb : neighbors[static_cast<std::size_t>(v)]) {
        if (remaining.count(nb) || nb == query) ++deg;
      }
      if (best < 0 || deg < best_deg) {
        best = v;
        best_deg = deg;
      }
    }
    remaining.erase(best);

    Factor merged;
    bool have = false;
    std::vector<Factor> rest;
    rest.reserve(factors.size());
    for (Factor& f : factors) {
      if (std::binary_search(f.vars.begin(), f.vars.end(), best)) {
        merged = have ? multiply(merged, f) : std::move(f);
        have = true;
      } else {
        rest.push_back(std::move(f));
      }
    }
    factors = std::move(rest);
    if (!have) continue;

    Factor reduced = sum_out(merged, best);
    // Fill-in for the heuristic.
    for (int a : reduced.vars) {
      for (int b : reduced.vars) {
        if (a != b) neighbors[static_cast<std::size_t>(a)].insert(b);
      }
    }
    if (reduced.vars.empty()) {
      scalar *= reduced.values[0];
    } else {
      factors.push_back(std::move(reduced));
    }
  }

  if (query_observed) {
    // Everything was eliminated, so what is left is the evidence mass.
    double mass = scalar;
    for (const Factor& f : factors) {
      double s = 0.0;
      for (double v : f.values) s += v;
      mass *= s;
    }
    if (!(mass > 0.0)) {
      throw InconsistentEvidenceError("evidence has probability zero for query '" +
                                      net.variable(query).name + "'");
    }
    std::vector<double> point(static_cast<std::size_t>(net.variable(query).cardinality()), 0.0);
    point[static_cast<std::size_t>(evidence.at(query))] = 1.0;
    return Distribution(std::move(point));
  }

  Factor result;
  result.vars = {query};
  result.cards = {net.variable(query).cardinality()};
  result.values.assign(static_cast<std::size_t>(net.variable(query).cardinality()), 1.0);
  for (const Factor& f : factors) result = multiply(result, f);

  std::vector<double> acc(result.values);
  for (double& v : acc) v *= scalar;
  return normalize_posterior(std::move(acc), net, query);
}

}  // namespace dnmcast
