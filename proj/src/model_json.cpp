#include "dnmcast/model_json.hpp"

#include <json.hpp>

namespace dnmcast {

namespace {

using Json = nlohmann::ordered_json;

std::string join_key(const std::vector<std::string>& labels) {
  std::string key;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) key += ',';
    key += labels[i];
  }
  return key;
}

std::vector<std::string> split_key(const std::string& key) {
  if (key.empty()) return {};
  std::vector<std::string> out;
  std::string cur;
  for (char c : key) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Cardinalities and state lookup while parsing, before compilation.
struct VarIndex {
  std::map<std::string, const Variable*> by_name;

  const Variable& get(const std::string& name, const std::string& context) const {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw ModelFormatError(context + ": unknown variable '" + name + "'");
    }
    return *it->second;
  }
};

// Reads a row map keyed by comma-joined parent states into the flat
// row-major layout used by the template tables.
std::vector<double> parse_rows(const Json& rows, const std::vector<const Variable*>& parents,
                               const Variable& target, const std::string& context) {
  if (!rows.is_object()) throw ModelFormatError(context + ": 'rows' must be an object");

  int row_count = 1;
  for (const auto* p : parents) row_count *= p->cardinality();
  const int card = target.cardinality();
  std::vector<double> table(static_cast<std::size_t>(row_count * card), -1.0);

  int seen = 0;
  for (const auto& [key, value] : rows.items()) {
    auto labels = split_key(key);
    if (labels.size() != parents.size()) {
      throw ModelFormatError(context + ": row key '" + key + "' has " +
                             std::to_string(labels.size()) + " labels, expected " +
                             std::to_string(parents.size()));
    }
    int row = 0;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      int s = parents[i]->state_index(labels[i]);
      if (s < 0) {
        throw ModelFormatError(context + ": row key '" + key + "' has unknown state '" +
                               labels[i] + "' for '" + parents[i]->name + "'");
      }
      row = row * parents[i]->cardinality() + s;
    }
    if (!value.is_array() || static_cast<int>(value.size()) != card) {
      throw ModelFormatError(context + ": row '" + key + "' must list " +
                             std::to_string(card) + " probabilities");
    }
    if (table[static_cast<std::size_t>(row * card)] >= 0.0) {
      throw ModelFormatError(context + ": duplicate row key '" + key + "'");
    }
    for (int s = 0; s < card; ++s) {
      if (!value[static_cast<std::size_t>(s)].is_number()) {
        throw ModelFormatError(context + ": row '" + key + "' has a non-numeric entry");
      }
      table[static_cast<std::size_t>(row * card + s)] = value[static_cast<std::size_t>(s)].get<double>();
    }
    ++seen;
  }
  if (seen != row_count) {
    throw ModelFormatError(context + ": expected " + std::to_string(row_count) +
                           " rows, got " + std::to_string(seen));
  }
  return table;
}

Json emit_rows(const std::vector<double>& table, const std::vector<const Variable*>& parents,
               const Variable& target) {
  Json rows = Json::object();
  int row_count = 1;
  for (const auto* p : parents) row_count *= p->cardinality();
  const int card = target.cardinality();

  std::vector<int> assign(parents.size(), 0);
  for (int r = 0; r < row_count; ++r) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      labels.push_back(parents[i]->states[static_cast<std::size_t>(assign[i])]);
    }
    Json row = Json::array();
    for (int s = 0; s < card; ++s) {
      row.push_back(table[static_cast<std::size_t>(r * card + s)]);
    }
    rows[join_key(labels)] = std::move(row);
    for (int i = static_cast<int>(parents.size()) - 1; i >= 0; --i) {
      if (++assign[static_cast<std::size_t>(i)] < parents[static_cast<std::size_t>(i)]->cardinality()) break;
      assign[static_cast<std::size_t>(i)] = 0;
    }
  }
  return rows;
}

std::vector<const Variable*> resolve_parents(const Json& names, const VarIndex& index,
                                             const std::string& context) {
  if (!names.is_array()) throw ModelFormatError(context + ": parent list must be an array");
  std::vector<const Variable*> out;
  for (const auto& n : names) {
    if (!n.is_string()) throw ModelFormatError(context + ": parent names must be strings");
    out.push_back(&index.get(n.get<std::string>(), context));
  }
  return out;
}

}  // namespace

DnmSpec spec_from_json_text(const std::string& text) {
  Json doc = Json::parse(text);
  if (!doc.is_object()) throw ModelFormatError("model document must be a JSON object");

  DnmSpec spec;
  if (!doc.contains("variables") || !doc["variables"].is_array()) {
    throw ModelFormatError("missing 'variables' array");
  }
  for (const auto& v : doc["variables"]) {
    if (!v.is_object() || !v.contains("name") || !v.contains("states")) {
      throw ModelFormatError("each variable needs 'name' and 'states'");
    }
    Variable var;
    var.name = v["name"].get<std::string>();
    for (const auto& s : v["states"]) var.states.push_back(s.get<std::string>());
    spec.slice.variables.push_back(std::move(var));
  }

  VarIndex index;
  for (const auto& v : spec.slice.variables) index.by_name[v.name] = &v;

  if (doc.contains("contemporaneous_arcs")) {
    for (const auto& arc : doc["contemporaneous_arcs"]) {
      if (!arc.is_array() || arc.size() != 2) {
        throw ModelFormatError("contemporaneous arcs must be [from, to] pairs");
      }
      spec.slice.contemporaneous_arcs.push_back(
          {arc[0].get<std::string>(), arc[1].get<std::string>()});
    }
  }
  if (doc.contains("lagged_arcs")) {
    for (const auto& arc : doc["lagged_arcs"]) {
      if (!arc.is_object() || !arc.contains("from") || !arc.contains("lag") ||
          !arc.contains("to")) {
        throw ModelFormatError("lagged arcs must be {from, lag, to} objects");
      }
      spec.lagged_arcs.push_back({arc["from"].get<std::string>(), arc["lag"].get<int>(),
                                  arc["to"].get<std::string>()});
    }
  }

  if (!doc.contains("cpds") || !doc["cpds"].is_object()) {
    throw ModelFormatError("missing 'cpds' object");
  }
  for (const auto& [name, body] : doc["cpds"].items()) {
    const Variable& target = index.get(name, "cpds");
    const std::string context = "cpds." + name;
    if (!body.is_object()) throw ModelFormatError(context + ": must be an object");

    if (body.contains("decomposition")) {
      TemplateMixtureCpd mix;
      mix.target = name;
      const std::string kind = body["decomposition"].get<std::string>();
      if (kind == "additive") {
        mix.decomposition = MixtureKind::additive;
      } else if (kind == "multiplicative") {
        mix.decomposition = MixtureKind::multiplicative;
      } else {
        throw ModelFormatError(context + ": decomposition must be 'additive' or 'multiplicative'");
      }
      if (!body.contains("alpha_init") || !body["alpha_init"].is_number()) {
        throw ModelFormatError(context + ": missing numeric 'alpha_init'");
      }
      mix.alpha_init = body["alpha_init"].get<double>();

      auto q_parents = resolve_parents(body.value("q_parents", Json::array()), index, context);
      for (const auto* p : q_parents) mix.q_parents.push_back(p->name);
      if (!body.contains("q_table")) throw ModelFormatError(context + ": missing 'q_table'");
      mix.q_table = parse_rows(body["q_table"], q_parents, target, context + ".q_table");

      if (!body.contains("r_parents") || !body["r_parents"].is_array()) {
        throw ModelFormatError(context + ": missing 'r_parents' array");
      }
      std::vector<const Variable*> r_parents;
      for (const auto& rp : body["r_parents"]) {
        if (!rp.is_array() || rp.size() != 2 || !rp[0].is_string() ||
            !rp[1].is_number_integer()) {
          throw ModelFormatError(context + ": r_parents entries must be [variable, lag]");
        }
        const Variable& pv = index.get(rp[0].get<std::string>(), context);
        r_parents.push_back(&pv);
        mix.r_parents.push_back({pv.name, rp[1].get<int>()});
      }
      if (!body.contains("r_table")) throw ModelFormatError(context + ": missing 'r_table'");
      mix.r_table = parse_rows(body["r_table"], r_parents, target, context + ".r_table");
      spec.cpds[name] = std::move(mix);
    } else {
      TemplateTabularCpd tab;
      tab.target = name;
      auto parents = resolve_parents(body.value("parents", Json::array()), index, context);
      for (const auto* p : parents) tab.parents.push_back(p->name);
      if (!body.contains("rows")) throw ModelFormatError(context + ": missing 'rows'");
      tab.table = parse_rows(body["rows"], parents, target, context + ".rows");
      spec.cpds[name] = std::move(tab);
    }
  }

  if (doc.contains("initial_slices")) {
    if (!doc["initial_slices"].is_object()) {
      throw ModelFormatError("'initial_slices' must be an object");
    }
    for (const auto& [name, body] : doc["initial_slices"].items()) {
      const Variable& target = index.get(name, "initial_slices");
      const std::string context = "initial_slices." + name;
      if (body.is_string()) {
        if (body.get<std::string>() != "observed") {
          throw ModelFormatError(context + ": string form must be \"observed\"");
        }
        spec.initial_slices[name] = InitialProvision{true, std::nullopt};
      } else if (body.is_object()) {
        TemplateTabularCpd tab;
        tab.target = name;
        auto parents = resolve_parents(body.value("parents", Json::array()), index, context);
        for (const auto* p : parents) tab.parents.push_back(p->name);
        if (!body.contains("rows")) throw ModelFormatError(context + ": missing 'rows'");
        tab.table = parse_rows(body["rows"], parents, target, context + ".rows");
        spec.initial_slices[name] = InitialProvision{false, std::move(tab)};
      } else {
        throw ModelFormatError(context + ": must be \"observed\" or an initial table");
      }
    }
  }
  return spec;
}

std::string spec_to_json_text(const DnmSpec& spec) {
  Json doc = Json::object();

  VarIndex index;
  for (const auto& v : spec.slice.variables) index.by_name[v.name] = &v;

  doc["variables"] = Json::array();
  for (const auto& v : spec.slice.variables) {
    Json var = Json::object();
    var["name"] = v.name;
    var["states"] = v.states;
    doc["variables"].push_back(std::move(var));
  }

  doc["contemporaneous_arcs"] = Json::array();
  for (const auto& [from, to] : spec.slice.contemporaneous_arcs) {
    doc["contemporaneous_arcs"].push_back(Json::array({from, to}));
  }
  doc["lagged_arcs"] = Json::array();
  for (const auto& arc : spec.lagged_arcs) {
    Json a = Json::object();
    a["from"] = arc.source;
    a["lag"] = arc.lag;
    a["to"] = arc.target;
    doc["lagged_arcs"].push_back(std::move(a));
  }

  doc["cpds"] = Json::object();
  // Emit in template-variable order rather than map order.
  for (const auto& v : spec.slice.variables) {
    auto it = spec.cpds.find(v.name);
    if (it == spec.cpds.end()) continue;
    const Variable& target = index.get(v.name, "cpds");
    Json body = Json::object();
    if (const auto* tab = std::get_if<TemplateTabularCpd>(&it->second)) {
      body["parents"] = tab->parents;
      std::vector<const Variable*> parents;
      for (const auto& p : tab->parents) parents.push_back(&index.get(p, "cpds"));
      body["rows"] = emit_rows(tab->table, parents, target);
    } else {
      const auto& mix = std::get<TemplateMixtureCpd>(it->second);
      body["decomposition"] =
          mix.decomposition == MixtureKind::additive ? "additive" : "multiplicative";
      body["alpha_init"] = mix.alpha_init;
      body["q_parents"] = mix.q_parents;
      std::vector<const Variable*> q_parents;
      for (const auto& p : mix.q_parents) q_parents.push_back(&index.get(p, "cpds"));
      body["q_table"] = emit_rows(mix.q_table, q_parents, target);
      body["r_parents"] = Json::array();
      std::vector<const Variable*> r_parents;
      for (const auto& rp : mix.r_parents) {
        body["r_parents"].push_back(Json::array({rp.variable, rp.lag}));
        r_parents.push_back(&index.get(rp.variable, "cpds"));
      }
      body["r_table"] = emit_rows(mix.r_table, r_parents, target);
    }
    doc["cpds"][v.name] = std::move(body);
  }

  doc["initial_slices"] = Json::object();
  for (const auto& v : spec.slice.variables) {
    auto it = spec.initial_slices.find(v.name);
    if (it == spec.initial_slices.end()) continue;
    if (it->second.must_observe) {
      doc["initial_slices"][v.name] = "observed";
    } else {
      const auto& tab = *it->second.table;
      Json body = Json::object();
      body["parents"] = tab.parents;
      std::vector<const Variable*> parents;
      for (const auto& p : tab.parents) parents.push_back(&index.get(p, "initial_slices"));
      body["rows"] = emit_rows(tab.table, parents, index.get(v.name, "initial_slices"));
      doc["initial_slices"][v.name] = std::move(body);
    }
  }

  return doc.dump(2) + "\n";
}

}  // namespace dnmcast
