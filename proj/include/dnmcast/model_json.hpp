#ifndef DNMCAST_MODEL_JSON_HPP
#define DNMCAST_MODEL_JSON_HPP

#include <string>

#include "dnmcast/temporal.hpp"

namespace dnmcast {

// Raised on structurally bad model JSON (missing fields, wrong types, bad
// table keys).  Syntactically invalid JSON raises nlohmann's parse_error.
class ModelFormatError : public std::runtime_error {
 public:
  explicit ModelFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Document layout:
//   variables             [{name, states}]
//   contemporaneous_arcs  [[from, to]]
//   lagged_arcs           [{from, lag, to}]
//   cpds                  { var: {parents, rows} | {decomposition, alpha_init,
//                                q_parents, q_table, r_parents, r_table} }
//   initial_slices        { var: "observed" | {parents, rows} }
// Table rows are keyed by comma-joined parent state labels ("" for no
// parents) and hold the full distribution over the target's states.
DnmSpec spec_from_json_text(const std::string& text);
std::string spec_to_json_text(const DnmSpec& spec);

}  // namespace dnmcast

#endif  // DNMCAST_MODEL_JSON_HPP
