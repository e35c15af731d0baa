#pragma once

// Core model type for input-output labeled transition systems and
// suspension automata, plus the textual document format.
//
// A model document is line oriented:
//
//   # comment
//   name vending_s
//   kind sa                # optional; absent means plain IOLTS
//   inputs c
//   outputs r t
//   init s0
//   trans s0 c s1
//   trans s1 tau s2        # tau only in plain IOLTS documents
//   trans q0 delta q0      # delta only in `kind sa` documents
//
// Label names are tokens over [A-Za-z0-9_]; `tau` and `delta` are reserved.
// State names are free-form whitespace-delimited tokens (so generated names
// like `{s0,s1}` or `({q2,q3},{E2})@d` stay representable).

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ioco {

using StateId = int;
using LabelId = int;

inline constexpr LabelId label_tau = -1;
inline constexpr LabelId label_delta = -2;

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

// Guard for the exponential constructions (subset states, product states).
// `cancel` may point at an externally owned flag; construction loops poll it.
struct Limits {
  std::size_t max_power_states = 1000000;
  const std::atomic<bool>* cancel = nullptr;

  void poll() const {
    if (cancel != nullptr && cancel->load(std::memory_order_relaxed))
      throw LimitError("operation canceled");
  }
};

struct Edge {
  LabelId label = label_tau;
  StateId dst = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Model {
  std::string name;
  bool is_sa = false;  // suspension automaton: tau-free, deterministic, delta edges allowed
  std::vector<std::string> inputs;   // sorted, unique
  std::vector<std::string> outputs;  // sorted, unique
  std::vector<std::string> states;   // index is the StateId
  StateId init = 0;
  std::vector<std::vector<Edge>> adj;  // per state, sorted, unique

  int n_inputs() const { return static_cast<int>(inputs.size()); }
  int n_outputs() const { return static_cast<int>(outputs.size()); }
  int n_labels() const { return n_inputs() + n_outputs(); }
  int n_states() const { return static_cast<int>(states.size()); }

  bool is_input(LabelId l) const { return l >= 0 && l < n_inputs(); }
  bool is_output(LabelId l) const { return l >= n_inputs() && l < n_labels(); }

  const std::string& label_name(LabelId l) const {
    static const std::string tau_name = "tau";
    static const std::string delta_name = "delta";
    if (l == label_tau) return tau_name;
    if (l == label_delta) return delta_name;
    return is_input(l) ? inputs[l] : outputs[l - n_inputs()];
  }

  // Resolves a visible label name; tau/delta are handled by callers that
  // accept them.
  std::optional<LabelId> find_label(const std::string& name) const {
    auto it = std::lower_bound(inputs.begin(), inputs.end(), name);
    if (it != inputs.end() && *it == name)
      return static_cast<LabelId>(it - inputs.begin());
    it = std::lower_bound(outputs.begin(), outputs.end(), name);
    if (it != outputs.end() && *it == name)
      return static_cast<LabelId>(n_inputs() + (it - outputs.begin()));
    return std::nullopt;
  }

  StateId add_state(const std::string& state_name) {
    states.push_back(state_name);
    adj.emplace_back();
    return static_cast<StateId>(states.size()) - 1;
  }

  void add_edge(StateId src, LabelId label, StateId dst) {
    Edge e{label, dst};
    auto& row = adj[src];
    auto it = std::lower_bound(row.begin(), row.end(), e);
    if (it == row.end() || *it != e) row.insert(it, e);
  }

  bool has_edge(StateId src, LabelId label, StateId dst) const {
    Edge e{label, dst};
    const auto& row = adj[src];
    return std::binary_search(row.begin(), row.end(), e);
  }
};

namespace detail {

inline bool valid_label_token(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline bool valid_state_token(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#') return false;
  return true;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] inline void parse_fail(int line_no, const std::string& msg) {
  throw ModelError("line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace detail

// Structural well-formedness: disjoint alphabets, reserved names unused,
// endpoints in range, tau only in plain models, delta only in suspension
// automata, and determinism for suspension automata.
inline void validate(const Model& m) {
  for (const auto& v : {m.inputs, m.outputs}) {
    if (!std::is_sorted(v.begin(), v.end()) ||
        std::adjacent_find(v.begin(), v.end()) != v.end())
      throw ModelError("alphabet not sorted/unique");
    for (const auto& n : v) {
      if (!detail::valid_label_token(n)) throw ModelError("bad label token: " + n);
      if (n == "tau" || n == "delta") throw ModelError("reserved label declared: " + n);
    }
  }
  std::vector<std::string> both;
  std::set_intersection(m.inputs.begin(), m.inputs.end(), m.outputs.begin(),
                        m.outputs.end(), std::back_inserter(both));
  if (!both.empty()) throw ModelError("label in both alphabets: " + both.front());

  if (m.states.empty()) throw ModelError("model has no states");
  if (m.init < 0 || m.init >= m.n_states()) throw ModelError("initial state out of range");
  if (m.adj.size() != m.states.size()) throw ModelError("adjacency/state mismatch");

  std::set<std::string> seen;
  for (const auto& s : m.states) {
    if (!detail::valid_state_token(s)) throw ModelError("bad state token: " + s);
    if (!seen.insert(s).second) throw ModelError("duplicate state name: " + s);
  }

  for (StateId s = 0; s < m.n_states(); ++s) {
    std::set<LabelId> seen_labels;
    for (const Edge& e : m.adj[s]) {
      if (e.dst < 0 || e.dst >= m.n_states()) throw ModelError("edge target out of range");
      if (e.label == label_tau) {
        if (m.is_sa) throw ModelError("tau transition in a suspension automaton");
      } else if (e.label == label_delta) {
        if (!m.is_sa) throw ModelError("delta transition in a plain model");
      } else if (e.label < 0 || e.label >= m.n_labels()) {
        throw ModelError("edge label out of range");
      }
      if (m.is_sa && !seen_labels.insert(e.label).second)
        throw ModelError("suspension automaton is nondeterministic at state " + m.states[s] +
                         " on " + m.label_name(e.label));
    }
  }
}

inline Model parse_model(const std::string& text) {
  Model m;
  bool saw_name = false, saw_inputs = false, saw_outputs = false, saw_init = false,
       saw_kind = false;
  std::map<std::string, StateId> state_ids;
  auto intern_state = [&](const std::string& tok, int line_no) {
    if (!detail::valid_state_token(tok)) detail::parse_fail(line_no, "bad state token: " + tok);
    auto it = state_ids.find(tok);
    if (it != state_ids.end()) return it->second;
    StateId id = m.add_state(tok);
    state_ids.emplace(tok, id);
    return id;
  };

  struct RawTrans {
    std::string src, label, dst;
    int line_no;
  };
  std::vector<RawTrans> raw;
  std::string init_tok;
  int init_line = 0;

  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "name") {
      if (saw_name) detail::parse_fail(line_no, "duplicate name line");
      if (toks.size() != 2) detail::parse_fail(line_no, "name takes one token");
      m.name = toks[1];
      saw_name = true;
    } else if (kw == "kind") {
      if (saw_kind) detail::parse_fail(line_no, "duplicate kind line");
      if (toks.size() != 2 || (toks[1] != "sa" && toks[1] != "iolts"))
        detail::parse_fail(line_no, "kind must be `sa` or `iolts`");
      m.is_sa = (toks[1] == "sa");
      saw_kind = true;
    } else if (kw == "inputs" || kw == "outputs") {
      bool& flag = (kw == "inputs") ? saw_inputs : saw_outputs;
      if (flag) detail::parse_fail(line_no, "duplicate " + kw + " line");
      flag = true;
      auto& dst = (kw == "inputs") ? m.inputs : m.outputs;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!detail::valid_label_token(toks[i]))
          detail::parse_fail(line_no, "bad label token: " + toks[i]);
        if (toks[i] == "tau" || toks[i] == "delta")
          detail::parse_fail(line_no, "reserved label in alphabet: " + toks[i]);
        dst.push_back(toks[i]);
      }
    } else if (kw == "init") {
      if (saw_init) detail::parse_fail(line_no, "duplicate init line");
      if (toks.size() != 2) detail::parse_fail(line_no, "init takes one state");
      init_tok = toks[1];
      init_line = line_no;
      saw_init = true;
    } else if (kw == "trans") {
      if (toks.size() != 4) detail::parse_fail(line_no, "trans takes src label dst");
      raw.push_back({toks[1], toks[2], toks[3], line_no});
    } else {
      detail::parse_fail(line_no, "unknown directive: " + kw);
    }
  }

  if (!saw_name) throw ModelError("missing name line");
  if (!saw_init) throw ModelError("missing init line");

  for (auto& v : {&m.inputs, &m.outputs}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }

  m.init = intern_state(init_tok, init_line);
  for (const auto& t : raw) {
    StateId src = intern_state(t.src, t.line_no);
    StateId dst = intern_state(t.dst, t.line_no);
    LabelId l;
    if (t.label == "tau") {
      if (m.is_sa) detail::parse_fail(t.line_no, "tau not allowed in a suspension automaton");
      l = label_tau;
    } else if (t.label == "delta") {
      if (!m.is_sa) detail::parse_fail(t.line_no, "delta only allowed with `kind sa`");
      l = label_delta;
    } else {
      auto found = m.find_label(t.label);
      if (!found) detail::parse_fail(t.line_no, "undeclared label: " + t.label);
      l = *found;
    }
    m.add_edge(src, l, dst);
  }

  validate(m);
  return m;
}

// Canonical text form: alphabets sorted, transitions sorted by the names of
// source state, label, and target state. Equal models serialize to equal
// bytes; parse(serialize(m)) is isomorphic to m.
inline std::string serialize_model(const Model& m) {
  std::ostringstream os;
  os << "name " << (m.name.empty() ? std::string("model") : m.name) << "\n";
  if (m.is_sa) os << "kind sa\n";
  os << "inputs";
  for (const auto& l : m.inputs) os << ' ' << l;
  os << "\noutputs";
  for (const auto& l : m.outputs) os << ' ' << l;
  os << "\ninit " << m.states[m.init] << "\n";

  struct Row {
    const std::string *src, *label, *dst;
  };
  std::vector<Row> rows;
  for (StateId s = 0; s < m.n_states(); ++s)
    for (const Edge& e : m.adj[s])
      rows.push_back({&m.states[s], &m.label_name(e.label), &m.states[e.dst]});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (*a.src != *b.src) return *a.src < *b.src;
    if (*a.label != *b.label) return *a.label < *b.label;
    return *a.dst < *b.dst;
  });
  for (const Row& r : rows) os << "trans " << *r.src << ' ' << *r.label << ' ' << *r.dst << "\n";
  return os.str();
}

inline std::vector<StateId> reachable_states(const Model& m) {
  std::vector<bool> seen(m.states.size(), false);
  std::vector<StateId> order, stack{m.init};
  seen[m.init] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    order.push_back(s);
    for (const Edge& e : m.adj[s])
      if (!seen[e.dst]) {
        seen[e.dst] = true;
        stack.push_back(e.dst);
      }
  }
  std::sort(order.begin(), order.end());
  return order;
}

// Restriction to the reachable part, preserving state names. All semantic
// checks quantify over reachable states; this makes that explicit when a
// construction may have produced garbage states.
inline Model reachable_part(const Model& m) {
  auto keep = reachable_states(m);
  std::vector<StateId> remap(m.states.size(), -1);
  Model r;
  r.name = m.name;
  r.is_sa = m.is_sa;
  r.inputs = m.inputs;
  r.outputs = m.outputs;
  for (StateId s : keep) remap[s] = r.add_state(m.states[s]);
  r.init = remap[m.init];
  for (StateId s : keep)
    for (const Edge& e : m.adj[s]) r.add_edge(remap[s], e.label, remap[e.dst]);
  return r;
}

struct InputEnabledReport {
  bool input_enabled = true;
  std::vector<std::string> offending;  // reachable states missing some input
};

// A state is input-enabled when every declared input is weakly enabled
// (reachable through tau steps followed by the input itself).
inline InputEnabledReport check_input_enabled(const Model& m) {
  InputEnabledReport rep;
  if (m.inputs.empty() || m.states.empty()) return rep;
  auto reach = reachable_states(m);
  for (StateId s0 : reach) {
    // tau closure of {s0}
    std::vector<bool> in_cl(m.states.size(), false);
    std::vector<StateId> cl{s0}, stack{s0};
    in_cl[s0] = true;
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      for (const Edge& e : m.adj[s])
        if (e.label == label_tau && !in_cl[e.dst]) {
          in_cl[e.dst] = true;
          cl.push_back(e.dst);
          stack.push_back(e.dst);
        }
    }
    std::vector<bool> enabled(m.inputs.size(), false);
    for (StateId s : cl)
      for (const Edge& e : m.adj[s])
        if (m.is_input(e.label)) enabled[e.label] = true;
    if (!std::all_of(enabled.begin(), enabled.end(), [](bool b) { return b; }))
      rep.offending.push_back(m.states[s0]);
  }
  rep.input_enabled = rep.offending.empty();
  return rep;
}

// Alphabet bookkeeping for a (specification, platform) pair. Field names
// spell out the role of each set; `hidden` is everything the platform does
// that the specification never mentions, split by direction.
struct Interface {
  std::vector<std::string> spec_labels;        // I_s ∪ U_s
  std::vector<std::string> env_labels;         // I_e ∪ U_e
  std::vector<std::string> shared;             // L_s ∩ L_e
  std::vector<std::string> hidden;             // L_e \ L_s
  std::vector<std::string> env_hidden_inputs;  // I_e \ L_s: fed by the missing component
  std::vector<std::string> env_hidden_outputs; // U_e \ L_s: consumed by the missing component
  std::vector<std::string> quotient_inputs;    // (I_s \ I_e) ∪ (U_e \ U_s)
  std::vector<std::string> quotient_outputs;   // (U_s \ U_e) ∪ (I_e \ I_s)
};

namespace detail {

inline std::vector<std::string> set_union(std::vector<std::string> a,
                                          const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline std::vector<std::string> set_minus(const std::vector<std::string>& a,
                                          const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<std::string> set_inter(const std::vector<std::string>& a,
                                          const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool set_contains(const std::vector<std::string>& v, const std::string& x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace detail

inline Interface derive_interface(const Model& spec, const Model& env) {
  Interface f;
  f.spec_labels = detail::set_union(spec.inputs, spec.outputs);
  f.env_labels = detail::set_union(env.inputs, env.outputs);
  f.shared = detail::set_inter(f.spec_labels, f.env_labels);
  f.hidden = detail::set_minus(f.env_labels, f.spec_labels);
  f.env_hidden_inputs = detail::set_minus(env.inputs, f.spec_labels);
  f.env_hidden_outputs = detail::set_minus(env.outputs, f.spec_labels);
  f.quotient_inputs = detail::set_union(detail::set_minus(spec.inputs, env.inputs),
                                        detail::set_minus(env.outputs, spec.outputs));
  f.quotient_outputs = detail::set_union(detail::set_minus(spec.outputs, env.outputs),
                                         detail::set_minus(env.inputs, spec.inputs));
  return f;
}

}  // namespace ioco
