#pragma once

// Trace semantics over models: tau closure, weak transitions, quiescence,
// suspension-word evaluation, the determinizing delta transformation, and
// the validity conditions for suspension automata.

#include <cassert>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace ioco {

using StateSet = std::vector<StateId>;  // sorted, unique

namespace detail {

inline void sort_unique(StateSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

}  // namespace detail

inline StateSet tau_closure(const Model& m, StateSet set) {
  std::vector<bool> in(m.states.size(), false);
  for (StateId s : set) in[s] = true;
  std::vector<StateId> stack(set.begin(), set.end());
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Edge& e : m.adj[s])
      if (e.label == label_tau && !in[e.dst]) {
        in[e.dst] = true;
        set.push_back(e.dst);
        stack.push_back(e.dst);
      }
  }
  detail::sort_unique(set);
  return set;
}

// A state is quiescent when it can neither produce an output nor move
// internally; only inputs (if anything) are directly enabled.
inline bool state_quiescent(const Model& m, StateId s) {
  for (const Edge& e : m.adj[s])
    if (!m.is_input(e.label)) return false;
  return true;
}

// One weak step from a tau-closed set: direct x-successors, then tau closure.
// For delta the set keeps exactly its quiescent members (they have no tau
// moves, so the result is closed already). Works on suspension automata too,
// where delta is an ordinary edge label and there is no tau to chase.
inline StateSet weak_step(const Model& m, const StateSet& closed, LabelId x) {
  StateSet next;
  if (x == label_delta && !m.is_sa) {
    for (StateId s : closed)
      if (state_quiescent(m, s)) next.push_back(s);
    return next;
  }
  for (StateId s : closed)
    for (const Edge& e : m.adj[s])
      if (e.label == x) next.push_back(e.dst);
  detail::sort_unique(next);
  return m.is_sa ? next : tau_closure(m, std::move(next));
}

inline StateSet initial_set(const Model& m) {
  StateSet s{m.init};
  return m.is_sa ? s : tau_closure(m, std::move(s));
}

// Evaluates a suspension word given as label names ("delta" allowed).
// Returns the possibly-empty set of states the word can lead to; emptiness
// means the word is not a suspension trace.
inline StateSet weak_after(const Model& m, StateSet from,
                           const std::vector<std::string>& word) {
  StateSet cur = m.is_sa ? std::move(from) : tau_closure(m, std::move(from));
  for (const auto& tok : word) {
    LabelId l;
    if (tok == "delta") {
      l = label_delta;
    } else if (tok == "tau") {
      throw ModelError("tau is not observable in suspension words");
    } else {
      auto found = m.find_label(tok);
      if (!found) throw ModelError("label not in alphabet: " + tok);
      l = *found;
    }
    if (cur.empty()) return cur;
    cur = weak_step(m, cur, l);
  }
  return cur;
}

inline StateSet weak_after(const Model& m, const std::vector<std::string>& word) {
  return weak_after(m, {m.init}, word);
}

// Out-set of a state set, as sorted label names: weakly enabled proper
// outputs plus "delta" when some member is quiescent (can settle without
// ever producing an output). On a suspension automaton the delta edges are
// explicit and outputs are direct.
inline std::vector<std::string> out_set(const Model& m, const StateSet& set) {
  StateSet closed = m.is_sa ? set : tau_closure(m, set);
  std::vector<std::string> out;
  bool delta = false;
  for (StateId s : closed) {
    for (const Edge& e : m.adj[s]) {
      if (e.label == label_delta)
        delta = true;
      else if (m.is_output(e.label))
        out.push_back(m.label_name(e.label));
    }
    if (!m.is_sa && state_quiescent(m, s)) delta = true;
  }
  if (delta) out.push_back("delta");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct DivergenceReport {
  bool divergent = false;
  std::vector<std::string> cycle;  // state names along one tau cycle
};

inline DivergenceReport check_divergence(const Model& m) {
  DivergenceReport rep;
  if (m.is_sa) return rep;  // tau-free by construction
  auto reach = reachable_states(m);
  std::vector<int> color(m.states.size(), 0);  // 0 new, 1 on stack, 2 done
  std::vector<StateId> parent(m.states.size(), -1);
  // Iterative DFS over tau edges only.
  for (StateId root : reach) {
    if (color[root] != 0) continue;
    std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [s, idx] = stack.back();
      bool advanced = false;
      for (; idx < m.adj[s].size(); ++idx) {
        const Edge& e = m.adj[s][idx];
        if (e.label != label_tau) continue;
        if (color[e.dst] == 0) {
          color[e.dst] = 1;
          parent[e.dst] = s;
          ++idx;
          stack.emplace_back(e.dst, 0);
          advanced = true;
          break;
        }
        if (color[e.dst] == 1) {
          rep.divergent = true;
          std::vector<std::string> cyc{m.states[e.dst]};
          for (StateId w = s; w != e.dst && w != -1; w = parent[w])
            cyc.push_back(m.states[w]);
          std::reverse(cyc.begin(), cyc.end());
          rep.cycle = std::move(cyc);
          return rep;
        }
      }
      if (!advanced) {
        color[s] = 2;
        stack.pop_back();
      }
    }
  }
  return rep;
}

// Lazy subset construction over a model. Nodes are non-empty tau-closed
// state sets; successors are weak steps (explicit edges when the model is
// already a suspension automaton). This is the delta transformation
// evaluated on demand, which the quotient construction and the on-the-fly
// tester share so they never materialize the full power set.
class PowerSa {
 public:
  explicit PowerSa(const Model* m, Limits limits = {}) : m_(m), limits_(limits) {
    init_ = intern(initial_set(*m));
  }

  const Model& model() const { return *m_; }
  int initial() const { return init_; }
  int node_count() const { return static_cast<int>(sets_.size()); }
  const StateSet& members(int node) const { return sets_[node]; }

  // Successor node for a visible label or label_delta; -1 when the step
  // leads to the empty set.
  int step(int node, LabelId l) {
    int slot = slot_of(l);
    auto& row = succ_[node];
    if (row[slot] != kUnknown) return row[slot];
    StateSet next = weak_step(*m_, sets_[node], l);
    int res = next.empty() ? -1 : intern(std::move(next));
    succ_[node][slot] = res;  // succ_ may have grown; index again
    return res;
  }

  int step_name(int node, const std::string& label) {
    if (label == "delta") return step(node, label_delta);
    auto l = m_->find_label(label);
    if (!l) throw ModelError("label not in alphabet: " + label);
    return step(node, *l);
  }

  std::vector<std::string> out_names(int node) const { return out_set(*m_, sets_[node]); }

  bool has_delta(int node) {
    return step(node, label_delta) != -1;
  }

  // Display name for a node: member state names, sorted, in braces.
  std::string node_name(int node) const {
    std::string s = "{";
    std::vector<std::string> names;
    for (StateId st : sets_[node]) names.push_back(m_->states[st]);
    std::sort(names.begin(), names.end());
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) s += ',';
      s += names[i];
    }
    s += '}';
    return s;
  }

 private:
  static constexpr int kUnknown = -3;

  int slot_of(LabelId l) const { return l == label_delta ? m_->n_labels() : l; }

  int intern(StateSet set) {
    auto it = index_.find(set);
    if (it != index_.end()) return it->second;
    limits_.poll();
    if (sets_.size() >= limits_.max_power_states)
      throw LimitError("subset construction exceeded the state limit");
    int id = static_cast<int>(sets_.size());
    index_.emplace(set, id);
    sets_.push_back(std::move(set));
    succ_.emplace_back(m_->n_labels() + 1, kUnknown);
    return id;
  }

  const Model* m_;
  Limits limits_;
  std::map<StateSet, int> index_;
  std::vector<StateSet> sets_;
  std::vector<std::vector<int>> succ_;
  int init_ = 0;
};

// Materialized delta transformation: determinizes a plain model into a
// suspension automaton whose states are the reachable non-empty subsets.
inline Model delta_transform(const Model& m, Limits limits = {}) {
  if (m.is_sa) throw ModelError("model is already a suspension automaton");
  if (auto d = check_divergence(m); d.divergent) {
    std::string cyc;
    for (const auto& s : d.cycle) cyc += (cyc.empty() ? "" : " ") + s;
    throw ModelError("model diverges (tau cycle: " + cyc + ")");
  }

  PowerSa p(&m, limits);
  Model out;
  out.name = m.name.empty() ? std::string("delta") : m.name + "_delta";
  out.is_sa = true;
  out.inputs = m.inputs;
  out.outputs = m.outputs;

  std::deque<int> work{p.initial()};
  std::map<int, StateId> ids;
  ids[p.initial()] = out.add_state(p.node_name(p.initial()));
  out.init = 0;
  std::vector<std::pair<int, std::pair<LabelId, int>>> edges;
  while (!work.empty()) {
    int node = work.front();
    work.pop_front();
    for (LabelId l = 0; l <= m.n_labels(); ++l) {
      LabelId lab = (l == m.n_labels()) ? label_delta : l;
      int nxt = p.step(node, lab);
      if (nxt == -1) continue;
      if (!ids.count(nxt)) {
        ids[nxt] = out.add_state(p.node_name(nxt));
        work.push_back(nxt);
      }
      edges.push_back({node, {lab, nxt}});
    }
  }
  for (const auto& [src, e] : edges) out.add_edge(ids[src], e.first, ids[e.second]);
  validate(out);
  return out;
}

// Every suspension word of length <= k that the model can exhibit, each word
// as a space-joined string of label names (so the empty word is "").
inline std::vector<std::string> bounded_straces(const Model& m, int k, Limits limits = {}) {
  PowerSa p(const_cast<const Model*>(&m), limits);
  std::vector<std::string> label_names;
  for (const auto& n : m.inputs) label_names.push_back(n);
  for (const auto& n : m.outputs) label_names.push_back(n);
  label_names.push_back("delta");
  std::sort(label_names.begin(), label_names.end());

  std::vector<std::string> words;
  struct Item {
    int node;
    std::string word;
    int depth;
  };
  std::deque<Item> work{{p.initial(), "", 0}};
  words.push_back("");
  while (!work.empty()) {
    auto [node, word, depth] = work.front();
    work.pop_front();
    if (depth == k) continue;
    for (const auto& name : label_names) {
      int nxt = p.step_name(node, name);
      if (nxt == -1) continue;
      std::string w = word.empty() ? name : word + " " + name;
      words.push_back(w);
      work.push_back({nxt, std::move(w), depth + 1});
    }
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

struct SaValidityReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Validity of a suspension automaton, over reachable states:
//  - non-blocking: something (an output or delta) is always observable;
//  - no output right after quiescence: a delta-successor must not enable a
//    proper output directly;
//  - observing quiescence twice changes nothing: the delta-successor of a
//    delta-successor is that same state;
//  - quiescence cannot unlock inputs: the delta-successor's direct inputs
//    are among the source's direct inputs.
inline SaValidityReport check_sa_valid(const Model& a) {
  if (!a.is_sa) throw ModelError("validity check expects a suspension automaton");
  SaValidityReport rep;
  auto fail = [&](const std::string& msg) {
    rep.valid = false;
    rep.violations.push_back(msg);
  };
  for (StateId s : reachable_states(a)) {
    bool has_obs = false;
    StateId dsucc = -1;
    std::vector<LabelId> ins;
    for (const Edge& e : a.adj[s]) {
      if (e.label == label_delta) {
        has_obs = true;
        dsucc = e.dst;
      } else if (a.is_output(e.label)) {
        has_obs = true;
      } else {
        ins.push_back(e.label);
      }
    }
    if (!has_obs)
      fail("state " + a.states[s] + ": blocked, neither an output nor quiescence");
    if (dsucc == -1) continue;
    StateId dd = -1;
    std::vector<LabelId> dins;
    for (const Edge& e : a.adj[dsucc]) {
      if (e.label == label_delta) dd = e.dst;
      else if (a.is_output(e.label))
        fail("state " + a.states[s] + ": output " + a.label_name(e.label) +
             " enabled right after quiescence at " + a.states[dsucc]);
      else
        dins.push_back(e.label);
    }
    if (dd != -1 && dd != dsucc)
      fail("state " + a.states[dsucc] + ": repeated quiescence leads to " + a.states[dd] +
           " instead of looping");
    for (LabelId l : dins)
      if (std::find(ins.begin(), ins.end(), l) == ins.end())
        fail("state " + a.states[s] + ": input " + a.label_name(l) +
             " appears only after quiescence");
  }
  return rep;
}

}  // namespace ioco
