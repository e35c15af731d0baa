#pragma once

// Parallel composition of two models with complementary alphabets, hiding
// of outputs, and the boundedness check for synchronized outputs that a
// composition must satisfy before its hidden form can be analyzed.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace ioco {

namespace detail {

inline std::vector<std::string> sorted_names(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

// Synchronous product: labels known to both sides move together, everything
// else (including internal steps) interleaves. Inputs of one side that the
// other produces become outputs of the whole. Only the reachable part is
// kept; product states are named "left|right".
inline Model parallel(const Model& a, const Model& b, Limits lim = {}) {
  if (a.is_sa || b.is_sa) throw ModelError("parallel composition expects plain models");
  auto ii = detail::set_inter(a.inputs, b.inputs);
  if (!ii.empty())
    throw ModelError("parallel composition: input " + ii.front() + " appears on both sides");
  auto uu = detail::set_inter(a.outputs, b.outputs);
  if (!uu.empty())
    throw ModelError("parallel composition: output " + uu.front() + " appears on both sides");

  Model c;
  c.name = a.name + "|" + b.name;
  c.outputs = detail::set_union(a.outputs, b.outputs);
  c.inputs = detail::set_minus(detail::set_union(a.inputs, b.inputs), c.outputs);

  auto shared = detail::set_inter(detail::set_union(a.inputs, a.outputs),
                                  detail::set_union(b.inputs, b.outputs));

  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> work;
  auto intern = [&](StateId p, StateId q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), c.n_states());
    if (fresh) {
      c.add_state(a.states[p] + "|" + b.states[q]);
      work.emplace_back(p, q);
      lim.poll();
      if (static_cast<std::size_t>(c.n_states()) > lim.max_power_states)
        throw LimitError("parallel composition exceeded the state limit");
    }
    return it->second;
  };

  intern(a.init, b.init);
  c.init = 0;
  for (std::size_t w = 0; w < work.size(); ++w) {
    auto [p, q] = work[w];
    StateId src = ids.at({p, q});
    for (const Edge& e : a.adj[p]) {
      if (e.label == label_tau) {
        c.add_edge(src, label_tau, intern(e.dst, q));
        continue;
      }
      const std::string& name = a.label_name(e.label);
      LabelId lc = *c.find_label(name);
      if (detail::set_contains(shared, name)) {
        LabelId lb = *b.find_label(name);
        for (const Edge& f : b.adj[q])
          if (f.label == lb) c.add_edge(src, lc, intern(e.dst, f.dst));
      } else {
        c.add_edge(src, lc, intern(e.dst, q));
      }
    }
    for (const Edge& f : b.adj[q]) {
      if (f.label == label_tau) {
        c.add_edge(src, label_tau, intern(p, f.dst));
        continue;
      }
      const std::string& name = b.label_name(f.label);
      if (detail::set_contains(shared, name)) continue;  // synchronized above
      c.add_edge(src, *c.find_label(name), intern(p, f.dst));
    }
  }
  validate(c);
  return c;
}

// Turns the named outputs into internal steps. States and the remaining
// transitions are untouched.
inline Model hide(const Model& m, const std::vector<std::string>& labels) {
  if (m.is_sa) throw ModelError("hiding expects a plain model");
  auto hidden = detail::sorted_names(labels);
  for (const std::string& name : hidden) {
    auto l = m.find_label(name);
    if (!l || !m.is_output(*l))
      throw ModelError("hide: " + name + " is not an output of " + m.name);
  }
  Model h;
  h.name = m.name;
  h.inputs = m.inputs;
  h.outputs = detail::set_minus(m.outputs, hidden);
  for (const auto& s : m.states) h.add_state(s);
  h.init = m.init;
  for (StateId s = 0; s < m.n_states(); ++s)
    for (const Edge& e : m.adj[s]) {
      if (e.label == label_tau) {
        h.add_edge(s, label_tau, e.dst);
        continue;
      }
      const std::string& name = m.label_name(e.label);
      if (detail::set_contains(hidden, name))
        h.add_edge(s, label_tau, e.dst);
      else
        h.add_edge(s, *h.find_label(name), e.dst);
    }
  validate(h);
  return h;
}

struct SharedBoundReport {
  bool bounded = false;
  int max_run = 0;                 // longest stretch of shared outputs, when bounded
  std::vector<std::string> cycle;  // witness edges "src -label-> dst", when not
};

// A composition is usable for further analysis only if runs cannot produce
// unboundedly many synchronized outputs without the rest of the system
// getting a turn. Concretely: in the subgraph of internal and shared-output
// edges, no reachable cycle may contain a shared edge. When the check
// passes, max_run reports the longest chain of shared outputs any run can
// produce in one stretch.
inline SharedBoundReport check_shared_output_bounded(const Model& m,
                                                     const std::vector<std::string>& shared_names) {
  auto shared = detail::sorted_names(shared_names);
  for (const std::string& name : shared) {
    auto l = m.find_label(name);
    if (!l || !m.is_output(*l))
      throw ModelError("shared-output check: " + name + " is not an output of " + m.name);
  }
  auto reach = reachable_states(m);

  struct Arc {
    StateId src, dst;
    LabelId label;
    bool is_shared;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> fwd(m.states.size()), rev(m.states.size());
  for (StateId s : reach)
    for (const Edge& e : m.adj[s]) {
      bool sh = e.label != label_tau && detail::set_contains(shared, m.label_name(e.label));
      if (e.label != label_tau && !sh) continue;
      fwd[s].push_back(static_cast<int>(arcs.size()));
      rev[e.dst].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({s, e.dst, e.label, sh});
    }

  // Strongly connected components of the restricted subgraph (two-pass,
  // iterative to be safe on long chains).
  std::vector<StateId> order;
  {
    std::vector<char> seen(m.states.size(), 0);
    for (StateId root : reach) {
      if (seen[root]) continue;
      std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
      seen[root] = 1;
      while (!stack.empty()) {
        auto& [s, i] = stack.back();
        if (i < fwd[s].size()) {
          StateId t = arcs[fwd[s][i++]].dst;
          if (!seen[t]) {
            seen[t] = 1;
            stack.emplace_back(t, 0);
          }
        } else {
          order.push_back(s);
          stack.pop_back();
        }
      }
    }
  }
  std::vector<int> scc(m.states.size(), -1);
  int n_scc = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (scc[*it] != -1) continue;
    std::vector<StateId> stack{*it};
    scc[*it] = n_scc;
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      for (int ai : rev[s]) {
        StateId t = arcs[ai].src;
        if (scc[t] == -1) {
          scc[t] = n_scc;
          stack.push_back(t);
        }
      }
    }
    ++n_scc;
  }

  auto describe = [&](const Arc& x) {
    return m.states[x.src] + " -" + m.label_name(x.label) + "-> " + m.states[x.dst];
  };

  SharedBoundReport rep;
  for (const Arc& arc : arcs) {
    if (!arc.is_shared || scc[arc.src] != scc[arc.dst]) continue;
    // A shared edge inside a cycle: recover a path from its target back to
    // its source within the component.
    std::vector<int> via(m.states.size(), -1);
    std::vector<StateId> queue{arc.dst};
    std::vector<char> seen(m.states.size(), 0);
    seen[arc.dst] = 1;
    for (std::size_t qi = 0; qi < queue.size() && !seen[arc.src]; ++qi) {
      StateId s = queue[qi];
      for (int ai : fwd[s]) {
        StateId t = arcs[ai].dst;
        if (scc[t] != scc[arc.src] || seen[t]) continue;
        seen[t] = 1;
        via[t] = ai;
        queue.push_back(t);
      }
    }
    rep.cycle.push_back(describe(arc));
    std::vector<std::string> back;
    for (StateId s = arc.src; s != arc.dst && via[s] != -1;) {
      const Arc& step = arcs[via[s]];
      back.push_back(describe(step));
      s = step.src;
    }
    rep.cycle.insert(rep.cycle.end(), back.rbegin(), back.rend());
    rep.bounded = false;
    return rep;
  }

  rep.bounded = true;
  // Longest count of shared edges over the condensation, started from any
  // reachable state (a run may enter the subgraph anywhere).
  std::vector<int> memo(n_scc, -1);
  std::function<int(int)> longest = [&](int comp) -> int {
    if (memo[comp] != -1) return memo[comp];
    memo[comp] = 0;
    int best = 0;
    for (const Arc& arc : arcs) {
      if (scc[arc.src] != comp || scc[arc.dst] == comp) continue;
      best = std::max(best, (arc.is_shared ? 1 : 0) + longest(scc[arc.dst]));
    }
    return memo[comp] = best;
  };
  for (StateId s : reach) rep.max_run = std::max(rep.max_run, longest(scc[s]));
  return rep;
}

}  // namespace ioco
