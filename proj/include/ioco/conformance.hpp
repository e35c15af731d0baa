#pragma once

// Conformance relations. ioco_check compares an implementation against a
// specification on suspension words: after every word the specification can
// exhibit, the implementation may only show outputs (or quiescence) the
// specification allows. inclusion_check compares a platform model against a
// specification that shares only part of its alphabet, with the platform's
// private labels treated as under the control of an arbitrary partner
// component.

#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "compose.hpp"
#include "model.hpp"
#include "semantics.hpp"

namespace ioco {

struct IocoVerdict {
  bool holds = true;
  std::vector<std::string> trace;  // suspension word leading to the violation
  std::string offending;           // output (or "delta") the spec does not allow
  std::vector<std::string> out_impl, out_spec;  // out-sets after that word
};

namespace detail {

// Shared witness bookkeeping for the breadth-first product walks: nodes
// remember how they were discovered so the shortest (then lexicographically
// least) word can be reconstructed.
struct WalkNode {
  int left, right;  // node ids in the two subset constructions
  int parent;
  int token;  // index into the token list, -1 at the root
};

inline std::vector<std::string> walk_trace(const std::vector<WalkNode>& nodes, int at,
                                           const std::vector<std::string>& tokens) {
  std::vector<std::string> trace;
  for (int n = at; nodes[n].parent != -1; n = nodes[n].parent)
    trace.push_back(tokens[nodes[n].token]);
  std::reverse(trace.begin(), trace.end());
  return trace;
}

}  // namespace detail

// Decides whether `impl` conforms to `spec`: for every suspension word of
// the specification, out(impl after w) must be contained in out(spec after
// w). The implementation must be input-enabled for at least the
// specification's inputs; both models must be free of internal cycles. The
// specification may be a plain model or an already-built suspension
// automaton. On failure the verdict carries the shortest violating word
// (ties broken by label name) and both out-sets.
inline IocoVerdict ioco_check(const Model& impl, const Model& spec, Limits lim = {}) {
  if (auto r = check_input_enabled(impl); !r.input_enabled)
    throw ModelError("implementation is not input-enabled, e.g. at state " + r.offending.front());
  if (auto d = check_divergence(impl); d.divergent)
    throw ModelError("implementation has an internal cycle");
  if (auto d = check_divergence(spec); d.divergent)
    throw ModelError("specification has an internal cycle");
  for (const auto& i : spec.inputs)
    if (!detail::set_contains(impl.inputs, i))
      throw ModelError("implementation lacks the specification input " + i);

  std::vector<std::string> tokens = spec.inputs;
  tokens.insert(tokens.end(), spec.outputs.begin(), spec.outputs.end());
  tokens.push_back("delta");
  std::sort(tokens.begin(), tokens.end());

  PowerSa pi(&impl, lim), ps(&spec, lim);
  std::vector<detail::WalkNode> nodes{{pi.initial(), ps.initial(), -1, -1}};
  std::map<std::pair<int, int>, int> seen{{{pi.initial(), ps.initial()}, 0}};

  for (std::size_t w = 0; w < nodes.size(); ++w) {
    detail::WalkNode cur = nodes[w];
    auto oi = pi.out_names(cur.left);
    auto os = ps.out_names(cur.right);
    for (const auto& o : oi) {
      if (detail::set_contains(os, o)) continue;
      IocoVerdict v;
      v.holds = false;
      v.trace = detail::walk_trace(nodes, static_cast<int>(w), tokens);
      v.offending = o;
      v.out_impl = std::move(oi);
      v.out_spec = std::move(os);
      return v;
    }
    for (int t = 0; t < static_cast<int>(tokens.size()); ++t) {
      int rs = ps.step_name(cur.right, tokens[t]);
      if (rs == -1) continue;  // not a suspension word of the spec
      int ls;
      if (tokens[t] == "delta") {
        ls = pi.step(cur.left, label_delta);
      } else {
        auto l = impl.find_label(tokens[t]);
        ls = l ? pi.step(cur.left, *l) : -1;
      }
      if (ls == -1) continue;  // impl cannot follow, nothing to compare there
      if (seen.emplace(std::make_pair(ls, rs), static_cast<int>(nodes.size())).second)
        nodes.push_back({ls, rs, static_cast<int>(w), t});
    }
  }
  return {};
}

// True when the state cannot weakly produce any output whose name is in
// `visible` (which must cover the partner's alphabet; outputs the partner
// never sees do not disturb its notion of quiescence).
inline bool relative_quiescent(const Model& m, StateId s, const std::vector<std::string>& visible) {
  auto vis = detail::sorted_names(visible);
  for (StateId t : tau_closure(m, {s}))
    for (const Edge& e : m.adj[t])
      if (m.is_output(e.label) && detail::set_contains(vis, m.label_name(e.label))) return false;
  return true;
}

// Projects a suspension word onto an alphabet: labels outside it disappear,
// both kinds of quiescence collapse to plain "delta".
inline std::vector<std::string> project(const std::vector<std::string>& word,
                                        const std::vector<std::string>& visible) {
  auto vis = detail::sorted_names(visible);
  std::vector<std::string> out;
  for (const auto& tok : word) {
    if (tok == "delta" || tok == "delta_e")
      out.push_back("delta");
    else if (detail::set_contains(vis, tok))
      out.push_back(tok);
  }
  return out;
}

struct InclusionVerdict {
  bool holds = true;
  std::vector<std::string> trace;  // over spec labels, "delta" and "delta_e"
  std::string offending;
  std::vector<std::string> out_env, out_spec;
};

// Decides whether the platform model fits the specification when an
// arbitrary component controls the platform's private labels. The
// platform's private outputs are hidden; its private inputs may be injected
// by the unknown partner at any time, so platform state sets are closed
// under them. Words range over the specification's labels plus two
// quiescence observations: "delta" (nothing at all happens) and "delta_e"
// (the platform sees nothing, though the specification may still owe
// private outputs). After each word, every output the platform can show
// must be allowed by the specification, where the specification counts as
// quiescent already when none of its possible outputs is visible to the
// platform.
inline InclusionVerdict inclusion_check(const Model& env, const Model& spec,
                                        const Interface& iface, Limits lim = {}) {
  if (auto r = check_input_enabled(env); !r.input_enabled)
    throw ModelError("platform model is not input-enabled, e.g. at state " + r.offending.front());
  if (auto d = check_divergence(spec); d.divergent)
    throw ModelError("specification has an internal cycle");
  Model h = hide(env, iface.env_hidden_outputs);
  if (auto d = check_divergence(h); d.divergent) {
    std::string cyc;
    for (const auto& s : d.cycle) cyc += (cyc.empty() ? "" : " ") + s;
    throw ModelError("hiding the platform-private outputs yields an internal cycle: " + cyc);
  }

  std::vector<LabelId> inject;  // private inputs, as labels of h
  for (const auto& n : iface.env_hidden_inputs)
    if (auto l = h.find_label(n)) inject.push_back(*l);

  auto inj_close = [&](StateSet a) {
    a = tau_closure(h, std::move(a));
    for (bool grew = true; grew;) {
      grew = false;
      StateSet add;
      for (StateId s : a)
        for (const Edge& e : h.adj[s])
          if (std::find(inject.begin(), inject.end(), e.label) != inject.end() &&
              !std::binary_search(a.begin(), a.end(), e.dst))
            add.push_back(e.dst);
      if (!add.empty()) {
        grew = true;
        a.insert(a.end(), add.begin(), add.end());
        detail::sort_unique(a);
        a = tau_closure(h, std::move(a));
      }
    }
    return a;
  };

  auto quiescent_members = [&](const StateSet& a) {
    StateSet q;
    for (StateId s : a)
      if (state_quiescent(h, s)) q.push_back(s);
    return q;
  };

  std::vector<char> rel_q(spec.states.size(), 0);
  for (StateId s = 0; s < spec.n_states(); ++s)
    rel_q[s] = relative_quiescent(spec, s, iface.env_labels) ? 1 : 0;

  auto out_spec_rel = [&](const StateSet& q) {
    auto out = out_set(spec, q);
    out.erase(std::remove(out.begin(), out.end(), "delta"), out.end());
    for (StateId s : q)
      if (rel_q[s]) {
        out.push_back("delta");
        break;
      }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<std::string> tokens = spec.inputs;
  tokens.insert(tokens.end(), spec.outputs.begin(), spec.outputs.end());
  tokens.push_back("delta");
  tokens.push_back("delta_e");
  std::sort(tokens.begin(), tokens.end());

  struct Node {
    StateSet env, spec;
    int parent, token;
  };
  std::vector<Node> nodes;
  std::map<std::pair<StateSet, StateSet>, int> seen;
  {
    StateSet a0 = inj_close({h.init});
    StateSet q0 = tau_closure(spec, {spec.init});
    seen[{a0, q0}] = 0;
    nodes.push_back({std::move(a0), std::move(q0), -1, -1});
  }

  for (std::size_t w = 0; w < nodes.size(); ++w) {
    lim.poll();
    if (nodes.size() > lim.max_power_states)
      throw LimitError("inclusion check exceeded the state limit");
    auto oe = out_set(h, nodes[w].env);
    auto os = out_spec_rel(nodes[w].spec);
    for (const auto& o : oe) {
      if (detail::set_contains(os, o)) continue;
      InclusionVerdict v;
      v.holds = false;
      for (int n = static_cast<int>(w); nodes[n].parent != -1; n = nodes[n].parent)
        v.trace.push_back(tokens[nodes[n].token]);
      std::reverse(v.trace.begin(), v.trace.end());
      v.offending = o;
      v.out_env = std::move(oe);
      v.out_spec = std::move(os);
      return v;
    }
    for (int t = 0; t < static_cast<int>(tokens.size()); ++t) {
      const std::string& tok = tokens[t];
      StateSet a2, q2;
      if (tok == "delta" || tok == "delta_e") {
        a2 = inj_close(quiescent_members(nodes[w].env));
        if (tok == "delta") {
          q2 = weak_step(spec, nodes[w].spec, label_delta);
        } else {
          for (StateId s : nodes[w].spec)
            if (rel_q[s]) q2.push_back(s);
        }
      } else {
        LabelId ls = *spec.find_label(tok);
        q2 = weak_step(spec, nodes[w].spec, ls);
        if (auto le = h.find_label(tok)) {
          a2 = inj_close(weak_step(h, nodes[w].env, *le));
        } else {
          a2 = nodes[w].env;  // the platform does not take part in this label
        }
      }
      if (a2.empty() || q2.empty()) continue;
      if (seen.emplace(std::make_pair(a2, q2), static_cast<int>(nodes.size())).second)
        nodes.push_back({std::move(a2), std::move(q2), static_cast<int>(w), t});
    }
  }
  return {};
}

}  // namespace ioco
