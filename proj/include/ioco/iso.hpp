#pragma once

// Structural comparison of models: isomorphism up to state renaming
// (restricted to reachable parts), canonical text for deterministic
// automata, and a functional-simulation embedding check used to compare a
// hand-drawn automaton fragment against a generated one.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "model.hpp"

namespace ioco {

inline bool is_deterministic(const Model& m) {
  for (StateId s = 0; s < m.n_states(); ++s) {
    std::vector<LabelId> seen;
    for (const Edge& e : m.adj[s]) {
      if (e.label == label_tau) return false;
      if (std::find(seen.begin(), seen.end(), e.label) != seen.end()) return false;
      seen.push_back(e.label);
    }
  }
  return true;
}

namespace detail {

// Label ids ordered by label name, so two models over the same alphabet
// traverse edges in the same order.
inline std::vector<LabelId> labels_by_name(const Model& m) {
  std::vector<LabelId> ls(m.n_labels());
  std::iota(ls.begin(), ls.end(), 0);
  std::sort(ls.begin(), ls.end(), [&](LabelId a, LabelId b) {
    return m.label_name(a) < m.label_name(b);
  });
  ls.push_back(label_delta);
  return ls;
}

}  // namespace detail

// Canonical renaming of a deterministic model: breadth-first traversal from
// the initial state with edges in label-name order, states renamed to their
// visit index. Two deterministic models over the same alphabet are
// isomorphic (on their reachable parts) exactly when their canonical texts
// are equal.
inline std::string canonical_text(const Model& m) {
  if (!is_deterministic(m)) throw ModelError("canonical form requires a deterministic model");
  auto order = detail::labels_by_name(m);
  std::vector<int> idx(m.states.size(), -1);
  std::vector<StateId> bfs{m.init};
  idx[m.init] = 0;
  std::string text;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    StateId s = bfs[i];
    for (LabelId l : order) {
      StateId dst = -1;
      for (const Edge& e : m.adj[s])
        if (e.label == l) dst = e.dst;
      if (dst == -1) continue;
      if (idx[dst] == -1) {
        idx[dst] = static_cast<int>(bfs.size());
        bfs.push_back(dst);
      }
      text += std::to_string(idx[s]) + ' ' + m.label_name(l) + ' ' + std::to_string(idx[dst]) + '\n';
    }
  }
  return text;
}

namespace detail {

// Color refinement for the nondeterministic case: states get synchronized
// colors from (is-initial, multiset of (label, successor color)) until the
// partition stabilizes across both models at once.
inline bool iso_backtrack(const Model& a, const Model& b) {
  int n = a.n_states();
  if (n != b.n_states()) return false;

  auto edge_count = [](const Model& m) {
    std::size_t c = 0;
    for (const auto& row : m.adj) c += row.size();
    return c;
  };
  if (edge_count(a) != edge_count(b)) return false;

  std::vector<int> ca(n, 0), cb(n, 0);
  ca[a.init] = cb[b.init] = 1;
  for (int round = 0; round < n + 2; ++round) {
    std::map<std::vector<long long>, int> palette;
    auto recolor = [&](const Model& m, const std::vector<int>& c, StateId s) {
      std::vector<long long> sig{c[s]};
      std::vector<long long> outs;
      for (const Edge& e : m.adj[s])
        outs.push_back(static_cast<long long>(e.label + 2) * 10000 + c[e.dst]);
      std::sort(outs.begin(), outs.end());
      sig.insert(sig.end(), outs.begin(), outs.end());
      auto [it, fresh] = palette.emplace(sig, static_cast<int>(palette.size()));
      (void)fresh;
      return it->second;
    };
    std::vector<int> na(n), nb(n);
    for (StateId s = 0; s < n; ++s) na[s] = recolor(a, ca, s);
    for (StateId s = 0; s < n; ++s) nb[s] = recolor(b, cb, s);
    ca = std::move(na);
    cb = std::move(nb);
  }
  {
    std::vector<int> ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
  }

  std::vector<int> map_ab(n, -1), used(n, 0);
  auto edges_match = [&](StateId sa, StateId sb) {
    // Every already-mapped edge must correspond in both directions.
    auto check = [&](const Model& x, const Model& y, const std::vector<int>& mp, StateId sx,
                     StateId sy, bool forward) {
      for (const Edge& e : x.adj[sx]) {
        int other = forward ? mp[e.dst] : -1;
        if (forward) {
          if (other == -1) continue;
          if (!y.has_edge(sy, e.label, other)) return false;
        }
      }
      return true;
    };
    if (!check(a, b, map_ab, sa, sb, true)) return false;
    // Reverse direction: edges of b from sb whose target is already hit.
    std::vector<int> map_ba(n, -1);
    for (int i = 0; i < n; ++i)
      if (map_ab[i] != -1) map_ba[map_ab[i]] = i;
    for (const Edge& e : b.adj[sb]) {
      int other = map_ba[e.dst];
      if (other == -1) continue;
      StateId src_a = map_ba[sb];
      if (src_a == -1) return true;
      if (!a.has_edge(src_a, e.label, other)) return false;
    }
    return true;
  };

  // Assign in order of a BFS from the initial state for early pruning.
  std::vector<StateId> order;
  {
    std::vector<bool> seen(n, false);
    std::vector<StateId> q{a.init};
    seen[a.init] = true;
    while (!q.empty()) {
      StateId s = q.front();
      q.erase(q.begin());
      order.push_back(s);
      for (const Edge& e : a.adj[s])
        if (!seen[e.dst]) {
          seen[e.dst] = true;
          q.push_back(e.dst);
        }
    }
    for (StateId s = 0; s < n; ++s)
      if (!seen[s]) order.push_back(s);
  }

  std::vector<std::vector<Edge>> sorted_b = b.adj;

  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == order.size()) {
      // Full edge-set equality under the completed map.
      for (StateId s = 0; s < n; ++s) {
        if (a.adj[s].size() != b.adj[map_ab[s]].size()) return false;
        for (const Edge& e : a.adj[s])
          if (!b.has_edge(map_ab[s], e.label, map_ab[e.dst])) return false;
      }
      return true;
    }
    StateId sa = order[k];
    for (StateId sb = 0; sb < n; ++sb) {
      if (used[sb] || ca[sa] != cb[sb]) continue;
      if ((sa == a.init) != (sb == b.init)) continue;
      if (a.adj[sa].size() != b.adj[sb].size()) continue;
      map_ab[sa] = sb;
      used[sb] = 1;
      if (edges_match(sa, sb) && go(k + 1)) return true;
      map_ab[sa] = -1;
      used[sb] = 0;
    }
    return false;
  };
  return go(0);
}

}  // namespace detail

// Isomorphism of the reachable parts: same alphabets (by name, split into
// inputs and outputs), same kind, and a bijection between states that
// preserves the initial state and the transition relation.
inline bool isomorphic(const Model& ma, const Model& mb) {
  Model a = reachable_part(ma), b = reachable_part(mb);
  if (a.is_sa != b.is_sa || a.inputs != b.inputs || a.outputs != b.outputs) return false;
  if (a.n_states() != b.n_states()) return false;
  if (is_deterministic(a) && is_deterministic(b)) return canonical_text(a) == canonical_text(b);
  return detail::iso_backtrack(a, b);
}

struct EmbedReport {
  bool embeds = false;
  bool injective = false;
  std::string detail;  // first obstruction, empty when embedded
};

// Checks that the (deterministic) `sub` automaton maps into `full`: the
// initial states correspond and every sub edge exists in full under the
// induced state map. This is how a hand-drawn fragment is compared against
// a complete generated automaton: the drawing may omit edges and merge
// states, but must never show anything the generated automaton lacks.
inline EmbedReport embeds_into(const Model& sub_m, const Model& full_m) {
  Model sub = reachable_part(sub_m), full = reachable_part(full_m);
  EmbedReport rep;
  if (sub.is_sa != full.is_sa || sub.inputs != full.inputs || sub.outputs != full.outputs) {
    rep.detail = "alphabets or kinds differ";
    return rep;
  }
  if (!is_deterministic(sub) || !is_deterministic(full)) {
    rep.detail = "embedding check requires deterministic automata";
    return rep;
  }
  std::vector<int> map(sub.states.size(), -1);
  map[sub.init] = full.init;
  std::vector<StateId> work{sub.init};
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    for (const Edge& e : sub.adj[s]) {
      StateId target = -1;
      for (const Edge& f : full.adj[map[s]])
        if (f.label == e.label) target = f.dst;
      if (target == -1) {
        rep.detail = "edge " + sub.states[s] + " -" + sub.label_name(e.label) +
                     "-> " + sub.states[e.dst] + " has no counterpart at " +
                     full.states[map[s]];
        return rep;
      }
      if (map[e.dst] == -1) {
        map[e.dst] = target;
        work.push_back(e.dst);
      } else if (map[e.dst] != target) {
        rep.detail = "state " + sub.states[e.dst] + " would need to map to both " +
                     full.states[map[e.dst]] + " and " + full.states[target];
        return rep;
      }
    }
  }
  rep.embeds = true;
  std::vector<int> hit(full.states.size(), 0);
  rep.injective = true;
  for (StateId s = 0; s < sub.n_states(); ++s) {
    if (map[s] == -1) continue;
    if (hit[map[s]]++) rep.injective = false;
  }
  return rep;
}

}  // namespace ioco
