#pragma once

// Shared plumbing for the test suites: loading the shipped corpus, input
// completion, state renaming, and the twin merge used to compare quotient
// automata against plain determinizations.

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ioco/model.hpp"
#include "ioco/quotient.hpp"

namespace support {

inline std::string fixture_path(const std::string& name) {
  return std::string(IOCO_FIXTURE_DIR) + "/" + name + ".im";
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

// Loads a model from the corpus directory the build points at.
inline ioco::Model fixture(const std::string& name) {
  return ioco::parse_model(read_file(fixture_path(name)));
}

// Demonic completion: any input a state does not handle loops back to it.
inline ioco::Model input_completed(ioco::Model m) {
  for (ioco::StateId s = 0; s < m.n_states(); ++s)
    for (ioco::LabelId i = 0; i < m.n_inputs(); ++i) {
      bool has = false;
      for (const ioco::Edge& e : m.adj[s]) has = has || e.label == i;
      if (!has) m.add_edge(s, i, s);
    }
  return m;
}

// Same model with states shuffled and renamed; behavior is untouched, so
// anything isomorphism-based must not notice.
inline ioco::Model permuted(const ioco::Model& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int n = m.n_states();
  std::vector<int> to_new(n);
  for (int i = 0; i < n; ++i) to_new[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(to_new[i], to_new[rng() % (i + 1)]);

  ioco::Model out;
  out.name = m.name;
  out.is_sa = m.is_sa;
  out.inputs = m.inputs;
  out.outputs = m.outputs;
  out.states.resize(n);
  out.adj.resize(n);
  for (int s = 0; s < n; ++s) out.states[to_new[s]] = "t" + std::to_string(to_new[s]);
  for (int s = 0; s < n; ++s)
    for (const ioco::Edge& e : m.adj[s]) out.add_edge(to_new[s], e.label, to_new[e.dst]);
  out.init = to_new[m.init];
  ioco::validate(out);
  return out;
}

// Quotient states carry a post-quiescence marker, so a marked state and its
// unmarked twin over the same underlying sets stay separate even when they
// act identically. Merging the pairs that do act identically (splitting
// again while their outgoing pictures disagree) yields the automaton one
// would draw without the bookkeeping.
inline ioco::Model merge_delta_twins(const ioco::QuotientAutomaton& q) {
  const ioco::Model& a = q.sa;
  int n = a.n_states();
  auto stem = [&](ioco::StateId s) {
    std::string t = a.states[s];
    if (t.size() > 2 && t.compare(t.size() - 2, 2, "@d") == 0) t.resize(t.size() - 2);
    return t;
  };
  std::map<std::string, ioco::StateId> plain;
  for (ioco::StateId s = 0; s < n; ++s)
    if (!q.flagged[s]) plain.emplace(a.states[s], s);

  std::vector<ioco::StateId> rep(n);
  for (ioco::StateId s = 0; s < n; ++s) {
    auto it = q.flagged[s] ? plain.find(stem(s)) : plain.end();
    rep[s] = it != plain.end() ? it->second : s;
  }

  auto picture = [&](ioco::StateId s) {
    std::vector<std::pair<ioco::LabelId, ioco::StateId>> p;
    for (const ioco::Edge& e : a.adj[s]) p.push_back({e.label, rep[e.dst]});
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (ioco::StateId s = 0; s < n; ++s)
      if (rep[s] != s && picture(s) != picture(rep[s])) {
        rep[s] = s;
        changed = true;
      }
  }

  ioco::Model out;
  out.name = a.name;
  out.is_sa = true;
  out.inputs = a.inputs;
  out.outputs = a.outputs;
  std::map<ioco::StateId, ioco::StateId> ids;
  std::vector<ioco::StateId> work{rep[a.init]};
  ids[rep[a.init]] = out.add_state(a.states[rep[a.init]]);
  out.init = 0;
  for (std::size_t w = 0; w < work.size(); ++w) {
    ioco::StateId s = work[w];
    for (const ioco::Edge& e : a.adj[s]) {
      ioco::StateId d = rep[e.dst];
      if (!ids.count(d)) {
        ids[d] = out.add_state(a.states[d]);
        work.push_back(d);
      }
      out.add_edge(ids[s], e.label, ids[d]);
    }
  }
  ioco::validate(out);
  return out;
}

}  // namespace support
