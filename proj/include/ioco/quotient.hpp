#pragma once

// Quotient construction: given a specification of a whole system and a
// model of the platform part, derive the requirement on the missing
// component as a suspension automaton over the component-facing alphabet,
// and decide whether that derivation establishes decomposability.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "compose.hpp"
#include "conformance.hpp"
#include "model.hpp"
#include "semantics.hpp"

namespace ioco {

// Joint evaluation of a specification and a platform model. The component
// never sees their shared labels, so from its point of view the two may
// silently advance in lockstep over any shared word between two component
// actions. States here are sets of (spec subset, platform subset) pairs,
// the subsets coming from the two lazy determinizations.
class PairSystem {
 public:
  using Pair = std::pair<int, int>;   // (spec node, platform node)
  using PairSet = std::vector<Pair>;  // sorted, unique

  PairSystem(const Model* spec, const Model* env, Interface iface, Limits lim = {})
      : iface_(std::move(iface)), ps_(spec, lim), pe_(env, lim), lim_(lim) {
    for (const auto& n : iface_.shared) {
      auto a = spec->find_label(n);
      auto b = env->find_label(n);
      if (a && b) shared_.push_back({*a, *b});
    }
  }

  PairSet initial() { return {{ps_.initial(), pe_.initial()}}; }

  const Interface& iface() const { return iface_; }
  PowerSa& spec_power() { return ps_; }
  PowerSa& env_power() { return pe_; }

  // The execute operator: everything reachable by some silent shared word
  // followed by x, which must be a component-facing label or "delta".
  // Labels of only the specification move the spec side; labels of only the
  // platform move the platform side; "delta" settles both at once.
  PairSet execute(const PairSet& q, const std::string& x) {
    enum class Kind { env_only, spec_only, joint_delta } kind;
    LabelId lbl = label_tau;
    if (x == "delta") {
      kind = Kind::joint_delta;
    } else {
      auto in_spec = ps_.model().find_label(x);
      auto in_env = pe_.model().find_label(x);
      if (in_spec && in_env)
        throw ModelError("label " + x + " is shared with the platform; the quotient never acts on it");
      if (!in_spec && !in_env) throw ModelError("label " + x + " is in neither alphabet");
      kind = in_env ? Kind::env_only : Kind::spec_only;
      lbl = in_env ? *in_env : *in_spec;
    }
    PairSet out;
    for (Pair p : q)
      for (Pair r : reach_free(p)) {
        switch (kind) {
          case Kind::env_only: {
            int ne = pe_.step(r.second, lbl);
            if (ne != -1) out.push_back({r.first, ne});
            break;
          }
          case Kind::spec_only: {
            int ns = ps_.step(r.first, lbl);
            if (ns != -1) out.push_back({ns, r.second});
            break;
          }
          case Kind::joint_delta: {
            int ns = ps_.step(r.first, label_delta);
            if (ns == -1) break;
            int ne = pe_.step(r.second, label_delta);
            if (ne != -1) out.push_back({ns, ne});
            break;
          }
        }
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Premise for emitting a component output the platform does not consume:
  // the specification must offer it after every silent shared word, no
  // matter how the pair has advanced (words ending in joint quiescence do
  // not count, since the output would break that quiescence anyway).
  bool output_premise(const PairSet& q, const std::string& x) {
    auto l = ps_.model().find_label(x);
    if (!l || !ps_.model().is_output(*l)) return false;
    for (Pair p : q)
      for (const auto& [r, bits] : reach_full(p))
        if ((bits & kFresh) && ps_.step(r.first, *l) == -1) return false;
    return true;
  }

  // Premise for component quiescence: the specification must allow settling
  // after every silent shared word, including those ending in quiescence.
  bool delta_premise(const PairSet& q) {
    for (Pair p : q)
      for (const auto& [r, bits] : reach_full(p)) {
        (void)bits;
        if (ps_.step(r.first, label_delta) == -1) return false;
      }
    return true;
  }

 private:
  static constexpr int kFresh = 1;  // reached by a word not ending in "delta"
  static constexpr int kAny = 2;

  // Pairs jointly reachable through shared labels alone.
  const PairSet& reach_free(Pair p) {
    auto it = reach_free_.find(p);
    if (it != reach_free_.end()) return it->second;
    PairSet out{p};
    for (std::size_t i = 0; i < out.size(); ++i) {
      Pair cur = out[i];
      for (auto [a, b] : shared_) {
        int ns = ps_.step(cur.first, a);
        if (ns == -1) continue;
        int ne = pe_.step(cur.second, b);
        if (ne == -1) continue;
        Pair nxt{ns, ne};
        if (std::find(out.begin(), out.end(), nxt) == out.end()) out.push_back(nxt);
      }
      lim_.poll();
    }
    std::sort(out.begin(), out.end());
    return reach_free_.emplace(p, std::move(out)).first->second;
  }

  // Pairs jointly reachable through shared labels and joint quiescence,
  // each tagged with how it can be reached.
  const std::map<Pair, int>& reach_full(Pair p) {
    auto it = reach_full_.find(p);
    if (it != reach_full_.end()) return it->second;
    std::map<Pair, int> bits{{p, kFresh | kAny}};
    std::vector<Pair> work{p};
    while (!work.empty()) {
      Pair cur = work.back();
      work.pop_back();
      auto push = [&](Pair nxt, int add) {
        int& slot = bits[nxt];
        if ((slot | add) != slot) {
          slot |= add;
          work.push_back(nxt);
        }
      };
      for (auto [a, b] : shared_) {
        int ns = ps_.step(cur.first, a);
        if (ns == -1) continue;
        int ne = pe_.step(cur.second, b);
        if (ne != -1) push({ns, ne}, kFresh | kAny);
      }
      int ds = ps_.step(cur.first, label_delta);
      if (ds != -1) {
        int de = pe_.step(cur.second, label_delta);
        if (de != -1) push({ds, de}, kAny);
      }
      lim_.poll();
    }
    return reach_full_.emplace(p, std::move(bits)).first->second;
  }

  Interface iface_;
  PowerSa ps_, pe_;
  Limits lim_;
  std::vector<std::pair<LabelId, LabelId>> shared_;  // per shared name: (spec id, env id)
  std::map<Pair, PairSet> reach_free_;
  std::map<Pair, std::map<Pair, int>> reach_full_;
};

struct QuotientAutomaton {
  Model sa;
  std::vector<char> flagged;  // per state: entered through a quiescence edge
};

// Builds the component requirement. Transitions out of a state set q:
//  - a component input is offered whenever executing it leads anywhere;
//  - a component output the platform consumes is allowed whenever executing
//    it leads anywhere, except from post-quiescence states (the platform
//    taking it right after observed silence would contradict the silence);
//  - a component output the platform does not consume needs the
//    specification to offer it after every silent shared word;
//  - quiescence needs the specification to allow settling after every
//    silent shared word; its target states carry a flag.
inline QuotientAutomaton build_quotient(const Model& spec, const Model& env,
                                        const Interface& iface, Limits lim = {}) {
  if (auto d = check_divergence(spec); d.divergent)
    throw ModelError("specification has an internal cycle");
  if (auto d = check_divergence(env); d.divergent)
    throw ModelError("platform model has an internal cycle");

  PairSystem sys(&spec, &env, iface, lim);
  QuotientAutomaton out;
  out.sa.name = spec.name + "_over_" + env.name;
  out.sa.is_sa = true;
  out.sa.inputs = iface.quotient_inputs;
  out.sa.outputs = iface.quotient_outputs;

  const auto& u1_labels = iface.env_hidden_inputs;  // outputs the platform consumes
  auto u2_labels = detail::set_minus(iface.quotient_outputs, u1_labels);

  std::map<std::pair<PairSystem::PairSet, bool>, StateId> ids;
  std::vector<std::pair<PairSystem::PairSet, bool>> work;

  auto name_of = [&](const PairSystem::PairSet& q, bool flag) {
    std::vector<std::string> parts;
    for (auto [s, e] : q)
      parts.push_back("(" + sys.spec_power().node_name(s) + "," + sys.env_power().node_name(e) +
                      ")");
    std::sort(parts.begin(), parts.end());
    std::string n;
    for (const auto& p : parts) n += p;
    if (flag) n += "@d";
    return n;
  };

  auto intern = [&](PairSystem::PairSet q, bool flag) {
    auto key = std::make_pair(std::move(q), flag);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    lim.poll();
    if (ids.size() >= lim.max_power_states)
      throw LimitError("quotient construction exceeded the state limit");
    StateId id = out.sa.add_state(name_of(key.first, flag));
    out.flagged.push_back(flag ? 1 : 0);
    ids.emplace(key, id);
    work.push_back(std::move(key));
    return id;
  };

  intern(sys.initial(), false);
  out.sa.init = 0;

  for (std::size_t w = 0; w < work.size(); ++w) {
    auto [q, flag] = work[w];  // copied; work grows below
    StateId src = ids.at({q, flag});
    for (const auto& a : iface.quotient_inputs) {
      auto t = sys.execute(q, a);
      if (!t.empty()) out.sa.add_edge(src, *out.sa.find_label(a), intern(std::move(t), false));
    }
    if (!flag) {
      for (const auto& x : u1_labels) {
        auto t = sys.execute(q, x);
        if (!t.empty()) out.sa.add_edge(src, *out.sa.find_label(x), intern(std::move(t), false));
      }
    }
    for (const auto& x : u2_labels) {
      if (!sys.output_premise(q, x)) continue;
      auto t = sys.execute(q, x);
      if (!t.empty()) out.sa.add_edge(src, *out.sa.find_label(x), intern(std::move(t), false));
    }
    if (sys.delta_premise(q)) {
      auto t = sys.execute(q, "delta");
      if (!t.empty()) out.sa.add_edge(src, label_delta, intern(std::move(t), true));
    }
  }
  validate(out.sa);
  return out;
}

// A usable component requirement must be a well-formed suspension automaton
// and strongly non-blocking: every state offers an observation that does
// not depend on the platform accepting anything first (an output the
// platform does not consume, or quiescence).
inline SaValidityReport check_quotient_valid(const QuotientAutomaton& q, const Interface& iface) {
  auto rep = check_sa_valid(q.sa);
  const auto& uv = iface.env_hidden_inputs;
  for (StateId s : reachable_states(q.sa)) {
    bool ok = false;
    for (const Edge& e : q.sa.adj[s]) {
      if (e.label == label_delta ||
          (q.sa.is_output(e.label) && !detail::set_contains(uv, q.sa.label_name(e.label)))) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      rep.valid = false;
      rep.violations.push_back("state " + q.sa.states[s] +
                               ": every available output needs the platform to accept it");
    }
  }
  return rep;
}

struct DecomposabilityReport {
  bool decomposable = false;
  std::vector<std::string> reasons;  // obstructions, when not established
  bool quotient_built = false;
  QuotientAutomaton quotient;  // the witness component requirement, when built
};

// Tries to establish that the specification can be realized as some
// component running on the given platform. Positive answers come with the
// component requirement as a witness; negative answers only mean the
// construction could not establish it, with the obstructions listed.
inline DecomposabilityReport check_decomposable(const Model& spec, const Model& env,
                                                const Interface& iface, Limits lim = {}) {
  DecomposabilityReport rep;
  if (auto d = check_divergence(spec); d.divergent)
    rep.reasons.push_back("specification has an internal cycle");
  if (auto d = check_divergence(env); d.divergent)
    rep.reasons.push_back("platform model has an internal cycle");
  if (auto r = check_input_enabled(env); !r.input_enabled)
    rep.reasons.push_back("platform model is not input-enabled (state " + r.offending.front() +
                          ")");
  if (!rep.reasons.empty()) return rep;
  {
    Model h = hide(env, iface.env_hidden_outputs);
    if (auto d = check_divergence(h); d.divergent) {
      rep.reasons.push_back(
          "platform-private outputs can cycle without the specification seeing anything");
      return rep;
    }
  }
  auto inc = inclusion_check(env, spec, iface, lim);
  if (!inc.holds) {
    std::string w;
    for (const auto& t : inc.trace) w += (w.empty() ? "" : " ") + t;
    rep.reasons.push_back("platform can show " + inc.offending + " after \"" + w +
                          "\" though the specification does not allow it");
    return rep;
  }
  rep.quotient = build_quotient(spec, env, iface, lim);
  rep.quotient_built = true;
  auto val = check_quotient_valid(rep.quotient, iface);
  if (!val.valid) {
    rep.reasons.push_back("the derived component requirement is not well-formed:");
    for (const auto& v : val.violations) rep.reasons.push_back("  " + v);
    return rep;
  }
  rep.decomposable = true;
  return rep;
}

}  // namespace ioco
