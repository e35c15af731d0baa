#pragma once

// On-the-fly conformance testing of a component through its requirement:
// the tester tracks the set of (specification, platform) pair states the
// interaction so far allows, supplies inputs, observes outputs and
// quiescence, and fails the moment an observation is not permitted.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "model.hpp"
#include "quotient.hpp"
#include "semantics.hpp"

namespace ioco {

struct InternalChoiceReport {
  bool internal_choice = true;
  std::vector<std::string> offending;  // states offering inputs while busy
};

// A model makes its choices internally when inputs are only offered at
// quiescent states; between an output becoming possible and happening, no
// input can interleave. Testing guarantees are strongest against such
// platforms.
inline InternalChoiceReport check_internal_choice(const Model& m) {
  InternalChoiceReport rep;
  for (StateId s : reachable_states(m)) {
    bool has_input = false;
    for (const Edge& e : m.adj[s])
      if (m.is_input(e.label)) {
        has_input = true;
        break;
      }
    if (has_input && !state_quiescent(m, s)) rep.offending.push_back(m.states[s]);
  }
  rep.internal_choice = rep.offending.empty();
  return rep;
}

// What the tester talks to: something that accepts inputs and, on request,
// produces the next observation ("delta" when it stays quiet).
class SutAdapter {
 public:
  virtual ~SutAdapter() = default;
  virtual void supply(const std::string& input) = 0;
  virtual std::string observe() = 0;
};

// A simulated system under test walking one concrete state of a model.
// Inputs move to a uniformly chosen weak successor; observation uniformly
// resolves among the weakly enabled outputs and the reachable settle
// points. After settling, the system stays put until the next input.
class ModelSut : public SutAdapter {
 public:
  ModelSut(Model m, std::uint64_t seed) : m_(std::move(m)), rng_(seed), state_(m_.init) {
    if (m_.is_sa) throw ModelError("a simulated system under test needs a plain model");
    if (auto d = check_divergence(m_); d.divergent)
      throw ModelError("a simulated system under test must not have internal cycles");
  }

  void supply(const std::string& input) override {
    auto l = m_.find_label(input);
    if (!l || !m_.is_input(*l)) throw ModelError("system under test cannot take " + input);
    std::vector<StateId> ends;
    for (StateId s : tau_closure(m_, {state_}))
      for (const Edge& e : m_.adj[s])
        if (e.label == *l) ends.push_back(e.dst);
    if (ends.empty())
      throw ModelError("system under test refuses " + input + " at " + m_.states[state_]);
    state_ = ends[rng_() % ends.size()];
  }

  std::string observe() override {
    std::vector<std::pair<std::string, StateId>> cands;
    for (StateId s : tau_closure(m_, {state_})) {
      for (const Edge& e : m_.adj[s])
        if (m_.is_output(e.label)) cands.emplace_back(m_.label_name(e.label), e.dst);
      if (state_quiescent(m_, s)) cands.emplace_back("delta", s);
    }
    // A tau-maximal state with no outputs is quiescent, so candidates exist
    // whenever the model has no internal cycle.
    auto [name, dst] = cands[rng_() % cands.size()];
    state_ = dst;
    return name;
  }

  const std::string& current_state() const { return m_.states[state_]; }

 private:
  Model m_;
  std::mt19937_64 rng_;
  StateId state_;
};

inline std::unique_ptr<SutAdapter> sut_from_model(const Model& m, std::uint64_t seed) {
  return std::make_unique<ModelSut>(m, seed);
}

struct TestConfig {
  std::uint64_t seed = 1;
  int max_steps = 100;
  double stop_prob = 0.05;
};

struct RunResult {
  std::string verdict;           // "Pass" or "Fail"
  std::vector<std::string> log;  // step lines plus the final verdict line
  int steps = 0;
  int failed_rule = 0;           // 3, 5 or 7 when the verdict is "Fail"
  std::string failed_obs;
};

// One test run against the (specification, platform) pair. Per step the
// tester either stops (rule 8) or uniformly picks among the currently
// offerable inputs (rule 1) and observing. An observation is judged by the
// same conditions that admit the corresponding requirement transition:
// quiescence by the settling premise (rules 2/3), an output the platform
// consumes by executability (rules 4/5), any other output by the offering
// premise (rules 6/7). The log is reproducible byte for byte from the seed.
inline RunResult run_onthefly_test(const Model& spec, const Model& env, SutAdapter& sut,
                                   const Interface& iface, const TestConfig& cfg,
                                   Limits lim = {}) {
  if (auto inc = inclusion_check(env, spec, iface, lim); !inc.holds)
    throw ModelError("platform does not fit the specification; no component could close the gap");

  PairSystem sys(&spec, &env, iface, lim);
  auto s_now = sys.initial();

  std::mt19937_64 rng(cfg.seed);
  auto coin = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  RunResult res;
  auto line = [&](int n, int rule, const std::string& what, const std::string& verdict) {
    res.log.push_back("step " + std::to_string(n) + " " + std::to_string(rule) + " " + what +
                      " " + verdict);
  };

  for (int n = 1; n <= cfg.max_steps; ++n) {
    res.steps = n;
    if (coin() < cfg.stop_prob) {
      line(n, 8, "stop", "Pass");
      res.verdict = "Pass";
      break;
    }
    std::vector<std::string> offerable;
    for (const auto& a : iface.quotient_inputs)
      if (!sys.execute(s_now, a).empty()) offerable.push_back(a);

    std::size_t pick = rng() % (offerable.size() + 1);
    if (pick < offerable.size()) {
      const std::string& a = offerable[pick];
      sut.supply(a);
      s_now = sys.execute(s_now, a);
      line(n, 1, a, "None");
      continue;
    }

    std::string obs = sut.observe();
    if (obs == "delta") {
      if (sys.delta_premise(s_now)) {
        s_now = sys.execute(s_now, "delta");
        line(n, 2, "delta", "None");
      } else {
        line(n, 3, "delta", "Fail");
        res.verdict = "Fail";
        res.failed_rule = 3;
        res.failed_obs = "delta";
        break;
      }
    } else if (detail::set_contains(iface.env_hidden_inputs, obs)) {
      auto t = sys.execute(s_now, obs);
      if (!t.empty()) {
        s_now = std::move(t);
        line(n, 4, obs, "None");
      } else {
        line(n, 5, obs, "Fail");
        res.verdict = "Fail";
        res.failed_rule = 5;
        res.failed_obs = obs;
        break;
      }
    } else if (detail::set_contains(iface.quotient_outputs, obs) &&
               sys.output_premise(s_now, obs)) {
      s_now = sys.execute(s_now, obs);
      line(n, 6, obs, "None");
    } else {
      line(n, 7, obs, "Fail");
      res.verdict = "Fail";
      res.failed_rule = 7;
      res.failed_obs = obs;
      break;
    }
  }
  if (res.verdict.empty()) res.verdict = "Pass";  // ran out of steps unrefuted
  res.log.push_back("verdict " + res.verdict + " seed " + std::to_string(cfg.seed));
  return res;
}

}  // namespace ioco
