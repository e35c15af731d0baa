// Walkthrough on the bundled vending machine: split the full-system spec
// over the coin-handling platform, look at the derived requirement for the
// missing drink-dispenser component, then drive one candidate dispenser
// against it on the fly.

#include <iostream>

#include "ioco/compose.hpp"
#include "ioco/conformance.hpp"
#include "ioco/fixtures.hpp"
#include "ioco/onthefly.hpp"
#include "ioco/quotient.hpp"

int main() {
  ioco::Model spec = ioco::fixtures::load("vending_s");
  ioco::Model env = ioco::fixtures::load("vending_e");
  ioco::Interface iface = ioco::derive_interface(spec, env);

  std::cout << "spec " << spec.name << ": inputs {";
  for (const auto& n : spec.inputs) std::cout << " " << n;
  std::cout << " }, outputs {";
  for (const auto& n : spec.outputs) std::cout << " " << n;
  std::cout << " }\n";
  std::cout << "platform " << env.name << " keeps labels {";
  for (const auto& n : iface.hidden) std::cout << " " << n;
  std::cout << " } away from the outside\n\n";

  auto rep = ioco::check_decomposable(spec, env, iface);
  if (!rep.decomposable) {
    std::cout << "not established:\n";
    for (const auto& r : rep.reasons) std::cout << "  " << r << "\n";
    return 1;
  }
  std::cout << "decomposable; the component requirement:\n\n"
            << ioco::serialize_model(rep.quotient.sa) << "\n";

  // A dispenser that sometimes signals an error instead of serving the
  // drink. Its composition with the platform still meets the spec, so no
  // test run may reject it.
  ioco::Model cand = ioco::fixtures::load("drink_c");
  auto direct = ioco::ioco_check(cand, rep.quotient.sa);
  std::cout << "candidate " << cand.name << " against the requirement: "
            << (direct.holds ? "conforms" : "does not conform") << "\n";

  ioco::TestConfig cfg;
  cfg.seed = 20240817;
  cfg.max_steps = 80;
  cfg.stop_prob = 0.02;
  auto sut = ioco::sut_from_model(cand, cfg.seed);
  auto run = ioco::run_onthefly_test(spec, env, *sut, iface, cfg);
  std::cout << "\non-the-fly run, seed " << cfg.seed << ":\n";
  for (const auto& line : run.log) std::cout << "  " << line << "\n";
  return run.verdict == "Fail" ? 1 : 0;
}
