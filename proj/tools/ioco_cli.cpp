// Command-line front end for the ioco toolkit. Every subcommand is a thin
// wrapper over one library operation; exit status 0 means holds/valid/Pass,
// 1 means a verdict against (with the evidence printed), 2 means a usage or
// model problem.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ioco/compose.hpp"
#include "ioco/conformance.hpp"
#include "ioco/dot.hpp"
#include "ioco/fixtures.hpp"
#include "ioco/iso.hpp"
#include "ioco/model.hpp"
#include "ioco/onthefly.hpp"
#include "ioco/quotient.hpp"
#include "ioco/semantics.hpp"

namespace {

ioco::Model load_model(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ioco::ModelError("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  try {
    return ioco::parse_model(buf.str());
  } catch (const ioco::ModelError& e) {
    throw ioco::ModelError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw ioco::ModelError("cannot write " + out_path);
  os << text;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s;
}

std::string quoted_word(const std::vector<std::string>& words) {
  return "\"" + join(words) + "\"";
}

// The component-facing alphabet is derivable from the two models; when the
// user names it explicitly the two must agree.
ioco::Interface interface_for(const ioco::Model& spec, const ioco::Model& env,
                              std::vector<std::string> shared_flag) {
  auto iface = ioco::derive_interface(spec, env);
  if (!shared_flag.empty()) {
    std::sort(shared_flag.begin(), shared_flag.end());
    shared_flag.erase(std::unique(shared_flag.begin(), shared_flag.end()), shared_flag.end());
    if (shared_flag != iface.hidden)
      throw ioco::ModelError("--shared names {" + join(shared_flag) +
                             "} but the alphabets give {" + join(iface.hidden) + "}");
  }
  return iface;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"input-output conformance toolkit"};
  app.require_subcommand(1);

  std::string model_a, model_b, sut_path, out_path;
  std::vector<std::string> hide_labels, shared_flag;
  std::uint64_t seed = 1;
  int max_steps = 100, seeds = 1;
  double stop_prob = 0.05;

  auto* c_delta = app.add_subcommand("delta", "determinize a model into a suspension automaton");
  c_delta->add_option("model", model_a, "model file")->required();
  c_delta->add_option("-o,--out", out_path, "write the result here instead of stdout");

  auto* c_comp = app.add_subcommand("compose", "parallel-compose two models");
  c_comp->add_option("left", model_a, "model file")->required();
  c_comp->add_option("right", model_b, "model file")->required();
  c_comp->add_option("--hide", hide_labels, "outputs to internalize afterwards")
      ->delimiter(',');
  c_comp->add_option("-o,--out", out_path, "write the result here instead of stdout");

  auto* c_ioco = app.add_subcommand("ioco", "check conformance of an implementation to a spec");
  c_ioco->add_option("impl", model_a, "implementation model file")->required();
  c_ioco->add_option("spec", model_b, "specification model file")->required();

  auto* c_incl = app.add_subcommand("include",
                                    "check the platform's visible behavior against the spec");
  c_incl->add_option("env", model_a, "platform model file")->required();
  c_incl->add_option("spec", model_b, "specification model file")->required();

  auto* c_quot = app.add_subcommand("quotient", "derive the missing-component requirement");
  c_quot->add_option("spec", model_a, "specification model file")->required();
  c_quot->add_option("env", model_b, "platform model file")->required();
  c_quot->add_option("--shared", shared_flag, "expected component-facing labels (checked)")
      ->delimiter(',');
  c_quot->add_option("-o,--out", out_path, "write the result here instead of stdout");

  auto* c_val = app.add_subcommand("validate-sa", "check suspension-automaton well-formedness");
  c_val->add_option("model", model_a, "model file (kind sa)")->required();

  auto* c_dec = app.add_subcommand("decompose", "try to establish decomposability with a witness");
  c_dec->add_option("spec", model_a, "specification model file")->required();
  c_dec->add_option("env", model_b, "platform model file")->required();
  c_dec->add_option("--shared", shared_flag, "expected component-facing labels (checked)")
      ->delimiter(',');
  c_dec->add_option("-o,--out", out_path, "write the witness requirement here");

  auto* c_mbt = app.add_subcommand("mbtest", "test a component on the fly against (spec, platform)");
  c_mbt->add_option("spec", model_a, "specification model file")->required();
  c_mbt->add_option("env", model_b, "platform model file")->required();
  c_mbt->add_option("--sut", sut_path, "component model driven as the system under test")
      ->required();
  c_mbt->add_option("--seed", seed, "random seed for the first run");
  c_mbt->add_option("--max-steps", max_steps, "steps per run before forced Pass")
      ->check(CLI::PositiveNumber);
  c_mbt->add_option("--stop-prob", stop_prob, "per-step probability of stopping with Pass")
      ->check(CLI::Range(0.0, 1.0));
  c_mbt->add_option("--seeds", seeds, "number of consecutive-seed runs")
      ->check(CLI::PositiveNumber);

  auto* c_dot = app.add_subcommand("dot", "export a model as a graph");
  c_dot->add_option("model", model_a, "model file")->required();
  c_dot->add_option("-o,--out", out_path, "write the result here instead of stdout");

  std::string fixture_dir = "fixtures";
  auto* c_fix = app.add_subcommand("fixtures", "write the bundled model corpus");
  c_fix->add_option("dir", fixture_dir, "target directory (created if missing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_delta) {
      emit(ioco::serialize_model(ioco::delta_transform(load_model(model_a))), out_path);
      return 0;
    }

    if (*c_comp) {
      auto c = ioco::parallel(load_model(model_a), load_model(model_b));
      if (!hide_labels.empty()) c = ioco::hide(c, hide_labels);
      emit(ioco::serialize_model(c), out_path);
      return 0;
    }

    if (*c_ioco) {
      auto v = ioco::ioco_check(load_model(model_a), load_model(model_b));
      if (v.holds) {
        std::cout << "ioco holds\n";
        return 0;
      }
      std::cout << "ioco violated after " << quoted_word(v.trace) << "\n"
                << "  implementation shows: " << v.offending << "\n"
                << "  implementation out-set: {" << join(v.out_impl) << "}\n"
                << "  specification allows:   {" << join(v.out_spec) << "}\n";
      return 1;
    }

    if (*c_incl) {
      auto env = load_model(model_a);
      auto spec = load_model(model_b);
      auto v = ioco::inclusion_check(env, spec, ioco::derive_interface(spec, env));
      if (v.holds) {
        std::cout << "behavior inclusion holds\n";
        return 0;
      }
      std::cout << "behavior inclusion violated after " << quoted_word(v.trace) << "\n"
                << "  platform shows: " << v.offending << "\n"
                << "  platform out-set:     {" << join(v.out_env) << "}\n"
                << "  specification allows: {" << join(v.out_spec) << "}\n";
      return 1;
    }

    if (*c_quot) {
      auto spec = load_model(model_a);
      auto env = load_model(model_b);
      auto iface = interface_for(spec, env, shared_flag);
      auto q = ioco::build_quotient(spec, env, iface);
      emit(ioco::serialize_model(q.sa), out_path);
      return 0;
    }

    if (*c_val) {
      auto rep = ioco::check_sa_valid(load_model(model_a));
      if (rep.valid) {
        std::cout << "valid suspension automaton\n";
        return 0;
      }
      std::cout << "not a valid suspension automaton\n";
      for (const auto& v : rep.violations) std::cout << "  " << v << "\n";
      return 1;
    }

    if (*c_dec) {
      auto spec = load_model(model_a);
      auto env = load_model(model_b);
      auto iface = interface_for(spec, env, shared_flag);
      auto rep = ioco::check_decomposable(spec, env, iface);
      if (rep.decomposable) {
        std::cout << "decomposable; witness requirement has "
                  << rep.quotient.sa.n_states() << " states\n";
        if (!out_path.empty()) emit(ioco::serialize_model(rep.quotient.sa), out_path);
        return 0;
      }
      std::cout << "not established\n";
      for (const auto& r : rep.reasons) std::cout << "  " << r << "\n";
      return 1;
    }

    if (*c_mbt) {
      auto spec = load_model(model_a);
      auto env = load_model(model_b);
      auto sut_model = load_model(sut_path);
      auto iface = ioco::derive_interface(spec, env);
      if (auto ic = ioco::check_internal_choice(env); !ic.internal_choice)
        std::cerr << "note: platform offers inputs while outputs are pending (state "
                  << ic.offending.front() << "); test guarantees are weaker\n";
      bool failed = false;
      for (int k = 0; k < seeds; ++k) {
        ioco::TestConfig cfg;
        cfg.seed = seed + static_cast<std::uint64_t>(k);
        cfg.max_steps = max_steps;
        cfg.stop_prob = stop_prob;
        auto sut = ioco::sut_from_model(sut_model, cfg.seed);
        auto res = ioco::run_onthefly_test(spec, env, *sut, iface, cfg);
        for (const auto& line : res.log) std::cout << line << "\n";
        failed = failed || res.verdict == "Fail";
      }
      return failed ? 1 : 0;
    }

    if (*c_dot) {
      emit(ioco::to_dot(load_model(model_a)), out_path);
      return 0;
    }

    if (*c_fix) {
      std::filesystem::create_directories(fixture_dir);
      ioco::fixtures::write_all(fixture_dir);
      std::cout << "wrote " << ioco::fixtures::all().size() << " models to " << fixture_dir
                << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
