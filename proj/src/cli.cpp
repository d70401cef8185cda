// Copyright 2026 The matorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matorder/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "matorder/algebra.hpp"
#include "matorder/cones.hpp"
#include "matorder/correlations.hpp"
#include "matorder/json_io.hpp"
#include "matorder/parallel.hpp"
#include "matorder/projections.hpp"
#include "matorder/selftest.hpp"

namespace matorder {

namespace {

// Options shared by every leaf command.
struct Common {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  Tolerances tols = tolerances();
};

struct Outcome {
  Json result;
  Json config = Json::object();
  Json timings = Json::object();
  int code = 0;
};

// Restores the global tolerances when a command finishes.
class ToleranceScope {
 public:
  explicit ToleranceScope(const Tolerances& t) : saved_(tolerances()) { set_tolerances(t); }
  ~ToleranceScope() { set_tolerances(saved_); }
  ToleranceScope(const ToleranceScope&) = delete;
  ToleranceScope& operator=(const ToleranceScope&) = delete;

 private:
  Tolerances saved_;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Root seed for all randomness")->capture_default_str();
  app->add_option("--threads", c.threads, "Worker threads (default MATORDER_THREADS or 1)");
  app->add_option("--out", c.out, "Write the JSON report here instead of stdout");
  app->add_option("--span-tol", c.tols.span_tol, "Span membership tolerance")->check(CLI::PositiveNumber);
  app->add_option("--eig-tol", c.tols.eig_tol, "Eigenvalue tolerance")->check(CLI::PositiveNumber);
}

Json tolerance_json(const Tolerances& t) {
  return {{"span_tol", t.span_tol}, {"herm_tol", t.herm_tol}, {"eig_tol", t.eig_tol},
          {"proj_tol", t.proj_tol}, {"rank_tol", t.rank_tol}};
}

SearchOptions search_options(const Common& c, int restarts, int max_iters) {
  SearchOptions s;
  s.seed = c.seed;
  s.restarts = restarts;
  s.max_iters = max_iters;
  s.threads = c.threads > 0 ? c.threads : default_threads();
  return s;
}

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad number '" + item + "' in list");
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty list");
  return out;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  for (double d : parse_schedule(text)) {
    if (d < 1 || d != static_cast<int>(d)) throw Error(ErrorCode::kInvalidArgument, "block sizes must be positive integers");
    out.push_back(static_cast<int>(d));
  }
  return out;
}

int verdict_code(const Verdict& v) { return v.undecided() ? 2 : 0; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificates for matrix-ordered spaces and finite-dimensional correlations", kToolkitName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  Common common;
  std::string command;
  std::function<Outcome()> action;

  // certify kmin | kmax
  std::string system_path, element_path, p_path, state_path, strategy_path, table_path, functional_path;
  int level = 0, k = 0, restarts = 32, max_iters = 500, iters = 500;
  double tol = 1e-8, t_max = 1e6, ns_tol = 1e-9, cap = 1e8;
  std::string schedule = "1e-1,1e-2,1e-3,1e-4,1e-5", dims = "4", weights;
  std::vector<std::string> tables;

  auto* certify = app.add_subcommand("certify", "Cone membership and projection certificates");
  certify->require_subcommand(1);
  for (const char* which : {"kmin", "kmax"}) {
    const std::string name = which;
    auto* sub = certify->add_subcommand(
        name, name == "kmin" ? "Membership in the k-minimal cone" : "Membership in the k-maximal cone");
    add_common(sub, common);
    sub->add_option("--system", system_path, "System JSON")->required();
    sub->add_option("--element", element_path, "Level element JSON")->required();
    sub->add_option("--level", level, "Expected level n");
    sub->add_option("--k", k, "k (default: the system's k)");
    sub->add_option("--tol", tol, "Membership tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--restarts", restarts, "Search restarts")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", max_iters, "Alternations per restart")->check(CLI::PositiveNumber);
    sub->callback([&, name] {
      command = "certify " + name;
      action = [&, name] {
        Outcome o;
        const SystemPtr sys = make_system(system_from_json(read_json_file(system_path)));
        const LevelElement x = level_element_from_json(sys, read_json_file(element_path));
        if (level > 0 && x.level() != level) {
          throw Error(ErrorCode::kDimensionMismatch, "element level does not match --level");
        }
        const int kk = k > 0 ? k : sys->k();
        const SearchOptions so = search_options(common, restarts, max_iters);
        const Verdict v = name == "kmin" ? is_kmin_member(x, kk, tol, so) : is_kmax_member(x, kk, tol, so);
        o.config = {{"k", kk}, {"level", x.level()}, {"tol", tol}, {"restarts", restarts},
                    {"max_iters", max_iters}};
        o.result = to_json(v, VerdictContext::kCone);
        o.code = verdict_code(v);
        return o;
      };
    });
  }
  {
    auto* sub = certify->add_subcommand("projection", "Abstract projection test for a positive contraction");
    add_common(sub, common);
    sub->add_option("--system", system_path, "System JSON")->required();
    sub->add_option("--p", p_path, "Candidate element JSON")->required();
    sub->add_option("--k", k, "k (default: the system's k)");
    sub->add_option("--tol", tol, "Membership tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--eps-schedule", schedule, "Comma separated, strictly decreasing");
    sub->add_option("--t-max", t_max, "Upper end of the t search")->check(CLI::PositiveNumber);
    sub->callback([&] {
      command = "certify projection";
      action = [&] {
        Outcome o;
        const SystemPtr sys = make_system(system_from_json(read_json_file(system_path)));
        const Json pj = read_json_file(p_path);
        const HermitianElement p = element_from_json(sys->ambient(), pj.is_object() && pj.contains("element") ? pj.at("element") : pj);
        ProjectionOptions po;
        po.eps_schedule = parse_schedule(schedule);
        for (std::size_t i = 1; i < po.eps_schedule.size(); ++i) {
          if (!(po.eps_schedule[i] < po.eps_schedule[i - 1])) {
            throw Error(ErrorCode::kInvalidArgument, "eps schedule must be strictly decreasing");
          }
        }
        po.cone.t_max = t_max;
        po.cone.search = search_options(common, restarts, max_iters);
        const int kk = k > 0 ? k : sys->k();
        const Verdict v = is_abstract_projection(ProjectionCandidate::make(sys, p), kk, tol, po);
        o.config = {{"k", kk}, {"tol", tol}, {"eps_schedule", po.eps_schedule}, {"t_max", t_max}};
        o.result = to_json(v, VerdictContext::kProjection);
        o.code = verdict_code(v);
        return o;
      };
    });
  }

  auto* algebra = app.add_subcommand("algebra", "Generated algebra, Wedderburn blocks, GNS");
  algebra->require_subcommand(1);
  {
    auto* gen = algebra->add_subcommand("generate", "Basis of the generated *-algebra");
    add_common(gen, common);
    gen->add_option("--system", system_path, "System JSON")->required();
    gen->callback([&] {
      command = "algebra generate";
      action = [&] {
        Outcome o;
        const ConcreteSystem sys = system_from_json(read_json_file(system_path));
        o.result = to_json(generate_algebra(sys));
        return o;
      };
    });
    auto* dec = algebra->add_subcommand("decompose", "Wedderburn block decomposition");
    add_common(dec, common);
    dec->add_option("--system", system_path, "System JSON")->required();
    dec->add_option("--k", k, "Block bound to check (default: the system's k)");
    dec->callback([&] {
      command = "algebra decompose";
      action = [&] {
        Outcome o;
        const ConcreteSystem sys = system_from_json(read_json_file(system_path));
        const int kk = k > 0 ? k : sys.k();
        const GeneratedAlgebra a = generate_algebra(sys);
        o.config = {{"k", kk}};
        o.result = {{"algebra_dim", a.dim()}, {"decomposition", to_json(wedderburn(a, kk, common.seed))}};
        return o;
      };
    });
    auto* g = algebra->add_subcommand("gns", "GNS representation of a state");
    add_common(g, common);
    g->add_option("--system", system_path, "System JSON")->required();
    g->add_option("--state", state_path, "State JSON: density, vector or coordinates")->required();
    g->callback([&] {
      command = "algebra gns";
      action = [&] {
        Outcome o;
        const ConcreteSystem sys = system_from_json(read_json_file(system_path));
        const GeneratedAlgebra a = generate_algebra(sys);
        const Json sj = read_json_file(state_path);
        Vector st;
        if (sj.contains("density")) st = state_from_density(a, matrix_from_json(sj.at("density")));
        else if (sj.contains("vector")) st = vector_state(a, vector_from_json(sj.at("vector")));
        else st = vector_from_json(sj.at("coordinates"));
        o.result = {{"algebra_dim", a.dim()}, {"gns", to_json(gns(st, a))}};
        return o;
      };
    });
  }

  auto* corr = app.add_subcommand("corr", "Correlation tables");
  corr->require_subcommand(1);
  {
    auto* ns = corr->add_subcommand("check-ns", "Nonsignalling check");
    add_common(ns, common);
    ns->add_option("--table", table_path, "Correlation JSON")->required();
    ns->add_option("--ns-tol", ns_tol, "Signalling tolerance")->check(CLI::PositiveNumber);
    ns->callback([&] {
      command = "corr check-ns";
      action = [&] {
        Outcome o;
        const Marginals mg = check_nonsignalling(correlation_from_json(read_json_file(table_path)), ns_tol);
        o.config = {{"ns_tol", ns_tol}};
        o.result = {{"nonsignalling", mg.nonsignalling}, {"max_signalling", mg.max_signalling},
                    {"pA", mg.pa}, {"pB", mg.pb}};
        return o;
      };
    });
    auto* fs = corr->add_subcommand("from-strategy", "Correlation table of a strategy");
    add_common(fs, common);
    fs->add_option("--strategy", strategy_path, "Strategy JSON")->required();
    fs->callback([&] {
      command = "corr from-strategy";
      action = [&] {
        Outcome o;
        o.result = to_json(correlation_from_strategy(strategy_from_json(read_json_file(strategy_path))));
        return o;
      };
    });
    auto* mix = corr->add_subcommand("mix", "Convex combination of tables");
    add_common(mix, common);
    mix->add_option("--table", tables, "Correlation JSON, repeatable")->required();
    mix->add_option("--weights", weights, "Comma separated weights, one per table")->required();
    mix->callback([&] {
      command = "corr mix";
      action = [&] {
        Outcome o;
        const std::vector<double> w = parse_schedule(weights);
        if (w.size() != tables.size()) throw Error(ErrorCode::kBadWeights, "one weight per table");
        std::vector<std::pair<double, Correlation>> parts;
        for (std::size_t i = 0; i < w.size(); ++i) parts.emplace_back(w[i], correlation_from_json(read_json_file(tables[i])));
        o.config = {{"weights", w}};
        o.result = to_json(mix_correlations(parts));
        return o;
      };
    });
    auto* rz = corr->add_subcommand("realize", "Quantum k-operator system realizing a strategy");
    add_common(rz, common);
    rz->add_option("--strategy", strategy_path, "Strategy JSON")->required();
    rz->callback([&] {
      command = "corr realize";
      action = [&] {
        Outcome o;
        const Strategy s = strategy_from_json(read_json_file(strategy_path));
        const QuantumKAOUWitness w = realize_quantum_kaou(s);
        const Correlation direct = correlation_from_strategy(s);
        double gap = 0.0;
        for (std::size_t i = 0; i < direct.p.size(); ++i) gap = std::max(gap, std::abs(direct.p[i] - w.table.p[i]));
        Json gens = Json::array();
        for (const Matrix& q : w.generators) gens.push_back(to_json(q));
        o.result = {{"system", to_json(*w.system)}, {"k", w.k}, {"generators", gens},
                    {"state", to_json(w.state)}, {"table", to_json(w.table)},
                    {"table_agreement", gap}, {"unit_defect", w.unit_defect},
                    {"marginal_defect", w.marginal_defect}, {"idempotency_defect", w.idempotency_defect}};
        return o;
      };
    });
  }

  auto* bell = app.add_subcommand("bell", "Bell functionals");
  bell->require_subcommand(1);
  {
    auto* opt = bell->add_subcommand("optimize", "Local bound and see-saw lower bound");
    add_common(opt, common);
    opt->add_option("--functional", functional_path, "Functional JSON")->required();
    opt->add_option("--k", k, "Block size bound")->check(CLI::PositiveNumber);
    opt->add_option("--dims", dims, "Comma separated block sizes");
    opt->add_option("--restarts", restarts, "Restarts")->check(CLI::PositiveNumber);
    opt->add_option("--iters", iters, "Iterations per restart")->check(CLI::PositiveNumber);
    opt->add_option("--enumeration-cap", cap, "Cap on m^(2n) for the local bound");
    opt->callback([&] {
      command = "bell optimize";
      action = [&] {
        Outcome o;
        const BellFunctional f = functional_from_json(read_json_file(functional_path));
        const std::vector<int> bd = parse_dims(dims);
        int kk = k;
        if (kk <= 0) {
          for (int d : bd) kk = std::max(kk, d);
        }
        const SearchOptions so = search_options(common, restarts, iters);
        const SeesawResult r = seesaw_optimize(f, kk, bd, restarts, iters, common.seed, so.threads);
        Json local = nullptr;
        if (std::pow(static_cast<double>(f.m), 2.0 * f.n) <= cap) {
          const LocalBound lb = local_bound(f, cap);
          local = {{"value", lb.value}, {"alice", lb.alice}, {"bob", lb.bob}};
        }
        o.config = {{"k", kk}, {"dims", bd}, {"restarts", restarts}, {"iters", iters},
                    {"enumeration_cap", cap}};
        o.result = {{"value", r.value}, {"best_restart", r.best_restart},
                    {"restart_values", r.restart_values}, {"local_bound", local},
                    {"strategy", to_json(r.strategy)},
                    {"table", to_json(correlation_from_strategy(r.strategy))}};
        return o;
      };
    });
  }

  auto* self = app.add_subcommand("selftest", "Run the bundled invariant corpus");
  add_common(self, common);
  self->callback([&] {
    command = "selftest";
    action = [&] {
      Outcome o;
      const SelftestOutcome s = run_selftest(common.seed, common.threads > 0 ? common.threads : default_threads());
      o.result = s.result;
      o.timings["checks"] = s.timings;
      o.code = s.passed ? 0 : 1;
      return o;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    ToleranceScope scope(common.tols);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = action();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.timings["wall_seconds"] = wall;
    Json config = o.config;
    config["seed"] = common.seed;
    config["tolerances"] = tolerance_json(tolerances());
    const Json report = {{"toolkit", kToolkitName}, {"version", kToolkitVersion},
                         {"command", command},      {"argv", args},
                         {"config", config},        {"result", o.result},
                         {"timings", o.timings}};
    if (common.out.empty()) {
      out << report.dump(2) << "\n";
    } else {
      write_json_file(common.out, report);
    }
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << "error [ParseError]: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace matorder
