#include "oddcycle/cli.hpp"

#include <cmath>
#include <iostream>
#include <numeric>
#include <thread>

#include "CLI11.hpp"
#include "oddcycle/constructions.hpp"
#include "oddcycle/error.hpp"
#include "oddcycle/optimize.hpp"
#include "oddcycle/pipeline.hpp"
#include "oddcycle/planar.hpp"
#include "oddcycle/stages.hpp"

namespace oddcycle {

namespace {

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

CountOptions count_options(const RunConfig& c) {
  CountOptions o;
  o.budget = c.budget ? *c.budget : budget_from_environment();
  o.threads = c.threads == 0 ? 1 : c.threads;
  return o;
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

GraphFile load_graph(const RunConfig& c) {
  if (c.graph.empty()) throw InvalidArgument("--graph is required");
  return read_graph_file(c.graph);
}

Embedding require_embedding(const GraphFile& file) {
  if (!file.embedding) {
    throw InvalidArgument("graph file has no 'rotation'; an embedding is required");
  }
  return *file.embedding;
}

VertexSet resolve_B(const RunConfig& c, const GraphFile& file) {
  if (!c.B.empty()) return VertexSet(c.B.begin(), c.B.end());
  if (file.B) return *file.B;
  throw InvalidArgument("no B given: pass --B or include \"B\" in the graph file");
}

std::optional<VerifyMode> parse_mode(const std::string& mode) {
  if (mode == "test") return VerifyMode::Test;
  if (mode == "fast") return VerifyMode::Fast;
  if (mode == "auto") return std::nullopt;
  throw InvalidArgument("--mode must be test, fast or auto");
}

int cmd_count(const RunConfig& c, std::ostream& out) {
  const GraphFile file = load_graph(c);
  const CopyCount result =
      count_copies(file.graph, Pattern::parse(c.pattern), count_options(c));
  out << result.count << '\n';
  return kExitOk;
}

int cmd_construct(const RunConfig& c, std::ostream& out) {
  if (c.variant != "a" && c.variant != "b") {
    throw InvalidArgument("--variant must be a or b");
  }
  BlowupSpec spec;
  spec.m = c.m;
  spec.t = c.t;
  spec.with_skeleton_edges = c.variant == "b";
  spec.shape = parse_tumor_shape(c.tumor_shape);
  const Blowup blowup = build_blowup(spec);
  emit(graph_to_json(blowup.graph, &blowup.embedding, &blowup.B), c.out, out);
  return kExitOk;
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
  const EmbeddedGraph eg = generate_planar(c.n, c.seed, c.p);
  emit(graph_to_json(eg.graph, &eg.embedding), c.out, out);
  return kExitOk;
}

int cmd_tumor_clean(const RunConfig& c, std::ostream& out) {
  const GraphFile file = load_graph(c);
  const TumorGraph tg =
      make_tumor(file.graph, require_embedding(file), resolve_B(c, file));
  const std::optional<VerifyMode> mode = parse_mode(c.mode);
  const CountOptions count = count_options(c);
  auto options = [&](const TumorGraph& g) {
    StageOptions o = default_stage_options(g, c.m, count);
    if (mode) o.mode = *mode;
    return o;
  };
  StageResult r1 = stage1(tg, options(tg));
  StageResult r2 = stage2(r1.graph, options(r1.graph));
  StageResult r3 = stage3(r2.graph, options(r2.graph));
  const TumorGraph& result = r3.graph;
  const Json graph =
      graph_to_json(result.graph(), &result.embedding(), &result.B());
  Json audit{{"m", c.m},
             {"stages",
              {to_json(r1.audit), to_json(r2.audit), to_json(r3.audit)}},
             {"benign", is_benign(result)},
             {"graph", graph}};
  emit(audit, c.audit_out, out);
  if (!c.out.empty()) write_json_file(c.out, graph);
  return kExitOk;
}

int cmd_reduce(const RunConfig& c, std::ostream& out) {
  const GraphFile file = load_graph(c);
  std::optional<VertexSet> B;
  if (c.partition == "given" || (c.partition == "auto" && (file.B || !c.B.empty()))) {
    B = resolve_B(c, file);
  } else if (c.partition != "degree" && c.partition != "auto") {
    throw InvalidArgument("--partition must be auto, degree or given");
  }
  PipelineOptions options;
  options.mode = parse_mode(c.mode);
  options.count = count_options(c);
  const BoundReport report =
      reduce(file.graph, require_embedding(file), c.m, B, options);
  emit(to_json(report), c.report, out);
  return report.all_ok() ? kExitOk : kExitInvariant;
}

int cmd_optimize(const RunConfig& c, std::ostream& out) {
  OptimizeOptions o;
  o.m = c.m;
  o.clique_size = c.clique;
  o.starts = c.starts;
  o.max_iters = c.max_iters;
  o.tol = c.tolerances.kkt;
  o.seed = c.seed;
  o.threads = c.threads == 0 ? 1 : c.threads;
  const OptimizationReport report = optimize(o);
  Json j = to_json(report);
  j["seed"] = c.seed;
  emit(j, c.out, out);
  if (!c.out.empty()) {
    out << "value " << Json(report.value).dump() << " converged "
        << (report.converged ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (c.measure.empty()) throw InvalidArgument("--measure is required");
  const EdgeMeasure mu =
      measure_from_json(read_json_file(c.measure), c.tolerances.norm);
  const CountOptions count = count_options(c);
  const int m = c.m;
  const double value = objective(mu, m, count);
  const KktReport kkt = kkt_residual(mu, m);
  bool ok = true;
  Json checks = Json::array();
  auto add = [&](const InequalityCheck& check) {
    ok = ok && check.holds;
    checks.push_back(to_json(check));
  };

  const double sum = std::accumulate(mu.masses().begin(), mu.masses().end(), 0.0);
  add({"normalization", std::abs(sum - 1.0), c.tolerances.norm,
       std::abs(sum - 1.0) <= c.tolerances.norm});
  add({"kkt support residual", kkt.max_support_residual, c.tolerances.kkt,
       kkt.max_support_residual < c.tolerances.kkt});
  add({"kkt vertex residual", kkt.max_vertex_residual, c.tolerances.kkt,
       kkt.max_vertex_residual < c.tolerances.kkt});
  add({"kkt off-support gradient", kkt.max_off_support_excess,
       c.tolerances.kkt, kkt.max_off_support_excess <= c.tolerances.kkt});
  const KnownBound known = known_bound(m);
  add({"objective <= known bound", value, known.value + 1e-9,
       value <= known.value + 1e-9});

  Json rooted = Json::object();
  for (int x = 0; x < mu.clique_size(); ++x) {
    const RootedPathCheck r = check_rooted_path_bound(mu, x, m);
    rooted[std::to_string(x)] = to_json(r);
    add({"rooted path bound at " + std::to_string(x), r.lhs, r.rhs, r.holds});
  }
  Json vertex = Json::array();
  if (m >= 3) {
    const double O = c.O ? *c.O : value;
    for (const VertexBoundVerdict& v : check_vertex_bound(mu, m, O)) {
      vertex.push_back(to_json(v));
      add({"vertex bound at " + std::to_string(v.x), 1.0, v.value + 1e-12,
           v.holds});
    }
    const double cycle = beta(mu, Pattern::cycle(m), count);
    const double cited = 1.0 / std::pow(static_cast<double>(m), m);
    add({"beta(C_m) <= 1/m^m", cycle, cited + 1e-12, cycle <= cited + 1e-12});
  }

  Json report{{"m", m},
              {"measure", measure_to_json(mu)},
              {"value", value},
              {"known_bound", {{"value", known.value}, {"tight", known.tight}}},
              {"kkt", to_json(kkt, mu)},
              {"rooted_path", rooted},
              {"vertex_bound", vertex},
              {"checks", checks},
              {"all_ok", ok}};
  emit(report, c.out, out);
  return ok ? kExitOk : kExitInvariant;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--threads", c.threads, "Worker threads");
  sub->add_option("--budget", c.budget,
                  "Enumeration node budget (overrides ODDCYCLE_BUDGET)");
  sub->add_option("--kkt-tol", c.tolerances.kkt, "KKT residual tolerance");
  sub->add_option("--value-tol", c.tolerances.value, "Value match tolerance");
  sub->add_option("--norm-tol", c.tolerances.norm, "Normalization tolerance");
}

}  // namespace

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["graph"] = c.graph;
  j["out"] = c.out;
  j["report"] = c.report;
  j["audit_out"] = c.audit_out;
  j["measure"] = c.measure;
  j["pattern"] = c.pattern;
  j["m"] = c.m;
  j["t"] = c.t;
  j["variant"] = c.variant;
  j["tumor_shape"] = c.tumor_shape;
  j["B"] = c.B;
  j["mode"] = c.mode;
  j["partition"] = c.partition;
  j["clique"] = c.clique;
  j["starts"] = c.starts;
  j["max_iters"] = c.max_iters;
  j["seed"] = c.seed;
  j["O"] = c.O ? Json(*c.O) : Json(nullptr);
  j["n"] = c.n;
  j["p"] = c.p;
  j["threads"] = c.threads;
  j["budget"] = c.budget ? Json(*c.budget) : Json(nullptr);
  j["tolerances"] = {{"kkt_tol", c.tolerances.kkt},
                     {"value_tol", c.tolerances.value},
                     {"norm_tol", c.tolerances.norm}};
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  RunConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const Json& v = it.value();
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "graph") c.graph = v.get<std::string>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "report") c.report = v.get<std::string>();
      else if (key == "audit_out") c.audit_out = v.get<std::string>();
      else if (key == "measure") c.measure = v.get<std::string>();
      else if (key == "pattern") c.pattern = v.get<std::string>();
      else if (key == "m") c.m = v.get<int>();
      else if (key == "t") c.t = v.get<int>();
      else if (key == "variant") c.variant = v.get<std::string>();
      else if (key == "tumor_shape") c.tumor_shape = v.get<std::string>();
      else if (key == "B") c.B = v.get<std::vector<VertexId>>();
      else if (key == "mode") c.mode = v.get<std::string>();
      else if (key == "partition") c.partition = v.get<std::string>();
      else if (key == "clique") c.clique = v.get<int>();
      else if (key == "starts") c.starts = v.get<int>();
      else if (key == "max_iters") c.max_iters = v.get<int>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "O") c.O = v.is_null() ? std::nullopt : std::optional(v.get<double>());
      else if (key == "n") c.n = v.get<std::size_t>();
      else if (key == "p") c.p = v.get<double>();
      else if (key == "threads") c.threads = v.get<unsigned>();
      else if (key == "budget")
        c.budget = v.is_null() ? std::nullopt : std::optional(v.get<std::uint64_t>());
      else if (key == "tolerances") {
        for (auto t = v.begin(); t != v.end(); ++t) {
          if (t.key() == "kkt_tol") c.tolerances.kkt = t.value().get<double>();
          else if (t.key() == "value_tol") c.tolerances.value = t.value().get<double>();
          else if (t.key() == "norm_tol") c.tolerances.norm = t.value().get<double>();
          else throw InvalidArgument("unknown tolerance '" + t.key() + "'");
        }
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  return c;
}

ParseOutcome parse_command_line(int argc, const char* const* argv,
                                std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.threads = default_threads();
  std::string config_path;
  bool print_config = false;

  CLI::App app{"Odd cycles in planar graphs: counting, cleaning, reduction and "
               "measure optimization"};
  app.require_subcommand(1);
  app.add_flag("--print-config", print_config,
               "Print the parsed configuration as JSON and exit");

  auto* count = app.add_subcommand("count", "Count copies of P_k or C_k");
  count->add_option("--graph", c.graph, "Graph JSON")->required();
  count->add_option("--pattern", c.pattern, "P<k> or C<k>")->required();
  add_common(count, c);

  auto* construct = app.add_subcommand("construct", "Build a blowup of C_m");
  construct->add_option("--m", c.m, "Skeleton cycle length")->required();
  construct->add_option("--t", c.t, "Vertices per tumor")->required();
  construct->add_option("--variant", c.variant, "a (no skeleton edges) or b");
  construct->add_option("--tumor-shape", c.tumor_shape, "path or cycle");
  construct->add_option("--out", c.out, "Output graph JSON");
  add_common(construct, c);

  auto* generate = app.add_subcommand("generate", "Random planar graph");
  generate->add_option("--n", c.n, "Vertex count")->required();
  generate->add_option("--seed", c.seed, "Seed");
  generate->add_option("--p", c.p, "Edge deletion probability");
  generate->add_option("--out", c.out, "Output graph JSON");
  add_common(generate, c);

  auto* clean = app.add_subcommand("tumor-clean", "Run Stages I-III");
  clean->add_option("--graph", c.graph, "Graph JSON")->required();
  clean->add_option("--B", c.B, "Comma-separated B vertices")->delimiter(',');
  clean->add_option("--m", c.m, "Cycle length parameter (C_{2m+1})")->required();
  clean->add_option("--mode", c.mode, "test, fast or auto");
  clean->add_option("--audit-out", c.audit_out, "Audit JSON");
  clean->add_option("--out", c.out, "Cleaned graph JSON");
  add_common(clean, c);

  auto* reduce_cmd = app.add_subcommand("reduce", "Full reduction to a measure");
  reduce_cmd->add_option("--graph", c.graph, "Graph JSON")->required();
  reduce_cmd->add_option("--m", c.m, "Cycle length parameter (C_{2m+1})")->required();
  reduce_cmd->add_option("--B", c.B, "Comma-separated B vertices")->delimiter(',');
  reduce_cmd->add_option("--partition", c.partition, "auto, degree or given");
  reduce_cmd->add_option("--mode", c.mode, "test, fast or auto");
  reduce_cmd->add_option("--report", c.report, "Report JSON");
  add_common(reduce_cmd, c);

  auto* opt = app.add_subcommand("optimize", "Maximize the objective");
  opt->add_option("--m", c.m, "m >= 2")->required();
  opt->add_option("--clique", c.clique, "Clique size (default m + 3)");
  opt->add_option("--starts", c.starts, "Number of starts");
  opt->add_option("--max-iters", c.max_iters, "Iterations per start");
  opt->add_option("--seed", c.seed, "Seed");
  opt->add_option("--out", c.out, "Report JSON");
  add_common(opt, c);

  auto* verify = app.add_subcommand("verify", "Check a measure");
  verify->add_option("--measure", c.measure, "Measure JSON")->required();
  verify->add_option("--m", c.m, "m >= 2")->required();
  verify->add_option("--O", c.O, "Optimum value for the vertex bound");
  verify->add_option("--out", c.out, "Verification JSON");
  add_common(verify, c);

  auto* run_cmd = app.add_subcommand("run", "Execute a saved configuration");
  run_cmd->add_option("--config", config_path, "Config JSON")->required();

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    outcome.exit_code = code == 0 ? kExitOk : kExitBadInput;
    return outcome;
  }
  if (run_cmd->parsed()) {
    try {
      c = config_from_json(read_json_file(config_path));
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      outcome.exit_code = kExitBadInput;
      return outcome;
    }
  } else {
    c.command = app.get_subcommands().front()->get_name();
  }
  if (print_config) {
    out << config_to_json(c).dump(2) << '\n';
    outcome.exit_code = kExitOk;
    return outcome;
  }
  outcome.config = std::move(c);
  return outcome;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::string& cmd = config.command;
    if (cmd == "count") return cmd_count(config, out);
    if (cmd == "construct") return cmd_construct(config, out);
    if (cmd == "generate") return cmd_generate(config, out);
    if (cmd == "tumor-clean") return cmd_tumor_clean(config, out);
    if (cmd == "reduce") return cmd_reduce(config, out);
    if (cmd == "optimize") return cmd_optimize(config, out);
    if (cmd == "verify") return cmd_verify(config, out);
    throw InvalidArgument("unknown command '" + cmd + "'");
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  ParseOutcome parsed = parse_command_line(argc, argv, out, err);
  if (parsed.exit_code) return *parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace oddcycle
