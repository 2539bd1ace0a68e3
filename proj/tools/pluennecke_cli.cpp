#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pluennecke/pluennecke.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pluennecke;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct ReportSink {
  std::string format = "text";
  std::string output;  // empty: stdout
  bool timing = false;
};

void flatten_text(const ordered_json& value, const std::string& prefix,
                  std::ostream& out) {
  if (value.is_object()) {
    for (const auto& [key, sub] : value.items())
      flatten_text(sub, prefix.empty() ? key : prefix + "." + key, out);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i)
      flatten_text(value[i], prefix + "[" + std::to_string(i) + "]", out);
    if (value.empty()) out << prefix << " = []\n";
  } else if (value.is_string()) {
    out << prefix << " = " << value.get<std::string>() << "\n";
  } else {
    out << prefix << " = " << value.dump() << "\n";
  }
}

void emit_report(const ordered_json& report, const ReportSink& sink) {
  std::ostringstream body;
  if (sink.format == "json")
    body << report.dump(2) << "\n";
  else
    flatten_text(report, "", body);
  if (sink.output.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(sink.output);
    if (!out)
      throw ValidationError("cannot write report file '" + sink.output + "'");
    out << body.str();
  }
}

ordered_json vertex_set_json(const VertexSet& s) {
  ordered_json j;
  j["layer"] = s.layer;
  j["members"] = s.members;
  return j;
}

ordered_json table_json(const std::vector<MagnificationReport>& table) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 1; i < table.size(); ++i)
    j[std::to_string(i)] = table[i].value.str();
  return j;
}

AbelianGroupSpec parse_group(const std::string& text) {
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    try {
      if (kind == "cyclic") return AbelianGroupSpec::cyclic(std::stoll(arg));
      if (kind == "free") return AbelianGroupSpec::free_group(std::stoi(arg));
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("group must be 'cyclic:<n>' or 'free:<rank>', got '" +
                        text + "'");
}

std::vector<long long> parse_int_list(const std::string& text, char sep) {
  std::vector<long long> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, sep)) {
    if (token.empty()) continue;
    try {
      values.push_back(std::stoll(token));
    } catch (const std::exception&) {
      throw ValidationError("cannot parse integer '" + token + "'");
    }
  }
  return values;
}

GroupSet parse_group_set(const AbelianGroupSpec& group,
                         const std::string& text) {
  std::vector<GroupElement> elements;
  if (group.is_cyclic()) {
    for (long long x : parse_int_list(text, ','))
      elements.push_back(GroupElement{x});
  } else {
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ';')) {
      if (token.empty()) continue;
      auto coords = parse_int_list(token, ',');
      if (static_cast<int>(coords.size()) != group.rank())
        throw ValidationError("element '" + token + "' needs " +
                              std::to_string(group.rank()) + " coordinates");
      elements.push_back(std::move(coords));
    }
  }
  return make_group_set(group, std::move(elements));
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  for (long long x : parse_int_list(text, ','))
    out.push_back(static_cast<int>(x));
  return out;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void attach_timing(ordered_json& report, const ReportSink& sink,
                   const Timer& timer) {
  if (sink.timing) report["timing_ms"] = timer.elapsed_ms();
}

// ---------------------------------------------------------------- build ---

struct BuildArgs {
  std::string graph_kind;
  std::string group = "cyclic:8";
  std::string a, b;
  int n = 1, k = 2, p = 1, q = 1, level = 2;
  std::string lhs, rhs, input, g_file, r_file;
  int x_layer = 0, y_layer = 1;
  std::string x, y;
  std::string output;
  std::size_t size_budget = 1'000'000;
  int subset_cap = 24;
  int threads = 1;
};

int run_build(const BuildArgs& args, const ReportSink& sink) {
  Timer timer;
  LayeredGraph graph = [&]() -> LayeredGraph {
    if (args.graph_kind == "addition") {
      const auto group = parse_group(args.group);
      return addition_graph(parse_group_set(group, args.a),
                            parse_group_set(group, args.b), args.level);
    }
    if (args.graph_kind == "independent")
      return independent_addition_graph(args.n, args.level);
    if (args.graph_kind == "rk")
      return build_rk(args.k, args.level, args.size_budget);
    if (args.graph_kind == "rc")
      return build_rc(args.p, args.q, args.level, args.size_budget);
    if (args.graph_kind == "product")
      return cartesian_product(load_graph_file(args.lhs).graph,
                               load_graph_file(args.rhs).graph);
    if (args.graph_kind == "inverse")
      return inverse_graph(load_graph_file(args.input).graph);
    if (args.graph_kind == "channel")
      return channel(load_graph_file(args.input).graph,
                     make_vertex_set(args.x_layer, parse_index_list(args.x)),
                     make_vertex_set(args.y_layer, parse_index_list(args.y)));
    if (args.graph_kind == "join")
      return join_construction(
          load_graph_file(args.g_file).graph, load_graph_file(args.r_file).graph,
          MagnificationOptions{args.subset_cap, args.threads});
    throw ValidationError("unknown build subcommand '" + args.graph_kind + "'");
  }();

  std::ostringstream provenance;
  provenance << "build " << args.graph_kind;
  if (args.graph_kind == "addition")
    provenance << " --group " << args.group << " --a " << args.a << " --b "
               << args.b << " --level " << args.level;
  if (args.graph_kind == "independent")
    provenance << " --n " << args.n << " --level " << args.level;
  if (args.graph_kind == "rk")
    provenance << " --k " << args.k << " --level " << args.level;
  if (args.graph_kind == "rc")
    provenance << " --p " << args.p << " --q " << args.q << " --level "
               << args.level;
  save_graph_file(args.output, graph, provenance.str());

  ordered_json report;
  report["command"] = "build " + args.graph_kind;
  report["inputs"] = ordered_json::object();
  report["inputs"]["output"] = args.output;
  report["results"]["level"] = graph.level();
  report["results"]["layer_sizes"] = graph.layer_sizes();
  report["results"]["edge_count"] = graph.edge_count();
  const auto regular = verify_regular_report(graph);
  if (regular.ratio) {
    report["results"]["regular_ratio"] = regular.ratio->str();
    report["results"]["degrees"] = {regular.in_degree, regular.out_degree};
  }
  attach_timing(report, sink, timer);
  emit_report(report, sink);
  return kExitTrue;
}

// --------------------------------------------------------------- verify ---

int run_verify(const std::string& file, const std::string& which,
               const ReportSink& sink) {
  Timer timer;
  const LayeredGraph graph = load_graph_file(file).graph;
  ordered_json report;
  report["command"] = "verify " + which;
  report["inputs"]["graph"] = file;
  int exit_code = kExitTrue;

  if (which == "plunnecke") {
    const auto result = verify_plunnecke_conditions(graph);
    report["results"]["upward_ok"] = result.upward_ok;
    report["results"]["downward_ok"] = result.downward_ok;
    report["results"]["failures"] = ordered_json::array();
    for (const auto& f : result.failures) {
      ordered_json failure;
      failure["edge"] = {f.gap, f.from, f.to};
      failure["direction"] =
          f.direction == ConditionFailure::Direction::upward ? "upward"
                                                             : "downward";
      failure["violator"] = vertex_set_json(f.violator);
      report["results"]["failures"].push_back(std::move(failure));
    }
    exit_code = result.ok() ? kExitTrue : kExitFalse;
  } else if (which == "regular") {
    const auto result = verify_regular_report(graph);
    if (result.ratio) {
      report["results"]["regular"] = true;
      report["results"]["ratio"] = result.ratio->str();
      report["results"]["degrees"] = {result.in_degree, result.out_degree};
    } else {
      report["results"]["regular"] = false;
      if (result.counterexample)
        report["results"]["counterexample"] = {result.counterexample->layer,
                                               result.counterexample->index};
    }
    exit_code = result.ratio ? kExitTrue : kExitFalse;
  } else if (which == "monotone") {
    const auto result = verify_degree_monotonicity(graph);
    report["results"]["monotone"] = result.ok;
    if (!result.ok)
      report["results"]["counterexample_edge"] = {result.gap, result.from,
                                                  result.to};
    exit_code = result.ok ? kExitTrue : kExitFalse;
  } else {
    throw ValidationError("unknown verifier '" + which + "'");
  }
  attach_timing(report, sink, timer);
  emit_report(report, sink);
  return exit_code;
}

// --------------------------------------------------------------- compute ---

struct ComputeArgs {
  std::string file;
  std::string which;
  int steps = 1;
  std::string c = "1";
  int subset_cap = 24;
  int threads = 1;
};

int run_compute(const ComputeArgs& args, const ReportSink& sink) {
  Timer timer;
  const LayeredGraph graph = load_graph_file(args.file).graph;
  const MagnificationOptions opts{args.subset_cap, args.threads};
  ordered_json report;
  report["command"] = "compute " + args.which;
  report["inputs"]["graph"] = args.file;
  int exit_code = kExitTrue;

  if (args.which == "magnification") {
    report["inputs"]["i"] = args.steps;
    const auto result = magnification_ratio(graph, args.steps, opts);
    report["results"]["value"] = result.value.str();
    report["results"]["witness"] = result.witness.members;
    report["results"]["witness_minimal"] = result.witness_minimal;
  } else if (args.which == "inequality") {
    const auto result = plunnecke_inequality_check(graph, opts);
    report["results"]["holds"] = result.holds;
    report["results"]["table"] = table_json(result.table);
    exit_code = result.holds ? kExitTrue : kExitFalse;
  } else if (args.which == "sepset") {
    const ExactRatio base = ExactRatio::parse(args.c);
    report["inputs"]["c"] = base.str();
    const auto result = min_weight_separating_set(graph, base);
    report["results"]["weight"] = result.weight.str();
    report["results"]["members"] = ordered_json::array();
    for (const auto& s : result.members)
      report["results"]["members"].push_back(vertex_set_json(s));
  } else if (args.which == "pulldown") {
    const ExactRatio base = ExactRatio::parse(args.c);
    report["inputs"]["c"] = base.str();
    const auto minimum = min_weight_separating_set(graph, base);
    const auto result = pull_down(graph, minimum);
    report["results"]["weight"] = result.weight.str();
    report["results"]["input_members"] = ordered_json::array();
    for (const auto& s : minimum.members)
      report["results"]["input_members"].push_back(vertex_set_json(s));
    report["results"]["members"] = ordered_json::array();
    for (const auto& s : result.members)
      report["results"]["members"].push_back(vertex_set_json(s));
  } else if (args.which == "disjoint-paths") {
    report["results"]["count"] = count_vertex_disjoint_max_paths(graph);
  } else if (args.which == "growth") {
    const auto result = growth_bound_check(graph);
    report["results"]["holds"] = result.holds;
    report["results"]["equality_throughout"] = result.equality_throughout;
    ordered_json bounds = ordered_json::array();
    for (const auto& b : result.bounds) bounds.push_back(b.str());
    report["results"]["bounds"] = std::move(bounds);
    exit_code = result.holds ? kExitTrue : kExitFalse;
  } else {
    throw ValidationError("unknown computation '" + args.which + "'");
  }
  attach_timing(report, sink, timer);
  emit_report(report, sink);
  return exit_code;
}

// --------------------------------------------------------------- certify ---

int run_certify(const std::string& file, int subset_cap, int threads,
                const ReportSink& sink) {
  Timer timer;
  const LayeredGraph graph = load_graph_file(file).graph;
  const MagnificationOptions opts{subset_cap, threads};
  ordered_json report;
  report["command"] = "certify";
  report["inputs"]["graph"] = file;

  const auto sharp = check_sharpness_detail(graph, opts);
  int exit_code;
  if (!sharp.ratio) {
    report["results"]["status"] = "hypothesis-not-met";
    report["results"]["reason"] = sharp.failure_reason;
    report["results"]["table"] = table_json(sharp.table);
    exit_code = kExitFalse;
  } else {
    const auto cert = inverse_theorem_certificate(graph, opts);
    report["results"]["status"] = "ok";
    report["results"]["c"] = cert.c.str();
    report["results"]["z"] = cert.z.members;
    report["results"]["channel_layers"] = cert.channel_layers;
    report["results"]["layers_geometric"] = cert.layers_geometric;
    report["results"]["channel_regular_ratio"] =
        cert.regular_ratio ? cert.regular_ratio->str() : "absent";
    report["results"]["verdict"] = cert.verdict;
    exit_code = cert.verdict ? kExitTrue : kExitFalse;
  }
  attach_timing(report, sink, timer);
  emit_report(report, sink);
  return exit_code;
}

// ---------------------------------------------------------------- export ---

int run_export(const std::string& file, const std::string& format,
               const std::string& output) {
  const LayeredGraph graph = load_graph_file(file).graph;
  std::string body;
  if (format == "dot")
    body = export_dot(graph);
  else if (format == "adjacency-text")
    body = export_adjacency_text(graph);
  else
    throw ValidationError("unknown export format '" + format + "'");
  if (output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(output);
    if (!out) throw ValidationError("cannot write '" + output + "'");
    out << body;
  }
  return kExitTrue;
}

int run(int argc, char** argv) {
  CLI::App app{"construct, verify and measure layered commutative graphs"};
  app.require_subcommand(1);

  ReportSink sink;
  BuildArgs build_args;
  ComputeArgs compute_args;
  std::string verify_file, verify_which;
  std::string certify_file;
  std::string export_file, export_format = "dot", export_output;
  int certify_cap = 24, certify_threads = 1;

  auto add_report_flags = [&](CLI::App* cmd) {
    cmd->add_option("--format", sink.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output", sink.output, "report path (default: stdout)");
    cmd->add_flag("--timing", sink.timing, "include timing_ms in the report");
  };

  CLI::App* build = app.add_subcommand("build", "construct a graph document");
  build->require_subcommand(1);
  for (const char* kind : {"addition", "independent", "rk", "rc", "product",
                           "inverse", "channel", "join"}) {
    CLI::App* sub = build->add_subcommand(kind);
    sub->callback([&build_args, kind] { build_args.graph_kind = kind; });
    sub->add_option("--output", build_args.output, "graph document path")
        ->required();
    sub->add_option("--format", sink.format)
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timing", sink.timing);
    if (std::string(kind) == "addition") {
      sub->add_option("--group", build_args.group,
                      "'cyclic:<n>' or 'free:<rank>'");
      sub->add_option("--a", build_args.a, "elements of A")->required();
      sub->add_option("--b", build_args.b, "elements of B")->required();
      sub->add_option("--level", build_args.level);
    } else if (std::string(kind) == "independent") {
      sub->add_option("--n", build_args.n, "generator count")->required();
      sub->add_option("--level", build_args.level);
    } else if (std::string(kind) == "rk") {
      sub->add_option("--k", build_args.k)->required();
      sub->add_option("--level", build_args.level);
      sub->add_option("--size-budget", build_args.size_budget);
    } else if (std::string(kind) == "rc") {
      sub->add_option("--p", build_args.p)->required();
      sub->add_option("--q", build_args.q)->required();
      sub->add_option("--level", build_args.level);
      sub->add_option("--size-budget", build_args.size_budget);
    } else if (std::string(kind) == "product") {
      sub->add_option("--lhs", build_args.lhs)->required();
      sub->add_option("--rhs", build_args.rhs)->required();
    } else if (std::string(kind) == "inverse") {
      sub->add_option("--input", build_args.input)->required();
    } else if (std::string(kind) == "channel") {
      sub->add_option("--input", build_args.input)->required();
      sub->add_option("--x-layer", build_args.x_layer)->required();
      sub->add_option("--x", build_args.x, "x member indices")->required();
      sub->add_option("--y-layer", build_args.y_layer)->required();
      sub->add_option("--y", build_args.y, "y member indices")->required();
    } else if (std::string(kind) == "join") {
      sub->add_option("--g", build_args.g_file)->required();
      sub->add_option("--r", build_args.r_file)->required();
      sub->add_option("--subset-cap", build_args.subset_cap);
      sub->add_option("--threads", build_args.threads)
          ->check(CLI::PositiveNumber);
    }
  }

  CLI::App* verify = app.add_subcommand("verify", "run a verifier");
  verify->add_option("graph", verify_file, "graph document")->required();
  verify->add_option("--which", verify_which)
      ->required()
      ->check(CLI::IsMember({"plunnecke", "regular", "monotone"}));
  add_report_flags(verify);

  CLI::App* compute = app.add_subcommand("compute", "run a computation");
  compute->add_option("graph", compute_args.file, "graph document")->required();
  compute->add_option("--which", compute_args.which)
      ->required()
      ->check(CLI::IsMember({"magnification", "inequality", "sepset",
                             "pulldown", "disjoint-paths", "growth"}));
  compute->add_option("--i", compute_args.steps, "step count");
  compute->add_option("--c", compute_args.c, "weight base, e.g. 2 or 3/2");
  compute->add_option("--subset-cap", compute_args.subset_cap);
  compute->add_option("--threads", compute_args.threads)
      ->check(CLI::PositiveNumber);
  add_report_flags(compute);

  CLI::App* certify =
      app.add_subcommand("certify", "inverse-theorem certificate");
  certify->add_option("graph", certify_file, "graph document")->required();
  certify->add_option("--subset-cap", certify_cap);
  certify->add_option("--threads", certify_threads)->check(CLI::PositiveNumber);
  add_report_flags(certify);

  CLI::App* exporter = app.add_subcommand("export", "export a graph");
  exporter->add_option("graph", export_file, "graph document")->required();
  exporter->add_option("--format", export_format)
      ->check(CLI::IsMember({"dot", "adjacency-text"}));
  exporter->add_option("--output", export_output, "path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitTrue : kExitUsage;
  }

  if (build->parsed()) return run_build(build_args, sink);
  if (verify->parsed()) return run_verify(verify_file, verify_which, sink);
  if (compute->parsed()) return run_compute(compute_args, sink);
  if (certify->parsed())
    return run_certify(certify_file, certify_cap, certify_threads, sink);
  if (exporter->parsed())
    return run_export(export_file, export_format, export_output);
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pluennecke::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const pluennecke::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
