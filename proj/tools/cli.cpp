#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "flowpoly/counting.hpp"
#include "flowpoly/errors.hpp"
#include "flowpoly/flowspace.hpp"
#include "flowpoly/graph_io.hpp"
#include "flowpoly/orientation.hpp"
#include "flowpoly/report_json.hpp"
#include "flowpoly/verify.hpp"

namespace flowpoly::cli {

namespace {

using nlohmann::json;

struct Config {
  std::string format = "json";
  bool timing = false;
  Limits limits;
  std::optional<int> max_edges;
};

struct Outcome {
  json report;
  std::string text;
  int code = kOk;
};

std::string poly_line(const std::string& name, const RationalPoly& p) {
  return name + " = " + p.to_string() + "\n";
}

Orientation parse_orientation(const std::string& bits, const MultiGraph& g) {
  const Orientation o = Orientation::parse(bits);
  if (o.edge_count() != g.edge_count()) {
    throw DomainError("orientation '" + bits + "' has " + std::to_string(o.edge_count()) +
                      " bits but the graph has " + std::to_string(g.edge_count()) +
                      " edges");
  }
  return o;
}

Outcome cmd_info(const MultiGraph& g) {
  const GraphSummary s = summarize(g);
  Outcome o;
  o.report = {{"command", "info"}, {"graph", to_json(s)}, {"labels", g.labels()}};
  std::ostringstream t;
  t << "vertices    " << s.vertices << "\n"
    << "edges       " << s.edges << "\n"
    << "components  " << s.components << "\n"
    << "rank        " << s.rank << "\n"
    << "cycle rank  " << s.cycle_rank << "\n"
    << "bridgeless  " << (s.bridgeless ? "yes" : "no") << "\n";
  if (!s.bridges.empty()) {
    t << "bridges    ";
    for (int e : s.bridges) t << " " << e;
    t << "\n";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_tutte(const MultiGraph& g, const Config& cfg) {
  const RationalBiPoly t = tutte(g, cfg.limits);
  Outcome o;
  o.report = {{"command", "tutte"}, {"tutte", to_json(t)}, {"text", t.to_string()}};
  o.text = "T(x, y) = " + t.to_string() + "\n";
  return o;
}

template <typename Method>
Outcome run_methods(const std::string& command, const std::vector<Method>& methods,
                    const std::function<MethodReport(Method)>& compute, const Config& cfg) {
  std::vector<MethodReport> reports;
  for (Method m : methods) reports.push_back(compute(m));
  bool agree = true;
  for (const auto& r : reports) agree = agree && r.poly == reports.front().poly;
  Outcome o;
  json list = json::array();
  for (const auto& r : reports) list.push_back(to_json(r, cfg.timing));
  o.report = {{"command", command},
              {"poly", to_json(reports.front().poly)},
              {"agree", agree},
              {"reports", std::move(list)}};
  std::ostringstream t;
  for (const auto& r : reports) {
    t << r.method << ": " << r.poly.to_string();
    if (cfg.timing) t << "  (" << r.wall_ms << " ms)";
    t << "\n";
  }
  if (reports.size() > 1) t << (agree ? "methods agree\n" : "METHODS DISAGREE\n");
  o.text = t.str();
  o.code = agree ? kOk : kIdentityFailure;
  return o;
}

Outcome cmd_modular(const MultiGraph& g, const std::string& method, const Config& cfg) {
  std::vector<ModularMethod> methods;
  if (method == "all") {
    methods = {ModularMethod::kTutte, ModularMethod::kSubset, ModularMethod::kInterp,
               ModularMethod::kCharpoly};
  } else {
    methods = {parse_modular_method(method)};
  }
  return run_methods<ModularMethod>(
      "modular", methods,
      [&](ModularMethod m) { return modular_flow_poly(g, m, cfg.limits); }, cfg);
}

Outcome cmd_integral(const MultiGraph& g, const std::string& method, bool with_dual,
                     const Config& cfg) {
  std::vector<IntegralMethod> methods;
  if (method == "all") {
    methods = {IntegralMethod::kSumOrientations, IntegralMethod::kInterp};
  } else {
    methods = {parse_integral_method(method)};
  }
  Outcome o = run_methods<IntegralMethod>(
      "integral", methods,
      [&](IntegralMethod m) { return integral_flow_poly(g, m, cfg.limits); }, cfg);
  if (with_dual) {
    const DualPolys d = dual_polys(g, cfg.limits);
    const RationalPoly from_reciprocity =
        modular_dual_flow_poly_from_reciprocity(g, cfg.limits);
    json classes = json::array();
    for (const ClassTerm& c : d.classes) {
      json entry = to_json(c.eulerian_class);
      entry["closed_local"] = to_json(c.closed_local);
      classes.push_back(std::move(entry));
    }
    o.report["dual"] = {{"integral_dual", to_json(d.integral_dual)},
                        {"modular_dual", to_json(d.modular_dual)},
                        {"modular_dual_from_reciprocity", to_json(from_reciprocity)},
                        {"classes", std::move(classes)}};
    o.text += poly_line("integral dual", d.integral_dual);
    o.text += poly_line("modular dual", d.modular_dual);
    o.text += poly_line("modular dual by reciprocity", from_reciprocity);
    if (!(d.modular_dual == from_reciprocity)) {
      o.report["agree"] = false;
      o.code = kIdentityFailure;
      o.text += "MODULAR DUAL DISAGREES WITH RECIPROCITY\n";
    }
  }
  return o;
}

Outcome cmd_local(const MultiGraph& g, const std::string& bits, const Config& cfg) {
  const Orientation rho = parse_orientation(bits, g);
  const LocalPolys p = local_flow_polys(g, rho, cfg.limits);
  Outcome o;
  o.report = to_json(p);
  o.report["command"] = "local";
  o.report["orientation"] = rho.to_string();
  o.text = "orientation " + rho.to_string() +
           (p.totally_cyclic ? " (totally cyclic)\n" : " (has a directed cut)\n") +
           poly_line("open", p.open) + poly_line("closed", p.closed);
  return o;
}

Outcome cmd_orientations(const MultiGraph& g, bool only_tc, bool with_classes,
                         const Config& cfg) {
  Outcome o;
  std::ostringstream t;
  json list = json::array();
  std::uint64_t count = 0;
  for_each_orientation(g, cfg.limits, [&](const Orientation& rho) {
    const auto cut = find_directed_cut(g, rho);
    if (only_tc && cut) return;
    ++count;
    json entry = {{"orientation", rho.to_string()}, {"totally_cyclic", !cut.has_value()}};
    t << rho.to_string();
    if (cut) {
      entry["cut"] = to_json(*cut, g);
      t << "  cut";
      for (int e : cut->edges.indices()) t << " " << e;
    } else {
      t << "  totally cyclic";
    }
    t << "\n";
    list.push_back(std::move(entry));
  });
  o.report = {{"command", "orientations"}, {"count", count}, {"orientations", std::move(list)}};
  t << count << " orientations\n";
  if (with_classes) {
    const auto classes = eulerian_classes(g, only_tc, cfg.limits);
    json cl = json::array();
    json sizes = json::array();
    for (const auto& c : classes) {
      cl.push_back(to_json(c));
      sizes.push_back(c.members.size());
      t << "class " << c.representative.to_string() << " size " << c.members.size()
        << (c.totally_cyclic ? "" : " (directed cut)") << "\n";
    }
    o.report["classes"] = std::move(cl);
    o.report["class_sizes"] = std::move(sizes);
    t << classes.size() << " classes\n";
  }
  o.text = t.str();
  return o;
}

json read_flow_argument(const std::string& arg) {
  std::string text = arg;
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed flow JSON: ") + e.what(), 1,
                     static_cast<int>(e.byte));
  }
}

Outcome cmd_lift(const MultiGraph& g, const std::string& bits, const std::string& flow_arg,
                 std::optional<std::int64_t> mod) {
  const Orientation eps = parse_orientation(bits, g);
  FlowVector input = flow_from_json(read_flow_argument(flow_arg), g.edge_count());
  if (input.modulus && mod && *input.modulus != *mod) {
    throw DomainError("flow carries mod " + std::to_string(*input.modulus) +
                      " but --mod is " + std::to_string(*mod));
  }
  if (!input.modulus && !mod) throw DomainError("lift needs a modulus (--mod)");
  const std::int64_t q = mod ? *mod : *input.modulus;
  const LiftResult r = lift_modular_flow(g, eps, input.values, q);
  Outcome o;
  o.report = to_json(r);
  o.report["command"] = "lift";
  o.report["mod"] = q;
  o.report["residues"] = input.values;
  o.report["reference"] = eps.to_string();
  std::ostringstream t;
  t << "flow";
  for (std::int64_t v : r.flow.values) t << " " << v;
  t << "\norientation " << r.orientation.to_string() << "\niterations " << r.iterations << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_verify(const MultiGraph& g, int q_max, const Config& cfg) {
  const VerificationReport r = verify(g, q_max, cfg.limits);
  Outcome o;
  o.report = to_json(r);
  o.report["command"] = "verify";
  std::ostringstream t;
  for (const CheckResult& c : r.checks) {
    t << (!c.applicable ? "skip" : c.passed ? "pass" : "FAIL") << "  " << c.name << "  "
      << c.detail << "\n";
    if (c.applicable && !c.passed) t << "      witness: " << c.witness.dump() << "\n";
  }
  t << (r.passed() ? "all checks passed\n" : "some checks failed\n");
  o.text = t.str();
  o.code = r.passed() ? kOk : kIdentityFailure;
  return o;
}

int emit_error(std::ostream& out, std::ostream& err, const Config& cfg, int code,
               const std::string& kind, const std::string& message, json extra = json::object()) {
  if (cfg.format == "json") {
    json e = {{"error", message}, {"kind", kind}, {"exit_code", code}};
    e.update(extra);
    out << e.dump(2) << "\n";
  }
  err << "flowpoly: " << message << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Flow polynomials of multigraphs", "flowpoly"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", cfg.timing, "Include wall-clock times in method reports");
  app.add_option("--jobs", cfg.limits.jobs, "Worker threads for parallel reductions")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-edges", cfg.max_edges, "Edge cap for orientation and Tutte work")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-enumeration", cfg.limits.max_enumeration,
                 "Cap on co-tree assignments visited by a flow enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-subsets", cfg.limits.max_subsets, "Cap on 2^|E| for subset sums")
      ->check(CLI::PositiveNumber);

  std::string graph_path;
  std::string method;
  std::string bits;
  std::string flow_arg;
  std::optional<std::int64_t> mod;
  bool with_dual = false;
  bool only_tc = false;
  bool with_classes = false;
  int q_max = 4;

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("graph", graph_path, "Graph JSON file")->required();
  };
  CLI::App* info = app.add_subcommand("info", "Summarize a graph");
  add_graph(info);
  CLI::App* tutte_cmd = app.add_subcommand("tutte", "Tutte polynomial");
  add_graph(tutte_cmd);
  CLI::App* modular = app.add_subcommand("modular", "Modular flow polynomial");
  add_graph(modular);
  modular->add_option("--method", method, "tutte|subset|interp|charpoly|all")
      ->default_val("tutte")
      ->check(CLI::IsMember({"tutte", "subset", "interp", "charpoly", "all"}));
  CLI::App* integral = app.add_subcommand("integral", "Integral flow polynomial");
  add_graph(integral);
  integral->add_option("--method", method, "sum-orientations|interp|all")
      ->default_val("interp")
      ->check(CLI::IsMember({"sum-orientations", "interp", "all"}));
  integral->add_flag("--dual", with_dual, "Also report the dual polynomials");
  CLI::App* local = app.add_subcommand("local", "Local flow polynomials of one orientation");
  add_graph(local);
  local->add_option("--orientation", bits, "Bitstring, one bit per edge")->required();
  CLI::App* orientations = app.add_subcommand("orientations", "List orientations");
  add_graph(orientations);
  orientations->add_flag("--totally-cyclic", only_tc, "Only totally cyclic orientations");
  orientations->add_flag("--classes", with_classes, "Group into Eulerian classes");
  CLI::App* lift = app.add_subcommand("lift", "Lift a modular flow to an integer flow");
  add_graph(lift);
  lift->add_option("--orientation", bits, "Reference orientation bitstring")->required();
  lift->add_option("--flow", flow_arg, "Residues as JSON, or a file holding them")
      ->required();
  lift->add_option("--mod", mod, "Modulus q")->check(CLI::PositiveNumber);
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check every identity on a graph");
  add_graph(verify_cmd);
  verify_cmd->add_option("--qmax", q_max, "Largest modulus for q-dependent checks")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"flowpoly"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return emit_error(out, err, cfg, kUsage, "usage", e.what());
  }

  if (cfg.max_edges) {
    cfg.limits.max_edges = *cfg.max_edges;
  } else if (const char* env = std::getenv("FLOWPOLY_MAX_EDGES")) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(env, &used);
      if (used != std::string(env).size() || v <= 0) throw std::invalid_argument(env);
      cfg.limits.max_edges = v;
    } catch (const std::exception&) {
      return emit_error(out, err, cfg, kUsage, "usage",
                        std::string("FLOWPOLY_MAX_EDGES must be a positive integer, got '") +
                            env + "'");
    }
  }

  try {
    const MultiGraph g = load_graph_file(graph_path);
    Outcome o;
    if (info->parsed()) {
      o = cmd_info(g);
    } else if (tutte_cmd->parsed()) {
      o = cmd_tutte(g, cfg);
    } else if (modular->parsed()) {
      o = cmd_modular(g, method, cfg);
    } else if (integral->parsed()) {
      o = cmd_integral(g, method, with_dual, cfg);
    } else if (local->parsed()) {
      o = cmd_local(g, bits, cfg);
    } else if (orientations->parsed()) {
      o = cmd_orientations(g, only_tc, with_classes, cfg);
    } else if (lift->parsed()) {
      o = cmd_lift(g, bits, flow_arg, mod);
    } else {
      o = cmd_verify(g, q_max, cfg);
    }
    if (cfg.format == "json") {
      out << o.report.dump(2) << "\n";
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const ParseError& e) {
    return emit_error(out, err, cfg, kUsage, "parse", e.what(),
                      {{"line", e.line()}, {"column", e.column()}});
  } catch (const DomainError& e) {
    return emit_error(out, err, cfg, kUsage, "domain", e.what());
  } catch (const ResourceError& e) {
    return emit_error(out, err, cfg, kResourceCap, "resource", e.what());
  } catch (const InvariantViolation& e) {
    return emit_error(out, err, cfg, kInternal, "invariant", e.what());
  } catch (const std::exception& e) {
    return emit_error(out, err, cfg, kInternal, "internal", e.what());
  }
}

}  // namespace flowpoly::cli
