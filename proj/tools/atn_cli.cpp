// atn: graph polynomial coefficients, Alon-Tarsi bounds and choosability
// certificates from the command line.

#include <chrono>
#include <functional>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "atn/certificate.hpp"
#include "atn/choosability.hpp"
#include "atn/coefficient.hpp"
#include "atn/graph.hpp"
#include "atn/graph_io.hpp"
#include "atn/multigraph.hpp"
#include "atn/orientation.hpp"
#include "atn/phi.hpp"

using nlohmann::json;
using namespace atn;

namespace {

enum Exit { kOk = 0, kNoAnswer = 1, kUsage = 2, kBudget = 3, kInvariant = 4 };

struct Globals {
  std::string format = "json";
  std::uint64_t budget = 100'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string manifest_path;
};

struct Run {
  json params = json::object();
  std::string digest;
  std::vector<std::string> certificates;
};

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

SignedMultigraph family(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw std::invalid_argument("empty family spec");
  auto arg = [&](std::size_t i) {
    if (i >= parts.size()) throw std::invalid_argument("family '" + parts[0] + "' needs more parameters");
    return std::stoi(parts[i]);
  };
  const auto& name = parts[0];
  if (name == "cycle") return build_cycle(arg(1));
  if (name == "path") return build_path(arg(1));
  if (name == "complete") return build_complete(arg(1));
  if (name == "cyclepower") return build_cycle_power(arg(1), arg(2));
  if (name == "petersen") return build_petersen();
  if (name == "edgeless") return build_edgeless(arg(1));
  throw std::invalid_argument("unknown family '" + name + "'");
}

ExponentVector vector_for(const SignedMultigraph& g, const std::string& text, const char* what) {
  ExponentVector v(parse_ints(text));
  if (v.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw std::invalid_argument(std::string(what) + " needs " + std::to_string(g.vertex_count()) + " entries");
  }
  return v;
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string join(const ExponentVector& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

json entries_json(const SupportMap& m) {
  json out = json::array();
  for (const auto& [xi, c] : m.entries) out.push_back({{"exponent", to_json(xi)}, {"coefficient", to_decimal(c)}});
  return out;
}

std::string certificate_text(const Certificate& c) {
  std::ostringstream os;
  os << "kind " << certificate_kind(c) << "\n";
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ExactAtCertificate>) {
          os << "AT " << x.at << "\nwitness " << join(x.witness) << "\ncoefficient " << x.coefficient << "\n";
        } else if constexpr (std::is_same_v<T, CnCertificate>) {
          os << "witness " << join(x.witness) << "\ncoefficient " << x.coefficient << "\n";
        } else if constexpr (std::is_same_v<T, TraceCertificate>) {
          os << "k " << x.cycle_length << "\nwitness " << join(x.witness) << "\ntrace " << x.trace
             << "\nAT bound " << x.at_bound << "\n";
        } else if constexpr (std::is_same_v<T, OrientationCertificate>) {
          os << "directions " << x.directions << "\noutdegrees " << join(x.outdegrees) << "\nAT bound "
             << x.at_bound << "\n";
        } else if constexpr (std::is_same_v<T, MixedCertificate>) {
          os << "AT bound " << x.at_bound << "\nAT lower " << x.at_lower << "\nchi lower " << x.chi_lower << "\n";
        } else if constexpr (std::is_same_v<T, CycleCoverCertificate>) {
          os << "cycles " << x.cycles.size() << "\ndoubled edges " << x.doubled_edges.size() << "\nAT bound "
             << x.at_bound << "\n";
        } else {
          os << "epsilon " << (x.epsilon.empty() ? "(empty)" : x.epsilon) << "\nf " << join(x.plan.f)
             << "\ntarget coefficient " << x.target_coefficient << "\n";
        }
      },
      c);
  return os.str();
}

void write_manifest(const Globals& g, const std::string& command, const Run& run, double seconds, int code) {
  json m = {{"command", command},
            {"graph_digest", run.digest},
            {"parameters", run.params},
            {"seed", g.seed},
            {"budget", g.budget},
            {"threads", g.threads},
            {"certificates", run.certificates},
            {"exit_code", code},
            {"wall_clock_seconds", seconds}};
  if (g.manifest_path.empty()) {
    std::cerr << m.dump() << "\n";
  } else {
    std::ofstream out(g.manifest_path);
    out << m.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph polynomial coefficients, Alon-Tarsi numbers and choosability certificates"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget", g.budget, "State/node budget for exact searches");
  app.add_option("--seed", g.seed, "Seed for randomized runs");
  app.add_option("--threads", g.threads, "Worker threads for enumeration")->check(CLI::Range(1u, 256u));
  app.add_option("--manifest", g.manifest_path, "Write the run manifest here instead of stderr");

  Run run;
  EngineOptions engine;
  std::map<CLI::App*, std::function<void()>> handlers;
  int code = kOk;
  auto graph_from = [&](const std::string& path) {
    auto graph = read_graph_file(path);
    run.digest = graph_digest(graph);
    return graph;
  };
  auto phi_options = [&](int max_vertices) {
    PhiOptions po;
    po.max_vertices = max_vertices;
    po.engine = engine;
    return po;
  };
  auto emit_certificate = [&](const Certificate& c) {
    run.certificates.push_back(certificate_kind(c));
    emit(g, to_json(c), certificate_text(c));
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Write a generated graph");
  std::string gen_family;
  std::vector<std::string> gen_params;
  std::string gen_out;
  bool gen_dot = false;
  gen->add_option("family", gen_family, "cycle|path|complete|cyclepower|petersen|edgeless|product")->required();
  gen->add_option("params", gen_params, "Integers, or family specs like cycle:3 for product");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");
  gen->add_flag("--dot", gen_dot, "Write DOT instead");
  handlers[gen] = [&] {
    SignedMultigraph graph;
    if (gen_family == "product") {
      if (gen_params.size() < 2) throw std::invalid_argument("product needs at least two family specs");
      graph = family(gen_params[0]);
      for (std::size_t i = 1; i < gen_params.size(); ++i) graph = cartesian_product(graph, family(gen_params[i]));
    } else {
      std::string spec = gen_family;
      for (const auto& p : gen_params) spec += ":" + p;
      graph = family(spec);
    }
    run.digest = graph_digest(graph);
    run.params = {{"family", gen_family}, {"params", gen_params}};
    const std::string text = gen_dot ? to_dot(graph) : g.format == "json" ? to_json(graph).dump() + "\n"
                                                                         : to_edge_list(graph);
    if (gen_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(gen_out);
      if (!out) throw std::invalid_argument("cannot write " + gen_out);
      out << text;
    }
  };

  // coeff
  auto* coeff = app.add_subcommand("coeff", "Coefficients of the graph polynomial");
  std::string coeff_graph, coeff_exp, coeff_support;
  bool coeff_almost = false, coeff_cross = false;
  coeff->add_option("graph", coeff_graph, "Graph file (edge list or JSON)")->required();
  auto* coeff_exp_opt = coeff->add_option("--exponent", coeff_exp, "Comma-separated exponent");
  auto* coeff_ac = coeff->add_flag("--almost-central", coeff_almost, "All nonzero almost-central coefficients");
  auto* coeff_sup = coeff->add_option("--support", coeff_support, "All nonzero coefficients below this cap");
  coeff->add_flag("--cross-check", coeff_cross, "Run both algorithms and compare");
  coeff_exp_opt->excludes(coeff_ac)->excludes(coeff_sup);
  coeff_ac->excludes(coeff_sup);
  handlers[coeff] = [&] {
    const auto graph = graph_from(coeff_graph);
    if (!coeff_exp.empty()) {
      const auto xi = vector_for(graph, coeff_exp, "--exponent");
      run.params = {{"exponent", to_json(xi)}, {"cross_check", coeff_cross}};
      const auto r = coeff_cross ? coefficient_cross_checked(graph, xi, engine) : coefficient(graph, xi, engine);
      json j = {{"exponent", to_json(xi)}, {"coefficient", to_decimal(r.value)}};
      if (r.advisory) j["advisory"] = *r.advisory;
      emit(g, j, to_decimal(r.value) + "\n");
      return;
    }
    SupportMap m;
    if (coeff_almost) {
      run.params = {{"almost_central", true}};
      m = almost_central_scan(graph, engine);
    } else if (!coeff_support.empty()) {
      const auto cap = vector_for(graph, coeff_support, "--support");
      run.params = {{"support", to_json(cap)}};
      m = support(graph, cap, engine);
    } else {
      throw CLI::ValidationError("coeff", "one of --exponent, --almost-central, --support is required");
    }
    std::string text;
    for (const auto& [xi, c] : m.entries) text += join(xi) + " " + to_decimal(c) + "\n";
    emit(g, {{"count", m.size()}, {"entries", entries_json(m)}}, text);
  };

  // at
  auto* at = app.add_subcommand("at", "Alon-Tarsi number or an upper-bound certificate");
  std::string at_graph, at_fplan, at_odd, at_even;
  bool at_exact = false, at_orient = false, at_cover = false, at_mixed = false;
  int at_trace = 0, at_k = 4, at_phi_max = 20;
  at->add_option("graph", at_graph, "Graph file (not needed with --mixed)");
  auto* o1 = at->add_flag("--exact", at_exact, "Exact AT by support scan");
  auto* o2 = at->add_option("--trace", at_trace, "Trace certificate for the product with C_k (k even)");
  auto* o3 = at->add_flag("--orient", at_orient, "Certificate from a low-outdegree orientation");
  auto* o4 = at->add_flag("--cycle-cover", at_cover, "Cycle-cover and doubling certificate");
  auto* o5 = at->add_option("--fplan", at_fplan, "f-choosability certificate from the nonzero coefficient tau");
  auto* o6 = at->add_flag("--mixed", at_mixed, "Product of odd and even cycles (--odd-k, --even-half)");
  at->add_option("--odd-k", at_odd, "k_i of the odd factors C_{2k_i+1}");
  at->add_option("--even-half", at_even, "h_i of the even factors C_{2h_i}");
  at->add_option("--k", at_k, "Even cycle length for --cycle-cover/--fplan trace witnesses");
  at->add_option("--phi-max-vertices", at_phi_max, "Largest graph for which Phi is built");
  for (auto* a : {o1, o2, o3, o4, o5, o6})
    for (auto* b : {o1, o2, o3, o4, o5, o6})
      if (a != b) a->excludes(b);
  handlers[at] = [&] {
    if (at_mixed) {
      const auto odd = parse_ints(at_odd);
      const auto even = parse_ints(at_even);
      run.params = {{"mode", "mixed"}, {"odd_k", odd}, {"even_half", even}};
      MixedOptions mo;
      mo.engine = {std::min<std::uint64_t>(g.budget, 2'000'000), g.threads};
      emit_certificate(mixed_cycle_pipeline(odd, even, mo));
      return;
    }
    if (at_graph.empty()) throw CLI::ValidationError("at", "a graph file is required");
    const auto graph = graph_from(at_graph);
    if (at_exact) {
      run.params = {{"mode", "exact"}};
      const auto r = alon_tarsi_number_exact(graph, engine);
      emit_certificate(ExactAtCertificate{graph, r.at, r.witness, r.coefficient});
    } else if (at_trace != 0) {
      run.params = {{"mode", "trace"}, {"k", at_trace}};
      auto c = trace_certificate(graph, at_trace, phi_options(at_phi_max));
      if (!c) throw NoCertificate("the almost-central window is empty");
      emit_certificate(*c);
    } else if (at_orient) {
      run.params = {{"mode", "orient"}};
      emit_certificate(at_certificate_from_orientation(low_outdegree_orientation(graph), engine));
    } else if (at_cover) {
      run.params = {{"mode", "cycle_cover"}, {"k", at_k}};
      emit_certificate(cycle_cover_pipeline(graph, at_k, phi_options(at_phi_max)));
    } else if (!at_fplan.empty()) {
      const auto tau = vector_for(graph, at_fplan, "--fplan");
      run.params = {{"mode", "fplan"}, {"tau", to_json(tau)}, {"k", at_k}};
      emit_certificate(epsilon_search(build_plan(graph, tau, engine), at_k, phi_options(at_phi_max)));
    } else {
      throw CLI::ValidationError("at", "choose one of --exact, --trace, --orient, --cycle-cover, --fplan, --mixed");
    }
  };

  // phi
  auto* phi = app.add_subcommand("phi", "Build Phi and report its structure and traces");
  std::string phi_graph;
  std::vector<int> phi_traces;
  bool phi_dump = false;
  int phi_max = 20;
  phi->add_option("graph", phi_graph, "Graph file with all degrees even")->required();
  phi->add_option("--trace", phi_traces, "Even k for tr(Phi^k); repeatable");
  phi->add_flag("--dump", phi_dump, "List the nonzero entries");
  phi->add_option("--max-vertices", phi_max, "Vertex cap");
  handlers[phi] = [&] {
    const auto graph = graph_from(phi_graph);
    run.params = {{"traces", phi_traces}, {"dump", phi_dump}};
    const auto m = build_phi(graph, phi_options(phi_max));
    json blocks = json::array();
    for (int s = 0; s <= m.vertex_count(); ++s) blocks.push_back(m.block(s).rows());
    json j = {{"n", m.vertex_count()},
              {"half_degrees", to_json(m.half_degrees())},
              {"symmetry_sign", m.symmetry_sign()},
              {"edge_parity", m.edge_parity()},
              {"block_sizes", blocks},
              {"nonzero_entries", m.nonzero_count()}};
    std::ostringstream text;
    text << "n " << m.vertex_count() << "\nsymmetry sign " << m.symmetry_sign() << "\nnonzero entries "
         << m.nonzero_count() << "\n";
    json traces = json::object();
    for (int k : phi_traces) {
      const auto t = trace_power(m, k);
      traces[std::to_string(k)] = to_decimal(t);
      text << "tr Phi^" << k << " " << t << "\n";
    }
    j["traces"] = traces;
    if (phi_dump) {
      json entries = json::array();
      for (int s = 0; s <= m.vertex_count(); ++s)
        for (auto a : m.subsets(s))
          for (auto b : m.subsets(s)) {
            const auto v = m.entry(a, b);
            if (v != 0) entries.push_back({a, b, to_decimal(v)});
          }
      j["entries"] = entries;
    }
    emit(g, j, text.str());
  };

  // orient
  auto* orient = app.add_subcommand("orient", "Degree-bounded orientations and the box/chess constructions");
  std::string or_graph, or_lower, or_upper, or_box, or_chess, or_dirs;
  bool or_frank = false;
  orient->add_option("graph", or_graph, "Graph file (for --lower/--upper or --directions)");
  orient->add_option("--lower", or_lower, "Outdegree lower bounds");
  orient->add_option("--upper", or_upper, "Outdegree upper bounds");
  orient->add_flag("--frank", or_frank, "Also run the exhaustive subset conditions");
  orient->add_option("--box", or_box, "Path lengths k_i of the box");
  orient->add_option("--chess", or_chess, "k_i of the odd cycles C_{2k_i+1}");
  orient->add_option("--directions", or_dirs, "Test an orientation bitstring for odd directed cycles");
  handlers[orient] = [&] {
    auto orientation_json = [](const Orientation& d) {
      return json{{"directions", d.bitstring()},
                  {"outdegrees", to_json(d.outdegree_vector())},
                  {"odd_directed_cycle", has_odd_directed_cycle(d)}};
    };
    auto orientation_text = [](const Orientation& d) {
      return "directions " + d.bitstring() + "\noutdegrees " + join(d.outdegree_vector()) + "\n";
    };
    if (!or_box.empty()) {
      const auto k = parse_ints(or_box);
      run.params = {{"box", k}};
      const auto d = box_orientation(k);
      if (!d) {
        code = kNoAnswer;
        emit(g, {{"feasible", false}, {"reciprocal_sum_at_most_one", reciprocal_sum_at_most_one(k)}}, "infeasible\n");
        return;
      }
      auto j = orientation_json(*d);
      j["feasible"] = true;
      emit(g, j, orientation_text(*d));
      return;
    }
    if (!or_chess.empty()) {
      const auto k = parse_ints(or_chess);
      run.params = {{"chess", k}};
      const auto d = odd_cycle_product_orientation(k);
      run.digest = graph_digest(d.graph());
      emit(g, orientation_json(d), orientation_text(d));
      return;
    }
    if (or_graph.empty()) throw CLI::ValidationError("orient", "a graph file is required");
    const auto graph = graph_from(or_graph);
    if (!or_dirs.empty()) {
      const auto d = Orientation::from_bitstring(graph, or_dirs);
      run.params = {{"directions", or_dirs}};
      const bool odd = has_odd_directed_cycle(d);
      emit(g, orientation_json(d), odd ? "odd directed cycle\n" : "no odd directed cycle\n");
      return;
    }
    if (or_lower.empty() || or_upper.empty()) {
      throw CLI::ValidationError("orient", "--lower and --upper are required with a graph");
    }
    const auto lo = vector_for(graph, or_lower, "--lower");
    const auto hi = vector_for(graph, or_upper, "--upper");
    run.params = {{"lower", to_json(lo)}, {"upper", to_json(hi)}, {"frank", or_frank}};
    const auto d = orient_with_bounds(graph, lo, hi);
    json j = d ? orientation_json(*d) : json::object();
    j["feasible"] = d.has_value();
    std::string text = d ? orientation_text(*d) : "infeasible\n";
    if (or_frank) {
      const auto rep = check_frank_conditions(graph, lo, hi);
      json fr = {{"all_pass", rep.all_pass}};
      if (rep.violation) {
        fr["violation"] = {{"subset", rep.violation->subset},
                           {"condition", rep.violation->condition},
                           {"lhs", rep.violation->lhs},
                           {"rhs", rep.violation->rhs}};
      }
      j["frank"] = fr;
      text += std::string("frank conditions ") + (rep.all_pass ? "pass" : "fail") + "\n";
    }
    if (!d) code = kNoAnswer;
    emit(g, j, text);
  };

  // choosable
  auto* choose = app.add_subcommand("choosable", "List-colouring checks and certificates");
  std::string ch_graph, ch_f;
  int ch_uniform = 0, ch_universe = 0;
  bool ch_exhaustive = false, ch_cn = false;
  std::uint64_t ch_stress = 0;
  choose->add_option("graph", ch_graph, "Graph file")->required();
  choose->add_option("--f", ch_f, "List sizes per vertex");
  choose->add_option("--uniform", ch_uniform, "Same list size everywhere");
  auto* c1 = choose->add_flag("--exhaustive", ch_exhaustive, "Check every list assignment");
  auto* c2 = choose->add_flag("--cn", ch_cn, "Coefficient certificate");
  auto* c3 = choose->add_option("--stress", ch_stress, "Random list trials");
  choose->add_option("--universe", ch_universe, "Colour universe size");
  c1->excludes(c2)->excludes(c3);
  c2->excludes(c3);
  handlers[choose] = [&] {
    const auto graph = graph_from(ch_graph);
    ExponentVector f = ch_f.empty() ? ExponentVector(static_cast<std::size_t>(graph.vertex_count()), ch_uniform)
                                    : vector_for(graph, ch_f, "--f");
    if (ch_f.empty() && ch_uniform < 1) throw CLI::ValidationError("choosable", "--f or --uniform is required");
    run.params = {{"f", to_json(f)}, {"universe", ch_universe}};
    if (ch_exhaustive) {
      const auto r = f_choosable_exhaustive(graph, f, ch_universe, g.budget);
      json j = {{"choosable", r.choosable}, {"assignments", r.assignments}, {"universe", r.universe}};
      if (r.counterexample) j["counterexample"] = *r.counterexample;
      if (!r.choosable) code = kNoAnswer;
      emit(g, j, r.choosable ? "choosable\n" : "not choosable\n");
    } else if (ch_cn) {
      const auto c = cn_choosability_certificate(graph, f, engine);
      if (!c) throw NoCertificate("no nonzero coefficient fits below f");
      emit_certificate(*c);
    } else if (ch_stress > 0) {
      run.params["trials"] = ch_stress;
      const auto r = random_list_stress(graph, f, ch_stress, g.seed, ch_universe);
      if (!r.failures.empty()) code = kNoAnswer;
      emit(g, to_json(r), std::to_string(r.failures.size()) + " failures in " + std::to_string(r.trials) + " trials\n");
    } else {
      throw CLI::ValidationError("choosable", "choose one of --exhaustive, --cn, --stress");
    }
  };

  // check
  auto* check = app.add_subcommand("check", "Re-verify a certificate file");
  std::string check_file;
  int check_phi = 20;
  check->add_option("certificate", check_file, "Certificate JSON file")->required()->check(CLI::ExistingFile);
  check->add_option("--phi-max-vertices", check_phi, "Largest graph for which Phi is rebuilt");
  handlers[check] = [&] {
    std::ifstream in(check_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("certificate is not JSON: ") + e.what());
    }
    run.params = {{"certificate", check_file}};
    const auto rep = check_certificate_json(j, {g.budget, check_phi});
    if (!rep.ok) code = kNoAnswer;
    std::string text = rep.ok ? "pass\n" : "fail\n";
    for (const auto& f : rep.failures) text += "  " + f + "\n";
    emit(g, {{"ok", rep.ok}, {"failures", rep.failures}}, text);
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  engine = {g.budget, g.threads};

  CLI::App* sub = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  try {
    handlers.at(sub)();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    code = kUsage;
  } catch (const NoCertificate& e) {
    std::cerr << "no certificate: " << e.what() << "\n";
    code = kNoAnswer;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    code = kBudget;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    code = kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(g, sub->get_name(), run, seconds, code);
  return code;
}
