#include "atn/certificate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "atn/coefficient.hpp"
#include "atn/graph_io.hpp"
#include "atn/multigraph.hpp"
#include "atn/orientation.hpp"
#include "atn/phi.hpp"

namespace atn {

using nlohmann::json;

namespace {

json big(const BigInt& v) { return to_decimal(v); }

BigInt big_from(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("big integers must be decimal strings");
  return parse_decimal(j.get<std::string>());
}

json graph_fields(const SignedMultigraph& g) { return to_json(g); }

SignedMultigraph graph_at(const json& j, const char* key, const char* digest_key) {
  SignedMultigraph g = graph_from_json(j.at(key));
  const auto digest = j.at(digest_key).get<std::string>();
  if (digest != graph_digest(g)) {
    throw std::invalid_argument(std::string("graph digest mismatch for '") + key + "'");
  }
  return g;
}

std::vector<int> ints(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an integer array");
  return j.get<std::vector<int>>();
}

json trace_json(const TraceCertificate& c) {
  return {{"kind", "trace"},
          {"graph", graph_fields(c.graph)},
          {"graph_digest", graph_digest(c.graph)},
          {"k", c.cycle_length},
          {"witness_exponent", to_json(c.witness)},
          {"witness_coefficient", big(c.witness_coefficient)},
          {"trace_value", big(c.trace)},
          {"at_bound", c.at_bound}};
}

TraceCertificate trace_from(const json& j) {
  if (j.at("kind") != "trace") throw std::invalid_argument("expected a trace certificate");
  TraceCertificate c;
  c.graph = graph_at(j, "graph", "graph_digest");
  c.cycle_length = j.at("k").get<int>();
  c.witness = exponent_from_json(j.at("witness_exponent"));
  c.witness_coefficient = big_from(j.at("witness_coefficient"));
  c.trace = big_from(j.at("trace_value"));
  c.at_bound = j.at("at_bound").get<int>();
  return c;
}

json orientation_json(const OrientationCertificate& c) {
  return {{"kind", "orientation"},
          {"graph", graph_fields(c.graph)},
          {"graph_digest", graph_digest(c.graph)},
          {"directions", c.directions},
          {"outdegrees", to_json(c.outdegrees)},
          {"coefficient", c.coefficient ? big(*c.coefficient) : json(nullptr)},
          {"at_bound", c.at_bound}};
}

OrientationCertificate orientation_from(const json& j) {
  if (j.at("kind") != "orientation") throw std::invalid_argument("expected an orientation certificate");
  OrientationCertificate c;
  c.graph = graph_at(j, "graph", "graph_digest");
  c.directions = j.at("directions").get<std::string>();
  c.outdegrees = exponent_from_json(j.at("outdegrees"));
  if (!j.at("coefficient").is_null()) c.coefficient = big_from(j.at("coefficient"));
  c.at_bound = j.at("at_bound").get<int>();
  return c;
}

json plan_json(const FChoosabilityPlan& p) {
  json pairs = json::array();
  for (const auto& [a, b] : p.pairing) pairs.push_back({a, b});
  return {{"graph", graph_fields(p.graph)},
          {"graph_digest", graph_digest(p.graph)},
          {"tau", to_json(p.tau)},
          {"tau_coefficient", big(p.tau_coefficient)},
          {"N", p.central},
          {"A1", p.low_far},
          {"A2", p.low_half},
          {"A3", p.low_promoted},
          {"B1", p.high_far},
          {"B2", p.high_half},
          {"B3", p.high_promoted},
          {"multiset_a", p.multiset_a},
          {"multiset_b", p.multiset_b},
          {"pairing", pairs},
          {"f", to_json(p.f)}};
}

FChoosabilityPlan plan_from(const json& j) {
  FChoosabilityPlan p;
  p.graph = graph_at(j, "graph", "graph_digest");
  p.tau = exponent_from_json(j.at("tau"));
  p.tau_coefficient = big_from(j.at("tau_coefficient"));
  p.central = ints(j.at("N"));
  p.low_far = ints(j.at("A1"));
  p.low_half = ints(j.at("A2"));
  p.low_promoted = ints(j.at("A3"));
  p.high_far = ints(j.at("B1"));
  p.high_half = ints(j.at("B2"));
  p.high_promoted = ints(j.at("B3"));
  p.multiset_a = ints(j.at("multiset_a"));
  p.multiset_b = ints(j.at("multiset_b"));
  for (const auto& pair : j.at("pairing")) {
    const auto v = ints(pair);
    if (v.size() != 2) throw std::invalid_argument("pairing entries are [a, b]");
    p.pairing.emplace_back(v[0], v[1]);
  }
  p.f = exponent_from_json(j.at("f"));
  return p;
}

struct Checker {
  const CheckOptions& opts;
  CheckReport report;

  EngineOptions engine() const { return {opts.budget, 1}; }

  template <class F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const BudgetExceeded& e) {
      report.require(false, what + ": not rechecked, " + e.what());
    } catch (const std::exception& e) {
      report.require(false, what + ": " + e.what());
    }
  }

  bool exponent_fits(const SignedMultigraph& g, const ExponentVector& xi, const std::string& what) {
    const bool ok = xi.size() == static_cast<std::size_t>(g.vertex_count());
    report.require(ok, what + " has the wrong length");
    return ok;
  }

  void trace(const TraceCertificate& c, const std::string& where) {
    const auto& q = c.graph;
    report.require(c.cycle_length >= 2 && c.cycle_length % 2 == 0, where + "cycle length must be even and >= 2");
    if (!q.all_degrees_even()) {
      report.require(false, where + "graph has an odd degree");
      return;
    }
    if (!exponent_fits(q, c.witness, where + "witness")) return;
    const auto half = half_degrees(q);
    bool almost = true;
    for (std::size_t i = 0; i < half.size(); ++i) almost = almost && std::abs(c.witness[i] - half[i]) <= 1;
    report.require(almost, where + "witness is not almost central");
    report.require(c.at_bound == q.max_degree() / 2 + 2, where + "at_bound differs from max degree / 2 + 2");
    guarded(where + "witness coefficient", [&] {
      const BigInt v = coefficient(q, c.witness, engine()).value;
      report.require(v == c.witness_coefficient, where + "witness coefficient does not match");
      report.require(v != 0, where + "witness coefficient is zero");
    });
    if (c.cycle_length < 2 || c.cycle_length % 2 != 0) return;
    if (q.vertex_count() > opts.phi_max_vertices) {
      report.require(false, where + "graph too large to rebuild Phi");
      return;
    }
    guarded(where + "trace", [&] {
      PhiOptions po;
      po.max_vertices = opts.phi_max_vertices;
      po.engine = engine();
      const BigInt t = trace_power(build_phi(q, po), c.cycle_length);
      report.require(t == c.trace, where + "trace value does not match tr(Phi^k)");
      report.require(t != 0, where + "trace is zero");
    });
  }

  void orientation(const OrientationCertificate& c, const std::string& where) {
    if (c.directions.size() != c.graph.edge_count()) {
      report.require(false, where + "one direction per edge required");
      return;
    }
    std::optional<Orientation> d;
    guarded(where + "directions", [&] { d = Orientation::from_bitstring(c.graph, c.directions); });
    if (!d) return;
    report.require(d->outdegree_vector() == c.outdegrees, where + "outdegrees do not match the directions");
    report.require(!has_odd_directed_cycle(*d), where + "orientation has an odd directed cycle");
    report.require(c.at_bound == d->outdegree_vector().max() + 1, where + "at_bound differs from max outdegree + 1");
    if (c.coefficient) {
      guarded(where + "coefficient", [&] {
        const BigInt v = coefficient(c.graph, d->outdegree_vector(), engine()).value;
        report.require(v == *c.coefficient, where + "coefficient does not match");
        report.require(v != 0, where + "coefficient is zero");
      });
    }
  }

  void operator()(const ExactAtCertificate& c) {
    const auto& g = c.graph;
    if (!exponent_fits(g, c.witness, "witness")) return;
    report.require(c.witness.total() == static_cast<long>(g.edge_count()), "witness degree differs from |E|");
    report.require(c.witness.size() == 0 || c.witness.max() == c.at - 1, "witness maximum differs from at - 1");
    report.require(c.at >= 1, "at must be positive");
    guarded("witness coefficient", [&] {
      const BigInt v = coefficient(g, c.witness, engine()).value;
      report.require(v == c.coefficient, "witness coefficient does not match");
      report.require(v != 0, "witness coefficient is zero");
    });
    if (c.at >= 2) {
      guarded("support below at", [&] {
        const auto below = support(g, ExponentVector(c.witness.size(), c.at - 2), engine());
        report.require(below.empty(), "a nonzero coefficient has maximum exponent below at - 1");
      });
    }
  }

  void operator()(const CnCertificate& c) {
    if (!exponent_fits(c.graph, c.witness, "witness") || !exponent_fits(c.graph, c.f, "f")) return;
    for (std::size_t i = 0; i < c.f.size(); ++i) {
      report.require(c.f[i] >= 1, "list sizes must be >= 1");
      report.require(c.witness[i] <= c.f[i] - 1, "witness exceeds f - 1 at vertex " + std::to_string(i + 1));
    }
    guarded("witness coefficient", [&] {
      const BigInt v = coefficient(c.graph, c.witness, engine()).value;
      report.require(v == c.coefficient, "witness coefficient does not match");
      report.require(v != 0, "witness coefficient is zero");
    });
  }

  void operator()(const TraceCertificate& c) { trace(c, ""); }

  void operator()(const OrientationCertificate& c) { orientation(c, ""); }

  void operator()(const MixedCertificate& c) {
    report.require(!c.odd_k.empty() || !c.even_half.empty(), "at least one factor required");
    for (int k : c.odd_k) report.require(k >= 1, "odd cycle factors need k >= 1");
    for (int h : c.even_half) report.require(h >= 2, "even cycle factors need h >= 2");
    if (!report.ok) return;
    if (!c.odd_k.empty()) report.require(reciprocal_sum_at_most_one(c.odd_k), "sum 1/k_i exceeds 1");
    guarded("base graph", [&] {
      report.require(c.base.graph == mixed_base_graph(c.odd_k, c.even_half), "base graph is not the expected product");
    });
    orientation(c.base, "base: ");

    const int m = static_cast<int>(c.odd_k.size());
    for (int d : c.base.outdegrees) {
      const bool ok = c.odd_k.empty() ? d == 1 : (d >= m - 1 && d <= m + 1);
      report.require(ok, "base outdegrees are not almost central");
    }

    const std::size_t first = c.odd_k.empty() ? 1 : 0;
    const std::size_t expected_steps = c.even_half.size() - first;
    if (c.steps.size() != expected_steps) {
      report.require(false, "one trace step per remaining even factor required");
      return;
    }
    SignedMultigraph current = c.base.graph;
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
      const auto& step = c.steps[i];
      const int h = c.even_half[first + i];
      const std::string where = "step " + std::to_string(i + 1) + ": ";
      report.require(step.cycle_length == 2 * h, where + "cycle length does not match the factor");
      report.require(step.vertex_count == current.vertex_count(), where + "vertex count does not match");
      if (step.trace) {
        if (current.vertex_count() > opts.phi_max_vertices) {
          report.require(false, where + "graph too large to rebuild Phi");
        } else {
          guarded(where + "trace", [&] {
            PhiOptions po;
            po.max_vertices = opts.phi_max_vertices;
            po.engine = engine();
            const BigInt t = trace_power(build_phi(current, po), 2 * h);
            report.require(t == *step.trace, where + "trace value does not match");
            report.require(t != 0, where + "trace is zero");
          });
        }
      }
      if (i + 1 < c.steps.size()) current = cartesian_product(current, build_cycle(2 * h));
    }

    const int factors = static_cast<int>(c.odd_k.size() + c.even_half.size());
    const int bound = c.even_half.empty() ? c.base.at_bound : factors + 1;
    report.require(c.at_bound == bound, "at_bound does not follow from the chain");
    report.require(c.at_lower == factors + 1, "at_lower differs from number of factors + 1");
    report.require(c.chi_lower == (c.odd_k.empty() ? 2 : 3), "chi_lower is wrong");
  }

  void operator()(const CycleCoverCertificate& c) {
    const auto& g = c.graph;
    if (!g.is_simple()) {
      report.require(false, "graph must be simple");
      return;
    }
    const auto adj = g.adjacency();
    std::set<int> seen;
    bool valid = true;
    for (const auto& cyc : c.cycles) {
      valid = valid && cyc.size() >= 3;
      for (std::size_t i = 0; i < cyc.size() && valid; ++i) {
        const int a = cyc[i];
        const int b = cyc[(i + 1) % cyc.size()];
        valid = a >= 1 && a <= g.vertex_count() && b >= 1 && b <= g.vertex_count() &&
                std::binary_search(adj[a - 1].begin(), adj[a - 1].end(), b - 1) && seen.insert(a).second;
      }
    }
    report.require(valid, "cycles are not vertex-disjoint cycles of the graph");
    if (!valid) return;
    const auto deg = g.degree_vector();
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (deg[v] == g.max_degree() && deg[v] > 0) {
        report.require(seen.count(v + 1) == 1, "maximum-degree vertex " + std::to_string(v + 1) + " is uncovered");
      }
    }
    const auto on_cycles = cycle_edge_indices(g, c.cycles);
    std::vector<std::size_t> rest;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (!std::binary_search(on_cycles.begin(), on_cycles.end(), e)) rest.push_back(e);
    report.require(rest == c.doubled_edges, "doubled edges are not exactly the non-cycle edges");
    report.require(c.trace.graph == double_edges(g, rest), "trace certificate is not for the doubled graph");
    trace(c.trace, "trace: ");
    report.require(c.at_bound == c.trace.at_bound, "at_bound differs from the trace bound");
    report.require(c.at_bound <= g.max_degree() + 1 || g.max_degree() == 0, "at_bound exceeds max degree + 1");
  }

  void operator()(const FPlanCertificate& c) {
    guarded("plan", [&] {
      report.require(build_plan(c.plan.graph, c.plan.tau, engine()) == c.plan, "plan does not match its rebuild");
    });
    if (!report.ok) return;
    guarded("Q_eps", [&] {
      const auto [q, sign] = q_epsilon_graph(c.plan, c.epsilon);
      report.require(q == c.q_graph && sign == c.q_sign, "q_graph or q_sign does not match epsilon");
    });
    if (!report.ok) return;
    report.require(c.target == plan_target(c.plan), "target is not tau plus the multiset A");
    const auto deg = c.q_graph.degree_vector();
    for (std::size_t i = 0; i < deg.size(); ++i) {
      report.require(deg[i] == 2 * c.plan.f[i] - 4, "Q_eps degree differs from 2f - 4 at vertex " + std::to_string(i + 1));
    }
    if (!report.ok) return;
    const auto half = half_degrees(c.q_graph);
    for (std::size_t i = 0; i < half.size(); ++i) {
      report.require(std::abs(c.target[i] - half[i]) <= 1, "target is not almost central");
    }
    guarded("target coefficient", [&] {
      const BigInt v = c.q_sign * coefficient(c.q_graph, c.target, engine()).value;
      report.require(v == c.target_coefficient, "target coefficient does not match");
      report.require(v != 0, "target coefficient is zero");
    });
    report.require(c.trace.graph == c.q_graph, "trace certificate is not for Q_eps");
    trace(c.trace, "trace: ");
  }
};

}  // namespace

std::string certificate_kind(const Certificate& c) {
  static const char* const names[] = {"exact_at", "cn", "trace", "orientation", "mixed", "cycle_cover", "fplan"};
  return names[c.index()];
}

json to_json(const Certificate& c) {
  struct Visitor {
    json operator()(const ExactAtCertificate& x) const {
      return {{"kind", "exact_at"},       {"graph", graph_fields(x.graph)}, {"graph_digest", graph_digest(x.graph)},
              {"at", x.at},               {"witness_exponent", to_json(x.witness)},
              {"coefficient", big(x.coefficient)}};
    }
    json operator()(const CnCertificate& x) const {
      return {{"kind", "cn"},
              {"graph", graph_fields(x.graph)},
              {"graph_digest", graph_digest(x.graph)},
              {"f", to_json(x.f)},
              {"witness_exponent", to_json(x.witness)},
              {"coefficient", big(x.coefficient)}};
    }
    json operator()(const TraceCertificate& x) const { return trace_json(x); }
    json operator()(const OrientationCertificate& x) const { return orientation_json(x); }
    json operator()(const MixedCertificate& x) const {
      json steps = json::array();
      for (const auto& s : x.steps) {
        steps.push_back({{"cycle_length", s.cycle_length},
                         {"vertex_count", s.vertex_count},
                         {"trace_value", s.trace ? big(*s.trace) : json(nullptr)}});
      }
      return {{"kind", "mixed"},       {"odd_k", x.odd_k},       {"even_half", x.even_half},
              {"base", orientation_json(x.base)}, {"steps", steps}, {"at_bound", x.at_bound},
              {"at_lower", x.at_lower}, {"chi_lower", x.chi_lower}};
    }
    json operator()(const CycleCoverCertificate& x) const {
      return {{"kind", "cycle_cover"},
              {"graph", graph_fields(x.graph)},
              {"graph_digest", graph_digest(x.graph)},
              {"cycles", x.cycles},
              {"doubled_edges", x.doubled_edges},
              {"trace", trace_json(x.trace)},
              {"at_bound", x.at_bound}};
    }
    json operator()(const FPlanCertificate& x) const {
      return {{"kind", "fplan"},
              {"plan", plan_json(x.plan)},
              {"epsilon", x.epsilon},
              {"q_graph", graph_fields(x.q_graph)},
              {"q_graph_digest", graph_digest(x.q_graph)},
              {"q_sign", x.q_sign},
              {"target", to_json(x.target)},
              {"target_coefficient", big(x.target_coefficient)},
              {"trace", trace_json(x.trace)}};
    }
  };
  return std::visit(Visitor{}, c);
}

Certificate certificate_from_json(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "exact_at") {
      ExactAtCertificate c;
      c.graph = graph_at(j, "graph", "graph_digest");
      c.at = j.at("at").get<int>();
      c.witness = exponent_from_json(j.at("witness_exponent"));
      c.coefficient = big_from(j.at("coefficient"));
      return c;
    }
    if (kind == "cn") {
      CnCertificate c;
      c.graph = graph_at(j, "graph", "graph_digest");
      c.f = exponent_from_json(j.at("f"));
      c.witness = exponent_from_json(j.at("witness_exponent"));
      c.coefficient = big_from(j.at("coefficient"));
      return c;
    }
    if (kind == "trace") return trace_from(j);
    if (kind == "orientation") return orientation_from(j);
    if (kind == "mixed") {
      MixedCertificate c;
      c.odd_k = ints(j.at("odd_k"));
      c.even_half = ints(j.at("even_half"));
      c.base = orientation_from(j.at("base"));
      for (const auto& s : j.at("steps")) {
        MixedStep step;
        step.cycle_length = s.at("cycle_length").get<int>();
        step.vertex_count = s.at("vertex_count").get<int>();
        if (!s.at("trace_value").is_null()) step.trace = big_from(s.at("trace_value"));
        c.steps.push_back(std::move(step));
      }
      c.at_bound = j.at("at_bound").get<int>();
      c.at_lower = j.at("at_lower").get<int>();
      c.chi_lower = j.at("chi_lower").get<int>();
      return c;
    }
    if (kind == "cycle_cover") {
      CycleCoverCertificate c;
      c.graph = graph_at(j, "graph", "graph_digest");
      for (const auto& cyc : j.at("cycles")) c.cycles.push_back(ints(cyc));
      c.doubled_edges = j.at("doubled_edges").get<std::vector<std::size_t>>();
      c.trace = trace_from(j.at("trace"));
      c.at_bound = j.at("at_bound").get<int>();
      return c;
    }
    if (kind == "fplan") {
      FPlanCertificate c;
      c.plan = plan_from(j.at("plan"));
      c.epsilon = j.at("epsilon").get<std::string>();
      c.q_graph = graph_at(j, "q_graph", "q_graph_digest");
      c.q_sign = j.at("q_sign").get<int>();
      c.target = exponent_from_json(j.at("target"));
      c.target_coefficient = big_from(j.at("target_coefficient"));
      c.trace = trace_from(j.at("trace"));
      return c;
    }
    throw std::invalid_argument("unknown certificate kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }
}

CheckReport check_certificate(const Certificate& c, const CheckOptions& opts) {
  Checker checker{opts, {}};
  std::visit(checker, c);
  return checker.report;
}

CheckReport check_certificate_json(const json& j, const CheckOptions& opts) {
  CheckReport report;
  std::optional<Certificate> parsed;
  try {
    parsed = certificate_from_json(j);
  } catch (const std::exception& e) {
    report.require(false, e.what());
    return report;
  }
  report.require(to_json(*parsed) == j, "certificate JSON is not in canonical form");
  const auto inner = check_certificate(*parsed, opts);
  for (const auto& f : inner.failures) report.require(false, f);
  return report;
}

}  // namespace atn
