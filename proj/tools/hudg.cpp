#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hudg/approx.hpp"
#include "hudg/delaunay.hpp"
#include "hudg/graph.hpp"
#include "hudg/instance.hpp"
#include "hudg/noose.hpp"
#include "hudg/separator.hpp"
#include "json.hpp"

using namespace hudg;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitBudget = 3;

struct Violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Budget {
  std::size_t noose = kDefaultNooseBudget;
  std::uint64_t exact = kDefaultExactBudget;
};

Budget budget_from_env() {
  Budget b;
  if (const char* s = std::getenv("HUDG_BUDGET")) {
    std::uint64_t v = std::stoull(s);
    b.noose = static_cast<std::size_t>(v);
    b.exact = v;
  }
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json set_json(const IndependentSet& s) { return json(s); }

json separator_report(const DiskGraph& g, const CliqueSeparator& s, const SeparatorCheck& c) {
  return {{"cliques", s.cliques},
          {"side_a", s.side_a},
          {"side_b", s.side_b},
          {"box_count", s.box_count},
          {"wedge_half_angle", s.wedge_half_angle},
          {"fitted_constant", s.fitted_constant},
          {"check",
           {{"cliques_ok", c.cliques_ok},
            {"partition_ok", c.partition_ok},
            {"crossing_edges", c.crossing_edges},
            {"max_component", c.max_component},
            {"balance_bound", c.balance_bound},
            {"ok", c.ok()}}},
          {"n", g.size()}};
}

double voronoi_equidistance_error(const DelaunayComplex& c) {
  double worst = 0.0;
  for (const auto& v : c.voronoi_vertices) {
    double a = dist(v.position, c.sites[v.triple[0]]);
    double b = dist(v.position, c.sites[v.triple[1]]);
    double d = dist(v.position, c.sites[v.triple[2]]);
    worst = std::max({worst, std::fabs(a - b), std::fabs(a - d), std::fabs(b - d)});
  }
  return worst;
}

std::vector<std::array<int, 2>> edge_list(const DelaunayComplex& c) {
  std::vector<std::array<int, 2>> e;
  for (const auto& ed : c.edges) e.push_back({ed.u, ed.v});
  std::sort(e.begin(), e.end());
  return e;
}

json delaunay_report(const DelaunayComplex& c, double r) {
  DegreeAudit a = inner_degree_audit(c, r);
  double eq = voronoi_equidistance_error(c);
  std::size_t crossings = drawn_edge_crossings(c);
  return {{"n", c.size()},
          {"edges", edge_list(c)},
          {"edge_count", c.edges.size()},
          {"voronoi_vertices", c.voronoi_vertices.size()},
          {"outer_vertices", outer_vertices(c).size()},
          {"outerplanarity", outerplanarity(c)},
          {"inner_degree", {{"required", a.required}, {"min", a.min_inner_degree}, {"inner", a.inner_count}, {"ok", a.ok()}}},
          {"equidistance_error", eq},
          {"drawn_crossings", crossings},
          {"ok", eq <= 1e-8 && crossings == 0}};
}

json mis_fields(const DiskGraph& g, const IndependentSet& s) {
  bool indep = is_independent(g, s);
  if (!indep) throw Violation("reported set is not independent");
  return {{"size", s.size()}, {"set", set_json(s)}, {"independent", indep}};
}



int cmd_gen(const std::string& kind, int n, int k, double R, double r, std::uint64_t seed, long attempts,
            const std::string& out) {
  Instance inst;
  if (kind == "random") inst = gen_random(n, R, r, seed);
  else if (kind == "mindist") inst = gen_mindist(n, r, R, seed, attempts);
  else if (kind == "mindist-greedy") inst = gen_mindist_greedy(n, r, R, seed, attempts);
  else if (kind == "grid") inst = gen_grid(k);
  else if (kind == "star") inst = gen_star(n);
  else throw std::invalid_argument("unknown generator " + kind);
  if (out.empty() || out == "-") std::cout << serialize(inst) << "\n";
  else std::ofstream(out) << serialize(inst) << "\n";
  return kExitOk;
}

int cmd_build(const Instance& inst, const std::string& report) {
  DiskGraph g = build_graph(inst.points, inst.r);
  int maxdeg = 0;
  for (const auto& a : g.adj) maxdeg = std::max(maxdeg, static_cast<int>(a.size()));
  json j{{"command", "build"},
         {"n", g.size()},
         {"r", inst.r},
         {"edges", g.edge_count()},
         {"max_degree", maxdeg},
         {"components", components(g).size()},
         {"duplicate_pairs", g.duplicate_count}};
  if (g.size() > 0 && g.size() <= 3000) j["ply"] = ply(g);
  j["verdict"] = "ok";
  emit(j, report);
  return kExitOk;
}

int cmd_separator(const Instance& inst, const std::string& report) {
  DiskGraph g = build_graph(inst.points, inst.r);
  auto t0 = std::chrono::steady_clock::now();
  CliqueSeparator s = balanced_separator(g);
  double sec = seconds_since(t0);
  SeparatorCheck c = check_separator(g, s);
  json j = separator_report(g, s, c);
  j["command"] = "separator";
  j["seconds"] = sec;
  j["verdict"] = c.ok() ? "ok" : "violation";
  emit(j, report);
  if (!c.ok()) throw Violation("separator check failed");
  return kExitOk;
}

int cmd_delaunay(const Instance& inst, const std::string& report) {
  auto t0 = std::chrono::steady_clock::now();
  DelaunayComplex c = build_delaunay(inst.points);
  double sec = seconds_since(t0);
  json j = delaunay_report(c, inst.r);
  j["command"] = "delaunay";
  j["seconds"] = sec;
  j["verdict"] = j["ok"].get<bool>() ? "ok" : "violation";
  emit(j, report);
  if (!j["ok"].get<bool>()) throw Violation("Delaunay checks failed");
  return kExitOk;
}

int cmd_mis_exact(const Instance& inst, int width, int max_width, const std::string& report, const Budget& b) {
  DiskGraph g = build_graph(inst.points, inst.r);
  auto t0 = std::chrono::steady_clock::now();
  json j{{"command", "mis-exact"}, {"n", g.size()}, {"r", inst.r}, {"default_width", default_width(g.size(), inst.r)}};
  IndependentSet s;
  if (width > 0) {
    DpResult d = dp_max_is(g, width, b.noose);
    s = d.witness;
    j["width"] = width;
    j["candidates"] = d.candidates;
    j["combinations"] = d.combinations;
  } else {
    RampResult rr = dp_max_is_ramp(g, 2, max_width, b.noose);
    s = rr.best.witness;
    j["widths"] = {rr.first_width, rr.first_width + static_cast<int>(rr.sizes.size()) - 1};
    j["sizes"] = rr.sizes;
    j["stabilized"] = rr.stabilized;
    j["candidates"] = rr.best.candidates;
  }
  j.update(mis_fields(g, s));
  j["seconds"] = seconds_since(t0);
  j["verdict"] = "ok";
  emit(j, report);
  return kExitOk;
}

int cmd_mis_simple(const std::string& which, const Instance& inst, double eps, const std::string& report,
                   const Budget& b) {
  DiskGraph g = build_graph(inst.points, inst.r);
  auto t0 = std::chrono::steady_clock::now();
  json j{{"command", which}, {"n", g.size()}, {"r", inst.r}};
  IndependentSet s;
  if (which == "mis-greedy") {
    s = greedy_3approx(g);
    if (g.size() > 0) j["ply"] = ply(g);
  } else if (which == "mis-brute") {
    if (g.size() > kBruteForceLimit) throw std::invalid_argument("mis-brute: at most 40 vertices");
    s = brute_force_mis(g);
    j["optimum"] = s.size();
  } else if (which == "mis-separator") {
    s = separator_exact_is(g, b.exact);
    j["optimum"] = s.size();
  } else {
    PtasResult p = ptas(g, eps, b.noose);
    s = p.set;
    j["eps"] = eps;
    j["ply"] = p.ply;
    j["t"] = p.t;
    j["patch_sizes"] = p.patch_sizes;
    j["separator_cliques"] = p.clique_count;
    if (g.size() <= kBruteForceLimit) {
      std::size_t opt = brute_force_mis(g).size();
      j["brute_force"] = opt;
      j["ratio"] = opt ? static_cast<double>(s.size()) / static_cast<double>(opt) : 1.0;
    }
  }
  j.update(mis_fields(g, s));
  j["seconds"] = seconds_since(t0);
  j["verdict"] = "ok";
  emit(j, report);
  return kExitOk;
}

double parse_r(const std::string& tok, int n) {
  if (tok == "invsqrt") return 1.0 / std::sqrt(static_cast<double>(n));
  if (tok == "log") return std::log(static_cast<double>(n));
  return std::stod(tok);
}

// radius of the disk holding n disks of radius r at the given area fraction
double radius_for_density(int n, double r, double density) {
  return std::acosh(1.0 + n * (std::cosh(r) - 1.0) / density);
}

int cmd_campaign(const std::vector<int>& ns, const std::vector<std::string>& rs, int seeds, double R_factor,
                 double density, double site_density, const std::string& out) {
  std::ostringstream csv;
  csv << "n,r_label,r,R,seed,edges,separator_cliques,separator_boxes,separator_ok,separator_seconds,"
         "delaunay_sites,outerplanarity,inner_degree_ok,delaunay_seconds,greedy_mis\n";
  for (int n : ns)
    for (const std::string& tok : rs)
      for (int seed = 1; seed <= seeds; ++seed) {
        double r = parse_r(tok, n);
        double R = density > 0 ? radius_for_density(n, r, density) : R_factor * std::log(static_cast<double>(n));
        double Rs = site_density > 0 ? radius_for_density(n, r, site_density) : R;
        Instance inst = gen_random(n, R, r, static_cast<std::uint64_t>(seed));
        DiskGraph g = build_graph(inst.points, r);
        auto t0 = std::chrono::steady_clock::now();
        CliqueSeparator s = balanced_separator(g);
        double ts = seconds_since(t0);
        bool sep_ok = check_separator(g, s).ok();
        Instance sites = gen_mindist_greedy(n, r, Rs, static_cast<std::uint64_t>(seed), 200L * n);
        t0 = std::chrono::steady_clock::now();
        DelaunayComplex c = build_delaunay(sites.points);
        int k = outerplanarity(c);
        double td = seconds_since(t0);
        bool deg_ok = inner_degree_audit(c, r).ok();
        csv << n << ',' << tok << ',' << format_double(r) << ',' << format_double(R) << ',' << seed << ',' << g.edge_count() << ','
            << s.cliques.size() << ',' << s.box_count << ',' << (sep_ok ? 1 : 0) << ',' << ts << ','
            << sites.points.size() << ',' << k << ',' << (deg_ok ? 1 : 0) << ',' << td << ','
            << greedy_3approx(g).size() << '\n';
        if (!sep_ok || !deg_ok) {
          if (out.empty() || out == "-") std::cout << csv.str();
          else std::ofstream(out) << csv.str();
          throw Violation("campaign invariant violated at n = " + std::to_string(n) + ", r = " + tok);
        }
      }
  if (out.empty() || out == "-") std::cout << csv.str();
  else std::ofstream(out) << csv.str();
  return kExitOk;
}

bool verify_mis(const DiskGraph& g, const json& rep, json& out) {
  IndependentSet s = rep.at("set").get<IndependentSet>();
  bool ok = is_independent(g, s) && rep.at("size").get<std::size_t>() == s.size();
  for (int v : s) ok = ok && v >= 0 && v < g.size();
  out["independent"] = is_independent(g, s);
  if (rep.contains("optimum") || rep.contains("brute_force")) {
    if (g.size() > kBruteForceLimit) {
      out["optimum_checked"] = false;
    } else {
      std::size_t opt = brute_force_mis(g).size();
      out["optimum_checked"] = true;
      if (rep.contains("optimum")) ok = ok && rep["optimum"].get<std::size_t>() == opt && s.size() == opt;
      if (rep.contains("brute_force")) ok = ok && rep["brute_force"].get<std::size_t>() == opt;
    }
  }
  return ok;
}

int cmd_verify(const Instance& inst, const std::string& report_path, const std::string& out) {
  json rep = json::parse(read_file(report_path));
  const std::string cmd = rep.at("command").get<std::string>();
  DiskGraph g = build_graph(inst.points, inst.r);
  json j{{"command", "verify"}, {"verifies", cmd}};
  bool ok = true;
  if (cmd == "build") {
    ok = rep.at("n").get<int>() == g.size() && rep.at("edges").get<std::size_t>() == g.edge_count() &&
         rep.at("components").get<std::size_t>() == components(g).size();
    if (rep.contains("ply")) ok = ok && rep["ply"].get<int>() == ply(g);
  } else if (cmd == "separator") {
    CliqueSeparator s;
    s.cliques = rep.at("cliques").get<std::vector<std::vector<int>>>();
    s.side_a = rep.at("side_a").get<std::vector<int>>();
    s.side_b = rep.at("side_b").get<std::vector<int>>();
    SeparatorCheck c = check_separator(g, s);
    j["check_ok"] = c.ok();
    ok = c.ok() == rep.at("check").at("ok").get<bool>() && c.ok();
  } else if (cmd == "delaunay") {
    DelaunayComplex c = build_delaunay(inst.points);
    json again = delaunay_report(c, inst.r);
    ok = again["edges"] == rep.at("edges") && again["outerplanarity"] == rep.at("outerplanarity") &&
         again["ok"].get<bool>() && rep.at("ok").get<bool>();
  } else if (cmd.rfind("mis-", 0) == 0) {
    ok = verify_mis(g, rep, j);
  } else {
    throw std::invalid_argument("verify: unknown report command " + cmd);
  }
  j["verdict"] = ok ? "ok" : "violation";
  emit(j, out);
  if (!ok) throw Violation("report does not match the instance");
  return kExitOk;
}

void error_object(const std::string& kind, const std::string& msg) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic uniform disk graph toolkit"};
  app.require_subcommand(1);

  std::string input, report, kind = "random";
  int n = 100, k = 3, width = 0, max_width = 6, seeds = 5;
  double R = 10.0, r = 1.0, eps = 0.5, R_factor = 2.0, density = 1.0, site_density = 0.3;
  std::uint64_t seed = 1;
  long attempts = 2000000;
  std::vector<int> ns{200, 500, 1000};
  std::vector<std::string> rs{"invsqrt", "0.5", "1", "2", "log"};

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--kind", kind, "random | mindist | mindist-greedy | grid | star");
  gen->add_option("--n", n);
  gen->add_option("--k", k, "grid side");
  gen->add_option("--R", R, "sampling radius");
  gen->add_option("--r", r, "disk radius");
  gen->add_option("--seed", seed);
  gen->add_option("--attempts", attempts);
  gen->add_option("--output", report);

  auto with_input = [&](CLI::App* c) {
    c->add_option("--input", input)->required();
    c->add_option("--report", report);
    return c;
  };
  auto* build = with_input(app.add_subcommand("build", "build the disk graph"));
  auto* sep = with_input(app.add_subcommand("separator", "balanced clique separator"));
  auto* del = with_input(app.add_subcommand("delaunay", "Delaunay complex and outerplanarity"));
  auto* exact = with_input(app.add_subcommand("mis-exact", "noose dynamic program"));
  exact->add_option("--width", width, "fixed width; ramp from 2 when omitted");
  exact->add_flag("--ramp", "ramp the width until two consecutive sizes agree (default)");
  exact->add_option("--max-width", max_width);
  auto* greedy = with_input(app.add_subcommand("mis-greedy", "farthest-first greedy"));
  auto* pt = with_input(app.add_subcommand("mis-ptas", "approximation scheme"));
  pt->add_option("--eps", eps);
  auto* brute = with_input(app.add_subcommand("mis-brute", "branch and bound"));
  auto* sepmis = with_input(app.add_subcommand("mis-separator", "separator-based exact independent set"));
  auto* verify = with_input(app.add_subcommand("verify", "recompute a report's verdicts from the instance"));
  std::string verify_out;
  verify->add_option("--output", verify_out);
  auto* camp = app.add_subcommand("campaign", "scaling sweep, CSV output");
  camp->add_option("--n", ns)->delimiter(',');
  camp->add_option("--r", rs, "values, 'invsqrt' (1/sqrt n) or 'log' (log n)")->delimiter(',');
  camp->add_option("--seeds", seeds);
  camp->add_option("--R-factor", R_factor, "sampling radius as a multiple of log n");
  camp->add_option("--density", density, "disk area fraction fixing the sampling radius; 0 uses --R-factor");
  camp->add_option("--site-density", site_density, "same for the min-distance Delaunay sites");
  camp->add_option("--output", report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    Budget b = budget_from_env();
    if (gen->parsed()) return cmd_gen(kind, n, k, R, r, seed, attempts, report);
    if (camp->parsed()) return cmd_campaign(ns, rs, seeds, R_factor, density, site_density, report);
    Instance inst = parse_instance(read_file(input));
    if (build->parsed()) return cmd_build(inst, report);
    if (sep->parsed()) return cmd_separator(inst, report);
    if (del->parsed()) return cmd_delaunay(inst, report);
    if (exact->parsed()) return cmd_mis_exact(inst, width, max_width, report, b);
    if (greedy->parsed()) return cmd_mis_simple("mis-greedy", inst, eps, report, b);
    if (pt->parsed()) return cmd_mis_simple("mis-ptas", inst, eps, report, b);
    if (brute->parsed()) return cmd_mis_simple("mis-brute", inst, eps, report, b);
    if (sepmis->parsed()) return cmd_mis_simple("mis-separator", inst, eps, report, b);
    if (verify->parsed()) return cmd_verify(inst, report, verify_out);
  } catch (const BudgetExceeded& e) {
    error_object("budget_exceeded", e.what());
    return kExitBudget;
  } catch (const Violation& e) {
    error_object("invariant_violation", e.what());
    return kExitViolation;
  } catch (const std::invalid_argument& e) {
    error_object("usage", e.what());
    return kExitUsage;
  } catch (const std::logic_error& e) {
    error_object("invariant_violation", e.what());
    return kExitViolation;
  } catch (const std::exception& e) {
    error_object("error", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
