// Copyright 2026 The ybx Authors
// SPDX-License-Identifier: Apache-2.0

// ybx: batch verification of double brackets, trace-Poisson brackets and
// classical, quantum and dynamical exchange relations.
//
// Exit status: 0 every check passed, 1 some check failed, 2 input error.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <thread>

#include "ybx/io.hpp"
#include "ybx/search.hpp"
#include "ybx/trace_poisson.hpp"

using namespace ybx;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int degree_cap = 2;
  bool degree_cap_given = false;
  int jobs = 1;
  std::string format = "text";
};

using Task = std::function<CheckReport()>;

int effective_jobs(int flag) {
  if (const char* env = std::getenv("YBX_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end || v < 1) throw InputError("YBX_JOBS must be a positive integer");
    return int(v);
  }
  return std::max(1, flag);
}

// independent checks run concurrently; results keep the task order
std::vector<CheckReport> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<CheckReport> out(tasks.size());
  std::vector<std::exception_ptr> err(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        out[i] = tasks[i]();
      } catch (...) {
        err[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < std::min<int>(jobs, int(tasks.size())); ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : err)
    if (e) std::rethrow_exception(e);
  return out;
}

int emit(const std::vector<CheckReport>& reps, const Globals& g, const json& extra = nullptr) {
  bool ok = true;
  for (const auto& r : reps) ok = ok && r.pass;
  if (g.format == "json") {
    json j{{"pass", ok}, {"reports", json::array()}};
    for (const auto& r : reps) j["reports"].push_back(r.to_json());
    if (!extra.is_null()) j["extra"] = extra;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : reps) std::cout << r.to_text() << "\n";
    if (!extra.is_null()) std::cout << extra.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

BracketSpec load_bracket(const std::string& path) {
  SpecValue v = parse_spec(path);
  if (!std::holds_alternative<BracketSpec>(v)) throw InputError(path + ": expected a bracket document");
  return std::get<BracketSpec>(v);
}

BracketSpec load_quadratic(const std::string& path) {
  BracketSpec s = load_bracket(path);
  if (s.kind != BracketKind::quadratic) throw InputError(path + ": expected a quadratic bracket");
  return s;
}

ABCDSystem load_abcd(const std::string& path) {
  SpecValue v = parse_spec(path);
  if (!std::holds_alternative<ABCDSystem>(v)) throw InputError(path + ": expected an abcd document");
  return std::get<ABCDSystem>(v);
}

DynSystem load_dyn(const std::string& path) {
  SpecValue v = parse_spec(path);
  if (!std::holds_alternative<DynSystem>(v)) throw InputError(path + ": expected a dynamical document");
  return std::get<DynSystem>(v);
}

std::vector<Rational> parse_list(const std::string& s, std::size_t lo, std::size_t hi, const char* what) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_rational(part));
  if (out.size() < lo || out.size() > hi) throw InputError(std::string(what) + ": wrong number of values");
  return out;
}

ProductRule parse_rule(const std::string& r) {
  if (r == "ordinary") return ProductRule::ordinary;
  if (r == "flavor") return ProductRule::flavor_rule;
  throw InputError("rule must be 'ordinary' or 'flavor'");
}

std::vector<Task> bracket_suite(const BracketSpec& s, int N, std::uint64_t seed) {
  std::vector<Task> t;
  t.push_back([=] { return check_double_jacobi(s); });
  t.push_back([=] { return check_jacobi(s, N, seed); });
  if (s.kind == BracketKind::linear) {
    t.push_back([=] { return check_linear_assoc(s); });
    t.push_back([=] { return check_linear_matrix_form(s, N); });
    t.push_back([=] { return check_linear_assoc_matrix(s, N); });
    t.push_back([=] { return check_hamiltonian_form(s, N); });
  }
  if (s.kind == BracketKind::quadratic) {
    t.push_back([=] { return check_quadratic_relations(s); });
    t.push_back([=] { return check_quadratic_matrix_form(s, N); });
    t.push_back([=] { return check_hamiltonian_form(s, N); });
    t.push_back([=] { return check_reflection_form(s, N); });
    t.push_back([=] { return check_cybe_skew(s, N); });
    if (a_symmetric(s)) t.push_back([=] { return check_cybe_adjoint(s, N); });
  }
  return t;
}

std::string qflat_string(const QTensor& t) {
  std::string s;
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? " " : "") + to_string(t[k]);
  return s;
}

CheckReport gauge_check(const ABCDSystem& sys, std::uint64_t seed) {
  Stopwatch sw;
  CheckReport rep;
  rep.tag = "gauge";
  Rng g(seed);
  QTensor G(std::vector<SiteSpec>{flavor("f1", sys.m), flavor("f2", sys.m)});
  for (std::size_t k = 0; k < G.size(); ++k) G[k] = rand_int(g, -1, 1);
  G = G + scale(identity<Rational>(G.sites()), Rational(4));
  rep.details["R_bit_identical"] = true;
  if (!equal(build_R(apply_gauge(sys, G)), build_R(sys))) {
    rep.details["R_bit_identical"] = false;
    rep.fail({{"gauge", qflat_string(G)}});
  }
  rep.elapsed_ms = sw.ms();
  return rep;
}

std::vector<Task> abcd_suite(const ABCDSystem& sys, std::uint64_t seed) {
  std::vector<Task> t;
  t.push_back([=] { return check_qybe(build_R(sys)); });
  t.push_back([=] { return check_unitarity(sys); });
  t.push_back([=] { return check_relation_equivalence(sys); });
  if (sys.parts) {
    t.push_back([=] { return check_decoupled_color(sys); });
    t.push_back([=] { return check_decoupled_flavor(sys); });
    t.push_back([=] { return gauge_check(sys, seed); });
  }
  return t;
}

std::vector<Task> dyn_suite(const DynSystem& s) {
  std::vector<Task> t;
  if (s.m) {
    t.push_back([=] { return compare_dtral_modes(s); });
  } else {
    t.push_back([=] { return check_dyr_equivalence(s); });
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ybx: exact checks for double Poisson brackets and reflection-type exchange relations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for every sampled object")->capture_default_str();
  auto* cap = app.add_option("--degree-cap", g.degree_cap, "maximum degree of sampled polynomials")->capture_default_str();
  app.add_option("--jobs", g.jobs, "concurrent checks (YBX_JOBS overrides)")->capture_default_str();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::function<int()> action;
  std::string file, mode = "both", epsilons, rule = "ordinary", limit_rule = "flavor", catalog;
  int N = 2, samples = 100, max_N = 3, max_n = 3;
  bool show = false;

  auto* check = app.add_subcommand("check", "run one check");
  check->require_subcommand(1);
  check->fallthrough();
  auto add = [&](const char* name, const char* help, bool needs_file, std::function<int()> f) {
    auto* c = check->add_subcommand(name, help);
    c->fallthrough();
    if (needs_file) c->add_option("file", file, "input document")->required()->check(CLI::ExistingFile);
    c->callback([&action, f] { action = f; });
    return c;
  };

  add("double-jacobi", "double Jacobi identity on generator triples", true,
      [&] { return emit({check_double_jacobi(load_bracket(file))}, g); });
  add("aybe", "associative Yang-Baxter equation of the flavor r", true, [&] {
    QTensor r = flavor_r(load_quadratic(file));
    return emit({check_aybe(r), check_aybe_star(r)}, g);
  });
  add("cybe", "classical Yang-Baxter equations (skew part; adjoint when a is symmetric)", true, [&] {
    BracketSpec s = load_quadratic(file);
    std::vector<CheckReport> r{check_cybe_skew(s, N)};
    if (a_symmetric(s)) r.push_back(check_cybe_adjoint(s, N));
    return emit(r, g);
  })->add_option("--N", N, "color dimension")->capture_default_str();
  add("quadratic-relations", "componentwise conditions on r and a", true,
      [&] { return emit({check_quadratic_relations(load_quadratic(file))}, g); });
  add("trace-jacobi", "Jacobi identity of the induced trace-Poisson bracket", true,
      [&] { return emit({check_jacobi(load_bracket(file), N, g.seed)}, g); })
      ->add_option("--N", N, "color dimension")
      ->required();
  add("matrix-form", "matrix forms of the induced bracket", true, [&] {
    BracketSpec s = load_bracket(file);
    std::vector<CheckReport> r;
    if (s.kind == BracketKind::linear)
      r = {check_linear_matrix_form(s, N), check_linear_assoc_matrix(s, N), check_hamiltonian_form(s, N)};
    else if (s.kind == BracketKind::quadratic)
      r = {check_quadratic_matrix_form(s, N), check_hamiltonian_form(s, N)};
    else
      throw InputError("matrix-form needs a linear or quadratic bracket");
    return emit(r, g);
  })->add_option("--N", N, "color dimension")->capture_default_str();
  add("reflection-form", "classical reflection form of the quadratic bracket", true,
      [&] { return emit({check_reflection_form(load_quadratic(file), N)}, g); })
      ->add_option("--N", N, "color dimension")
      ->capture_default_str();
  add("qybe", "quantum Yang-Baxter equation of the bivector R-matrix", true,
      [&] { return emit({check_qybe(build_R(load_abcd(file)))}, g); });
  add("unitarity", "unitarity conditions of an ABCD system", true,
      [&] { return emit({check_unitarity(load_abcd(file))}, g); });
  add("relation-equivalence", "component relation vs bivector form", true,
      [&] { return emit({check_relation_equivalence(load_abcd(file), parse_rule(rule))}, g); })
      ->add_option("--rule", rule, "flavor product rule: ordinary|flavor")
      ->capture_default_str();
  {
    auto* c = add("classical-limit", "quasi-classical limit of the quantum relation", true, [&] {
      return emit({check_classical_limit(load_quadratic(file), N, parse_rule(limit_rule))}, g);
    });
    c->add_option("--N", N, "color dimension")->capture_default_str();
    c->add_option("--rule", limit_rule, "flavor product rule: ordinary|flavor")->capture_default_str();
  }
  add("decoupled", "color/flavor decoupled system: color, flavor, QYBE, unitarity, gauge", true, [&] {
    ABCDSystem sys = load_abcd(file);
    if (!sys.parts) throw InputError(file + ": no decoupled section");
    return emit(run_tasks(abcd_suite(sys, g.seed), effective_jobs(g.jobs)), g);
  });
  {
    auto* c = add("dyn-identities", "shift-calculus identity suite on random samples", false, [&] {
      ShiftSuiteOptions o;
      o.samples = samples;
      o.max_N = max_N;
      o.max_n = max_n;
      o.max_degree = g.degree_cap;
      o.seed = g.seed;
      return emit(check_shift_identities(o), g);
    });
    c->add_option("--samples", samples, "samples per identity")->capture_default_str();
    c->add_option("--max-N", max_N, "largest color dimension")->capture_default_str();
    c->add_option("--max-n", max_n, "largest dynamical rank")->capture_default_str();
  }
  {
    auto* c = check->add_subcommand("dyr-equivalence", "explicit-exponential vs bivector dynamical relation");
    c->fallthrough();
    c->add_option("file", file, "dynamical document (random N=2 systems when omitted)")->check(CLI::ExistingFile);
    c->add_option("--epsilons", epsilons, "eR,eL (all three standard signatures when omitted)");
    c->callback([&] {
      action = [&] {
        if (!file.empty()) {
          DynSystem s = load_dyn(file);
          if (!epsilons.empty()) {
            auto e = parse_list(epsilons, 2, 2, "--epsilons");
            s.epsR = e[0];
            s.epsL = e[1];
          }
          return emit({check_dyr_equivalence(s)}, g);
        }
        std::vector<std::pair<Rational, Rational>> sigs{{-1, 1}, {-1, 0}, {-1, -1}};
        if (!epsilons.empty()) {
          auto e = parse_list(epsilons, 2, 2, "--epsilons");
          sigs = {{e[0], e[1]}};
        }
        std::vector<Task> t;
        for (auto [r, l] : sigs)
          t.push_back([&g, r, l] {
            Rng rng(g.seed);
            DynSystem s = random_dyn_system(2, 0, r, l, rng, g.degree_cap_given ? g.degree_cap : 1);
            return check_dyr_equivalence(s);
          });
        return emit(run_tasks(t, effective_jobs(g.jobs)), g);
      };
    });
  }
  {
    auto* c = check->add_subcommand("dtral", "expand the flavored dynamical relation in both shift readings");
    c->fallthrough();
    c->add_option("file", file, "flavored dynamical document (random N=m=2 system when omitted)")
        ->check(CLI::ExistingFile);
    c->add_option("--mode", mode, "reading whose normal form is printed with --show")
        ->check(CLI::IsMember({"narrow", "broad", "both"}))
        ->capture_default_str();
    c->add_option("--epsilons", epsilons, "eR,eL[,eF]");
    c->add_flag("--show", show, "print the normal form(s)");
    c->callback([&] {
      action = [&] {
        DynSystem s;
        std::optional<std::vector<Rational>> e;
        if (!epsilons.empty()) e = parse_list(epsilons, 2, 3, "--epsilons");
        if (!file.empty()) {
          s = load_dyn(file);
          if (e) {
            s.epsR = (*e)[0];
            s.epsL = (*e)[1];
            if (e->size() == 3) s.epsF = (*e)[2];
          }
        } else {
          Rng rng(g.seed);
          s = random_dyn_system(2, 2, e ? (*e)[0] : Rational(-1), e ? (*e)[1] : Rational(1), rng,
                                g.degree_cap_given ? g.degree_cap : 1, 0,
                                e && e->size() == 3 ? (*e)[2] : Rational(-1));
        }
        for (const auto& w : check_system_weights(s))
          if (!w.pass) throw InputError(w.tag + " violated at " + w.counterexample.dump());
        json extra = nullptr;
        if (show) {
          extra = json::object();
          if (mode != "broad") extra["narrow"] = relation_json(expand_dtral(s, DtralMode::narrow), s);
          if (mode != "narrow") extra["broad"] = relation_json(expand_dtral(s, DtralMode::broad), s);
        }
        emit({compare_dtral_modes(s)}, g, extra);
        return 0;  // exploration only: no pass/fail semantics
      };
    });
  }

  // search
  SearchOptions so;
  auto* search = app.add_subcommand("search", "search structure constants");
  search->require_subcommand(1);
  search->fallthrough();
  auto* quad = search->add_subcommand("quadratic", "quadratic brackets with small integer entries");
  quad->fallthrough();
  quad->add_option("--m", so.m, "flavor count")->capture_default_str();
  quad->add_option("--support", so.support, "max nonzero free parameters")->capture_default_str();
  quad->add_option("--budget", so.budget, "max candidates tested")->capture_default_str();
  quad->add_option("--catalog", catalog, "append solutions to this JSONL catalog");
  quad->callback([&] {
    action = [&] {
      so.seed = g.seed;
      SearchResult r = search_quadratic(so);
      int nontrivial = 0, appended = 0;
      json specs = json::array();
      for (const auto& s : r.specs) {
        if (!is_trivial(s)) ++nontrivial;
        specs.push_back(to_json(s));
        if (!catalog.empty() && catalog_append(s, {check_quadratic_relations(s)}, g.seed, catalog)) ++appended;
      }
      json summary{{"tested", r.tested},     {"exhaustive", r.exhaustive}, {"solutions", r.specs.size()},
                   {"nontrivial", nontrivial}, {"appended", appended}};
      if (!r.advisory.empty()) summary["advisory"] = r.advisory;
      if (g.format == "json") {
        std::cout << json{{"summary", summary}, {"specs", specs}}.dump(2) << "\n";
      } else {
        std::cout << summary.dump() << "\n";
        for (const auto& s : specs) std::cout << s.dump() << "\n";
      }
      return 0;
    };
  });

  // report
  auto* report = app.add_subcommand("report", "run every check that applies to a document");
  report->fallthrough();
  report->add_option("file", file, "input document")->required()->check(CLI::ExistingFile);
  report->add_option("--N", N, "color dimension for bracket checks")->capture_default_str();
  report->add_option("--catalog", catalog, "append the document and its results to this JSONL catalog");
  report->callback([&] {
    action = [&] {
      SpecValue v = parse_spec(file);
      std::vector<Task> t;
      if (auto* b = std::get_if<BracketSpec>(&v)) t = bracket_suite(*b, N, g.seed);
      if (auto* a = std::get_if<ABCDSystem>(&v)) t = abcd_suite(*a, g.seed);
      if (auto* d = std::get_if<DynSystem>(&v)) t = dyn_suite(*d);
      auto reps = run_tasks(t, effective_jobs(g.jobs));
      if (!catalog.empty()) catalog_append(v, reps, g.seed, catalog);
      return emit(reps, g);
    };
  });

  try {
    app.parse(argc, argv);
    g.degree_cap_given = cap->count() > 0;
    if (g.degree_cap < 0) throw InputError("--degree-cap must be non-negative");
    effective_jobs(g.jobs);
    return action ? action() : 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "ybx: input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ybx: error: " << e.what() << "\n";
    return 2;
  }
}
