#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dagmatch/distance.hpp"
#include "dagmatch/error.hpp"
#include "dagmatch/funnel.hpp"
#include "dagmatch/generate.hpp"
#include "dagmatch/graph.hpp"
#include "dagmatch/match.hpp"
#include "dagmatch/pattern.hpp"

using nlohmann::json;
using namespace dagmatch;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Digraph load_graph(const std::string& path) {
  return parse_graph(slurp(path));
}

LabeledDag load_dag(const std::string& path) {
  auto dag = make_labeled_dag(load_graph(path));
  if (!dag) fail(Errc::cycle_detected, "input graph has a cycle");
  return std::move(*dag);
}

struct Indices {
  PatternIndex fwd, rev;
};

Indices build_indices(const Digraph& g, const std::string& pattern) {
  Alphabet ab = g.alphabet;
  std::vector<int> codes = ab.encode_extending(pattern);
  Indices ix;
  ix.fwd = build_pattern_index(codes, ab.size());
  std::reverse(codes.begin(), codes.end());
  ix.rev = build_pattern_index(std::move(codes), ab.size());
  return ix;
}

json opt_json(const std::optional<uint64_t>& v) {
  return v ? json(*v) : json(nullptr);
}

json report_json(const MatchReport& r) {
  json j;
  j["algorithm"] = algo_name(r.algorithm);
  j["found"] = r.found;
  j["end_vertices"] = r.end_vertices;
  json we = json::array();
  for (const auto& [u, v] : r.witness_edges) we.push_back({u, v});
  j["witness_edges"] = we;
  j["params"] = {{"w", opt_json(r.params.w)},
                 {"k_s", opt_json(r.params.k_s)},
                 {"k_t", opt_json(r.params.k_t)},
                 {"k_st", opt_json(r.params.k_st)}};
  j["stats"] = {{"vertices", r.stats.vertices}, {"pi_mass", r.stats.pi_mass}};
  return j;
}

void print_report_text(const MatchReport& r) {
  std::cout << "algorithm: " << algo_name(r.algorithm) << "\n";
  std::cout << "found: " << (r.found ? "yes" : "no") << "\n";
  const char* role = r.algorithm == MatchAlgo::t_k ? "start vertices"
                     : r.algorithm == MatchAlgo::st_k ? "side-internal hits"
                                                      : "end vertices";
  std::cout << role << ":";
  for (int v : r.end_vertices) std::cout << ' ' << v;
  std::cout << "\n";
  if (r.algorithm == MatchAlgo::st_k) {
    std::cout << "crossing edges:";
    for (const auto& [u, v] : r.witness_edges)
      std::cout << ' ' << u << "->" << v;
    std::cout << "\n";
  }
  std::cout << "params:";
  if (r.params.w) std::cout << " w=" << *r.params.w;
  if (r.params.k_s) std::cout << " k_s=" << *r.params.k_s;
  if (r.params.k_t) std::cout << " k_t=" << *r.params.k_t;
  if (r.params.k_st) std::cout << " k_st=" << *r.params.k_st;
  std::cout << "\n";
  std::cout << "stats: vertices=" << r.stats.vertices
            << " pi_mass=" << r.stats.pi_mass << "\n";
}

uint64_t pick_k(const LabeledDag& dag, const std::string& algo,
                const std::optional<uint64_t>& kopt) {
  if (kopt) return *kopt;
  const ClassMinK cmk = class_min_k(dag, uint64_t(1) << 50);
  const SatValue& sv =
      algo == "sk" ? cmk.k_s : (algo == "tk" ? cmk.k_t : cmk.k_st);
  if (sv.saturated)
    fail(Errc::not_in_class,
         "class parameter exceeds the internal cap; pass --k explicitly");
  return sv.value;
}

MatchReport run_algo(const std::string& algo, const LabeledDag& dag,
                     const Indices& ix, const std::optional<uint64_t>& kopt,
                     int ps_limit) {
  if (algo == "baseline") return match_baseline(dag, ix.fwd);
  if (algo == "w") return match_w_param(dag, ix.fwd);
  if (algo == "auto") return match_auto(dag, ix.fwd, ix.rev);
  const uint64_t k = pick_k(dag, algo, kopt);
  if (algo == "sk") return match_sk(dag, ix.fwd, k);
  if (algo == "tk") return match_tk(dag, ix.rev, k);
  if (algo == "stk") return match_stk(dag, ix.fwd, ix.rev, k, ps_limit);
  fail(Errc::invalid_spec, "unknown algorithm: " + algo);
}

int run_match(const std::string& gpath, const std::string& pattern,
              const std::string& algo, const std::optional<uint64_t>& kopt,
              int ps_limit, bool as_json) {
  const LabeledDag dag = load_dag(gpath);
  const Indices ix = build_indices(dag.g, pattern);
  const MatchReport rep = run_algo(algo, dag, ix, kopt, ps_limit);
  if (as_json)
    std::cout << report_json(rep).dump(2) << "\n";
  else
    print_report_text(rep);
  return rep.found ? 0 : 1;
}

std::string sat_str(const SatValue& s, std::optional<uint64_t> cap) {
  if (s.saturated) return "> " + std::to_string(cap ? *cap : s.value);
  return std::to_string(s.value);
}

int run_analyze(const std::string& gpath, std::optional<uint64_t> cap,
                bool show_mu, bool as_json) {
  const LabeledDag dag = load_dag(gpath);
  try {
    const FunnelProfile prof = path_counts(dag, cap);
    const ClassMinK cmk = class_min_k(dag, cap);
    const uint64_t mink = min_k_funnel_search(dag);
    const bool funnel = is_funnel_graph(dag.g);
    if (as_json) {
      json j;
      j["n"] = dag.g.n;
      j["edges"] = dag.g.edges.size();
      j["sources"] = dag.sources.size();
      j["sinks"] = dag.sinks.size();
      j["is_funnel"] = funnel;
      j["min_k"] = mink;
      auto sat = [&](const SatValue& s) {
        return json{{"value", s.value}, {"saturated", s.saturated}};
      };
      j["k_s"] = sat(cmk.k_s);
      j["k_t"] = sat(cmk.k_t);
      j["k_st"] = sat(cmk.k_st);
      if (show_mu) {
        j["mu_s"] = prof.mu_s;
        j["mu_t"] = prof.mu_t;
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "n: " << dag.g.n << "\n";
      std::cout << "edges: " << dag.g.edges.size() << "\n";
      std::cout << "sources: " << dag.sources.size() << "\n";
      std::cout << "sinks: " << dag.sinks.size() << "\n";
      std::cout << "funnel: " << (funnel ? "yes" : "no") << "\n";
      std::cout << "min_k: " << mink << "\n";
      std::cout << "k_s: " << sat_str(cmk.k_s, cap) << "\n";
      std::cout << "k_t: " << sat_str(cmk.k_t, cap) << "\n";
      std::cout << "k_st: " << sat_str(cmk.k_st, cap) << "\n";
      if (show_mu)
        for (int v = 0; v < dag.g.n; ++v)
          std::cout << "mu " << v << ": " << prof.mu_s[v] << " "
                    << prof.mu_t[v] << "\n";
    }
  } catch (const Error& e) {
    if (e.code() == Errc::overflow) {
      std::cerr << e.what()
                << "\nhint: rerun with --cap N for saturating counts\n";
      return 2;
    }
    throw;
  }
  return 0;
}

int run_recognize(const std::string& gpath, const std::string& cls,
                  const std::optional<uint64_t>& kopt,
                  const std::string& method, bool as_json) {
  json j;
  j["class"] = cls;
  bool member = false;
  if (cls == "funnel" && method == "forbidden") {
    const Digraph g = load_graph(gpath);
    const bool acyclic = topological_order(g).has_value();
    const auto fp = find_minimal_forbidden_path(g);
    member = acyclic && !fp;
    j["acyclic"] = acyclic;
    if (fp) j["forbidden_path"] = *fp;
    if (!as_json) {
      std::cout << "acyclic: " << (acyclic ? "yes" : "no") << "\n";
      if (fp) {
        std::cout << "forbidden path:";
        for (int v : *fp) std::cout << ' ' << v;
        std::cout << "\n";
      }
    }
  } else {
    const LabeledDag dag = load_dag(gpath);
    if (cls == "funnel") {
      if (method != "bfs")
        fail(Errc::invalid_spec, "funnel methods: forbidden, bfs");
      const auto part = is_funnel_bfs(dag);
      member = part.has_value();
      if (part) {
        j["v1"] = part->v1.size();
        j["v2"] = part->v2.size();
        if (!as_json)
          std::cout << "partition: " << part->v1.size() << " + "
                    << part->v2.size() << "\n";
      }
    } else if (cls == "kfunnel") {
      if (!kopt) fail(Errc::invalid_spec, "kfunnel requires --k");
      j["k"] = *kopt;
      const auto witness = k_shared_witness(dag, *kopt);
      member = !witness.has_value();
      if (witness) {
        j["witness_path"] = *witness;
        if (!as_json) {
          std::cout << "shared witness:";
          for (int v : *witness) std::cout << ' ' << v;
          std::cout << "\n";
        }
      }
    } else if (cls == "sk" || cls == "tk") {
      if (!kopt) fail(Errc::invalid_spec, cls + " requires --k");
      j["k"] = *kopt;
      const ClassMinK cmk = class_min_k(dag, *kopt);
      member = cls == "sk" ? !cmk.k_s.saturated : !cmk.k_t.saturated;
    } else if (cls == "stk") {
      if (!kopt) fail(Errc::invalid_spec, "stk requires --k");
      j["k"] = *kopt;
      try {
        const Partition part = st_partition(dag, *kopt);
        member = true;
        j["v1"] = part.v1.size();
        j["v2"] = part.v2.size();
        if (!as_json)
          std::cout << "partition: " << part.v1.size() << " + "
                    << part.v2.size() << "\n";
      } catch (const Error& e) {
        if (e.code() != Errc::not_in_class) throw;
        member = false;
      }
    } else {
      fail(Errc::invalid_spec, "unknown class: " + cls);
    }
  }
  j["member"] = member;
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << "member: " << (member ? "yes" : "no") << "\n";
  return member ? 0 : 1;
}

int run_distance(const std::string& gpath, const std::string& mode_s,
                 int max_d, bool as_json) {
  const Digraph g = load_graph(gpath);
  const DeletionMode mode =
      mode_s == "edge" ? DeletionMode::edge : DeletionMode::vertex;
  const auto res = deletion_distance(g, mode, max_d);
  if (!res) {
    if (as_json)
      std::cout << json{{"mode", mode_s}, {"max_d", max_d},
                        {"exceeded", true}}
                       .dump(2)
                << "\n";
    else
      std::cout << "distance exceeds " << max_d << "\n";
    return 1;
  }
  if (as_json) {
    json j;
    j["mode"] = mode_s;
    j["d"] = res->d;
    j["deleted_vertices"] = res->deleted_vertices;
    json de = json::array();
    for (const auto& [u, v] : res->deleted_edges) de.push_back({u, v});
    j["deleted_edges"] = de;
    j["nodes_explored"] = res->nodes_explored;
    j["max_branch"] = res->max_branch;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "distance: " << res->d << "\n";
    if (mode == DeletionMode::vertex) {
      std::cout << "delete vertices:";
      for (int v : res->deleted_vertices) std::cout << ' ' << v;
      std::cout << "\n";
    } else {
      std::cout << "delete edges:";
      for (const auto& [u, v] : res->deleted_edges)
        std::cout << ' ' << u << "->" << v;
      std::cout << "\n";
    }
    std::cout << "nodes explored: " << res->nodes_explored << "\n";
  }
  return 0;
}

int run_gen(const GenSpec& spec, const std::string& out_path,
            const std::string& pattern_out) {
  const GenResult res = generate(spec);
  std::string text = serialize_graph(res.graph);
  if (res.pattern && pattern_out.empty())
    text += "# pattern " + *res.pattern + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out_path);
    f << text;
  }
  if (res.pattern && !pattern_out.empty()) {
    std::ofstream f(pattern_out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + pattern_out);
    f << *res.pattern << "\n";
  }
  return 0;
}

int run_bench(const std::string& gpath, const std::string& pattern,
              const std::string& algos_csv, const std::optional<uint64_t>& kopt,
              int reps, int ps_limit, bool as_json) {
  const LabeledDag dag = load_dag(gpath);
  const Indices ix = build_indices(dag.g, pattern);
  std::vector<std::string> algos;
  std::stringstream ss(algos_csv);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) algos.push_back(item);
  json rows = json::array();
  if (!as_json)
    std::cout << "algo,n,edges,m,param,reps,best_ms,pi_mass,found,status\n";
  for (const std::string& algo : algos) {
    std::string status = "ok", param = "-";
    double best_ms = 0.0;
    int64_t mass = 0;
    bool found = false;
    try {
      std::optional<uint64_t> k;
      if (algo == "sk" || algo == "tk" || algo == "stk") {
        k = pick_k(dag, algo, kopt);
        param = std::to_string(*k);
      } else if (algo == "w") {
        param = std::to_string(ix.fwd.leaves);
      }
      best_ms = 1e300;
      for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const MatchReport rep = run_algo(algo, dag, ix, k, ps_limit);
        const auto t1 = std::chrono::steady_clock::now();
        best_ms = std::min(
            best_ms,
            std::chrono::duration<double, std::milli>(t1 - t0).count());
        mass = rep.stats.pi_mass;
        found = rep.found;
        if (algo == "auto") param = algo_name(rep.algorithm);
      }
    } catch (const Error& e) {
      status = errc_name(e.code());
      best_ms = 0.0;
    }
    if (as_json) {
      rows.push_back({{"algo", algo},
                      {"n", dag.g.n},
                      {"edges", dag.g.edges.size()},
                      {"m", ix.fwd.m},
                      {"param", param},
                      {"reps", reps},
                      {"best_ms", best_ms},
                      {"pi_mass", mass},
                      {"found", found},
                      {"status", status}});
    } else {
      std::cout << algo << ',' << dag.g.n << ',' << dag.g.edges.size() << ','
                << ix.fwd.m << ',' << param << ',' << reps << ',' << best_ms
                << ',' << mass << ',' << (found ? 1 : 0) << ',' << status
                << "\n";
    }
  }
  if (as_json) std::cout << rows.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pattern matching and funnel analysis on vertex-labeled DAGs"};
  app.require_subcommand(1);
  int rc = 0;

  // match
  std::string m_graph, m_pattern, m_algo = "auto";
  bool m_pattern_file = false, m_json = false;
  uint64_t m_k = 0;
  int m_ps_limit = 65536;
  auto* m = app.add_subcommand("match", "match a pattern against a DAG");
  m->add_option("graph", m_graph, "graph file")->required();
  m->add_option("pattern", m_pattern, "pattern string")->required();
  m->add_flag("--pattern-file", m_pattern_file,
              "treat the pattern argument as a file path");
  m->add_option("--algo", m_algo, "baseline|w|sk|tk|stk|auto")
      ->check(CLI::IsMember({"baseline", "w", "sk", "tk", "stk", "auto"}));
  auto* m_kopt = m->add_option("--k", m_k, "class parameter override");
  m->add_option("--ps-limit", m_ps_limit,
                "maximum pattern length for the prefix-suffix table");
  m->add_flag("--json", m_json, "JSON output");
  m->callback([&] {
    const std::string pat =
        m_pattern_file ? parse_pattern(slurp(m_pattern)) : m_pattern;
    rc = run_match(m_graph, pat, m_algo,
                   m_kopt->count() ? std::optional<uint64_t>(m_k)
                                   : std::nullopt,
                   m_ps_limit, m_json);
  });

  // analyze
  std::string a_graph;
  uint64_t a_cap = 0;
  bool a_json = false, a_mu = false;
  auto* a = app.add_subcommand("analyze", "path-count and class analysis");
  a->add_option("graph", a_graph, "graph file")->required();
  auto* a_capopt =
      a->add_option("--cap", a_cap, "saturate path counts at this value");
  a->add_flag("--mu", a_mu, "print per-vertex path counts");
  a->add_flag("--json", a_json, "JSON output");
  a->callback([&] {
    rc = run_analyze(a_graph,
                     a_capopt->count() ? std::optional<uint64_t>(a_cap)
                                       : std::nullopt,
                     a_mu, a_json);
  });

  // recognize
  std::string r_graph, r_class = "funnel", r_method = "forbidden";
  uint64_t r_k = 0;
  bool r_json = false;
  auto* r = app.add_subcommand("recognize", "class membership tests");
  r->add_option("graph", r_graph, "graph file")->required();
  r->add_option("--class", r_class, "funnel|kfunnel|sk|tk|stk")
      ->check(CLI::IsMember({"funnel", "kfunnel", "sk", "tk", "stk"}));
  auto* r_kopt = r->add_option("--k", r_k, "class parameter");
  r->add_option("--method", r_method,
                "funnel recognizer: forbidden|bfs (kfunnel always: shared)");
  r->add_flag("--json", r_json, "JSON output");
  r->callback([&] {
    rc = run_recognize(r_graph, r_class,
                       r_kopt->count() ? std::optional<uint64_t>(r_k)
                                       : std::nullopt,
                       r_method, r_json);
  });

  // distance
  std::string d_graph, d_mode = "vertex";
  int d_max = 8;
  bool d_json = false;
  auto* d = app.add_subcommand("distance", "deletion distance to a funnel");
  d->add_option("graph", d_graph, "graph file")->required();
  d->add_option("--mode", d_mode, "vertex|edge")
      ->check(CLI::IsMember({"vertex", "edge"}));
  d->add_option("--max-d", d_max, "give up beyond this distance");
  d->add_flag("--json", d_json, "JSON output");
  d->callback([&] { rc = run_distance(d_graph, d_mode, d_max, d_json); });

  // gen
  std::string g_kind = "random-dag", g_base = "random-dag", g_pattern;
  std::string g_out, g_pattern_out;
  int g_n = 10, g_k = 2, g_sigma = 2, g_plant = 0;
  double g_p = 0.25;
  uint64_t g_seed = 0;
  auto* ge = app.add_subcommand("gen", "write a generated graph file");
  ge->add_option("--kind", g_kind,
                 "path|out-tree|in-tree|diamond|butterfly|fan|random-dag|"
                 "planted-match");
  ge->add_option("--n", g_n, "vertex count");
  ge->add_option("--k", g_k, "fan width");
  ge->add_option("--p", g_p, "edge probability (random-dag)");
  ge->add_option("--sigma", g_sigma, "alphabet size");
  ge->add_option("--seed", g_seed, "rng seed");
  ge->add_option("--base", g_base, "base kind for planted-match");
  ge->add_option("--pattern", g_pattern, "pattern to plant");
  ge->add_option("--plant-len", g_plant, "random pattern length to plant");
  ge->add_option("-o,--out", g_out, "output file (default stdout)");
  ge->add_option("--pattern-out", g_pattern_out, "write the pattern here");
  ge->callback([&] {
    GenSpec spec;
    const auto kind = gen_kind_from_name(g_kind);
    if (!kind) fail(Errc::invalid_spec, "unknown kind: " + g_kind);
    spec.kind = *kind;
    const auto base = gen_kind_from_name(g_base);
    if (!base) fail(Errc::invalid_spec, "unknown base kind: " + g_base);
    spec.base_kind = *base;
    spec.n = g_n;
    spec.k = g_k;
    spec.edge_prob = g_p;
    spec.sigma = g_sigma;
    spec.seed = g_seed;
    spec.pattern = g_pattern;
    spec.plant_len = g_plant;
    rc = run_gen(spec, g_out, g_pattern_out);
  });

  // bench
  std::string b_graph, b_pattern, b_algos = "baseline,w";
  bool b_pattern_file = false, b_json = false;
  uint64_t b_k = 0;
  int b_reps = 3, b_ps_limit = 65536;
  auto* b = app.add_subcommand("bench", "time matching algorithms");
  b->add_option("graph", b_graph, "graph file")->required();
  b->add_option("pattern", b_pattern, "pattern string")->required();
  b->add_flag("--pattern-file", b_pattern_file,
              "treat the pattern argument as a file path");
  b->add_option("--algos", b_algos, "comma-separated algorithm list");
  auto* b_kopt = b->add_option("--k", b_k, "class parameter override");
  b->add_option("--reps", b_reps, "repetitions; best time wins");
  b->add_option("--ps-limit", b_ps_limit,
                "maximum pattern length for the prefix-suffix table");
  b->add_flag("--json", b_json, "JSON output");
  b->callback([&] {
    const std::string pat =
        b_pattern_file ? parse_pattern(slurp(b_pattern)) : b_pattern;
    rc = run_bench(b_graph, pat, b_algos,
                   b_kopt->count() ? std::optional<uint64_t>(b_k)
                                   : std::nullopt,
                   b_reps, b_ps_limit, b_json);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
