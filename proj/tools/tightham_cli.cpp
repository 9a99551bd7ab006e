#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "tightham/absorb.hpp"
#include "tightham/connect.hpp"
#include "tightham/constructions.hpp"
#include "tightham/errors.hpp"
#include "tightham/io.hpp"
#include "tightham/oracle.hpp"
#include "tightham/pipeline.hpp"
#include "tightham/robust.hpp"

using namespace tightham;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, stage_failure = 2, input_error = 3, budget = 4 };

std::string load(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") std::cout << text;
  else write_file(out, text);
}

std::string big(const BigCount& c) { return c.str(); }

struct Common {
  bool as_json = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tight Hamiltonian cycles in 3-uniform hypergraphs"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.as_json, "machine-readable output");
  int code = Exit::ok;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a hypergraph (.h3)");
  std::string gen_family = "random", gen_kind = "i", gen_out;
  int gen_n = 20;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 1;
  gen->add_option("family", gen_family, "complete | random | extremal")->check(CLI::IsMember({"complete", "random", "extremal"}));
  gen->add_option("-n,--n", gen_n, "vertices")->required();
  gen->add_option("-p,--p", gen_p, "edge probability");
  gen->add_option("--kind", gen_kind, "extremal kind i | ii | iii");
  gen->add_option("--seed", gen_seed);
  gen->add_option("-o,--out", gen_out, "output file");
  gen->callback([&] {
    Hypergraph3 h = gen_family == "complete" ? complete_hypergraph(gen_n)
                    : gen_family == "random" ? random_hypergraph(gen_n, gen_p, gen_seed)
                                             : extremal_example(parse_kind(gen_kind), gen_n);
    emit(serialize_h3(h), gen_out);
  });

  // solve-exact
  auto* exact = app.add_subcommand("solve-exact", "exhaustive tight Hamiltonian cycle search");
  std::string exact_in, exact_out;
  double exact_mb = 1024;
  exact->add_option("input", exact_in, ".h3 file or -")->required();
  exact->add_option("--memory-mb", exact_mb, "DP table budget");
  exact->add_option("-o,--out", exact_out, "cycle file");
  exact->callback([&] {
    Hypergraph3 h = parse_h3(load(exact_in));
    ExactOptions opts;
    opts.memory_budget_bytes = static_cast<std::size_t>(exact_mb * 1024 * 1024);
    auto r = find_tight_ham_cycle(h, opts);
    if (common.as_json) {
      json j{{"status", to_string(r.status)}, {"states", r.states}};
      if (r.cycle) j["cycle"] = r.cycle->seq();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << to_string(r.status) << "\n";
    }
    if (r.cycle && !exact_out.empty()) write_file(exact_out, serialize_cycle(r.cycle->seq()));
    else if (r.cycle && !common.as_json) std::cout << serialize_cycle(r.cycle->seq());
    code = r.status == SearchStatus::found ? Exit::ok : r.status == SearchStatus::none ? Exit::stage_failure : Exit::budget;
  });

  // solve-absorb and report share the pipeline options
  PipelineConfig pc;
  std::string mode = "desk", absorb_in, absorb_out;
  auto pipeline_options = [&](CLI::App* sub) {
    sub->add_option("input", absorb_in, ".h3 file or -")->required();
    sub->add_option("--mode", mode)->check(CLI::IsMember({"desk", "faithful"}));
    sub->add_option("--seed", pc.seed);
    sub->add_option("--alpha", pc.alpha);
    sub->add_option("--beta", pc.beta);
    sub->add_option("--ell", pc.ell);
    sub->add_option("--zeta-star", pc.zeta_star);
    sub->add_option("--zeta-2star", pc.zeta_2star);
    sub->add_option("--theta-star", pc.theta_star);
    sub->add_option("--theta-2star", pc.theta_2star);
    sub->add_option("--M", pc.M);
    sub->add_option("--m", pc.m);
    sub->add_option("--min-n", pc.min_n);
    sub->add_option("--attempts", pc.attempts);
    sub->add_option("--budget", pc.longpath_budget, "long path search nodes");
    sub->add_option("--connect-budget", pc.connect_budget);
  };
  auto run = [&](bool report_only) {
    pc.mode = mode == "faithful" ? LongPathMode::faithful : LongPathMode::desk;
    Hypergraph3 h = parse_h3(load(absorb_in));
    HamResult r = run_pipeline(h, pc);
    if (common.as_json || report_only) {
      std::cout << to_json(r) << "\n";
    } else if (r.ok()) {
      std::cout << "cycle (certificate " << r.certificate.detail << ")\n";
    } else {
      std::cout << "stage failure at " << r.failed_stage << ": " << r.diagnosis << "\n";
    }
    if (r.ok()) {
      if (!absorb_out.empty()) write_file(absorb_out, serialize_cycle(r.cycle));
      else if (!common.as_json && !report_only) std::cout << serialize_cycle(r.cycle);
    }
    code = r.ok() ? Exit::ok : Exit::stage_failure;
  };
  auto* solve = app.add_subcommand("solve-absorb", "run the absorption pipeline");
  pipeline_options(solve);
  solve->add_option("-o,--out", absorb_out, "cycle file");
  solve->callback([&] { run(false); });
  auto* report = app.add_subcommand("report", "run the pipeline and print the JSON stage report");
  pipeline_options(report);
  report->callback([&] { run(true); });

  // robust
  auto* robust = app.add_subcommand("robust", "robust subgraph of a link graph");
  std::string robust_in;
  int robust_v = 0, robust_ell = 3;
  double robust_alpha = 0.2, robust_beta = 0;
  robust->add_option("input", robust_in, ".h3 file or -")->required();
  robust->add_option("--vertex", robust_v);
  robust->add_option("--alpha", robust_alpha);
  robust->add_option("--beta", robust_beta, "also measure robustness when positive");
  robust->add_option("--ell", robust_ell);
  robust->callback([&] {
    Hypergraph3 h = parse_h3(load(robust_in));
    if (robust_v < 0 || robust_v >= h.n()) throw PreconditionError("vertex out of range");
    auto c = extract_robust_subgraph(h.link_graph(robust_v), robust_alpha);
    json j{{"vertex", robust_v},      {"link_edges", h.link_graph(robust_v).edge_count()},
           {"U", c.U.to_vector()},    {"edges", c.R.edge_count()},
           {"peeled", c.peeled},      {"split_peeled", c.split_peeled},
           {"parts", c.partition.size()}, {"crossing", c.crossing_edges()},
           {"trace", c.trace}};
    if (robust_beta > 0 && c.R.order() > 1) {
      auto rep = check_robust(c.R, robust_beta, robust_ell);
      j["beta_observed"] = rep.beta_observed;
      j["robust"] = rep.robust;
      j["inseparable"] = to_string(rep.inseparable.status);
    }
    if (common.as_json) std::cout << j.dump(2) << "\n";
    else
      std::cout << "R_" << robust_v << ": " << c.U.count() << " vertices, " << c.R.edge_count() << " edges, "
                << c.peeled.size() << " peeled, crossing " << c.crossing_edges() << "\n";
  });

  // absorbers
  auto* absorbers = app.add_subcommand("absorbers", "central edges and v-absorbers");
  std::string abs_in;
  int abs_v = 0;
  std::size_t abs_limit = 5;
  double abs_alpha = 0.2, abs_zeta = 0.25;
  absorbers->add_option("input", abs_in, ".h3 file or -")->required();
  absorbers->add_option("--vertex", abs_v);
  absorbers->add_option("--limit", abs_limit);
  absorbers->add_option("--alpha", abs_alpha);
  absorbers->add_option("--zeta-star", abs_zeta);
  absorbers->callback([&] {
    Hypergraph3 h = parse_h3(load(abs_in));
    if (abs_v < 0 || abs_v >= h.n()) throw PreconditionError("vertex out of range");
    auto fam = RobustFamily::from_hypergraph(h, abs_alpha);
    auto central = central_edges(h);
    auto absorbable = absorbable_vertices(h, fam, abs_zeta, 1e-3);
    auto found = find_v_absorbers(h, fam, abs_v, abs_zeta, abs_limit);
    json tuples = json::array();
    for (const auto& t : found) tuples.push_back(t.as_array());
    json j{{"central_edges", central.size()}, {"absorbable", absorbable.count()}, {"vertex", abs_v}, {"absorbers", tuples}};
    if (common.as_json) std::cout << j.dump(2) << "\n";
    else
      std::cout << central.size() << " central edges, " << absorbable.count() << " absorbable vertices, "
                << found.size() << " absorbers for " << abs_v << "\n";
  });

  // count-paths
  auto* cp = app.add_subcommand("count-paths", "paths and walks between two vertices of a graph (.g2)");
  std::string cp_in;
  int cp_x = 0, cp_y = 1, cp_len = 3;
  cp->add_option("input", cp_in, ".g2 file or -")->required();
  cp->add_option("--from", cp_x);
  cp->add_option("--to", cp_y);
  cp->add_option("--len", cp_len);
  cp->callback([&] {
    Graph g = parse_g2(load(cp_in));
    auto p = count_paths(g, cp_x, cp_y, cp_len);
    auto w = count_walks(g, cp_x, cp_y, cp_len);
    if (common.as_json) std::cout << json{{"paths", big(p)}, {"walks", big(w)}}.dump(2) << "\n";
    else std::cout << "paths " << big(p) << "\nwalks " << big(w) << "\n";
  });

  // matching
  auto* mt = app.add_subcommand("matching", "maximum matching size of a hypergraph");
  std::string mt_in;
  mt->add_option("input", mt_in, ".h3 file or -")->required();
  mt->callback([&] {
    auto r = max_matching_size(parse_h3(load(mt_in)));
    if (common.as_json) std::cout << json{{"size", r.size}, {"exact", r.exact}}.dump(2) << "\n";
    else std::cout << r.size << (r.exact ? "" : " (lower bound)") << "\n";
  });

  // longest-path
  auto* lp = app.add_subcommand("longest-path", "edge-length of a longest path of a graph (.g2)");
  std::string lp_in;
  lp->add_option("input", lp_in, ".g2 file or -")->required();
  lp->callback([&] {
    int len = longest_path(parse_g2(load(lp_in)));
    if (common.as_json) std::cout << json{{"vertices", len}}.dump(2) << "\n";
    else std::cout << len << "\n";
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check a cycle file against a hypergraph");
  std::string v_graph, v_cycle;
  verify->add_option("graph", v_graph, ".h3 file")->required();
  verify->add_option("cycle", v_cycle, "cycle file")->required();
  verify->callback([&] {
    Hypergraph3 h = parse_h3(load(v_graph));
    auto c = certify_cycle(h, parse_cycle(load(v_cycle)));
    if (common.as_json) std::cout << json{{"accepted", c.accepted}, {"detail", c.detail}}.dump(2) << "\n";
    else std::cout << (c.accepted ? "accepted" : "rejected: " + c.detail) << "\n";
    code = c.accepted ? Exit::ok : Exit::stage_failure;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : Exit::input_error;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return Exit::input_error;
  } catch (const PreconditionError& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return Exit::input_error;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return Exit::budget;
  } catch (const StageFailure& e) {
    std::cerr << "stage failure at " << e.stage() << ": " << e.what() << "\n";
    return Exit::stage_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::input_error;
  }
  return code;
}
