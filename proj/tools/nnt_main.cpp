#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "nnt/error.hpp"
#include "nnt/evaluator.hpp"
#include "nnt/generators.hpp"
#include "nnt/instance_io.hpp"
#include "nnt/netmodel.hpp"
#include "nnt/reductions.hpp"
#include "nnt/solvers.hpp"
#include "nnt/sources.hpp"

namespace {

using namespace nnt;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(Errc::parse, "cannot write '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_instance_stats(const Instance& inst) {
  std::size_t v = 1 + inst.network.hidden.size() + inst.network.outputs.size();
  std::cout << "vertices: " << v << "\n";
  std::cout << "edges: " << inst.network.edges.size() << "\n";
  std::cout << "outputs: " << inst.network.outputs.size() << "\n";
  std::cout << "depth: " << inst.topo.depth << "\n";
  std::cout << "width: " << inst.topo.width << "\n";
  std::cout << "points: " << inst.dataset.points.size() << "\n";
  if (const auto* cp = std::get_if<CnntProbe>(&inst.loss)) {
    std::cout << "probes: " << cp->probes.size() << "\n";
    std::cout << "wrap_exponent: " << cp->wrap_exponent << "\n";
  }
  std::cout << "gamma: " << inst.gamma.str() << "\n";
  // The value bound only exists for shapes the dynamic program accepts.
  try {
    ValueBound b = compute_bound(inst);
    std::cout << "w_max: " << b.w_max.get_str() << "\n";
    std::cout << "bound_m: " << b.bound_m.get_str() << "\n";
  } catch (const Error& e) {
    if (e.code() != Errc::precondition) throw;
  }
}

// Problem names are accepted with hyphens or underscores; files always use
// the underscored form.
std::string canonical_problem(std::string name) {
  for (char& c : name)
    if (c == '-') c = '_';
  return name;
}

const char* source_kind(const SourceProblem& src) {
  if (std::holds_alternative<SubsetSumInstance>(src)) return "subset_sum";
  if (std::holds_alternative<CspInstance>(src)) return "csp";
  if (std::holds_alternative<ExactCoverInstance>(src)) return "exact_cover";
  return "slp";
}

Instance reduce_source(const SourceProblem& src) {
  if (const auto* ss = std::get_if<SubsetSumInstance>(&src))
    return subset_sum_to_dnnt(*ss);
  if (const auto* csp = std::get_if<CspInstance>(&src)) return csp_to_dnnt(*csp);
  if (const auto* ec = std::get_if<ExactCoverInstance>(&src))
    return exact_cover_to_dnnt(*ec);
  return slp_to_dnnt(std::get<Slp>(src));
}

int cmd_gen(const std::string& problem_flag, const std::string& in,
            bool random, std::uint64_t seed, const std::string& out,
            std::size_t n, unsigned long max_value, std::size_t vertices,
            std::size_t alphabet, std::size_t constraints,
            std::size_t universe, std::size_t sets, std::size_t cover,
            std::size_t length, std::size_t dims, std::size_t units,
            std::size_t points, std::uint64_t cap) {
  std::string problem = canonical_problem(problem_flag);

  Instance inst;
  if (!in.empty()) {
    if (problem == "two_layer")
      throw Error(Errc::parse,
                  "two-layer instances are generated directly; there is no "
                  "source-file form");
    SourceProblem src = parse_source(read_text(in));
    if (problem != source_kind(src))
      throw Error(Errc::parse, "'" + in + "' holds a " +
                                   std::string(source_kind(src)) +
                                   " problem, not " + problem);
    inst = reduce_source(src);
  } else {
    if (!random)
      throw Error(Errc::parse,
                  "need --in <source file> or --random with a recipe");
    std::string recipe;
    if (problem == "two_layer") {
      inst = random_two_layer(seed, dims, units, points, cap);
    } else if (problem == "subset_sum") {
      recipe = "subset_sum n=" + std::to_string(n) +
               " max=" + std::to_string(max_value);
      inst = reduce_source(random_subset_sum(seed, n, max_value));
    } else if (problem == "csp") {
      recipe = "csp vertices=" + std::to_string(vertices) +
               " alphabet=" + std::to_string(alphabet) +
               " constraints=" + std::to_string(constraints);
      inst = reduce_source(random_csp(seed, vertices, alphabet, constraints));
    } else if (problem == "exact_cover") {
      recipe = "exact_cover universe=" + std::to_string(universe) +
               " sets=" + std::to_string(sets) + " k=" + std::to_string(cover);
      inst = reduce_source(random_exact_cover(seed, universe, sets, cover));
    } else if (problem == "slp") {
      recipe = "slp len=" + std::to_string(length);
      inst = reduce_source(random_slp(seed, length,
                                      OracleOptions().digit_budget));
    } else {
      throw Error(Errc::parse, "unknown problem '" + problem_flag + "'");
    }
    if (!inst.provenance) inst.provenance = Provenance{seed, recipe};
  }

  write_text(out, serialize_instance(inst));
  if (inst.provenance) {
    std::cout << "seed: " << inst.provenance->seed << "\n";
    std::cout << "recipe: " << inst.provenance->recipe << "\n";
  }
  print_instance_stats(inst);
  std::cout << "wrote: " << out << "\n";
  return 0;
}

int cmd_reduce(const std::string& in, const std::string& out) {
  std::string text = read_text(in);
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::parse, std::string("input is not valid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("problem"))
    throw Error(Errc::parse,
                "input is a source problem; run gen to build the network "
                "instance first");

  Instance cont = dnnt_to_cnnt(parse_instance(text));
  write_text(out, serialize_instance(cont));
  print_instance_stats(cont);
  std::cout << "wrote: " << out << "\n";
  return 0;
}

int cmd_solve(const std::string& in, const std::string& method,
              std::uint64_t budget_flag, bool serial, bool scale,
              const std::string& witness_flag) {
  Instance inst = load_instance(in);
  SolveOptions opts;
  if (budget_flag) opts.budget = budget_flag;
  opts.serial = serial;

  const Instance* target = &inst;
  Instance scaled;
  std::uint32_t p = 0, q = 0, r = 0;
  if (scale) {
    scaled = scale_to_naturals(inst, p, q, r);
    target = &scaled;
    std::cout << "scaled: p=" << p << " q=" << q << " r=" << r << "\n";
  }

  SolveResult res;
  if (method == "brute") {
    res = brute_force(*target, opts);
  } else if (method == "dp") {
    res = dp_solve(*target, opts);
  } else {
    throw Error(Errc::parse, "unknown method '" + method + "'");
  }

  Assignment witness = *res.witness;
  ExactDec loss = res.loss;
  if (scale) {
    witness = unscale_assignment(witness, inst, p, q, r);
    loss = total_loss(inst, witness);
    bool original_decision = loss <= inst.gamma;
    if (original_decision != res.decision)
      throw Error(Errc::evaluation,
                  "scaling changed the decision; this is a bug");
  }

  std::cout << "method: " << method << "\n";
  std::cout << "decision: " << (res.decision ? "yes" : "no") << "\n";
  std::cout << "loss: " << loss.str() << "\n";
  std::cout << "gamma: " << inst.gamma.str() << "\n";
  if (method == "brute") {
    std::cout << "candidates: " << res.stats.candidates << "\n";
  } else {
    std::cout << "dim_entries: " << res.stats.dim_entries << "\n";
    std::cout << "final_entries: " << res.stats.final_entries << "\n";
    std::cout << "w_max: " << res.stats.w_max.get_str() << "\n";
    std::cout << "bound_m: " << res.stats.bound_m.get_str() << "\n";
  }

  if (res.decision) {
    std::string wpath = witness_flag;
    if (wpath.empty()) {
      std::filesystem::path p(in);
      p.replace_extension();
      p += ".theta.json";
      wpath = p.string();
    }
    write_text(wpath, serialize_assignment(witness, inst));
    std::cout << "witness: " << wpath << "\n";
  } else if (!witness_flag.empty()) {
    std::cout << "witness: none (decision is no)\n";
  }
  return res.decision ? 0 : 1;
}

int cmd_eval(const std::string& in, const std::string& witness_path,
             bool extract) {
  Instance inst = load_instance(in);
  Assignment theta = load_assignment(witness_path);
  if (!membership(theta, inst))
    throw Error(Errc::membership, "witness values leave the parameter space");
  std::cout << "membership: yes\n";
  ExactDec loss = total_loss(inst, theta);
  bool decision = loss <= inst.gamma;
  std::cout << "loss: " << loss.str() << "\n";
  std::cout << "gamma: " << inst.gamma.str() << "\n";
  std::cout << "decision: " << (decision ? "yes" : "no") << "\n";
  if (extract) {
    if (!inst.source_problem)
      throw Error(Errc::precondition, "instance carries no source problem");
    std::vector<std::size_t> picked;
    if (std::holds_alternative<SubsetSumInstance>(*inst.source_problem)) {
      picked = extract_subset_sum(theta, inst);
    } else if (std::holds_alternative<CspInstance>(*inst.source_problem)) {
      picked = extract_csp(theta, inst);
    } else if (std::holds_alternative<ExactCoverInstance>(*inst.source_problem)) {
      picked = extract_exact_cover(theta, inst);
    } else {
      throw Error(Errc::precondition, "no extraction for program sources");
    }
    std::cout << "extracted:";
    for (std::size_t v : picked) std::cout << " " << v;
    std::cout << "\n";
  }
  return decision ? 0 : 1;
}

struct VerifyLine {
  std::string text;
  bool bad = false;
};

VerifyLine verify_one(const std::string& path, const SolveOptions& opts) {
  VerifyLine line;
  try {
    Instance inst = load_instance(path);
    if (inst.kind == Kind::continuous) {
      line.text = "skipped (continuous)";
      return line;
    }
    SolveResult brute = brute_force(inst, opts);
    std::string decision = brute.decision ? "yes" : "no";

    if (inst.source_problem) {
      OracleOptions oopts;
      oopts.enum_budget = opts.budget;
      OracleResult oracle = oracle_decide(*inst.source_problem, oopts);
      if (oracle.decision != brute.decision) {
        line.text = "mismatch (oracle says " +
                    std::string(oracle.decision ? "yes" : "no") +
                    ", search says " + decision + ")";
        line.bad = true;
        return line;
      }
    }

    bool dp_ran = false;
    try {
      SolveResult dp = dp_solve(inst, opts);
      dp_ran = true;
      if (dp.decision != brute.decision || dp.loss != brute.loss) {
        line.text = "mismatch (dynamic program loss " + dp.loss.str() +
                    ", search loss " + brute.loss.str() + ")";
        line.bad = true;
        return line;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::precondition) throw;
    }

    line.text = "ok (" + decision + (dp_ran ? ", both solvers" : "") + ")";
  } catch (const Error& e) {
    if (e.code() == Errc::budget) {
      line.text = "skipped (budget)";
    } else {
      line.text = std::string("error (") + e.what() + ")";
      line.bad = true;
    }
  } catch (const std::exception& e) {
    line.text = std::string("error (") + e.what() + ")";
    line.bad = true;
  }
  return line;
}

int cmd_verify(const std::string& corpus, std::uint64_t budget_flag) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus))
    throw Error(Errc::parse, "'" + corpus + "' is not a directory");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == ".json" || ext == ".nnt") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());

  SolveOptions opts;
  if (budget_flag) opts.budget = budget_flag;

  std::vector<VerifyLine> lines(files.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(files.size()); ++i)
    lines[i] = verify_one(files[i], opts);

  std::size_t bad = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::cout << fs::path(files[i]).filename().string() << ": "
              << lines[i].text << "\n";
    if (lines[i].bad) ++bad;
  }
  std::cout << "checked: " << files.size() << ", failures: " << bad << "\n";
  return bad == 0 ? 0 : 1;
}

// Flags and positionals both name the same file; exactly one must be given.
std::string pick_path(const std::string& flag_value,
                      const std::string& positional, const char* what) {
  if (!flag_value.empty() && !positional.empty())
    throw Error(Errc::parse, std::string(what) + " given both as a flag and "
                                                 "as a positional argument");
  if (flag_value.empty() && positional.empty())
    throw Error(Errc::parse, std::string("missing ") + what);
  return flag_value.empty() ? positional : flag_value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for discrete neural-network training decisions"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand(
      "gen", "build a network instance from a source problem or a recipe");
  std::string gen_problem, gen_in, gen_out;
  bool gen_random = false;
  std::uint64_t gen_seed = 1;
  std::size_t gen_n = 8;
  unsigned long gen_max_value = 50;
  std::size_t gen_vertices = 4, gen_alphabet = 3, gen_constraints = 5;
  std::size_t gen_universe = 6, gen_sets = 5, gen_cover = 2;
  std::size_t gen_length = 8;
  std::size_t gen_dims = 2, gen_units = 2, gen_points = 2;
  std::uint64_t gen_cap = 20000;
  gen->add_option("--problem", gen_problem,
                  "subset-sum | csp | exact-cover | slp | two-layer")
      ->required();
  auto* gen_in_opt =
      gen->add_option("--in", gen_in, "source problem file to reduce");
  auto* gen_rand_opt =
      gen->add_flag("--random", gen_random, "draw a seeded random problem");
  gen_in_opt->excludes(gen_rand_opt);
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output instance file")->required();
  gen->add_option("--n", gen_n, "subset sum: item count");
  gen->add_option("--max-value", gen_max_value, "subset sum: largest item");
  gen->add_option("--vertices", gen_vertices, "csp: vertex count");
  gen->add_option("--alphabet", gen_alphabet, "csp: alphabet size");
  gen->add_option("--constraints", gen_constraints, "csp: constraint count");
  gen->add_option("--universe", gen_universe, "exact cover: universe size");
  gen->add_option("--sets", gen_sets, "exact cover: set count");
  gen->add_option("--k", gen_cover, "exact cover: cover size");
  gen->add_option("--len,--length", gen_length, "slp: instruction count");
  gen->add_option("--d", gen_dims, "two-layer: input dimension");
  gen->add_option("--units", gen_units, "two-layer: hidden unit count");
  gen->add_option("--points", gen_points, "two-layer: data point count");
  gen->add_option("--cap", gen_cap, "two-layer: candidate cap");

  // reduce
  auto* reduce = app.add_subcommand(
      "reduce", "apply the discrete-to-continuous construction");
  std::string red_in, red_in_pos, red_out;
  reduce->add_option("--in", red_in, "discrete instance file");
  reduce->add_option("instance", red_in_pos, "discrete instance file");
  reduce->add_option("--out", red_out, "output instance file")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "decide an instance exactly");
  std::string sol_in, sol_in_pos, sol_method = "brute", sol_witness;
  std::uint64_t sol_budget = 0;
  bool sol_serial = false, sol_scale = false;
  solve->add_option("--in", sol_in, "instance file");
  solve->add_option("instance", sol_in_pos, "instance file");
  solve->add_option("--method", sol_method, "brute | dp");
  solve->add_option("--budget", sol_budget,
                    "candidate/table cap (default from NNT_ENUM_BUDGET)");
  solve->add_flag("--serial", sol_serial, "force the serial reference path");
  solve->add_flag("--scale", sol_scale, "rescale decimals to naturals first");
  solve->add_option("--witness-out", sol_witness,
                    "witness path (default: <instance>.theta.json)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a witness on an instance");
  std::string ev_in, ev_in_pos, ev_witness, ev_witness_pos;
  bool ev_extract = false;
  eval->add_option("--in", ev_in, "instance file");
  eval->add_option("--witness", ev_witness, "witness file");
  eval->add_option("instance", ev_in_pos, "instance file");
  eval->add_option("theta", ev_witness_pos, "witness file");
  eval->add_flag("--extract", ev_extract,
                 "also extract the source-problem solution");

  // lift
  auto* lift = app.add_subcommand(
      "lift", "extend a discrete witness to the continuous construction");
  std::string lift_in, lift_witness, lift_out;
  lift->add_option("--in", lift_in, "discrete instance file")->required();
  lift->add_option("--witness", lift_witness, "discrete witness file")
      ->required();
  lift->add_option("--out", lift_out, "lifted witness file")->required();

  // verify
  auto* verify = app.add_subcommand(
      "verify", "cross-check every instance in a directory");
  std::string ver_corpus;
  std::uint64_t ver_budget = 0;
  verify->add_option("--corpus", ver_corpus, "directory of instance files")
      ->required();
  verify->add_option("--budget", ver_budget, "candidate/table cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen)
      return cmd_gen(gen_problem, gen_in, gen_random, gen_seed, gen_out,
                     gen_n, gen_max_value, gen_vertices, gen_alphabet,
                     gen_constraints, gen_universe, gen_sets, gen_cover,
                     gen_length, gen_dims, gen_units, gen_points, gen_cap);
    if (*reduce)
      return cmd_reduce(pick_path(red_in, red_in_pos, "instance file"),
                        red_out);
    if (*solve)
      return cmd_solve(pick_path(sol_in, sol_in_pos, "instance file"),
                       sol_method, sol_budget, sol_serial, sol_scale,
                       sol_witness);
    if (*eval)
      return cmd_eval(pick_path(ev_in, ev_in_pos, "instance file"),
                      pick_path(ev_witness, ev_witness_pos, "witness file"),
                      ev_extract);
    if (*lift) {
      Instance inst = load_instance(lift_in);
      Instance cont = dnnt_to_cnnt(inst);
      Assignment lifted =
          lift_assignment(load_assignment(lift_witness), inst, cont);
      write_text(lift_out, serialize_assignment(lifted, cont));
      std::cout << "wrote: " << lift_out << "\n";
      return 0;
    }
    if (*verify) return cmd_verify(ver_corpus, ver_budget);
  } catch (const nnt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
