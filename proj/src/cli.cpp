#include "aqubo/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "aqubo/errors.hpp"
#include "aqubo/formula.hpp"
#include "aqubo/generators.hpp"
#include "aqubo/graph.hpp"
#include "aqubo/hc.hpp"
#include "aqubo/qubo.hpp"
#include "aqubo/sat.hpp"
#include "aqubo/solvers.hpp"

namespace aqubo::cli {

namespace {

/// Failure that maps straight to an exit code.
struct CommandFailure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandFailure{kInputError, "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandFailure{kInputError, "cannot write '" + path + "'"};
  out << content;
}

std::string bits_to_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::optional<Bits> bits_from_string(const std::string& s) {
  if (s.empty() || s.find_first_not_of("01") != std::string::npos) {
    return std::nullopt;
  }
  Bits bits;
  for (char c : s) bits.push_back(c == '1');
  return bits;
}

/// Accepts a literal bitstring, a file holding one, or a solve report.
Bits load_solution(const std::string& arg) {
  if (!std::filesystem::exists(arg)) {
    if (auto bits = bits_from_string(arg)) return *bits;
    throw CommandFailure{kInputError, "cannot open solution '" + arg + "'"};
  }
  std::istringstream in(read_file(arg));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string first, second;
    fields >> first >> second;
    if (first == "vector") first = second;
    if (auto bits = bits_from_string(first)) return *bits;
  }
  throw CommandFailure{kInputError, "no solution vector in '" + arg + "'"};
}

std::string first_token_pair(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a)) continue;
    if (a == "c") continue;
    fields >> b;
    return a + " " + b;
  }
  return {};
}

int sat_build(const std::string& cnf_path, const std::string& out_path,
              std::ostream& out) {
  const auto formula = sat::parse_dimacs(read_file(cnf_path));
  const auto comp = sat::compile(formula);
  const auto predicted = sat::predicted_dimension(formula);
  out << "n=" << comp.qubo.size() << " predicted=" << predicted << '\n';
  if (predicted != comp.qubo.size()) {
    throw CommandFailure{kVerificationFailure,
                         "internal failure: dimension disagrees with r(k) prediction"};
  }
  write_file(out_path, serialize(comp.qubo, comp.registry));
  std::ostringstream map;
  sat::write_ancilla_map(map, comp);
  write_file(out_path + ".map", map.str());
  return kSuccess;
}

int hc_build(const std::string& graph_path, const std::string& out_path,
             const std::string& baseline, std::ostream& out) {
  const auto graph = hc::parse_graph(read_file(graph_path));
  if (baseline == "lucas") {
    const auto comp = hc::lucas_compile(graph);
    out << "n=" << comp.qubo.size() << '\n';
    write_file(out_path, serialize(comp.qubo, comp.registry));
    return kSuccess;
  }
  const auto comp = hc::compile(graph);
  out << "n=" << comp.qubo.size() << " bound=" << hc::dimension_bound(graph)
      << " optimum=" << hc::optimal_energy(graph.vertex_count()) << '\n';
  write_file(out_path, serialize(comp.qubo, comp.registry));
  return kSuccess;
}

struct SolveOptions {
  std::string method = "auto";
  std::uint64_t seed = 0;
  std::uint32_t sweeps = SaParams{}.sweeps;
  std::uint32_t restarts = SaParams{}.restarts;
  std::size_t limit = kDefaultExhaustiveLimit;
  std::uint32_t threads = 1;
};

int solve(const std::string& qubo_path, const SolveOptions& opt,
          const std::string& out_path, std::ostream& out) {
  const auto model = deserialize(read_file(qubo_path));
  std::string method = opt.method;
  if (method == "auto") {
    method = model.qubo.size() <= opt.limit ? "exhaustive" : "sa";
  }
  SolveResult result;
  if (method == "exhaustive") {
    result = solve_exhaustive(model.qubo, opt.limit);
  } else {
    SaParams params;
    params.sweeps = opt.sweeps;
    params.restarts = opt.restarts;
    params.seed = opt.seed;
    params.threads = opt.threads;
    result = solve_sa(model.qubo, params);
  }
  std::ostringstream report;
  report << "method " << method << '\n'
         << "energy " << result.energy << '\n'
         << "vector " << bits_to_string(result.best) << '\n'
         << "evaluations " << result.evaluations << '\n'
         << "restarts " << result.restarts << '\n'
         << "seed " << result.seed << '\n';
  out << report.str();
  if (!out_path.empty()) write_file(out_path, report.str());
  return kSuccess;
}

void require_same(const LabeledQubo& file, const QuboAccumulator& qubo,
                  const VariableRegistry& registry) {
  if (!(file.qubo == qubo) || !(file.registry == registry)) {
    throw CommandFailure{kInputError,
                         "QUBO file was not compiled from this instance"};
  }
}

int verify(const std::string& qubo_path, const std::string& solution_arg,
           const std::string& instance_path, std::ostream& out) {
  const auto model = deserialize(read_file(qubo_path));
  const Bits x = load_solution(solution_arg);
  if (x.size() != model.qubo.size()) {
    throw CommandFailure{kInputError,
                         "solution has " + std::to_string(x.size()) +
                             " bits, QUBO has " +
                             std::to_string(model.qubo.size())};
  }
  const std::int64_t energy = model.qubo.energy(x);
  out << "energy " << energy << '\n';

  const std::string instance_text = read_file(instance_path);
  const std::string kind = first_token_pair(instance_text);
  if (kind == "p cnf") {
    const auto formula = sat::parse_dimacs(instance_text);
    const auto comp = sat::compile(formula);
    require_same(model, comp.qubo, comp.registry);
    const auto assignment = sat::decode(x, comp);
    const auto unsat = sat::count_unsatisfied(formula, assignment);
    if (unsat != 0) {
      out << "invalid: " << unsat << " clauses unsatisfied\n";
      return kVerificationFailure;
    }
    out << "valid model " << bits_to_string(assignment) << '\n';
    return kSuccess;
  }
  if (kind != "p hc") {
    throw CommandFailure{kInputError, "unrecognized instance header in '" +
                                          instance_path + "'"};
  }
  const auto graph = hc::parse_graph(instance_text);
  const bool lucas = !model.registry.labels().empty() &&
                     std::holds_alternative<PositionVar>(model.registry.labels()[0]);
  hc::DecodeResult decoded;
  std::int64_t expected = 0;
  if (lucas) {
    const auto comp = hc::lucas_compile(graph);
    require_same(model, comp.qubo, comp.registry);
    decoded = hc::lucas_decode(x, comp);
  } else {
    const auto comp = hc::compile(graph);
    require_same(model, comp.qubo, comp.registry);
    decoded = hc::decode(x, comp);
    expected = hc::optimal_energy(graph.vertex_count());
  }
  if (!decoded.ok()) {
    out << "invalid: " << decoded.rejection << '\n';
    return kVerificationFailure;
  }
  if (energy != expected) {
    out << "invalid: energy " << energy << " differs from optimum " << expected
        << '\n';
    return kVerificationFailure;
  }
  out << "valid cycle";
  for (auto v : decoded.cycle) out << ' ' << v + 1;
  out << '\n';
  return kSuccess;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const auto v = static_cast<unsigned>(std::stoul(text));
      return {v, v};
    }
    return {static_cast<unsigned>(std::stoul(text.substr(0, colon))),
            static_cast<unsigned>(std::stoul(text.substr(colon + 1)))};
  } catch (const std::exception&) {
    throw CommandFailure{kInputError, "bad range '" + text + "', expected a:b"};
  }
}

}  // namespace

void write_scaling_csv(std::ostream& out, int figure, unsigned first,
                       unsigned last) {
  if (figure == 1) {
    if (first < 2) throw DomainError("figure 1 starts at k = 2");
    out << "k,chancellor,ours\n";
    for (unsigned k = first; k <= last; ++k) {
      out << k << ',' << k << ',' << sat::ancilla_count(k) << '\n';
    }
    return;
  }
  if (figure != 2 && figure != 3) throw DomainError("figure must be 1, 2 or 3");
  if (first < 5) throw DomainError("figures 2 and 3 start at N = 5");
  out << "n,lucas,ours\n";
  for (unsigned n = first; n <= last; ++n) {
    const auto g = figure == 2 ? hc::complete_graph(n) : hc::circulant_graph(n, 4);
    const auto sizes = hc::size_report(g);
    out << n << ',' << sizes.lucas << ',' << sizes.ours << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Algorithmic QUBO compiler for k-SAT and Hamiltonian cycles",
               "aqubo"};
  app.require_subcommand(1);

  std::string input, output, baseline = "ours", solution, instance;
  SolveOptions solve_opt;
  int figure = 1;
  std::string range;

  auto* sat_cmd = app.add_subcommand("sat-build", "Compile a DIMACS CNF formula");
  sat_cmd->add_option("cnf", input, "DIMACS CNF file")->required();
  sat_cmd->add_option("--out", output, "QUBO output path (mapping goes to <out>.map)")
      ->required();

  auto* hc_cmd = app.add_subcommand("hc-build", "Compile a Hamiltonian cycle instance");
  hc_cmd->add_option("graph", input, "graph file")->required();
  hc_cmd->add_option("--out", output, "QUBO output path")->required();
  hc_cmd->add_option("--baseline", baseline, "encoding")
      ->check(CLI::IsMember({"ours", "lucas"}));

  auto* solve_cmd = app.add_subcommand("solve", "Minimize a QUBO file");
  solve_cmd->add_option("qubo", input, "QUBO file")->required();
  solve_cmd->add_option("--method", solve_opt.method, "auto, exhaustive or sa")
      ->check(CLI::IsMember({"auto", "exhaustive", "sa"}));
  solve_cmd->add_option("--seed", solve_opt.seed, "annealing seed");
  solve_cmd->add_option("--sweeps", solve_opt.sweeps, "sweeps per restart");
  solve_cmd->add_option("--restarts", solve_opt.restarts, "annealing restarts");
  solve_cmd->add_option("--limit", solve_opt.limit, "largest n for exhaustive search");
  solve_cmd->add_option("--threads", solve_opt.threads, "restart threads, 0 = all cores");
  solve_cmd->add_option("--out", output, "also write the report here");

  auto* verify_cmd = app.add_subcommand("verify", "Check a solution against its instance");
  verify_cmd->add_option("qubo", input, "QUBO file")->required();
  verify_cmd->add_option("solution", solution, "bitstring, or file with one")->required();
  verify_cmd->add_option("instance", instance, "DIMACS CNF or graph file")->required();

  auto* scaling_cmd = app.add_subcommand("scaling", "Emit scaling data as CSV");
  scaling_cmd->add_option("--figure", figure, "1: ancillas over k, 2: complete graphs, 3: |E| = 4|V|")
      ->check(CLI::Range(1, 3));
  scaling_cmd->add_option("--range", range, "first:last (default 2:64 or 5:40)");
  scaling_cmd->add_option("--out", output, "CSV path (stdout if omitted)");

  gen::SatSpec sat_spec;
  sat_spec.variables = 10;
  sat_spec.clauses = 6;
  sat_spec.k = 4;
  auto* gen_sat_cmd = app.add_subcommand("gen-sat", "Generate a random k-SAT formula");
  gen_sat_cmd->add_option("--vars", sat_spec.variables);
  gen_sat_cmd->add_option("--clauses", sat_spec.clauses);
  gen_sat_cmd->add_option("--k", sat_spec.k);
  gen_sat_cmd->add_option("--seed", sat_spec.seed);
  gen_sat_cmd->add_flag("--satisfiable", sat_spec.require_satisfiable,
                        "redraw until the formula has a model");
  gen_sat_cmd->add_option("--out", output, "output path (stdout if omitted)");

  gen::GraphSpec graph_spec;
  graph_spec.vertices = 6;
  graph_spec.edges = 12;
  bool undirected = false, no_plant = false;
  auto* gen_graph_cmd = app.add_subcommand("gen-graph", "Generate a random graph");
  gen_graph_cmd->add_option("--vertices", graph_spec.vertices);
  gen_graph_cmd->add_option("--edges", graph_spec.edges);
  gen_graph_cmd->add_option("--seed", graph_spec.seed);
  gen_graph_cmd->add_flag("--undirected", undirected);
  gen_graph_cmd->add_flag("--no-plant", no_plant, "do not plant a Hamiltonian cycle");
  gen_graph_cmd->add_option("--out", output, "output path (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*sat_cmd) return sat_build(input, output, out);
    if (*hc_cmd) return hc_build(input, output, baseline, out);
    if (*solve_cmd) return solve(input, solve_opt, output, out);
    if (*verify_cmd) return verify(input, solution, instance, out);
    if (*scaling_cmd) {
      auto [first, last] =
          range.empty() ? (figure == 1 ? std::pair{2U, 64U} : std::pair{5U, 40U})
                        : parse_range(range);
      std::ostringstream csv;
      write_scaling_csv(csv, figure, first, last);
      if (output.empty()) {
        out << csv.str();
      } else {
        write_file(output, csv.str());
      }
      return kSuccess;
    }
    std::ostringstream text;
    if (*gen_sat_cmd) {
      sat::write_dimacs(text, gen::gen_sat(sat_spec));
    } else {
      graph_spec.directed = !undirected;
      graph_spec.plant_cycle = !no_plant;
      hc::write_graph(text, gen::gen_graph(graph_spec));
    }
    if (output.empty()) {
      out << text.str();
    } else {
      write_file(output, text.str());
    }
    return kSuccess;
  } catch (const CommandFailure& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace aqubo::cli
