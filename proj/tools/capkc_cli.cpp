// Command-line driver over the C API.
#include <capkc/capkc.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInput = 3;

struct InstanceDeleter {
  void operator()(capkc_instance* p) const { capkc_instance_free(p); }
};
struct ReportDeleter {
  void operator()(capkc_report* p) const { capkc_report_free(p); }
};
using InstancePtr = std::unique_ptr<capkc_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<capkc_report, ReportDeleter>;

int exit_code(capkc_status s) {
  switch (s) {
    case CAPKC_OK: return kExitSolved;
    case CAPKC_INFEASIBLE:
    case CAPKC_INVALID: return kExitInfeasible;
    case CAPKC_INPUT_ERROR:
    case CAPKC_NULL_ARGUMENT: return kExitInput;
    default: return kExitError;
  }
}

int report_error(capkc_status s) {
  std::cerr << "error: " << capkc_last_error() << '\n';
  return exit_code(s);
}

// Takes ownership of a C string from the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  capkc_free_string(s);
  return out;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

capkc_status load(const std::string& path, InstancePtr& inst) {
  capkc_instance* raw = nullptr;
  capkc_status s = capkc_instance_read_file(path.c_str(), &raw);
  inst.reset(raw);
  return s;
}

capkc_mode parse_mode(const std::string& m) {
  if (m == "soft") return CAPKC_MODE_SOFT;
  if (m == "exact") return CAPKC_MODE_EXACT;
  return CAPKC_MODE_HARD;
}

struct SolveArgs {
  std::string instance;
  std::string mode = "hard";
  std::string output = "-";
  std::string certificate;
  std::string lp_dump;
  std::string report;
  int max_stretch = 0;
  bool check_primitives = false;
};

int run_solve(const SolveArgs& a) {
  InstancePtr inst;
  if (auto s = load(a.instance, inst); s != CAPKC_OK) return report_error(s);
  capkc_solve_options opts;
  capkc_solve_options_init(&opts);
  opts.mode = parse_mode(a.mode);
  if (opts.mode != CAPKC_MODE_EXACT) capkc_instance_set_mode(inst.get(), opts.mode);
  opts.max_stretch = a.max_stretch;
  opts.check_each_primitive = a.check_primitives ? 1 : 0;
  capkc_report* raw = nullptr;
  capkc_status s = capkc_solve(inst.get(), &opts, &raw);
  ReportPtr report(raw);
  if (!report) return report_error(s);

  char* text = nullptr;
  capkc_report_text(report.get(), &text);
  std::string summary = take(text);
  if (!a.report.empty()) write_file(a.report, summary);
  else std::cerr << summary;
  if (!a.certificate.empty()) {
    capkc_report_certificate(report.get(), &text);
    write_file(a.certificate, take(text));
  }
  if (!a.lp_dump.empty() && capkc_report_lp_dump(report.get(), &text) == CAPKC_OK) write_file(a.lp_dump, take(text));
  if (s != CAPKC_OK) return exit_code(s);
  capkc_report_solution(report.get(), &text);
  std::string solution = take(text);
  // Re-validate independently before writing.
  if (auto v = capkc_verify_solution(inst.get(), solution.c_str()); v != CAPKC_OK) {
    std::cerr << "error: produced solution fails verification: " << capkc_last_error() << '\n';
    return kExitError;
  }
  if (!write_file(a.output, solution)) {
    std::cerr << "error: cannot write " << a.output << '\n';
    return kExitInput;
  }
  return kExitSolved;
}

int run_verify(const std::string& instance, const std::string& solution, const std::string& mode) {
  InstancePtr inst;
  if (auto s = load(instance, inst); s != CAPKC_OK) return report_error(s);
  if (!mode.empty()) capkc_instance_set_mode(inst.get(), parse_mode(mode));
  auto text = read_file(solution);
  if (!text) {
    std::cerr << "error: cannot open solution file '" << solution << "'\n";
    return kExitInput;
  }
  capkc_status s = capkc_verify_solution(inst.get(), text->c_str());
  if (s == CAPKC_OK) {
    std::cout << "valid\n";
    return kExitSolved;
  }
  if (s == CAPKC_INVALID) std::cout << "invalid: " << capkc_last_error() << '\n';
  else std::cerr << "error: " << capkc_last_error() << '\n';
  return exit_code(s);
}

int run_witness(const std::string& instance, const std::string& check) {
  InstancePtr inst;
  if (auto s = load(instance, inst); s != CAPKC_OK) return report_error(s);
  if (!check.empty()) {
    auto text = read_file(check);
    if (!text) {
      std::cerr << "error: cannot open witness file '" << check << "'\n";
      return kExitInput;
    }
    capkc_status s = capkc_verify_uniform_witness(inst.get(), text->c_str());
    if (s == CAPKC_OK) std::cout << "witness valid: LP1 is infeasible\n";
    else std::cout << "witness rejected: " << capkc_last_error() << '\n';
    return exit_code(s);
  }
  char* text = nullptr;
  capkc_status s = capkc_find_uniform_witness(inst.get(), &text);
  std::string w = take(text);
  if (s == CAPKC_OK) std::cout << w;
  else std::cerr << capkc_last_error() << '\n';
  return exit_code(s);
}

std::vector<int> parse_sets(const std::string& text) {
  // "a,b,c;d,e,f"
  std::vector<int> out;
  std::string token;
  for (char ch : text + ";") {
    if (ch == ',' || ch == ';' || ch == ' ') {
      if (!token.empty()) out.push_back(std::stoi(token));
      token.clear();
    } else {
      token += ch;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacitated k-center solver with certified LP rounding"};
  app.require_subcommand(1);
  app.set_version_flag("--version", capkc_version());

  SolveArgs solve;
  auto* cmd_solve = app.add_subcommand("solve", "Solve an instance");
  cmd_solve->add_option("instance", solve.instance, "Instance file")->required();
  cmd_solve->add_option("--mode", solve.mode, "hard, soft or exact")->check(CLI::IsMember({"hard", "soft", "exact"}));
  cmd_solve->add_option("-o,--output", solve.output, "Solution file ('-' for stdout)");
  cmd_solve->add_option("--report", solve.report, "Write the run report here instead of stderr");
  cmd_solve->add_option("--emit-certificate", solve.certificate, "Write the rounding trail");
  cmd_solve->add_option("--emit-lp-dump", solve.lp_dump, "Write LP1 of the last threshold tried (CPLEX LP format)");
  cmd_solve->add_option("--max-stretch-assert", solve.max_stretch, "Fail when the certified stretch exceeds this");
  cmd_solve->add_flag("--check-primitives", solve.check_primitives, "Re-check LP rows after every shift");

  std::string v_instance, v_solution, v_mode;
  auto* cmd_verify = app.add_subcommand("verify", "Check a solution file against an instance");
  cmd_verify->add_option("instance", v_instance)->required();
  cmd_verify->add_option("solution", v_solution)->required();
  cmd_verify->add_option("--mode", v_mode, "Override the capacity mode")->check(CLI::IsMember({"hard", "soft"}));

  std::string o_instance, o_mode, o_output = "-";
  auto* cmd_oracle = app.add_subcommand("oracle", "Exact optimum by brute force (small instances)");
  cmd_oracle->add_option("instance", o_instance)->required();
  cmd_oracle->add_option("--mode", o_mode, "Override the capacity mode")->check(CLI::IsMember({"hard", "soft"}));
  cmd_oracle->add_option("-o,--output", o_output, "Solution file ('-' for stdout)");

  std::string w_instance, w_check;
  auto* cmd_witness = app.add_subcommand("witness", "Find or check a uniform-capacity infeasibility witness");
  cmd_witness->add_option("instance", w_instance)->required();
  cmd_witness->add_option("--check", w_check, "Witness file to verify");

  std::string g_output = "-", g_witness;
  std::uint64_t seed = 1;
  int g_k = 24, r_n = 20, r_k = 3, x_universe = 3;
  bool g_nonuniform = false, r_soft = false;
  double r_density = 0.1;
  long long r_lo = 1, r_hi = 5;
  std::string x_sets;
  auto* cmd_gen = app.add_subcommand("gen", "Generate instances");
  cmd_gen->require_subcommand(1);
  cmd_gen->add_option("-o,--output", g_output, "Instance file ('-' for stdout)");
  cmd_gen->add_option("--witness", g_witness, "Write the fractional witness (fig1, gap)");
  cmd_gen->add_option("--seed", seed, "Random seed");
  auto* gen_fig1 = cmd_gen->add_subcommand("fig1", "Two-gadget unbounded-gap instance");
  auto* gen_gap = cmd_gen->add_subcommand("gap", "Instance with LP feasible at one hop, OPT beyond four");
  gen_gap->add_option("--k", g_k, "Number of centers (>= 24)");
  gen_gap->add_flag("--nonuniform", g_nonuniform, "Zero every capacity except the root and gadget pairs");
  auto* gen_x3c = cmd_gen->add_subcommand("x3c", "Exact-cover reduction");
  gen_x3c->add_option("--universe", x_universe, "Universe size (multiple of 3)")->required();
  gen_x3c->add_option("--sets", x_sets, "Triples separated by ';' or spaces, e.g. \"0,1,2;3,4,5\"")->required();
  auto* gen_random = cmd_gen->add_subcommand("random", "Random connected instance");
  gen_random->add_option("--n", r_n, "Vertices");
  gen_random->add_option("--density", r_density, "Probability of each extra edge");
  gen_random->add_option("--cap-lo", r_lo, "Smallest capacity");
  gen_random->add_option("--cap-hi", r_hi, "Largest capacity");
  gen_random->add_option("--k", r_k, "Number of centers");
  gen_random->add_flag("--soft", r_soft, "Soft capacities");
  for (auto* sub : {gen_fig1, gen_gap, gen_x3c, gen_random}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*cmd_solve) return run_solve(solve);
  if (*cmd_verify) return run_verify(v_instance, v_solution, v_mode);
  if (*cmd_witness) return run_witness(w_instance, w_check);
  if (*cmd_oracle) {
    InstancePtr inst;
    if (auto s = load(o_instance, inst); s != CAPKC_OK) return report_error(s);
    if (!o_mode.empty()) capkc_instance_set_mode(inst.get(), parse_mode(o_mode));
    capkc_solve_options opts;
    capkc_solve_options_init(&opts);
    opts.mode = CAPKC_MODE_EXACT;
    capkc_report* raw = nullptr;
    capkc_status s = capkc_solve(inst.get(), &opts, &raw);
    ReportPtr report(raw);
    if (!report) return report_error(s);
    char* text = nullptr;
    capkc_report_text(report.get(), &text);
    std::cerr << take(text);
    if (s == CAPKC_OK) {
      capkc_report_solution(report.get(), &text);
      write_file(o_output, take(text));
    }
    return exit_code(s);
  }

  capkc_instance* raw = nullptr;
  char* witness = nullptr;
  capkc_status s = CAPKC_OK;
  if (*gen_fig1) {
    s = capkc_gen_fig1(&raw, &witness);
  } else if (*gen_gap) {
    s = capkc_gen_gap(g_k, g_nonuniform ? 1 : 0, &raw, &witness);
  } else if (*gen_x3c) {
    std::vector<int> triples;
    try {
      triples = parse_sets(x_sets);
    } catch (const std::exception&) {
      std::cerr << "error: --sets expects comma-separated integers\n";
      return kExitInput;
    }
    if (triples.size() % 3 != 0) {
      std::cerr << "error: --sets must list whole triples\n";
      return kExitInput;
    }
    s = capkc_gen_x3c(triples.data(), static_cast<int>(triples.size() / 3), x_universe, &raw);
  } else if (*gen_random) {
    s = capkc_gen_random(r_n, r_density, r_lo, r_hi, r_k, r_soft ? CAPKC_MODE_SOFT : CAPKC_MODE_HARD, seed, &raw);
  }
  InstancePtr inst(raw);
  if (s != CAPKC_OK) return report_error(s);
  char* text = nullptr;
  capkc_instance_write(inst.get(), &text);
  write_file(g_output, take(text));
  std::string w = take(witness);
  if (!g_witness.empty()) {
    if (w.empty()) {
      std::cerr << "error: this generator has no fractional witness\n";
      return kExitInput;
    }
    write_file(g_witness, w);
  }
  return kExitSolved;
}
