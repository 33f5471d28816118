#include "capkc/capkc.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "generators.hpp"
#include "pipeline.hpp"
#include "uniform_witness.hpp"

struct capkc_instance {
  capkc::Instance inst;
};

struct capkc_report {
  capkc::SolveReport report;
};

namespace {

thread_local std::string last_error;

capkc_status fail(capkc_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, mapping exceptions to status codes.
template <class F>
capkc_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const capkc::InputError& e) {
    return fail(CAPKC_INPUT_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CAPKC_INPUT_ERROR, e.what());
  } catch (const capkc::OracleRefused& e) {
    return fail(CAPKC_ORACLE_REFUSED, e.what());
  } catch (const capkc::InvariantViolation& e) {
    return fail(CAPKC_INVARIANT, e.what());
  } catch (const std::exception& e) {
    return fail(CAPKC_INVARIANT, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

capkc_status emit(char** text, const std::string& s) {
  if (!text) return fail(CAPKC_NULL_ARGUMENT, "null output string");
  *text = copy_string(s);
  return CAPKC_OK;
}

capkc::CapacityMode capacity_mode(capkc_mode m) {
  return m == CAPKC_MODE_SOFT ? capkc::CapacityMode::kSoft : capkc::CapacityMode::kHard;
}

capkc_status wrap_instance(capkc::Instance inst, capkc_instance** out) {
  *out = new capkc_instance{std::move(inst)};
  return CAPKC_OK;
}

std::string assignment_text(const capkc::Assignment& a) {
  std::ostringstream ss;
  capkc::write_assignment(ss, a);
  return ss.str();
}

long long uniform_capacity(const capkc::Instance& inst) {
  if (inst.vertex_count() == 0) throw capkc::InputError("uniform witness needs a non-empty instance");
  long long L = inst.capacity(0);
  for (capkc::Vertex v = 0; v < inst.vertex_count(); ++v)
    if (inst.capacity(v) != L) throw capkc::InputError("uniform witness needs equal capacities");
  if (L <= 0) throw capkc::InputError("uniform witness needs a positive capacity");
  return L;
}

}  // namespace

extern "C" {

const char* capkc_version(void) { return "1.0.0"; }

const char* capkc_last_error(void) { return last_error.c_str(); }

void capkc_free_string(char* s) { std::free(s); }

capkc_status capkc_instance_parse(const char* text, capkc_instance** out) {
  if (!text || !out) return fail(CAPKC_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::istringstream in(text);
    return wrap_instance(capkc::parse_instance(in), out);
  });
}

capkc_status capkc_instance_read_file(const char* path, capkc_instance** out) {
  if (!path || !out) return fail(CAPKC_NULL_ARGUMENT, "null argument");
  return guarded([&] { return wrap_instance(capkc::read_instance_file(path), out); });
}

capkc_status capkc_instance_write(const capkc_instance* inst, char** text) {
  if (!inst) return fail(CAPKC_NULL_ARGUMENT, "null instance");
  return guarded([&] {
    std::ostringstream ss;
    capkc::write_instance(ss, inst->inst);
    return emit(text, ss.str());
  });
}

void capkc_instance_free(capkc_instance* inst) { delete inst; }

int capkc_instance_vertex_count(const capkc_instance* inst) { return inst ? inst->inst.vertex_count() : -1; }

int capkc_instance_k(const capkc_instance* inst) { return inst ? inst->inst.k() : -1; }

capkc_mode capkc_instance_mode(const capkc_instance* inst) {
  return inst && inst->inst.mode() == capkc::CapacityMode::kSoft ? CAPKC_MODE_SOFT : CAPKC_MODE_HARD;
}

capkc_status capkc_instance_set_k(capkc_instance* inst, int k) {
  if (!inst) return fail(CAPKC_NULL_ARGUMENT, "null instance");
  if (k < 0) return fail(CAPKC_INPUT_ERROR, "k must be non-negative");
  inst->inst.set_k(k);
  return CAPKC_OK;
}

capkc_status capkc_instance_set_mode(capkc_instance* inst, capkc_mode mode) {
  if (!inst) return fail(CAPKC_NULL_ARGUMENT, "null instance");
  if (mode == CAPKC_MODE_EXACT) return fail(CAPKC_INPUT_ERROR, "an instance is hard or soft");
  inst->inst.set_mode(capacity_mode(mode));
  return CAPKC_OK;
}

capkc_status capkc_gen_fig1(capkc_instance** out, char** witness) {
  if (!out) return fail(CAPKC_NULL_ARGUMENT, "null output");
  return guarded([&] {
    auto g = capkc::gen_fig1();
    if (witness) *witness = copy_string(assignment_text(g.witness));
    return wrap_instance(std::move(g.instance), out);
  });
}

capkc_status capkc_gen_gap(int k, int nonuniform, capkc_instance** out, char** witness) {
  if (!out) return fail(CAPKC_NULL_ARGUMENT, "null output");
  return guarded([&] {
    auto g = capkc::gen_gap_construction(k, nonuniform != 0);
    if (witness) *witness = copy_string(assignment_text(g.witness));
    return wrap_instance(std::move(g.instance), out);
  });
}

capkc_status capkc_gen_x3c(const int* triples, int set_count, int universe, capkc_instance** out) {
  if (!out || (set_count > 0 && !triples)) return fail(CAPKC_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::array<int, 3>> sets;
    for (int j = 0; j < set_count; ++j) sets.push_back({triples[3 * j], triples[3 * j + 1], triples[3 * j + 2]});
    return wrap_instance(capkc::gen_x3c(sets, universe).instance, out);
  });
}

capkc_status capkc_gen_random(int n, double density, long long cap_lo, long long cap_hi, int k, capkc_mode mode,
                              uint64_t seed, capkc_instance** out) {
  if (!out) return fail(CAPKC_NULL_ARGUMENT, "null output");
  return guarded([&] {
    return wrap_instance(capkc::gen_random_connected(n, density, cap_lo, cap_hi, k, capacity_mode(mode), seed), out);
  });
}

void capkc_solve_options_init(capkc_solve_options* options) {
  if (!options) return;
  options->mode = CAPKC_MODE_HARD;
  options->max_stretch = 0;
  options->check_each_primitive = 0;
}

capkc_status capkc_solve(const capkc_instance* inst, const capkc_solve_options* options, capkc_report** out) {
  if (!inst || !out) return fail(CAPKC_NULL_ARGUMENT, "null argument");
  capkc_solve_options opts;
  capkc_solve_options_init(&opts);
  if (options) opts = *options;
  return guarded([&] {
    capkc::SolveMode mode = opts.mode == CAPKC_MODE_EXACT  ? capkc::SolveMode::kExact
                            : opts.mode == CAPKC_MODE_SOFT ? capkc::SolveMode::kSoft
                                                           : capkc::SolveMode::kHard;
    capkc::SolveOptions so;
    so.max_stretch = opts.max_stretch;
    so.rounding.check_each_primitive = opts.check_each_primitive != 0;
    auto* r = new capkc_report{capkc::solve_instance(inst->inst, mode, so)};
    *out = r;
    if (r->report.solved) return CAPKC_OK;
    return fail(CAPKC_INFEASIBLE, r->report.failure);
  });
}

void capkc_report_free(capkc_report* report) { delete report; }

int capkc_report_solved(const capkc_report* report) { return report && report->report.solved ? 1 : 0; }

int capkc_report_hop_radius(const capkc_report* report) { return report ? report->report.hop_radius : -1; }

int capkc_report_stretch(const capkc_report* report) { return report ? report->report.stretch : -1; }

capkc_status capkc_report_threshold(const capkc_report* report, char** text) {
  if (!report) return fail(CAPKC_NULL_ARGUMENT, "null report");
  return emit(text, capkc::to_string(report->report.threshold));
}

capkc_status capkc_report_achieved_radius(const capkc_report* report, char** text) {
  if (!report) return fail(CAPKC_NULL_ARGUMENT, "null report");
  return emit(text, capkc::to_string(report->report.achieved_radius));
}

capkc_status capkc_report_text(const capkc_report* report, char** text) {
  if (!report) return fail(CAPKC_NULL_ARGUMENT, "null report");
  std::ostringstream ss;
  capkc::write_report(ss, report->report);
  return emit(text, ss.str());
}

capkc_status capkc_report_solution(const capkc_report* report, char** text) {
  if (!report) return fail(CAPKC_NULL_ARGUMENT, "null report");
  if (!report->report.solved) return fail(CAPKC_INFEASIBLE, "no solution in this report");
  std::ostringstream ss;
  capkc::write_solution(ss, report->report.solution);
  return emit(text, ss.str());
}

capkc_status capkc_report_certificate(const capkc_report* report, char** text) {
  if (!report) return fail(CAPKC_NULL_ARGUMENT, "null report");
  std::ostringstream ss;
  capkc::write_trace(ss, report->report.certificate);
  return emit(text, ss.str());
}

capkc_status capkc_report_lp_dump(const capkc_report* report, char** text) {
  if (!report) return fail(CAPKC_NULL_ARGUMENT, "null report");
  if (!report->report.lp) return fail(CAPKC_INFEASIBLE, "no LP was built for this report");
  std::ostringstream ss;
  capkc::write_lp(ss, *report->report.lp);
  return emit(text, ss.str());
}

capkc_status capkc_verify_solution(const capkc_instance* inst, const char* solution_text) {
  if (!inst || !solution_text) return fail(CAPKC_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::istringstream in(solution_text);
    auto s = capkc::parse_solution(in, inst->inst.vertex_count());
    if (s.k != inst->inst.k())
      return fail(CAPKC_INVALID, "solution opens k = " + std::to_string(s.k) + " but the instance has k = " +
                                     std::to_string(inst->inst.k()));
    auto g = capkc::threshold_graph(inst->inst, s.threshold);
    if (auto v = capkc::find_solution_violation(g, inst->inst.capacities(), inst->inst.mode(), s))
      return fail(CAPKC_INVALID, *v);
    return CAPKC_OK;
  });
}

capkc_status capkc_verify_uniform_witness(const capkc_instance* inst, const char* witness_text) {
  if (!inst || !witness_text) return fail(CAPKC_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    long long L = uniform_capacity(inst->inst);
    std::istringstream in(witness_text);
    auto core = capkc::parse_uniform_witness(in, inst->inst.vertex_count());
    capkc::HopDistances hops(inst->inst.unit_graph());
    auto check = capkc::check_uniform_witness(hops, L, inst->inst.k(), core);
    if (!check.spread) return fail(CAPKC_INVALID, "core vertices are not pairwise 3 hops apart");
    if (!check.exceeds)
      return fail(CAPKC_INVALID, "bound " + capkc::to_string(check.bound) + " does not exceed k = " +
                                     std::to_string(inst->inst.k()));
    return CAPKC_OK;
  });
}

capkc_status capkc_find_uniform_witness(const capkc_instance* inst, char** witness_text) {
  if (!inst) return fail(CAPKC_NULL_ARGUMENT, "null instance");
  return guarded([&] {
    long long L = uniform_capacity(inst->inst);
    capkc::HopDistances hops(inst->inst.unit_graph());
    auto core = capkc::greedy_uniform_witness(hops, L);
    std::ostringstream ss;
    capkc::write_uniform_witness(ss, core);
    if (!capkc::verify_uniform_witness(hops, L, inst->inst.k(), core)) {
      emit(witness_text, ss.str());
      return fail(CAPKC_INVALID, "greedy search found no witness exceeding k");
    }
    return emit(witness_text, ss.str());
  });
}

}  // extern "C"
