#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "errors.hpp"

namespace capkc {

LPModel build_lp1(const Graph& g, std::span<const long long> capacity, int k, CapacityMode mode) {
  LPModel m;
  m.vertex_count = g.vertex_count();
  m.k = k;
  m.mode = mode;
  m.y_var.assign(g.vertex_count(), -1);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (capacity[u] <= 0) continue;
    m.y_var[u] = static_cast<int>(m.variables.size());
    m.variables.push_back({LPVariable::Kind::kY, u, u, "y_" + std::to_string(u)});
  }

  // x variables grouped by center so each center's block is contiguous.
  std::vector<std::vector<std::pair<Vertex, int>>> x_of_center(g.vertex_count());
  std::vector<std::vector<int>> x_of_client(g.vertex_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (m.y_var[u] < 0) continue;
    std::vector<Vertex> clients(g.neighbors(u).begin(), g.neighbors(u).end());
    clients.insert(std::lower_bound(clients.begin(), clients.end(), u), u);
    for (Vertex v : clients) {
      int id = static_cast<int>(m.variables.size());
      m.variables.push_back({LPVariable::Kind::kX, u, v, "x_" + std::to_string(u) + "_" + std::to_string(v)});
      x_of_center[u].emplace_back(v, id);
      x_of_client[v].push_back(id);
    }
  }

  Constraint total{"open_total", {}, Sense::kEqual, Rational(k)};
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    if (m.y_var[u] >= 0) total.terms.push_back({m.y_var[u], Rational(1)});
  m.constraints.push_back(std::move(total));

  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (auto [v, id] : x_of_center[u])
      m.constraints.push_back({"open_" + std::to_string(u) + "_" + std::to_string(v),
                               {{id, Rational(1)}, {m.y_var[u], Rational(-1)}},
                               Sense::kLessEqual,
                               Rational(0)});

  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (m.y_var[u] < 0) continue;
    Constraint load{"load_" + std::to_string(u), {}, Sense::kLessEqual, Rational(0)};
    for (auto [v, id] : x_of_center[u]) load.terms.push_back({id, Rational(1)});
    load.terms.push_back({m.y_var[u], rational_of(-capacity[u])});
    m.constraints.push_back(std::move(load));
  }

  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    Constraint cover{"cover_" + std::to_string(v), {}, Sense::kEqual, Rational(1)};
    for (int id : x_of_client[v]) cover.terms.push_back({id, Rational(1)});
    m.constraints.push_back(std::move(cover));
  }

  if (mode == CapacityMode::kHard)
    for (Vertex u = 0; u < g.vertex_count(); ++u)
      if (m.y_var[u] >= 0)
        m.constraints.push_back({"upper_" + std::to_string(u), {{m.y_var[u], Rational(1)}}, Sense::kLessEqual, Rational(1)});

  return m;
}

namespace {

template <class T>
struct Num;

template <>
struct Num<Rational> {
  static Rational of(const Rational& x) { return x; }
  static bool pos(const Rational& x) { return x > 0; }
  static bool neg(const Rational& x) { return x < 0; }
  static bool negligible(const Rational& x) { return x == 0; }
  static bool same(const Rational& x, const Rational& y) { return x == y; }
};

template <>
struct Num<double> {
  static double of(const Rational& x) { return x.get_d(); }
  static bool pos(double x) { return x > 1e-9; }
  static bool neg(double x) { return x < -1e-9; }
  static bool negligible(double x) { return std::fabs(x) < 1e-12; }
  static bool same(double x, double y) { return std::fabs(x - y) <= 1e-11 * (1 + std::fabs(y)); }
};

// Column layout shared by the floating-point search and the exact
// certificate: structural variables, one slack per <= row, then
// artificials. Rows are sign-normalized so every right-hand side is >= 0.
struct Phase1Layout {
  struct Row {
    std::vector<int> cols;
    std::vector<Rational> vals;
    Rational rhs;
    int initial_basic = -1;
  };
  std::vector<Row> rows;
  int structural = 0;
  int first_artificial = 0;
  int columns = 0;

  explicit Phase1Layout(const LPModel& model) {
    structural = static_cast<int>(model.variables.size());
    int slacks = 0;
    for (const auto& c : model.constraints)
      if (c.sense == Sense::kLessEqual) ++slacks;
    first_artificial = structural + slacks;
    int next_slack = structural;
    int next_art = first_artificial;
    rows.reserve(model.constraints.size());
    for (const auto& c : model.constraints) {
      Row r;
      std::vector<LinearTerm> terms = c.terms;
      std::sort(terms.begin(), terms.end(), [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
      for (const auto& t : terms) {
        if (t.coef == 0) continue;
        if (!r.cols.empty() && r.cols.back() == t.var) {
          r.vals.back() += t.coef;
          if (r.vals.back() == 0) {
            r.cols.pop_back();
            r.vals.pop_back();
          }
          continue;
        }
        r.cols.push_back(t.var);
        r.vals.push_back(t.coef);
      }
      r.rhs = c.rhs;
      Rational sign = 1;
      if (r.rhs < 0) {
        sign = -1;
        for (auto& v : r.vals) v = -v;
        r.rhs = -r.rhs;
      }
      if (c.sense == Sense::kLessEqual) {
        int s = next_slack++;
        r.cols.push_back(s);
        r.vals.push_back(sign);
        if (sign > 0) {
          r.initial_basic = s;
        } else {
          r.cols.push_back(next_art);
          r.vals.push_back(Rational(1));
          r.initial_basic = next_art++;
        }
      } else {
        r.cols.push_back(next_art);
        r.vals.push_back(Rational(1));
        r.initial_basic = next_art++;
      }
      rows.push_back(std::move(r));
    }
    columns = next_art;
  }
};

// Sparse-row tableau for the phase-1 problem
//   minimize sum of artificials  s.t.  A x + slack + art = b,  all >= 0.
template <class T>
class Phase1Tableau {
  using N = Num<T>;

 public:
  explicit Phase1Tableau(const Phase1Layout& layout) : first_artificial_(layout.first_artificial) {
    rows_.reserve(layout.rows.size());
    for (const auto& lr : layout.rows) {
      Row r;
      r.cols = lr.cols;
      for (const auto& v : lr.vals) r.vals.push_back(N::of(v));
      r.rhs = N::of(lr.rhs);
      r.basic = lr.initial_basic;
      rows_.push_back(std::move(r));
    }
    reduced_.assign(layout.columns, T(0));
    objective_ = T(0);
    for (const auto& r : rows_) {
      if (r.basic < first_artificial_) continue;
      objective_ += r.rhs;
      for (std::size_t i = 0; i < r.cols.size(); ++i)
        if (r.cols[i] < first_artificial_) reduced_[r.cols[i]] -= r.vals[i];
    }
  }

  long run() {
    long pivots = 0;
    int degenerate_streak = 0;
    while (N::pos(objective_)) {
      // Dantzig pricing, falling back to Bland's rule while the objective
      // stalls; Bland never cycles, so a stall always ends.
      bool bland = degenerate_streak >= kBlandAfter;
      int enter = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (!N::neg(reduced_[j])) continue;
        if (enter < 0) {
          enter = j;
          if (bland) break;
        } else if (reduced_[j] < reduced_[enter]) {
          enter = j;
        }
      }
      if (enter < 0) break;

      int leave = -1;
      T best_ratio{};
      for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
        const T* a = entry(rows_[i], enter);
        if (!a || !N::pos(*a)) continue;
        T ratio = rows_[i].rhs / *a;
        bool tie = leave >= 0 && N::same(ratio, best_ratio);
        if (leave < 0 || (!tie && ratio < best_ratio) || (tie && rows_[i].basic < rows_[leave].basic)) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw InvariantViolation("phase-1 simplex reported an unbounded ray");
      T before = objective_;
      pivot(leave, enter);
      ++pivots;
      degenerate_streak = N::pos(before - objective_) ? 0 : degenerate_streak + 1;
      if (pivots > kPivotLimit) throw InvariantViolation("phase-1 simplex exceeded its pivot limit");
    }
    return pivots;
  }

  const T& objective() const { return objective_; }
  bool reports_feasible() const { return !N::pos(objective_); }

  std::vector<int> basis() const {
    std::vector<int> b;
    for (const auto& r : rows_) b.push_back(r.basic);
    return b;
  }

  std::vector<T> structural_values(int structural) const {
    std::vector<T> x(structural, T(0));
    for (const auto& r : rows_)
      if (r.basic < structural) x[r.basic] = r.rhs;
    return x;
  }

 private:
  static constexpr int kBlandAfter = 50;
  static constexpr long kPivotLimit = 50'000'000;

  struct Row {
    std::vector<int> cols;
    std::vector<T> vals;
    T rhs;
    int basic = -1;
  };

  static const T* entry(const Row& r, int col) {
    auto it = std::lower_bound(r.cols.begin(), r.cols.end(), col);
    if (it == r.cols.end() || *it != col) return nullptr;
    return &r.vals[it - r.cols.begin()];
  }

  void pivot(int leave, int enter) {
    Row& p = rows_[leave];
    T inv = T(1) / *entry(p, enter);
    for (auto& v : p.vals) v *= inv;
    p.rhs *= inv;
    p.basic = enter;

    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (i == leave) continue;
      const T* a = entry(rows_[i], enter);
      if (!a) continue;
      T factor = *a;
      eliminate(rows_[i], p, factor, enter);
    }
    T dfactor = reduced_[enter];
    if (!(dfactor == T(0))) {
      for (std::size_t t = 0; t < p.cols.size(); ++t)
        if (p.cols[t] < first_artificial_) reduced_[p.cols[t]] -= dfactor * p.vals[t];
      objective_ += dfactor * p.rhs;
      reduced_[enter] = T(0);
    }
  }

  // r -= factor * p; the entering column cancels exactly.
  static void eliminate(Row& r, const Row& p, const T& factor, int enter) {
    std::vector<int> cols;
    std::vector<T> vals;
    cols.reserve(r.cols.size() + p.cols.size());
    vals.reserve(r.cols.size() + p.cols.size());
    std::size_t i = 0, j = 0;
    while (i < r.cols.size() || j < p.cols.size()) {
      if (j == p.cols.size() || (i < r.cols.size() && r.cols[i] < p.cols[j])) {
        cols.push_back(r.cols[i]);
        vals.push_back(std::move(r.vals[i]));
        ++i;
      } else if (i == r.cols.size() || p.cols[j] < r.cols[i]) {
        cols.push_back(p.cols[j]);
        vals.push_back(-factor * p.vals[j]);
        ++j;
      } else {
        T v = r.vals[i] - factor * p.vals[j];
        if (r.cols[i] != enter && !N::negligible(v)) {
          cols.push_back(r.cols[i]);
          vals.push_back(std::move(v));
        }
        ++i;
        ++j;
      }
    }
    r.cols = std::move(cols);
    r.vals = std::move(vals);
    r.rhs -= factor * p.rhs;
    if (!N::pos(r.rhs) && !N::neg(r.rhs)) r.rhs = T(0);
  }

  std::vector<Row> rows_;
  std::vector<T> reduced_;
  T objective_;
  int first_artificial_ = 0;
};

// Solves the square system M z = rhs exactly (M given by sparse rows) by
// Gaussian elimination, pivoting on the sparsest column and row. Returns
// nullopt when M is singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::map<int, Rational>> rows, std::vector<Rational> rhs) {
  const int m = static_cast<int>(rows.size());
  std::vector<std::set<int>> col_rows(m);
  for (int r = 0; r < m; ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
  std::vector<char> col_done(m, 0);
  std::vector<std::pair<int, int>> order;  // (row, column)
  order.reserve(m);
  for (int step = 0; step < m; ++step) {
    int col = -1;
    for (int c = 0; c < m; ++c)
      if (!col_done[c] && (col < 0 || col_rows[c].size() < col_rows[col].size())) col = c;
    if (col_rows[col].empty()) return std::nullopt;
    int piv = -1;
    for (int r : col_rows[col])
      if (piv < 0 || rows[r].size() < rows[piv].size()) piv = r;
    col_done[col] = 1;
    order.emplace_back(piv, col);
    for (const auto& [c, v] : rows[piv]) col_rows[c].erase(piv);
    std::vector<int> targets(col_rows[col].begin(), col_rows[col].end());
    const Rational pv = rows[piv].at(col);
    for (int r : targets) {
      Rational factor = rows[r].at(col) / pv;
      for (const auto& [c, v] : rows[piv]) {
        auto [it, fresh] = rows[r].try_emplace(c, 0);
        it->second -= factor * v;
        if (it->second == 0) {
          rows[r].erase(it);
          col_rows[c].erase(r);
        } else if (fresh) {
          col_rows[c].insert(r);
        }
      }
      rhs[r] -= factor * rhs[piv];
    }
  }
  std::vector<Rational> z(m, Rational(0));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto [r, c] = *it;
    Rational acc = rhs[r];
    for (const auto& [cc, v] : rows[r])
      if (cc != c) acc -= v * z[cc];
    z[c] = acc / rows[r].at(c);
  }
  return z;
}

// Exact certificate for the basis found by the floating-point search:
// either a basic feasible point, or dual multipliers pi with pi.A_j <= 0 on
// every non-artificial column and pi.b > 0 (no point satisfies A x = b).
std::optional<FeasibilityResult> certify_basis(const LPModel& model, const Phase1Layout& layout,
                                               const std::vector<int>& basis, bool claims_feasible) {
  const int m = static_cast<int>(layout.rows.size());
  std::map<int, int> position;
  for (int p = 0; p < m; ++p)
    if (!position.emplace(basis[p], p).second) return std::nullopt;

  FeasibilityResult result;
  if (claims_feasible) {
    std::vector<std::map<int, Rational>> rows(m);
    std::vector<Rational> rhs(m);
    for (int i = 0; i < m; ++i) {
      const auto& lr = layout.rows[i];
      for (std::size_t t = 0; t < lr.cols.size(); ++t)
        if (auto it = position.find(lr.cols[t]); it != position.end()) rows[i][it->second] = lr.vals[t];
      rhs[i] = lr.rhs;
    }
    auto z = solve_square(std::move(rows), std::move(rhs));
    if (!z) return std::nullopt;
    std::vector<Rational> x(layout.structural, Rational(0));
    for (int p = 0; p < m; ++p) {
      if ((*z)[p] < 0) return std::nullopt;
      if (basis[p] >= layout.first_artificial && (*z)[p] != 0) return std::nullopt;
      if (basis[p] < layout.structural) x[basis[p]] = (*z)[p];
    }
    for (const auto& c : model.constraints) {
      Rational lhs = 0;
      for (const auto& t : c.terms) lhs += t.coef * x[t.var];
      if (c.sense == Sense::kEqual ? lhs != c.rhs : lhs > c.rhs) return std::nullopt;
    }
    result.status = LPStatus::kFeasible;
    Assignment a(model.vertex_count, model.mode);
    for (std::size_t j = 0; j < model.variables.size(); ++j) {
      const auto& var = model.variables[j];
      if (var.kind == LPVariable::Kind::kY) a.set_y(var.u, x[j]);
      else a.set_x(var.u, var.v, x[j]);
    }
    result.point = std::move(a);
    return result;
  }

  // Transposed basis: row p of B^T is column basis[p] of the layout.
  std::vector<std::map<int, Rational>> rows(m);
  std::vector<Rational> cost(m, Rational(0));
  for (int i = 0; i < m; ++i) {
    const auto& lr = layout.rows[i];
    for (std::size_t t = 0; t < lr.cols.size(); ++t)
      if (auto it = position.find(lr.cols[t]); it != position.end()) rows[it->second][i] = lr.vals[t];
  }
  for (int p = 0; p < m; ++p)
    if (basis[p] >= layout.first_artificial) cost[p] = 1;
  auto pi = solve_square(std::move(rows), std::move(cost));
  if (!pi) return std::nullopt;
  std::vector<Rational> priced(layout.first_artificial, Rational(0));
  Rational bound = 0;
  for (int i = 0; i < m; ++i) {
    const auto& lr = layout.rows[i];
    if ((*pi)[i] == 0) continue;
    bound += (*pi)[i] * lr.rhs;
    for (std::size_t t = 0; t < lr.cols.size(); ++t)
      if (lr.cols[t] < layout.first_artificial) priced[lr.cols[t]] += (*pi)[i] * lr.vals[t];
  }
  if (bound <= 0) return std::nullopt;
  for (const auto& v : priced)
    if (v > 0) return std::nullopt;
  result.status = LPStatus::kInfeasible;
  result.infeasibility = bound;
  return result;
}

}  // namespace

FeasibilityResult solve_feasibility(const LPModel& model) {
  Phase1Layout layout(model);

  Phase1Tableau<double> fast(layout);
  long fast_pivots = 0;
  try {
    fast_pivots = fast.run();
    if (auto certified = certify_basis(model, layout, fast.basis(), fast.reports_feasible())) {
      certified->pivots = fast_pivots;
      return std::move(*certified);
    }
  } catch (const InvariantViolation&) {
    // Numerical trouble in the floating-point search; the exact run decides.
  }

  FeasibilityResult result;
  result.exact_fallback = true;
  Phase1Tableau<Rational> tableau(layout);
  result.pivots = fast_pivots + tableau.run();
  result.infeasibility = tableau.objective();
  if (tableau.objective() > 0) {
    result.status = LPStatus::kInfeasible;
    return result;
  }
  result.status = LPStatus::kFeasible;
  auto values = tableau.structural_values(layout.structural);
  Assignment a(model.vertex_count, model.mode);
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const auto& var = model.variables[j];
    if (var.kind == LPVariable::Kind::kY) a.set_y(var.u, values[j]);
    else a.set_x(var.u, var.v, values[j]);
  }
  result.point = std::move(a);
  return result;
}


std::optional<std::string> find_lp1_violation(const HopDistances& hops, std::span<const long long> capacity, int k,
                                              const Assignment& a, int delta) {
  int n = a.vertex_count();
  auto vname = [](Vertex v) { return std::to_string(v); };
  if (a.y_sum() != k) return "sum of y is " + to_string(a.y_sum()) + ", expected " + std::to_string(k);
  for (Vertex u = 0; u < n; ++u) {
    if (a.y(u) < 0) return "y_" + vname(u) + " is negative";
    if (a.mode() == CapacityMode::kHard && a.y(u) > 1) return "y_" + vname(u) + " exceeds 1";
  }
  std::vector<Rational> load(n, Rational(0));
  std::vector<Rational> cover(n, Rational(0));
  for (const auto& [key, value] : a.x_entries()) {
    auto [u, v] = key;
    std::string name = "x_" + vname(u) + "_" + vname(v);
    if (value < 0) return name + " is negative";
    if (value > a.y(u)) return name + " = " + to_string(value) + " exceeds y_" + vname(u) + " = " + to_string(a.y(u));
    if (delta >= 0 && !hops.within(u, v, delta))
      return name + " is positive at hop distance " + std::to_string(hops(u, v)) + " > " + std::to_string(delta);
    load[u] += value;
    cover[v] += value;
  }
  for (Vertex u = 0; u < n; ++u)
    if (load[u] > rational_of(capacity[u]) * a.y(u))
      return "load of " + vname(u) + " is " + to_string(load[u]) + " > L*y = " + to_string(rational_of(capacity[u]) * a.y(u));
  for (Vertex v = 0; v < n; ++v)
    if (cover[v] != 1) return "client " + vname(v) + " is covered " + to_string(cover[v]) + " times";
  return std::nullopt;
}

namespace {

void write_terms(std::ostream& out, const LPModel& model, const std::vector<LinearTerm>& terms) {
  bool first = true;
  for (const auto& t : terms) {
    Rational c = t.coef;
    if (c < 0) {
      out << " - ";
      c = -c;
    } else if (!first) {
      out << " + ";
    } else {
      out << ' ';
    }
    if (c != 1) out << to_string(c) << ' ';
    out << model.variables[t.var].name;
    first = false;
  }
  if (first) out << " 0 " << (model.variables.empty() ? "y_0" : model.variables.front().name);
}

}  // namespace

void write_lp(std::ostream& out, const LPModel& model, const std::string& title) {
  out << "\\ " << title << '\n';
  out << "Minimize\n obj: 0\nSubject To\n";
  for (const auto& c : model.constraints) {
    out << ' ' << c.name << ':';
    write_terms(out, model, c.terms);
    out << (c.sense == Sense::kEqual ? " = " : " <= ") << to_string(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) out << ' ' << v.name << " >= 0\n";
  out << "End\n";
}

}  // namespace capkc
