#include "caterpillar.hpp"

#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "lp.hpp"

namespace capkc {

bool Caterpillar::has_leaves() const {
  for (const auto& l : leaves)
    if (l) return true;
  return false;
}

std::vector<Vertex> Caterpillar::vertices() const {
  std::vector<Vertex> out = spine;
  for (const auto& l : leaves)
    if (l) out.push_back(*l);
  return out;
}

Caterpillar Caterpillar::reversed() const {
  Caterpillar r;
  r.delta = delta;
  r.spine.assign(spine.rbegin(), spine.rend());
  r.leaves.assign(leaves.rbegin(), leaves.rend());
  return r;
}

std::string describe(const Caterpillar& c) {
  std::ostringstream out;
  out << "spine(";
  for (std::size_t i = 0; i < c.spine.size(); ++i) out << (i ? " " : "") << c.spine[i];
  out << ") leaves(";
  for (std::size_t i = 0; i < c.leaves.size(); ++i) {
    out << (i ? " " : "");
    if (c.leaves[i]) out << *c.leaves[i];
    else out << '-';
  }
  out << ") delta " << c.delta;
  return out.str();
}

std::optional<std::string> find_caterpillar_violation(const Caterpillar& c, const Assignment& a,
                                                      const HopDistances& hops, std::span<const long long> capacity) {
  int p = c.length();
  if (static_cast<int>(c.leaves.size()) != p + 2) return std::string("leaf list has the wrong length");
  if (p == 0) {
    if (c.has_leaves()) return std::string("leaves without a spine");
    return std::nullopt;
  }
  std::set<Vertex> spine(c.spine.begin(), c.spine.end());
  if (static_cast<int>(spine.size()) != p) return std::string("spine repeats a vertex");
  for (int i = 1; i <= p; ++i) {
    if (a.y(c.v(i)) != 1) return "spine vertex " + std::to_string(c.v(i)) + " is not fully opened";
    if (i < p && !hops.within(c.v(i), c.v(i + 1), c.delta))
      return "spine step " + std::to_string(i) + " exceeds " + std::to_string(c.delta) + " hops";
  }
  std::set<Vertex> seen;
  Rational total = 0;
  for (int i = 0; i <= p + 1; ++i) {
    if (!c.leaf(i)) continue;
    Vertex l = *c.leaf(i);
    std::string name = "leaf " + std::to_string(l) + " at position " + std::to_string(i);
    if (spine.count(l)) return name + " lies on the spine";
    if (!seen.insert(l).second) return name + " appears twice";
    if (a.y(l) <= 0 || a.y(l) >= 1) return name + " is not fractional";
    if (!hops.within(l, c.anchor(i), c.delta)) return name + " is too far from its spine vertex";
    if (i >= 1 && i <= p && capacity[l] > capacity[c.v(i)]) return name + " is heavier than its spine vertex";
    total += a.y(l);
  }
  if (!is_integral(total)) return "leaf mass " + to_string(total) + " is not integral";
  return std::nullopt;
}

std::optional<std::string> find_fractional_outside(std::span<const Caterpillar> structures, const Assignment& a) {
  std::vector<char> inside(a.vertex_count(), 0);
  for (const auto& c : structures)
    for (Vertex v : c.vertices()) inside[v] = 1;
  for (Vertex v = 0; v < a.vertex_count(); ++v)
    if (!inside[v] && !is_integral(a.y(v))) return "vertex " + std::to_string(v) + " is fractional outside every caterpillar";
  return std::nullopt;
}

std::vector<int> dangerous_spine(const Caterpillar& c, std::span<const long long> capacity) {
  int p = c.length();
  // heaviest leaf strictly left / right of each position
  std::vector<long long> left(p + 2, -1), right(p + 2, -1);
  for (int i = 1; i <= p + 1; ++i)
    left[i] = std::max(left[i - 1], c.leaf(i - 1) ? capacity[*c.leaf(i - 1)] : -1LL);
  for (int i = p; i >= 0; --i)
    right[i] = std::max(right[i + 1], c.leaf(i + 1) ? capacity[*c.leaf(i + 1)] : -1LL);
  std::vector<int> out;
  for (int i = 1; i <= p; ++i) {
    long long L = capacity[c.v(i)];
    if (left[i] > L && right[i] > L) out.push_back(i);
  }
  return out;
}

namespace {

struct SideSums {
  Rational room;
  Rational mass;
};

SideSums side_sums(const Caterpillar& c, const Assignment& a, std::span<const long long> capacity, int i, Side side) {
  SideSums s;
  int lo = side == Side::kRight ? i + 1 : 0;
  int hi = side == Side::kRight ? c.length() + 1 : i - 1;
  for (int j = lo; j <= hi; ++j) {
    if (!c.leaf(j)) continue;
    Vertex l = *c.leaf(j);
    s.mass += a.y(l);
    if (capacity[l] > capacity[c.v(i)]) s.room += 1 - a.y(l);
  }
  return s;
}

}  // namespace

std::optional<SeparabilityWitness> separability_witness(const Caterpillar& c, const Assignment& a,
                                                        std::span<const long long> capacity) {
  auto gamma = dangerous_spine(c, capacity);
  if (gamma.empty()) return std::nullopt;
  long long lightest = capacity[c.v(gamma.front())];
  for (int i : gamma) lightest = std::min(lightest, capacity[c.v(i)]);
  for (int i : gamma) {
    if (capacity[c.v(i)] != lightest) continue;
    for (Side side : {Side::kRight, Side::kLeft}) {
      auto s = side_sums(c, a, capacity, i, side);
      if (s.room >= Rational(ceil_of(s.mass)) - s.mass) return SeparabilityWitness{i, side, s.room, s.mass};
    }
  }
  return std::nullopt;
}

CaterpillarBuild build_caterpillar(Assignment& a, const Graph& g, const HopDistances& hops, const ShiftContext& ctx) {
  int n = g.vertex_count();
  const auto& cap = ctx.capacity;
  auto heavier = [&](Vertex p, Vertex q) { return cap[p] != cap[q] ? cap[p] > cap[q] : p < q; };

  CaterpillarBuild out;
  std::vector<char> open(n, 1);
  std::vector<Vertex> owner(n, -1);  // hub a vertex was grouped under
  int remaining = n;
  while (remaining > 0) {
    Vertex v = -1;
    for (Vertex u = 0; u < n; ++u)
      if (open[u] && (v < 0 || heavier(u, v))) v = u;
    Vertex hub = v;
    for (Vertex w : g.neighbors(v))
      if (heavier(w, hub)) hub = w;
    for (Vertex u = 0; u < n; ++u)
      if (open[u] && hops.within(v, u, 2)) {
        open[u] = 0;
        owner[u] = hub;
        --remaining;
      }
    out.independent_set.push_back(v);
    out.hubs.push_back(hub);
  }

  // Fill every hub from its center's closed neighborhood. Neighborhoods of
  // distinct centers are disjoint, so fills never interfere.
  for (std::size_t s = 0; s < out.hubs.size(); ++s) {
    Vertex v = out.independent_set[s], hub = out.hubs[s];
    std::vector<Vertex> ball{v};
    ball.insert(ball.end(), g.neighbors(v).begin(), g.neighbors(v).end());
    std::sort(ball.begin(), ball.end());
    for (Vertex u : ball) {
      if (a.y(hub) == 1) break;
      if (u == hub || a.y(u) == 0) continue;
      shift(a, ctx, u, hub, std::min(a.y(u), Rational(1 - a.y(hub))));
    }
    if (a.y(hub) != 1)
      throw InvariantViolation("neighborhood of " + std::to_string(v) + " holds less than one unit of opening");
  }

  // Order hubs along a Hamiltonian path of the cube of their 7-hop graph.
  int h = static_cast<int>(out.hubs.size());
  Graph near(h);
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j)
      if (hops.within(out.hubs[i], out.hubs[j], 7)) near.add_edge(i, j);
  auto order = hamiltonian_path_in_cube(near);

  std::vector<char> is_hub(n, 0);
  for (Vertex hub : out.hubs) is_hub[hub] = 1;
  std::map<Vertex, std::vector<Vertex>> group;
  for (Vertex u = 0; u < n; ++u)
    if (!is_hub[u]) group[owner[u]].push_back(u);

  Caterpillar& c = out.caterpillar;
  c.delta = 21;
  c.leaves.push_back(std::nullopt);
  for (int idx : order) {
    Vertex hub = out.hubs[idx];
    auto& members = group[hub];
    group_shift(a, ctx, members);
    std::optional<Vertex> leaf;
    for (Vertex u : members)
      if (!is_integral(a.y(u))) leaf = u;
    c.spine.push_back(hub);
    c.leaves.push_back(leaf);
  }
  c.leaves.push_back(std::nullopt);
  return out;
}

namespace {

std::vector<Vertex> spine_walk(const Caterpillar& c, int from, int to) {
  int a = std::clamp(from, 1, c.length()), b = std::clamp(to, 1, c.length());
  std::vector<Vertex> out;
  for (int i = a;; i += (b > a ? 1 : -1)) {
    out.push_back(c.v(i));
    if (i == b) break;
  }
  return out;
}

// Path from spine vertex v_i to the leaf at position j along the spine.
FlowPath spine_to_leaf(const Caterpillar& c, int i, int j, const Rational& amount) {
  FlowPath p{amount, spine_walk(c, i, j)};
  p.vertices.push_back(*c.leaf(j));
  return p;
}

Caterpillar piece(int delta, std::vector<Vertex> spine, std::vector<std::optional<Vertex>> leaves) {
  Caterpillar c;
  c.delta = delta;
  c.spine = std::move(spine);
  c.leaves = std::move(leaves);
  return c;
}

template <class T>
std::vector<T> slice(const std::vector<T>& v, int lo, int hi) {  // [lo, hi)
  if (hi <= lo) return {};
  return std::vector<T>(v.begin() + lo, v.begin() + hi);
}

void separate_into(const Caterpillar& c, Assignment& a, const ShiftContext& ctx, std::vector<Caterpillar>& out) {
  if (c.spine.empty()) {
    if (c.has_leaves()) throw InvariantViolation("separate produced leaves without a spine");
    return;
  }
  auto witness = separability_witness(c, a, ctx.capacity);
  if (!witness) {
    out.push_back(c);
    return;
  }
  // Work on the orientation in which the witness side is the right side.
  bool flipped = witness->side == Side::kLeft;
  const Caterpillar f = flipped ? c.reversed() : c;
  auto recurse = [&](const Caterpillar& child) { separate_into(flipped ? child.reversed() : child, a, ctx, out); };
  int p = f.length();
  int i = flipped ? p + 1 - witness->index : witness->index;
  Vertex vi = f.v(i);

  Rational mass = 0;
  for (int j = i + 1; j <= p + 1; ++j)
    if (f.leaf(j)) mass += a.y(*f.leaf(j));

  if (is_integral(mass)) {
    auto near_leaves = slice(f.leaves, 0, i + 1);
    near_leaves.push_back(std::nullopt);
    std::vector<std::optional<Vertex>> far_leaves{std::nullopt};
    auto rest = slice(f.leaves, i + 1, p + 2);
    far_leaves.insert(far_leaves.end(), rest.begin(), rest.end());
    recurse(piece(f.delta, slice(f.spine, 0, i), near_leaves));
    recurse(piece(f.delta, slice(f.spine, i, p), far_leaves));
    return;
  }

  // Round the right side up by pulling opening from v_i into heavier leaves.
  Rational need = Rational(ceil_of(mass)) - mass;
  std::vector<FlowPath> paths;
  for (int j = i + 1; j <= p + 1 && need > 0; ++j) {
    if (!f.leaf(j) || ctx.capacity[*f.leaf(j)] <= ctx.capacity[vi]) continue;
    Rational amount = std::min(Rational(1 - a.y(*f.leaf(j))), need);
    if (amount <= 0) continue;
    paths.push_back(spine_to_leaf(f, i, j, amount));
    need -= amount;
  }
  if (need != 0) throw InvariantViolation("separability witness without enough room");
  chain_shift(a, ctx, YFlow::from_paths(std::move(paths)));

  if (i < p) {
    std::vector<std::optional<Vertex>> far_leaves{std::nullopt};
    for (int j = i + 1; j <= p + 1; ++j) {
      auto l = f.leaf(j);
      far_leaves.push_back(l && a.y(*l) < 1 ? l : std::nullopt);
    }
    recurse(piece(f.delta, slice(f.spine, i, p), far_leaves));
  }

  if (i == 1) {
    std::vector<Vertex> group{vi};
    if (f.leaf(0)) group.push_back(*f.leaf(0));
    if (f.leaf(1)) group.push_back(*f.leaf(1));
    group_shift(a, ctx, group);
    return;
  }

  if (f.leaf(i)) shift(a, ctx, *f.leaf(i), vi, std::min(a.y(*f.leaf(i)), Rational(1 - a.y(vi))));

  auto near_leaves = slice(f.leaves, 0, i);
  if (a.y(vi) == 1) {
    std::optional<Vertex> u;
    if (f.leaf(i) && a.y(*f.leaf(i)) > 0) u = f.leaf(i);
    near_leaves.push_back(u);
    near_leaves.push_back(std::nullopt);
    recurse(piece(f.delta, slice(f.spine, 0, i), near_leaves));
  } else {
    near_leaves.push_back(vi);
    recurse(piece(f.delta, slice(f.spine, 0, i - 1), near_leaves));
  }
}

}  // namespace

std::vector<Caterpillar> separate(const Caterpillar& c, Assignment& a, const ShiftContext& ctx) {
  std::vector<Caterpillar> out;
  separate_into(c, a, ctx, out);
  return out;
}

std::vector<Caterpillar> make_safe(const Caterpillar& input, Assignment& a, const ShiftContext& ctx) {
  const auto& cap = ctx.capacity;
  Caterpillar c = input;
  int removals = 0;
  for (;;) {
    if (c.spine.empty()) {
      if (c.has_leaves()) throw InvariantViolation("make_safe left leaves without a spine");
      return {};
    }
    auto gamma = dangerous_spine(c, cap);
    if (gamma.empty()) return {c};
    if (++removals > 2) throw InvariantViolation("make_safe needed more than two removals: " + describe(c));

    int ai = gamma.front();
    for (int i : gamma)
      if (cap[c.v(i)] < cap[c.v(ai)]) ai = i;
    Vertex va = c.v(ai);
    int p = c.length();

    Rational room = 0;
    for (int j = 0; j <= p + 1; ++j)
      if (c.leaf(j) && cap[*c.leaf(j)] > cap[va]) room += 1 - a.y(*c.leaf(j));
    Rational left = std::min(Rational(1), room);
    std::vector<FlowPath> paths;
    for (int j = 0; j <= p + 1 && left > 0; ++j) {
      if (!c.leaf(j) || cap[*c.leaf(j)] <= cap[va]) continue;
      Rational amount = std::min(Rational(1 - a.y(*c.leaf(j))), left);
      paths.push_back(spine_to_leaf(c, ai, j, amount));
      left -= amount;
    }
    chain_shift(a, ctx, YFlow::from_paths(std::move(paths)));

    std::vector<Vertex> group{va};
    if (c.leaf(ai)) group.push_back(*c.leaf(ai));
    if (c.leaf(ai - 1)) group.push_back(*c.leaf(ai - 1));
    group_shift(a, ctx, group);
    std::optional<Vertex> u;
    for (Vertex w : group)
      if (!is_integral(a.y(w))) u = w;

    Caterpillar next;
    next.delta = 2 * c.delta;
    for (int i = 1; i <= p; ++i)
      if (i != ai) next.spine.push_back(c.v(i));
    for (int j = 0; j <= ai - 2; ++j) next.leaves.push_back(c.leaf(j));
    next.leaves.push_back(u);
    for (int j = ai + 1; j <= p + 1; ++j) next.leaves.push_back(c.leaf(j));
    for (auto& l : next.leaves)
      if (l && is_integral(a.y(*l))) l.reset();
    c = std::move(next);
  }
}

namespace {

// Builds the rounding flow recursively. Recursion sometimes needs a stand-in
// spine vertex and leaf; those get ids past the real vertex range and are
// rewritten into real paths before returning.
class RoundingFlowBuilder {
 public:
  RoundingFlowBuilder(std::span<const long long> capacity, int first_synthetic)
      : capacity_(capacity), first_synthetic_(first_synthetic) {}

  struct View {
    std::vector<Vertex> spine;
    std::vector<std::optional<Vertex>> leaves;
    std::vector<Rational> y;  // per leaf position
  };

  struct Result {
    std::vector<FlowPath> paths;
    std::set<Vertex> sources;
    std::set<Vertex> sinks;
  };

  Result build(const View& v) {
    int p = static_cast<int>(v.spine.size());
    bool any = false;
    for (const auto& l : v.leaves) any = any || l.has_value();
    if (!any) return {};
    if (p == 0) throw InvariantViolation("rounding flow: leaves without a spine");

    Rational alpha = 0;
    int i = -1;
    for (int j = 0; j <= p + 1; ++j) {
      if (!v.leaves[j]) continue;
      alpha += v.y[j];
      if (alpha >= 1) {
        i = j;
        break;
      }
    }
    if (i < 0) throw InvariantViolation("rounding flow: leaf mass is not integral");
    std::vector<int> X;
    for (int j = 0; j <= i; ++j)
      if (v.leaves[j]) X.push_back(j);
    int i0 = heaviest(v, X, -1);

    if (alpha == 1) {
      Result r;
      if (i <= p) {
        View sub;
        sub.spine = slice(v.spine, i, p);
        sub.leaves.push_back(std::nullopt);
        sub.y.push_back(0);
        for (int j = i + 1; j <= p + 1; ++j) {
          sub.leaves.push_back(v.leaves[j]);
          sub.y.push_back(v.y[j]);
        }
        r = build(sub);
      }
      for (int j : X)
        if (j != i0) add_source(r, v, j, i0, v.y[j]);
      r.sinks.insert(*v.leaves[i0]);
      return r;
    }

    if (i > p) throw InvariantViolation("rounding flow: excess mass at the last leaf");
    const Rational z = v.y[i];
    const Vertex li = *v.leaves[i];

    if (i0 != i) {
      View sub;
      sub.spine = slice(v.spine, i - 1, p);
      sub.leaves.push_back(std::nullopt);
      sub.y.push_back(0);
      sub.leaves.push_back(li);
      sub.y.push_back(alpha - 1);
      for (int j = i + 1; j <= p + 1; ++j) {
        sub.leaves.push_back(v.leaves[j]);
        sub.y.push_back(v.y[j]);
      }
      Result r = build(sub);
      if (r.sources.count(li)) {
        r.paths.push_back(leaf_path(v, i, i0, z - (alpha - 1)));
      } else if (r.sinks.count(li)) {
        // li may only take 1 - z; the rest continues towards the heavy leaf.
        Rational keep = 1 - z;
        std::vector<FlowPath> paths;
        for (auto& path : r.paths) {
          if (path.vertices.back() != li) {
            paths.push_back(std::move(path));
            continue;
          }
          Rational take = std::min(keep, path.amount);
          keep -= take;
          Rational rest = path.amount - take;
          if (rest > 0) {
            FlowPath moved{rest, path.vertices};
            moved.vertices.pop_back();
            extend_along_spine(moved, v, i, i0);
            paths.push_back(std::move(moved));
          }
          if (take > 0) {
            path.amount = take;
            paths.push_back(std::move(path));
          }
        }
        r.paths = std::move(paths);
      } else {
        throw InvariantViolation("rounding flow: truncated leaf is neither source nor sink");
      }
      for (int j : X)
        if (j != i && j != i0) add_source(r, v, j, i0, v.y[j]);
      r.sinks.insert(*v.leaves[i0]);
      return r;
    }

    // The last leaf of the prefix is the heaviest: stand in for it with a
    // synthetic spine vertex and leaf as heavy as the runner-up.
    int i1 = heaviest(v, X, i);
    long long stand_in = cap(*v.leaves[i1]);
    Vertex sa = synthetic(stand_in), sl = synthetic(stand_in);
    View sub;
    sub.spine.push_back(sa);
    auto rest = slice(v.spine, i, p);
    sub.spine.insert(sub.spine.end(), rest.begin(), rest.end());
    sub.leaves = {std::nullopt, sl};
    sub.y = {Rational(0), alpha - 1};
    for (int j = i + 1; j <= p + 1; ++j) {
      sub.leaves.push_back(v.leaves[j]);
      sub.y.push_back(v.y[j]);
    }
    Result r = build(sub);
    Vertex vi = v.spine[i - 1];

    if (r.sources.count(sl)) {
      // The prefix leaves other than li feed both what the stand-in sent and
      // li's own deficit.
      r.sources.erase(sl);
      struct Demand {
        int path;  // index into r.paths, -1 for li
        Rational amount;
      };
      std::vector<Demand> demands;
      for (int idx = 0; idx < static_cast<int>(r.paths.size()); ++idx)
        if (r.paths[idx].vertices.front() == sl) demands.push_back({idx, r.paths[idx].amount});
      demands.push_back({-1, 1 - z});

      std::vector<FlowPath> fresh;
      std::size_t d = 0;
      Rational d_left = demands[0].amount;
      for (int j : X) {
        if (j == i) continue;
        Rational supply = v.y[j];
        r.sources.insert(*v.leaves[j]);
        while (supply > 0) {
          if (d >= demands.size()) throw InvariantViolation("rounding flow: supply exceeds demand");
          Rational amount = std::min(supply, d_left);
          if (demands[d].path < 0) {
            fresh.push_back(leaf_path(v, j, i, amount));
          } else {
            const auto& old = r.paths[demands[d].path];
            FlowPath np{amount, {*v.leaves[j]}};
            auto walk = walk_positions(v, j, i);
            np.vertices.insert(np.vertices.end(), walk.begin(), walk.end());
            np.vertices.insert(np.vertices.end(), old.vertices.begin() + 2, old.vertices.end());
            fresh.push_back(std::move(np));
          }
          supply -= amount;
          d_left -= amount;
          if (d_left == 0 && ++d < demands.size()) d_left = demands[d].amount;
        }
      }
      std::vector<FlowPath> kept;
      for (auto& path : r.paths)
        if (path.vertices.front() != sl) kept.push_back(std::move(path));
      kept.insert(kept.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
      r.paths = std::move(kept);
      r.sinks.insert(li);
    } else if (r.sinks.count(sl)) {
      r.sinks.erase(sl);
      Rational keep = 1 - z;
      std::vector<FlowPath> paths;
      for (auto& path : r.paths) {
        if (path.vertices.back() != sl) {
          paths.push_back(std::move(path));
          continue;
        }
        // drop (sa, sl)
        path.vertices.pop_back();
        path.vertices.pop_back();
        Rational take = std::min(keep, path.amount);
        keep -= take;
        Rational rest = path.amount - take;
        if (rest > 0) {
          FlowPath moved{rest, path.vertices};
          moved.vertices.push_back(vi);
          extend_along_spine(moved, v, i, i1);
          paths.push_back(std::move(moved));
        }
        if (take > 0) {
          path.amount = take;
          path.vertices.push_back(vi);
          path.vertices.push_back(li);
          paths.push_back(std::move(path));
        }
      }
      r.paths = std::move(paths);
      for (int j : X)
        if (j != i && j != i1) add_source(r, v, j, i1, v.y[j]);
      r.sinks.insert(li);
      r.sinks.insert(*v.leaves[i1]);
    } else {
      throw InvariantViolation("rounding flow: stand-in leaf is neither source nor sink");
    }
    for (const auto& path : r.paths)
      for (Vertex w : path.vertices)
        if (w == sa || w == sl) throw InvariantViolation("rounding flow: stand-in vertex left in a path");
    return r;
  }

 private:
  long long cap(Vertex v) const {
    return v < first_synthetic_ ? capacity_[v] : synthetic_capacity_[v - first_synthetic_];
  }

  Vertex synthetic(long long c) {
    synthetic_capacity_.push_back(c);
    return first_synthetic_ + static_cast<int>(synthetic_capacity_.size()) - 1;
  }

  // Heaviest leaf among positions X (skipping `skip`), ties to the lowest position.
  int heaviest(const View& v, const std::vector<int>& X, int skip) const {
    int best = -1;
    for (int j : X) {
      if (j == skip) continue;
      if (best < 0 || cap(*v.leaves[j]) > cap(*v.leaves[best])) best = j;
    }
    return best;
  }

  static std::vector<Vertex> walk_positions(const View& v, int from, int to) {
    int p = static_cast<int>(v.spine.size());
    int a = std::clamp(from, 1, p), b = std::clamp(to, 1, p);
    std::vector<Vertex> out;
    for (int i = a;; i += (b > a ? 1 : -1)) {
      out.push_back(v.spine[i - 1]);
      if (i == b) break;
    }
    return out;
  }

  static FlowPath leaf_path(const View& v, int from, int to, const Rational& amount) {
    FlowPath p{amount, {*v.leaves[from]}};
    auto walk = walk_positions(v, from, to);
    p.vertices.insert(p.vertices.end(), walk.begin(), walk.end());
    p.vertices.push_back(*v.leaves[to]);
    return p;
  }

  // `path` currently ends at the spine vertex of position `from`; continue it
  // along the spine to the leaf at position `to`.
  static void extend_along_spine(FlowPath& path, const View& v, int from, int to) {
    auto walk = walk_positions(v, from, to);
    path.vertices.insert(path.vertices.end(), walk.begin() + 1, walk.end());
    path.vertices.push_back(*v.leaves[to]);
  }

  static void add_source(Result& r, const View& v, int j, int target, const Rational& amount) {
    r.sources.insert(*v.leaves[j]);
    if (amount > 0) r.paths.push_back(leaf_path(v, j, target, amount));
  }

  std::span<const long long> capacity_;
  int first_synthetic_;
  std::vector<long long> synthetic_capacity_;
};

}  // namespace

YFlow build_rounding_flow(const Caterpillar& c, const Assignment& a, std::span<const long long> capacity) {
  if (!is_safe(c, capacity)) throw InvariantViolation("rounding flow needs a safe caterpillar: " + describe(c));
  RoundingFlowBuilder builder(capacity, a.vertex_count());
  RoundingFlowBuilder::View view;
  view.spine = c.spine;
  view.leaves = c.leaves;
  for (const auto& l : c.leaves) view.y.push_back(l ? a.y(*l) : Rational(0));
  auto r = builder.build(view);

  std::map<Vertex, Rational> out, in;
  for (const auto& p : r.paths) {
    for (Vertex w : p.vertices)
      if (w >= a.vertex_count()) throw InvariantViolation("rounding flow: stand-in vertex left in a path");
    out[p.vertices.front()] += p.amount;
    in[p.vertices.back()] += p.amount;
  }
  for (const auto& l : c.leaves) {
    if (!l) continue;
    bool src = r.sources.count(*l) > 0, snk = r.sinks.count(*l) > 0;
    if (src == snk) throw InvariantViolation("rounding flow: leaf " + std::to_string(*l) + " is not exactly one terminal");
    if (src && out[*l] != a.y(*l)) throw InvariantViolation("rounding flow: source " + std::to_string(*l) + " does not empty");
    if (snk && in[*l] != 1 - a.y(*l)) throw InvariantViolation("rounding flow: sink " + std::to_string(*l) + " does not fill");
  }
  YFlow f;
  f.paths = std::move(r.paths);
  f.sources.assign(r.sources.begin(), r.sources.end());
  f.sinks.assign(r.sinks.begin(), r.sinks.end());
  return f;
}

RoundingReport round_y(Assignment& a, const Graph& g, const HopDistances& hops, std::span<const long long> capacity,
                       Trace* trace, const RoundingOptions& options) {
  Rational total = a.y_sum();
  if (!is_integral(total)) throw InvariantViolation("opening mass is not integral");
  int k = static_cast<int>(total.get_num().get_si());
  if (auto v = find_lp1_violation(hops, capacity, k, a, 1)) throw InvariantViolation("input is not 1-feasible: " + *v);

  ShiftContext ctx{capacity, trace, {}};
  if (options.check_each_primitive)
    ctx.after_primitive = [&hops, capacity, k](const Assignment& cur, const std::string& what) {
      if (auto v = find_lp1_violation(hops, capacity, k, cur, -1))
        throw InvariantViolation("after " + what + ": " + *v);
    };

  RoundingReport report;
  auto stage = [&](const std::string& name, std::span<const Caterpillar> structures, int delta_bound, int radius_bound) {
    StageReport s{name, global_delta(a, hops), -1, structures.size()};
    if (delta_bound >= 0 && s.delta > delta_bound)
      throw InvariantViolation(name + ": assignment is only " + std::to_string(s.delta) + "-feasible, bound " +
                               std::to_string(delta_bound));
    for (const auto& c : structures)
      for (Vertex v : c.vertices()) s.retained_radius = std::max(s.retained_radius, radius_of(a, hops, v));
    if (radius_bound >= 0 && s.retained_radius > radius_bound)
      throw InvariantViolation(name + ": retained radius " + std::to_string(s.retained_radius) + " exceeds " +
                               std::to_string(radius_bound));
    if (auto v = find_lp1_violation(hops, capacity, k, a, s.delta)) throw InvariantViolation(name + ": " + *v);
    for (const auto& c : structures)
      if (auto v = find_caterpillar_violation(c, a, hops, capacity))
        throw InvariantViolation(name + ": " + *v + " in " + describe(c));
    if (auto v = find_fractional_outside(structures, a)) throw InvariantViolation(name + ": " + *v);
    report.stages.push_back(s);
  };

  if (trace) trace->note("stage caterpillar");
  auto built = build_caterpillar(a, g, hops, ctx);
  std::vector<Caterpillar> structures{built.caterpillar};
  stage("caterpillar", structures, 5, -1);

  if (trace) trace->note("stage separate");
  auto pieces = separate(built.caterpillar, a, ctx);
  stage("separate", pieces, 68, 47);
  for (const auto& c : pieces)
    if (separability_witness(c, a, capacity))
      throw InvariantViolation("separate returned a separable piece: " + describe(c));

  if (trace) trace->note("stage make_safe");
  std::vector<Caterpillar> safe;
  for (const auto& c : pieces) {
    auto out = make_safe(c, a, ctx);
    safe.insert(safe.end(), out.begin(), out.end());
  }
  stage("make_safe", safe, -1, -1);
  for (const auto& c : safe)
    if (!is_safe(c, capacity)) throw InvariantViolation("make_safe returned a dangerous piece: " + describe(c));

  if (trace) trace->note("stage rounding_flow");
  for (const auto& c : safe) {
    auto flow = build_rounding_flow(c, a, capacity);
    if (!flow.paths.empty()) chain_shift(a, ctx, flow);
  }
  for (Vertex v = 0; v < a.vertex_count(); ++v)
    if (!is_integral(a.y(v))) throw InvariantViolation("vertex " + std::to_string(v) + " still fractional");
  stage("integral", {}, -1, -1);
  report.final_delta = report.stages.back().delta;
  return report;
}

}  // namespace capkc
