#include "instance.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "errors.hpp"

namespace capkc {

const char* mode_name(CapacityMode mode) { return mode == CapacityMode::kHard ? "hard" : "soft"; }

Instance::Instance(int vertex_count, std::vector<long long> capacity, int k, CapacityMode mode,
                   std::vector<WeightedEdge> edges)
    : n_(vertex_count), k_(k), mode_(mode), capacity_(std::move(capacity)), edges_(std::move(edges)) {
  if (n_ < 0) throw InputError("negative vertex count");
  if (static_cast<int>(capacity_.size()) != n_) throw InputError("capacity list does not match vertex count");
  if (k_ < 0) throw InputError("negative k");
  for (Vertex v = 0; v < n_; ++v)
    if (capacity_[v] < 0) throw InputError("negative capacity at vertex " + std::to_string(v));

  Graph g(n_);
  std::vector<std::vector<std::pair<Vertex, const Rational*>>> adj(n_);
  for (const auto& e : edges_) {
    try {
      g.add_edge(e.u, e.v);
    } catch (const std::invalid_argument& err) {
      throw InputError(err.what());
    }
    if (e.weight <= 0)
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") needs a positive weight");
    adj[e.u].emplace_back(e.v, &e.weight);
    adj[e.v].emplace_back(e.u, &e.weight);
  }

  dist_.assign(static_cast<std::size_t>(n_) * n_, Rational(0));
  reach_.assign(static_cast<std::size_t>(n_) * n_, 0);

  bool uniform = true;
  for (const auto& e : edges_)
    if (e.weight != edges_.front().weight) uniform = false;

  if (uniform) {
    Rational w = edges_.empty() ? Rational(1) : edges_.front().weight;
    for (Vertex s = 0; s < n_; ++s) {
      auto hops = bfs_distances(g, s);
      for (Vertex t = 0; t < n_; ++t)
        if (hops[t] != HopDistances::kUnreachable) {
          reach_[index(s, t)] = 1;
          dist_[index(s, t)] = w * hops[t];
        }
    }
    return;
  }

  // Dijkstra from every source; exact rational keys.
  for (Vertex s = 0; s < n_; ++s) {
    std::vector<char> done(n_, 0);
    using Item = std::pair<Rational, Vertex>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first || (a.first == b.first && a.second > b.second); };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    reach_[index(s, s)] = 1;
    heap.emplace(Rational(0), s);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (done[u]) continue;
      done[u] = 1;
      for (auto [w, weight] : adj[u]) {
        Rational nd = d + *weight;
        if (!reach_[index(s, w)] || nd < dist_[index(s, w)]) {
          reach_[index(s, w)] = 1;
          dist_[index(s, w)] = nd;
          heap.emplace(nd, w);
        }
      }
    }
  }
  for (const auto& e : edges_)
    if (dist_[index(e.u, e.v)] < e.weight)
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") weight " +
                       to_string(e.weight) + " exceeds the path distance " + to_string(dist_[index(e.u, e.v)]) +
                       "; weights must already form a metric");
}

Graph Instance::unit_graph() const {
  Graph g(n_);
  for (const auto& e : edges_) g.add_edge(e.u, e.v);
  return g;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

long long parse_count(const std::string& tok, int line, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw InputError(line, std::string("expected a non-negative integer for ") + what + ", got '" + tok + "'");
  try {
    return std::stoll(tok);
  } catch (const std::exception&) {
    throw InputError(line, std::string(what) + " out of range");
  }
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0, k = 0;
  CapacityMode mode = CapacityMode::kHard;
  std::vector<long long> capacity;
  std::vector<char> seen;
  std::vector<WeightedEdge> edges;
  Graph g;
  long long vertex_lines = 0;

  while (std::getline(in, line)) {
    ++line_no;
    auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 6 || tok[0] != "capkc")
        throw InputError(line_no, "expected header 'capkc 1 <n> <m> <k> <hard|soft>'");
      if (tok[1] != "1") throw InputError(line_no, "unsupported format version '" + tok[1] + "'");
      n = parse_count(tok[2], line_no, "n");
      m = parse_count(tok[3], line_no, "m");
      k = parse_count(tok[4], line_no, "k");
      if (n > 1000000 || k > 1000000 || m > 100000000) throw InputError(line_no, "instance too large");
      if (tok[5] == "hard") mode = CapacityMode::kHard;
      else if (tok[5] == "soft") mode = CapacityMode::kSoft;
      else throw InputError(line_no, "mode must be 'hard' or 'soft', got '" + tok[5] + "'");
      capacity.assign(n, 0);
      seen.assign(n, 0);
      g = Graph(static_cast<int>(n));
      have_header = true;
      continue;
    }
    if (tok[0] == "v") {
      if (tok.size() != 3) throw InputError(line_no, "expected 'v <id> <capacity>'");
      long long id = parse_count(tok[1], line_no, "vertex id");
      if (id >= n) throw InputError(line_no, "vertex id " + tok[1] + " out of range");
      if (seen[id]) throw InputError(line_no, "vertex " + tok[1] + " declared twice");
      seen[id] = 1;
      capacity[id] = parse_count(tok[2], line_no, "capacity");
      ++vertex_lines;
    } else if (tok[0] == "e") {
      if (tok.size() != 4) throw InputError(line_no, "expected 'e <u> <v> <weight>'");
      long long u = parse_count(tok[1], line_no, "edge endpoint");
      long long v = parse_count(tok[2], line_no, "edge endpoint");
      if (u >= n || v >= n) throw InputError(line_no, "edge endpoint out of range");
      if (u == v) throw InputError(line_no, "self-loop at vertex " + tok[1]);
      if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
        throw InputError(line_no, "duplicate edge (" + tok[1] + ", " + tok[2] + ")");
      g.add_edge(static_cast<int>(u), static_cast<int>(v));
      Rational w;
      try {
        w = parse_rational(tok[3]);
      } catch (const std::invalid_argument& err) {
        throw InputError(line_no, err.what());
      }
      if (w <= 0) throw InputError(line_no, "edge weight must be positive");
      edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    } else {
      throw InputError(line_no, "unknown record '" + tok[0] + "'");
    }
  }
  if (!have_header) throw InputError(line_no, "missing header");
  if (vertex_lines != n)
    throw InputError(line_no, "expected " + std::to_string(n) + " vertex lines, found " + std::to_string(vertex_lines));
  if (static_cast<long long>(edges.size()) != m)
    throw InputError(line_no, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(edges.size()));
  return Instance(static_cast<int>(n), std::move(capacity), static_cast<int>(k), mode, std::move(edges));
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << "capkc 1 " << inst.vertex_count() << ' ' << inst.edges().size() << ' ' << inst.k() << ' '
      << mode_name(inst.mode()) << '\n';
  for (Vertex v = 0; v < inst.vertex_count(); ++v) out << "v " << v << ' ' << inst.capacity(v) << '\n';
  for (const auto& e : inst.edges()) out << "e " << e.u << ' ' << e.v << ' ' << to_string(e.weight) << '\n';
}

Graph threshold_graph(const Instance& inst, const Rational& r) {
  Graph g(inst.vertex_count());
  for (Vertex u = 0; u < inst.vertex_count(); ++u)
    for (Vertex v = u + 1; v < inst.vertex_count(); ++v)
      if (inst.reachable(u, v) && inst.distance(u, v) <= r) g.add_edge(u, v);
  return g;
}

std::vector<Rational> candidate_radii(const Instance& inst) {
  std::vector<Rational> out;
  for (Vertex u = 0; u < inst.vertex_count(); ++u)
    for (Vertex v = u + 1; v < inst.vertex_count(); ++v)
      if (inst.reachable(u, v)) out.push_back(inst.distance(u, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace capkc
