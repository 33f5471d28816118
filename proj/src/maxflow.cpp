#include "maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace capkc {

MaxFlow::MaxFlow(int nodes) : out_(nodes), level_(nodes), next_(nodes) {}

int MaxFlow::add_arc(int from, int to, long long capacity) {
  int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, capacity});
  out_[from].push_back(id);
  arcs_.push_back({from, 0, 0});
  out_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::levels(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<int> q{s};
  level_[s] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int id : out_[v]) {
      const Arc& a = arcs_[id];
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push_back(a.to);
      }
    }
  }
  return level_[t] >= 0;
}

long long MaxFlow::push(int v, int t, long long limit) {
  if (v == t) return limit;
  for (int& i = next_[v]; i < static_cast<int>(out_[v].size()); ++i) {
    int id = out_[v][i];
    Arc& a = arcs_[id];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    long long got = push(a.to, t, std::min(limit, a.cap));
    if (got > 0) {
      a.cap -= got;
      arcs_[id ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

long long MaxFlow::run(int source, int sink) {
  long long total = 0;
  while (levels(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (long long f = push(source, sink, std::numeric_limits<long long>::max())) total += f;
  }
  return total;
}

long long MaxFlow::flow_on(int arc) const { return arcs_[arc].orig - arcs_[arc].cap; }

std::optional<std::vector<int>> assign_clients(int n_clients, const std::vector<long long>& slots,
                                               const std::vector<std::vector<int>>& allowed) {
  int centers = static_cast<int>(slots.size());
  int source = centers + n_clients, sink = source + 1;
  MaxFlow mf(sink + 1);
  for (int c = 0; c < centers; ++c) mf.add_arc(source, c, slots[c]);
  std::vector<std::vector<std::pair<int, int>>> arcs_of(centers);
  for (int c = 0; c < centers; ++c)
    for (int v : allowed[c]) arcs_of[c].emplace_back(v, mf.add_arc(c, centers + v, 1));
  for (int v = 0; v < n_clients; ++v) mf.add_arc(centers + v, sink, 1);
  if (mf.run(source, sink) != n_clients) return std::nullopt;
  std::vector<int> owner(n_clients, -1);
  for (int c = 0; c < centers; ++c)
    for (auto [v, id] : arcs_of[c])
      if (mf.flow_on(id) > 0) owner[v] = c;
  return owner;
}

}  // namespace capkc
