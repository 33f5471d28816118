#pragma once

#include <optional>
#include <vector>

namespace capkc {

// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);
  int add_arc(int from, int to, long long capacity);  // returns arc id
  long long run(int source, int sink);
  long long flow_on(int arc) const;

 private:
  struct Arc {
    int to;
    long long cap;
    long long orig;
  };
  bool levels(int s, int t);
  long long push(int v, int t, long long limit);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_, next_;
};

// Clients 0..n_clients-1 each need one slot at some center; center c offers
// slots[c]. allowed[c] lists the clients center c may take. Returns the
// center of every client, or nullopt when no complete assignment exists.
std::optional<std::vector<int>> assign_clients(int n_clients, const std::vector<long long>& slots,
                                               const std::vector<std::vector<int>>& allowed);

}  // namespace capkc
