#include <sstream>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "x_rounding.hpp"

using namespace capkc;
using fixtures::make_graph;
using fixtures::q;

namespace {

Graph gadget() {
  std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}};
  for (Vertex m = 2; m < 6; ++m) {
    edges.emplace_back(0, m);
    edges.emplace_back(1, m);
  }
  return make_graph(6, edges);
}

Solution parse(const std::string& text, int n) {
  std::istringstream in(text);
  return parse_solution(in, n);
}

}  // namespace

TEST_SUITE("x_rounding") {
  TEST_CASE("one center serves a star") {
    Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    std::vector<long long> cap{4, 1, 1, 1};
    Assignment a(4, CapacityMode::kHard);
    a.set_y(0, 1);
    for (Vertex v = 0; v < 4; ++v) a.set_x(0, v, 1);
    Solution s = round_x(HopDistances(star), cap, a, 1);
    CHECK(s.assignment == std::vector<Vertex>{0, 0, 0, 0});
    CHECK(s.opened() == 1);
    CHECK_FALSE(find_solution_violation(star, cap, CapacityMode::kHard, s));
  }

  TEST_CASE("two gadget centers split the clients within capacity") {
    Graph g = gadget();
    std::vector<long long> cap(6, 4);
    Assignment a(6, CapacityMode::kHard);
    a.set_y(0, 1);
    a.set_y(1, 1);
    for (Vertex v = 0; v < 6; ++v) {
      a.set_x(0, v, q("1/2"));
      a.set_x(1, v, q("1/2"));
    }
    Solution s = round_x(HopDistances(g), cap, a, 1);
    int load0 = 0, load1 = 0;
    for (Vertex c : s.assignment) (c == 0 ? load0 : load1) += 1;
    CHECK(load0 + load1 == 6);
    CHECK(load0 <= 4);
    CHECK(load1 <= 4);
    CHECK_FALSE(find_solution_violation(g, cap, CapacityMode::kHard, s));
  }

  TEST_CASE("fractional openings are refused") {
    Graph g = gadget();
    std::vector<long long> cap(6, 4);
    Assignment a(6, CapacityMode::kHard);
    a.set_y(0, q("1/2"));
    CHECK_THROWS_AS(round_x(HopDistances(g), cap, a, 1), InvariantViolation);
  }

  TEST_CASE("solution validator") {
    Graph path = make_graph(3, {{0, 1}, {1, 2}});
    std::vector<long long> cap{1, 2, 1};
    Solution s = parse("solution 1 1\ncenter 1 1\nassign 0 1\nassign 1 1\nassign 2 1\n", 3);
    auto v = find_solution_violation(path, cap, CapacityMode::kHard, s);
    REQUIRE(v);
    CHECK(v->find("serves 3") != std::string::npos);
    cap[1] = 3;
    CHECK_FALSE(find_solution_violation(path, cap, CapacityMode::kHard, s));
    s.radius = 0;
    CHECK(find_solution_violation(path, cap, CapacityMode::kHard, s));
    s.radius = 1;
    s.k = 2;
    CHECK(find_solution_violation(path, cap, CapacityMode::kHard, s));
    s.k = 1;
    s.centers[1] = 2;
    s.k = 2;
    CHECK(find_solution_violation(path, cap, CapacityMode::kHard, s));
    CHECK_FALSE(find_solution_violation(path, cap, CapacityMode::kSoft, s));
    Solution far = parse("solution 1 1\ncenter 0 1\nassign 0 0\nassign 1 0\nassign 2 0\n", 3);
    CHECK(find_solution_violation(path, std::vector<long long>{5, 5, 5}, CapacityMode::kHard, far));
  }

  TEST_CASE("solution text round trip") {
    Solution s;
    s.k = 3;
    s.radius = 2;
    s.threshold = q("5/2");
    s.centers = {{0, 2}, {2, 1}};
    s.assignment = {0, 0, 2};
    std::ostringstream out;
    write_solution(out, s);
    Solution back = parse(out.str(), 3);
    CHECK(back.k == 3);
    CHECK(back.radius == 2);
    CHECK(back.threshold == q("5/2"));
    CHECK(back.centers == s.centers);
    CHECK(back.assignment == s.assignment);
    CHECK(parse("solution 1 0\ncenter 0 1\nassign 0 0\n", 1).threshold == 1);
  }

  TEST_CASE("malformed solutions") {
    CHECK_THROWS_AS(parse("center 0 1\n", 2), InputError);
    CHECK_THROWS_AS(parse("solution 1 0\ncenter 0 1\nassign 0 0\n", 2), InputError);
    CHECK_THROWS_AS(parse("solution 1 0\ncenter 5 1\n", 2), InputError);
    CHECK_THROWS_AS(parse("solution 1 0\ncenter 0 1\ncenter 0 1\n", 1), InputError);
    CHECK_THROWS_AS(parse("solution 1 0\ncenter 0 1\nassign 0 0\nassign 0 0\n", 1), InputError);
    CHECK_THROWS_AS(parse("solution 1 0\nthreshold nope\n", 1), InputError);
    try {
      parse("solution 1 0\ncenter 0 1\nbogus\n", 1);
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.line() == 3);
    }
  }
}
