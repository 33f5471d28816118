#include <sstream>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "instance.hpp"
#include "lp.hpp"

using namespace capkc;
using fixtures::q;

namespace {

Instance parse(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("instances") {
  TEST_CASE("instance text round trip") {
    Instance inst = parse(
        "# comment\n"
        "capkc 1 3 2 1 soft\n"
        "v 0 2\nv 1 0\nv 2 5\n"
        "e 0 1 3/2\ne 1 2 2   # trailing comment\n");
    CHECK(inst.vertex_count() == 3);
    CHECK(inst.k() == 1);
    CHECK(inst.mode() == CapacityMode::kSoft);
    CHECK(inst.capacity(2) == 5);
    CHECK(inst.distance(0, 2) == q("7/2"));
    std::ostringstream out;
    write_instance(out, inst);
    Instance again = parse(out.str());
    std::ostringstream out2;
    write_instance(out2, again);
    CHECK(out.str() == out2.str());
  }

  TEST_CASE("parse errors carry line numbers") {
    CHECK(error_line("capkc 2 1 0 1 hard\nv 0 1\n") == 1);
    CHECK(error_line("capkc 1 2 1 1 hard\nv 0 1\nv 1 1\ne 0 0 1\n") == 4);
    CHECK(error_line("capkc 1 2 2 1 hard\nv 0 1\nv 1 1\ne 0 1 1\ne 1 0 1\n") == 5);
    CHECK(error_line("capkc 1 2 1 1 hard\nv 0 1\nv 1 1\ne 0 2 1\n") == 4);
    CHECK(error_line("capkc 1 2 1 1 hard\nv 0 1\nv 1 -1\ne 0 1 1\n") == 3);
    CHECK(error_line("capkc 1 2 1 1 hard\nv 0 1\nv 1 1\ne 0 1 x\n") == 4);
    CHECK(error_line("capkc 1 2 1 1 middling\n") == 1);
    CHECK(error_line("capkc 1 2 1 1 hard\nv 0 1\n") > 0);
  }

  TEST_CASE("weights that are not a metric are rejected") {
    CHECK_THROWS_AS(parse("capkc 1 3 3 1 hard\nv 0 1\nv 1 1\nv 2 1\ne 0 1 1\ne 1 2 1\ne 0 2 5\n"), InputError);
    CHECK_NOTHROW(parse("capkc 1 3 3 1 hard\nv 0 1\nv 1 1\nv 2 1\ne 0 1 1\ne 1 2 1\ne 0 2 2\n"));
  }

  TEST_CASE("two-gadget instance") {
    auto f = gen_fig1();
    CHECK(f.instance.vertex_count() == 12);
    CHECK(f.instance.edges().size() == 18);
    CHECK(f.instance.k() == 3);
    for (Vertex v = 0; v < 12; ++v) CHECK(f.instance.capacity(v) == 4);
    HopDistances hops(f.instance.unit_graph());
    CHECK(verify_assignment_feasible(hops, f.instance.capacities(), 3, f.witness, 1));
  }

  TEST_CASE("gap construction at k = 24") {
    for (bool nonuniform : {false, true}) {
      auto gap = gen_gap_construction(24, nonuniform);
      const int k = 24, L = k - 1, copies = k - 6;
      // Per copy: a, b, L + 2 middles, connector, leaf; plus the root.
      int recount = copies * (2 + (L + 2) + 1 + 1) + 1;
      CHECK(gap.instance.vertex_count() == recount);
      CHECK(recount == 523);
      CHECK(gap.layout.a.size() == static_cast<std::size_t>(copies));
      for (const auto& m : gap.layout.middles) CHECK(m.size() == static_cast<std::size_t>(L + 2));

      // The untopped witness total is 1 + (k + 4)(k - 6)/(k - 1) <= k.
      Rational untopped = 1 + Rational(2 * copies) * fraction(L + 5, 2 * L);
      CHECK(untopped == 1 + fraction((k + 4) * (k - 6), k - 1));
      CHECK(untopped <= k);
      CHECK(gap.witness.y_sum() == k);

      Graph g = gap.instance.unit_graph();
      CHECK(gap_neighborhood_check(g, gap.layout));
      HopDistances hops(g);
      CHECK(verify_assignment_feasible(hops, gap.instance.capacities(), k, gap.witness, 1));
      if (nonuniform) {
        CHECK(gap.instance.capacity(gap.layout.x[0]) == 0);
        CHECK(gap.instance.capacity(gap.layout.middles[0][0]) == 0);
      }
      CHECK(gap.instance.capacity(gap.layout.a[3]) == L);
    }
    CHECK_THROWS_AS(gen_gap_construction(23, false), InputError);
  }

  TEST_CASE("exact cover reduction layout") {
    auto x = gen_x3c({{0, 1, 2}}, 3);
    CHECK(x.instance.vertex_count() == 12);
    CHECK(x.instance.k() == 2);
    CHECK(x.instance.capacity(x.layout.set_vertex[0]) == 6);
    CHECK(x.instance.capacity(x.layout.guard[0]) == 6);
    CHECK(x.layout.pendants[0].size() == 4);

    std::vector<std::array<int, 3>> sets{{0, 1, 2}, {3, 4, 5}, {1, 2, 3}};
    auto y = gen_x3c(sets, 6);
    const int F = 3, U = 6;
    CHECK(y.instance.vertex_count() == (F + 1) * U + F * (3 * F + 3));
    long long total = 0;
    for (Vertex v = 0; v < y.instance.vertex_count(); ++v) total += y.instance.capacity(v);
    CHECK(total == 2LL * F * (3 * F + 3));
    // Capacity of the k centers, when they are all set or guard vertices.
    CHECK(static_cast<long long>(y.instance.vertex_count()) == (3 * F + 3) * (U / 3 + F));

    CHECK_THROWS_AS(gen_x3c({{0, 1, 2}}, 4), InputError);
    CHECK_THROWS_AS(gen_x3c({{0, 1, 1}}, 3), InputError);
    CHECK_THROWS_AS(gen_x3c({{0, 1, 5}}, 3), InputError);
  }

  TEST_CASE("decoding a cover from centers") {
    auto x = gen_x3c({{0, 1, 2}, {3, 4, 5}, {0, 3, 4}}, 6);
    Solution s;
    s.centers = {{x.layout.set_vertex[0], 1}, {x.layout.guard[0], 1}, {x.layout.set_vertex[1], 1},
                 {x.layout.guard[1], 1}, {x.layout.guard[2], 1}};
    auto cover = decode_x3c_cover(x.layout, s);
    REQUIRE(cover);
    CHECK(*cover == std::vector<int>{0, 1});
    s.centers = {{x.layout.set_vertex[0], 1}, {x.layout.guard[0], 1}, {x.layout.set_vertex[2], 1},
                 {x.layout.guard[2], 1}, {x.layout.guard[1], 1}};
    CHECK_FALSE(decode_x3c_cover(x.layout, s));
  }

  TEST_CASE("random connected instances") {
    Instance one = gen_random_connected(1, 0.5, 1, 3, 1, CapacityMode::kHard, 3);
    CHECK(one.vertex_count() == 1);
    CHECK(one.edges().empty());
    Instance a = gen_random_connected(25, 0.1, 0, 5, 3, CapacityMode::kSoft, 99);
    Instance b = gen_random_connected(25, 0.1, 0, 5, 3, CapacityMode::kSoft, 99);
    std::ostringstream sa, sb;
    write_instance(sa, a);
    write_instance(sb, b);
    CHECK(sa.str() == sb.str());
    CHECK(connected_components(a.unit_graph()).size() == 1);
    CHECK(a.mode() == CapacityMode::kSoft);
    CHECK_THROWS_AS(gen_random_connected(0, 0.1, 1, 1, 1, CapacityMode::kHard, 1), InputError);
    CHECK_THROWS_AS(gen_random_connected(3, 0.1, 4, 1, 1, CapacityMode::kHard, 1), InputError);
  }
}
