#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "catalog.hpp"
#include "oracle.hpp"
#include "spreadkit/error.hpp"
#include "spreadkit/group.hpp"

using namespace spreadkit;

namespace {

std::vector<Permutation> enumerate(const GroupHandle& g) {
  std::vector<Permutation> out;
  for_each_element(g.chain(), 0, g.order_u64(), [&](const Permutation& p, std::uint64_t) {
    out.push_back(p);
  });
  return out;
}

}  // namespace

TEST_CASE("orders agree with the closure oracle") {
  for (const auto& e : catalog::groups()) {
    CAPTURE(e.name);
    const auto g = catalog::handle(e);
    CHECK(g.order_u64() == oracle::closure_order(catalog::perms(e), e.degree));
  }
  CHECK(catalog::handle("S4").order_u64() == 24);
  CHECK(catalog::handle("A5").order_u64() == 60);
}

TEST_CASE("larger orders") {
  const Permutation a = oracle::cyc("(1,2,3,4,5,6,7,8,9,10)", 10);
  const Permutation b = oracle::cyc("(1,2)", 10);
  CHECK(GroupHandle(GeneratorSet(10, {a, b})).order() == BigInt(3628800));
  // S_30: order 30!, larger than 64 bits.
  std::vector<int> img(30);
  for (int i = 0; i < 30; ++i) img[i] = (i + 1) % 30;
  const Permutation c = Permutation::from_images(std::span<const int>(img));
  const GroupHandle s30(GeneratorSet(30, {c, oracle::cyc("(1,2)", 30)}));
  BigInt f = 1;
  for (int i = 2; i <= 30; ++i) f *= i;
  CHECK(s30.order() == f);
  CHECK_THROWS_AS(s30.order_u64(), BudgetError);
  CHECK(GroupHandle(GeneratorSet(5, std::span<const Permutation>{})).order() == 1);
}

TEST_CASE("membership matches the closure") {
  for (const auto& e : catalog::groups()) {
    CAPTURE(e.name);
    const auto g = catalog::handle(e);
    const auto members = oracle::closure(catalog::perms(e), e.degree);
    const auto sym = oracle::closure({oracle::cyc("(1,2)", e.degree), [&] {
                                        std::vector<int> img(e.degree);
                                        for (std::size_t i = 0; i < e.degree; ++i)
                                          img[i] = static_cast<int>((i + 1) % e.degree);
                                        return Permutation::from_images(std::span<const int>(img));
                                      }()},
                                     e.degree);
    for (const auto& p : sym)
      CHECK(g.contains(p) == std::binary_search(members.begin(), members.end(), p));
  }
  CHECK_THROWS_AS(catalog::handle("S3").contains(Permutation::identity(4)), InputError);
}

TEST_CASE("enumeration is the group, in strictly increasing canonical order") {
  for (const auto& e : catalog::groups()) {
    CAPTURE(e.name);
    const auto g = catalog::handle(e);
    auto elems = enumerate(g);
    const auto& chain = g.chain();
    const auto base = chain.base();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      CHECK(chain.rank(elems[i]) == i);
      CHECK(chain.unrank(i) == elems[i]);
      if (i > 0) {
        std::vector<Point> a, b;
        for (Point p : base) {
          a.push_back(elems[i - 1][p]);
          b.push_back(elems[i][p]);
        }
        CHECK(a < b);
      }
    }
    std::sort(elems.begin(), elems.end());
    CHECK(elems == oracle::closure(catalog::perms(e), e.degree));
  }
}

TEST_CASE("cursors started mid-way and partitioned ranges cover the group once") {
  const auto g = catalog::handle("A5");
  const auto all = enumerate(g);
  for (std::size_t parts : {1u, 2u, 3u, 7u, 60u, 100u}) {
    std::vector<Permutation> joined;
    for (auto [b, e] : partition_ranges(60, parts))
      for_each_element(g.chain(), b, e,
                       [&](const Permutation& p, std::uint64_t) { joined.push_back(p); });
    CHECK(joined == all);
  }
  ElementCursor cur(g.chain(), 37);
  CHECK(cur.current() == all[37]);
  CHECK(cur.advance());
  CHECK(cur.current() == all[38]);
}

TEST_CASE("base hints change the chain but not the group") {
  const auto e = catalog::get("S4");
  const auto gens = catalog::perms(e);
  const GeneratorSet set(4, gens);
  const std::vector<std::vector<Point>> hints{{}, {3}, {2, 0}, {1, 3, 0}};
  for (const auto& hint : hints) {
    const GroupHandle g(set, hint);
    CHECK(g.order_u64() == 24);
    for (std::size_t i = 0; i < hint.size(); ++i) CHECK(g.chain().base()[i] == hint[i]);
    auto elems = enumerate(g);
    std::sort(elems.begin(), elems.end());
    CHECK(elems == oracle::closure(gens, 4));
  }
}

TEST_CASE("chains are deterministic") {
  const auto a = catalog::handle("A5");
  const auto b = catalog::handle("A5");
  CHECK(a.chain().base() == b.chain().base());
  CHECK(a.chain().strong_generators() == b.chain().strong_generators());
}

TEST_CASE("random elements are uniform on S3") {
  const auto g = catalog::handle("S3");
  std::mt19937_64 rng(12345);
  std::map<Permutation, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++counts[g.chain().random_element(rng)];
  REQUIRE(counts.size() == 6);
  double chi2 = 0;
  const double expected = draws / 6.0;
  for (auto& [p, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Chi-squared critical value, 5 degrees of freedom, p = 0.001.
  CHECK(chi2 < 20.515);
}

TEST_CASE("bounded order") {
  const auto gens = catalog::perms(catalog::get("A5"));
  CHECK(bounded_order(gens, 5, 1000) == 60);
  CHECK(bounded_order(gens, 5, 60) == 60);
  CHECK(bounded_order(gens, 5, 10) >= 10);
}

TEST_CASE("orbits") {
  const auto g = catalog::handle("C2xC2xC2");
  CHECK(g.orbit_count() == 3);
  CHECK_FALSE(g.transitive());
  CHECK(g.orbit_size(4) == 2);
  CHECK(catalog::handle("A5").transitive());
}

TEST_CASE("point stabilizers") {
  const auto s4 = catalog::handle("S4");
  const auto h = point_stabilizer(s4, 0);
  CHECK(h.order_u64() == 6);
  for_each_element(h.chain(), 0, 6, [&](const Permutation& p, std::uint64_t) {
    CHECK(p[0] == 0);
    CHECK(s4.contains(p));
  });
  CHECK(point_stabilizer(catalog::handle("A5"), 2).order_u64() == 12);
}

TEST_CASE("point stabilizer edge cases") {
  const GroupHandle trivial(GeneratorSet(4, std::span<const Permutation>{}));
  CHECK(point_stabilizer(trivial, 1).order_u64() == 1);
  CHECK_THROWS_AS(point_stabilizer(catalog::handle("S4"), 4), InputError);
}

TEST_CASE("orbit-stabilizer on every point of the catalog") {
  for (const auto& e : catalog::groups()) {
    CAPTURE(e.name);
    const auto g = catalog::handle(e);
    for (Point p = 0; p < e.degree; ++p)
      CHECK(point_stabilizer(g, p).order() * g.orbit_size(p) == g.order());
  }
}

TEST_CASE("random_element with a seed is reproducible") {
  const auto g = catalog::handle("A5");
  CHECK(random_element(g.chain(), 77) == random_element(g.chain(), 77));
  const GroupHandle trivial(GeneratorSet(3, std::span<const Permutation>{}));
  CHECK(random_element(trivial.chain(), 1).is_identity());
}
