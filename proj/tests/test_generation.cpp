#include <doctest.h>

#include <random>

#include "catalog.hpp"
#include "oracle.hpp"
#include "spreadkit/error.hpp"
#include "spreadkit/generation.hpp"

using namespace spreadkit;

namespace {

std::vector<Permutation> elements(const GroupHandle& g) {
  std::vector<Permutation> out;
  for_each_element(g.chain(), 0, g.order_u64(),
                   [&](const Permutation& p, std::uint64_t) { out.push_back(p); });
  return out;
}

}  // namespace

TEST_CASE("pair generation examples in S4") {
  const auto s4 = catalog::handle("S4");
  const auto a = generates_pair(oracle::cyc("(1,2)", 4), oracle::cyc("(1,2,3,4)", 4), s4);
  CHECK(a.generates);
  REQUIRE(a.subgroup_order);
  CHECK(*a.subgroup_order == 24);

  const auto b = generates_pair(oracle::cyc("(1,2)(3,4)", 4), oracle::cyc("(1,3)(2,4)", 4), s4);
  CHECK_FALSE(b.generates);
  REQUIRE(b.subgroup_order);  // transitive, so no filter fires
  CHECK(*b.subgroup_order == 4);

  const Permutation x = oracle::cyc("(1,2,3)", 4);
  CHECK_FALSE(generates_pair(x, x, s4).generates);
  CHECK_FALSE(generates_pair(x, Permutation::identity(4), s4).generates);
}

TEST_CASE("pair generation input errors") {
  const auto a5 = catalog::handle("A5");
  CHECK_THROWS_AS(generates_pair(oracle::cyc("(1,2)", 5), oracle::cyc("(1,2,3)", 5), a5), InputError);
  CHECK_THROWS_AS(generates_pair(oracle::cyc("(1,2,3)", 4), oracle::cyc("(1,2,3)", 5), a5),
                  InputError);
}

TEST_CASE("pair generation agrees with closure, exhaustively on the catalog") {
  for (const auto& e : catalog::groups()) {
    CAPTURE(e.name);
    const auto g = catalog::handle(e);
    const auto elems = elements(g);
    for (const auto& x : elems)
      for (const auto& y : elems) {
        const std::size_t order = oracle::closure_order({x, y}, e.degree);
        for (int variant = 0; variant < 3; ++variant) {
          PairOptions opts;
          opts.transitivity_filter = variant != 1;
          opts.order_lcm_filter = variant == 2;
          const auto r = generates_pair(x, y, g, opts);
          CHECK(r.generates == (order == elems.size()));
          if (r.subgroup_order && !r.generates) CHECK(*r.subgroup_order == order);
          if (r.filter_used != PairFilter::none) CHECK_FALSE(r.generates);
        }
      }
  }
}

TEST_CASE("pair generation is symmetric and conjugation equivariant on S4") {
  const auto g = catalog::handle("S4");
  const auto elems = elements(g);
  for (const auto& x : elems)
    for (const auto& y : elems) {
      const bool xy = generates_pair(x, y, g).generates;
      CHECK(generates_pair(y, x, g).generates == xy);
      for (const auto& c : elems)
        CHECK(generates_pair(conjugate(x, c), conjugate(y, c), g).generates == xy);
    }
}

TEST_CASE("subgroup order") {
  CHECK(subgroup_order(catalog::perms(catalog::get("A5")), 5) == 60);
  CHECK(subgroup_order(std::vector<Permutation>{}, 5) == 1);
}

TEST_CASE("spectra") {
  CHECK(spectrum(catalog::handle("S3")).orders == std::set<std::uint64_t>{1, 2, 3});
  CHECK(spectrum(catalog::handle("S4")).orders == std::set<std::uint64_t>{1, 2, 3, 4});
  CHECK(spectrum(catalog::handle("A5")).orders == std::set<std::uint64_t>{1, 2, 3, 5});
  // 23:11 as the affine maps t -> 2t + c on Z/23 (2 has order 11 mod 23).
  std::vector<int> shift(23), mult(23);
  for (int i = 0; i < 23; ++i) {
    shift[i] = (i + 1) % 23;
    mult[i] = (2 * i) % 23;
  }
  const GroupHandle f(GeneratorSet(23, {Permutation::from_images(std::span<const int>(shift)),
                                        Permutation::from_images(std::span<const int>(mult))}));
  CHECK(f.order_u64() == 253);
  CHECK(spectrum(f).orders == std::set<std::uint64_t>{1, 11, 23});
  CHECK_THROWS_AS(spectrum(f, 100), BudgetError);
}

TEST_CASE("spectra obey Lagrange and inclusion") {
  for (const auto& e : catalog::groups()) {
    const auto g = catalog::handle(e);
    const auto s = spectrum(g);
    CHECK(s.contains(1));
    for (auto k : s.orders) CHECK(g.order_u64() % k == 0);
    const auto h = spectrum(point_stabilizer(g, 0));
    for (auto k : h.orders) CHECK(s.contains(k));
  }
}

TEST_CASE("order queries stop at the canonical-first element") {
  const auto g = catalog::handle("A5");
  const auto elems = elements(g);
  for (std::uint64_t k : {1u, 2u, 3u, 5u}) {
    for (std::size_t workers : {1u, 3u}) {
      const auto q = find_element_of_order(g, k, kDefaultSpectrumBudget, workers);
      REQUIRE(q.present);
      std::size_t first = 0;
      while (element_order(elems[first]) != k) ++first;
      CHECK(*q.exhibit == elems[first]);
      CHECK(q.scanned == first + 1);
    }
  }
  CHECK_FALSE(find_element_of_order(g, 4).present);
  CHECK_FALSE(find_element_of_order(g, 7).present);
}
