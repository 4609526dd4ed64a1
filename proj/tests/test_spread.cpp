#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "catalog.hpp"
#include "oracle.hpp"
#include "spreadkit/error.hpp"
#include "spreadkit/spread.hpp"

using namespace spreadkit;

namespace {

std::vector<Permutation> elements(const GroupHandle& g) {
  std::vector<Permutation> out;
  for_each_element(g.chain(), 0, g.order_u64(),
                   [&](const Permutation& p, std::uint64_t) { out.push_back(p); });
  return out;
}

ChallengeSet challenge(const GroupHandle& g, std::vector<Permutation> raw) {
  return validate_challenge(raw, g);
}

// Does some y in G generate G with every x in X? Closure-only.
bool oracle_has_mate(const std::vector<Permutation>& elems, const std::vector<Permutation>& xs,
                     std::size_t degree) {
  for (const auto& y : elems) {
    bool ok = true;
    for (const auto& x : xs)
      if (oracle::closure_order({x, y}, degree) != elems.size()) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("challenge validation") {
  const auto s3 = catalog::handle("S3");
  const Permutation p = oracle::cyc("(1,2)", 3), q = oracle::cyc("(1,2,3)", 3);
  const auto cs = challenge(s3, {p, p, q});
  CHECK(cs.elements == std::vector<Permutation>{p, q});
  CHECK(cs.duplicates_removed == 1);
  auto name_of = [&](std::vector<Permutation> raw) {
    try {
      validate_challenge(raw, s3);
    } catch (const InputError& e) {
      return e.name();
    }
    return std::string("ok");
  };
  CHECK(name_of({Permutation::identity(3)}) == "identity_in_challenge");
  CHECK(name_of({oracle::cyc("(1,2)", 4)}) == "degree_mismatch");
  CHECK(name_of({oracle::cyc("(1,2)", 5)}) == "degree_mismatch");
  CHECK(name_of({oracle::cyc("(1,2)", 4)}) != "ok");
  CHECK_THROWS_AS(validate_challenge(std::vector<Permutation>{oracle::cyc("(1,2)", 5)},
                                     catalog::handle("A5")),
                  InputError);
}

TEST_CASE("is_mate examples") {
  const auto s3 = catalog::handle("S3");
  const auto x = challenge(s3, {oracle::cyc("(1,2)", 3)});
  CHECK(is_mate(oracle::cyc("(1,2,3)", 3), x, s3).is_mate);
  CHECK_FALSE(is_mate(oracle::cyc("(1,2)", 3), x, s3).is_mate);
  CHECK_FALSE(is_mate(Permutation::identity(3), x, s3).is_mate);
  CHECK_THROWS_AS(is_mate(oracle::cyc("(1,2)", 5), challenge(catalog::handle("A5"),
                                                              {oracle::cyc("(1,2,3)", 5)}),
                          catalog::handle("A5")),
                  InputError);
}

TEST_CASE("find_mate examples") {
  const auto s3 = catalog::handle("S3");
  const auto rep = find_mate(challenge(s3, {oracle::cyc("(1,2)", 3)}), s3);
  REQUIRE(rep.mate);
  CHECK(element_order(*rep.mate) == 3);
  CHECK(rep.verified);
  CHECK(rep.evidence.size() == 1);
  // First order-3 element in canonical order.
  const auto elems = elements(s3);
  CHECK(*rep.mate == *std::find_if(elems.begin(), elems.end(),
                                  [](const Permutation& p) { return element_order(p) == 3; }));
  CHECK(format_cycles(*rep.mate) == "(1,2,3)");

  const auto empty = find_mate(ChallengeSet{}, s3);
  REQUIRE(empty.mate);
  CHECK_FALSE(empty.mate->is_identity());
  CHECK(*empty.mate == *std::find_if(elems.begin(), elems.end(),
                                    [](const Permutation& p) { return !p.is_identity(); }));

  // C2^3 needs three generators, so no single x has a mate.
  const auto e8 = catalog::handle("C2xC2xC2");
  const auto none = find_mate(challenge(e8, {oracle::cyc("(1,2)", 6)}), e8);
  CHECK_FALSE(none.mate);
  CHECK(none.exhausted);
  CHECK(none.candidates_tried == 8);

  // C2xC2 is 2-generated: any involution pairs with another one.
  const auto v4 = catalog::handle("C2xC2");
  const auto pair = find_mate(challenge(v4, {oracle::cyc("(1,2)", 4)}), v4);
  REQUIRE(pair.mate);
  CHECK(pair.verified);

  CHECK_THROWS_AS(find_mate(ChallengeSet{}, catalog::handle("A5"), ScanOptions{10, 1}), BudgetError);
}

TEST_CASE("find_mate is complete against the oracle") {
  std::mt19937_64 rng(8);
  for (const auto& e : catalog::groups()) {
    CAPTURE(e.name);
    const auto g = catalog::handle(e);
    const auto elems = elements(g);
    std::vector<Permutation> nontrivial;
    for (const auto& p : elems)
      if (!p.is_identity()) nontrivial.push_back(p);
    for (int trial = 0; trial < 25; ++trial) {
      std::shuffle(nontrivial.begin(), nontrivial.end(), rng);
      const std::size_t r = 1 + rng() % std::min<std::size_t>(nontrivial.size(), 6);
      const std::vector<Permutation> xs(nontrivial.begin(), nontrivial.begin() + r);
      const auto rep = find_mate(challenge(g, xs), g);
      CHECK(rep.mate.has_value() == oracle_has_mate(elems, xs, e.degree));
      if (rep.mate) {
        CHECK(rep.verified);
        for (const auto& x : xs) CHECK(oracle::closure_order({x, *rep.mate}, e.degree) == elems.size());
      }
    }
  }
}

TEST_CASE("find_mate does not depend on the worker count") {
  const auto g = catalog::handle("A5");
  const auto elems = elements(g);
  for (std::size_t i = 1; i < elems.size(); i += 7) {
    const auto cs = challenge(g, {elems[i], elems[(i * 5) % elems.size()].is_identity()
                                                 ? elems[1]
                                                 : elems[(i * 5) % elems.size()]});
    const auto a = find_mate(cs, g, ScanOptions{2000, 1});
    const auto b = find_mate(cs, g, ScanOptions{2000, 4});
    CHECK(a.mate == b.mate);
    CHECK(a.candidates_tried == b.candidates_tried);
  }
}

TEST_CASE("kill sets") {
  const auto s3 = catalog::handle("S3");
  const auto ks = kill_set(oracle::cyc("(1,2,3)", 3), s3);
  std::set<Permutation> killers;
  for (auto r : ks.killers) killers.insert(s3.chain().unrank(r));
  CHECK(killers == std::set<Permutation>{oracle::cyc("(1,2,3)", 3), oracle::cyc("(1,3,2)", 3)});
  CHECK(ks.source == "exhaustive");

  const GroupHandle c5(GeneratorSet(5, {oracle::cyc("(1,2,3,4,5)", 5)}));
  for (const auto& y : elements(c5))
    if (!y.is_identity()) CHECK(kill_set(y, c5).killers.empty());

  KillSetShortcut sc = [](const Permutation& y) -> std::optional<KillSet> {
    return KillSet{y, {42}, "test-shortcut"};
  };
  CHECK(kill_set(oracle::cyc("(1,2)", 3), s3, {}, &sc).source == "test-shortcut");
  CHECK_THROWS_AS(kill_set(oracle::cyc("(1,2,3)", 5), catalog::handle("A5"), ScanOptions{10, 1}),
                  BudgetError);
}

TEST_CASE("kill sets contain y whenever <y> is proper, and match the table") {
  for (const auto& e : catalog::groups()) {
    const auto g = catalog::handle(e);
    const GroupTable t(g, 2000);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.element(i).is_identity()) continue;
      const auto ks = kill_set(t.element(i), g);
      CHECK(ks.killers == std::vector<std::uint64_t>(t.kill_set(i).begin(), t.kill_set(i).end()));
      if (t.order_of(i) != t.size())
        CHECK(std::binary_search(ks.killers.begin(), ks.killers.end(), i));
    }
  }
}

TEST_CASE("exact spread agrees with the brute-force oracle") {
  for (const auto& e : catalog::groups()) {
    CAPTURE(e.name);
    const auto expected = oracle::brute_force_spread(catalog::perms(e), e.degree);
    const auto res = exact_spread_small(catalog::handle(e));
    CHECK(res.search_complete);
    switch (expected.kind) {
      case oracle::Kind::zero:
        CHECK(res.kind == SpreadKind::zero);
        CHECK(res.value == 0u);
        CHECK(res.witness_verified);
        break;
      case oracle::Kind::unbounded:
        CHECK(res.kind == SpreadKind::unbounded);
        REQUIRE(res.universal_mate);
        break;
      case oracle::Kind::exact:
        CHECK(res.kind == SpreadKind::exact);
        CHECK(res.value == expected.value);
        REQUIRE(res.witness);
        CHECK(res.witness->size() == expected.value + 1);
        CHECK(res.witness_verified);
        break;
    }
  }
}

TEST_CASE("exact spread budget and small cases") {
  CHECK_THROWS_AS(exact_spread_small(catalog::handle("A5"), 59), BudgetError);
  const GroupHandle c5(GeneratorSet(5, {oracle::cyc("(1,2,3,4,5)", 5)}));
  CHECK(exact_spread_small(c5).kind == SpreadKind::unbounded);
  CHECK(exact_spread_small(catalog::handle("C2xC2xC2")).kind == SpreadKind::zero);
}

TEST_CASE("duality: mate iff X avoids the kill set") {
  std::mt19937_64 rng(17);
  for (const auto& e : catalog::groups()) {
    const auto g = catalog::handle(e);
    const GroupTable t(g, 2000);
    std::vector<std::size_t> nontrivial;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i != t.identity_index()) nontrivial.push_back(i);
    for (int trial = 0; trial < 30; ++trial) {
      std::shuffle(nontrivial.begin(), nontrivial.end(), rng);
      const std::size_t r = 1 + rng() % std::min<std::size_t>(nontrivial.size(), 4);
      ChallengeSet cs;
      for (std::size_t k = 0; k < r; ++k) cs.elements.push_back(t.element(nontrivial[k]));
      for (std::size_t y = 0; y < t.size(); ++y) {
        const auto& ks = t.kill_set(y);
        bool avoids = true;
        for (std::size_t k = 0; k < r; ++k)
          avoids &= !std::binary_search(ks.begin(), ks.end(), nontrivial[k]);
        CHECK(is_mate(t.element(y), cs, g).is_mate == avoids);
      }
    }
  }
}

TEST_CASE("monotonicity: a mate of X is a mate of every subset") {
  std::mt19937_64 rng(23);
  const auto g = catalog::handle("A5");
  auto elems = elements(g);
  elems.erase(std::remove_if(elems.begin(), elems.end(),
                             [](const Permutation& p) { return p.is_identity(); }),
              elems.end());
  for (int trial = 0; trial < 40; ++trial) {
    std::shuffle(elems.begin(), elems.end(), rng);
    const auto cs = challenge(g, std::vector<Permutation>(elems.begin(), elems.begin() + 5));
    const auto rep = find_mate(cs, g);
    if (!rep.mate) continue;
    for (std::uint32_t mask = 0; mask < 32; ++mask) {
      ChallengeSet sub;
      for (std::size_t k = 0; k < 5; ++k)
        if (mask >> k & 1) sub.elements.push_back(cs.elements[k]);
      CHECK(is_mate(*rep.mate, sub, g).is_mate);
    }
  }
}

TEST_CASE("equivariance on S4: kill sets and mateless sets transform by conjugation") {
  const auto g = catalog::handle("S4");
  const GroupTable t(g, 2000);
  for (std::size_t y = 0; y < t.size(); ++y)
    for (std::size_t c = 0; c < t.size(); ++c) {
      std::set<Permutation> expected, actual;
      for (auto x : t.kill_set(y)) expected.insert(conjugate(t.element(x), t.element(c)));
      for (auto x : t.kill_set(t.index_of(conjugate(t.element(y), t.element(c)))))
        actual.insert(t.element(x));
      CHECK(expected == actual);
    }
  const auto res = exact_spread_small(t);
  REQUIRE(res.witness);
  for (std::size_t c = 0; c < t.size(); ++c) {
    ChallengeSet moved;
    for (const auto& x : res.witness->elements) moved.elements.push_back(conjugate(x, t.element(c)));
    CHECK(verify_mateless(g, moved).mateless_confirmed);
  }
}

TEST_CASE("determinism across worker counts") {
  for (const auto& e : catalog::groups()) {
    const auto g = catalog::handle(e);
    const auto a = exact_spread_small(g, 2000, 1);
    const auto b = exact_spread_small(g, 2000, 3);
    CHECK(a.kind == b.kind);
    CHECK(a.value == b.value);
    CHECK(a.nodes_explored == b.nodes_explored);
    if (a.witness) CHECK(a.witness->elements == b.witness->elements);
    const GroupTable t1(g, 2000, 1), t4(g, 2000, 4);
    for (std::size_t i = 0; i < t1.size(); ++i) CHECK(t1.kill_set(i) == t4.kill_set(i));
  }
}

TEST_CASE("greedy mateless search") {
  const GroupTable s4(catalog::handle("S4"), 2000);
  const auto exact = exact_spread_small(s4);
  const auto greedy = greedy_mateless_search(s4, 24, 1);
  REQUIRE(greedy.set);
  CHECK(greedy.verified);
  CHECK(greedy.set->size() == *exact.value + 1);

  const GroupTable s3(catalog::handle("S3"), 2000);
  const auto g3 = greedy_mateless_search(s3, 6, 5);
  REQUIRE(g3.set);
  CHECK(g3.verified);

  const GroupTable c5(GroupHandle(GeneratorSet(5, {oracle::cyc("(1,2,3,4,5)", 5)})), 2000);
  CHECK_FALSE(greedy_mateless_search(c5, 5, 1).set);
}

TEST_CASE("randomized spread checks") {
  const GroupTable s3(catalog::handle("S3"), 2000);
  const auto ok = spread_at_least_randomized(s3, 1, 200, 3);
  CHECK_FALSE(ok.counterexample);
  CHECK(ok.trials == 200);
  CHECK_FALSE(ok.proof);

  const GroupTable e8(catalog::handle("C2xC2xC2"), 2000);
  const auto bad = spread_at_least_randomized(e8, 1, 200, 3);
  REQUIRE(bad.counterexample);
  CHECK(bad.trials == 1);

  // A5 has spread 2 but not 3: biased sampling should find a mateless triple.
  const GroupTable a5(catalog::handle("A5"), 2000);
  const auto ex = exact_spread_small(a5);
  const auto above = spread_at_least_randomized(a5, *ex.value + 1, 5000, 9);
  if (above.counterexample) CHECK(verify_mateless(a5.group(), *above.counterexample).mateless_confirmed);
  CHECK_FALSE(spread_at_least_randomized(a5, *ex.value, 300, 9).counterexample);
}

TEST_CASE("matelessness certificates") {
  const auto g = catalog::handle("S4");
  const auto res = exact_spread_small(g);
  REQUIRE(res.witness);
  for (std::size_t workers : {1u, 2u, 5u}) {
    const auto out = verify_mateless(g, *res.witness, nullptr, workers);
    CHECK(out.mateless_confirmed);
    CHECK(out.scanned == 24);
    std::uint64_t sum = 0;
    for (auto k : out.kills_per_element) sum += k;
    CHECK(sum == 24);
  }
  const auto empty = verify_mateless(g, ChallengeSet{});
  CHECK_FALSE(empty.mateless_confirmed);
  REQUIRE(empty.mate);
  CHECK(empty.scanned == 1);

  // Drop one witness element: the rest must have a mate, and the refutation is canonical-first.
  ChallengeSet smaller = *res.witness;
  smaller.elements.pop_back();
  const auto refuted = verify_mateless(g, smaller, nullptr, 3);
  REQUIRE(refuted.mate);
  CHECK(is_mate(*refuted.mate, smaller, g).is_mate);
  const auto elems = elements(g);
  for (std::uint64_t r = 0; r < refuted.mate_rank; ++r) CHECK_FALSE(is_mate(elems[r], smaller, g).is_mate);
}
