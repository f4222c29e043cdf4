#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "corpus.hpp"
#include "finsemi/finsemi.hpp"
#include "oracles.hpp"

using namespace finsemi;

namespace {

Congruence blocks(FiniteSemigroup const& S,
                  std::vector<std::vector<Element>> const& b) {
  return Congruence::from_blocks(S, b);
}

std::set<std::vector<Element>> labels_of(CongruenceFamily const& F) {
  std::set<std::vector<Element>> out;
  for (auto const& c : F) {
    out.insert(c.block_of());
  }
  return out;
}

}  // namespace

TEST(CongruenceType, ConstructionAndQueries) {
  auto S = cyclic_group(4);
  auto c = blocks(S, {{1, 3}, {2, 0}});
  EXPECT_EQ(c.block_of(), (std::vector<Element>{0, 1, 0, 1}));
  EXPECT_EQ(c.index(), 2u);
  EXPECT_TRUE(c.related(0, 2));
  EXPECT_FALSE(c.related(0, 1));
  EXPECT_EQ(c.blocks(), (std::vector<std::vector<Element>>{{0, 2}, {1, 3}}));
  EXPECT_TRUE(Congruence::equality(S).is_equality());
  EXPECT_TRUE(Congruence::universal(S).is_universal());
  EXPECT_LT(Congruence::universal(S), Congruence::equality(S));
}

TEST(CongruenceType, RejectsIncompatiblePartitions) {
  auto S = cyclic_group(4);
  EXPECT_THROW(blocks(S, {{0, 1}, {2, 3}}), NotACongruence);
  EXPECT_THROW(blocks(S, {{0, 2}, {1}}), InvalidArgument);        // 3 missing
  EXPECT_THROW(blocks(S, {{0, 2}, {1, 3, 2}}), InvalidArgument);  // 2 twice
  EXPECT_THROW(blocks(S, {{0, 2}, {1, 3}, {}}), InvalidArgument);
  std::vector<Element> short_labels{0, 1};
  EXPECT_THROW(Congruence::from_labels(S, short_labels), InvalidArgument);
}

TEST(Principal, Examples) {
  auto L = left_zero(3);
  EXPECT_EQ(principal_congruence(L, 1, 1), Congruence::equality(L));
  EXPECT_EQ(principal_congruence(L, 0, 1), blocks(L, {{0, 1}, {2}}));
  auto C = cyclic_group(4);
  EXPECT_EQ(principal_congruence(C, 0, 2), blocks(C, {{0, 2}, {1, 3}}));
  EXPECT_EQ(principal_congruence(C, 0, 1), Congruence::universal(C));
}

TEST(Lattice, MeetJoinExamples) {
  auto L = left_zero(3);
  auto a = blocks(L, {{0, 1}, {2}});
  auto b = blocks(L, {{0, 2}, {1}});
  EXPECT_EQ(meet(a, b), Congruence::equality(L));
  EXPECT_EQ(join(a, b), Congruence::universal(L));
  EXPECT_EQ(meet(a, Congruence::universal(L)), a);
  EXPECT_EQ(join(a, Congruence::equality(L)), a);
  EXPECT_THROW(meet(a, Congruence::equality(cyclic_group(3))),
               CarrierMismatch);
  EXPECT_THROW(join(a, Congruence::equality(cyclic_group(3))),
               CarrierMismatch);
}

TEST(Lattice, AllCongruencesExamples) {
  EXPECT_EQ(all_congruences(left_zero(1)).size(), 1u);
  EXPECT_EQ(all_congruences(left_zero(3)).size(), 5u);
  auto C = cyclic_group(4);
  auto F = all_congruences(C);
  ASSERT_EQ(F.size(), 3u);
  EXPECT_TRUE(F.contains(Congruence::equality(C)));
  EXPECT_TRUE(F.contains(blocks(C, {{0, 2}, {1, 3}})));
  EXPECT_TRUE(F.contains(Congruence::universal(C)));
}

TEST(Lattice, LeftZeroCountsAreBellNumbers) {
  for (std::size_t n = 1; n <= 7; ++n) {
    EXPECT_EQ(all_congruences(left_zero(n)).size(), oracle::bell(n)) << n;
  }
}

TEST(Lattice, MatchesPartitionFilterOnCorpus) {
  for (auto const& [name, S] : corpus::all(5, 3)) {
    EXPECT_EQ(labels_of(all_congruences(S)), oracle::congruences(S)) << name;
  }
}

TEST(Lattice, CapsFailLoudly) {
  Limits l;
  l.max_congruences = 10;
  EXPECT_THROW(all_congruences(left_zero(4), l), EnumerationCapExceeded);
  EXPECT_NO_THROW(all_congruences(left_zero(3), l));
  l.max_order = 3;
  EXPECT_THROW(all_congruences(cyclic_group(4), l), SizeBoundExceeded);
}

TEST(Lattice, LatticeLaws) {
  for (auto const& [name, S] : corpus::all(5, 3)) {
    auto F = all_congruences(S);
    if (F.size() > 30) {
      continue;
    }
    std::vector<Congruence> xs(F.begin(), F.end());
    for (auto const& x : xs) {
      EXPECT_EQ(meet(x, x), x);
      EXPECT_EQ(join(x, x), x);
      for (auto const& y : xs) {
        EXPECT_EQ(meet(x, y), meet(y, x)) << name;
        EXPECT_EQ(join(x, y), join(y, x)) << name;
        EXPECT_EQ(meet(x, join(x, y)), x) << name;
        EXPECT_EQ(join(x, meet(x, y)), x) << name;
        EXPECT_TRUE(F.contains(meet(x, y)));
        EXPECT_TRUE(F.contains(join(x, y)));
        EXPECT_EQ(refines(x, y), meet(x, y) == x);
        for (auto const& z : xs) {
          EXPECT_EQ(meet(meet(x, y), z), meet(x, meet(y, z))) << name;
          EXPECT_EQ(join(join(x, y), z), join(x, join(y, z))) << name;
        }
      }
    }
  }
}

TEST(Lattice, PrincipalIsMeetOfContainingCongruences) {
  for (auto const& [name, S] : corpus::all(5, 3)) {
    auto F = all_congruences(S);
    for (Element a = 0; a < S.order(); ++a) {
      for (Element b = 0; b < S.order(); ++b) {
        auto m = Congruence::universal(S);
        for (auto const& c : F) {
          if (c.related(a, b)) {
            m = meet(m, c);
          }
        }
        EXPECT_EQ(principal_congruence(S, a, b), m) << name;
      }
    }
  }
}

// Agreeing on X x X is not enough to pin down a congruence: in Z4 with
// X = {1}, every congruence relates 1 to itself and nothing else on X x X.
TEST(Lattice, GeneratorPairsAloneDoNotDetermine) {
  auto C = cyclic_group(4);
  auto X = minimal_generating_set(C);
  ASSERT_EQ(X, (std::vector<Element>{1}));
  auto a = Congruence::equality(C);
  auto b = blocks(C, {{0, 2}, {1, 3}});
  EXPECT_NE(a, b);
  EXPECT_EQ(a.related(1, 1), b.related(1, 1));
}

// What X does determine: rho is the kernel of the unique homomorphism
// S -> S/rho extending the generator images x |-> [x].
TEST(Lattice, DeterminedByGeneratorImages) {
  for (auto const& [name, S] : corpus::all(6, 3)) {
    auto X = minimal_generating_set(S);
    // one factorisation per element as a word over X
    std::vector<std::vector<Element>> word(S.order());
    std::vector<char>                 known(S.order(), 0);
    std::vector<Element>              frontier;
    for (Element x : X) {
      if (!known[x]) {
        known[x] = 1;
        word[x]  = {x};
        frontier.push_back(x);
      }
    }
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (Element x : X) {
        Element p = S.product(frontier[i], x);
        if (!known[p]) {
          known[p] = 1;
          word[p]  = word[frontier[i]];
          word[p].push_back(x);
          frontier.push_back(p);
        }
      }
    }
    ASSERT_EQ(frontier.size(), S.order()) << name;
    std::map<std::vector<Element>, std::vector<Element>> seen;
    for (auto const& rho : all_congruences(S)) {
      auto q = quotient(S, rho);
      std::vector<Element> on_x;
      for (Element x : X) {
        on_x.push_back(q.projection(x));
      }
      // rebuild the projection from its values on X alone
      std::vector<Element> rebuilt(S.order());
      for (Element s = 0; s < S.order(); ++s) {
        Element v = on_x[std::find(X.begin(), X.end(), word[s][0]) - X.begin()];
        for (std::size_t k = 1; k < word[s].size(); ++k) {
          auto xi = std::find(X.begin(), X.end(), word[s][k]) - X.begin();
          v       = q.semigroup.product(v, on_x[xi]);
        }
        rebuilt[s] = v;
      }
      EXPECT_EQ(Congruence::from_labels(S, rebuilt), rho) << name;
    }
  }
}

TEST(IndexFiltration, Examples) {
  for (auto const& [name, S] : corpus::named(5)) {
    auto F1 = congruences_of_index_at_most(S, 1);
    ASSERT_EQ(F1.size(), 1u) << name;
    EXPECT_TRUE(F1.members()[0].is_universal());
  }
  auto C = cyclic_group(4);
  auto F = congruences_of_index_at_most(C, 2);
  EXPECT_EQ(F.size(), 2u);
  EXPECT_TRUE(F.contains(blocks(C, {{0, 2}, {1, 3}})));
  EXPECT_EQ(congruences_of_index_at_most(left_zero(4), 2).size(),
            1 + oracle::stirling2(4, 2));
  EXPECT_THROW(congruences_of_index_at_most(C, 0), InvalidArgument);
}

TEST(RhoN, Examples) {
  auto C = cyclic_group(4);
  EXPECT_TRUE(rho_n(C, 1).is_universal());
  EXPECT_EQ(rho_n(C, 2), blocks(C, {{0, 2}, {1, 3}}));
  auto r = rho_n(left_zero(3), 2);
  EXPECT_TRUE(r.is_equality());
  EXPECT_EQ(r.index(), 3u);
  EXPECT_THROW(rho_n(C, 0), InvalidArgument);
}

TEST(RhoN, IsMeetOfOracleFamily) {
  for (auto const& [name, S] : corpus::all(5, 3)) {
    auto cs = oracle::congruences(S);
    for (std::size_t n = 1; n <= S.order(); ++n) {
      // meet of the oracle family, as a pair-relation
      auto r = rho_n(S, n);
      for (Element a = 0; a < S.order(); ++a) {
        for (Element b = 0; b < S.order(); ++b) {
          bool all = true;
          for (auto const& c : cs) {
            if (oracle::index_of(c) <= n && c[a] != c[b]) {
              all = false;
            }
          }
          EXPECT_EQ(r.related(a, b), all) << name << " n=" << n;
        }
      }
    }
  }
}

TEST(RhoN, FullyInvariantOnCorpus) {
  for (auto const& [name, S] : corpus::all(5, 3)) {
    auto ends = enumerate_end(S);
    for (std::size_t n = 1; n <= S.order(); ++n) {
      auto r = is_fully_invariant(rho_n(S, n), ends);
      EXPECT_TRUE(r.holds) << name << " n=" << n;
    }
  }
}

TEST(Pullback, Examples) {
  auto C = cyclic_group(4);
  auto rho = blocks(C, {{0, 2}, {1, 3}});
  EXPECT_EQ(pullback_congruence(identity_morphism(C), rho), rho);
  auto zero = check_morphism({0, 0, 0, 0}, C, C);
  EXPECT_TRUE(pullback_congruence(zero, Congruence::equality(C)).is_universal());
  auto twice = check_morphism({0, 2, 0, 2}, C, C);
  EXPECT_EQ(pullback_congruence(twice, Congruence::equality(C)), rho);
}

TEST(Pullback, KernelOfCompositeAndIndexBound) {
  for (auto const& [name, S] : corpus::all(4, 3)) {
    auto ends = enumerate_end(S);
    for (auto const& sigma : all_congruences(S)) {
      auto q = quotient(S, sigma);
      for (std::size_t i = 0; i < ends.size(); ++i) {
        auto f  = ends.morphism(i);
        auto pb = pullback_congruence(f, sigma);
        EXPECT_EQ(pb, kernel_congruence(compose(q.projection, f))) << name;
        EXPECT_LE(pb.index(), sigma.index()) << name;
      }
    }
  }
}

TEST(Pullback, CompositionClosure) {
  for (auto const& [name, S] : corpus::all(4, 3)) {
    auto ends = enumerate_end(S);
    for (auto const& sigma : all_congruences(S)) {
      bool fi = is_fully_invariant(sigma, ends).holds;
      for (std::size_t i = 0; i < ends.size(); ++i) {
        auto f = ends.morphism(i);
        if (fi) {
          EXPECT_TRUE(refines(sigma, pullback_congruence(f, sigma))) << name;
        }
        for (std::size_t j = 0; j < ends.size(); ++j) {
          auto g = ends.morphism(j);
          EXPECT_EQ(pullback_congruence(compose(f, g), sigma),
                    pullback_congruence(g, pullback_congruence(f, sigma)))
              << name;
        }
      }
    }
  }
}

TEST(Invariance, FullyInvariantExamples) {
  auto C = cyclic_group(4);
  auto ec = enumerate_end(C);
  EXPECT_TRUE(is_fully_invariant(Congruence::equality(C), ec));
  EXPECT_TRUE(is_fully_invariant(Congruence::universal(C), ec));
  EXPECT_TRUE(is_fully_invariant(blocks(C, {{0, 2}, {1, 3}}), ec));

  auto L   = left_zero(3);
  auto el  = enumerate_end(L);
  auto rho = blocks(L, {{0, 1}, {2}});
  auto r   = is_fully_invariant(rho, el);
  ASSERT_FALSE(r.holds);
  // least violation in lexicographic order of (map, a, b)
  EXPECT_EQ(r.witness->map, (std::vector<Element>{0, 2, 0}));
  EXPECT_EQ(r.witness->a, 0u);
  EXPECT_EQ(r.witness->b, 1u);
  // the map (0,2,2) also violates it at (0,1)
  auto other = check_morphism({0, 2, 2}, L, L);
  EXPECT_FALSE(rho.related(other(0), other(1)));
}

TEST(Invariance, WitnessIsLeastViolation) {
  for (auto const& [name, S] : corpus::all(4, 3)) {
    auto ends = enumerate_end(S);
    for (auto const& rho : all_congruences(S)) {
      std::optional<InvarianceWitness> least;
      for (auto const& f : ends.elements()) {
        for (Element a = 0; a < S.order() && !least; ++a) {
          for (Element b = a + 1; b < S.order() && !least; ++b) {
            if (rho.related(a, b) && !rho.related(f[a], f[b])) {
              least = InvarianceWitness{f, a, b};
            }
          }
        }
      }
      auto r = is_fully_invariant(rho, ends);
      EXPECT_EQ(r.holds, !least.has_value()) << name;
      EXPECT_EQ(r.witness, least) << name;
      auto streamed = is_fully_invariant(rho, Limits{});
      EXPECT_EQ(streamed.holds, r.holds) << name;
      EXPECT_EQ(streamed.witness, r.witness) << name;
    }
  }
}

TEST(Invariance, CharacteristicExamples) {
  auto L    = left_zero(3);
  auto el   = enumerate_end(L);
  auto rho  = blocks(L, {{0, 1}, {2}});
  auto r    = is_characteristic(rho, el);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->map, (std::vector<Element>{0, 2, 1}));
  // the transposition (0 2) is a witness too
  auto t = check_morphism({2, 1, 0}, L, L);
  EXPECT_FALSE(rho.related(t(0), t(1)));

  auto C  = cyclic_group(4);
  auto ec = enumerate_end(C);
  EXPECT_TRUE(is_characteristic(blocks(C, {{0, 2}, {1, 3}}), ec));

  // trivial Aut: every congruence is characteristic
  auto Z  = free_semilattice(1);
  auto ez = enumerate_end(Z);
  EXPECT_TRUE(is_characteristic(Congruence::equality(Z), ez));

  std::vector<Morphism> not_bijective{check_morphism({0, 0, 0}, L, L)};
  EXPECT_THROW(is_characteristic(rho, not_bijective), InvalidArgument);
}

TEST(Invariance, FullyInvariantImpliesCharacteristic) {
  for (auto const& [name, S] : corpus::all(4, 3)) {
    auto ends = enumerate_end(S);
    for (auto const& rho : all_congruences(S)) {
      if (is_fully_invariant(rho, ends)) {
        EXPECT_TRUE(is_characteristic(rho, ends)) << name;
      }
    }
  }
}
