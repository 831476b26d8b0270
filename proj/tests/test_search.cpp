#include "dioph/constructions.hpp"
#include "dioph/search.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dioph;
using oracle::tuple;

namespace {

Int max_norm(const Tuple& t) {
  Int m = 0;
  for (const auto& c : t)
    if (abs(c) > m) m = abs(c);
  return m;
}

// Every tuple of the box, sorted by (max-norm, lexicographic).
std::vector<Tuple> ordered_box(std::size_t n, long b) {
  std::vector<Tuple> all;
  oracle::for_each_in_box(n, b, [&](const Tuple& t) { all.push_back(t); });
  std::stable_sort(all.begin(), all.end(), [](const Tuple& a, const Tuple& c) { return max_norm(a) < max_norm(c); });
  return all;
}

System sys(std::size_t n, std::initializer_list<Equation> eqs) {
  System s(n);
  for (const auto& e : eqs) s.insert(e);
  return s;
}

}  // namespace

TEST(LeqOrder, Examples) {
  EXPECT_EQ(enumerate_leq_n(1, 5), (std::vector<Tuple>{tuple({0}), tuple({-1}), tuple({1}), tuple({-2}), tuple({2})}));
  auto first = enumerate_leq_n(2, 9);
  std::vector<Tuple> shell1(first.begin() + 1, first.end());
  EXPECT_EQ(shell1, (std::vector<Tuple>{tuple({-1, -1}), tuple({-1, 0}), tuple({-1, 1}), tuple({0, -1}),
                                        tuple({0, 1}), tuple({1, -1}), tuple({1, 0}), tuple({1, 1})}));
  EXPECT_THROW(LeqOrder(0), std::invalid_argument);
}

TEST(LeqOrder, NoDuplicatesInFirstTenThousand) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto seq = enumerate_leq_n(n, 10000);
    EXPECT_EQ(std::set<Tuple>(seq.begin(), seq.end()).size(), seq.size()) << n;
  }
}

TEST(LeqOrder, ShellSizesAndOrderMatchOracle) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto expected = ordered_box(n, 4);
    auto seq = enumerate_leq_n(n, expected.size());
    EXPECT_EQ(seq, expected) << n;
    LeqOrder order(n);
    for (long m = 0; m <= 4; ++m) {
      long count = 0;
      while (order.shell() == static_cast<std::uint64_t>(m)) {
        ++count;
        order.next();
      }
      long want = 1;
      if (m > 0) {
        long a = 1, b = 1;
        for (std::size_t i = 0; i < n; ++i) a *= 2 * m + 1, b *= 2 * m - 1;
        want = a - b;
      }
      EXPECT_EQ(count, want) << "n=" << n << " m=" << m;
    }
  }
}

TEST(SolveInOrder, Examples) {
  auto a = solve_in_order(sys(1, {Equation::unit(1)}), 2);
  EXPECT_EQ(a.kind, Verdict::Found);
  EXPECT_EQ(*a.tuple, tuple({1}));
  auto b = solve_in_order(sys(2, {Equation::add(1, 1, 2), Equation::mul(2, 2, 2)}), 5);
  EXPECT_EQ(b.kind, Verdict::Found);
  EXPECT_EQ(*b.tuple, tuple({0, 0}));
  auto c = solve_in_order(sys(1, {Equation::add(1, 1, 1), Equation::unit(1)}), 10);
  EXPECT_EQ(c.kind, Verdict::NoneUpToCap);
  EXPECT_EQ(c.shell, 10u);
}

TEST(SolveInOrder, AgreesWithFilteredEnumeration) {
  std::mt19937 rng(2026);
  const long cap = 4;
  std::vector<std::vector<Tuple>> boxes;
  for (std::size_t n = 0; n <= 4; ++n) boxes.push_back(n ? ordered_box(n, cap) : std::vector<Tuple>{});
  for (int trial = 0; trial < 300; ++trial) {
    System s = oracle::random_system(rng, 4, 5);
    std::optional<Tuple> first;
    for (const auto& t : boxes[s.n()])
      if (check_solution(s, t)) {
        first = t;
        break;
      }
    auto v = solve_in_order(s, cap);
    if (first) {
      ASSERT_EQ(v.kind, Verdict::Found) << render_system(s);
      EXPECT_EQ(*v.tuple, *first) << render_system(s);
    } else {
      EXPECT_EQ(v.kind, Verdict::NoneUpToCap) << render_system(s);
    }
  }
}

TEST(SolveInOrder, FindsLargeShellQuickly) {
  // x1 = 1, x2 = 2, x3 = 4, x4 = 16, x5 = 256: only shell 256 has a solution.
  auto s = sys(5, {Equation::unit(1), Equation::add(1, 1, 2), Equation::mul(2, 2, 3), Equation::mul(3, 3, 4),
                   Equation::mul(4, 4, 5)});
  auto v = solve_in_order(s, 300);
  ASSERT_EQ(v.kind, Verdict::Found);
  EXPECT_EQ(*v.tuple, tuple({1, 2, 4, 16, 256}));
  EXPECT_TRUE(check_solution(s, *v.tuple));
}

TEST(CheckProperty4, Examples) {
  EXPECT_EQ(check_property4(tuple({2, 1}), 20).kind, Verdict::NoneUpToCap);
  auto free = check_property4(tuple({3}), 10);
  ASSERT_EQ(free.kind, Verdict::Counterexample);
  EXPECT_EQ(*free.tuple, tuple({0}));  // least in <=_1 with y1 != 3
  EXPECT_EQ(check_property4(tuple({1}), 5).kind, Verdict::NoneUpToCap);
}

TEST(CheckProperty4, CounterexampleReverifies) {
  auto v = check_property4(tuple({3, 9}), 10);
  ASSERT_EQ(v.kind, Verdict::Counterexample);
  EXPECT_TRUE(is_relation_morphism(tuple({3, 9}), *v.tuple, true));
  EXPECT_NE((*v.tuple)[0], 3);
}

TEST(CheckProperty4, ExtremalTupleHasProperty) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto v = check_property4(property4_tuple(n), 1000);
    EXPECT_EQ(v.kind, Verdict::NoneUpToCap) << n;
  }
}

TEST(Rigidity, Examples) {
  auto d = rigidity_by_propagation(doubling_tuple(4), false);
  ASSERT_EQ(d.kind, Verdict::Determined);
  EXPECT_EQ(d.tuples, (std::vector<Tuple>{tuple({0, 0, 0, 0}), tuple({256, 16, 4, 2})}));
  auto p = rigidity_by_propagation(property4_tuple(4), true);
  ASSERT_EQ(p.kind, Verdict::Determined);
  EXPECT_EQ(p.tuples, (std::vector<Tuple>{tuple({16, 4, 2, 1})}));
  EXPECT_EQ(rigidity_by_propagation(tuple({3}), false).kind, Verdict::Indeterminate);
}

TEST(Rigidity, ExtremalFamiliesUpTo16) {
  for (std::size_t n = 2; n <= 16; ++n) {
    auto d = rigidity_by_propagation(doubling_tuple(n), false);
    ASSERT_EQ(d.kind, Verdict::Determined) << n;
    EXPECT_EQ(d.tuples, (std::vector<Tuple>{Tuple(n, 0), doubling_tuple(n)})) << n;
    auto p = rigidity_by_propagation(property4_tuple(n), true);
    ASSERT_EQ(p.kind, Verdict::Determined) << n;
    EXPECT_EQ(p.tuples, (std::vector<Tuple>{property4_tuple(n)})) << n;
  }
}

TEST(Rigidity, DeterminedSetsAreExactOnSmallBoxes) {
  std::mt19937 rng(77);
  int determined = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::uniform_int_distribution<std::size_t> len(1, 3);
    Tuple x = oracle::random_tuple(rng, len(rng), 3);
    for (bool units : {false, true}) {
      auto v = rigidity_by_propagation(x, units);
      if (v.kind != Verdict::Determined) continue;
      ++determined;
      long b = 6;
      for (const auto& y : v.tuples) {
        EXPECT_TRUE(is_relation_morphism(x, y, units));
        b = std::max(b, max_norm(y).get_si());
      }
      std::set<Tuple> brute;
      oracle::for_each_in_box(x.size(), b, [&](const Tuple& y) {
        if (is_relation_morphism(x, y, units)) brute.insert(y);
      });
      EXPECT_EQ(brute, std::set<Tuple>(v.tuples.begin(), v.tuples.end())) << format_tuple(x);
    }
  }
  EXPECT_GT(determined, 50);
}

TEST(CheckPsi, OneVariable) {
  auto v = check_psi(1, 10);
  EXPECT_EQ(v.kind, Verdict::Holds);
}

TEST(CheckPsi, EmptyDomainHoldsVacuously) {
  PsiOptions opt;
  opt.domain_low = 4;
  opt.domain_high = 4;
  auto v = check_psi(1, 10, opt);
  EXPECT_EQ(v.kind, Verdict::Holds);
  EXPECT_EQ(v.scanned, 0u);
}

TEST(CheckPsi, CapTooSmallIsUnknown) {
  // For x = (3) the witness must leave shell 3, which a cap of 3 forbids.
  auto v = check_psi(1, 3);
  EXPECT_EQ(v.kind, Verdict::UnknownCapExhausted);
  ASSERT_TRUE(v.tuple);
  EXPECT_EQ(*v.tuple, tuple({-3}));
}

TEST(CheckPsi, TwoVariablesDeterministicAcrossJobs) {
  auto one = check_psi(2, 100);
  PsiOptions opt;
  opt.jobs = 4;
  auto four = check_psi(2, 100, opt);
  EXPECT_EQ(one.kind, Verdict::Holds);
  EXPECT_EQ(four.kind, one.kind);
  EXPECT_EQ(four.scanned, one.scanned);
}

TEST(CheckPsi, DefaultCap) {
  EXPECT_EQ(default_psi_cap(1), 16u);
  EXPECT_EQ(default_psi_cap(2), 256u);
  EXPECT_THROW(default_psi_cap(5), std::invalid_argument);
}
