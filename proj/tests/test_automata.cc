#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hh"

#include <functional>

using namespace dpainf;
using testsupport::rng;

namespace
{
  dpa constant(const alphabet& s, int p)
  {
    dpa a(s, 1, 0);
    for (unsigned c = 0; c < s.size(); ++c)
      a.set(0, c, 0, p);
    return a;
  }

  dfa build_dfa(const alphabet& s, unsigned n,
                const std::vector<std::vector<int>>& delta,
                const std::vector<bool>& fin)
  {
    partial_ts ts(s, n, 0);
    for (unsigned q = 0; q < n; ++q)
      for (unsigned c = 0; c < s.size(); ++c)
        ts.set_succ(q, c, delta[q][c]);
    return dfa{ts, fin};
  }
}

TEST_CASE("membership on the finitely-many-b-or-aba language")
{
  auto a = testsupport::aba_dpa();
  CHECK(dpa_membership(a, upword("", "ab")));
  CHECK_FALSE(dpa_membership(a, upword("", "b")));
  CHECK(dpa_membership(a, upword("", "a")));
  for (auto& w: testsupport::all_upwords(a.sigma(), 7))
    CHECK(dpa_membership(a, w) == testsupport::aba_predicate(w));
}

TEST_CASE("constant machines")
{
  alphabet s("ab");
  for (int i = 0; i < 20; ++i)
    {
      auto w = testsupport::random_upword(s, 3, 3);
      CHECK(dpa_membership(constant(s, 0), w));
      CHECK_FALSE(dpa_membership(constant(s, 1), w));
    }
  CHECK(dpa_complement(constant(s, 0)) == constant(s, 1));
}

TEST_CASE("least priority on a path")
{
  auto a = testsupport::aba_dpa();
  CHECK(min_priority_on_path(a, 0, "a") == 2);
  CHECK(min_priority_on_path(a, 0, "aba") == 0);
  for (int i = 0; i < 300; ++i)
    {
      auto m = testsupport::random_machine(alphabet("ab"), 4, 4);
      auto u = testsupport::random_word(m.sigma(), 1 + rng()() % 5);
      auto v = testsupport::random_word(m.sigma(), 1 + rng()() % 5);
      int q = rng()() % 4;
      CHECK(min_priority_on_path(m, q, u + v)
            == std::min(min_priority_on_path(m, q, u),
                        min_priority_on_path(m, m.run(q, u), v)));
    }
}

TEST_CASE("complement flips membership")
{
  alphabet s("ab");
  for (int i = 0; i < 50; ++i)
    {
      auto a = testsupport::random_machine(s, 4, 4);
      auto c = dpa_complement(a);
      auto cc = dpa_complement(c);
      CHECK(c.size() == a.size());
      for (int j = 0; j < 200; ++j)
        {
          auto w = testsupport::random_upword(s, 4, 4);
          CHECK(dpa_membership(a, w) != dpa_membership(c, w));
          CHECK(dpa_membership(a, w) == dpa_membership(cc, w));
        }
    }
}

TEST_CASE("compaction keeps parities and order")
{
  alphabet s("ab");
  dpa a(s, 2, 0);
  a.set(0, 'a', 1, 3);
  a.set(0, 'b', 0, 5);
  a.set(1, 'a', 0, 6);
  a.set(1, 'b', 1, 9);
  auto c = compact_priorities(a);
  CHECK(c.out(0, 'a') == 1);
  CHECK(c.out(0, 'b') == 3);
  CHECK(c.out(1, 'a') == 4);
  CHECK(c.out(1, 'b') == 5);
}

TEST_CASE("emptiness witnesses")
{
  alphabet s("ab");
  CHECK_FALSE(dpa_nonempty_witness(constant(s, 1)).has_value());
  alphabet one("a");
  CHECK(dpa_nonempty_witness(constant(one, 0)) == upword("", "a"));
}

TEST_CASE("emptiness agrees with bounded enumeration")
{
  alphabet s("ab");
  for (int i = 0; i < 300; ++i)
    {
      unsigned n = 1 + rng()() % 4, k = 1 + rng()() % 3;
      auto a = testsupport::random_machine(s, n, k);
      auto w = dpa_nonempty_witness(a);
      bool found = false;
      for (auto& x: testsupport::all_upwords(s, std::min(2 * n * k, 10u)))
        if (dpa_membership(a, x))
          {
            found = true;
            break;
          }
      CHECK(w.has_value() == found);
      if (w)
        CHECK(dpa_membership(a, *w));
    }
}

TEST_CASE("equivalence")
{
  alphabet s("ab");
  auto a = testsupport::aba_dpa();
  CHECK_FALSE(dpa_equivalent(a, a).has_value());
  CHECK(dpa_equivalent(constant(s, 0), constant(s, 1)) == upword("", "a"));
}

TEST_CASE("equivalence agrees with bounded enumeration")
{
  alphabet s("ab");
  auto words = testsupport::all_upwords(s, 10);
  for (int i = 0; i < 300; ++i)
    {
      auto a = testsupport::random_machine(s, 1 + rng()() % 3, 1 + rng()() % 3);
      auto b = testsupport::random_machine(s, 1 + rng()() % 3, 1 + rng()() % 3);
      auto w = dpa_equivalent(a, b);
      const upword* first = nullptr;
      for (auto& x: words)
        if (dpa_membership(a, x) != dpa_membership(b, x))
          {
            first = &x;
            break;
          }
      CHECK(w.has_value() == (first != nullptr));
      if (w)
        {
          CHECK(dpa_membership(a, *w) != dpa_membership(b, *w));
          // the witness is the least differing word
          CHECK(*w == *first);
        }
    }
}

TEST_CASE("equivalence is an equivalence relation on a corpus")
{
  alphabet s("ab");
  std::vector<dpa> corpus;
  for (int i = 0; i < 25; ++i)
    corpus.push_back(testsupport::random_machine(s, 1 + rng()() % 2, 2));
  for (auto& x: corpus)
    CHECK_FALSE(dpa_equivalent(x, x));
  for (auto& x: corpus)
    for (auto& y: corpus)
      {
        bool xy = !dpa_equivalent(x, y);
        CHECK(xy == !dpa_equivalent(y, x));
        if (!xy)
          continue;
        for (auto& z: corpus)
          if (!dpa_equivalent(y, z))
            CHECK_FALSE(dpa_equivalent(x, z));
      }
}

TEST_CASE("normalization of simple machines")
{
  alphabet s("ab");
  CHECK(dpa_normalize(constant(s, 0)) == constant(s, 0));
  dpa a(s, 1, 0);
  a.set(0, 'a', 0, 2);
  a.set(0, 'b', 0, 3);
  auto n = dpa_normalize(a);
  CHECK(n.out(0, 'a') == 0);
  CHECK(n.out(0, 'b') == 1);
}

TEST_CASE("normalization is language preserving and idempotent")
{
  alphabet s("ab");
  for (int i = 0; i < 300; ++i)
    {
      auto a = testsupport::random_machine(s, 1 + rng()() % 4, 1 + rng()() % 4);
      auto n = dpa_normalize(a);
      CHECK_FALSE(dpa_equivalent(a, n));
      CHECK(dpa_normalize(n) == n);
    }
}

TEST_CASE("normalization is pointwise minimal against exhaustive relabeling")
{
  alphabet s("ab");
  for (int i = 0; i < 60; ++i)
    {
      unsigned n = 1 + rng()() % 3, k = 1 + rng()() % 3;
      auto a = testsupport::random_machine(s, n, k);
      auto norm = dpa_normalize(a);
      unsigned edges = n * 2;
      int top = static_cast<int>(a.priorities()) - 1;
      std::vector<int> lab(edges, 0);
      // every equivalent labelling with values <= top dominates norm
      while (true)
        {
          dpa b = a;
          for (unsigned e = 0; e < edges; ++e)
            b.set(e / 2, e % 2, a.succ(e / 2, e % 2), lab[e]);
          if (!dpa_equivalent(a, b))
            for (unsigned e = 0; e < edges; ++e)
              CHECK(norm.out(e / 2, e % 2) <= lab[e]);
          unsigned e = 0;
          while (e < edges && lab[e] == top)
            lab[e++] = 0;
          if (e == edges)
            break;
          ++lab[e];
        }
    }
}

TEST_CASE("normalized machines realise each least priority on a loop")
{
  alphabet s("ab");
  for (int i = 0; i < 100; ++i)
    {
      unsigned n = 1 + rng()() % 3, k = 1 + rng()() % 3;
      auto a = dpa_normalize(testsupport::random_machine(s, n, k));
      auto loops = testsupport::all_words(s, n * k + n);
      for (unsigned q = 0; q < n; ++q)
        for (auto& u: testsupport::all_words(s, 3))
          {
            int p = min_priority_on_path(a, q, u);
            if (p == 0)
              continue;
            bool ok = false;
            int r = a.run(q, u);
            for (auto& v: loops)
              if (a.run(r, v) == int(q)
                  && min_priority_on_path(a, q, u + v) == p)
                {
                  ok = true;
                  break;
                }
            CHECK(ok);
          }
    }
}

TEST_CASE("Mealy minimization")
{
  alphabet s("ab");
  mealy_machine m(s, 3, 0);
  m.set(0, 'a', 1, 0);
  m.set(0, 'b', 2, 1);
  m.set(1, 'a', 0, 1);
  m.set(1, 'b', 1, 1);
  m.set(2, 'a', 0, 1);
  m.set(2, 'b', 2, 1);
  CHECK(mealy_minimize(m).size() == 2);
  auto mm = mealy_minimize(mealy_minimize(m));
  CHECK(mm == mealy_minimize(m));
  for (int i = 0; i < 100; ++i)
    {
      auto r = testsupport::random_machine(s, 1 + rng()() % 6, 3, rng(),
                                            false);
      auto min = mealy_minimize(r);
      CHECK(min.size() <= r.size());
      for (int j = 0; j < 500; ++j)
        {
          auto u = testsupport::random_word(s, 1 + rng()() % 8);
          CHECK(min.output(u) == r.output(u));
        }
    }
}

TEST_CASE("Mealy separating words")
{
  alphabet s("ab");
  auto a = testsupport::aba_dpa();
  CHECK_FALSE(mealy_separating_word(a, a));
  CHECK(mealy_separating_word(constant(s, 0), constant(s, 1)) == "a");
  for (int i = 0; i < 200; ++i)
    {
      auto x = testsupport::random_machine(s, 1 + rng()() % 3, 2);
      auto y = testsupport::random_machine(s, 1 + rng()() % 3, 2);
      auto w = mealy_separating_word(x, y);
      std::optional<std::string> brute;
      for (auto& u: testsupport::all_words(s, 9))
        if (x.output(u) != y.output(u))
          {
            brute = u;
            break;
          }
      CHECK(w == brute);
    }
}

TEST_CASE("threshold DFAs of a weak mapping")
{
  alphabet s("ab");
  mealy_machine p(s, 6, 0);
  // 0 start, 1 a+, 2 ends in ab, 3 b seen, 4 b seen then a, 5 aba seen
  p.set(0, 'a', 1, 2);
  p.set(0, 'b', 3, 1);
  p.set(1, 'a', 1, 2);
  p.set(1, 'b', 2, 1);
  p.set(2, 'a', 5, 0);
  p.set(2, 'b', 3, 1);
  p.set(3, 'a', 4, 1);
  p.set(3, 'b', 3, 1);
  p.set(4, 'a', 4, 1);
  p.set(4, 'b', 2, 1);
  p.set(5, 'a', 5, 0);
  p.set(5, 'b', 5, 0);
  CHECK(mealy_is_weak(p));
  auto d0 = dfa_from_mealy_threshold(p, 0);
  auto d1 = dfa_from_mealy_threshold(p, 1);
  auto d2 = dfa_from_mealy_threshold(p, 2);
  // Σ*abaΣ*
  auto aba = build_dfa(s, 4, {{1, 0}, {1, 2}, {3, 0}, {3, 3}},
                       {false, false, false, true});
  // Σ*bΣ*
  auto b = build_dfa(s, 2, {{0, 1}, {1, 1}}, {false, true});
  // Σ^+
  auto plus = build_dfa(s, 2, {{1, 1}, {1, 1}}, {false, true});
  CHECK(dfa_equivalent(d0, aba));
  CHECK(dfa_equivalent(d1, b));
  CHECK(dfa_equivalent(d2, plus));
  CHECK(d0.size() == 4);
  CHECK(d1.size() == 2);
  CHECK(d2.size() == 2);
  // outputs that rise again are rejected
  CHECK_FALSE(mealy_is_weak(testsupport::aba_dpa()));
  CHECK_THROWS_AS(dfa_from_mealy_threshold(testsupport::aba_dpa(), 0),
                  not_weak);
}

TEST_CASE("weakness check agrees with path enumeration")
{
  alphabet s("ab");
  for (int i = 0; i < 300; ++i)
    {
      auto m = testsupport::random_machine(s, 1 + rng()() % 3, 3);
      bool weak = true;
      for (auto& u: testsupport::all_words(s, 7))
        if (u.size() > 1
            && m.output(u) > m.output(u.substr(0, u.size() - 1)))
          weak = false;
      CHECK(mealy_is_weak(m) == weak);
    }
}

TEST_CASE("accepted prefixes of a period")
{
  alphabet s("ab");
  auto b = build_dfa(s, 2, {{0, 1}, {1, 1}}, {false, true});
  CHECK(dfa_accepts_prefix_of_period(b, 0, "ab") == "ab");
  auto none = build_dfa(s, 1, {{0, 0}}, {false});
  CHECK_FALSE(dfa_accepts_prefix_of_period(none, 0, "ab"));
  for (int i = 0; i < 300; ++i)
    {
      unsigned n = 1 + rng()() % 5;
      partial_ts ts(s, n, 0);
      std::vector<bool> fin(n);
      for (unsigned q = 0; q < n; ++q)
        {
          fin[q] = rng()() % 4 == 0;
          for (unsigned c = 0; c < 2; ++c)
            ts.set_succ(q, c, rng()() % n);
        }
      dfa d{ts, fin};
      auto v = testsupport::random_word(s, 1 + rng()() % 4);
      int q = rng()() % n;
      auto x = dfa_accepts_prefix_of_period(d, q, v);
      std::optional<std::string> brute;
      std::string p;
      for (std::size_t l = 1; l <= n * v.size() + v.size(); ++l)
        {
          p.push_back(v[(l - 1) % v.size()]);
          if (d.accepts_from(q, p))
            {
              brute = p;
              break;
            }
        }
      CHECK(x == brute);
      if (x)
        CHECK(x->size() <= n * v.size());
    }
}
