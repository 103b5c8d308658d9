#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hh"

#include <dpainf/consistency.hh>

#include <map>

using namespace dpainf;
using testsupport::rng;
using namespace testsupport;

namespace
{
  omega_sample random_sample(const alphabet& s, unsigned words,
                             std::size_t max_len, bool periodic = false)
  {
    omega_sample smp(s);
    for (unsigned i = 0; i < words; ++i)
      {
        std::size_t len = 1 + rng()() % max_len;
        std::size_t lu = periodic ? 0 : rng()() % len;
        upword w(testsupport::random_word(s, lu),
                 testsupport::random_word(s, len - lu));
        if (!smp.contains(w))
          smp.add(w, rng()() % 2);
      }
    return smp;
  }

}

TEST_CASE("MN setup for a two-word sample")
{
  omega_sample s(alphabet("ab"));
  s.add(upword("a", "b"), true);
  s.add(upword("b", "b"), false);
  auto cs = mn_setup(s);
  CHECK(cs.a1.size() == 3);
  CHECK(cs.a2.size() == 2);
  int q1 = cs.a1.ts.succ(cs.a1.ts.initial(), 'a');
  int q2 = cs.a2.ts.succ(cs.a2.ts.initial(), 'b');
  CHECK(cs.conflict(q1, q2));
  CHECK_FALSE(cs.conflict(cs.a1.ts.initial(), cs.a2.ts.initial()));
  partial_ts one(s.sigma(), 1, 0);
  one.set_succ(0, 'a', 0);
  one.set_succ(0, 'b', 0);
  CHECK_FALSE(check_mn_consistent(one, s));
  CHECK(check_mn_consistent(default_ts(s).ts(), s));
  CHECK(mn_setup(omega_sample(s.sigma())).conflict_count() == 0);
}

TEST_CASE("MN consistency agrees with the definition")
{
  alphabet s("ab");
  for (int i = 0; i < 600; ++i)
    {
      auto smp = random_sample(s, 1 + rng()() % 3, 3);
      auto t = random_partial(s, 1 + rng()() % 3);
      bool got = check_mn_consistent(t, smp);
      CHECK(got == brute_mn(t, smp));
      CHECK(check_mn_consistent(default_ts(smp).ts(), smp));
    }
}

TEST_CASE("removing transitions keeps consistency")
{
  alphabet s("ab");
  for (int i = 0; i < 300; ++i)
    {
      auto smp = random_sample(s, 1 + rng()() % 3, 3);
      auto t = random_partial(s, 1 + rng()() % 3);
      if (!check_mn_consistent(t, smp))
        continue;
      auto u = t;
      u.set_succ(int(rng()() % u.size()), unsigned(rng()() % 2), -1);
      CHECK(check_mn_consistent(u, smp));
    }
}

TEST_CASE("periodic roots")
{
  alphabet s("ab");
  omega_sample a(s);
  a.add(upword("", "ab"), true);
  a.add(upword("a", "b"), true);
  CHECK(periodic_roots(a, true) == std::set<std::string>{"ab"});
  omega_sample b(s);
  b.add(upword("", "aa"), true);
  CHECK(periodic_roots(b, true) == std::set<std::string>{"a"});
  CHECK(periodic_roots(omega_sample(s), true).empty());
}

TEST_CASE("iteration setup for one class")
{
  alphabet s("ab");
  partial_ts one(s, 1, 0);
  one.set_succ(0, 'a', 0);
  one.set_succ(0, 'b', 0);
  right_congruence rc(one);
  omega_sample smp(s);
  smp.add(upword("", "a"), true);
  smp.add(upword("", "b"), false);
  auto cs = iteration_setup(smp, rc, 0);
  CHECK(cs.a1.accepts("aaa"));
  CHECK_FALSE(cs.a1.accepts(""));
  CHECK_FALSE(cs.a1.accepts("ab"));
  CHECK(cs.a2.accepts("bb"));
  // no common completion from the start, but "a" and "b" clash with z = ε
  CHECK_FALSE(cs.conflict(cs.a1.ts.initial(), cs.a2.ts.initial()));
  CHECK(cs.conflict(cs.a1.ts.succ(cs.a1.ts.initial(), 'a'),
                    cs.a2.ts.succ(cs.a2.ts.initial(), 'b')));
  CHECK_FALSE(check_iteration_consistent(one, smp, rc, 0));
  CHECK(brute_iteration(one, smp, rc, 0) == false);
  partial_ts split(s, 2, 0);
  split.set_succ(0, 'a', 1);
  split.set_succ(1, 'a', 1);
  split.set_succ(0, 'b', 0);
  split.set_succ(1, 'b', 0);
  CHECK(check_iteration_consistent(split, smp, rc, 0));

  omega_sample neg_free(s);
  neg_free.add(upword("", "ab"), true);
  CHECK(iteration_setup(neg_free, rc, 0).conflict_count() == 0);
}

TEST_CASE("iteration consistency needs an MN-consistent congruence")
{
  alphabet s("ab");
  partial_ts one(s, 1, 0);
  one.set_succ(0, 'a', 0);
  one.set_succ(0, 'b', 0);
  right_congruence rc(one);
  omega_sample smp(s);
  smp.add(upword("a", "b"), true);
  smp.add(upword("b", "b"), false);
  CHECK_THROWS_AS(iteration_setup(smp, rc, 0), mn_precondition);
  CHECK_NOTHROW(iteration_setup(smp, rc, 0, false));
}

TEST_CASE("iteration consistency agrees with the definition")
{
  alphabet s("ab");
  int checked = 0;
  for (int i = 0; i < 1500; ++i)
    {
      auto smp = random_sample(s, 1 + rng()() % 3, 3, rng()() % 2);
      partial_ts lead(s, 1 + rng()() % 2, 0);
      for (unsigned q = 0; q < lead.size(); ++q)
        for (unsigned a = 0; a < 2; ++a)
          lead.set_succ(q, a, rng()() % lead.size());
      right_congruence rc(lead);
      if (!check_mn_consistent(rc.ts(), smp))
        continue;
      int c = rng()() % rc.size();
      auto t = random_partial(s, 1 + rng()() % 3);
      auto cs = iteration_setup(smp, rc, c);
      // backward closure of the conflict relation
      for (unsigned q1 = 0; q1 < cs.a1.size(); ++q1)
        for (unsigned q2 = 0; q2 < cs.a2.size(); ++q2)
          for (unsigned a = 0; a < 2; ++a)
            if (cs.conflict(cs.a1.ts.succ(q1, a), cs.a2.ts.succ(q2, a)))
              CHECK(cs.conflict(q1, q2));
      CHECK(check_consistent(t, cs) == brute_iteration(t, smp, rc, c));
      CHECK(check_consistent(default_ts(smp).ts(), cs));
      ++checked;
    }
  CHECK(checked > 300);
}

TEST_CASE("SCC purity")
{
  alphabet s("ab");
  partial_ts two(s, 2, 0);
  two.set_succ(0, 'a', 0);
  two.set_succ(0, 'b', 1);
  two.set_succ(1, 'a', 1);
  two.set_succ(1, 'b', 1);
  CHECK(check_scc_purity(two, {upword("", "a")}, {upword("b", "a")}));
  partial_ts one(s, 1, 0);
  one.set_succ(0, 'a', 0);
  one.set_succ(0, 'b', 0);
  CHECK_FALSE(check_scc_purity(one, {upword("", "a")}, {upword("", "ab")}));
  for (int i = 0; i < 300; ++i)
    {
      auto t = random_partial(s, 1 + rng()() % 4);
      std::vector<upword> pos, neg;
      for (int j = 0; j < 2; ++j)
        {
          pos.push_back(testsupport::random_upword(s, 2, 3));
          neg.push_back(testsupport::random_upword(s, 2, 3));
        }
      auto info = sccs(t);
      std::set<int> pc, nc;
      for (auto& w: pos)
        if (auto inf = infinity_set(t, w))
          for (int q: *inf)
            pc.insert(info.comp[q]);
      bool clash = false;
      for (auto& w: neg)
        if (auto inf = infinity_set(t, w))
          for (int q: *inf)
            clash |= pc.count(info.comp[q]) > 0;
      CHECK(check_scc_purity(t, pos, neg) == !clash);
    }
}
