#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hh"

#include <dpainf/consistency.hh>
#include <dpainf/glerc.hh>

using namespace dpainf;
using testsupport::rng;

TEST_CASE("always-true consistency merges everything into ε")
{
  omega_sample s(alphabet("ab"));
  s.add(upword("", "a"), true);
  auto res = glerc([](const partial_ts&) { return true; }, default_ts(s));
  CHECK(res.rc.size() == 1);
  CHECK_FALSE(res.escaped);
  CHECK(res.cons_calls == 3);
}

TEST_CASE("MN consistency separates a from b")
{
  omega_sample s(alphabet("ab"));
  s.add(upword("a", "b"), true);
  s.add(upword("b", "b"), false);
  auto def = default_ts(s);
  auto setup = mn_setup(s);
  std::vector<glerc_event> events;
  auto res = glerc(
      [&](const partial_ts& t) { return check_consistent(t, setup); }, def,
      [&](const glerc_event& e) { events.push_back(e); });
  CHECK(res.rc.cls("a") != res.rc.cls("b"));
  CHECK(res.rc.size() <= def.size());
  CHECK(check_mn_consistent(res.rc.ts(), s));
  // a and ε share the suffix b^ω with opposite signs
  REQUIRE(events.size() >= 2);
  CHECK(events[0].source == "");
  CHECK(events[0].symbol == 'a');
  CHECK(events[0].target == "");
  CHECK_FALSE(events[0].accepted);
  CHECK(events[1].created);
  CHECK(events[1].target == "a");
}

TEST_CASE("falls back to the default when nothing else is consistent")
{
  omega_sample s(alphabet("ab"));
  s.add(upword("ab", "b"), true);
  auto def = default_ts(s);
  auto res = glerc([&](const partial_ts& t) { return t == def.ts(); }, def);
  CHECK(res.escaped);
  CHECK(res.rc.ts() == def.ts());
}

TEST_CASE("inconsistent default is rejected")
{
  omega_sample s(alphabet("ab"));
  CHECK_THROWS_AS(glerc([](const partial_ts&) { return false; },
                        default_ts(s)),
                  default_inconsistent);
}

TEST_CASE("GLeRC output is complete, consistent, bounded and deterministic")
{
  alphabet s("ab");
  for (int i = 0; i < 300; ++i)
    {
      omega_sample smp(s);
      unsigned n = 1 + rng()() % 5;
      for (unsigned j = 0; j < n; ++j)
        {
          auto w = testsupport::random_upword(s, 3, 3);
          if (!smp.contains(w))
            smp.add(w, rng()() % 2);
        }
      auto def = default_ts(smp);
      auto setup = mn_setup(smp);
      auto cons = [&](const partial_ts& t) {
        return check_consistent(t, setup);
      };
      auto r1 = glerc(cons, def);
      auto r2 = glerc(cons, def);
      CHECK(r1.rc.ts().complete());
      CHECK(check_mn_consistent(r1.rc.ts(), smp));
      CHECK(r1.rc.size() <= def.size());
      CHECK(r1.rc.ts() == r2.rc.ts());
      CHECK(r1.rc.reps() == r2.rc.reps());
      std::size_t d = def.size();
      CHECK(r1.cons_calls <= d * d * 2 * (r1.rc.size() + 1));
    }
}
