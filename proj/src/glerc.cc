#include <dpainf/glerc.hh>

#include <vector>

namespace dpainf
{
  glerc_result glerc(const consistency_fn& cons, const right_congruence& def,
                     const glerc_trace& trace)
  {
    glerc_result res;
    ++res.cons_calls;
    if (!cons(def.ts()))
      throw default_inconsistent("default transition system is not "
                                 "consistent");
    const alphabet& sigma = def.sigma();
    partial_ts t(sigma, 1, 0);
    // states are created in llex order of their names
    std::vector<std::string> name{""};
    unsigned k = sigma.size();
    unsigned next = 0;
    while (true)
      {
        while (next < t.size() * k
               && t.succ(static_cast<int>(next / k), next % k) >= 0)
          ++next;
        if (next == t.size() * k)
          break;
        if (t.size() > def.size())
          {
            res.rc = def;
            res.escaped = true;
            return res;
          }
        int p = static_cast<int>(next / k);
        unsigned a = next % k;
        bool done = false;
        for (unsigned q = 0; q < t.size() && !done; ++q)
          {
            t.set_succ(p, a, q);
            ++res.cons_calls;
            bool ok = cons(t);
            if (trace)
              trace({name[p], sigma.symbol(a), name[q], false, ok});
            if (ok)
              done = true;
            else
              t.set_succ(p, a, -1);
          }
        if (done)
          continue;
        int fresh = t.add_state();
        name.push_back(name[p] + sigma.symbol(a));
        t.set_succ(p, a, fresh);
        if (trace)
          trace({name[p], sigma.symbol(a), name.back(), true, true});
      }
    res.rc = right_congruence(t);
    return res;
  }
}
