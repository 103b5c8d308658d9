#include <dpainf/forc.hh>

#include <dpainf/consistency.hh>

#include <algorithm>
#include <deque>
#include <map>

namespace dpainf
{
  std::size_t forc::size() const
  {
    std::size_t n = leading.size();
    for (auto& p: progress)
      n += p.size();
    return n;
  }

  unsigned fwpm_family::priorities() const
  {
    unsigned k = 0;
    for (auto& m: machines)
      k = std::max(k, m.priorities());
    return k;
  }

  namespace
  {
    // calls f(i, q) for prefix lengths i until (class, alignment) repeats
    template<class F>
    void for_each_position(const upword& w, const right_congruence& rc, F f)
    {
      std::set<std::pair<int, std::size_t>> seen;
      int q = 0;
      for (std::size_t i = 0;; ++i)
        {
          if (!seen.emplace(q, w.alignment(i)).second)
            return;
          f(i, q);
          q = rc.succ(q, w.at(i));
        }
    }
  }

  omega_sample residual_sample(const omega_sample& s,
                               const right_congruence& rc, int c)
  {
    omega_sample out(s.sigma());
    for (int sign = 1; sign >= 0; --sign)
      for (auto& w: s.words(sign))
        for_each_position(w, rc, [&](std::size_t i, int q) {
          if (q == c)
            out.add(w.suffix(i), sign);
        });
    return out;
  }

  std::set<upword> looping_periodics(const omega_sample& s,
                                     const right_congruence& rc, int c,
                                     bool positive)
  {
    std::set<upword> out;
    for (auto& w: s.words(positive))
      for_each_position(w, rc, [&](std::size_t i, int q) {
        if (q != c || i < w.spine().size())
          return;
        upword r = w.suffix(i);
        int p = q;
        for (unsigned n = 0; n < rc.size(); ++n)
          {
            p = rc.run(p, r.period());
            if (p == q)
              {
                out.insert(r);
                return;
              }
          }
      });
    return out;
  }

  bool forc_law_holds(const partial_ts& progress, const right_congruence& rc,
                      int c)
  {
    std::vector<int> owner(progress.size(), -1);
    std::deque<int> todo{progress.initial()};
    owner[progress.initial()] = c;
    while (!todo.empty())
      {
        int q = todo.front();
        todo.pop_front();
        for (unsigned a = 0; a < progress.sigma().size(); ++a)
          {
            int r = progress.succ(q, a);
            if (r < 0)
              continue;
            int l = rc.ts().succ(owner[q], a);
            if (owner[r] < 0)
              {
                owner[r] = l;
                todo.push_back(r);
              }
            else if (owner[r] != l)
              return false;
          }
      }
    return true;
  }

  namespace
  {
    bool enters_initial(const partial_ts& t)
    {
      for (unsigned q = 0; q < t.size(); ++q)
        for (unsigned a = 0; a < t.sigma().size(); ++a)
          if (t.succ(q, a) == t.initial())
            return true;
      return false;
    }
  }

  forc learn_forc(const omega_sample& s, forc_stats* stats,
                  const glerc_trace& leading_trace,
                  const progress_trace& trace)
  {
    forc_stats local;
    forc_stats& st = stats ? *stats : local;
    auto mn = mn_setup(s);
    auto lead = glerc(
        [&](const partial_ts& t) { return check_consistent(t, mn); },
        default_ts(s), leading_trace);
    st.cons_calls += lead.cons_calls;
    st.leading_escaped = lead.escaped;
    forc f;
    f.leading = lead.rc;
    const right_congruence& rc = f.leading;
    for (unsigned c = 0; c < rc.size(); ++c)
      {
        int ci = static_cast<int>(c);
        omega_sample sc = residual_sample(s, rc, ci);
        auto rp = looping_periodics(s, rc, ci, true);
        auto rn = looping_periodics(s, rc, ci, false);
        std::vector<upword> pos(rp.begin(), rp.end());
        std::vector<upword> neg(rn.begin(), rn.end());
        auto mn_c = mn_setup(sc);
        // the leading congruence need not be MN-consistent with S_c
        auto it_c = iteration_setup(sc, rc, ci, false);
        auto cons = [&](const partial_ts& t) {
          return !enters_initial(t) && forc_law_holds(t, rc, ci)
                 && check_consistent(t, mn_c)
                 && check_consistent(t, it_c)
                 && check_scc_purity(t, pos, neg);
        };
        // ε keeps a class of its own
        right_congruence def(
            product_ts(default_ts(sc, 1).ts(), rc.ts(), ci));
        glerc_trace hook;
        if (trace)
          hook = [&](const glerc_event& e) { trace(ci, e); };
        auto res = glerc(cons, def, hook);
        st.cons_calls += res.cons_calls;
        st.progress_escaped.push_back(res.escaped);
        f.progress.push_back(res.rc);
      }
    return f;
  }

  std::vector<int> color_by_rounds(const partial_ts& ts,
                                   const std::vector<int>& labels,
                                   unsigned* rounds)
  {
    unsigned n = ts.size();
    auto info = sccs(ts);
    std::vector<int> signs(info.count(), 0);
    for (unsigned q = 0; q < n; ++q)
      {
        if (labels[q] == 0)
          continue;
        int& m = signs[info.comp[q]];
        m |= labels[q] > 0 ? 1 : 2;
        if (m == 3)
          throw purity_violation("an SCC carries both signs");
      }
    // labelled states reachable from each state
    std::vector<std::vector<int>> reach(n);
    for (unsigned q = 0; q < n; ++q)
      {
        std::vector<char> seen(n, 0);
        std::deque<int> todo{static_cast<int>(q)};
        seen[q] = 1;
        while (!todo.empty())
          {
            int p = todo.front();
            todo.pop_front();
            if (labels[p] != 0)
              reach[q].push_back(p);
            for (unsigned a = 0; a < ts.sigma().size(); ++a)
              {
                int r = ts.succ(p, a);
                if (r >= 0 && !seen[r])
                  {
                    seen[r] = 1;
                    todo.push_back(r);
                  }
              }
          }
      }
    std::vector<int> color(n, -1);
    unsigned left = n;
    int i = 0;
    for (; left > 0; ++i)
      {
        if (i > 2 * static_cast<int>(n) + 2)
          throw purity_violation("coloring does not terminate");
        int want = i % 2 == 0 ? 1 : -1;
        std::vector<int> pick;
        for (unsigned q = 0; q < n; ++q)
          {
            if (color[q] >= 0)
              continue;
            bool ok = std::all_of(reach[q].begin(), reach[q].end(),
                                  [&](int p) {
                                    return color[p] >= 0 || labels[p] == want;
                                  });
            if (ok)
              pick.push_back(q);
          }
        for (int q: pick)
          color[q] = i;
        left -= pick.size();
      }
    if (rounds)
      *rounds = i;
    return color;
  }

  colored_forc color_forc(const forc& f, const omega_sample& s)
  {
    colored_forc cf{f, {}, 0};
    for (unsigned c = 0; c < f.leading.size(); ++c)
      {
        const partial_ts& ts = f.progress[c].ts();
        std::vector<int> labels(ts.size(), 0);
        for (int sign = 1; sign >= 0; --sign)
          for (auto& w: looping_periodics(s, f.leading, c, sign))
            if (auto inf = infinity_set(ts, w))
              for (int q: *inf)
                {
                  int l = sign ? 1 : -1;
                  if (labels[q] == -l)
                    throw purity_violation("a state carries both signs");
                  labels[q] = l;
                }
        unsigned r = 0;
        cf.colors.push_back(color_by_rounds(ts, labels, &r));
        cf.rounds = std::max(cf.rounds, r);
      }
    return cf;
  }

  fwpm_family mealy_family(const colored_forc& cf)
  {
    fwpm_family fam{cf.f.leading, {}};
    for (unsigned c = 0; c < cf.f.progress.size(); ++c)
      {
        const partial_ts& ts = cf.f.progress[c].ts();
        mealy_machine m(ts.sigma(), ts.size(), ts.initial());
        for (unsigned q = 0; q < ts.size(); ++q)
          for (unsigned a = 0; a < ts.sigma().size(); ++a)
            {
              int r = ts.succ(q, a);
              m.set(q, a, r, cf.colors[c][r]);
            }
        fam.machines.push_back(m);
      }
    return fam;
  }

  right_congruence myhill_nerode_from_dpa(const dpa& a0)
  {
    dpa a = reachable_part(a0);
    unsigned n = a.size();
    auto rooted = [&](int q) {
      dpa r = a;
      r.set_initial(q);
      return r;
    };
    std::vector<int> block(n, -1);
    std::vector<int> heads;
    for (unsigned q = 0; q < n; ++q)
      {
        dpa aq = rooted(q);
        for (std::size_t b = 0; b < heads.size() && block[q] < 0; ++b)
          if (!dpa_equivalent(aq, rooted(heads[b]), false))
            block[q] = static_cast<int>(b);
        if (block[q] < 0)
          {
            block[q] = static_cast<int>(heads.size());
            heads.push_back(q);
          }
      }
    partial_ts ts(a.sigma(), heads.size(), block[a.initial()]);
    for (std::size_t b = 0; b < heads.size(); ++b)
      for (unsigned c = 0; c < a.sigma().size(); ++c)
        ts.set_succ(static_cast<int>(b), c, block[a.succ(heads[b], c)]);
    return right_congruence(ts);
  }

  std::vector<int> class_states(const dpa& a, const right_congruence& leading,
                                int c)
  {
    std::vector<int> owner(a.size(), -1);
    std::deque<int> todo{a.initial()};
    owner[a.initial()] = 0;
    while (!todo.empty())
      {
        int q = todo.front();
        todo.pop_front();
        for (unsigned s = 0; s < a.sigma().size(); ++s)
          {
            int r = a.succ(q, s);
            int l = leading.ts().succ(owner[q], s);
            if (owner[r] < 0)
              {
                owner[r] = l;
                todo.push_back(r);
              }
            else if (owner[r] != l)
              throw refinement_violation(
                  "automaton congruence does not refine the leading one");
          }
      }
    std::vector<int> out;
    for (unsigned q = 0; q < a.size(); ++q)
      if (owner[q] == c)
        out.push_back(q);
    return out;
  }

  right_congruence canonical_prc_from_dpa(const dpa& a,
                                          const right_congruence& leading,
                                          int c)
  {
    const alphabet& sigma = a.sigma();
    std::vector<int> qc = class_states(a, leading, c);
    std::vector<int> index(a.size(), -1);
    for (std::size_t j = 0; j < qc.size(); ++j)
      index[qc[j]] = static_cast<int>(j);
    int q0 = a.run(a.initial(), leading.rep(c));

    // node 0 is ε; the others are (leading state, Δ over Q_c)
    using delta = std::vector<std::pair<int, int>>;
    std::vector<std::pair<int, delta>> nodes{{c, {}}};
    std::map<std::pair<int, delta>, int> id;
    std::vector<std::vector<int>> succ{std::vector<int>(sigma.size(), -1)};
    auto get = [&](std::pair<int, delta> key) {
      auto [it, fresh] = id.emplace(key, 0);
      if (fresh)
        {
          it->second = static_cast<int>(nodes.size());
          nodes.push_back(std::move(key));
          succ.emplace_back(sigma.size(), -1);
        }
      return it->second;
    };
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (unsigned s = 0; s < sigma.size(); ++s)
        {
          auto [l, d] = nodes[i];
          delta e(qc.size());
          for (std::size_t j = 0; j < qc.size(); ++j)
            {
              auto [q, p] = i == 0 ? std::make_pair(qc[j], -1) : d[j];
              int o = a.out(q, s);
              e[j] = {a.succ(q, s), p < 0 ? o : std::min(p, o)};
            }
          int t = get({leading.ts().succ(l, s), std::move(e)});
          succ[i][s] = t;
        }

    // observable: leading state, and the parity of u·x^ω when x loops
    auto observe = [&](std::size_t i) -> std::pair<int, int> {
      if (i == 0)
        return {-1, -1};
      auto& [l, d] = nodes[i];
      if (l != c)
        return {l, -1};
      std::vector<int> when(qc.size(), -1);
      std::vector<int> prio;
      int q = q0;
      while (when[index[q]] < 0)
        {
          when[index[q]] = static_cast<int>(prio.size());
          prio.push_back(d[index[q]].second);
          q = d[index[q]].first;
          if (index[q] < 0)
            throw refinement_violation("loop leaves the class");
        }
      int m = *std::min_element(prio.begin() + when[index[q]], prio.end());
      return {l, m % 2 == 0 ? 1 : 0};
    };
    std::size_t n = nodes.size();
    std::vector<int> block(n);
    {
      std::map<std::pair<int, int>, int> ids;
      for (std::size_t i = 0; i < n; ++i)
        block[i] = ids.emplace(observe(i), ids.size()).first->second;
    }
    // Moore refinement
    while (true)
      {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(n);
        for (std::size_t i = 0; i < n; ++i)
          {
            std::vector<int> sig{block[i]};
            for (int t: succ[i])
              sig.push_back(block[t]);
            next[i] = ids.emplace(sig, ids.size()).first->second;
          }
        bool same = ids.size()
                    == static_cast<std::size_t>(
                        *std::max_element(block.begin(), block.end()) + 1);
        block = std::move(next);
        if (same)
          break;
      }
    int blocks = *std::max_element(block.begin(), block.end()) + 1;
    partial_ts ts(sigma, blocks, block[0]);
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned s = 0; s < sigma.size(); ++s)
        ts.set_succ(block[i], s, block[succ[i][s]]);
    return right_congruence(ts);
  }

  bool idempotent_class(const right_congruence& prc,
                        const right_congruence& leading, int c,
                        const std::string& x)
  {
    return !x.empty() && leading.run(c, x) == c
           && prc.cls(x) == prc.cls(x + x);
  }

  std::vector<int> kappa_from_idempotents(
      const right_congruence& prc, int c,
      const std::function<bool(const upword&)>& member,
      const right_congruence& leading)
  {
    std::vector<int> labels(prc.size(), 0);
    for (unsigned q = 0; q < prc.size(); ++q)
      {
        const std::string& x = prc.rep(q);
        if (idempotent_class(prc, leading, c, x))
          labels[q] = member(upword(leading.rep(c), x)) ? 1 : -1;
      }
    return color_by_rounds(prc.ts(), labels);
  }
}
