#include <dpainf/consistency.hh>

#include <algorithm>
#include <deque>

namespace dpainf
{
  std::size_t conflict_setup::conflict_count() const
  {
    return std::count(conflicts.begin(), conflicts.end(), 1);
  }

  dfa prefix_acceptor(const alphabet& sigma, const std::set<upword>& words)
  {
    auto tree = build_prefix_tree(sigma, {words.begin(), words.end()});
    int sink = complete_with_sink(tree.ts);
    dfa d{tree.ts, std::vector<bool>(tree.ts.size(), !words.empty())};
    d.final[sink] = false;
    return d;
  }

  namespace
  {
    // pairs from which an infinite run stays inside F1 x F2
    std::vector<char> infinite_conflicts(const dfa& a1, const dfa& a2)
    {
      unsigned n2 = a2.size(), k = a1.ts.sigma().size();
      unsigned n = a1.size() * n2;
      auto inside = [&](int s) { return a1.final[s / n2] && a2.final[s % n2]; };
      auto succ = [&](int s, unsigned c) {
        return a1.ts.succ(s / n2, c) * static_cast<int>(n2)
               + a2.ts.succ(s % n2, c);
      };
      auto info = scc_decomposition(n, [&](int s, std::vector<int>& o) {
        if (!inside(s))
          return;
        for (unsigned c = 0; c < k; ++c)
          if (inside(succ(s, c)))
            o.push_back(succ(s, c));
      });
      // SCCs come sinks first, so one pass in index order propagates
      std::vector<char> good(n, 0);
      std::vector<char> comp_good(info.count(), 0);
      for (unsigned ci = 0; ci < info.count(); ++ci)
        {
          bool g = info.nontrivial[ci];
          for (int s: info.members[ci])
            {
              if (!inside(s))
                continue;
              for (unsigned c = 0; c < k && !g; ++c)
                {
                  int r = succ(s, c);
                  if (inside(r) && info.comp[r] != static_cast<int>(ci)
                      && comp_good[info.comp[r]])
                    g = true;
                }
            }
          comp_good[ci] = g && inside(info.members[ci][0]);
          for (int s: info.members[ci])
            good[s] = comp_good[ci];
        }
      return good;
    }

    // pairs from which a common word leads into F1 x F2
    std::vector<char> backward_conflicts(const dfa& a1, const dfa& a2)
    {
      unsigned n2 = a2.size(), k = a1.ts.sigma().size();
      unsigned n = a1.size() * n2;
      std::vector<std::vector<int>> pred(n);
      for (unsigned s = 0; s < n; ++s)
        for (unsigned c = 0; c < k; ++c)
          pred[a1.ts.succ(s / n2, c) * n2 + a2.ts.succ(s % n2, c)]
              .push_back(s);
      std::vector<char> good(n, 0);
      std::deque<int> todo;
      for (unsigned s = 0; s < n; ++s)
        if (a1.final[s / n2] && a2.final[s % n2])
          {
            good[s] = 1;
            todo.push_back(s);
          }
      while (!todo.empty())
        {
          int s = todo.front();
          todo.pop_front();
          for (int p: pred[s])
            if (!good[p])
              {
                good[p] = 1;
                todo.push_back(p);
              }
        }
      return good;
    }

    // calls f(q, p) once for every pair reachable in t x d until f returns
    // false; returns whether the walk completed
    template <typename F>
    bool walk_pairs(const partial_ts& t, const dfa& d, F f)
    {
      std::vector<char> seen(static_cast<std::size_t>(t.size()) * d.size(),
                             0);
      auto at = [&](int q, int p) -> char& {
        return seen[static_cast<std::size_t>(q) * d.size() + p];
      };
      std::vector<std::pair<int, int>> todo{{t.initial(), d.ts.initial()}};
      at(t.initial(), d.ts.initial()) = 1;
      while (!todo.empty())
        {
          auto [q, p] = todo.back();
          todo.pop_back();
          if (!f(q, p))
            return false;
          for (unsigned c = 0; c < t.sigma().size(); ++c)
            {
              int r = t.succ(q, c);
              if (r < 0)
                continue;
              int s = d.ts.succ(p, c);
              if (!at(r, s))
                {
                  at(r, s) = 1;
                  todo.emplace_back(r, s);
                }
            }
        }
      return true;
    }
  }

  const std::vector<std::vector<std::uint64_t>>&
  conflict_setup::conflict_rows() const
  {
    if (rows_built)
      return rows_cache;
    rows_cache.assign(a1.size(), {});
    std::size_t words = (a2.size() + 63) / 64;
    for (unsigned q1 = 0; q1 < a1.size(); ++q1)
      for (unsigned q2 = 0; q2 < a2.size(); ++q2)
        if (conflict(q1, q2))
          {
            auto& row = rows_cache[q1];
            if (row.empty())
              row.assign(words, 0);
            row[q2 / 64] |= std::uint64_t(1) << (q2 % 64);
          }
    rows_built = true;
    return rows_cache;
  }

  conflict_setup mn_setup(const omega_sample& s)
  {
    conflict_setup cs;
    cs.a1 = prefix_acceptor(s.sigma(), s.positives());
    cs.a2 = prefix_acceptor(s.sigma(), s.negatives());
    cs.conflicts = infinite_conflicts(cs.a1, cs.a2);
    return cs;
  }

  bool check_consistent(const partial_ts& t, const conflict_setup& setup)
  {
    const auto& rows = setup.conflict_rows();
    if (std::all_of(rows.begin(), rows.end(),
                    [](auto& r) { return r.empty(); }))
      return true;
    std::size_t words = (setup.a2.size() + 63) / 64;
    // states of a2 met together with each state of t
    std::vector<std::uint64_t> met(t.size() * words, 0);
    walk_pairs(t, setup.a2, [&](int q, int p) {
      met[q * words + p / 64] |= std::uint64_t(1) << (p % 64);
      return true;
    });
    return walk_pairs(t, setup.a1, [&](int q, int p) {
      const auto& row = rows[p];
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] & met[q * words + i])
          return false;
      return true;
    });
  }

  bool check_mn_consistent(const partial_ts& t, const omega_sample& s)
  {
    return check_consistent(t, mn_setup(s));
  }

  std::set<std::string> periodic_roots(const omega_sample& s, bool positive)
  {
    std::set<std::string> out;
    for (auto& w: s.words(positive))
      if (w.purely_periodic())
        out.insert(w.period());
    return out;
  }

  namespace
  {
    // words y^n (n >= 1) for the roots y, intersected with E_c
    dfa iteration_acceptor(const alphabet& sigma,
                           const std::set<std::string>& roots,
                           const right_congruence& rc, int c)
    {
      std::vector<upword> words;
      for (auto& y: roots)
        words.emplace_back("", y);
      auto tree = build_prefix_tree(sigma, words, 1);
      int sink = complete_with_sink(tree.ts);
      std::vector<bool> power(tree.ts.size(), false);
      for (int q = 0; q < sink; ++q)
        {
          const std::string& p = tree.label[q];
          if (p.empty())
            continue;
          for (auto& y: roots)
            if (p.size() % y.size() == 0 && is_prefix_of(p, upword("", y)))
              power[q] = true;
        }
      // product with the class DFA of c
      unsigned m = rc.size();
      partial_ts ts(sigma, tree.ts.size() * m,
                    tree.ts.initial() * static_cast<int>(m) + c);
      std::vector<bool> fin(ts.size(), false);
      for (unsigned q = 0; q < tree.ts.size(); ++q)
        for (unsigned r = 0; r < m; ++r)
          {
            int s = q * m + r;
            fin[s] = power[q] && static_cast<int>(r) == c;
            for (unsigned a = 0; a < sigma.size(); ++a)
              ts.set_succ(s, a,
                          tree.ts.succ(q, a) * m + rc.ts().succ(r, a));
          }
      return dfa_minimize(dfa{ts, fin});
    }
  }

  conflict_setup iteration_setup(const omega_sample& s,
                                 const right_congruence& rc, int c,
                                 bool check_mn)
  {
    if (check_mn && !check_mn_consistent(rc.ts(), s))
      throw mn_precondition("leading congruence is not MN-consistent");
    conflict_setup cs;
    cs.a1 = iteration_acceptor(s.sigma(), periodic_roots(s, true), rc, c);
    cs.a2 = iteration_acceptor(s.sigma(), periodic_roots(s, false), rc, c);
    cs.conflicts = backward_conflicts(cs.a1, cs.a2);
    return cs;
  }

  bool check_iteration_consistent(const partial_ts& t, const omega_sample& s,
                                  const right_congruence& rc, int c)
  {
    return check_consistent(t, iteration_setup(s, rc, c));
  }

  bool check_scc_purity(const partial_ts& t, const std::vector<upword>& pos,
                        const std::vector<upword>& neg)
  {
    auto info = sccs(t);
    std::vector<char> mark(info.count(), 0);
    for (auto& w: pos)
      if (auto inf = infinity_set(t, w))
        for (int q: *inf)
          mark[info.comp[q]] |= 1;
    for (auto& w: neg)
      if (auto inf = infinity_set(t, w))
        for (int q: *inf)
          if (mark[info.comp[q]] & 1)
            return false;
    return true;
  }
}
