#include <dpainf/automata.hh>

#include <algorithm>
#include <deque>
#include <map>

namespace dpainf
{
  bool dfa::accepts_from(int q, const std::string& x) const
  {
    for (char c: x)
      q = ts.succ(q, c);
    return final[q];
  }

  bool dfa::accepts(const std::string& x) const
  {
    return accepts_from(ts.initial(), x);
  }

  priority_machine::priority_machine(alphabet sigma, unsigned states,
                                     int initial)
    : ts_(std::move(sigma), states, initial),
      out_(static_cast<std::size_t>(states) * ts_.sigma().size(), 0)
  {
  }

  priority_machine::priority_machine(partial_ts ts)
    : ts_(std::move(ts)),
      out_(static_cast<std::size_t>(ts_.size()) * ts_.sigma().size(), 0)
  {
  }

  void priority_machine::set(int q, unsigned a, int target, int priority)
  {
    ts_.set_succ(q, a, target);
    out_[q * sigma().size() + a] = priority;
  }

  int priority_machine::add_state()
  {
    out_.resize(out_.size() + sigma().size(), 0);
    return ts_.add_state();
  }

  unsigned priority_machine::priorities() const
  {
    if (out_.empty())
      return 0;
    return static_cast<unsigned>(*std::max_element(out_.begin(), out_.end()))
           + 1;
  }

  int priority_machine::run(int q, const std::string& x) const
  {
    for (char c: x)
      q = succ(q, c);
    return q;
  }

  int priority_machine::output(const std::string& u) const
  {
    if (u.empty())
      throw std::invalid_argument("output of the empty word");
    int q = run(initial(), u.substr(0, u.size() - 1));
    return out(q, u.back());
  }

  bool dpa_membership_from(const dpa& a, int q, const upword& w)
  {
    q = a.run(q, w.spine());
    std::map<int, std::size_t> seen;
    std::vector<int> starts;
    while (!seen.count(q))
      {
        seen[q] = starts.size();
        starts.push_back(q);
        q = a.run(q, w.period());
      }
    int least = -1;
    for (std::size_t i = seen[q]; i < starts.size(); ++i)
      {
        int m = min_priority_on_path(a, starts[i], w.period());
        if (least < 0 || m < least)
          least = m;
      }
    return least % 2 == 0;
  }

  bool dpa_membership(const dpa& a, const upword& w)
  {
    return dpa_membership_from(a, a.initial(), w);
  }

  int min_priority_on_path(const dpa& a, int q, const std::string& u)
  {
    if (u.empty())
      throw std::invalid_argument("min_priority_on_path needs a non-empty "
                                  "word");
    int least = a.out(q, u[0]);
    for (char c: u)
      {
        least = std::min(least, a.out(q, c));
        q = a.succ(q, c);
      }
    return least;
  }

  dpa dpa_complement(const dpa& a)
  {
    dpa r = a;
    for (unsigned q = 0; q < a.size(); ++q)
      for (unsigned c = 0; c < a.sigma().size(); ++c)
        r.set(q, c, a.succ(q, c), a.out(q, c) + 1);
    return compact_priorities(r);
  }

  priority_machine compact_priorities(const priority_machine& a)
  {
    std::vector<int> used;
    for (unsigned q = 0; q < a.size(); ++q)
      for (unsigned c = 0; c < a.sigma().size(); ++c)
        used.push_back(a.out(q, c));
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::map<int, int> to;
    int last_old = -1, last_new = -1;
    for (int p: used)
      {
        int v;
        if (last_old < 0)
          v = p % 2;
        else if ((p - last_old) % 2)
          v = last_new + 1;
        else
          v = last_new + 2;
        to[p] = v;
        last_old = p;
        last_new = v;
      }
    priority_machine r = a;
    for (unsigned q = 0; q < a.size(); ++q)
      for (unsigned c = 0; c < a.sigma().size(); ++c)
        r.set(q, c, a.succ(q, c), to[a.out(q, c)]);
    return r;
  }

  namespace
  {
    // BFS path inside the edges accepted by ok; empty if from == to
    std::optional<std::string>
    bfs_path(const partial_ts& g, int from, int to,
             const std::function<bool(int, unsigned)>& ok)
    {
      std::vector<int> pred(g.size(), -2);
      std::vector<unsigned> via(g.size(), 0);
      std::deque<int> todo{from};
      pred[from] = -1;
      while (!todo.empty() && pred[to] == -2)
        {
          int q = todo.front();
          todo.pop_front();
          for (unsigned a = 0; a < g.sigma().size(); ++a)
            {
              int r = g.succ(q, a);
              if (r < 0 || pred[r] != -2 || !ok(q, a))
                continue;
              pred[r] = q;
              via[r] = a;
              todo.push_back(r);
            }
        }
      if (pred[to] == -2)
        return std::nullopt;
      std::string path;
      for (int q = to; q != from; q = pred[q])
        path.push_back(g.sigma().symbol(via[q]));
      std::reverse(path.begin(), path.end());
      return path;
    }
  }

  std::optional<upword> find_lasso(
      const partial_ts& g,
      const std::function<bool(int, unsigned)>& allowed,
      const std::vector<std::function<bool(int, unsigned)>>& required)
  {
    if (required.empty())
      throw std::invalid_argument("find_lasso needs a required edge");
    unsigned k = g.sigma().size();
    std::vector<bool> reach(g.size(), false);
    std::deque<int> todo{g.initial()};
    reach[g.initial()] = true;
    while (!todo.empty())
      {
        int q = todo.front();
        todo.pop_front();
        for (unsigned a = 0; a < k; ++a)
          if (int r = g.succ(q, a); r >= 0 && !reach[r])
            {
              reach[r] = true;
              todo.push_back(r);
            }
      }
    auto edge_ok = [&](int q, unsigned a) {
      int r = g.succ(q, a);
      return r >= 0 && reach[q] && allowed(q, a);
    };
    auto info = scc_decomposition(g.size(), [&](int q, std::vector<int>& o) {
      for (unsigned a = 0; a < k; ++a)
        if (edge_ok(q, a))
          o.push_back(g.succ(q, a));
    });
    // visit SCCs ordered by their least member for determinism
    std::vector<unsigned> order(info.count());
    for (unsigned i = 0; i < order.size(); ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(), [&](unsigned x, unsigned y) {
      return info.members[x][0] < info.members[y][0];
    });
    for (unsigned ci: order)
      {
        if (!info.nontrivial[ci] || !reach[info.members[ci][0]])
          continue;
        auto internal = [&](int q, unsigned a) {
          return edge_ok(q, a) && info.comp[q] == static_cast<int>(ci)
                 && info.comp[g.succ(q, a)] == static_cast<int>(ci);
        };
        std::vector<std::pair<int, unsigned>> picks;
        for (auto& pred: required)
          {
            bool found = false;
            for (int q: info.members[ci])
              {
                for (unsigned a = 0; a < k && !found; ++a)
                  if (internal(q, a) && pred(q, a))
                    {
                      picks.emplace_back(q, a);
                      found = true;
                    }
                if (found)
                  break;
              }
            if (!found)
              break;
          }
        if (picks.size() != required.size())
          continue;
        auto any = [](int, unsigned) { return true; };
        std::string u = *bfs_path(g, g.initial(), picks[0].first, any);
        std::string v;
        int cur = picks[0].first;
        for (std::size_t i = 0; i <= picks.size(); ++i)
          {
            int goal = i < picks.size() ? picks[i].first : picks[0].first;
            v += *bfs_path(g, cur, goal, internal);
            cur = goal;
            if (i < picks.size())
              {
                v.push_back(g.sigma().symbol(picks[i].second));
                cur = g.succ(cur, picks[i].second);
              }
          }
        return upword(u, v);
      }
    return std::nullopt;
  }

  std::optional<upword> dpa_nonempty_witness(const dpa& a)
  {
    for (unsigned i = 0; i < a.priorities(); i += 2)
      {
        int p = static_cast<int>(i);
        auto w = find_lasso(
            a.ts(), [&](int q, unsigned c) { return a.out(q, c) >= p; },
            {[&](int q, unsigned c) { return a.out(q, c) == p; }});
        if (w)
          return w;
      }
    return std::nullopt;
  }

  namespace
  {
    struct product
    {
      partial_ts ts;
      std::vector<std::pair<int, int>> states;
    };

    product make_product(const dpa& a, const dpa& b)
    {
      product p;
      p.ts = partial_ts(a.sigma(), 0, 0);
      std::map<std::pair<int, int>, int> id;
      auto get = [&](int x, int y) {
        auto [it, fresh] = id.emplace(std::make_pair(x, y), 0);
        if (fresh)
          {
            it->second = p.ts.add_state();
            p.states.emplace_back(x, y);
          }
        return it->second;
      };
      get(a.initial(), b.initial());
      for (std::size_t i = 0; i < p.states.size(); ++i)
        for (unsigned c = 0; c < a.sigma().size(); ++c)
          {
            auto [x, y] = p.states[i];
            p.ts.set_succ(static_cast<int>(i), c,
                          get(a.succ(x, c), b.succ(y, c)));
          }
      return p;
    }

    // a in L(A) \ L(B) on the product, if any
    std::optional<upword> difference(const product& p, const dpa& a,
                                     const dpa& b, bool swap)
    {
      auto ka = [&](int s, unsigned c) {
        auto [x, y] = p.states[s];
        return swap ? b.out(y, c) : a.out(x, c);
      };
      auto kb = [&](int s, unsigned c) {
        auto [x, y] = p.states[s];
        return swap ? a.out(x, c) : b.out(y, c);
      };
      int na = static_cast<int>(swap ? b.priorities() : a.priorities());
      int nb = static_cast<int>(swap ? a.priorities() : b.priorities());
      for (int i = 0; i < na; i += 2)
        for (int j = 1; j < nb; j += 2)
          {
            auto w = find_lasso(
                p.ts,
                [&](int s, unsigned c) {
                  return ka(s, c) >= i && kb(s, c) >= j;
                },
                {[&](int s, unsigned c) { return ka(s, c) == i; },
                 [&](int s, unsigned c) { return kb(s, c) == j; }});
            if (w)
              return w;
          }
      return std::nullopt;
    }

    constexpr std::size_t minimize_budget = 1 << 17;

    // least differing canonical upword of length at most |w0|
    upword minimize_witness(const dpa& a, const dpa& b, const upword& w0)
    {
      const alphabet& sigma = a.sigma();
      std::size_t budget = minimize_budget;
      std::size_t k = sigma.size();
      for (std::size_t n = 1; n <= w0.length(); ++n)
        for (std::size_t lu = 0; lu < n; ++lu)
          {
            std::vector<std::size_t> digits(n, 0);
            while (true)
              {
                if (budget-- == 0)
                  return w0;
                std::string u, v;
                for (std::size_t i = 0; i < lu; ++i)
                  u.push_back(sigma.symbol(digits[i]));
                for (std::size_t i = lu; i < n; ++i)
                  v.push_back(sigma.symbol(digits[i]));
                upword w(u, v);
                if (w.spine() == u && w.period() == v
                    && dpa_membership(a, w) != dpa_membership(b, w))
                  return w;
                // llex successor of spine then period
                std::size_t i = n;
                while (i > 0 && digits[i - 1] == k - 1)
                  digits[--i] = 0;
                if (i == 0)
                  break;
                ++digits[i - 1];
              }
          }
      return w0;
    }
  }

  std::optional<upword> dpa_equivalent(const dpa& a, const dpa& b,
                                       bool least)
  {
    if (!(a.sigma() == b.sigma()))
      throw std::invalid_argument("alphabets differ");
    product p = make_product(a, b);
    auto w = difference(p, a, b, false);
    if (!w)
      w = difference(p, a, b, true);
    if (!w || !least)
      return w;
    return minimize_witness(a, b, *w);
  }

  namespace
  {
    struct normalizer
    {
      const dpa& a;
      unsigned k;
      std::vector<int> result;

      // edges are indices q*k+c
      void process(const std::vector<int>& edges, int lb)
      {
        std::vector<std::vector<std::pair<int, int>>> adj(a.size());
        for (int e: edges)
          adj[e / k].emplace_back(a.succ(e / k, e % k), e);
        auto info = scc_decomposition(a.size(),
                                      [&](int q, std::vector<int>& o) {
                                        for (auto [r, e]: adj[q])
                                          o.push_back(r);
                                      });
        std::vector<std::vector<int>> inner(info.count());
        for (int e: edges)
          {
            int q = e / k, r = a.succ(q, e % k);
            if (info.comp[q] == info.comp[r])
              inner[info.comp[q]].push_back(e);
            else
              result[e] = lb;
          }
        for (auto& in: inner)
          {
            if (in.empty())
              continue;
            int m = a.out(in[0] / k, in[0] % k);
            for (int e: in)
              m = std::min(m, a.out(e / k, e % k));
            int v = lb % 2 == m % 2 ? lb : lb + 1;
            std::vector<int> rest;
            for (int e: in)
              if (a.out(e / k, e % k) == m)
                result[e] = v;
              else
                rest.push_back(e);
            process(rest, v);
          }
      }
    };
  }

  dpa dpa_normalize(const dpa& a)
  {
    unsigned k = a.sigma().size();
    normalizer n{a, k, std::vector<int>(a.size() * k, 0)};
    std::vector<int> all(a.size() * k);
    for (std::size_t e = 0; e < all.size(); ++e)
      all[e] = static_cast<int>(e);
    n.process(all, 0);
    dpa r = a;
    for (unsigned q = 0; q < a.size(); ++q)
      for (unsigned c = 0; c < k; ++c)
        r.set(q, c, a.succ(q, c), n.result[q * k + c]);
    return r;
  }

  priority_machine reachable_part(const priority_machine& m)
  {
    std::vector<int> order{m.initial()};
    std::vector<int> renum(m.size(), -1);
    renum[m.initial()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (unsigned c = 0; c < m.sigma().size(); ++c)
        if (int r = m.succ(order[i], c); renum[r] < 0)
          {
            renum[r] = static_cast<int>(order.size());
            order.push_back(r);
          }
    priority_machine out(m.sigma(), order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (unsigned c = 0; c < m.sigma().size(); ++c)
        out.set(static_cast<int>(i), c, renum[m.succ(order[i], c)],
                m.out(order[i], c));
    return out;
  }

  namespace
  {
    // Moore refinement; blocks are numbered by first occurrence
    std::vector<int> refine(const partial_ts& ts, std::vector<int> block)
    {
      unsigned k = ts.sigma().size();
      while (true)
        {
          std::map<std::vector<int>, int> sig;
          std::vector<int> next(ts.size());
          for (unsigned q = 0; q < ts.size(); ++q)
            {
              std::vector<int> key{block[q]};
              for (unsigned c = 0; c < k; ++c)
                key.push_back(block[ts.succ(q, c)]);
              auto [it, fresh] =
                  sig.emplace(key, static_cast<int>(sig.size()));
              next[q] = it->second;
            }
          bool same = sig.size()
                      == static_cast<std::size_t>(
                          *std::max_element(block.begin(), block.end()) + 1);
          block = std::move(next);
          if (same)
            return block;
        }
    }

    std::vector<int> number_by_key(const std::vector<std::vector<int>>& keys)
    {
      std::map<std::vector<int>, int> id;
      std::vector<int> out;
      for (auto& key: keys)
        {
          auto [it, fresh] = id.emplace(key, static_cast<int>(id.size()));
          out.push_back(it->second);
        }
      return out;
    }
  }

  mealy_machine mealy_minimize(const mealy_machine& m0)
  {
    mealy_machine m = reachable_part(m0);
    unsigned k = m.sigma().size();
    std::vector<std::vector<int>> keys(m.size());
    for (unsigned q = 0; q < m.size(); ++q)
      for (unsigned c = 0; c < k; ++c)
        keys[q].push_back(m.out(q, c));
    auto block = refine(m.ts(), number_by_key(keys));
    int nb = *std::max_element(block.begin(), block.end()) + 1;
    mealy_machine quot(m.sigma(), nb, block[m.initial()]);
    for (unsigned q = 0; q < m.size(); ++q)
      for (unsigned c = 0; c < k; ++c)
        quot.set(block[q], c, block[m.succ(q, c)], m.out(q, c));
    return reachable_part(quot);
  }

  std::optional<std::string> mealy_separating_word(const mealy_machine& m1,
                                                   const mealy_machine& m2)
  {
    if (!(m1.sigma() == m2.sigma()))
      throw std::invalid_argument("alphabets differ");
    std::map<std::pair<int, int>, std::string> seen;
    std::deque<std::pair<int, int>> todo;
    auto start = std::make_pair(m1.initial(), m2.initial());
    seen[start] = "";
    todo.push_back(start);
    while (!todo.empty())
      {
        auto [p, q] = todo.front();
        todo.pop_front();
        std::string path = seen[{p, q}];
        for (unsigned c = 0; c < m1.sigma().size(); ++c)
          {
            std::string next = path + m1.sigma().symbol(c);
            if (m1.out(p, c) != m2.out(q, c))
              return next;
            auto pair = std::make_pair(m1.succ(p, c), m2.succ(q, c));
            if (seen.emplace(pair, next).second)
              todo.push_back(pair);
          }
      }
    return std::nullopt;
  }

  bool mealy_is_weak(const mealy_machine& m0)
  {
    mealy_machine m = reachable_part(m0);
    unsigned k = m.sigma().size();
    // least output on any transition from the initial state to q; outputs
    // are weak iff every outgoing output is at most every incoming one,
    // and the least incoming output bounds all of them
    std::vector<int> in_min(m.size(), -1);
    for (unsigned q = 0; q < m.size(); ++q)
      for (unsigned c = 0; c < k; ++c)
        {
          int r = m.succ(q, c), o = m.out(q, c);
          if (in_min[r] < 0 || o < in_min[r])
            in_min[r] = o;
        }
    for (unsigned q = 0; q < m.size(); ++q)
      {
        if (in_min[q] < 0)
          continue;
        for (unsigned c = 0; c < k; ++c)
          if (m.out(q, c) > in_min[q])
            return false;
      }
    return true;
  }

  dfa dfa_minimize(const dfa& d)
  {
    unsigned k = d.ts.sigma().size();
    // reachable part first
    std::vector<int> order{d.ts.initial()};
    std::vector<int> renum(d.size(), -1);
    renum[d.ts.initial()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (unsigned c = 0; c < k; ++c)
        if (int r = d.ts.succ(order[i], c); renum[r] < 0)
          {
            renum[r] = static_cast<int>(order.size());
            order.push_back(r);
          }
    partial_ts ts(d.ts.sigma(), order.size(), 0);
    std::vector<std::vector<int>> keys(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      {
        keys[i].push_back(d.final[order[i]]);
        for (unsigned c = 0; c < k; ++c)
          ts.set_succ(static_cast<int>(i), c, renum[d.ts.succ(order[i], c)]);
      }
    auto block = refine(ts, number_by_key(keys));
    int nb = *std::max_element(block.begin(), block.end()) + 1;
    partial_ts q(d.ts.sigma(), nb, block[0]);
    std::vector<bool> fin(nb, false);
    for (unsigned s = 0; s < ts.size(); ++s)
      {
        fin[block[s]] = keys[s][0];
        for (unsigned c = 0; c < k; ++c)
          q.set_succ(block[s], c, block[ts.succ(s, c)]);
      }
    // canonical BFS numbering
    right_congruence rc(q);
    dfa out{rc.ts(), std::vector<bool>(nb, false)};
    for (int s = 0; s < nb; ++s)
      out.final[s] = fin[*run(q, q.initial(), rc.rep(s))];
    return out;
  }

  bool dfa_equivalent(const dfa& d1, const dfa& d2)
  {
    std::map<std::pair<int, int>, bool> seen;
    std::deque<std::pair<int, int>> todo{{d1.ts.initial(), d2.ts.initial()}};
    seen[todo.front()] = true;
    while (!todo.empty())
      {
        auto [p, q] = todo.front();
        todo.pop_front();
        for (unsigned c = 0; c < d1.ts.sigma().size(); ++c)
          {
            auto pair = std::make_pair(d1.ts.succ(p, c), d2.ts.succ(q, c));
            if (d1.final[pair.first] != d2.final[pair.second])
              return false;
            if (seen.emplace(pair, true).second)
              todo.push_back(pair);
          }
      }
    return true;
  }

  dfa dfa_from_mealy_threshold(const mealy_machine& m, int i)
  {
    if (!mealy_is_weak(m))
      throw not_weak("outputs increase along some path");
    unsigned k = m.sigma().size();
    partial_ts ts(m.sigma(), m.size() + 1, m.initial());
    int sink = static_cast<int>(m.size());
    for (unsigned q = 0; q < m.size(); ++q)
      for (unsigned c = 0; c < k; ++c)
        ts.set_succ(q, c, m.out(q, c) <= i ? sink : m.succ(q, c));
    for (unsigned c = 0; c < k; ++c)
      ts.set_succ(sink, c, sink);
    dfa d{ts, std::vector<bool>(m.size() + 1, false)};
    d.final[sink] = true;
    return dfa_minimize(d);
  }

  std::optional<std::string>
  dfa_accepts_prefix_of_period(const dfa& d, int q, const std::string& v)
  {
    if (v.empty())
      throw std::invalid_argument("empty period");
    std::map<std::pair<int, std::size_t>, bool> seen;
    std::string x;
    for (std::size_t i = 0;; ++i)
      {
        std::size_t pos = i % v.size();
        if (!seen.emplace(std::make_pair(q, pos), true).second)
          return std::nullopt;
        q = d.ts.succ(q, v[pos]);
        x.push_back(v[pos]);
        if (d.final[q])
          return x;
      }
  }
}
