#include <dpainf/dpainf.hh>

#include <deque>
#include <map>
#include <numeric>
#include <tuple>

namespace dpainf
{
  namespace
  {
    int priority_at(const priority_word& p, std::size_t i)
    {
      if (i < p.prefix.size())
        return p.prefix[i];
      return p.cycle[(i - p.prefix.size()) % p.cycle.size()];
    }

    std::size_t common_prefix(const upword& x, const upword& y)
    {
      // equal beyond this point means equal words
      std::size_t bound = std::max(x.spine().size(), y.spine().size())
                          + std::lcm(x.period().size(), y.period().size());
      std::size_t i = 0;
      while (i < bound && x.at(i) == y.at(i))
        ++i;
      return i;
    }
  }

  colored_sample color_sample(const fwpm_family& f, const omega_sample& s)
  {
    join_tracker jt(f);
    colored_sample cs;
    for (auto& w: s.all())
      cs.push_back({w, jt.run(w)});
    return cs;
  }

  dpa prefix_dpa(const colored_sample& cs, const omega_sample& s)
  {
    const alphabet& sigma = s.sigma();
    std::map<std::string, int> node{{"", 0}};
    auto id = [&](const std::string& x) {
      return node.emplace(x, static_cast<int>(node.size())).first->second;
    };
    // (node, symbol) -> (target, priority)
    std::map<std::pair<int, unsigned>, std::pair<int, int>> edges;
    for (std::size_t i = 0; i < cs.size(); ++i)
      {
        const upword& w = cs[i].word;
        const priority_word& p = cs[i].priorities;
        std::size_t unique = 0;
        for (std::size_t j = 0; j < cs.size(); ++j)
          if (j != i)
            unique = std::max(unique, common_prefix(w, cs[j].word) + 1);
        std::size_t loop_at = std::max({unique, w.spine().size(),
                                        p.prefix.size()});
        std::size_t len = loop_at
                          + std::lcm(w.period().size(), p.cycle.size());
        std::string x;
        for (std::size_t t = 0; t < len; ++t)
          {
            int from = id(x);
            char a = w.at(t);
            x += a;
            int to = t + 1 < len ? id(x) : id(x.substr(0, loop_at));
            auto e = std::make_pair(to, priority_at(p, t));
            auto key = std::make_pair(from,
                                      static_cast<unsigned>(sigma.index(a)));
            auto [it, fresh] = edges.emplace(key, e);
            if (!fresh && it->second != e)
              throw std::logic_error("colored sample disagrees on prefix "
                                     + x);
          }
      }
    int sink = static_cast<int>(node.size());
    dpa b(sigma, sink + 1, 0);
    for (int q = 0; q <= sink; ++q)
      for (unsigned a = 0; a < sigma.size(); ++a)
        {
          auto it = edges.find({q, a});
          if (it == edges.end())
            b.set(q, a, sink, 0);
          else
            b.set(q, a, it->second.first, it->second.second);
        }
    return b;
  }

  dpa fallback_dpa(const omega_sample& s, const right_congruence& rc)
  {
    const alphabet& sigma = s.sigma();
    std::vector<prefix_tree> trees;
    for (unsigned c = 0; c < rc.size(); ++c)
      {
        auto r = looping_periodics(s, rc, static_cast<int>(c), false);
        trees.push_back(build_prefix_tree(
            sigma, std::vector<upword>(r.begin(), r.end())));
      }
    // (leading class, tracked class, tree node); node -1 means idle
    using key = std::tuple<int, int, int>;
    std::map<key, int> id;
    std::vector<key> states{{0, -1, -1}};
    id.emplace(states[0], 0);
    mealy_machine m(sigma, 1, 0);
    for (std::size_t i = 0; i < states.size(); ++i)
      for (unsigned a = 0; a < sigma.size(); ++a)
        {
          auto [l, c, n] = states[i];
          int l2 = rc.ts().succ(l, a);
          key next;
          int out;
          int follow = n >= 0 ? trees[c].ts.succ(n, a) : -1;
          int start = trees[l].ts.succ(0, a);
          if (follow >= 0)
            {
              next = {l2, c, follow};
              out = 1;
            }
          else if (start >= 0)
            {
              next = {l2, l, start};
              // a broken track always emits 0
              out = n >= 0 ? 0 : 1;
            }
          else
            {
              next = {l2, -1, -1};
              out = 0;
            }
          auto [it, fresh] = id.emplace(next, states.size());
          if (fresh)
            {
              states.push_back(next);
              m.add_state();
            }
          m.set(static_cast<int>(i), a, it->second, out);
        }
    return mealy_minimize(m);
  }

  bool dpa_consistent_with_sample(const dpa& a, const omega_sample& s)
  {
    for (auto& w: s.positives())
      if (!dpa_membership(a, w))
        return false;
    for (auto& w: s.negatives())
      if (dpa_membership(a, w))
        return false;
    return true;
  }

  std::optional<std::string> step4_counterexample(const dpa& b,
                                                  const mealy_machine& h,
                                                  const omega_sample& s)
  {
    const alphabet& sigma = s.sigma();
    std::set<upword> words(s.positives());
    words.insert(s.negatives().begin(), s.negatives().end());
    dfa pa = prefix_acceptor(sigma, words);
    using key = std::tuple<int, int, int>;
    std::set<key> seen;
    std::deque<std::pair<key, std::string>> queue;
    key init{b.initial(), h.initial(), pa.ts.initial()};
    seen.insert(init);
    queue.emplace_back(init, "");
    while (!queue.empty())
      {
        auto [k, x] = queue.front();
        queue.pop_front();
        auto [qb, qh, qp] = k;
        for (unsigned a = 0; a < sigma.size(); ++a)
          {
            int p2 = pa.ts.succ(qp, a);
            if (!pa.final[p2])
              continue;
            std::string y = x + sigma.symbol(a);
            if (b.out(qb, a) != h.out(qh, a))
              return y;
            key k2{b.succ(qb, a), h.succ(qh, a), p2};
            if (seen.insert(k2).second)
              queue.emplace_back(k2, y);
          }
      }
    return std::nullopt;
  }

  dpainf_result infer_dpa(const omega_sample& s, const dpainf_options& opts)
  {
    dpainf_result res;
    learn_report& rep = res.report;

    forc_stats st;
    forc f = learn_forc(s, &st, opts.leading_trace, opts.progress);
    rep.leading_size = f.leading.size();
    for (auto& p: f.progress)
      rep.progress_sizes.push_back(p.size());
    rep.forc_size = f.size();
    rep.cons_calls = st.cons_calls;
    rep.leading_escaped = st.leading_escaped;
    for (bool e: st.progress_escaped)
      rep.escaped_progress += e;

    std::optional<dpa> b;
    try
      {
        res.forc = color_forc(f, s);
        rep.coloring_rounds = res.forc.rounds;
        colored_sample cs = color_sample(mealy_family(res.forc), s);
        b = prefix_dpa(cs, s);
      }
    catch (const purity_violation&)
      {
        rep.purity_anomaly = true;
        res.forc = colored_forc{f, {}, 0};
      }
    if (!b || !dpa_consistent_with_sample(*b, s))
      {
        b = fallback_dpa(s, f.leading);
        rep.fallback = true;
      }
    rep.b_size = b->size();

    const dpa& bb = *b;
    teacher t;
    t.output = [&](const std::string& u) {
      if (opts.on_output_query)
        opts.on_output_query(u);
      return bb.output(u);
    };
    t.equivalence = [&](const mealy_machine& h) -> std::optional<std::string> {
      if (dpa_consistent_with_sample(h, s))
        return std::nullopt;
      auto x = step4_counterexample(bb, h, s);
      if (!x)
        throw std::logic_error("hypothesis inconsistent with the sample "
                               "but equal to B on its prefixes");
      return x;
    };
    mealy_learn_stats ms;
    res.automaton = learn_mealy(t, s.sigma(), &ms);
    rep.output_queries = ms.output_queries;
    rep.equivalence_queries = ms.equivalence_queries;
    rep.hypothesis_sizes = ms.hypothesis_sizes;
    rep.final_size = res.automaton.size();
    return res;
  }
}
