#include <dpainf/congruence.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace dpainf
{
  partial_ts::partial_ts(alphabet sigma, unsigned states, int initial)
    : sigma_(std::move(sigma)), n_(states),
      k_(static_cast<unsigned>(sigma_.size())), init_(initial),
      delta_(static_cast<std::size_t>(states) * k_, -1)
  {
  }

  int partial_ts::add_state()
  {
    delta_.resize(delta_.size() + k_, -1);
    return static_cast<int>(n_++);
  }

  bool partial_ts::complete() const
  {
    return std::find(delta_.begin(), delta_.end(), -1) == delta_.end();
  }

  std::optional<int> run(const partial_ts& ts, int from, const std::string& x)
  {
    int q = from;
    for (char c: x)
      {
        q = ts.succ(q, c);
        if (q < 0)
          return std::nullopt;
      }
    return q;
  }

  scc_info scc_decomposition(
      unsigned n, const std::function<void(int, std::vector<int>&)>& succs)
  {
    scc_info res;
    res.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> adj(n);
    for (unsigned q = 0; q < n; ++q)
      succs(static_cast<int>(q), adj[q]);
    int counter = 0;
    // iterative Tarjan: frames of (state, next edge position)
    std::vector<std::pair<int, std::size_t>> frames;
    for (unsigned root = 0; root < n; ++root)
      {
        if (index[root] >= 0)
          continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty())
          {
            auto& [q, pos] = frames.back();
            if (pos < adj[q].size())
              {
                int r = adj[q][pos++];
                if (index[r] < 0)
                  {
                    index[r] = low[r] = counter++;
                    stack.push_back(r);
                    on_stack[r] = true;
                    frames.emplace_back(r, 0);
                  }
                else if (on_stack[r])
                  low[q] = std::min(low[q], index[r]);
                continue;
              }
            int done = q;
            frames.pop_back();
            if (!frames.empty())
              {
                int parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
              }
            if (low[done] != index[done])
              continue;
            int id = static_cast<int>(res.members.size());
            res.members.emplace_back();
            int r;
            do
              {
                r = stack.back();
                stack.pop_back();
                on_stack[r] = false;
                res.comp[r] = id;
                res.members.back().push_back(r);
              }
            while (r != done);
            std::sort(res.members.back().begin(), res.members.back().end());
          }
      }
    res.nontrivial.assign(res.members.size(), false);
    for (unsigned q = 0; q < n; ++q)
      for (int r: adj[q])
        if (res.comp[q] == res.comp[r])
          res.nontrivial[res.comp[q]] = true;
    return res;
  }

  scc_info sccs(const partial_ts& ts)
  {
    return scc_decomposition(ts.size(), [&](int q, std::vector<int>& out) {
      for (unsigned a = 0; a < ts.sigma().size(); ++a)
        if (int r = ts.succ(q, a); r >= 0)
          out.push_back(r);
    });
  }

  std::optional<std::vector<int>>
  infinity_set(const partial_ts& ts, const upword& w, int from)
  {
    auto q0 = run(ts, from, w.spine());
    if (!q0)
      return std::nullopt;
    // state at the start of each period iteration
    std::map<int, std::size_t> seen;
    std::vector<int> starts;
    int q = *q0;
    while (!seen.count(q))
      {
        seen[q] = starts.size();
        starts.push_back(q);
        auto r = run(ts, q, w.period());
        if (!r)
          return std::nullopt;
        q = *r;
      }
    std::vector<int> out;
    for (std::size_t i = seen[q]; i < starts.size(); ++i)
      {
        int p = starts[i];
        for (char c: w.period())
          {
            out.push_back(p);
            p = ts.succ(p, c);
          }
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::optional<std::vector<int>> infinity_set(const partial_ts& ts,
                                               const upword& w)
  {
    return infinity_set(ts, w, ts.initial());
  }

  std::vector<std::optional<std::string>> access_words(const partial_ts& ts)
  {
    std::vector<std::optional<std::string>> acc(ts.size());
    std::deque<int> todo{ts.initial()};
    acc[ts.initial()] = std::string();
    while (!todo.empty())
      {
        int q = todo.front();
        todo.pop_front();
        for (unsigned a = 0; a < ts.sigma().size(); ++a)
          {
            int r = ts.succ(q, a);
            if (r < 0 || acc[r])
              continue;
            acc[r] = *acc[q] + ts.sigma().symbol(a);
            todo.push_back(r);
          }
      }
    return acc;
  }

  right_congruence::right_congruence(const partial_ts& ts)
  {
    // BFS in symbol order visits states in llex order of their reps
    std::vector<int> order;
    std::vector<int> renum(ts.size(), -1);
    std::deque<int> todo{ts.initial()};
    renum[ts.initial()] = 0;
    order.push_back(ts.initial());
    reps_.emplace_back();
    while (!todo.empty())
      {
        int q = todo.front();
        todo.pop_front();
        for (unsigned a = 0; a < ts.sigma().size(); ++a)
          {
            int r = ts.succ(q, a);
            if (r < 0)
              throw std::invalid_argument("right congruence needs a "
                                          "complete transition system");
            if (renum[r] >= 0)
              continue;
            renum[r] = static_cast<int>(order.size());
            order.push_back(r);
            reps_.push_back(reps_[renum[q]] + ts.sigma().symbol(a));
            todo.push_back(r);
          }
      }
    ts_ = partial_ts(ts.sigma(), order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (unsigned a = 0; a < ts.sigma().size(); ++a)
        ts_.set_succ(static_cast<int>(i), a, renum[ts.succ(order[i], a)]);
  }

  int right_congruence::run(int q, const std::string& x) const
  {
    for (char c: x)
      q = ts_.succ(q, c);
    return q;
  }

  bool loops_on(const right_congruence& rc, int c, const std::string& x)
  {
    if (x.empty())
      throw std::invalid_argument("loops_on needs a non-empty word");
    return rc.run(c, x) == c;
  }

  prefix_tree build_prefix_tree(const alphabet& sigma,
                                const std::vector<upword>& words,
                                std::size_t min_loop)
  {
    prefix_tree t;
    t.ts = partial_ts(sigma, 1, 0);
    t.label.emplace_back();
    unsigned k = sigma.size();
    t.origin_word.assign(k, -1);
    t.origin_pos.assign(k, 0);
    std::map<std::string, int> node{{"", 0}};
    auto get = [&](const std::string& p) {
      auto [it, fresh] = node.emplace(p, 0);
      if (fresh)
        {
          it->second = t.ts.add_state();
          t.label.push_back(p);
          t.origin_word.resize(t.origin_word.size() + k, -1);
          t.origin_pos.resize(t.origin_pos.size() + k, 0);
        }
      return it->second;
    };
    for (std::size_t wi = 0; wi < words.size(); ++wi)
      {
        const upword& w = words[wi];
        // shortest prefix length that no other word shares
        std::size_t unique = 0;
        for (std::size_t wj = 0; wj < words.size(); ++wj)
          {
            if (wj == wi)
              continue;
            std::size_t common = 0;
            std::size_t cap = 2 * (w.length() + words[wj].length()) + 1;
            while (common < cap && w.at(common) == words[wj].at(common))
              ++common;
            if (common >= cap)
              throw std::invalid_argument("duplicate word " + w.str());
            unique = std::max(unique, common + 1);
          }
        std::size_t loop_at =
            std::max({unique, w.spine().size(), min_loop});
        std::size_t end = loop_at + w.period().size();
        std::string p;
        int q = 0;
        for (std::size_t i = 0; i < end; ++i)
          {
            char c = w.at(i);
            p.push_back(c);
            int r = i + 1 < end ? get(p) : get(upword_prefix(w, loop_at));
            unsigned a = sigma.index(c);
            t.ts.set_succ(q, a, r);
            t.origin_word[q * k + a] = static_cast<int>(wi);
            t.origin_pos[q * k + a] = i;
            q = r;
          }
      }
    return t;
  }

  int complete_with_sink(partial_ts& ts)
  {
    int sink = ts.add_state();
    for (unsigned q = 0; q < ts.size(); ++q)
      for (unsigned a = 0; a < ts.sigma().size(); ++a)
        if (ts.succ(q, a) < 0)
          ts.set_succ(q, a, sink);
    return sink;
  }

  right_congruence default_ts(const omega_sample& s, std::size_t min_loop)
  {
    if (s.empty() && min_loop == 0)
      {
        partial_ts ts(s.sigma(), 1, 0);
        for (unsigned a = 0; a < s.sigma().size(); ++a)
          ts.set_succ(0, a, 0);
        return right_congruence(ts);
      }
    auto tree = build_prefix_tree(s.sigma(), s.all(), min_loop);
    complete_with_sink(tree.ts);
    return right_congruence(tree.ts);
  }

  partial_ts product_ts(const partial_ts& a, const partial_ts& b, int b_from)
  {
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> states;
    partial_ts out(a.sigma(), 0, 0);
    auto get = [&](int p, int q) {
      auto [it, fresh] = id.emplace(std::make_pair(p, q), 0);
      if (fresh)
        {
          it->second = out.add_state();
          states.emplace_back(p, q);
        }
      return it->second;
    };
    get(a.initial(), b_from);
    for (std::size_t i = 0; i < states.size(); ++i)
      for (unsigned c = 0; c < a.sigma().size(); ++c)
        {
          auto [p, q] = states[i];
          int r = get(a.succ(p, c), b.succ(q, c));
          out.set_succ(static_cast<int>(i), c, r);
        }
    return out;
  }
}
