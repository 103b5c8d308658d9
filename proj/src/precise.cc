#include <dpainf/precise.hh>

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

namespace dpainf
{
  priority_word priority_word::make(std::vector<int> r, std::vector<int> s)
  {
    auto [u, v] = canonical_lasso(std::move(r), std::move(s));
    return {std::move(u), std::move(v)};
  }

  int priority_word::eventual_min() const
  {
    return *std::min_element(cycle.begin(), cycle.end());
  }

  std::string priority_word::str() const
  {
    bool wide = false;
    for (int p: prefix)
      wide |= p > 9;
    for (int p: cycle)
      wide |= p > 9;
    auto put = [&](const std::vector<int>& xs) {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i)
        {
          if (wide && i > 0)
            out += ",";
          out += std::to_string(xs[i]);
        }
      return out;
    };
    return put(prefix) + "|" + put(cycle);
  }

  fwpm_family precise_fwpm_from_dpa(const dpa& a0,
                                    const right_congruence& leading)
  {
    dpa a = dpa_normalize(reachable_part(a0));
    int k = static_cast<int>(std::max(1u, a.priorities()));
    const alphabet& sigma = a.sigma();
    fwpm_family fam{leading, {}};
    for (unsigned c = 0; c < leading.size(); ++c)
      {
        std::vector<int> qc = class_states(a, leading, c);
        // (τ, μ) flattened
        using node = std::vector<int>;
        node start;
        for (int q: qc)
          {
            start.push_back(q);
            start.push_back(k - 1);
          }
        std::map<node, int> id{{start, 0}};
        std::vector<node> nodes{start};
        mealy_machine m(sigma, 1, 0);
        for (std::size_t i = 0; i < nodes.size(); ++i)
          for (unsigned s = 0; s < sigma.size(); ++s)
            {
              node n = nodes[i];
              int out = 0;
              for (std::size_t j = 0; j < n.size(); j += 2)
                {
                  int q = n[j];
                  n[j] = a.succ(q, s);
                  n[j + 1] = std::min(n[j + 1], a.out(q, s));
                  out = std::max(out, n[j + 1]);
                }
              auto [it, fresh] = id.emplace(n, nodes.size());
              if (fresh)
                {
                  nodes.push_back(n);
                  m.add_state();
                }
              m.set(static_cast<int>(i), s, it->second, out);
            }
        fam.machines.push_back(mealy_minimize(m));
      }
    return fam;
  }

  std::vector<int> join_reference_all(const fwpm_family& f,
                                      const std::string& u)
  {
    std::size_t n = u.size();
    // gamma[j][i]: output of the machine of [u_0..u_{j-1}] on u_j..u_i
    std::vector<std::vector<int>> gamma(n, std::vector<int>(n, 0));
    int c = 0;
    for (std::size_t j = 0; j < n; ++j)
      {
        const mealy_machine& m = f.machines[c];
        int q = m.initial();
        for (std::size_t i = j; i < n; ++i)
          {
            gamma[j][i] = m.out(q, u[i]);
            q = m.succ(q, u[i]);
          }
        c = f.leading.succ(c, u[j]);
      }
    std::vector<int> join(n, 0);
    const int none = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < n; ++i)
      {
        int best = none;
        // least join value on positions j..i-1
        int m = none;
        for (std::size_t j = i + 1; j-- > 0;)
          {
            if (j < i)
              m = std::min(m, join[j]);
            if (m > gamma[j][i])
              best = std::min(best, gamma[j][i]);
          }
        join[i] = best;
      }
    return join;
  }

  int join_reference(const fwpm_family& f, const std::string& u)
  {
    return join_reference_all(f, u).back();
  }

  join_tracker::join_tracker(const fwpm_family& f)
    : leading_(f.leading), k_(std::max(1u, f.priorities()))
  {
    for (auto& m: f.machines)
      {
        thresholds_.emplace_back();
        for (unsigned i = 0; i < k_; ++i)
          thresholds_.back().push_back(
              dfa_from_mealy_threshold(m, static_cast<int>(i)));
      }
  }

  join_tracker::state join_tracker::initial() const
  {
    state s;
    for (unsigned i = 0; i < k_; ++i)
      {
        s.push_back(0);
        s.push_back(thresholds_[0][i].ts.initial());
      }
    s.push_back(0);
    return s;
  }

  int join_tracker::step(state& s, unsigned a) const
  {
    int r = static_cast<int>(k_) - 1;
    for (unsigned i = 0; i < k_; ++i)
      {
        const dfa& d = thresholds_[s[2 * i]][i];
        int q = d.ts.succ(s[2 * i + 1], a);
        s[2 * i + 1] = q;
        if (d.final[q])
          {
            r = static_cast<int>(i);
            break;
          }
      }
    int c = leading_.ts().succ(s[2 * k_], a);
    s[2 * k_] = c;
    for (unsigned j = r; j < k_; ++j)
      {
        s[2 * j] = c;
        s[2 * j + 1] = thresholds_[c][j].ts.initial();
      }
    return r;
  }

  bool join_tracker::accepts_prefix(int c, int j, const upword& w,
                                    std::size_t pos) const
  {
    const dfa& d = thresholds_[c][j];
    int q = d.ts.initial();
    for (; pos < w.spine().size(); ++pos)
      {
        q = d.ts.succ(q, w.at(pos));
        if (d.final[q])
          return true;
      }
    std::size_t off = (pos - w.spine().size()) % w.period().size();
    std::string v = w.period().substr(off) + w.period().substr(0, off);
    return dfa_accepts_prefix_of_period(d, q, v).has_value();
  }

  priority_word join_tracker::run(const upword& w) const
  {
    const partial_ts& lt = leading_.ts();
    state s = initial();
    std::vector<int> out;
    std::map<std::tuple<std::size_t, int, int>, std::size_t> seen;
    std::size_t pos = 0;
    int prev = 0;
    while (true)
      {
        int c = s[2 * k_];
        auto key = std::make_tuple(w.alignment(pos), c, prev);
        auto it = seen.find(key);
        if (it != seen.end())
          {
            std::vector<int> r(out.begin(), out.begin() + it->second);
            std::vector<int> v(out.begin() + it->second, out.end());
            return priority_word::make(std::move(r), std::move(v));
          }
        seen.emplace(key, out.size());
        int j = prev;
        while (!accepts_prefix(c, j, w, pos))
          ++j;
        // emit until the component for j fires
        while (true)
          {
            int p = step(s, static_cast<unsigned>(
                                lt.sigma().index(w.at(pos))));
            ++pos;
            out.push_back(p);
            if (p < j)
              throw std::logic_error("join factor emitted below its bound");
            if (p == j)
              break;
          }
        prev = j;
      }
  }

  dpa join_automaton(const fwpm_family& f, std::size_t cap)
  {
    join_tracker jt(f);
    const alphabet& sigma = f.leading.sigma();
    std::map<join_tracker::state, int> id;
    std::vector<join_tracker::state> states{jt.initial()};
    id.emplace(states[0], 0);
    dpa a(sigma, 1, 0);
    for (std::size_t i = 0; i < states.size(); ++i)
      for (unsigned s = 0; s < sigma.size(); ++s)
        {
          auto t = states[i];
          int p = jt.step(t, s);
          auto [it, fresh] = id.emplace(t, states.size());
          if (fresh)
            {
              if (states.size() >= cap)
                throw state_budget_exceeded("join automaton exceeds "
                                            + std::to_string(cap)
                                            + " states");
              states.push_back(t);
              a.add_state();
            }
          a.set(static_cast<int>(i), s, it->second, p);
        }
    return a;
  }

  priority_word join_priority_word(const fwpm_family& f, const upword& w)
  {
    return join_tracker(f).run(w);
  }

  dpa precise_dpa(const dpa& a, const std::optional<right_congruence>& lead,
                  std::size_t cap)
  {
    right_congruence l = lead ? *lead : myhill_nerode_from_dpa(a);
    return mealy_minimize(join_automaton(precise_fwpm_from_dpa(a, l), cap));
  }
}
