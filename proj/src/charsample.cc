#include <dpainf/charsample.hh>

#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace dpainf
{
  namespace
  {
    // per state of a: target and least priority on the way, flattened
    using transformation = std::vector<int>;

    transformation identity(const dpa& a)
    {
      transformation f;
      for (unsigned q = 0; q < a.size(); ++q)
        {
          f.push_back(static_cast<int>(q));
          f.push_back(std::numeric_limits<int>::max());
        }
      return f;
    }

    transformation extend(const dpa& a, transformation f, unsigned s)
    {
      for (std::size_t i = 0; i < f.size(); i += 2)
        {
          int t = f[i];
          f[i + 1] = std::min(f[i + 1], a.out(t, s));
          f[i] = a.succ(t, s);
        }
      return f;
    }

    transformation extend(const dpa& a, transformation f,
                          const std::string& w)
    {
      for (char c: w)
        f = extend(a, std::move(f), static_cast<unsigned>(a.sigma().index(c)));
      return f;
    }

    // whether u·w^ω is accepted, where q = δ(u) and f belongs to w ≠ ε
    bool loops_accepting(const transformation& f, int q)
    {
      std::map<int, std::size_t> seen;
      std::vector<int> prios;
      while (!seen.count(q))
        {
          seen.emplace(q, prios.size());
          prios.push_back(f[2 * q + 1]);
          q = f[2 * q];
        }
      int m = std::numeric_limits<int>::max();
      for (std::size_t i = seen[q]; i < prios.size(); ++i)
        m = std::min(m, prios[i]);
      return m % 2 == 0;
    }

    class builder
    {
    public:
      builder(const dpa& a, charsample_stats& st)
        : a_(a), st_(st), s_(a.sigma()), mn_(myhill_nerode_from_dpa(a))
      {
        for (unsigned c = 0; c < mn_.size(); ++c)
          prcs_.push_back(
              canonical_prc_from_dpa(a_, mn_, static_cast<int>(c)));
        precise_ = precise_dpa(a_, mn_);
      }

      omega_sample build()
      {
        seed_idempotents();
        while (true)
          {
            ++st_.rounds;
            if (replay_forc())
              continue;
            if (replay_learner())
              continue;
            return s_;
          }
      }

    private:
      bool add(const upword& w)
      {
        if (s_.contains(w))
          return false;
        s_.add(w, dpa_membership(a_, w));
        return true;
      }

      bool add(const std::pair<upword, upword>& p)
      {
        bool first = add(p.first);
        bool second = add(p.second);
        return first || second;
      }

      void seed_idempotents()
      {
        for (unsigned c = 0; c < mn_.size(); ++c)
          {
            const right_congruence& prc = prcs_[c];
            for (unsigned q = 0; q < prc.size(); ++q)
              {
                const std::string& x = prc.rep(static_cast<int>(q));
                if (x.empty()
                    || !idempotent_class(prc, mn_, static_cast<int>(c), x))
                  continue;
                st_.idempotent_seeds += add(upword(mn_.rep(c), x));
              }
          }
      }

      struct stop_run
      {
      };

      // one learning run, cut short at its first wrong merge that yields a
      // new separator; later events depend on that merge
      bool replay_forc()
      {
        forc_stats fs;
        auto on_leading = [&](const glerc_event& e) {
          if (e.created || !e.accepted)
            return;
          std::string x = e.source + e.symbol;
          if (mn_.cls(x) == mn_.cls(e.target))
            return;
          // already present when the learner escaped after it
          if (add(leading_separator(a_, x, e.target)))
            {
              ++st_.leading_pairs;
              throw stop_run{};
            }
        };
        auto on_progress = [&](int c, const glerc_event& e) {
          if (e.created || !e.accepted)
            return;
          const right_congruence& prc = prcs_[c];
          std::string x = e.source + e.symbol;
          if (prc.cls(x) == prc.cls(e.target))
            return;
          try
            {
              if (add(progress_separator(a_, mn_, c, x, e.target)))
                {
                  ++st_.progress_pairs;
                  throw stop_run{};
                }
            }
          catch (const not_separable&)
            {
            }
        };
        std::optional<forc> f;
        try
          {
            f = learn_forc(s_, &fs, on_leading, on_progress);
          }
        catch (const stop_run&)
          {
            return true;
          }
        if (fs.leading_escaped && add_escape_words("", mn_))
          return true;
        if (!(f->leading.ts() == mn_.ts()))
          // no wrong merge accepted yet the congruence differs; cannot
          // happen for a congruence of L, kept as a guard
          throw std::logic_error("leading congruence not recovered");
        bool changed = false;
        for (unsigned c = 0; c < fs.progress_escaped.size(); ++c)
          if (fs.progress_escaped[c])
            changed |= add_escape_words(mn_.rep(c), prcs_[c]);
        return changed;
      }

      bool add_escape_words(const std::string& u, const right_congruence& rc)
      {
        bool changed = false;
        for (auto& r: rc.reps())
          for (char c: a_.sigma().symbols())
            changed |= add(upword(u + r, std::string(1, c)));
        return changed;
      }

      bool covered(const std::string& u) const
      {
        for (auto& w: s_.all())
          if (is_prefix_of(u, w))
            return true;
        return false;
      }

      // the Mealy learner against bowA, kept in step with the sample-backed
      // teacher: queries become prefixes, wrong hypotheses get a witness
      bool replay_learner()
      {
        bool changed = false;
        teacher t;
        t.output = [&](const std::string& u) {
          if (!covered(u))
            {
              add(upword("", u));
              ++st_.query_words;
              changed = true;
            }
          return precise_.output(u);
        };
        t.equivalence = [&](const mealy_machine& h)
            -> std::optional<std::string> {
          if (!mealy_separating_word(h, precise_))
            return std::nullopt;
          auto w = dpa_equivalent(h, a_);
          if (!w)
            return std::nullopt;
          if (dpa_consistent_with_sample(h, s_))
            {
              add(*w);
              ++st_.counterexamples;
              changed = true;
            }
          auto x = step4_counterexample(precise_, h, s_);
          if (!x)
            throw std::logic_error("witness without a disagreeing prefix");
          return x;
        };
        learn_mealy(t, a_.sigma());
        if (changed)
          return true;
        auto res = infer_dpa(s_);
        if (auto w = dpa_equivalent(res.automaton, a_))
          {
            ++st_.counterexamples;
            if (!add(*w))
              throw std::logic_error("counterexample already in the sample");
            return true;
          }
        return false;
      }

      const dpa& a_;
      charsample_stats& st_;
      omega_sample s_;
      right_congruence mn_;
      std::vector<right_congruence> prcs_;
      dpa precise_;
    };
  }

  std::pair<upword, upword> leading_separator(const dpa& a,
                                              const std::string& x,
                                              const std::string& y)
  {
    dpa ax = a;
    dpa ay = a;
    ax.set_initial(a.run(a.initial(), x));
    ay.set_initial(a.run(a.initial(), y));
    auto w = dpa_equivalent(ax, ay);
    if (!w)
      throw not_separable("\"" + x + "\" and \"" + y
                          + "\" have the same residual");
    return {upword(x + w->spine(), w->period()),
            upword(y + w->spine(), w->period())};
  }

  std::pair<upword, upword> progress_separator(const dpa& a,
                                               const right_congruence& leading,
                                               int c, const std::string& x,
                                               const std::string& y)
  {
    const std::string& u = leading.rep(c);
    if (leading.cls(u + x) != leading.cls(u + y))
      return leading_separator(a, u + x, u + y);
    const alphabet& sigma = a.sigma();
    int q0 = a.run(a.initial(), u);
    transformation fx = extend(a, identity(a), x);
    transformation fy = extend(a, identity(a), y);
    int l0 = leading.run(c, x);
    using key = std::tuple<transformation, transformation, int>;
    std::set<key> seen{{fx, fy, l0}};
    std::deque<std::pair<key, std::string>> queue;
    queue.emplace_back(key{fx, fy, l0}, "");
    while (!queue.empty())
      {
        auto [k, z] = queue.front();
        queue.pop_front();
        auto& [gx, gy, l] = k;
        if (l == c && !(x + z).empty() && !(y + z).empty()
            && loops_accepting(gx, q0) != loops_accepting(gy, q0))
          return {upword(u, x + z), upword(u, y + z)};
        for (unsigned s = 0; s < sigma.size(); ++s)
          {
            key k2{extend(a, gx, s), extend(a, gy, s),
                   leading.ts().succ(l, s)};
            if (seen.insert(k2).second)
              queue.emplace_back(k2, z + sigma.symbol(s));
          }
      }
    throw not_separable("\"" + x + "\" and \"" + y
                        + "\" are progress equivalent");
  }

  omega_sample characteristic_sample(const dpa& a, charsample_stats* stats)
  {
    charsample_stats local;
    return builder(reachable_part(a), stats ? *stats : local).build();
  }
}
