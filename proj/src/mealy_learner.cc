#include <dpainf/mealy_learner.hh>

#include <map>
#include <set>

namespace dpainf
{
  namespace
  {
    class table
    {
    public:
      table(const teacher& t, const alphabet& sigma, mealy_learn_stats& st)
        : t_(t), sigma_(sigma), st_(st)
      {
        for (char c: sigma.symbols())
          add_column(std::string(1, c));
        rows_.push_back("");
      }

      void add_column(const std::string& e)
      {
        if (columns_seen_.insert(e).second)
          columns_.push_back(e);
      }

      int query(const std::string& w)
      {
        auto [it, fresh] = cache_.emplace(w, 0);
        if (fresh)
          {
            ++st_.output_queries;
            it->second = t_.output(w);
          }
        return it->second;
      }

      std::vector<int> row(const std::string& s)
      {
        std::vector<int> r;
        for (auto& e: columns_)
          r.push_back(query(s + e));
        return r;
      }

      // adds access words until every one-symbol extension has a row in S
      void close()
      {
        std::map<std::vector<int>, int> known;
        for (std::size_t i = 0; i < rows_.size(); ++i)
          known.emplace(row(rows_[i]), static_cast<int>(i));
        for (std::size_t i = 0; i < rows_.size(); ++i)
          for (char c: sigma_.symbols())
            {
              std::string w = rows_[i] + c;
              if (known.emplace(row(w), static_cast<int>(rows_.size()))
                      .second)
                rows_.push_back(w);
            }
      }

      mealy_machine hypothesis()
      {
        std::map<std::vector<int>, int> index;
        for (std::size_t i = 0; i < rows_.size(); ++i)
          index.emplace(row(rows_[i]), static_cast<int>(i));
        mealy_machine h(sigma_, rows_.size(), 0);
        for (std::size_t i = 0; i < rows_.size(); ++i)
          for (unsigned a = 0; a < sigma_.size(); ++a)
            {
              std::string w = rows_[i] + sigma_.symbol(a);
              h.set(static_cast<int>(i), a, index.at(row(w)), query(w));
            }
        return h;
      }

    private:
      const teacher& t_;
      const alphabet& sigma_;
      mealy_learn_stats& st_;
      std::vector<std::string> rows_;
      std::vector<std::string> columns_;
      std::set<std::string> columns_seen_;
      std::map<std::string, int> cache_;
    };
  }

  mealy_machine learn_mealy(const teacher& t, const alphabet& sigma,
                            mealy_learn_stats* stats)
  {
    mealy_learn_stats local;
    mealy_learn_stats& st = stats ? *stats : local;
    table tab(t, sigma, st);
    while (true)
      {
        tab.close();
        mealy_machine h = tab.hypothesis();
        if (!st.hypothesis_sizes.empty()
            && h.size() <= st.hypothesis_sizes.back())
          throw teacher_inconsistent("hypothesis did not grow");
        st.hypothesis_sizes.push_back(h.size());
        ++st.equivalence_queries;
        auto ce = t.equivalence(h);
        if (!ce)
          return h;
        if (ce->empty() || !sigma.contains_word(*ce))
          throw teacher_inconsistent("malformed counterexample");
        if (tab.query(*ce) == h.output(*ce))
          throw teacher_inconsistent("counterexample agrees with the "
                                     "hypothesis");
        for (std::size_t i = 0; i < ce->size(); ++i)
          tab.add_column(ce->substr(i));
      }
  }
}
