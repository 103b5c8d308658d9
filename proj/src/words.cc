#include <dpainf/words.hh>

#include <algorithm>

namespace dpainf
{
  alphabet::alphabet(std::string symbols)
    : symbols_(std::move(symbols))
  {
    if (symbols_.empty())
      throw std::invalid_argument("alphabet must not be empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      {
        auto c = static_cast<unsigned char>(symbols_[i]);
        if (index_[c] >= 0)
          throw std::invalid_argument(std::string("duplicate symbol '")
                                      + symbols_[i] + "'");
        index_[c] = static_cast<int>(i);
      }
  }

  bool alphabet::contains_word(const std::string& w) const
  {
    return std::all_of(w.begin(), w.end(),
                       [this](char c) { return contains(c); });
  }

  std::strong_ordering llex_compare(const alphabet& sigma,
                                    const std::string& x,
                                    const std::string& y)
  {
    if (x.size() != y.size())
      return x.size() <=> y.size();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i])
        return sigma.index(x[i]) <=> sigma.index(y[i]);
    return std::strong_ordering::equal;
  }

  upword::upword(const std::string& spine, const std::string& period)
  {
    auto [u, v] = canonical_lasso(std::vector<char>(spine.begin(), spine.end()),
                                  std::vector<char>(period.begin(),
                                                    period.end()));
    spine_.assign(u.begin(), u.end());
    period_.assign(v.begin(), v.end());
  }

  char upword::at(std::size_t i) const
  {
    if (i < spine_.size())
      return spine_[i];
    return period_[(i - spine_.size()) % period_.size()];
  }

  std::size_t upword::alignment(std::size_t i) const
  {
    if (i < spine_.size())
      return i;
    return spine_.size() + (i - spine_.size()) % period_.size();
  }

  upword upword::suffix(std::size_t n) const
  {
    if (n <= spine_.size())
      return upword(spine_.substr(n), period_);
    std::size_t r = (n - spine_.size()) % period_.size();
    return upword("", period_.substr(r) + period_.substr(0, r));
  }

  upword normalize_upword(const std::string& u, const std::string& v)
  {
    return upword(u, v);
  }

  std::string upword_prefix(const upword& w, std::size_t n)
  {
    std::string out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(w.at(i));
    return out;
  }

  bool is_prefix_of(const std::string& x, const upword& w)
  {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != w.at(i))
        return false;
    return true;
  }

  bool upword_less(const alphabet& sigma, const upword& x, const upword& y)
  {
    if (x.length() != y.length())
      return x.length() < y.length();
    auto c = llex_compare(sigma, x.spine(), y.spine());
    if (c != 0)
      return c < 0;
    return llex_compare(sigma, x.period(), y.period()) < 0;
  }

  void omega_sample::add(const upword& w, bool positive)
  {
    if (!sigma_.contains_word(w.spine()) || !sigma_.contains_word(w.period()))
      throw std::invalid_argument("word " + w.str()
                                  + " uses symbols outside the alphabet");
    if (words(!positive).count(w))
      throw std::invalid_argument("word " + w.str()
                                  + " is both positive and negative");
    (positive ? pos_ : neg_).insert(w);
  }

  std::size_t omega_sample::symbol_count() const
  {
    std::size_t n = 0;
    for (auto& w: pos_)
      n += w.length();
    for (auto& w: neg_)
      n += w.length();
    return n;
  }

  std::vector<upword> omega_sample::all() const
  {
    std::vector<upword> out(pos_.begin(), pos_.end());
    out.insert(out.end(), neg_.begin(), neg_.end());
    return out;
  }

  std::set<std::string> sample_prefixes(const omega_sample& s,
                                        std::size_t bound)
  {
    std::set<std::string> out{""};
    for (auto& w: s.all())
      {
        std::string p;
        for (std::size_t i = 0; i < bound; ++i)
          {
            p.push_back(w.at(i));
            out.insert(p);
          }
      }
    return out;
  }
}
