#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpainf
{
  /// Raised when a period is empty.
  struct invalid_period : std::invalid_argument
  {
    using std::invalid_argument::invalid_argument;
  };

  /// Ordered set of single-character symbols.
  class alphabet
  {
  public:
    alphabet() = default;
    explicit alphabet(std::string symbols);

    std::size_t size() const { return symbols_.size(); }
    char symbol(std::size_t i) const { return symbols_[i]; }
    const std::string& symbols() const { return symbols_; }

    /// Index of \a c, or -1 if \a c is not a symbol.
    int index(char c) const { return index_[static_cast<unsigned char>(c)]; }
    bool contains(char c) const { return index(c) >= 0; }
    bool contains_word(const std::string& w) const;

    bool operator==(const alphabet& o) const { return symbols_ == o.symbols_; }

  private:
    std::string symbols_;
    std::vector<int> index_ = std::vector<int>(256, -1);
  };

  /// Length-lexicographic comparison of sequences under element order.
  template<class Seq, class Less>
  bool llex_less(const Seq& x, const Seq& y, Less less)
  {
    if (x.size() != y.size())
      return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i)
      {
        if (less(x[i], y[i]))
          return true;
        if (less(y[i], x[i]))
          return false;
      }
    return false;
  }

  /// Three-way llex comparison of finite words over \a sigma.
  std::strong_ordering llex_compare(const alphabet& sigma,
                                    const std::string& x,
                                    const std::string& y);

  /// Canonical lasso (spine, period) over an arbitrary element type.
  ///
  /// The period is primitive and the spine is rotation-reduced.
  template<class T>
  std::pair<std::vector<T>, std::vector<T>>
  canonical_lasso(std::vector<T> u, std::vector<T> v)
  {
    if (v.empty())
      throw invalid_period("empty period");
    // primitive root
    std::size_t n = v.size();
    for (std::size_t d = 1; d <= n; ++d)
      {
        if (n % d)
          continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i)
          ok = v[i] == v[i - d];
        if (ok)
          {
            v.resize(d);
            break;
          }
      }
    // absorb trailing spine symbols into the loop
    while (!u.empty() && u.back() == v.back())
      {
        T last = v.back();
        v.pop_back();
        v.insert(v.begin(), last);
        u.pop_back();
      }
    return {std::move(u), std::move(v)};
  }

  /// Ultimately periodic word spine·period^ω in canonical form.
  class upword
  {
  public:
    upword() : period_("?") {}
    upword(const std::string& spine, const std::string& period);

    const std::string& spine() const { return spine_; }
    const std::string& period() const { return period_; }

    /// Symbol at position \a i.
    char at(std::size_t i) const;
    /// Index into spine·period identifying the suffix starting at \a i.
    std::size_t alignment(std::size_t i) const;
    /// The word with its first \a n symbols removed.
    upword suffix(std::size_t n) const;
    bool purely_periodic() const { return spine_.empty(); }
    std::size_t length() const { return spine_.size() + period_.size(); }

    /// "spine,period"
    std::string str() const { return spine_ + "," + period_; }

    auto operator<=>(const upword&) const = default;

  private:
    std::string spine_;
    std::string period_;
  };

  /// Canonicalize (u, v); throws invalid_period if v is empty.
  upword normalize_upword(const std::string& u, const std::string& v);

  /// First \a n symbols of \a w.
  std::string upword_prefix(const upword& w, std::size_t n);

  bool is_prefix_of(const std::string& x, const upword& w);

  /// Total order on upwords: (|u|+|v|, spine llex, period llex).
  bool upword_less(const alphabet& sigma, const upword& x, const upword& y);

  /// Disjoint positive and negative upwords over one alphabet.
  class omega_sample
  {
  public:
    omega_sample() = default;
    explicit omega_sample(alphabet sigma) : sigma_(std::move(sigma)) {}

    const alphabet& sigma() const { return sigma_; }
    const std::set<upword>& positives() const { return pos_; }
    const std::set<upword>& negatives() const { return neg_; }
    const std::set<upword>& words(bool positive) const
    {
      return positive ? pos_ : neg_;
    }

    /// Adds \a w; throws std::invalid_argument if it is present with the
    /// other sign or uses foreign symbols.
    void add(const upword& w, bool positive);
    bool contains(const upword& w) const
    {
      return pos_.count(w) || neg_.count(w);
    }
    std::size_t size() const { return pos_.size() + neg_.size(); }
    bool empty() const { return size() == 0; }
    /// Sum of |spine|+|period| over all words.
    std::size_t symbol_count() const;
    /// All words, positives first, each set in its stored order.
    std::vector<upword> all() const;

  private:
    alphabet sigma_;
    std::set<upword> pos_;
    std::set<upword> neg_;
  };

  /// Prefixes of sample words with length at most \a bound.
  std::set<std::string> sample_prefixes(const omega_sample& s,
                                        std::size_t bound);
}
