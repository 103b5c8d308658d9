#pragma once

// Shared fixtures and brute-force oracles for the test binaries.

#include <dpainf/automata.hh>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testsupport
{
  using namespace dpainf;

  inline std::mt19937& rng()
  {
    static std::mt19937 gen(20240611);
    return gen;
  }

  inline std::string random_word(const alphabet& sigma, std::size_t len,
                                 std::mt19937& g = rng())
  {
    std::uniform_int_distribution<std::size_t> d(0, sigma.size() - 1);
    std::string w;
    for (std::size_t i = 0; i < len; ++i)
      w.push_back(sigma.symbol(d(g)));
    return w;
  }

  inline upword random_upword(const alphabet& sigma, std::size_t max_spine,
                              std::size_t max_period,
                              std::mt19937& g = rng())
  {
    std::uniform_int_distribution<std::size_t> ls(0, max_spine);
    std::uniform_int_distribution<std::size_t> lp(1, max_period);
    std::string u = random_word(sigma, ls(g), g);
    return upword(u, random_word(sigma, lp(g), g));
  }

  /// Random complete machine; every state reachable when \a connected.
  inline priority_machine random_machine(const alphabet& sigma, unsigned n,
                                         unsigned k, std::mt19937& g = rng(),
                                         bool connected = true)
  {
    while (true)
      {
        priority_machine m(sigma, n, 0);
        std::uniform_int_distribution<int> ds(0, n - 1);
        std::uniform_int_distribution<int> dp(0, k - 1);
        for (unsigned q = 0; q < n; ++q)
          for (unsigned a = 0; a < sigma.size(); ++a)
            m.set(q, a, ds(g), dp(g));
        if (!connected || reachable_part(m).size() == n)
          return m;
      }
  }

  /// All canonical upwords with |spine| + |period| <= max_len.
  inline std::vector<upword> all_upwords(const alphabet& sigma,
                                         std::size_t max_len)
  {
    std::set<upword> seen;
    std::vector<upword> out;
    std::vector<std::string> words{""};
    std::vector<std::vector<std::string>> by_len{{""}};
    for (std::size_t n = 1; n <= max_len; ++n)
      {
        by_len.emplace_back();
        for (auto& w: by_len[n - 1])
          for (char c: sigma.symbols())
            by_len[n].push_back(w + c);
      }
    for (std::size_t n = 1; n <= max_len; ++n)
      for (std::size_t lu = 0; lu < n; ++lu)
        for (auto& u: by_len[lu])
          for (auto& v: by_len[n - lu])
            {
              upword w(u, v);
              if (seen.insert(w).second)
                out.push_back(w);
            }
    return out;
  }

  /// All finite words of length 1..max_len in llex order.
  inline std::vector<std::string> all_words(const alphabet& sigma,
                                            std::size_t max_len,
                                            bool with_empty = false)
  {
    std::vector<std::string> out;
    if (with_empty)
      out.push_back("");
    std::vector<std::string> layer{""};
    for (std::size_t n = 1; n <= max_len; ++n)
      {
        std::vector<std::string> next;
        for (auto& w: layer)
          for (char c: sigma.symbols())
            next.push_back(w + c);
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
      }
    return out;
  }

  /// Finitely many b or infinitely many aba, over {a,b}.
  inline dpa aba_dpa()
  {
    dpa a(alphabet("ab"), 3, 0);
    a.set(0, 'a', 1, 2);
    a.set(0, 'b', 0, 1);
    a.set(1, 'a', 1, 2);
    a.set(1, 'b', 2, 1);
    a.set(2, 'a', 1, 0);
    a.set(2, 'b', 0, 1);
    return a;
  }

  /// Direct predicate for the language of aba_dpa.
  inline bool aba_predicate(const upword& w)
  {
    const std::string& v = w.period();
    std::string vvv = v + v + v + v;
    return v.find('b') == std::string::npos
           || vvv.find("aba") != std::string::npos;
  }

  /// Infinitely many aa, or finitely many a and (even number of a iff
  /// infinitely many b and d), over {a,b,d}.  A state is (parity of a,
  /// mode) with mode none / after a / seen b / seen d.
  inline dpa two_class_dpa()
  {
    dpa m(alphabet("abd"), 8, 0);
    for (int p = 0; p < 2; ++p)
      for (int mode = 0; mode < 4; ++mode)
        {
          int q = p * 4 + mode;
          int flip = (1 - p) * 4 + 1;
          m.set(q, 'a', flip, mode == 1 ? 0 : 1);
          int wait = p == 0 ? 3 : 4;
          int done = p == 0 ? 2 : 3;
          m.set(q, 'b', mode == 3 ? p * 4 : p * 4 + 2,
                mode == 3 ? done : wait);
          m.set(q, 'd', mode == 2 ? p * 4 : p * 4 + 3,
                mode == 2 ? done : wait);
        }
    return m;
  }

  /// Direct predicate for the language of two_class_dpa.
  inline bool two_class_predicate(const upword& w)
  {
    const std::string& v = w.period();
    std::string vv = v + v;
    if (vv.find("aa") != std::string::npos)
      return true;
    if (v.find('a') != std::string::npos)
      return false;
    bool even = std::count(w.spine().begin(), w.spine().end(), 'a') % 2 == 0;
    bool both = v.find('b') != std::string::npos
                && v.find('d') != std::string::npos;
    return even == both;
  }

  /// The d-symbol language "every symbol infinitely often", tracked by the
  /// set of symbols seen since the last reset.
  inline dpa ld_tracking(unsigned d)
  {
    std::string syms;
    for (unsigned h = 0; h < d; ++h)
      syms.push_back(static_cast<char>('a' + h));
    unsigned full = (1u << d) - 1;
    dpa a(alphabet(syms), full, 0);
    for (unsigned s = 0; s < full; ++s)
      for (unsigned h = 0; h < d; ++h)
        {
          unsigned t = s | (1u << h);
          if (t == full)
            a.set(s, h, 0, 0);
          else
            a.set(s, h, t, 1);
        }
    return a;
  }

  /// d-state DPA for the same language reading a_0 a_1 ... cyclically.
  inline dpa ld_hand(unsigned d)
  {
    std::string syms;
    for (unsigned h = 0; h < d; ++h)
      syms.push_back(static_cast<char>('a' + h));
    dpa a(alphabet(syms), d, 0);
    for (unsigned q = 0; q < d; ++q)
      for (unsigned h = 0; h < d; ++h)
        if (h == q)
          a.set(q, h, (q + 1) % d, q == d - 1 ? 0 : 1);
        else
          a.set(q, h, q, 1);
    return a;
  }

  /// Reference automata plus a fixed batch of small random ones.
  inline std::vector<dpa> small_corpus()
  {
    std::vector<dpa> out{aba_dpa(), two_class_dpa(), ld_tracking(2),
                         ld_tracking(3), ld_hand(3)};
    std::mt19937 g(7);
    for (int i = 0; i < 12; ++i)
      out.push_back(random_machine(alphabet("ab"), 1 + i % 4, 2 + i % 2, g));
    return out;
  }
}
