#pragma once

#include <dpainf/dpainf.hh>

#include <stdexcept>
#include <string>
#include <utility>

namespace dpainf
{
  struct not_separable : std::invalid_argument
  {
    using std::invalid_argument::invalid_argument;
  };

  /// Words x·w and y·w for the least w in the difference of the residuals
  /// of L(a) after x and after y.
  std::pair<upword, upword> leading_separator(const dpa& a,
                                              const std::string& x,
                                              const std::string& y);

  /// For u = rep(c): u(xz)^ω and u(yz)^ω with the llex-least z such that
  /// uxz ∼ u and exactly one of them is in L(a).  Delegates to
  /// leading_separator when ux and uy lie in different classes.
  std::pair<upword, upword> progress_separator(const dpa& a,
                                               const right_congruence& leading,
                                               int c, const std::string& x,
                                               const std::string& y);

  struct charsample_stats
  {
    unsigned rounds = 0;
    std::size_t leading_pairs = 0;
    std::size_t progress_pairs = 0;
    std::size_t idempotent_seeds = 0;
    std::size_t query_words = 0;
    std::size_t counterexamples = 0;
  };

  /// A sample labelled by L(a) from which the learner recovers L(a).
  omega_sample characteristic_sample(const dpa& a,
                                     charsample_stats* stats = nullptr);
}
