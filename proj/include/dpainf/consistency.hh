#pragma once

#include <dpainf/automata.hh>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpainf
{
  /// Raised when iteration consistency is requested relative to a
  /// congruence that is not MN-consistent with the sample.
  struct mn_precondition : std::invalid_argument
  {
    using std::invalid_argument::invalid_argument;
  };

  /// Two sample DFAs and the pairs of their states that must not meet in
  /// one state of a consistent transition system.
  struct conflict_setup
  {
    dfa a1;
    dfa a2;
    /// conflicts[q1 * |A2| + q2]
    std::vector<char> conflicts;

    bool conflict(int q1, int q2) const
    {
      return conflicts[q1 * a2.size() + q2];
    }
    std::size_t conflict_count() const;

    /// Conflicts of each state of a1 as a bitset over a2 (empty when there
    /// are none), built on first use.
    const std::vector<std::vector<std::uint64_t>>& conflict_rows() const;

    mutable std::vector<std::vector<std::uint64_t>> rows_cache;
    mutable bool rows_built = false;
  };

  /// Prefix acceptor of the given words: prefix tree with loops, all tree
  /// nodes accepting, plus a rejecting sink.
  dfa prefix_acceptor(const alphabet& sigma, const std::set<upword>& words);

  conflict_setup mn_setup(const omega_sample& s);

  /// Whether no state of \a t is reached both by some x leading to q1 in A1
  /// and some y leading to q2 in A2 with (q1, q2) conflicting.
  bool check_consistent(const partial_ts& t, const conflict_setup& setup);

  bool check_mn_consistent(const partial_ts& t, const omega_sample& s);

  /// Primitive periods of the purely periodic words of one sign.
  std::set<std::string> periodic_roots(const omega_sample& s, bool positive);

  /// Setup for iteration consistency relative to class \a c of \a rc.
  /// Throws mn_precondition if \a check_mn is set and rc is not
  /// MN-consistent with \a s.
  conflict_setup iteration_setup(const omega_sample& s,
                                 const right_congruence& rc, int c,
                                 bool check_mn = true);

  bool check_iteration_consistent(const partial_ts& t, const omega_sample& s,
                                  const right_congruence& rc, int c);

  /// Whether no SCC of \a t meets the infinity sets of both a positive and
  /// a negative word.  Words whose run is undefined are ignored.
  bool check_scc_purity(const partial_ts& t, const std::vector<upword>& pos,
                        const std::vector<upword>& neg);
}
