#pragma once

#include <dpainf/words.hh>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dpainf
{
  /// Deterministic transition system whose transition function may be
  /// partial.  States are 0..size()-1; a missing transition is -1.
  class partial_ts
  {
  public:
    partial_ts() = default;
    explicit partial_ts(alphabet sigma, unsigned states = 0,
                        int initial = 0);

    const alphabet& sigma() const { return sigma_; }
    unsigned size() const { return n_; }
    int initial() const { return init_; }
    void set_initial(int q) { init_ = q; }

    int succ(int q, unsigned a) const { return delta_[q * k_ + a]; }
    int succ(int q, char c) const
    {
      return succ(q, static_cast<unsigned>(sigma_.index(c)));
    }
    void set_succ(int q, unsigned a, int r) { delta_[q * k_ + a] = r; }
    void set_succ(int q, char c, int r)
    {
      set_succ(q, static_cast<unsigned>(sigma_.index(c)), r);
    }
    int add_state();
    bool complete() const;

    bool operator==(const partial_ts&) const = default;

  private:
    alphabet sigma_;
    unsigned n_ = 0;
    unsigned k_ = 0;
    int init_ = 0;
    std::vector<int> delta_;
  };

  /// Target of \a x from \a from, or nothing if a transition is missing.
  std::optional<int> run(const partial_ts& ts, int from, const std::string& x);

  /// Result of an SCC decomposition.
  struct scc_info
  {
    /// SCC index of each state, -1 for states outside the considered set.
    std::vector<int> comp;
    /// Members of each SCC.
    std::vector<std::vector<int>> members;
    /// Whether the SCC contains at least one internal edge.
    std::vector<bool> nontrivial;
    unsigned count() const { return members.size(); }
  };

  /// Tarjan decomposition of the graph on states 0..n-1 given by \a succs.
  ///
  /// SCCs are numbered in reverse topological order (sinks first).
  scc_info scc_decomposition(
      unsigned n, const std::function<void(int, std::vector<int>&)>& succs);

  scc_info sccs(const partial_ts& ts);

  /// States visited infinitely often on \a w starting in \a from.  Returns
  /// nothing if the run is undefined somewhere.
  std::optional<std::vector<int>>
  infinity_set(const partial_ts& ts, const upword& w, int from);
  std::optional<std::vector<int>> infinity_set(const partial_ts& ts,
                                               const upword& w);

  /// Complete transition system with llex-minimal representatives.
  ///
  /// States are renumbered in llex order of their representatives, so the
  /// initial state is 0 and state numbering is canonical.
  class right_congruence
  {
  public:
    right_congruence() = default;
    /// Restricts \a ts to its reachable part; throws if it is incomplete.
    explicit right_congruence(const partial_ts& ts);

    const partial_ts& ts() const { return ts_; }
    const alphabet& sigma() const { return ts_.sigma(); }
    unsigned size() const { return ts_.size(); }
    const std::string& rep(int q) const { return reps_[q]; }
    const std::vector<std::string>& reps() const { return reps_; }
    int succ(int q, char c) const { return ts_.succ(q, c); }
    int run(int q, const std::string& x) const;
    int cls(const std::string& x) const { return run(0, x); }

  private:
    partial_ts ts_;
    std::vector<std::string> reps_;
  };

  /// llex-minimal access words of the states reachable in \a ts from its
  /// initial state; unreachable states get nothing.
  std::vector<std::optional<std::string>> access_words(const partial_ts& ts);

  /// Whether the non-empty word \a x loops on class \a c.
  bool loops_on(const right_congruence& rc, int c, const std::string& x);

  /// Prefix tree of a set of upwords that loops once a prefix identifies a
  /// single word.  Node 0 is the root; there is no sink.
  struct prefix_tree
  {
    partial_ts ts;
    /// The prefix a node stands for (for loop nodes, its first occurrence).
    std::vector<std::string> label;
    /// Per transition (q * |Σ| + a): the word and position of the symbol
    /// read, or -1 for missing transitions.
    std::vector<int> origin_word;
    std::vector<std::size_t> origin_pos;
  };

  /// Builds the prefix tree of \a words; empty input yields a single root
  /// without transitions.  Loops start no earlier than position
  /// \a min_loop.
  prefix_tree build_prefix_tree(const alphabet& sigma,
                                const std::vector<upword>& words,
                                std::size_t min_loop = 0);

  /// Adds a sink state for all missing transitions and returns its index.
  int complete_with_sink(partial_ts& ts);

  /// The default transition system of \a s: prefix tree with loops and a
  /// sink for non-prefixes.
  /// With \a min_loop > 0 no transition enters the initial state.
  right_congruence default_ts(const omega_sample& s, std::size_t min_loop = 0);

  /// Reachable product of \a a (from its initial state) and \a b (from
  /// state \a b_from); both must be complete.
  partial_ts product_ts(const partial_ts& a, const partial_ts& b, int b_from);
}
