#pragma once

#include <dpainf/congruence.hh>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpainf
{
  /// Complete DFA over non-empty words; the empty word is never accepted
  /// by the algorithms that consume it, but \ref accepts reports the
  /// initial state's status for ε.
  struct dfa
  {
    partial_ts ts;
    std::vector<bool> final;

    unsigned size() const { return ts.size(); }
    bool accepts(const std::string& x) const;
    bool accepts_from(int q, const std::string& x) const;
  };

  /// Complete transition system with a natural-number output on every
  /// transition.  Read as a Mealy machine, the output of a non-empty word is
  /// the output of its last transition; read as a DPA, the outputs are
  /// priorities under min-even acceptance.
  class priority_machine
  {
  public:
    priority_machine() = default;
    explicit priority_machine(alphabet sigma, unsigned states = 0,
                              int initial = 0);
    explicit priority_machine(partial_ts ts);

    const partial_ts& ts() const { return ts_; }
    const alphabet& sigma() const { return ts_.sigma(); }
    unsigned size() const { return ts_.size(); }
    int initial() const { return ts_.initial(); }

    int succ(int q, unsigned a) const { return ts_.succ(q, a); }
    int succ(int q, char c) const { return ts_.succ(q, c); }
    int out(int q, unsigned a) const { return out_[q * sigma().size() + a]; }
    int out(int q, char c) const
    {
      return out(q, static_cast<unsigned>(sigma().index(c)));
    }
    void set(int q, unsigned a, int target, int priority);
    void set(int q, char c, int target, int priority)
    {
      set(q, static_cast<unsigned>(sigma().index(c)), target, priority);
    }
    int add_state();
    void set_initial(int q) { ts_.set_initial(q); }

    /// Largest output plus one (0 for a machine without states).
    unsigned priorities() const;
    /// State reached from \a q on \a x.
    int run(int q, const std::string& x) const;
    /// Output on the non-empty word \a u read from the initial state.
    int output(const std::string& u) const;

    bool operator==(const priority_machine&) const = default;

  private:
    partial_ts ts_;
    std::vector<int> out_;
  };

  using dpa = priority_machine;
  using mealy_machine = priority_machine;

  struct not_weak : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  bool dpa_membership(const dpa& a, const upword& w);
  /// Membership of \a w when the run starts in \a q.
  bool dpa_membership_from(const dpa& a, int q, const upword& w);

  /// Least priority read along \a u (non-empty) from \a q.
  int min_priority_on_path(const dpa& a, int q, const std::string& u);

  dpa dpa_complement(const dpa& a);

  /// Removes gaps in the priority range without changing the parity of any
  /// priority or the relative order of priorities.
  priority_machine compact_priorities(const priority_machine& a);

  std::optional<upword> dpa_nonempty_witness(const dpa& a);

  /// A word in the symmetric difference of the languages, or nothing if
  /// they are equal.  The witness is the least one under upword_less among
  /// those up to the length of the first witness found, as long as the
  /// search stays within a fixed budget.  With \a least false the first
  /// witness found is returned as is.
  std::optional<upword> dpa_equivalent(const dpa& a, const dpa& b,
                                       bool least = true);

  /// Pointwise minimal priority function on the same transition structure.
  dpa dpa_normalize(const dpa& a);

  /// Restriction to the reachable part, renumbered in BFS symbol order.
  priority_machine reachable_part(const priority_machine& m);

  mealy_machine mealy_minimize(const mealy_machine& m);

  /// llex-least non-empty word with different outputs, or nothing.
  std::optional<std::string> mealy_separating_word(const mealy_machine& m1,
                                                   const mealy_machine& m2);

  /// Whether outputs never increase along any path from the initial state.
  bool mealy_is_weak(const mealy_machine& m);

  /// Minimal DFA for {u ∈ Σ^+ | M(u) ≤ i}; throws not_weak unless M is weak.
  dfa dfa_from_mealy_threshold(const mealy_machine& m, int i);

  dfa dfa_minimize(const dfa& d);

  /// Whether two DFAs accept the same non-empty words from their initial
  /// states.
  bool dfa_equivalent(const dfa& d1, const dfa& d2);

  /// Shortest non-empty prefix of v^ω accepted from \a q, if any.
  std::optional<std::string>
  dfa_accepts_prefix_of_period(const dfa& d, int q, const std::string& v);

  /// Lasso search on an edge-labelled graph: a path from \a init followed by
  /// a cycle inside one SCC of the \a allowed edges that contains, for each
  /// predicate in \a required, an edge satisfying it.
  std::optional<upword> find_lasso(
      const partial_ts& g,
      const std::function<bool(int, unsigned)>& allowed,
      const std::vector<std::function<bool(int, unsigned)>>& required);
}
