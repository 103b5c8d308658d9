#pragma once

#include <dpainf/forc.hh>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpainf
{
  struct state_budget_exceeded : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  /// Ultimately periodic sequence of priorities prefix·cycle^ω in canonical
  /// form.
  struct priority_word
  {
    std::vector<int> prefix;
    std::vector<int> cycle;

    static priority_word make(std::vector<int> r, std::vector<int> s);
    /// Least priority occurring in the cycle.
    int eventual_min() const;
    /// "r|s"; priorities above 9 are separated by commas.
    std::string str() const;
    bool operator==(const priority_word&) const = default;
  };

  /// Precise FWPM of L(a) for \a leading, one minimal Mealy machine per
  /// class.  Throws refinement_violation unless the automaton congruence of
  /// \a a refines \a leading.
  fwpm_family precise_fwpm_from_dpa(const dpa& a,
                                    const right_congruence& leading);

  /// Join values of all non-empty prefixes of \a u, computed directly from
  /// the definition.
  std::vector<int> join_reference_all(const fwpm_family& f,
                                      const std::string& u);
  int join_reference(const fwpm_family& f, const std::string& u);

  /// Runs the join construction state by state without building it.
  class join_tracker
  {
  public:
    explicit join_tracker(const fwpm_family& f);

    /// Per priority the class and threshold-DFA state of that component,
    /// followed by the leading state.
    using state = std::vector<int>;

    state initial() const;
    /// Advances \a s on symbol \a a and returns the emitted priority.
    int step(state& s, unsigned a) const;
    /// Priorities emitted along \a w.
    priority_word run(const upword& w) const;
    unsigned priorities() const { return k_; }

  private:
    bool accepts_prefix(int c, int j, const upword& w,
                        std::size_t pos) const;

    right_congruence leading_;
    unsigned k_;
    // thresholds_[c][i]
    std::vector<std::vector<dfa>> thresholds_;
  };

  /// Explicit join automaton; throws state_budget_exceeded beyond \a cap
  /// states.
  dpa join_automaton(const fwpm_family& f, std::size_t cap = 1000000);

  priority_word join_priority_word(const fwpm_family& f, const upword& w);

  /// Minimal DPA (as a Mealy machine) whose priority mapping is the join of
  /// the precise FWPM.  The leading congruence defaults to the
  /// Myhill-Nerode congruence of L(a).
  dpa precise_dpa(const dpa& a,
                  const std::optional<right_congruence>& leading = {},
                  std::size_t cap = 1000000);
}
