#pragma once

#include <dpainf/automata.hh>
#include <dpainf/glerc.hh>

#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

namespace dpainf
{
  /// A leading congruence and one progress congruence per leading class.
  /// Progress congruences read words from the class and keep ε in their
  /// initial state.
  struct forc
  {
    right_congruence leading;
    std::vector<right_congruence> progress;

    /// Sum of the sizes of all congruences.
    std::size_t size() const;
  };

  /// A FORC with a priority on every progress state.
  struct colored_forc
  {
    forc f;
    std::vector<std::vector<int>> colors;
    /// Rounds used by the coloring, maximum over the classes.
    unsigned rounds = 0;
  };

  /// One Mealy machine per leading class, sharing the priority range.
  struct fwpm_family
  {
    right_congruence leading;
    std::vector<mealy_machine> machines;

    /// Largest output plus one over all machines.
    unsigned priorities() const;
  };

  struct purity_violation : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  struct refinement_violation : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  /// S_c: suffixes w' with x·w' in S for some prefix x of a sample word
  /// that lies in class \a c.
  omega_sample residual_sample(const omega_sample& s,
                               const right_congruence& rc, int c);

  /// R_{c,σ}: periodic words v^ω with x·v^ω in S_σ, x in \a c and x·v ∼ x.
  std::set<upword> looping_periodics(const omega_sample& s,
                                     const right_congruence& rc, int c,
                                     bool positive);

  struct forc_stats
  {
    std::size_t cons_calls = 0;
    bool leading_escaped = false;
    std::vector<bool> progress_escaped;
  };

  /// Trace hook for the progress learners: leading class and event.
  using progress_trace = std::function<void(int, const glerc_event&)>;

  /// Learns a FORC consistent with \a s.
  forc learn_forc(const omega_sample& s, forc_stats* stats = nullptr,
                  const glerc_trace& leading_trace = {},
                  const progress_trace& trace = {});

  /// Whether x ≈_c y implies rep(c)·x ∼ rep(c)·y on the reachable part.
  bool forc_law_holds(const partial_ts& progress, const right_congruence& rc,
                      int c);

  /// Rounds coloring: a state gets the first i such that every labelled
  /// state reachable from it is colored below i or has sign matching the
  /// parity of i.  Labels are +1, -1 or 0 (unlabelled).  Throws
  /// purity_violation if an SCC carries both signs.
  std::vector<int> color_by_rounds(const partial_ts& ts,
                                   const std::vector<int>& labels,
                                   unsigned* rounds = nullptr);

  colored_forc color_forc(const forc& f, const omega_sample& s);

  /// Mealy machines whose outputs are the colors of the targets.
  fwpm_family mealy_family(const colored_forc& cf);

  /// Quotient of the reachable part of \a a by language equivalence.
  right_congruence myhill_nerode_from_dpa(const dpa& a);

  /// States of \a a reached by words of class \a c; throws
  /// refinement_violation if a reachable state of \a a is reached in two
  /// classes of \a leading.
  std::vector<int> class_states(const dpa& a, const right_congruence& leading,
                                int c);

  /// The canonical progress congruence of class \a c with an extra class
  /// holding only ε.
  right_congruence canonical_prc_from_dpa(const dpa& a,
                                          const right_congruence& leading,
                                          int c);

  /// Whether the class of the non-empty word \a x is idempotent.
  bool idempotent_class(const right_congruence& prc,
                        const right_congruence& leading, int c,
                        const std::string& x);

  /// κ_c on the classes of \a prc.  \a member decides u·x^ω ∈ L for
  /// u = rep(c).
  std::vector<int> kappa_from_idempotents(
      const right_congruence& prc, int c,
      const std::function<bool(const upword&)>& member,
      const right_congruence& leading);
}
