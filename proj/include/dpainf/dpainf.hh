#pragma once

#include <dpainf/consistency.hh>
#include <dpainf/forc.hh>
#include <dpainf/mealy_learner.hh>
#include <dpainf/precise.hh>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dpainf
{
  struct colored_entry
  {
    upword word;
    priority_word priorities;
  };

  using colored_sample = std::vector<colored_entry>;

  /// Every sample word with the priorities the join of \a f emits on it.
  colored_sample color_sample(const fwpm_family& f, const omega_sample& s);

  /// Prefix tree of the colored words with loops after the uniquely
  /// identifying prefix; everything else goes to a sink with priority 0.
  /// Throws std::logic_error if two entries disagree on a shared prefix.
  dpa prefix_dpa(const colored_sample& cs, const omega_sample& s);

  /// Emits 1 while the run follows a negative looping word of the leading
  /// class where it was entered, 0 otherwise.
  dpa fallback_dpa(const omega_sample& s, const right_congruence& rc);

  bool dpa_consistent_with_sample(const dpa& a, const omega_sample& s);

  /// llex-least non-empty prefix x of a sample word with B(x) != H(x).
  std::optional<std::string> step4_counterexample(const dpa& b,
                                                  const mealy_machine& h,
                                                  const omega_sample& s);

  struct learn_report
  {
    unsigned leading_size = 0;
    std::vector<unsigned> progress_sizes;
    std::size_t forc_size = 0;
    std::size_t cons_calls = 0;
    bool leading_escaped = false;
    unsigned escaped_progress = 0;
    unsigned coloring_rounds = 0;
    /// Coloring found a mixed SCC; the fallback was used.
    bool purity_anomaly = false;
    bool fallback = false;
    unsigned b_size = 0;
    std::size_t output_queries = 0;
    std::size_t equivalence_queries = 0;
    std::vector<unsigned> hypothesis_sizes;
    unsigned final_size = 0;
  };

  struct dpainf_options
  {
    glerc_trace leading_trace;
    progress_trace progress;
    /// Called for every distinct output query of the Mealy learner.
    std::function<void(const std::string&)> on_output_query;
  };

  struct dpainf_result
  {
    dpa automaton;
    learn_report report;
    /// The colored FORC of steps 1 and 2 (uncolored after an anomaly).
    colored_forc forc;
  };

  dpainf_result infer_dpa(const omega_sample& s, const dpainf_options& opts = {});
}
