#pragma once

#include <dpainf/congruence.hh>

#include <functional>
#include <stdexcept>
#include <string>

namespace dpainf
{
  using consistency_fn = std::function<bool(const partial_ts&)>;

  struct default_inconsistent : std::invalid_argument
  {
    using std::invalid_argument::invalid_argument;
  };

  /// One attempted transition: source representative, symbol, the
  /// representative of the tried target (or the new state's name), whether
  /// a new state was created, and the verdict of cons.
  struct glerc_event
  {
    std::string source;
    char symbol;
    std::string target;
    bool created;
    bool accepted;
  };

  using glerc_trace = std::function<void(const glerc_event&)>;

  struct glerc_result
  {
    right_congruence rc;
    /// Whether the size bound was exceeded and the default returned.
    bool escaped = false;
    /// Number of cons invocations, including the initial check of the
    /// default.
    std::size_t cons_calls = 0;
  };

  /// Greedy right-congruence learner.  Missing transitions are filled in
  /// llex order of source·symbol, trying existing targets in llex order of
  /// their representatives before creating a new state.
  glerc_result glerc(const consistency_fn& cons, const right_congruence& def,
                     const glerc_trace& trace = {});
}
