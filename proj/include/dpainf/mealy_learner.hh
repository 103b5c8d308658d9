#pragma once

#include <dpainf/automata.hh>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpainf
{
  /// Output and equivalence queries for a Mealy target.  Equivalence
  /// returns nothing to accept, otherwise a non-empty counterexample.
  struct teacher
  {
    std::function<int(const std::string&)> output;
    std::function<std::optional<std::string>(const mealy_machine&)>
        equivalence;
  };

  struct teacher_inconsistent : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  struct mealy_learn_stats
  {
    /// Distinct words asked.
    std::size_t output_queries = 0;
    std::size_t equivalence_queries = 0;
    std::vector<unsigned> hypothesis_sizes;
  };

  /// Observation-table learner.  Counterexamples add all their suffixes as
  /// columns; rows of access words stay pairwise distinct.
  mealy_machine learn_mealy(const teacher& t, const alphabet& sigma,
                            mealy_learn_stats* stats = nullptr);
}
