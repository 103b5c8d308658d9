#pragma once

#include <dpainf/dpainf.hh>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace dpainf
{
  /// Malformed input; line() is 1-based, 0 when the input ended early.
  class parse_error : public std::runtime_error
  {
  public:
    parse_error(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
  };

  /// "spine,period" over \a sigma, canonicalized.
  upword parse_upword(const alphabet& sigma, const std::string& text);

  omega_sample read_sample(std::istream& in);
  void write_sample(std::ostream& out, const omega_sample& s);

  enum class machine_kind
  {
    dpa,
    mealy,
    dfa,
    ts
  };

  /// Any machine file.  \a m holds dpa and mealy machines, \a d dfas and
  /// \a t transition systems.
  struct machine_file
  {
    machine_kind kind = machine_kind::dpa;
    priority_machine m;
    dfa d;
    partial_ts t;
    /// Per-state colors, empty when absent.
    std::vector<int> colors;
  };

  machine_file read_machine(std::istream& in);
  void write_machine(std::ostream& out, const machine_file& f);

  /// Reads a dpa or mealy file; anything else is a parse error.
  priority_machine read_priority_machine(std::istream& in);
  void write_dpa(std::ostream& out, const dpa& a);
  void write_mealy(std::ostream& out, const mealy_machine& m);

  /// Leading block followed by one colored progress block per class.
  void write_forc(std::ostream& out, const colored_forc& f);
  colored_forc read_forc(std::istream& in);

  /// Leading block followed by one mealy block per class.
  void write_family(std::ostream& out, const fwpm_family& f);
  fwpm_family read_family(std::istream& in);

  /// key: value lines.
  void write_report(std::ostream& out, const learn_report& r);
}
