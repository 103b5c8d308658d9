// Command-line front end: learning, precise DPAs, equivalence and the
// plain-text file formats.

#include <dpainf/charsample.hh>
#include <dpainf/io.hh>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dpainf;

namespace
{
  // input problem reported with exit code 2
  struct input_error : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  template<class F>
  auto load(const std::string& path, F read)
  {
    std::ifstream in(path);
    if (!in)
      throw input_error(path + ": cannot open");
    try
      {
        return read(in);
      }
    catch (const parse_error& e)
      {
        throw input_error(path + ":" + std::to_string(e.line()) + ": "
                          + e.what());
      }
  }

  // writes to \a path, or stdout for an empty path
  template<class F>
  void store(const std::string& path, F write)
  {
    if (path.empty())
      {
        write(std::cout);
        return;
      }
    std::ofstream out(path);
    if (!out)
      throw input_error(path + ": cannot write");
    write(out);
  }

  dpa load_dpa(const std::string& path)
  {
    return load(path, [](std::istream& in) {
      return read_priority_machine(in);
    });
  }

  upword word_arg(const alphabet& sigma, const std::string& text)
  {
    try
      {
        return parse_upword(sigma, text);
      }
    catch (const std::invalid_argument& e)
      {
        throw input_error("word '" + text + "': " + e.what());
      }
  }

  std::string event_str(const glerc_event& e)
  {
    std::string verdict = e.created ? "created" : e.accepted ? "merged"
                                                             : "rejected";
    return "'" + e.source + "' " + e.symbol + " '" + e.target + "' "
           + verdict;
  }
}

int main(int argc, char** argv)
{
  CLI::App app{"Passive learning of deterministic parity automata"};
  app.require_subcommand(1);

  std::string sample_path, out_path, forc_path, report_path;
  bool trace = false;
  auto* learn = app.add_subcommand("learn", "learn a DPA from a sample");
  learn->add_option("--sample", sample_path, "sample file")->required();
  learn->add_option("--out", out_path, "DPA file (default stdout)");
  learn->add_option("--emit-forc", forc_path, "write the colored FORC");
  learn->add_flag("--trace", trace, "print learner events to stderr");
  learn->add_option("--report", report_path, "write the learning report");

  std::string in_path;
  auto* precise = app.add_subcommand("precise", "precise DPA of a DPA");
  precise->add_option("dpa", in_path, "DPA file")->required();
  precise->add_option("--out", out_path, "DPA file (default stdout)");

  auto* normalize = app.add_subcommand("normalize", "normalize priorities");
  normalize->add_option("dpa", in_path, "DPA file")->required();
  normalize->add_option("--out", out_path, "DPA file (default stdout)");

  std::string other_path;
  auto* equiv = app.add_subcommand(
      "equiv", "exit 0 if equivalent, else print u,v and exit 1");
  equiv->add_option("first", in_path, "DPA file")->required();
  equiv->add_option("second", other_path, "DPA file")->required();

  std::string word;
  auto* member = app.add_subcommand("member", "accept or reject a word");
  member->add_option("dpa", in_path, "DPA file")->required();
  member->add_option("word", word, "spine,period")->required();

  auto* charsample = app.add_subcommand(
      "charsample", "sample from which the learner recovers the DPA");
  charsample->add_option("dpa", in_path, "DPA file")->required();
  charsample->add_option("--out", out_path, "sample file (default stdout)");

  std::string family_path, dpa_path;
  auto* join = app.add_subcommand("join-trace",
                                  "priorities of the join along a word");
  auto* fam_opt = join->add_option("--family", family_path, "family file");
  auto* dpa_opt = join->add_option("--dpa", dpa_path,
                                   "DPA file, joined via its precise family");
  fam_opt->excludes(dpa_opt);
  join->add_option("--word", word, "spine,period")->required();

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::CallForHelp& e)
    {
      return app.exit(e);
    }
  catch (const CLI::ParseError& e)
    {
      app.exit(e);
      return 2;
    }

  try
    {
      if (*learn)
        {
          omega_sample s = load(sample_path, read_sample);
          dpainf_options opts;
          if (trace)
            {
              opts.leading_trace = [](const glerc_event& e) {
                std::cerr << "leading " << event_str(e) << '\n';
              };
              opts.progress = [](int c, const glerc_event& e) {
                std::cerr << "progress " << c << ' ' << event_str(e) << '\n';
              };
              opts.on_output_query = [](const std::string& u) {
                std::cerr << "query '" << u << "'\n";
              };
            }
          auto res = infer_dpa(s, opts);
          store(out_path, [&](std::ostream& o) { write_dpa(o, res.automaton); });
          if (!forc_path.empty())
            store(forc_path,
                  [&](std::ostream& o) { write_forc(o, res.forc); });
          if (!report_path.empty())
            store(report_path,
                  [&](std::ostream& o) { write_report(o, res.report); });
        }
      else if (*precise)
        {
          dpa p = precise_dpa(load_dpa(in_path));
          store(out_path, [&](std::ostream& o) { write_dpa(o, p); });
        }
      else if (*normalize)
        {
          dpa n = dpa_normalize(load_dpa(in_path));
          store(out_path, [&](std::ostream& o) { write_dpa(o, n); });
        }
      else if (*equiv)
        {
          dpa a = load_dpa(in_path), b = load_dpa(other_path);
          if (!(a.sigma() == b.sigma()))
            throw input_error("the machines have different alphabets");
          if (auto w = dpa_equivalent(a, b))
            {
              std::cout << w->str() << '\n';
              return 1;
            }
        }
      else if (*member)
        {
          dpa a = load_dpa(in_path);
          bool acc = dpa_membership(a, word_arg(a.sigma(), word));
          std::cout << (acc ? "accept" : "reject") << '\n';
        }
      else if (*charsample)
        {
          omega_sample s = characteristic_sample(load_dpa(in_path));
          store(out_path, [&](std::ostream& o) { write_sample(o, s); });
        }
      else if (*join)
        {
          fwpm_family f;
          if (!family_path.empty())
            f = load(family_path, read_family);
          else if (!dpa_path.empty())
            {
              dpa a = load_dpa(dpa_path);
              f = precise_fwpm_from_dpa(a, myhill_nerode_from_dpa(a));
            }
          else
            throw input_error("join-trace needs --family or --dpa");
          upword w = word_arg(f.leading.sigma(), word);
          std::cout << join_priority_word(f, w).str() << '\n';
        }
    }
  catch (const input_error& e)
    {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  catch (const std::exception& e)
    {
      std::cerr << "internal error: " << e.what() << '\n';
      return 3;
    }
  return 0;
}
