#include <dpainf/io.hh>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace dpainf
{
  namespace
  {
    // significant lines with their numbers; comments and blanks dropped
    class line_reader
    {
    public:
      explicit line_reader(std::istream& in)
      {
        std::string raw;
        std::size_t n = 0;
        while (std::getline(in, raw))
          {
            ++n;
            if (auto h = raw.find('#'); h != std::string::npos)
              raw.erase(h);
            while (!raw.empty()
                   && (raw.back() == ' ' || raw.back() == '\t'
                       || raw.back() == '\r'))
              raw.pop_back();
            if (!raw.empty())
              lines_.emplace_back(n, raw);
          }
        last_ = n;
      }

      bool done() const { return pos_ == lines_.size(); }
      const std::string& peek() const { return lines_[pos_].second; }
      std::size_t number() const
      {
        return done() ? last_ : lines_[pos_].first;
      }

      const std::string& next(const char* expect)
      {
        if (done())
          throw parse_error(last_, std::string("expected ") + expect
                                       + " at end of input");
        return lines_[pos_++].second;
      }

      [[noreturn]] void fail(const std::string& what) const
      {
        // number of the line just consumed
        std::size_t n = pos_ == 0 ? 1 : lines_[pos_ - 1].first;
        throw parse_error(n, what);
      }

    private:
      std::vector<std::pair<std::size_t, std::string>> lines_;
      std::size_t pos_ = 0;
      std::size_t last_ = 0;
    };

    std::vector<std::string> split(const std::string& s)
    {
      std::vector<std::string> out;
      std::istringstream is(s);
      std::string tok;
      while (is >> tok)
        out.push_back(tok);
      return out;
    }

    bool to_int(const std::string& s, long& v)
    {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc() && p == s.data() + s.size();
    }

    // "key: rest"; returns rest
    std::string field(line_reader& r, const std::string& key)
    {
      const std::string& l = r.next(key.c_str());
      std::string head = key + ":";
      if (l.compare(0, head.size(), head) != 0)
        r.fail("expected '" + head + "'");
      std::string rest = l.substr(head.size());
      if (!rest.empty() && rest[0] != ' ')
        r.fail("expected a space after '" + head + "'");
      return rest;
    }

    long number_field(line_reader& r, const std::string& key, long lo,
                      long hi)
    {
      auto toks = split(field(r, key));
      long v;
      if (toks.size() != 1 || !to_int(toks[0], v))
        r.fail("expected one number after '" + key + ":'");
      if (v < lo || v > hi)
        r.fail(key + " out of range");
      return v;
    }

    alphabet read_alphabet(line_reader& r)
    {
      std::string rest = field(r, "alphabet");
      std::string symbols;
      for (std::size_t i = 0; i < rest.size(); i += 2)
        {
          if (rest[i] != ' ' || i + 1 >= rest.size() || rest[i + 1] == ' ')
            r.fail("symbols must be separated by single spaces");
          char c = rest[i + 1];
          if (c == ',' || symbols.find(c) != std::string::npos)
            r.fail(std::string("bad or repeated symbol '") + c + "'");
          symbols.push_back(c);
        }
      if (symbols.empty())
        r.fail("empty alphabet");
      return alphabet(symbols);
    }

    void write_alphabet(std::ostream& out, const alphabet& s)
    {
      out << "alphabet:";
      for (char c: s.symbols())
        out << ' ' << c;
      out << '\n';
    }

    const char* kind_name(machine_kind k)
    {
      switch (k)
        {
        case machine_kind::dpa:
          return "dpa";
        case machine_kind::mealy:
          return "mealy";
        case machine_kind::dfa:
          return "dfa";
        case machine_kind::ts:
          return "ts";
        }
      return "?";
    }

    bool is_kind_line(const std::string& l)
    {
      return l == "dpa" || l == "mealy" || l == "dfa" || l == "ts";
    }

    machine_file read_block(line_reader& r)
    {
      machine_file f;
      const std::string& k = r.next("machine type");
      if (k == "dpa")
        f.kind = machine_kind::dpa;
      else if (k == "mealy")
        f.kind = machine_kind::mealy;
      else if (k == "dfa")
        f.kind = machine_kind::dfa;
      else if (k == "ts")
        f.kind = machine_kind::ts;
      else
        r.fail("unknown machine type '" + k + "'");
      alphabet sigma = read_alphabet(r);
      long n = number_field(r, "states", 1, 1 << 24);
      long init = number_field(r, "initial", 0, n - 1);
      bool priorities = f.kind == machine_kind::dpa
                        || f.kind == machine_kind::mealy;
      std::vector<bool> final(n, false);
      if (f.kind == machine_kind::dfa)
        for (auto& t: split(field(r, "final")))
          {
            long q;
            if (!to_int(t, q) || q < 0 || q >= n)
              r.fail("bad final state '" + t + "'");
            final[q] = true;
          }
      std::vector<long> colors;
      while (!r.done() && r.peek().rfind("color:", 0) == 0)
        {
          auto toks = split(field(r, "color"));
          long q, c;
          if (toks.size() != 2 || !to_int(toks[0], q) || !to_int(toks[1], c)
              || q < 0 || q >= n || c < 0)
            r.fail("expected 'color: <state> <color>'");
          if (colors.empty())
            colors.assign(n, -1);
          if (colors[q] >= 0)
            r.fail("state colored twice");
          colors[q] = c;
        }
      if (!colors.empty())
        {
          if (std::count(colors.begin(), colors.end(), -1))
            r.fail("some states have no color");
          f.colors.assign(colors.begin(), colors.end());
        }
      partial_ts ts(sigma, static_cast<unsigned>(n), static_cast<int>(init));
      std::vector<int> prio(static_cast<std::size_t>(n) * sigma.size(), 0);
      while (!r.done() && !is_kind_line(r.peek())
             && r.peek().rfind("progress", 0) != 0)
        {
          auto toks = split(r.next("transition"));
          std::size_t want = priorities ? 4 : 3;
          long from, to, p = 0;
          if (toks.size() != want || !to_int(toks[0], from)
              || toks[1].size() != 1 || !to_int(toks[2], to)
              || (priorities && !to_int(toks[3], p)))
            r.fail(priorities ? "expected '<from> <symbol> <to> <priority>'"
                              : "expected '<from> <symbol> <to>'");
          int a = sigma.index(toks[1][0]);
          if (from < 0 || from >= n || to < 0 || to >= n)
            r.fail("state out of range");
          if (a < 0)
            r.fail("unknown symbol '" + toks[1] + "'");
          if (p < 0)
            r.fail("negative priority");
          if (ts.succ(static_cast<int>(from), static_cast<unsigned>(a)) >= 0)
            r.fail("duplicate transition");
          ts.set_succ(static_cast<int>(from), static_cast<unsigned>(a),
                      static_cast<int>(to));
          prio[from * sigma.size() + a] = static_cast<int>(p);
        }
      if (!ts.complete())
        r.fail("transitions are not total");
      switch (f.kind)
        {
        case machine_kind::dpa:
        case machine_kind::mealy:
          f.m = priority_machine(sigma, static_cast<unsigned>(n),
                                 static_cast<int>(init));
          for (unsigned q = 0; q < n; ++q)
            for (unsigned a = 0; a < sigma.size(); ++a)
              f.m.set(q, a, ts.succ(q, a), prio[q * sigma.size() + a]);
          break;
        case machine_kind::dfa:
          f.d = dfa{ts, final};
          break;
        case machine_kind::ts:
          f.t = ts;
          break;
        }
      return f;
    }

    void write_ts(std::ostream& out, const partial_ts& ts,
                  const priority_machine* m)
    {
      for (unsigned q = 0; q < ts.size(); ++q)
        for (unsigned a = 0; a < ts.sigma().size(); ++a)
          {
            out << q << ' ' << ts.sigma().symbol(a) << ' ' << ts.succ(q, a);
            if (m)
              out << ' ' << m->out(q, a);
            out << '\n';
          }
    }

    void expect_end(line_reader& r)
    {
      if (!r.done())
        {
          r.next("");
          r.fail("unexpected trailing content");
        }
    }

    // "progress <rep>:"
    std::string progress_header(line_reader& r)
    {
      const std::string& l = r.next("progress block");
      if (l.rfind("progress ", 0) != 0 || l.back() != ':')
        r.fail("expected 'progress <representative>:'");
      return l.substr(9, l.size() - 10);
    }

    right_congruence leading_block(line_reader& r)
    {
      machine_file lead = read_block(r);
      if (lead.kind != machine_kind::ts)
        r.fail("leading block must be a ts");
      return right_congruence(lead.t);
    }

    // progress blocks in any order, one per leading class
    template<class F>
    void progress_blocks(line_reader& r, const right_congruence& lead, F f)
    {
      std::vector<bool> seen(lead.size(), false);
      for (unsigned i = 0; i < lead.size(); ++i)
        {
          std::string rep = progress_header(r);
          if (!lead.sigma().contains_word(rep))
            r.fail("representative uses foreign symbols");
          int c = lead.cls(rep);
          if (seen[c])
            r.fail("second progress block for class of '" + rep + "'");
          seen[c] = true;
          machine_file m = read_block(r);
          const alphabet& sigma =
              m.kind == machine_kind::ts    ? m.t.sigma()
              : m.kind == machine_kind::dfa ? m.d.ts.sigma()
                                            : m.m.sigma();
          if (!(sigma == lead.sigma()))
            r.fail("alphabet differs from the leading block");
          f(c, m);
        }
      expect_end(r);
    }
  }

  upword parse_upword(const alphabet& sigma, const std::string& text)
  {
    auto comma = text.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("expected 'spine,period'");
    std::string u = text.substr(0, comma), v = text.substr(comma + 1);
    if (!sigma.contains_word(u) || !sigma.contains_word(v))
      throw std::invalid_argument("word uses symbols outside the alphabet");
    if (v.empty())
      throw std::invalid_argument("empty period");
    return upword(u, v);
  }

  omega_sample read_sample(std::istream& in)
  {
    line_reader r(in);
    omega_sample s(read_alphabet(r));
    while (!r.done())
      {
        const std::string& l = r.next("example");
        if (l.size() < 3 || (l[0] != '+' && l[0] != '-') || l[1] != ' ')
          r.fail("expected '<+|-> <spine>,<period>'");
        upword w;
        try
          {
            w = parse_upword(s.sigma(), l.substr(2));
          }
        catch (const std::invalid_argument& e)
          {
            r.fail(e.what());
          }
        bool pos = l[0] == '+';
        if (s.words(!pos).count(w))
          r.fail("word " + w.str() + " appears with both signs");
        s.add(w, pos);
      }
    return s;
  }

  void write_sample(std::ostream& out, const omega_sample& s)
  {
    write_alphabet(out, s.sigma());
    auto words = s.all();
    std::sort(words.begin(), words.end(),
              [&](const upword& x, const upword& y) {
                return upword_less(s.sigma(), x, y);
              });
    for (auto& w: words)
      out << (s.positives().count(w) ? '+' : '-') << ' ' << w.str() << '\n';
  }

  machine_file read_machine(std::istream& in)
  {
    line_reader r(in);
    machine_file f = read_block(r);
    expect_end(r);
    return f;
  }

  void write_machine(std::ostream& out, const machine_file& f)
  {
    const partial_ts& ts = f.kind == machine_kind::dfa ? f.d.ts
                           : f.kind == machine_kind::ts ? f.t
                                                        : f.m.ts();
    out << kind_name(f.kind) << '\n';
    write_alphabet(out, ts.sigma());
    out << "states: " << ts.size() << '\n';
    out << "initial: " << ts.initial() << '\n';
    if (f.kind == machine_kind::dfa)
      {
        out << "final:";
        for (unsigned q = 0; q < f.d.size(); ++q)
          if (f.d.final[q])
            out << ' ' << q;
        out << '\n';
      }
    for (std::size_t q = 0; q < f.colors.size(); ++q)
      out << "color: " << q << ' ' << f.colors[q] << '\n';
    bool prio = f.kind == machine_kind::dpa || f.kind == machine_kind::mealy;
    write_ts(out, ts, prio ? &f.m : nullptr);
  }

  priority_machine read_priority_machine(std::istream& in)
  {
    line_reader r(in);
    machine_file f = read_block(r);
    if (f.kind != machine_kind::dpa && f.kind != machine_kind::mealy)
      throw parse_error(1, "expected a dpa or mealy machine");
    expect_end(r);
    return f.m;
  }

  void write_dpa(std::ostream& out, const dpa& a)
  {
    machine_file f;
    f.kind = machine_kind::dpa;
    f.m = a;
    write_machine(out, f);
  }

  void write_mealy(std::ostream& out, const mealy_machine& m)
  {
    machine_file f;
    f.kind = machine_kind::mealy;
    f.m = m;
    write_machine(out, f);
  }

  void write_forc(std::ostream& out, const colored_forc& f)
  {
    machine_file lead;
    lead.kind = machine_kind::ts;
    lead.t = f.f.leading.ts();
    write_machine(out, lead);
    for (unsigned c = 0; c < f.f.progress.size(); ++c)
      {
        out << "progress " << f.f.leading.rep(c) << ":\n";
        machine_file p;
        p.kind = machine_kind::ts;
        p.t = f.f.progress[c].ts();
        if (c < f.colors.size())
          p.colors = f.colors[c];
        write_machine(out, p);
      }
  }

  colored_forc read_forc(std::istream& in)
  {
    line_reader r(in);
    colored_forc out;
    out.f.leading = leading_block(r);
    out.f.progress.resize(out.f.leading.size());
    out.colors.resize(out.f.leading.size());
    progress_blocks(r, out.f.leading, [&](int c, const machine_file& m) {
      if (m.kind != machine_kind::ts)
        r.fail("progress blocks must be ts");
      right_congruence prc(m.t);
      // colors are indexed by state, so the numbering has to be canonical
      if (!(prc.ts() == m.t))
        r.fail("progress states are not in breadth-first order");
      out.f.progress[c] = prc;
      out.colors[c] = m.colors;
    });
    return out;
  }

  void write_family(std::ostream& out, const fwpm_family& f)
  {
    machine_file lead;
    lead.kind = machine_kind::ts;
    lead.t = f.leading.ts();
    write_machine(out, lead);
    for (unsigned c = 0; c < f.machines.size(); ++c)
      {
        out << "progress " << f.leading.rep(c) << ":\n";
        write_mealy(out, f.machines[c]);
      }
  }

  fwpm_family read_family(std::istream& in)
  {
    line_reader r(in);
    fwpm_family out;
    out.leading = leading_block(r);
    out.machines.resize(out.leading.size());
    progress_blocks(r, out.leading, [&](int c, const machine_file& m) {
      if (m.kind != machine_kind::mealy)
        r.fail("family blocks must be mealy machines");
      out.machines[c] = m.m;
    });
    return out;
  }

  void write_report(std::ostream& out, const learn_report& r)
  {
    auto list = [&](const std::vector<unsigned>& v) {
      for (unsigned x: v)
        out << ' ' << x;
      out << '\n';
    };
    out << "leading_size: " << r.leading_size << '\n';
    out << "progress_sizes:";
    list(r.progress_sizes);
    out << "forc_size: " << r.forc_size << '\n';
    out << "cons_calls: " << r.cons_calls << '\n';
    out << "leading_escaped: " << r.leading_escaped << '\n';
    out << "escaped_progress: " << r.escaped_progress << '\n';
    out << "coloring_rounds: " << r.coloring_rounds << '\n';
    out << "purity_anomaly: " << r.purity_anomaly << '\n';
    out << "fallback: " << r.fallback << '\n';
    out << "b_size: " << r.b_size << '\n';
    out << "output_queries: " << r.output_queries << '\n';
    out << "equivalence_queries: " << r.equivalence_queries << '\n';
    out << "hypothesis_sizes:";
    list(r.hypothesis_sizes);
    out << "final_size: " << r.final_size << '\n';
  }
}
