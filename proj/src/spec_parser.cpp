#include "gr1rs/spec.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gr1rs
{
  namespace
  {
    bool is_ident_start(char c)
    {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    bool is_ident_char(char c)
    {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    struct token
    {
      enum kind_t { ident, lparen, rparen, bang, amp, bar, arrow, darrow, next, end } kind;
      std::string text;
      int column;
    };

    // Recursive-descent parser.  Precedence, loosest first:
    // <->, -> (right assoc), |, &, !.
    class expr_parser
    {
    public:
      expr_parser(std::string_view text, const std::vector<signal>& signals,
                  bool allow_next, int line, int column)
        : signals_(signals), allow_next_(allow_next), line_(line)
      {
        tokenize(text, column);
      }

      bool_expr parse()
      {
        bool_expr e = parse_iff();
        if (peek().kind != token::end)
          fail("unexpected '" + peek().text + "'", peek().column);
        return e;
      }

    private:
      [[noreturn]] void fail(const std::string& msg, int column) const
      {
        throw spec_error(msg, line_, column);
      }

      void tokenize(std::string_view s, int base)
      {
        std::size_t i = 0;
        while (i < s.size())
          {
            char c = s[i];
            int col = base + static_cast<int>(i);
            if (std::isspace(static_cast<unsigned char>(c)))
              {
                ++i;
                continue;
              }
            if (is_ident_start(c))
              {
                std::size_t j = i;
                while (j < s.size() && is_ident_char(s[j]))
                  ++j;
                std::string word(s.substr(i, j - i));
                std::size_t k = j;
                while (k < s.size() && s[k] == ' ')
                  ++k;
                if (word == "X" && k < s.size() && s[k] == '(')
                  toks_.push_back({token::next, word, col});
                else
                  toks_.push_back({token::ident, word, col});
                i = j;
                continue;
              }
            if (s.substr(i, 3) == "<->")
              {
                toks_.push_back({token::darrow, "<->", col});
                i += 3;
                continue;
              }
            if (s.substr(i, 2) == "->")
              {
                toks_.push_back({token::arrow, "->", col});
                i += 2;
                continue;
              }
            switch (c)
              {
              case '(': toks_.push_back({token::lparen, "(", col}); break;
              case ')': toks_.push_back({token::rparen, ")", col}); break;
              case '!': toks_.push_back({token::bang, "!", col}); break;
              case '&': toks_.push_back({token::amp, "&", col}); break;
              case '|': toks_.push_back({token::bar, "|", col}); break;
              default: fail(std::string("unexpected character '") + c + "'", col);
              }
            ++i;
          }
        toks_.push_back({token::end, "end of expression",
                         base + static_cast<int>(s.size())});
      }

      const token& peek() const { return toks_[pos_]; }
      const token& take() { return toks_[pos_++]; }

      void expect(token::kind_t k, const char* what)
      {
        if (peek().kind != k)
          fail(std::string("expected ") + what + " but found '" + peek().text + "'",
               peek().column);
        ++pos_;
      }

      bool_expr parse_iff()
      {
        bool_expr l = parse_implies();
        while (peek().kind == token::darrow)
          {
            take();
            l = iff(l, parse_implies());
          }
        return l;
      }

      bool_expr parse_implies()
      {
        bool_expr l = parse_or();
        if (peek().kind == token::arrow)
          {
            take();
            return implies(l, parse_implies());
          }
        return l;
      }

      bool_expr parse_or()
      {
        bool_expr l = parse_and();
        while (peek().kind == token::bar)
          {
            take();
            l = l | parse_and();
          }
        return l;
      }

      bool_expr parse_and()
      {
        bool_expr l = parse_unary();
        while (peek().kind == token::amp)
          {
            take();
            l = l & parse_unary();
          }
        return l;
      }

      bool_expr parse_unary()
      {
        const token& t = take();
        switch (t.kind)
          {
          case token::bang:
            return !parse_unary();
          case token::lparen:
            {
              bool_expr e = parse_iff();
              expect(token::rparen, "')'");
              return e;
            }
          case token::next:
            {
              if (!allow_next_)
                fail("next-step reference X(...) not allowed here", t.column);
              if (in_next_)
                fail("nested X(...) is not supported", t.column);
              expect(token::lparen, "'('");
              in_next_ = true;
              bool_expr e = parse_iff();
              in_next_ = false;
              expect(token::rparen, "')'");
              return e;
            }
          case token::ident:
            {
              if (t.text == "true" || t.text == "TRUE")
                return bool_expr::constant(true);
              if (t.text == "false" || t.text == "FALSE")
                return bool_expr::constant(false);
              for (std::size_t k = 0; k < signals_.size(); ++k)
                if (signals_[k].name == t.text)
                  {
                    int idx = static_cast<int>(k);
                    return in_next_ ? bool_expr::next_var(idx) : bool_expr::var(idx);
                  }
              fail("undeclared signal '" + t.text + "'", t.column);
            }
          default:
            fail("unexpected '" + t.text + "'", t.column);
          }
      }

      const std::vector<signal>& signals_;
      bool allow_next_;
      bool in_next_ = false;
      int line_;
      std::vector<token> toks_;
      std::size_t pos_ = 0;
    };

    struct source_line
    {
      int number;
      std::string text;  // comment stripped
    };

    std::string trim(std::string_view s)
    {
      std::size_t b = 0, e = s.size();
      while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
      while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
      return std::string(s.substr(b, e - b));
    }

    // Column (1-based) of the first non-blank character at or after offset.
    int column_at(const std::string& line, std::size_t offset)
    {
      while (offset < line.size() && std::isspace(static_cast<unsigned char>(line[offset])))
        ++offset;
      return static_cast<int>(offset) + 1;
    }

    std::vector<std::string> split_words(std::string_view s)
    {
      std::vector<std::string> out;
      std::istringstream in{std::string(s)};
      std::string w;
      while (in >> w)
        out.push_back(w);
      return out;
    }

    void check_identifier(const std::string& w, int line, int col, const char* what)
    {
      if (w.empty() || !is_ident_start(w[0]))
        throw spec_error(std::string("invalid ") + what + " name '" + w + "'", line, col);
      for (char c : w)
        if (!is_ident_char(c))
          throw spec_error(std::string("invalid ") + what + " name '" + w + "'", line, col);
    }

    // One ';'-separated item of an automaton block, with its position.
    struct block_item
    {
      std::string text;
      int line;
      int column;
    };

    safety_automaton parse_automaton_block(const std::vector<block_item>& items,
                                           const std::vector<signal>& signals,
                                           const std::string& name, int header_line)
    {
      std::vector<std::string> states;
      std::map<std::string, int> index;
      std::optional<std::string> init;
      int init_line = header_line, init_col = 0;
      struct pending { std::string src, guard, dst; int line, col, guard_col; };
      std::vector<pending> trans;

      for (const auto& it : items)
        {
          auto colon = it.text.find(':');
          auto arrow = it.text.find("-(");
          std::string key, rest;
          int rest_col = it.column;
          if (arrow != std::string::npos && (colon == std::string::npos || arrow < colon))
            {
              // Bare transition continuing a trans: list.
              key = "trans";
              rest = it.text;
            }
          else if (colon == std::string::npos)
            throw spec_error("expected 'states:', 'init:' or 'trans:' in automaton block",
                             it.line, it.column);
          else
            {
              key = trim(std::string_view(it.text).substr(0, colon));
              rest = it.text.substr(colon + 1);
              rest_col += static_cast<int>(colon) + 1;
            }
          if (key == "states")
            {
              for (const auto& w : split_words(rest))
                {
                  check_identifier(w, it.line, rest_col, "state");
                  if (index.count(w))
                    throw spec_error("duplicate state name '" + w + "'", it.line, rest_col);
                  index[w] = static_cast<int>(states.size());
                  states.push_back(w);
                }
            }
          else if (key == "init")
            {
              init = trim(rest);
              init_line = it.line;
              init_col = rest_col;
            }
          else if (key == "trans")
            {
              // src -(guard)-> dst
              auto dash = rest.find("-(");
              if (dash == std::string::npos)
                throw spec_error("expected 'src -(guard)-> dst'", it.line, rest_col);
              int depth = 0;
              std::size_t close = std::string::npos;
              for (std::size_t k = dash + 1; k < rest.size(); ++k)
                {
                  if (rest[k] == '(')
                    ++depth;
                  else if (rest[k] == ')' && --depth == 0)
                    {
                      close = k;
                      break;
                    }
                }
              if (close == std::string::npos || rest.compare(close + 1, 2, "->") != 0)
                throw spec_error("expected ')->' closing the transition guard",
                                 it.line, rest_col);
              pending p;
              p.src = trim(std::string_view(rest).substr(0, dash));
              p.guard = rest.substr(dash + 2, close - dash - 2);
              p.dst = trim(std::string_view(rest).substr(close + 3));
              p.line = it.line;
              p.col = rest_col;
              p.guard_col = rest_col + static_cast<int>(dash) + 2;
              trans.push_back(std::move(p));
            }
          else
            throw spec_error("unknown automaton item '" + key + "'", it.line, it.column);
        }
      if (states.empty())
        throw spec_error("automaton '" + name + "' declares no states", header_line);
      if (!init)
        throw spec_error("automaton '" + name + "' declares no initial state", header_line);
      if (!index.count(*init))
        throw spec_error("unknown initial state '" + *init + "'", init_line, init_col);

      std::vector<automaton_transition> out;
      for (const auto& p : trans)
        {
          if (!index.count(p.src))
            throw spec_error("unknown state '" + p.src + "'", p.line, p.col);
          if (!index.count(p.dst))
            throw spec_error("unknown state '" + p.dst + "'", p.line, p.col);
          bool_expr g = expr_parser(p.guard, signals, false, p.line, p.guard_col).parse();
          out.push_back({index[p.src], g, index[p.dst]});
        }
      safety_automaton a(name, states, index[*init], std::move(out));
      if (auto w = a.find_nondeterminism())
        {
          std::string val;
          for (std::size_t k = 0; k < signals.size(); ++k)
            if (((a.transitions()[w->first].guard.current_support()
                  | a.transitions()[w->second].guard.current_support()) >> k) & 1)
              val += (val.empty() ? "" : " ") + signals[k].name + "="
                + (((w->valuation >> k) & 1) ? "1" : "0");
          throw spec_error("automaton '" + name + "' is nondeterministic: state '"
                           + a.states()[w->state] + "' enables two transitions under {"
                           + val + "}", header_line);
        }
      return a;
    }
  }

  bool_expr parse_expr(std::string_view text, const std::vector<signal>& signals,
                       bool allow_next)
  {
    return expr_parser(text, signals, allow_next, 0, 1).parse();
  }

  gr1_spec parse_spec(std::string_view text)
  {
    std::vector<source_line> lines;
    {
      std::istringstream in{std::string(text)};
      std::string raw;
      int n = 0;
      while (std::getline(in, raw))
        {
          ++n;
          if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
          auto hash = raw.find('#');
          if (hash != std::string::npos)
            raw.erase(hash);
          lines.push_back({n, raw});
        }
    }

    gr1_spec spec;
    std::set<std::string> declared;
    auto declare = [&](const source_line& l, std::size_t colon, signal_kind kind) {
      for (const auto& w : split_words(std::string_view(l.text).substr(colon + 1)))
        {
          int col = static_cast<int>(l.text.find(w, colon)) + 1;
          check_identifier(w, l.number, col, "signal");
          if (w == "X" || w == "true" || w == "false" || w == "TRUE" || w == "FALSE")
            throw spec_error("reserved word '" + w + "' used as signal name", l.number, col);
          if (!declared.insert(w).second)
            throw spec_error("duplicate signal name '" + w + "'", l.number, col);
          spec.signals.push_back({w, kind});
        }
    };

    // Declarations first so formulas may precede them textually.
    std::vector<signal> inputs_only;
    for (const auto& l : lines)
      {
        auto colon = l.text.find(':');
        if (colon == std::string::npos || std::isspace(static_cast<unsigned char>(
                                             l.text.empty() ? 'x' : l.text[0])))
          continue;
        if (trim(std::string_view(l.text).substr(0, colon)) == "inputs")
          declare(l, colon, signal_kind::input);
      }
    for (const auto& l : lines)
      {
        auto colon = l.text.find(':');
        if (colon == std::string::npos || l.text.empty()
            || std::isspace(static_cast<unsigned char>(l.text[0])))
          continue;
        if (trim(std::string_view(l.text).substr(0, colon)) == "outputs")
          declare(l, colon, signal_kind::output);
      }

    int env_inv = 0, sys_inv = 0, env_aut = 0, sys_aut = 0;
    for (std::size_t li = 0; li < lines.size(); ++li)
      {
        const auto& l = lines[li];
        if (trim(l.text).empty())
          continue;
        if (std::isspace(static_cast<unsigned char>(l.text[0])))
          throw spec_error("unexpected indented line outside an automaton block",
                           l.number, column_at(l.text, 0));
        auto colon = l.text.find(':');
        if (colon == std::string::npos)
          throw spec_error("expected 'key: value'", l.number, 1);
        std::string key = trim(std::string_view(l.text).substr(0, colon));
        std::string rest = l.text.substr(colon + 1);
        int rest_col = column_at(l.text, colon + 1);
        auto parse_here = [&](bool allow_next) {
          if (trim(rest).empty())
            throw spec_error("missing formula after '" + key + ":'", l.number, rest_col);
          return expr_parser(rest, spec.signals, allow_next, l.number,
                             static_cast<int>(colon) + 2).parse();
        };

        if (key == "inputs" || key == "outputs")
          continue;
        if (key == "env_safety_inv" || key == "sys_safety_inv")
          {
            bool env = key[0] == 'e';
            bool_expr phi = parse_here(true);
            std::string name = (env ? "env_inv" : "sys_inv")
              + std::to_string(env ? env_inv++ : sys_inv++);
            (env ? spec.env_safety : spec.sys_safety)
              .push_back(invariant_to_automaton(phi, spec.signals, name));
          }
        else if (key == "env_fair")
          spec.env_fair.push_back(parse_here(false));
        else if (key == "sys_fair")
          spec.sys_fair.push_back(parse_here(false));
        else if (key == "env_safety_automaton" || key == "sys_safety_automaton")
          {
            bool env = key[0] == 'e';
            std::vector<block_item> items;
            auto add_items = [&](const source_line& sl, std::size_t from) {
              std::size_t start = from;
              for (;;)
                {
                  auto semi = sl.text.find(';', start);
                  std::string piece = sl.text.substr(start, semi == std::string::npos
                                                     ? std::string::npos : semi - start);
                  if (!trim(piece).empty())
                    {
                      std::size_t off = start;
                      while (off < sl.text.size()
                             && std::isspace(static_cast<unsigned char>(sl.text[off])))
                        ++off;
                      items.push_back({trim(piece), sl.number, static_cast<int>(off) + 1});
                    }
                  if (semi == std::string::npos)
                    break;
                  start = semi + 1;
                }
            };
            add_items(l, colon + 1);
            while (li + 1 < lines.size() && !lines[li + 1].text.empty()
                   && std::isspace(static_cast<unsigned char>(lines[li + 1].text[0])))
              {
                ++li;
                add_items(lines[li], 0);
              }
            std::string name = (env ? "env_aut" : "sys_aut")
              + std::to_string(env ? env_aut++ : sys_aut++);
            (env ? spec.env_safety : spec.sys_safety)
              .push_back(parse_automaton_block(items, spec.signals, name, l.number));
          }
        else
          throw spec_error("unknown key '" + key + "'", l.number, column_at(l.text, 0));
      }

    spec.validate();
    return spec;
  }

  gr1_spec parse_spec_file(const std::string& path)
  {
    std::ifstream in(path);
    if (!in)
      throw spec_error("cannot open specification file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try
      {
        return parse_spec(ss.str());
      }
    catch (const spec_error& e)
      {
        throw spec_error(path + ": " + e.what());
      }
  }

  std::string print_spec(const gr1_spec& spec)
  {
    std::ostringstream out;
    auto names = spec.names();
    out << "inputs:";
    for (const auto& s : spec.input_names())
      out << ' ' << s;
    out << "\noutputs:";
    for (const auto& s : spec.output_names())
      out << ' ' << s;
    out << '\n';
    auto print_automata = [&](const std::vector<safety_automaton>& list, const char* key) {
      for (const auto& a : list)
        {
          out << key << ":\n  states:";
          for (const auto& s : a.states())
            out << ' ' << s;
          out << " ; init: " << a.states()[a.initial()] << '\n';
          for (const auto& t : a.transitions())
            out << "  trans: " << a.states()[t.source] << " -("
                << t.guard.to_string(names) << ")-> " << a.states()[t.target] << '\n';
        }
    };
    print_automata(spec.env_safety, "env_safety_automaton");
    print_automata(spec.sys_safety, "sys_safety_automaton");
    for (const auto& f : spec.env_fair)
      out << "env_fair: " << f.to_string(names) << '\n';
    for (const auto& f : spec.sys_fair)
      out << "sys_fair: " << f.to_string(names) << '\n';
    return out.str();
  }
}
