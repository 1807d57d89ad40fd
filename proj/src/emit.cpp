#include "gr1rs/emit.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

namespace gr1rs
{
  namespace
  {
    constexpr std::array<const char*, 44> keywords = {
      "always", "and", "assign", "begin", "buf", "case", "casex", "casez", "default",
      "defparam", "else", "end", "endcase", "endfunction", "endmodule", "endtask", "for",
      "forever", "function", "if", "initial", "inout", "input", "integer", "module", "nand",
      "negedge", "nor", "not", "or", "output", "parameter", "posedge", "real", "reg",
      "repeat", "signed", "task", "time", "wait", "while", "wire", "xnor", "xor"};

    // Characters in declaration order, matching {first, second, ...}.
    std::string bits(std::uint32_t v, int width)
    {
      std::string s;
      for (int k = 0; k < width; ++k)
        s += ((v >> k) & 1) ? '1' : '0';
      return s;
    }

    std::string concat(const std::vector<std::string>& names)
    {
      if (names.size() == 1)
        return names[0];
      std::string s = "{";
      for (std::size_t k = 0; k < names.size(); ++k)
        s += (k ? ", " : "") + names[k];
      return s + "}";
    }

    std::string quote(const std::string& s)
    {
      std::string r = "\"";
      for (char c : s)
        {
          if (c == '"')
            r += '\\';
          r += c;
        }
      return r + "\"";
    }
  }

  bool is_verilog_identifier(const std::string& s)
  {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
      return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'))
        return false;
    return std::find_if(keywords.begin(), keywords.end(),
                        [&](const char* k) { return s == k; })
      == keywords.end();
  }

  int state_register_width(std::size_t states)
  {
    int w = 0;
    while ((std::size_t{1} << w) < states)
      ++w;
    return std::max(1, w);
  }

  std::size_t count_lines(const std::string& text)
  {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  }

  std::string emit_verilog(const mealy_machine& m, const std::string& name)
  {
    if (!is_verilog_identifier(name))
      throw emit_error("emit_verilog: '" + name + "' is not a valid module name");
    m.validate();
    const std::vector<std::string> reserved = {"clk", "rst", "state", "next_state"};
    std::vector<std::string> all = m.inputs;
    all.insert(all.end(), m.outputs.begin(), m.outputs.end());
    for (const auto& s : all)
      {
        if (!is_verilog_identifier(s))
          throw emit_error("emit_verilog: signal '" + s + "' is not a Verilog identifier");
        if (std::find(reserved.begin(), reserved.end(), s) != reserved.end() || s == name)
          throw emit_error("emit_verilog: signal '" + s + "' clashes with a generated name");
      }
    if (m.inputs.empty() || m.outputs.empty())
      throw emit_error("emit_verilog: machine needs at least one input and one output");

    const int w = state_register_width(m.size());
    const int ni_bits = static_cast<int>(m.inputs.size());
    const int no_bits = static_cast<int>(m.outputs.size());
    const std::string sw = std::to_string(w) + "'d";
    std::ostringstream os;
    os << "module " << name << " (\n";
    os << "  input wire clk,\n";
    os << "  input wire rst,\n";
    for (const auto& s : m.inputs)
      os << "  input wire " << s << ",\n";
    for (std::size_t k = 0; k < m.outputs.size(); ++k)
      os << "  output reg " << m.outputs[k] << (k + 1 < m.outputs.size() ? ",\n" : "\n");
    os << ");\n";
    const std::string range = w > 1 ? "[" + std::to_string(w - 1) + ":0] " : "";
    os << "  reg " << range << "state;\n";
    os << "  reg " << range << "next_state;\n";
    os << "\n";
    os << "  always @(posedge clk) begin\n";
    os << "    if (rst)\n";
    os << "      state <= " << sw << "0;\n";
    os << "    else\n";
    os << "      state <= next_state;\n";
    os << "  end\n";
    os << "\n";
    os << "  always @(*) begin\n";
    os << "    next_state = state;\n";
    os << "    " << concat(m.outputs) << " = " << no_bits << "'b" << std::string(no_bits, '0')
       << ";\n";
    os << "    case (state)\n";
    const std::uint32_t ni = m.num_inputs();
    const std::string in_cat = concat(m.inputs);
    const std::string out_cat = concat(m.outputs);
    for (std::uint32_t s = 0; s < m.size(); ++s)
      {
        os << "      " << sw << s << ":\n";
        os << "        case (" << in_cat << ")\n";
        for (std::uint32_t i = 0; i < ni; ++i)
          {
            const auto& t = m.step(s, i);
            os << "          " << ni_bits << "'b" << bits(i, ni_bits) << ": begin next_state = "
               << sw << t.target << "; " << out_cat << " = " << no_bits << "'b"
               << bits(t.output, no_bits) << "; end\n";
          }
        os << "          default: ;\n";
        os << "        endcase\n";
      }
    os << "      default: ;\n";
    os << "    endcase\n";
    os << "  end\n";
    os << "endmodule\n";
    return os.str();
  }

  std::string emit_dot(const mealy_machine& m)
  {
    std::ostringstream os;
    os << "digraph machine {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    const int ni_bits = static_cast<int>(m.inputs.size());
    const int no_bits = static_cast<int>(m.outputs.size());
    for (std::size_t k = 0; k < m.states.size(); ++k)
      {
        const auto& s = m.states[k];
        std::string label = s.name;
        std::string attrs;
        if (s.game_index)
          {
            label += "\\nm=" + std::to_string(s.memory) + " x=" + std::to_string(s.annotation.x)
              + " y=" + std::to_string(s.annotation.y);
            if (!s.annotation.ok_e)
              attrs += ", style=filled, fillcolor=lightcoral";
          }
        os << "  n" << k << " [label=" << quote(label) << attrs << "];\n";
      }
    const std::uint32_t ni = m.inputs.empty() ? 0 : m.num_inputs();
    for (std::uint32_t s = 0; s < m.size() && ni; ++s)
      {
        std::vector<std::uint32_t> order;
        std::map<std::uint32_t, std::vector<std::string>> labels;
        for (std::uint32_t i = 0; i < ni; ++i)
          {
            const auto& t = m.step(s, i);
            if (!labels.count(t.target))
              order.push_back(t.target);
            labels[t.target].push_back(bits(i, ni_bits) + "/" + bits(t.output, no_bits));
          }
        for (auto t : order)
          {
            std::string label;
            for (const auto& l : labels[t])
              label += (label.empty() ? "" : "\\n") + l;
            const auto& ts = m.states[t];
            bool err = ts.game_index && !ts.annotation.ok_s;
            os << "  n" << s << " -> n" << t << " [label=" << quote(label)
               << (err ? ", style=dashed, color=red" : "") << "];\n";
          }
      }
    os << "}\n";
    return os.str();
  }

  std::string emit_dot(const game& g)
  {
    std::ostringstream os;
    os << "digraph game {\n";
    os << "  node [shape=box];\n";
    const int ni_bits = g.num_input_bits();
    const int no_bits = g.num_output_bits();
    for (std::size_t s = 0; s < g.size(); ++s)
      {
        const auto& st = g.state(static_cast<state_index>(s));
        std::string label;
        std::string attrs;
        if (st.kind == state_kind::win_sink)
          label = "WIN_SINK";
        else if (st.kind == state_kind::lose_sink)
          label = "LOSE_SINK";
        else
          {
            label = "s" + std::to_string(s) + " qe=" + std::to_string(st.qe)
              + " qs=" + std::to_string(st.qs) + "\\nx=" + std::to_string(st.x)
              + " y=" + std::to_string(st.y) + " ok_e=" + std::to_string(st.ok_e)
              + " ok_s=" + std::to_string(st.ok_s);
            if (!st.ok_e)
              attrs += ", style=filled, fillcolor=lightcoral";
          }
        if (s == g.initial())
          attrs += ", penwidth=2";
        os << "  n" << s << " [label=" << quote(label) << attrs << "];\n";
      }
    for (std::size_t s = 0; s < g.size(); ++s)
      {
        std::vector<state_index> order;
        std::map<state_index, std::vector<std::string>> labels;
        for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
          for (const auto& c : g.choices(static_cast<state_index>(s), i))
            {
              if (!labels.count(c.successor))
                order.push_back(c.successor);
              auto& v = labels[c.successor];
              std::string l = bits(i, ni_bits) + "/" + bits(c.output, no_bits);
              if (v.empty() || v.back() != l)
                v.push_back(l);
            }
        for (auto t : order)
          {
            const auto& v = labels[t];
            std::string label;
            for (std::size_t k = 0; k < v.size() && k < 4; ++k)
              label += (k ? "\\n" : "") + v[k];
            if (v.size() > 4)
              label += "\\n+" + std::to_string(v.size() - 4) + " more";
            const auto& ts = g.state(t);
            bool err = ts.kind == state_kind::normal && !ts.ok_s;
            os << "  n" << s << " -> n" << t << " [label=" << quote(label)
               << (err ? ", style=dashed, color=red" : "") << "];\n";
          }
      }
    os << "}\n";
    return os.str();
  }
}
