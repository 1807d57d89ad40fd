#pragma once

#include "gr1rs/strategy.hpp"

#include <stdexcept>
#include <string>

namespace gr1rs
{
  class emit_error : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  /// Width of the state register: max(1, ceil(log2(states))).
  int state_register_width(std::size_t states);

  /// Behavioral Verilog-2001 module with ports clk, rst, the inputs and
  /// the outputs (in declaration order).  State k is encoded as binary k;
  /// reset is synchronous and returns to state 0.
  std::string emit_verilog(const mealy_machine& m, const std::string& name);

  /// GraphViz rendering of a machine.  Edges into states with ok_s = false
  /// are dashed red; states with ok_e = false are filled.
  std::string emit_dot(const mealy_machine& m);
  /// Same conventions for a game; parallel moves are merged per
  /// (source, successor).
  std::string emit_dot(const game& g);

  std::size_t count_lines(const std::string& text);
  bool is_verilog_identifier(const std::string& s);
}
