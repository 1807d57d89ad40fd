#pragma once

#include <iosfwd>

namespace gr1rs
{
  enum exit_code : int
  {
    exit_ok = 0,
    exit_error = 1,
    exit_unrealizable = 2,
    exit_violation = 3,
  };

  /// Entry point of the gr1rs command line tool.  Subcommands: synth,
  /// bench, simulate, verify, gen.
  int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
}
