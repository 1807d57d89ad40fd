#pragma once

#include "gr1rs/game.hpp"

#include <string>
#include <vector>

namespace gr1rs
{
  /// N-client arbiter: pairwise exclusive requests (assumption), pairwise
  /// exclusive grants and ri -> X(gi) for every client (guarantees).
  /// Throws std::invalid_argument for n < 2.
  std::string arbiter_spec_text(int n);

  /// Full handshake between one request r and one grant g.
  std::string handshake_spec_text();

  struct bench_row
  {
    int n = 0;
    std::string mode;
    std::size_t states = 0;
    std::size_t machine_states = 0;
    std::size_t verilog_lines = 0;
    double solve_ms = 0;
    double total_ms = 0;
  };

  /// Parses, builds, solves, extracts and emits; times the solve and the
  /// whole pipeline.  Throws unrealizable_error / capacity_error.
  bench_row run_bench(const std::string& spec_text, int n, game_mode mode,
                      const build_options& opts = {});

  /// CSV with header N,mode,states,verilog_lines,solve_ms,total_ms.
  std::string bench_csv(const std::vector<bench_row>& rows);
}
