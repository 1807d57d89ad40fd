#include "gr1rs/benchmarks.hpp"

#include "gr1rs/emit.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

namespace gr1rs
{
  std::string arbiter_spec_text(int n)
  {
    if (n < 2)
      throw std::invalid_argument("arbiter needs at least 2 clients, got " + std::to_string(n));
    if (n > 8)
      throw std::invalid_argument("arbiter supports at most 8 clients");
    std::ostringstream os;
    os << "# " << n << "-client arbiter\n";
    os << "inputs:";
    for (int i = 1; i <= n; ++i)
      os << " r" << i;
    os << "\noutputs:";
    for (int i = 1; i <= n; ++i)
      os << " g" << i;
    os << "\n";
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        os << "env_safety_inv: !(r" << i << " & r" << j << ")\n";
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        os << "sys_safety_inv: !(g" << i << " & g" << j << ")\n";
    for (int i = 1; i <= n; ++i)
      os << "sys_safety_inv: r" << i << " -> X(g" << i << ")\n";
    return os.str();
  }

  std::string handshake_spec_text()
  {
    return "# full handshake\n"
           "inputs: r\n"
           "outputs: g\n"
           "env_safety_inv: (r & !g -> X(r)) & (!r & g -> X(!r))\n"
           "env_fair: !r | !g\n"
           "sys_safety_inv: (!r & !g -> X(!g)) & (r & g -> X(g))\n"
           "sys_fair: (r & g) | (!r & !g)\n";
  }

  bench_row run_bench(const std::string& spec_text, int n, game_mode mode,
                      const build_options& opts)
  {
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::duration d) {
      return std::chrono::duration<double, std::milli>(d).count();
    };
    auto t0 = clock::now();
    gr1_spec spec = parse_spec(spec_text);
    game g = build_game(spec, mode, opts);
    auto t1 = clock::now();
    iterate_record rec = main_streett(g);
    auto t2 = clock::now();
    strategy st = extract_strategy(g, rec);
    mealy_machine mach = strategy_to_mealy(g, st);
    std::string v = emit_verilog(mach, mode == game_mode::robust ? "arbiter_robust" : "arbiter");
    auto t3 = clock::now();

    bench_row row;
    row.n = n;
    row.mode = mode == game_mode::robust ? "robust" : "plain";
    row.states = g.size();
    row.machine_states = mach.size();
    row.verilog_lines = count_lines(v);
    row.solve_ms = ms(t2 - t1);
    row.total_ms = ms(t3 - t0);
    return row;
  }

  std::string bench_csv(const std::vector<bench_row>& rows)
  {
    std::ostringstream os;
    os << "N,mode,states,verilog_lines,solve_ms,total_ms\n";
    os << std::fixed << std::setprecision(3);
    for (const auto& r : rows)
      os << r.n << ',' << r.mode << ',' << r.states << ',' << r.verilog_lines << ','
         << r.solve_ms << ',' << r.total_ms << '\n';
    return os.str();
  }
}
