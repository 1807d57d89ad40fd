#include "gr1rs/cli.hpp"

#include "gr1rs/benchmarks.hpp"
#include "gr1rs/emit.hpp"
#include "gr1rs/oracle.hpp"
#include "gr1rs/sim.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gr1rs
{
  namespace
  {
    using clock = std::chrono::steady_clock;

    double elapsed_ms(clock::time_point a, clock::time_point b)
    {
      return std::chrono::duration<double, std::milli>(b - a).count();
    }

    build_options options_from_env()
    {
      build_options opts;
      if (const char* cap = std::getenv("GR1RS_STATE_CAP"))
        {
          char* end = nullptr;
          unsigned long long v = std::strtoull(cap, &end, 10);
          if (end == cap || *end != '\0' || v == 0)
            throw std::invalid_argument(std::string("GR1RS_STATE_CAP must be a positive integer, got '")
                                        + cap + "'");
          opts.state_cap = static_cast<std::size_t>(v);
        }
      return opts;
    }

    std::string read_file(const std::string& path)
    {
      std::ifstream in(path, std::ios::binary);
      if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    std::string module_name(const std::string& spec_path)
    {
      std::string stem = std::filesystem::path(spec_path).stem().string();
      return is_verilog_identifier(stem) ? stem : "controller";
    }

    std::string letter_text(std::uint32_t v, const std::vector<std::string>& names)
    {
      std::string s;
      for (std::size_t k = 0; k < names.size(); ++k)
        s += (k ? " " : "") + names[k] + "=" + (((v >> k) & 1) ? "1" : "0");
      return s;
    }

    struct synth_args
    {
      std::string spec;
      bool robust = false;
      bool plain = false;
      std::string verilog;
      std::string dot;
      std::string dump;
      std::string game_dump;
      std::string game_dot;
      std::string record_dump;
      std::string name;
    };

    int cmd_synth(const synth_args& a, std::ostream& out, std::ostream& err)
    {
      const game_mode mode = a.plain ? game_mode::plain : game_mode::robust;
      auto t0 = clock::now();
      gr1_spec spec;
      try
        {
          spec = parse_spec(read_file(a.spec));
        }
      catch (const spec_error& e)
        {
          err << a.spec << ": " << e.what() << "\n";
          return exit_error;
        }
      auto t1 = clock::now();
      game g = build_game(spec, mode, options_from_env());
      auto t2 = clock::now();
      iterate_record rec = main_streett(g);
      auto t3 = clock::now();

      out << "spec: " << a.spec << "\n";
      out << "mode: " << (mode == game_mode::robust ? "robust" : "plain") << "\n";
      out << "game states: " << g.size() << " (moves " << g.num_choices() << ")\n";
      out << "winning states: " << rec.winning.count() << "\n";
      if (!a.game_dump.empty())
        write_text_file(a.game_dump, to_text(game_to_json(g)));
      if (!a.game_dot.empty())
        write_text_file(a.game_dot, emit_dot(g));
      if (!a.record_dump.empty())
        write_text_file(a.record_dump, to_text(record_to_json(rec)));

      strategy st = extract_strategy(g, rec);
      mealy_machine mach;
      try
        {
          mach = strategy_to_mealy(g, st);
        }
      catch (const unrealizable_error& e)
        {
          out << "realizable: no\n";
          if (e.witness_input())
            out << "witness input from the initial state: "
                << letter_text(*e.witness_input(), g.input_names()) << "\n";
          return exit_unrealizable;
        }
      std::string name = a.name.empty() ? module_name(a.spec) : a.name;
      std::string verilog = emit_verilog(mach, name);
      auto t4 = clock::now();

      out << "realizable: yes\n";
      out << "machine states: " << mach.size() << "\n";
      out << "verilog lines: " << count_lines(verilog) << "\n";
      out << std::fixed << std::setprecision(2) << "time ms: parse " << elapsed_ms(t0, t1)
          << ", build " << elapsed_ms(t1, t2) << ", solve " << elapsed_ms(t2, t3)
          << ", extract+emit " << elapsed_ms(t3, t4) << "\n";
      if (!a.verilog.empty())
        write_text_file(a.verilog, verilog);
      if (!a.dot.empty())
        write_text_file(a.dot, emit_dot(mach));
      if (!a.dump.empty())
        write_text_file(a.dump, to_text(machine_to_json(mach)));
      return exit_ok;
    }

    struct bench_args
    {
      std::vector<int> arbiter;
      bool handshake = false;
      bool robust = false;
      bool plain = false;
      std::string csv;
    };

    int cmd_bench(const bench_args& a, std::ostream& out, std::ostream& err)
    {
      if (a.arbiter.empty() && !a.handshake)
        {
          err << "bench: give --arbiter N or --handshake\n";
          return exit_error;
        }
      std::vector<game_mode> modes;
      if (a.plain || !a.robust)
        modes.push_back(game_mode::plain);
      if (a.robust || !a.plain)
        modes.push_back(game_mode::robust);
      const build_options opts = options_from_env();
      std::vector<bench_row> rows;
      for (int n : a.arbiter)
        {
          std::string text = arbiter_spec_text(n);
          for (auto m : modes)
            rows.push_back(run_bench(text, n, m, opts));
        }
      if (a.handshake)
        for (auto m : modes)
          rows.push_back(run_bench(handshake_spec_text(), 1, m, opts));
      std::string csv = bench_csv(rows);
      if (a.csv.empty())
        out << csv;
      else
        {
          write_text_file(a.csv, csv);
          out << "wrote " << rows.size() << " rows to " << a.csv << "\n";
        }
      return exit_ok;
    }

    struct simulate_args
    {
      std::string machine;
      std::string game;
      std::string script;
      std::size_t steps = 100;
      std::uint64_t seed = 1;
      bool table = false;
      std::string trace;
    };

    int cmd_simulate(const simulate_args& a, std::ostream& out)
    {
      mealy_machine m = machine_from_json(read_json_file(a.machine));
      game g = game_from_json(read_json_file(a.game));
      env_script script;
      if (!a.script.empty())
        script = parse_env_script(read_file(a.script), g.input_names());
      trace t = simulate(g, m, script, a.steps, a.seed);
      recovery_report r = recovery_metric(t);
      if (!a.trace.empty())
        write_text_file(a.trace, to_text(trace_to_json(t, m)));
      if (a.table)
        out << report_table(r);
      else
        out << to_text(report_to_json(r));
      return exit_ok;
    }

    struct verify_args
    {
      std::string machine;
      std::string game;
      std::vector<int> pairs;
      bool json_out = false;
    };

    int cmd_verify(const verify_args& a, std::ostream& out)
    {
      mealy_machine m = machine_from_json(read_json_file(a.machine));
      game g = game_from_json(read_json_file(a.game));
      std::optional<std::vector<int>> filter;
      if (!a.pairs.empty())
        {
          for (int k : a.pairs)
            if (k < 1 || static_cast<std::size_t>(k) > g.pairs().size())
              throw std::invalid_argument("verify: pair " + std::to_string(k)
                                          + " does not exist (pairs are numbered from 1)");
          filter.emplace();
          for (int k : a.pairs)
            filter->push_back(k - 1);
        }
      soundness_verdict v = check_strategy_sound(g, m, filter);
      if (a.json_out)
        out << to_text(verdict_to_json(v, m, g));
      else if (v.sound)
        out << "sound (" << v.product_states << " product states)\n";
      else
        {
          out << "violation of pair " << v.violated_pair + 1 << "\n";
          auto print = [&](const char* title, const std::vector<lasso_step>& steps) {
            out << title << ":\n";
            for (const auto& s : steps)
              {
                const auto& gs = g.state(s.game_state);
                out << "  " << m.states[s.machine_state].name << " @" << s.game_state
                    << " ok_e=" << gs.ok_e << " ok_s=" << gs.ok_s << " | "
                    << letter_text(s.input, m.inputs) << " / "
                    << letter_text(s.output, m.outputs) << "\n";
              }
          };
          print("stem", v.stem);
          print("cycle", v.cycle);
        }
      return v.sound ? exit_ok : exit_violation;
    }
  }

  int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
  {
    CLI::App app{"Robust GR(1) synthesis: specification to Mealy machine and Verilog", "gr1rs"};
    app.require_subcommand(1);

    synth_args sa;
    auto* synth = app.add_subcommand("synth", "Synthesize a controller from a spec file");
    synth->add_option("spec", sa.spec, "Specification file")->required();
    auto* rob = synth->add_flag("--robust", sa.robust, "Robust game with error flags (default)");
    synth->add_flag("--plain", sa.plain, "Plain one-pair game")->excludes(rob);
    synth->add_option("-o,--verilog", sa.verilog, "Write Verilog here");
    synth->add_option("--dot", sa.dot, "Write the machine as DOT here");
    synth->add_option("--dump", sa.dump, "Write the machine as JSON here");
    synth->add_option("--game-dump", sa.game_dump, "Write the game as JSON here");
    synth->add_option("--game-dot", sa.game_dot, "Write the game as DOT here");
    synth->add_option("--record-dump", sa.record_dump, "Write the solver iterates as JSON here");
    synth->add_option("--name", sa.name, "Verilog module name (default: spec file stem)");

    bench_args ba;
    auto* bench = app.add_subcommand("bench", "Arbiter / handshake benchmark as CSV");
    bench->add_option("--arbiter", ba.arbiter, "Number of clients (one or more values)")
      ->check(CLI::Range(2, 8));
    bench->add_flag("--handshake", ba.handshake, "Include the handshake example");
    auto* brob = bench->add_flag("--robust", ba.robust, "Only robust mode");
    bench->add_flag("--plain", ba.plain, "Only plain mode")->excludes(brob);
    bench->add_option("--csv", ba.csv, "Write CSV here instead of stdout");

    simulate_args ma;
    auto* simc = app.add_subcommand("simulate", "Closed-loop simulation with fault injection");
    simc->add_option("machine", ma.machine, "Machine JSON dump")->required();
    simc->add_option("game", ma.game, "Game JSON dump")->required();
    simc->add_option("--script", ma.script, "Environment script");
    simc->add_option("--steps", ma.steps, "Number of steps")->check(CLI::PositiveNumber);
    simc->add_option("--seed", ma.seed, "Random seed");
    simc->add_flag("--table", ma.table, "Human-readable report instead of JSON");
    simc->add_option("--trace", ma.trace, "Write the trace as JSON here");

    verify_args va;
    auto* ver = app.add_subcommand("verify", "Model check a machine against a game");
    ver->add_option("machine", va.machine, "Machine JSON dump")->required();
    ver->add_option("game", va.game, "Game JSON dump")->required();
    ver->add_option("--pair", va.pairs, "Only check these pairs (numbered from 1)");
    ver->add_flag("--json", va.json_out, "Print the verdict as JSON");

    int gen_arbiter = 0;
    bool gen_handshake = false;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Print a bundled benchmark specification");
    auto* garb = gen->add_option("--arbiter", gen_arbiter, "Number of clients");
    gen->add_flag("--handshake", gen_handshake, "Handshake example")->excludes(garb);
    gen->add_option("-o,--output", gen_out, "Write here instead of stdout");

    try
      {
        app.parse(argc, argv);
      }
    catch (const CLI::ParseError& e)
      {
        int rc = app.exit(e, out, err);
        return rc == 0 ? exit_ok : exit_error;
      }

    try
      {
        if (*synth)
          return cmd_synth(sa, out, err);
        if (*bench)
          return cmd_bench(ba, out, err);
        if (*simc)
          return cmd_simulate(ma, out);
        if (*ver)
          return cmd_verify(va, out);
        if (*gen)
          {
            if (!gen_handshake && gen_arbiter == 0)
              {
                err << "gen: give --arbiter N or --handshake\n";
                return exit_error;
              }
            std::string text = gen_handshake ? handshake_spec_text()
                                             : arbiter_spec_text(gen_arbiter);
            if (gen_out.empty())
              out << text;
            else
              write_text_file(gen_out, text);
            return exit_ok;
          }
      }
    catch (const std::exception& e)
      {
        err << "error: " << e.what() << "\n";
        return exit_error;
      }
    return exit_error;
  }
}
