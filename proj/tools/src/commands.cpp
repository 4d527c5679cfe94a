#include "trachtenberg/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "trachtenberg/cli/service.hpp"
#include "trachtenberg/errors.hpp"
#include "trachtenberg/opcount.hpp"
#include "trachtenberg/oracle.hpp"
#include "trachtenberg/random.hpp"
#include "trachtenberg/rules.hpp"
#include "trachtenberg/session_store.hpp"
#include "trachtenberg/trace.hpp"

namespace trachtenberg::cli {
namespace {

const std::set<int> kSupportedMultipliers = {3, 4, 5, 6, 7, 8, 9, 11, 12};

std::vector<Multiplier> to_multipliers(const std::vector<int>& values) {
  std::vector<Multiplier> out;
  if (values.empty()) {
    out.assign(Multiplier::all().begin(), Multiplier::all().end());
    return out;
  }
  for (const int value : values) {
    const Multiplier m(value);
    if (std::find(out.begin(), out.end(), m) == out.end()) {
      out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string percent(double ratio) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << ratio * 100.0 << '%';
  return out.str();
}

void print_report(std::ostream& out, std::string_view label, const VerificationReport& report) {
  out << label << ": " << report.cases_run << " cases, " << report.mismatch_count
      << " mismatches, " << report.violation_count << " invariant violations, " << std::fixed
      << std::setprecision(2) << report.duration.count() << " s\n";
  for (const auto& m : report.mismatches) {
    out << "  mismatch: " << m.multiplicand << " x " << m.multiplier << " expected "
        << m.expected << " got " << m.actual << '\n';
  }
  for (const auto& v : report.invariant_violations) {
    out << "  violation: " << v << '\n';
  }
}

struct DrillOptions {
  std::vector<int> multipliers;
  int min_digits = 1;
  int max_digits = 3;
  std::string mode = "guided";
  std::optional<std::uint64_t> seed;
  int problems = 5;
  bool raw = false;
  std::string store;
  bool no_save = false;
  std::string resume;
};

std::optional<std::string> read_answer_line(std::istream& in, std::ostream& out,
                                            std::string_view prompt) {
  std::string line;
  for (;;) {
    out << prompt << std::flush;
    if (!std::getline(in, line)) {
      out << '\n';
      return std::nullopt;
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      continue;
    }
    line = line.substr(first);
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line == "q" || line == "quit") {
      return std::nullopt;
    }
    return line;
  }
}

std::optional<Answer> parse_answer(const std::string& line, AskedValue asked) {
  Answer answer;
  if (asked == AskedValue::FinalProduct) {
    answer.product = line;
    return answer;
  }
  std::string normalized = line;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  int first = 0;
  if (!(in >> first)) {
    return std::nullopt;
  }
  if (asked == AskedValue::RawValue) {
    answer.raw_value = first;
  } else {
    int second = 0;
    if (!(in >> second)) {
      return std::nullopt;
    }
    answer.digit = first;
    answer.carry = second;
  }
  std::string rest;
  if (in >> rest) {
    return std::nullopt;
  }
  return answer;
}

void print_summary(std::ostream& out, const SessionSummary& summary) {
  out << "Summary: " << summary.score.correct << "/" << summary.score.total << " correct";
  if (summary.accuracy) {
    out << " (" << percent(*summary.accuracy) << ")";
  }
  out << (summary.finished ? "" : ", unfinished") << '\n';
  for (const auto& entry : summary.per_multiplier) {
    if (entry.accuracy) {
      out << "  ×" << entry.multiplier << ": " << entry.score.correct << "/" << entry.score.total
          << " (" << percent(*entry.accuracy) << ")\n";
    }
  }
}

int run_drill(const DrillOptions& options, std::istream& in, std::ostream& out) {
  std::optional<std::filesystem::path> directory;
  if (!options.no_save) {
    directory = options.store.empty() ? default_store_directory()
                                      : std::filesystem::path(options.store);
  }
  SessionStore store(directory);

  std::string id = options.resume;
  if (id.empty()) {
    DrillConfig config;
    config.multipliers = to_multipliers(options.multipliers);
    config.min_digits = options.min_digits;
    config.max_digits = options.max_digits;
    config.mode = options.mode == "answer" ? DrillMode::AnswerOnly : DrillMode::GuidedSteps;
    config.seed = options.seed ? *options.seed : std::random_device{}();
    config.problem_count = options.problems;
    config.ask_raw_value = options.raw;
    id = store.create(config);
    out << "Session " << id << " (seed " << config.seed << ")\n";
  } else {
    out << "Resuming session " << id << '\n';
  }

  std::optional<std::size_t> shown_problem;
  while (const auto challenge = store.next(id)) {
    if (shown_problem != challenge->problem_index) {
      shown_problem = challenge->problem_index;
      out << "\nProblem " << challenge->problem_index + 1 << "/" << challenge->problem_count
          << ": " << challenge->multiplicand << " × " << challenge->multiplier << '\n';
    }
    std::string prompt;
    if (challenge->asked == AskedValue::FinalProduct) {
      prompt = "  product> ";
    } else {
      out << "  position " << challenge->position_index << " ("
          << to_string(challenge->role) << "): digit " << challenge->digit << ", neighbour "
          << challenge->neighbour << ", carry in " << challenge->carry_in << '\n';
      prompt = challenge->asked == AskedValue::RawValue ? "  raw value> " : "  digit carry> ";
    }

    std::optional<StepResponse> response;
    while (!response) {
      const auto line = read_answer_line(in, out, prompt);
      if (!line) {
        out << "Stopped.";
        if (directory) {
          out << " Resume with: trachtenberg drill --resume " << id;
        }
        out << '\n';
        print_summary(out, store.summary(id));
        return kExitOk;
      }
      const auto answer = parse_answer(*line, challenge->asked);
      if (!answer) {
        out << "  expected "
            << (challenge->asked == AskedValue::ResultDigitAndCarry ? "two numbers: digit carry"
                                                                    : "a number")
            << '\n';
        continue;
      }
      try {
        response = store.respond(id, challenge->challenge_id, *answer);
      } catch (const ValidationError& e) {
        out << "  " << e.what() << '\n';
      }
    }

    if (response->verdict == Verdict::Correct) {
      out << "  correct   " << response->explanation << '\n';
    } else {
      out << "  incorrect, expected ";
      if (response->expected.product) {
        out << *response->expected.product;
      } else if (response->expected.raw_value) {
        out << *response->expected.raw_value;
      } else {
        out << "digit " << *response->expected.digit << " carry " << *response->expected.carry;
      }
      out << "   " << response->explanation << '\n';
    }
  }
  out << '\n';
  print_summary(out, store.summary(id));
  return kExitOk;
}

}  // namespace

int execute_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"Trachtenberg digit-rule multiplication engine and trainer", "trachtenberg"};
  app.require_subcommand(1);
  app.fallthrough(false);

  const auto multiplier_check = CLI::IsMember(kSupportedMultipliers);

  // compute
  std::string number;
  int by = 0;
  auto* compute = app.add_subcommand("compute", "Print number × multiplier");
  compute->add_option("number", number, "Nonnegative decimal number")->required();
  compute->add_option("--by", by, "Multiplier (3-9, 11, 12)")->required()->check(multiplier_check);

  // trace
  std::string format = "table";
  auto* trace = app.add_subcommand("trace", "Show the worked position-by-position computation");
  trace->add_option("number", number, "Nonnegative decimal number")->required();
  trace->add_option("--by", by, "Multiplier (3-9, 11, 12)")->required()->check(multiplier_check);
  trace->add_option("--format", format, "table or structured")
      ->check(CLI::IsMember({"table", "structured"}));

  // verify
  std::uint64_t max_value = 99999;
  std::size_t random_count = 0;
  std::size_t max_length = 60;
  std::uint64_t seed = 1;
  std::vector<int> verify_by;
  unsigned threads = 0;
  auto* verify = app.add_subcommand("verify", "Check the digit rules against schoolbook multiplication");
  verify->add_option("--max", max_value, "Check every multiplicand 0..max")->capture_default_str();
  verify->add_option("--random", random_count, "Also check this many random multiplicands")
      ->capture_default_str();
  verify->add_option("--max-length", max_length, "Longest random multiplicand")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  verify->add_option("--seed", seed, "Seed for the random cases")->capture_default_str();
  verify->add_option("--by", verify_by, "Multipliers to check (default: all)")
      ->delimiter(',')
      ->check(multiplier_check);
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");

  // bench
  std::vector<std::size_t> lengths = {10, 20, 40};
  std::vector<int> bench_by;
  std::string bench_format = "text";
  bool timing = false;
  auto* bench = app.add_subcommand("bench", "Count elementary operations of both methods");
  bench->add_option("--lengths", lengths, "Multiplicand lengths")
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  bench->add_option("--by", bench_by, "Multipliers (default: all)")
      ->delimiter(',')
      ->check(multiplier_check);
  bench->add_option("--seed", seed, "Seed for the multiplicands")->capture_default_str();
  bench->add_option("--format", bench_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  bench->add_flag("--timing", timing, "Also measure wall-clock time per multiplication");

  // drill
  DrillOptions drill_options;
  std::uint64_t drill_seed = 0;
  auto* drill = app.add_subcommand("drill", "Practise interactively on the terminal");
  drill->add_option("--by", drill_options.multipliers, "Multipliers (default: all)")
      ->delimiter(',')
      ->check(multiplier_check);
  drill->add_option("--min-digits", drill_options.min_digits)->capture_default_str();
  drill->add_option("--max-digits", drill_options.max_digits)->capture_default_str();
  drill->add_option("--mode", drill_options.mode, "guided or answer")
      ->check(CLI::IsMember({"guided", "answer"}));
  auto* drill_seed_option = drill->add_option("--seed", drill_seed, "Problem seed (default: random)");
  drill->add_option("--problems", drill_options.problems)->capture_default_str();
  drill->add_flag("--raw", drill_options.raw, "Also ask for each raw position value");
  drill->add_option("--store", drill_options.store,
                    "Session log directory (default: $TRACHTENBERG_STORE or ./sessions)");
  drill->add_flag("--no-save", drill_options.no_save, "Do not write a session log");
  drill->add_option("--resume", drill_options.resume, "Continue a saved session");

  // serve
  ServiceOptions service_options;
  std::string store_dir;
  std::vector<std::string> origins;
  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON service");
  serve->add_option("--port", service_options.port)->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--host", service_options.host)->capture_default_str();
  serve->add_option("--store", store_dir,
                    "Session log directory (default: $TRACHTENBERG_STORE or ./sessions)");
  serve->add_option("--allow-origin", origins, "Allowed cross-origin request origin (repeatable)");

  if (!args.empty() && !args[0].starts_with('-')) {
    try {
      static_cast<void>(app.get_subcommand(args[0]));
    } catch (const CLI::OptionNotFound&) {
      err << "error: unknown command '" << args[0] << "' (see --help)\n";
      return kExitUsage;
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.back()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    if (message.empty()) {
      message = "invalid command line";
    }
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: " << message << " (see --help)\n";
    return kExitUsage;
  }

  try {
    if (compute->parsed()) {
      out << to_text(multiply_by_rule(parse(number), Multiplier(by)).product) << '\n';
      return kExitOk;
    }
    if (trace->parsed()) {
      const ComputationTrace t = multiply_by_rule(parse(number), Multiplier(by));
      if (format == "structured") {
        out << to_structured(t).dump(2) << '\n';
      } else {
        out << render_table(t);
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      const auto multipliers = to_multipliers(verify_by);
      const auto exhaustive = exhaustive_verify(max_value, multipliers, threads);
      print_report(out, "exhaustive 0.." + std::to_string(max_value), exhaustive);
      bool passed = exhaustive.passed();
      if (random_count > 0) {
        const auto random = random_verify(random_count, max_length, seed, multipliers);
        print_report(out, "random (length 1.." + std::to_string(max_length) + ", seed " +
                              std::to_string(seed) + ")",
                     random);
        passed = passed && random.passed();
      }
      out << (passed ? "PASS" : "FAIL") << '\n';
      return passed ? kExitOk : kExitFailure;
    }
    if (bench->parsed()) {
      const auto multipliers = to_multipliers(bench_by);
      Generator generator(seed);
      std::vector<OpCountReport> reports;
      std::vector<std::string> timing_rows;
      for (const std::size_t length : lengths) {
        for (const Multiplier m : multipliers) {
          const DigitString a = random_multiplicand(generator, length);
          const ComputationTrace t = multiply_by_rule(a, m);
          reports.push_back(count_trace_ops(t));
          reports.push_back(count_schoolbook_ops(a, m));
          if (timing) {
            constexpr int kRepeats = 2000;
            const auto time = [&](auto&& fn) {
              const auto start = std::chrono::steady_clock::now();
              for (int i = 0; i < kRepeats; ++i) fn();
              return std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - start)
                         .count() / kRepeats;
            };
            const double rules_ns = time([&] { return multiply_by_rule(a, m).product.size(); });
            const double school_ns = time([&] { return reference_multiply(a, m.value()).size(); });
            std::ostringstream row;
            row << std::fixed << std::setprecision(1);
            if (bench_format == "csv") {
              row << "Trachtenberg," << length << ',' << m.value() << ',' << rules_ns << '\n'
                  << "Schoolbook," << length << ',' << m.value() << ',' << school_ns;
            } else {
              row << "length " << length << " ×" << m.value() << ": rules+trace " << rules_ns
                  << " ns, schoolbook " << school_ns << " ns";
            }
            timing_rows.push_back(row.str());
          }
        }
      }
      if (bench_format == "csv") {
        out << csv_header() << '\n';
        for (const auto& r : reports) out << to_csv_row(r) << '\n';
        if (timing) {
          out << "\nmethod,multiplicand_length,multiplier,ns_per_multiplication\n";
          for (const auto& row : timing_rows) out << row << '\n';
        }
      } else {
        out << render_reports(reports);
        if (timing) {
          out << "\nwall clock (not part of the cost model):\n";
          for (const auto& row : timing_rows) out << "  " << row << '\n';
        }
      }
      return kExitOk;
    }
    if (drill->parsed()) {
      if (drill_seed_option->count() > 0) {
        drill_options.seed = drill_seed;
      }
      return run_drill(drill_options, in, out);
    }
    if (serve->parsed()) {
      if (!store_dir.empty()) {
        service_options.store_directory = store_dir;
      }
      if (!origins.empty()) {
        service_options.allowed_origins = origins;
      }
      Service service(service_options);
      const int port = service.bind();
      out << "listening on " << service_options.host << ":" << port << " (store "
          << service_options.store_directory.string() << ")" << std::endl;
      service.run();
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace trachtenberg::cli
