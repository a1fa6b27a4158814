#include <fstream>
#include <iostream>

#include "gerbe/verify/suites.hpp"

int main(int argc, char** argv) {
  using namespace gerbe::verify;
  auto parsed = parse_command_line(argc, argv);
  if (parsed.outcome == ParseOutcome::Exit) return parsed.exit_code;
  const RunConfig& cfg = parsed.config;

  Report report;
  try {
    report = run_command(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "gerbeverify: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gerbeverify: " << e.what() << "\n";
    return 1;
  }

  if (cfg.report_path.empty()) {
    std::cout << render(report);
  } else {
    std::ofstream out(cfg.report_path, std::ios::binary);
    if (!out) {
      std::cerr << "gerbeverify: cannot write " << cfg.report_path << "\n";
      return 2;
    }
    out << render(report);
    print_summary(report, std::cout);
  }
  return report.pass() ? 0 : 1;
}
