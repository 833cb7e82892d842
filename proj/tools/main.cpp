#include <iostream>

#include "cli.hpp"
#include "cdalg/errors.hpp"

int main(int argc, char** argv) {
  using namespace cdalg;
  try {
    const cli::RunConfig config = cli::parse_config(argc, argv);
    const cli::Outcome outcome = cli::run(config);
    cli::emit_report(outcome.report, config.output);
    return outcome.exit_code;
  } catch (const cli::HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const Error& e) {
    std::cerr << "cdalg: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "cdalg: " << e.what() << "\n";
    return 1;
  }
}
