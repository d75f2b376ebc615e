#include <fstream>
#include <iostream>

#include "run.hpp"

int main(int argc, char** argv) {
  using namespace sbk::cli;
  int code = kExitPass;
  const auto config = parse_args(argc, argv, code);
  if (!config) return code;

  const RunResult result = run(*config);
  if (!result.message.empty()) std::cerr << result.message << '\n';
  if (result.exit_code == kExitConfig) return result.exit_code;

  const std::string dest = output_destination(*config);
  if (dest.empty()) {
    std::cout << result.body;
  } else {
    std::ofstream out(dest, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << dest << " for writing\n";
      return kExitConfig;
    }
    out << result.body;
  }
  return result.exit_code;
}
