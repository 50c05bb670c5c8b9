#include <iostream>
#include <string>

#include "qrs/acceptance.hpp"

int main(int argc, char** argv) {
  qrs::AcceptanceOptions opt;
  bool quiet = argc > 1 && std::string(argv[1]) == "--quiet";
  if (!quiet) opt.log = &std::cerr;
  auto results = qrs::run_acceptance(opt);
  qrs::print_acceptance(std::cout, results, false);
  if (!quiet) {
    std::cout << "\ndetails\n";
    for (const auto& r : results) {
      std::cout << "[" << r.number << "] " << r.title << " (" << static_cast<int>(r.seconds * 1000) << " ms)\n";
      for (const auto& line : r.details) std::cout << "    " << line << '\n';
    }
  }
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}
