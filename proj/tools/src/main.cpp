#include <iostream>

#include "besselsum_cli/cli.hpp"

int main(int argc, char** argv) {
    const auto result = besselsum::cli::run(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << result.out << std::flush;
    std::cerr << result.err << std::flush;
    return result.exit_code;
}
