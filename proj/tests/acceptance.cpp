#include <cstring>
#include <iostream>

#include <besselsum_cli/suite.hpp>

int main(int argc, char** argv) {
    besselsum::cli::SuiteOptions opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;
    }
    bool all = true;
    for (const auto& r : besselsum::cli::run_suite(opts)) {
        std::cout << besselsum::cli::format_line(r) << '\n';
        all = all && r.passed;
    }
    std::cout << (all ? "all criteria pass" : "some criteria fail") << std::endl;
    return all ? 0 : 1;
}
