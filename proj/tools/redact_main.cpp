#include <iostream>
#include <vector>

#include "redact/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return redact::cli::dispatch(args, std::cout, std::cerr);
}
