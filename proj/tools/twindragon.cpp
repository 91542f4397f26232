#include <iostream>
#include <string>
#include <vector>

#include "twindragon/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return twindragon::cli::run(args, std::cout, std::cerr);
}
