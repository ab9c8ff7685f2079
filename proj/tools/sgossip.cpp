#include <iostream>
#include <string>
#include <vector>

#include "sgossip/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sgossip::cli::run(args, std::cout, std::cerr);
}
