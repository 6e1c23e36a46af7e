#include <iostream>
#include <string>
#include <vector>

#include "lottie/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lottie::run_cli(args, std::cout, std::cerr);
}
