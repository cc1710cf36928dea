#include "ocs/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return ocs::run(args, std::cout, std::cerr);
}
