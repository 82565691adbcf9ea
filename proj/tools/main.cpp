#include "cli_app.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return nthderiv::cli::run(std::move(args), std::cout, std::cerr);
}
