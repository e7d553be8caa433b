#include <iostream>

#include "fpt_cli/cli.hpp"

int main(int argc, char** argv)
{
    return fpt::cli::run_cli(argc, argv, std::cout, std::cerr);
}
