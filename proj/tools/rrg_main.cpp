#include "rrg_cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return rrg::cli::run_cli(argc, argv, std::cout, std::cerr);
}
