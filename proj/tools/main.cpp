#include "physarum/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return physarum::cli_main(argc, argv, std::cout, std::cerr);
}
