#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return cubepaths::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
