#include <iostream>

#include <troplift/cli.hpp>

int main(int argc, char **argv)
{
    return troplift::cli::run_command(argc, argv, std::cout, std::cerr);
}
