#include <iostream>
#include <string>
#include <vector>

#include "cli_app.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    ccov::cli::App app(std::cin, std::cout, std::cerr);
    return app.run(args);
}
