#include <iostream>

#include "biblio_cli.hpp"

int main(int argc, char** argv) {
    return biblio::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
