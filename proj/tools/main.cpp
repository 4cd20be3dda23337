#include <vector>

#include "nsfr/cli.hpp"

int main(int argc, char** argv)
{
    return nsfr::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
