#include <string>
#include <vector>

#include "cubical/cli.hpp"

int main(int argc, char** argv) {
    return cubical::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
