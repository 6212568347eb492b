#include <vector>

#include "trilab/cli.hpp"

int main(int argc, char** argv) {
    return trilab::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
