#include <iostream>

#include "reproduce.hpp"

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : TORIC_DATA_DIR;
    std::vector<std::string> only(argv + (argc > 1 ? 2 : 1), argv + argc);
    toric::repro::Fixtures fx(dir);
    int failed = 0;
    for (const auto& o : toric::repro::run_criteria(fx, only)) {
        std::cout << toric::repro::format_outcome(o) << std::endl;
        if (!o.pass) ++failed;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
