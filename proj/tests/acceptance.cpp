#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "acceptance.hpp"

// Usage: acceptance [--threads N] [--seed S] [criterion ids...]
int main(int argc, char** argv) {
    hyperalg::acceptance::Settings st;
    std::vector<std::size_t> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--threads" && i + 1 < argc) {
            st.threads = std::stoul(argv[++i]);
        } else if (a == "--seed" && i + 1 < argc) {
            st.seed = std::stoull(argv[++i]);
        } else {
            only.push_back(std::stoul(a));
        }
    }
    const auto outcomes = hyperalg::acceptance::run_all(st, only, std::cout);
    std::size_t passed = 0;
    for (const auto& o : outcomes) passed += o.pass;
    std::cout << passed << "/" << outcomes.size() << " criteria passed" << std::endl;
    return passed == outcomes.size() ? EXIT_SUCCESS : EXIT_FAILURE;
}
