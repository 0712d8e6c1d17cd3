// Acceptance suite: one line per criterion, exit status 1 if any fails.
//   acceptance_suite [--only 3,4] [--seed N]

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv)
{
    std::vector<int> only;
    std::uint64_t seed = 20240601;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if ((arg == "--only" || arg == "--seed") && i + 1 < argc) {
            const std::string value = argv[++i];
            if (arg == "--seed") {
                seed = std::strtoull(value.c_str(), nullptr, 10);
                continue;
            }
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                only.push_back(std::stoi(item));
        } else {
            std::cerr << "usage: acceptance_suite [--only ids] [--seed N]\n";
            return 2;
        }
    }
    for (int id : only)
        if (id < 1 || id > homoglab::acceptance::criterion_count) {
            std::cerr << "no criterion " << id << "\n";
            return 2;
        }

    bool all = true;
    for (const auto& r : homoglab::acceptance::run(only, seed)) {
        std::cout << homoglab::acceptance::format(r) << std::endl;
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
