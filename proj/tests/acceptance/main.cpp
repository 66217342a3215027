#include <algorithm>
#include <iostream>
#include <thread>

#include "acceptance.hpp"

int main(int argc, char** argv)
{
    hbo::acceptance::Options opt;
    opt.fixture_dir = argc > 1 ? argv[1] : HBO_FIXTURE_DIR;
    opt.threads = std::max(1u, std::thread::hardware_concurrency());
    auto results = hbo::acceptance::run_all(opt);
    int failures = hbo::acceptance::report(results, std::cout);
    size_t passed = std::count_if(results.begin(), results.end(), [](auto& r) { return r.pass; });
    std::cout << passed << "/" << results.size() << " criteria passed, " << results.size() - passed - failures
              << " unattainable, " << failures << " failed\n";
    return failures == 0 ? 0 : 1;
}
