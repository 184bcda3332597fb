#include "serrin/acceptance.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

// Usage: acceptance [criterion ids...].  Worker count from SERRIN_WORKERS,
// otherwise the hardware concurrency.
int main(int argc, char** argv) {
    serrin::AcceptanceOptions opts;
    opts.workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* w = std::getenv("SERRIN_WORKERS")) opts.workers = std::max(1, std::atoi(w));
    for (int i = 1; i < argc; ++i) opts.only.push_back(std::stoi(argv[i]));

    const auto results = serrin::run_acceptance(opts, std::cout);
    const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    std::cout << passed << " of " << results.size() << " criteria passed\n";
    return passed == static_cast<long>(results.size()) ? 0 : 1;
}
