#include <cstdio>
#include <cstdlib>

#include "planarmaps/checks.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240611;
    int failures = 0;
    planarmaps::run_checks(planarmaps::VerifyLevel::Full, seed, [&](const planarmaps::CheckResult& r) {
        std::printf("criterion %2d %s: %s (%.1f s) %s\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.seconds, r.detail.c_str());
        std::fflush(stdout);
        if (!r.passed) ++failures;
    });
    std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
