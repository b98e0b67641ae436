// Acceptance harness: runs every criterion and prints one pass/fail line per
// criterion.  Exit code 0 only when everything passes.

#include <cstdio>
#include <string>

#include "stratakit/selfcheck.hpp"

int main(int argc, char** argv) {
    stratakit::SelfcheckOptions opts;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--filter" && i + 1 < argc) opts.filter = argv[++i];
        if (arg == "--seed" && i + 1 < argc) opts.seed = static_cast<unsigned>(std::stoul(argv[++i]));
    }
    auto results = stratakit::run_selfcheck(opts);
    bool all_ok = !results.empty();
    int index = 1;
    for (const auto& r : results) {
        std::printf("criterion %2d %-28s [%s]  %.2fs  %s\n", index++, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
        all_ok = all_ok && r.pass;
    }
    return all_ok ? 0 : 1;
}
