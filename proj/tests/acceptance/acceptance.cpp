// One line per acceptance criterion: PASS|FAIL <name>: <criterion> measured=<m> tol=<t> (<s> s)
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "hriesz/verify.hpp"

using namespace hriesz;

int main(int argc, char** argv) {
    std::vector<std::string> names;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "-v") {
            verbose = true;
        } else if (is_check_name(a)) {
            names.push_back(a);
        } else {
            std::cerr << "unknown check '" << a << "'; known:";
            for (const auto& n : check_names()) std::cerr << ' ' << n;
            std::cerr << '\n';
            return 2;
        }
    }
    if (names.empty()) names = check_names();

    VerifyOptions opt;
    if (verbose) opt.log = [](const std::string& s) { std::cerr << "  " << s << '\n'; };
    int failed = 0;
    for (const auto& name : names) {
        CheckResult r = run_check(name, opt);
        std::printf("%s %s: %s measured=%.6g tol=%.6g (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.criterion.c_str(), r.measured, r.tolerance, r.seconds);
        for (const auto& [k, v] : r.values) std::printf("    %s = %.6g\n", k.c_str(), v);
        for (const auto& n : r.notes) std::printf("    note: %s\n", n.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    return failed ? 1 : 0;
}
