#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace atc {

struct RunConfig {
    std::string command;             /* validate|generators|disks|at|pages|glue */
    std::vector<std::string> inputs; /* one path; glue takes sub, super, map */
    long long cap = 64;
    bool exact = false;
    std::string output = "text"; /* text | json */
    int r_max = 3, p_max = 3;    /* page window */
};

/* Runs one command, writing the report to `out`. Returns 0 on success
   (including an exact infinity), 1 on invalid input, 2 when the result is
   undetermined (capped AT scan) or inconclusive (gluing). */
int run(const RunConfig& cfg, std::ostream& out);

} // namespace atc
