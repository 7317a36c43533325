#pragma once

#include <string>
#include <vector>

#include "fkwave/report.hpp"

namespace fkwave::accept {

struct CriterionResult {
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    Json details;
};

std::vector<std::string> criterion_names();
// seed for the randomized suites (inversion-bound)
void set_seed(unsigned long seed);
CriterionResult run_criterion(const std::string& name);
std::vector<CriterionResult> run_all();

} // namespace fkwave::accept
