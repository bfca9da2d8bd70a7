#pragma once

// Text and structured (JSON) renderings of presentations and quotient
// results. Output is deterministic: fixed key order, no timings.

#include <string>

#include "solquo/driver.hpp"
#include "solquo/presentations.hpp"

namespace solquo {

std::string pc_to_json(const PcPresentation& pc);

std::string result_to_text(const FpPresentation& fp, const QuotientResult& result);
std::string result_to_json(const FpPresentation& fp, const QuotientResult& result);

}  // namespace solquo
