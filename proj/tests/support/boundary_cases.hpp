#pragma once

// Pairs of documents straddling each quality threshold at its default
// value. The "at" document sits exactly on the threshold (or on the
// passing side of an integer bound) and must be kept; the "past" document
// is one step beyond and must be removed for the named reason.

#include <ostream>
#include <string>
#include <vector>

#include "twc/document.hpp"
#include "twc/quality.hpp"

namespace twc::test {

enum class Family { kGopher, kC4, kFineWeb };

struct BoundaryCase {
  std::string name;
  Family family;
  Document doc;
  bool expect_keep;
  Reason expected_reason;  // kKept when expect_keep
};

// Keeps gtest from dumping the whole document into parameterized test names.
inline void PrintTo(const BoundaryCase& c, std::ostream* os) { *os << c.name; }

std::vector<BoundaryCase> boundary_cases();

// Runs the case's filter family with the default QualityConfig.
FilterVerdict evaluate(const BoundaryCase& c, const QualityConfig& cfg);

}  // namespace twc::test
