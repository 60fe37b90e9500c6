#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "scenopt/control.hpp"
#include "scenopt/cover.hpp"
#include "scenopt/invariant.hpp"

// Plain-text columnar files. Every file starts with a `# scenopt <kind> v1`
// comment, then a header row. Indices in files are 1-based; numbers are
// written in shortest round-trip form.
//
//   cover scenarios:    index,eta,radius
//   control scenarios:  index,a11,a12,a21,a22,radius
//   solutions:          field,value

namespace scenopt {

using ControlScenarios = ScenarioSet<Mat2>;

void write_cover_scenarios(std::ostream& out, const CoverScenarios& set);
CoverScenarios read_cover_scenarios(std::istream& in);

void write_control_scenarios(std::ostream& out, const ControlScenarios& set);
ControlScenarios read_control_scenarios(std::istream& in);

/// center, half_width, binding_low, binding_high, and the invariant indices
/// separated by ';'.
void write_cover_solution(std::ostream& out, const CoverSolution& sol,
                          const InvariantSet& invariant);
/// objective, inputs (stacked order, ';' separated), invariant indices.
void write_control_solution(std::ostream& out, const ControlSolution& sol,
                            const InvariantSet& invariant);

/// Lines of a solution file as (field, value) pairs, comments skipped.
std::vector<std::pair<std::string, std::string>> read_solution_fields(std::istream& in);

}  // namespace scenopt
