#pragma once

#include <ostream>
#include <string>

#include "mprs/core/milp_model.hpp"

namespace mprs {

// Fixed-format MPS export. Maximisation models are written negated so the
// file is always a minimisation; binaries go between INTORG/INTEND markers
// with explicit 0/1 bounds.
void write_mps(std::ostream& out, const MilpModel& model, const std::string& name = "MPRS");

}  // namespace mprs
