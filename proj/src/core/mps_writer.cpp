#include "mprs/core/mps_writer.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace mprs {
namespace {

std::string col_name(int j) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "C%07d", j);
  return buf;
}

std::string row_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "R%07d", i);
  return buf;
}

// Shortest %g rendering that fits the 12-character value field.
std::string number(double v) {
  char buf[32];
  for (int prec = 12; prec > 1; --prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::string(buf).size() <= 12) break;
  }
  return buf;
}

std::string field_line(const std::string& type, const std::string& name1,
                       const std::string& name2, const std::string& value) {
  char buf[128];
  std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s  %12s", type.c_str(), name1.c_str(),
                name2.c_str(), value.c_str());
  return buf;
}

}  // namespace

void write_mps(std::ostream& out, const MilpModel& model, const std::string& name) {
  const double sign = model.sense() == Sense::kMaximize ? -1.0 : 1.0;
  out << "NAME          " << name << '\n';
  out << "ROWS\n";
  out << " N  COST\n";
  const auto rows = model.constraints();
  for (int i = 0; i < model.num_constraints(); ++i) {
    const char* type = rows[i].relation == Relation::kLessEqual    ? "L"
                       : rows[i].relation == Relation::kGreaterEqual ? "G"
                                                                     : "E";
    out << ' ' << type << "  " << row_name(i) << '\n';
  }

  std::vector<std::vector<std::pair<int, double>>> columns(model.num_vars());
  for (int i = 0; i < model.num_constraints(); ++i) {
    for (const auto& t : rows[i].terms) {
      if (t.coeff != 0.0) columns[t.var].push_back({i, t.coeff});
    }
  }

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < model.num_vars(); ++j) {
    const bool is_bin = model.var(j).kind == VarKind::kBinary;
    if (is_bin && !in_int) {
      out << "    MARKER" << marker << "     'MARKER'                 'INTORG'\n";
      in_int = true;
    } else if (!is_bin && in_int) {
      out << "    MARKER" << marker++ << "     'MARKER'                 'INTEND'\n";
      in_int = false;
    }
    const double c = sign * model.objective()[j];
    if (c != 0.0 || columns[j].empty()) {
      out << field_line("", col_name(j), "COST", number(c)) << '\n';
    }
    for (const auto& [i, a] : columns[j]) {
      out << field_line("", col_name(j), row_name(i), number(a)) << '\n';
    }
  }
  if (in_int) out << "    MARKER" << marker << "     'MARKER'                 'INTEND'\n";

  out << "RHS\n";
  if (model.objective_offset() != 0.0) {
    out << field_line("", "RHS", "COST", number(-sign * model.objective_offset())) << '\n';
  }
  for (int i = 0; i < model.num_constraints(); ++i) {
    if (rows[i].rhs != 0.0) out << field_line("", "RHS", row_name(i), number(rows[i].rhs)) << '\n';
  }

  out << "BOUNDS\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const auto& v = model.var(j);
    const auto cn = col_name(j);
    if (v.kind == VarKind::kBinary) {
      out << field_line("LO", "BND", cn, number(v.lower)) << '\n';
      out << field_line("UP", "BND", cn, number(v.upper)) << '\n';
      continue;
    }
    const bool lo_inf = !std::isfinite(v.lower);
    const bool up_inf = !std::isfinite(v.upper);
    if (lo_inf && up_inf) {
      out << field_line("FR", "BND", cn, "") << '\n';
      continue;
    }
    if (v.lower == v.upper) {
      out << field_line("FX", "BND", cn, number(v.lower)) << '\n';
      continue;
    }
    if (lo_inf) {
      out << field_line("MI", "BND", cn, "") << '\n';
    } else if (v.lower != 0.0) {
      out << field_line("LO", "BND", cn, number(v.lower)) << '\n';
    }
    if (!up_inf) out << field_line("UP", "BND", cn, number(v.upper)) << '\n';
  }
  out << "ENDATA\n";
}

}  // namespace mprs
