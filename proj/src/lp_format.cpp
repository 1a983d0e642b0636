#include <cstdio>
#include <sstream>
#include <string>

#include "mobco/lp.hpp"

namespace mobco::lp {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// LP-format names: letters, digits and a few symbols, not starting with a
// digit or period.
std::string sanitize(const std::string& name, const char* prefix, std::size_t index) {
  if (name.empty()) return prefix + std::to_string(index);
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '(' ||
                    c == ')' || c == ',';
    out += ok ? c : '_';
  }
  if ((out[0] >= '0' && out[0] <= '9') || out[0] == '.') out = "_" + out;
  return out;
}

void write_terms(std::ostringstream& os, const std::vector<Term>& terms,
                 const std::vector<std::string>& names) {
  std::size_t on_line = 0;
  bool first = true;
  for (const Term& t : terms) {
    if (t.coefficient == 0.0) continue;
    os << (t.coefficient < 0 ? " - " : (first ? " " : " + "))
       << num(std::abs(t.coefficient)) << ' ' << names[t.column];
    first = false;
    if (++on_line == 6) {
      os << "\n  ";
      on_line = 0;
    }
  }
  if (first) os << " 0 " << names.front();
}

}  // namespace

std::string to_lp_format(const LinearProgram& lp, const std::string& title) {
  std::vector<std::string> names(lp.num_columns());
  for (std::size_t j = 0; j < names.size(); ++j)
    names[j] = sanitize(lp.column_names()[j], "x", j);
  if (names.empty()) names.push_back("x0");

  std::ostringstream os;
  os << "\\ " << title << "\n";
  os << "Minimize\n obj:";
  std::vector<Term> obj;
  for (std::size_t j = 0; j < lp.num_columns(); ++j)
    if (lp.cost()[j] != 0.0) obj.push_back({j, lp.cost()[j]});
  write_terms(os, obj, names);
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const Row& r = lp.rows()[i];
    os << ' ' << sanitize(r.name, "r", i) << ':';
    write_terms(os, r.terms, names);
    os << (r.sense == Sense::Le ? " <= " : r.sense == Sense::Ge ? " >= " : " = ")
       << num(r.rhs) << "\n";
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < lp.num_columns(); ++j) {
    if (lp.upper()[j])
      os << " 0 <= " << names[j] << " <= " << num(*lp.upper()[j]) << "\n";
  }
  os << "End\n";
  return os.str();
}

}  // namespace mobco::lp
