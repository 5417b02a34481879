#include "lotforge/milp/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lotforge::milp {

int MilpModel::add_variable(std::string name, VarKind kind, double lower, double upper) {
  if (name.empty()) throw std::invalid_argument("variable name must not be empty");
  if (var_index_.count(name)) throw std::invalid_argument("duplicate variable name: " + name);
  if (lower > upper) throw std::invalid_argument("variable " + name + " has lower > upper");
  if (kind == VarKind::binary && (lower < 0.0 || upper > 1.0)) {
    throw std::invalid_argument("binary variable " + name + " needs bounds within [0,1]");
  }
  Variable v;
  v.name = std::move(name);
  v.kind = kind;
  v.lower = lower;
  v.upper = upper;
  var_index_.emplace(v.name, static_cast<int>(vars_.size()));
  vars_.push_back(std::move(v));
  return static_cast<int>(vars_.size()) - 1;
}

int MilpModel::add_continuous(std::string name, double lower, double upper) {
  return add_variable(std::move(name), VarKind::continuous, lower, upper);
}

int MilpModel::add_binary(std::string name) {
  return add_variable(std::move(name), VarKind::binary, 0.0, 1.0);
}

void MilpModel::set_objective(int var, double coeff) { vars_.at(var).objective = coeff; }

void MilpModel::add_objective(int var, double coeff) { vars_.at(var).objective += coeff; }

void MilpModel::set_branch_priority(int var, int priority) {
  vars_.at(var).branch_priority = priority;
}

int MilpModel::add_constraint(std::string name, std::vector<LinearTerm> terms, Relation relation,
                              double rhs) {
  if (name.empty()) throw std::invalid_argument("constraint name must not be empty");
  if (con_index_.count(name)) throw std::invalid_argument("duplicate constraint name: " + name);
  // Merge duplicate variables, drop zeros, keep a deterministic order.
  std::sort(terms.begin(), terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
  std::vector<LinearTerm> merged;
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::invalid_argument("constraint " + name + " references undeclared variable");
    }
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const LinearTerm& t) { return t.coeff == 0.0; });
  Constraint c;
  c.name = std::move(name);
  c.terms = std::move(merged);
  c.relation = relation;
  c.rhs = rhs;
  con_index_.emplace(c.name, static_cast<int>(cons_.size()));
  cons_.push_back(std::move(c));
  return static_cast<int>(cons_.size()) - 1;
}

void MilpModel::remove_constraint(const std::string& name) {
  auto it = con_index_.find(name);
  if (it == con_index_.end()) throw std::invalid_argument("no such constraint: " + name);
  const int pos = it->second;
  cons_.erase(cons_.begin() + pos);
  con_index_.erase(it);
  for (auto& [n, i] : con_index_) {
    if (i > pos) --i;
  }
}

bool MilpModel::has_constraint(const std::string& name) const { return con_index_.count(name) > 0; }

int MilpModel::variable(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) throw std::invalid_argument("no such variable: " + name);
  return it->second;
}

bool MilpModel::has_variable(const std::string& name) const { return var_index_.count(name) > 0; }

void MilpModel::fix_variable(int var, double value) {
  auto& v = vars_.at(var);
  if (value < v.lower - 1e-9 || value > v.upper + 1e-9) {
    throw std::invalid_argument("fixing " + v.name + " outside its bounds");
  }
  v.lower = v.upper = value;
}

void MilpModel::make_continuous(int var, double lower, double upper) {
  auto& v = vars_.at(var);
  v.kind = VarKind::continuous;
  v.lower = lower;
  v.upper = upper;
}

std::vector<std::string> MilpModel::check() const {
  std::vector<std::string> out;
  for (const auto& v : vars_) {
    if (v.lower > v.upper) out.push_back("variable " + v.name + " has empty bound interval");
    if (v.kind == VarKind::binary && (v.lower < -kIntTol || v.upper > 1.0 + kIntTol)) {
      out.push_back("binary " + v.name + " has bounds outside [0,1]");
    }
    if (!std::isfinite(v.objective)) out.push_back("objective of " + v.name + " not finite");
  }
  for (const auto& c : cons_) {
    if (!std::isfinite(c.rhs)) out.push_back("rhs of " + c.name + " not finite");
    for (const auto& t : c.terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        out.push_back("row " + c.name + " references undeclared variable");
      } else if (!std::isfinite(t.coeff)) {
        out.push_back("row " + c.name + " has a non-finite coefficient");
      }
    }
  }
  return out;
}

ModelDims model_dimensions(const MilpModel& model) {
  ModelDims dims;
  dims.num_constraints = model.num_constraints();
  for (const auto& v : model.variables()) {
    if (v.kind == VarKind::binary) {
      ++dims.num_binary;
    } else {
      ++dims.num_continuous;
    }
  }
  return dims;
}

MilpModel fix_binaries(const MilpModel& model,
                       std::span<const std::pair<std::string, double>> assignments) {
  MilpModel out = model;
  for (const auto& [name, value] : assignments) {
    const int id = out.variable(name);
    if (out.variables()[id].kind != VarKind::binary) {
      throw std::invalid_argument("fix_binaries: " + name + " is not binary");
    }
    if (std::abs(value) > kIntTol && std::abs(value - 1.0) > kIntTol) {
      throw std::invalid_argument("fix_binaries: value for " + name + " is not 0 or 1");
    }
    out.fix_variable(id, std::round(value));
  }
  return out;
}

MilpModel relax_binaries(const MilpModel& model, std::span<const std::string> names) {
  MilpModel out = model;
  for (const auto& name : names) {
    const int id = out.variable(name);
    if (out.variables()[id].kind != VarKind::binary) {
      throw std::invalid_argument("relax_binaries: " + name + " is not binary");
    }
    // Preserve a tighter fixing if one was applied before relaxing.
    const double lo = std::max(0.0, out.variables()[id].lower);
    const double hi = std::min(1.0, out.variables()[id].upper);
    out.make_continuous(id, lo, hi);
  }
  return out;
}

namespace {

// LP format rejects bare identifiers starting with a digit or 'e'; our names
// are bracketed paper symbols, which the format tolerates after mangling the
// characters it reserves.
std::string lp_name(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char ch : name) {
    switch (ch) {
      case '[': case ']': case ',': case '=': out.push_back('_'); break;
      default: out.push_back(ch);
    }
  }
  return out;
}

void write_terms(std::ostream& out, const MilpModel& model, const std::vector<LinearTerm>& terms) {
  bool first = true;
  for (const auto& t : terms) {
    const double c = t.coeff;
    if (first) {
      out << (c < 0 ? "- " : "") << std::abs(c);
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ") << std::abs(c);
    }
    out << ' ' << lp_name(model.variables()[t.var].name);
  }
  if (first) out << "0 " << lp_name(model.variables().empty() ? "none" : model.variables()[0].name);
}

}  // namespace

void write_lp(const MilpModel& model, std::ostream& out) {
  out << "Minimize\n obj:";
  bool any = false;
  for (const auto& v : model.variables()) {
    if (v.objective == 0.0) continue;
    out << (v.objective < 0 ? " - " : (any ? " + " : " ")) << std::abs(v.objective) << ' '
        << lp_name(v.name);
    any = true;
  }
  if (!any) out << " 0";
  out << "\nSubject To\n";
  for (const auto& c : model.constraints()) {
    out << ' ' << lp_name(c.name) << ": ";
    write_terms(out, model, c.terms);
    switch (c.relation) {
      case Relation::less_equal: out << " <= "; break;
      case Relation::equal: out << " = "; break;
      case Relation::greater_equal: out << " >= "; break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : model.variables()) {
    out << ' ';
    if (v.lower == -kInfinity) {
      out << "-inf";
    } else {
      out << v.lower;
    }
    out << " <= " << lp_name(v.name) << " <= ";
    if (v.upper == kInfinity) {
      out << "+inf";
    } else {
      out << v.upper;
    }
    out << '\n';
  }
  bool has_binary = false;
  for (const auto& v : model.variables()) has_binary |= v.kind == VarKind::binary;
  if (has_binary) {
    out << "Binary\n";
    for (const auto& v : model.variables()) {
      if (v.kind == VarKind::binary) out << ' ' << lp_name(v.name) << '\n';
    }
  }
  out << "End\n";
}

}  // namespace lotforge::milp
