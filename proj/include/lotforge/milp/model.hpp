#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lotforge::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Integer feasibility tolerance: binaries within this distance of {0,1} are
/// snapped at decode time.
inline constexpr double kIntTol = 1e-5;

enum class VarKind { continuous, binary };
enum class Relation { less_equal, equal, greater_equal };

struct Variable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
  /// Branch-and-bound hint; higher classes are branched first. Plain model
  /// data, so any backend may honor or ignore it.
  int branch_priority = 0;
};

struct LinearTerm {
  int var = -1;
  double coeff = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

/// Minimization MILP held as plain data: named variables, named linear rows,
/// and a linear objective. Builders address variables by the paper-style
/// names ("x[j=2,h=1,t=3]"); names are unique.
class MilpModel {
 public:
  int add_variable(std::string name, VarKind kind, double lower, double upper);
  int add_continuous(std::string name, double lower, double upper);
  int add_binary(std::string name);

  void set_objective(int var, double coeff);
  void add_objective(int var, double coeff);
  void set_branch_priority(int var, int priority);

  /// Adds a row; duplicate variables within `terms` are merged.
  int add_constraint(std::string name, std::vector<LinearTerm> terms, Relation relation,
                     double rhs);
  /// Removes a row by name; throws std::invalid_argument when absent.
  void remove_constraint(const std::string& name);
  bool has_constraint(const std::string& name) const;

  int variable(const std::string& name) const;  ///< throws when unknown
  bool has_variable(const std::string& name) const;

  /// Sets lower = upper = value. Used for binary fixing; kind is unchanged.
  void fix_variable(int var, double value);
  /// Turns a variable continuous with the given bounds.
  void make_continuous(int var, double lower, double upper);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(cons_.size()); }

  /// Sanity check per the model invariants (unique names, binary bounds in
  /// [0,1], rows referencing declared variables). Returns problems, empty
  /// when well formed.
  std::vector<std::string> check() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
  std::unordered_map<std::string, int> var_index_;
  std::unordered_map<std::string, int> con_index_;
};

struct ModelDims {
  int num_constraints = 0;
  int num_continuous = 0;
  int num_binary = 0;
};

/// Exact counts of the emitted model.
ModelDims model_dimensions(const MilpModel& model);

/// Returns a copy with each named binary fixed (lower = upper = value).
/// Throws on unknown names, non-binary targets, or values outside {0,1}.
MilpModel fix_binaries(const MilpModel& model,
                       std::span<const std::pair<std::string, double>> assignments);

/// Returns a copy where each named binary becomes continuous on [0,1].
MilpModel relax_binaries(const MilpModel& model, std::span<const std::string> names);

/// Writes the model in LP file syntax (debugging aid).
void write_lp(const MilpModel& model, std::ostream& out);

}  // namespace lotforge::milp
