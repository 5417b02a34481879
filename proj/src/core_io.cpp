#include <fstream>
#include <stdexcept>

#include "lotforge/core.hpp"

#include <json.hpp>

namespace lotforge {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j.at(r).size()) != cols) {
      throw std::invalid_argument(std::string(what) + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json j;
  j["jobs"] = inst.jobs;
  j["machines"] = inst.machines;
  j["periods"] = inst.periods;
  j["period_length"] = inst.period_length;
  json routes = json::array();
  for (const auto& r : inst.routes) {
    json row = json::array();
    for (int m : r) row.push_back(m + 1);  // 1-based on disk
    routes.push_back(std::move(row));
  }
  j["routes"] = std::move(routes);
  j["proc_rates"] = inst.proc_rates;
  j["learning"] = inst.learning;
  j["demand"] = matrix_to_json(inst.demand);
  j["due"] = matrix_to_json(inst.due);
  j["tc"] = vector_to_json(inst.tardiness_cost);
  j["oc"] = vector_to_json(inst.overtime_cost);
  j["capacity"] = matrix_to_json(inst.capacity);
  j["overtime_limit"] = matrix_to_json(inst.overtime_limit);
  j["R"] = inst.positions;
  return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  Instance inst;
  inst.jobs = j.at("jobs").get<int>();
  inst.machines = j.at("machines").get<int>();
  inst.periods = j.at("periods").get<int>();
  inst.period_length = j.at("period_length").get<double>();
  for (const auto& row : j.at("routes")) {
    std::vector<int> r;
    for (const auto& m : row) r.push_back(m.get<int>() - 1);
    inst.routes.push_back(std::move(r));
  }
  inst.proc_rates = j.at("proc_rates").get<std::vector<std::vector<double>>>();
  inst.learning = j.at("learning").get<std::vector<std::vector<double>>>();
  inst.demand = matrix_from_json(j.at("demand"), "demand");
  inst.due = matrix_from_json(j.at("due"), "due");
  inst.tardiness_cost = vector_from_json(j.at("tc"));
  inst.overtime_cost = vector_from_json(j.at("oc"));
  inst.capacity = matrix_from_json(j.at("capacity"), "capacity");
  inst.overtime_limit = matrix_from_json(j.at("overtime_limit"), "overtime_limit");
  inst.positions = j.at("R").get<int>();
  inst.require_valid();
  return inst;
}

Instance read_instance(const std::string& path) { return instance_from_json(slurp(path)); }

void write_instance(const Instance& inst, const std::string& path) {
  spit(path, instance_to_json(inst));
}

std::string solution_to_json(const Solution& sol) {
  json j;
  j["x"] = sol.x;
  j["s"] = sol.start;
  j["f"] = sol.finish;
  json y = json::array();
  for (const auto& per_job : sol.performed) {
    json jj = json::array();
    for (const auto& per_op : per_job) {
      json hh = json::array();
      for (char v : per_op) hh.push_back(v ? 1 : 0);
      jj.push_back(std::move(hh));
    }
    y.push_back(std::move(jj));
  }
  j["y"] = std::move(y);
  json z = json::array();
  for (const auto& e : sol.sequence) {
    z.push_back({e.job + 1, e.op + 1, e.other_job + 1, e.other_op + 1, e.period + 1});
  }
  j["z"] = std::move(z);
  j["o"] = matrix_to_json(sol.overtime);
  j["objective"] = sol.objective;
  return j.dump(2);
}

Solution solution_from_json(const Instance& inst, const std::string& text) {
  const json j = json::parse(text);
  Solution sol = Solution::zeros(inst);
  sol.x = j.at("x").get<std::vector<std::vector<std::vector<double>>>>();
  sol.start = j.at("s").get<std::vector<std::vector<std::vector<double>>>>();
  sol.finish = j.at("f").get<std::vector<std::vector<std::vector<double>>>>();
  const auto y = j.at("y").get<std::vector<std::vector<std::vector<int>>>>();
  sol.performed.clear();
  for (const auto& per_job : y) {
    std::vector<std::vector<char>> jj;
    for (const auto& per_op : per_job) {
      jj.emplace_back(per_op.begin(), per_op.end());
    }
    sol.performed.push_back(std::move(jj));
  }
  for (const auto& e : j.at("z")) {
    SequenceEntry s;
    s.job = e.at(0).get<int>() - 1;
    s.op = e.at(1).get<int>() - 1;
    s.other_job = e.at(2).get<int>() - 1;
    s.other_op = e.at(3).get<int>() - 1;
    s.period = e.at(4).get<int>() - 1;
    sol.sequence.push_back(s);
  }
  sol.overtime = matrix_from_json(j.at("o"), "o");
  sol.objective = j.at("objective").get<double>();
  if (!sol.matches_dimensions(inst)) {
    throw std::invalid_argument("solution file does not match instance dimensions");
  }
  sol.job_finish = job_finish_times(inst, sol);
  sol.tardiness = compute_tardiness(inst, sol);
  return sol;
}

Solution read_solution(const Instance& inst, const std::string& path) {
  return solution_from_json(inst, slurp(path));
}

void write_solution(const Solution& sol, const std::string& path) {
  spit(path, solution_to_json(sol));
}

}  // namespace lotforge
