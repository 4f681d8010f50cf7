#pragma once

#include <cstddef>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "l0qp/cover.hpp"
#include "l0qp/decomp.hpp"
#include "l0qp/error.hpp"
#include "l0qp/instance.hpp"

// File formats. Indices are 1-based on disk and 0-based in memory.
//
// Instance:  {"n", "a", "c", "Q": [[i, j, v], ...] with i <= j, "offset",
//             "meta": {"y"?, "M"?}}
// Q follows the (1/2) x'Qx convention: an entry [i, i, v] contributes
// (v/2) x_i^2 and an entry [i, j, v] with i < j contributes v x_i x_j.

namespace l0qp {

using ordered_json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kParseError, where + ": " + what);
}

inline const ordered_json& require(const ordered_json& obj, const char* key,
                                   const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

inline double as_number(const ordered_json& v, const std::string& field) {
  if (!v.is_number()) parse_fail("field " + field, "expected a number");
  return v.get<double>();
}

inline std::vector<double> as_vector(const ordered_json& v, const std::string& field) {
  if (!v.is_array()) parse_fail("field " + field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(as_number(v[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

inline std::size_t as_index(const ordered_json& v, std::size_t n, const std::string& field) {
  if (!v.is_number_integer()) parse_fail("field " + field, "expected an integer index");
  const auto k = v.get<long long>();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    parse_fail("field " + field, "index " + std::to_string(k) + " outside 1.." +
                                     std::to_string(n));
  }
  return static_cast<std::size_t>(k - 1);
}

inline ordered_json parse_text(const std::string& text, const std::string& source) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t k = 0; k < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') ++line;
    }
    parse_fail(source + " line " + std::to_string(line), e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParseError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, path + ": cannot write file");
  out << text;
}

inline ordered_json edge_list(const std::vector<Edge>& edges) {
  ordered_json out = ordered_json::array();
  for (const auto& e : edges) out.push_back({e.u + 1, e.v + 1, e.weight});
  return out;
}

}  // namespace detail

inline ordered_json instance_to_json(const Instance& inst) {
  ordered_json j;
  j["n"] = inst.n;
  j["a"] = inst.a;
  j["c"] = inst.c;
  ordered_json q = ordered_json::array();
  for (const auto& e : inst.q) q.push_back({e.row + 1, e.col + 1, e.value});
  j["Q"] = std::move(q);
  j["offset"] = inst.offset;
  ordered_json meta = ordered_json::object();
  if (inst.meta.observations) meta["y"] = *inst.meta.observations;
  if (inst.meta.big_m) meta["M"] = *inst.meta.big_m;
  j["meta"] = std::move(meta);
  return j;
}

inline Instance instance_from_json(const ordered_json& j, const std::string& source = "instance") {
  if (!j.is_object()) detail::parse_fail(source, "top level must be an object");
  Instance inst;
  const auto& n = detail::require(j, "n", source);
  if (!n.is_number_integer() || n.get<long long>() < 1) {
    detail::parse_fail(source + " field n", "expected a positive integer");
  }
  inst.n = n.get<std::size_t>();
  inst.a = detail::as_vector(detail::require(j, "a", source), "a");
  inst.c = detail::as_vector(detail::require(j, "c", source), "c");
  if (inst.a.size() != inst.n) detail::parse_fail(source + " field a", "length differs from n");
  if (inst.c.size() != inst.n) detail::parse_fail(source + " field c", "length differs from n");
  const auto& q = detail::require(j, "Q", source);
  if (!q.is_array()) detail::parse_fail(source + " field Q", "expected an array of triplets");
  for (std::size_t k = 0; k < q.size(); ++k) {
    const std::string field = "Q[" + std::to_string(k) + "]";
    const auto& t = q[k];
    if (!t.is_array() || t.size() != 3) {
      detail::parse_fail(source + " field " + field, "expected [i, j, value]");
    }
    const auto row = detail::as_index(t[0], inst.n, field + "[0]");
    const auto col = detail::as_index(t[1], inst.n, field + "[1]");
    if (row > col) {
      detail::parse_fail(source + " field " + field,
                         "lower-triangle entry (i > j); store the upper triangle");
    }
    inst.q.push_back({row, col, detail::as_number(t[2], field + "[2]")});
  }
  if (auto it = j.find("offset"); it != j.end()) inst.offset = detail::as_number(*it, "offset");
  if (auto it = j.find("meta"); it != j.end()) {
    if (!it->is_object()) detail::parse_fail(source + " field meta", "expected an object");
    if (auto y = it->find("y"); y != it->end()) {
      inst.meta.observations = detail::as_vector(*y, "meta.y");
    }
    if (auto m = it->find("M"); m != it->end()) {
      inst.meta.big_m = detail::as_number(*m, "meta.M");
    }
  }
  return inst;
}

inline std::string instance_to_string(const Instance& inst) {
  return instance_to_json(inst).dump(1) + "\n";
}

inline Instance instance_from_string(const std::string& text,
                                     const std::string& source = "instance") {
  return instance_from_json(detail::parse_text(text, source), source);
}

inline void write_instance(const Instance& inst, const std::string& path) {
  detail::write_file(path, instance_to_string(inst));
}

inline Instance read_instance(const std::string& path) {
  return instance_from_string(detail::read_file(path), path);
}

struct SolutionReport {
  double objective = 0.0;
  double offset = 0.0;
  std::vector<int> z;
  std::vector<double> x;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> gap;
  std::optional<std::size_t> iters;
};

inline ordered_json solution_to_json(const SolutionReport& s) {
  ordered_json j;
  j["objective"] = s.objective;
  j["objective_with_offset"] = s.objective + s.offset;
  j["z"] = s.z;
  j["x"] = s.x;
  if (s.lower) j["lower"] = *s.lower;
  if (s.upper) j["upper"] = *s.upper;
  if (s.gap) j["gap"] = *s.gap;
  if (s.iters) j["iters"] = *s.iters;
  return j;
}

inline ordered_json ordering_to_json(const Ordering& ord) {
  ordered_json j;
  ordered_json pi = ordered_json::array();
  for (auto v : ord.pi) pi.push_back(v + 1);
  j["ordering"] = std::move(pi);
  j["retained"] = detail::edge_list(ord.retained);
  j["relaxed"] = detail::edge_list(ord.relaxed);
  double kept = 0.0;
  for (const auto& e : ord.retained) kept += e.weight;
  j["retained_weight"] = kept;
  return j;
}

/// Iteration log as CSV. Timing is the only column that varies between runs.
inline void write_iteration_csv(std::ostream& out, const std::vector<IterationRecord>& log) {
  out << "k,lower,upper,gap,step,elapsed_ms\n";
  out << std::setprecision(17);
  for (const auto& r : log) {
    out << r.k << ',' << r.lower << ',' << r.upper << ',' << r.gap << ',' << r.step << ','
        << std::setprecision(6) << r.elapsed_ms << std::setprecision(17) << '\n';
  }
}

}  // namespace l0qp
