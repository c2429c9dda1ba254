#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "gca/graded.hpp"
#include "gca/products.hpp"

namespace gca {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "gca";
inline constexpr const char* kToolVersion = "1.0.0";

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64(const std::string& bytes);

/// Matrices are rows of [re, im] pairs. Doubles are written in shortest
/// round-trip form, so parse(emit(x)) == x bit for bit.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j, int rows, int cols, const std::string& where);

/// Document "graded-spec/1". Structure morphisms are emitted for strict pairs
/// only; phi(i, i) is implied. With "closure": "chains" only covering pairs
/// are read and the rest are composed.
Json spec_to_json(const GradedSpec& spec, const Json& metadata = Json::object());
GradedSpec spec_from_json(const Json& j);

/// Document "graded-element/1": canonical coordinates per component name;
/// absent components are zero.
Json element_to_json(const GradedSpec& spec, const GradedElement& x);
GradedElement element_from_json(const GradedSpec& spec, const Json& j);

/// Document "finite-group/1".
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

/// Document "graded-action/1", kind "matrices" or "trivial".
Json action_to_json(const GradedAction& act);
GradedAction action_from_json(const Json& j, const FiniteGroup& g, const GradedSpec& spec);

Json parse_json(const std::string& text, const std::string& where);

/// Deterministic report: identical input and seed give identical bytes.
struct Report {
  std::string command;
  std::string input_digest;
  std::uint64_t seed = 0;
  Json checks = Json::array();
  Json result = Json::object();
  std::optional<double> timing_ms;

  void add_check(const std::string& name, bool passed, double max_residual, const std::string& detail = "");
  bool all_passed() const;
  Json to_json() const;
};

Json check_to_json(const CheckResult& c);

}  // namespace gca
