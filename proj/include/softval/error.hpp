/*
 * Copyright (c) 2026, the softval authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace softval {

enum class ErrorKind {
  out_of_range,
  row_sum_violation,
  shape_error,
  domain_error,
  unknown_class,
  tie_error,
  shape_mismatch,
  class_name_mismatch,
  mixed_operator,
  mixed_provenance,
  length_mismatch,
  mixed_measure,
  too_few_groups,
  soft_reference_error,
  infeasible_mae,
  too_large,
  parse_error,
  schema_error,
  io_error,
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::row_sum_violation: return "row_sum_violation";
    case ErrorKind::shape_error: return "shape_error";
    case ErrorKind::domain_error: return "domain_error";
    case ErrorKind::unknown_class: return "unknown_class";
    case ErrorKind::tie_error: return "tie_error";
    case ErrorKind::shape_mismatch: return "shape_mismatch";
    case ErrorKind::class_name_mismatch: return "class_name_mismatch";
    case ErrorKind::mixed_operator: return "mixed_operator";
    case ErrorKind::mixed_provenance: return "mixed_provenance";
    case ErrorKind::length_mismatch: return "length_mismatch";
    case ErrorKind::mixed_measure: return "mixed_measure";
    case ErrorKind::too_few_groups: return "too_few_groups";
    case ErrorKind::soft_reference_error: return "soft_reference_error";
    case ErrorKind::infeasible_mae: return "infeasible_mae";
    case ErrorKind::too_large: return "too_large";
    case ErrorKind::parse_error: return "parse_error";
    case ErrorKind::schema_error: return "schema_error";
    case ErrorKind::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace softval
