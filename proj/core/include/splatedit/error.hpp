// Copyright 2026 The Splatedit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace splatedit {

/// Fine-grained failure reasons. Each maps onto one of the coarse classes
/// returned by error_class(), which the CLI turns into an exit code.
enum class Errc {
  io_failure,
  malformed,
  index_out_of_range,
  empty_mesh,
  degenerate,
  count_mismatch,
  topology_mismatch,
  shared_vertices,
  non_finite,
  invalid_argument,
};

enum class ErrorClass { io = 2, validation = 3, numeric = 4 };

constexpr ErrorClass error_class(Errc code) {
  switch (code) {
    case Errc::io_failure:
      return ErrorClass::io;
    case Errc::non_finite:
    case Errc::invalid_argument:
      return ErrorClass::numeric;
    default:
      return ErrorClass::validation;
  }
}

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(message), code_(code), index_(index) {}

  Errc code() const { return code_; }
  ErrorClass error_class() const { return splatedit::error_class(code_); }
  /// Item (Gaussian, triangle, face, line) the failure refers to, if any.
  std::optional<std::size_t> index() const { return index_; }

 private:
  Errc code_;
  std::optional<std::size_t> index_;
};

}  // namespace splatedit
