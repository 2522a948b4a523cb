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

#include "splatedit/error.hpp"

namespace splatedit {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::io_failure:
      return "io_failure";
    case Errc::malformed:
      return "malformed";
    case Errc::index_out_of_range:
      return "index_out_of_range";
    case Errc::empty_mesh:
      return "empty_mesh";
    case Errc::degenerate:
      return "degenerate";
    case Errc::count_mismatch:
      return "count_mismatch";
    case Errc::topology_mismatch:
      return "topology_mismatch";
    case Errc::shared_vertices:
      return "shared_vertices";
    case Errc::non_finite:
      return "non_finite";
    case Errc::invalid_argument:
      return "invalid_argument";
  }
  return "unknown";
}

}  // namespace splatedit
