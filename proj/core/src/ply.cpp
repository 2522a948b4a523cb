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

#include "ply.hpp"

#include <iterator>
#include <sstream>

namespace splatedit::ply {

std::size_t type_size(Type t) {
  switch (t) {
    case Type::int8:
    case Type::uint8:
      return 1;
    case Type::int16:
    case Type::uint16:
      return 2;
    case Type::int32:
    case Type::uint32:
    case Type::float32:
      return 4;
    case Type::float64:
      return 8;
  }
  return 0;
}

std::optional<Type> parse_type(std::string_view name) {
  if (name == "char" || name == "int8") return Type::int8;
  if (name == "uchar" || name == "uint8") return Type::uint8;
  if (name == "short" || name == "int16") return Type::int16;
  if (name == "ushort" || name == "uint16") return Type::uint16;
  if (name == "int" || name == "int32") return Type::int32;
  if (name == "uint" || name == "uint32") return Type::uint32;
  if (name == "float" || name == "float32") return Type::float32;
  if (name == "double" || name == "float64") return Type::float64;
  return std::nullopt;
}

std::optional<std::size_t> Element::find(std::string_view property) const {
  for (std::size_t i = 0; i < properties.size(); ++i) {
    if (properties[i].name == property) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Element::fixed_stride() const {
  std::size_t stride = 0;
  for (const auto& p : properties) {
    if (p.is_list) return std::nullopt;
    stride += type_size(p.type);
  }
  return stride;
}

const Element* Header::find(std::string_view element) const {
  for (const auto& e : elements) {
    if (e.name == element) return &e;
  }
  return nullptr;
}

namespace {

[[noreturn]] void header_error(std::size_t line, const std::string& what) {
  throw Error(Errc::malformed, "ply header line " + std::to_string(line) + ": " + what, line);
}

Type require_type(const std::string& name, std::size_t line) {
  auto t = parse_type(name);
  if (!t) header_error(line, "unknown property type '" + name + "'");
  return *t;
}

}  // namespace

Header read_header(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.substr(0, 3) != "ply") header_error(1, "missing 'ply' magic");

  Header header;
  bool have_format = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream words(line);
    std::string keyword;
    words >> keyword;
    if (keyword.empty() || keyword == "comment" || keyword == "obj_info") continue;
    if (keyword == "end_header") {
      if (!have_format) header_error(line_no, "missing format statement");
      return header;
    }
    if (keyword == "format") {
      std::string kind, version;
      words >> kind >> version;
      if (kind != "binary_little_endian") {
        header_error(line_no, "unsupported format '" + kind + "' (need binary_little_endian)");
      }
      have_format = true;
    } else if (keyword == "element") {
      Element e;
      long long count = -1;
      if (!(words >> e.name >> count) || count < 0) header_error(line_no, "bad element statement");
      e.count = static_cast<std::size_t>(count);
      header.elements.push_back(std::move(e));
    } else if (keyword == "property") {
      if (header.elements.empty()) header_error(line_no, "property before any element");
      Property p;
      std::string type;
      words >> type;
      if (type == "list") {
        std::string count_type, item_type;
        words >> count_type >> item_type >> p.name;
        p.is_list = true;
        p.count_type = require_type(count_type, line_no);
        p.type = require_type(item_type, line_no);
      } else {
        p.type = require_type(type, line_no);
        words >> p.name;
      }
      if (p.name.empty()) header_error(line_no, "property without a name");
      header.elements.back().properties.push_back(std::move(p));
    } else {
      header_error(line_no, "unexpected keyword '" + keyword + "'");
    }
  }
  header_error(line_no, "missing end_header");
}

Cursor Cursor::read_rest(std::istream& in) {
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return Cursor(std::move(bytes));
}

const char* Cursor::take(std::size_t n) {
  if (n > remaining()) {
    throw Error(Errc::malformed,
                "truncated ply payload at byte offset " + std::to_string(offset_) + " (needed " +
                    std::to_string(n) + " more bytes, " + std::to_string(remaining()) + " left)",
                offset_);
  }
  const char* p = bytes_.data() + offset_;
  offset_ += n;
  return p;
}

void Cursor::skip(std::size_t n) { take(n); }

namespace {

template <typename T>
T load(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

}  // namespace

double Cursor::scalar(Type t) {
  const char* p = take(type_size(t));
  switch (t) {
    case Type::int8:
      return load<std::int8_t>(p);
    case Type::uint8:
      return load<std::uint8_t>(p);
    case Type::int16:
      return load<std::int16_t>(p);
    case Type::uint16:
      return load<std::uint16_t>(p);
    case Type::int32:
      return load<std::int32_t>(p);
    case Type::uint32:
      return load<std::uint32_t>(p);
    case Type::float32:
      return load<float>(p);
    case Type::float64:
      return load<double>(p);
  }
  return 0.0;
}

std::uint64_t Cursor::count(Type t) {
  const std::size_t at = offset_;
  const double v = scalar(t);
  if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
    throw Error(Errc::malformed, "invalid list count at byte offset " + std::to_string(at), at);
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace splatedit::ply
