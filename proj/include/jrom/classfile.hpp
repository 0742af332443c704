// Copyright 2026 The jrom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Faithful in-memory mirror of a `.class` file.
//
// The parser keeps everything needed to re-emit the retained parts of the
// file byte-for-byte: the raw constant pool (1-indexed, long/double followed
// by an explicit placeholder slot), members, and attributes. Attributes not
// on the retention whitelist keep only their name and original length.

#ifndef JROM_CLASSFILE_HPP_
#define JROM_CLASSFILE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jrom/bytes.hpp"

namespace jrom {

inline constexpr std::uint32_t kClassMagic = 0xCAFEBABE;
inline constexpr std::uint16_t kMinMajorVersion = 45;
inline constexpr std::uint16_t kMaxMajorVersion = 50;

enum AccessFlag : std::uint16_t {
  kAccPublic = 0x0001,
  kAccPrivate = 0x0002,
  kAccProtected = 0x0004,
  kAccStatic = 0x0008,
  kAccFinal = 0x0010,
  kAccSuper = 0x0020,
  kAccVolatile = 0x0040,
  kAccTransient = 0x0080,
  kAccNative = 0x0100,
  kAccInterface = 0x0200,
  kAccAbstract = 0x0400,
};

enum class ConstantTag : std::uint8_t {
  Placeholder = 0,
  Utf8 = 1,
  Integer = 3,
  Float = 4,
  Long = 5,
  Double = 6,
  Class = 7,
  String = 8,
  Fieldref = 9,
  Methodref = 10,
  InterfaceMethodref = 11,
  NameAndType = 12,
};

std::string_view constant_tag_name(ConstantTag tag);

// One constant-pool slot. Payload fields are used according to `tag`:
//   Utf8                  text (modified UTF-8 bytes, validated)
//   Integer/Float         value (32-bit pattern)
//   Long/Double           value (64-bit pattern)
//   Class/String          first = Utf8 index
//   *ref                  first = Class index, second = NameAndType index
//   NameAndType           first = name index, second = descriptor index
struct RawConstant {
  ConstantTag tag = ConstantTag::Placeholder;
  std::string text;
  std::uint64_t value = 0;
  std::uint16_t first = 0;
  std::uint16_t second = 0;

  bool is_wide() const {
    return tag == ConstantTag::Long || tag == ConstantTag::Double;
  }
};

struct RawAttribute {
  std::uint16_t name_index = 0;
  std::string name;
  std::uint32_t length = 0;        // original payload length
  std::vector<std::uint8_t> payload;  // empty unless retained
  bool retained = false;
  std::size_t file_offset = 0;     // offset of the attribute header
};

struct RawMember {
  std::uint16_t access_flags = 0;
  std::uint16_t name_index = 0;
  std::uint16_t descriptor_index = 0;
  std::vector<RawAttribute> attributes;

  const RawAttribute* find_attribute(std::string_view name) const;
};

struct RawExceptionEntry {
  std::uint16_t start_pc = 0;
  std::uint16_t end_pc = 0;
  std::uint16_t handler_pc = 0;
  std::uint16_t catch_type = 0;  // raw Class index or 0 for catch-all
};

// Decoded `Code` attribute. Nested attributes other than StackMapTable are
// dropped; their header+payload size is accumulated in dropped_bytes.
struct RawCode {
  std::uint16_t max_stack = 0;
  std::uint16_t max_locals = 0;
  std::vector<std::uint8_t> bytecode;
  std::vector<RawExceptionEntry> exception_table;
  std::optional<std::vector<std::uint8_t>> stack_map;
  std::size_t dropped_bytes = 0;
};

struct RawClassFile {
  std::uint16_t minor_version = 0;
  std::uint16_t major_version = 0;
  std::vector<RawConstant> raw_pool;  // size == pool_count; slot 0 unused
  std::uint16_t access_flags = 0;
  std::uint16_t this_class = 0;
  std::uint16_t super_class = 0;
  std::vector<std::uint16_t> interfaces;
  std::vector<RawMember> fields;
  std::vector<RawMember> methods;
  std::vector<RawAttribute> attributes;

  std::size_t file_size = 0;
  std::size_t pool_begin = 0;  // offset of the first constant's tag byte
  std::size_t pool_end = 0;
  std::size_t dropped_attribute_bytes = 0;

  std::size_t pool_count() const { return raw_pool.size(); }
  const RawConstant& at(std::uint16_t index) const;
  const std::string& utf8(std::uint16_t index) const;
  const std::string& class_name(std::uint16_t index) const;
  std::string this_name() const { return class_name(this_class); }
  std::optional<std::string> super_name() const;
};

// Throws Error with BadMagic, Truncated, BadIndex, BadUtf8 or
// UnsupportedVersion.
RawClassFile parse_class(ByteView bytes);

// Decodes a retained Code attribute. Catch types are checked to be Class
// constants.
RawCode parse_code(const RawClassFile& raw, const RawAttribute& code);

std::size_t pool_entry_count(const RawClassFile& raw);
std::size_t raw_pool_byte_size(const RawClassFile& raw);

// Re-serialization of retained content, for round-trip checks against the
// source bytes.
Bytes serialize_pool(const RawClassFile& raw);  // count field + entries
Bytes serialize_attribute(const RawAttribute& attribute);

bool is_valid_modified_utf8(std::string_view bytes);
bool is_retained_attribute(std::string_view name);

}  // namespace jrom

#endif  // JROM_CLASSFILE_HPP_
