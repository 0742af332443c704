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

#include "jrom/classfile.hpp"

#include <array>
#include <initializer_list>

namespace jrom {

namespace {

constexpr std::array<std::string_view, 3> kRetainedAttributes = {
    "Code", "ConstantValue", "StackMapTable"};

std::string describe_index(std::uint16_t index) {
  return "#" + std::to_string(index);
}

class PoolChecker {
 public:
  explicit PoolChecker(const RawClassFile& raw) : raw_(raw) {}

  void expect(std::uint16_t index, std::initializer_list<ConstantTag> tags,
              std::string_view what) const {
    if (index == 0 || index >= raw_.pool_count()) {
      throw Error(ErrorCode::BadIndex, std::string(what) + " " +
                                           describe_index(index) +
                                           " out of range");
    }
    ConstantTag tag = raw_.raw_pool[index].tag;
    for (ConstantTag t : tags) {
      if (t == tag) return;
    }
    throw Error(ErrorCode::BadIndex,
                std::string(what) + " " + describe_index(index) + " is " +
                    std::string(constant_tag_name(tag)));
  }

 private:
  const RawClassFile& raw_;
};

RawConstant read_constant(ClassReader& in, ConstantTag tag) {
  RawConstant c;
  c.tag = tag;
  switch (tag) {
    case ConstantTag::Utf8: {
      std::uint16_t n = in.u2();
      c.text = in.text(n);
      if (!is_valid_modified_utf8(c.text)) {
        throw Error(ErrorCode::BadUtf8, "malformed modified UTF-8",
                    in.pos() - n);
      }
      break;
    }
    case ConstantTag::Integer:
    case ConstantTag::Float:
      c.value = in.u4();
      break;
    case ConstantTag::Long:
    case ConstantTag::Double:
      c.value = in.u8();
      break;
    case ConstantTag::Class:
    case ConstantTag::String:
      c.first = in.u2();
      break;
    case ConstantTag::Fieldref:
    case ConstantTag::Methodref:
    case ConstantTag::InterfaceMethodref:
    case ConstantTag::NameAndType:
      c.first = in.u2();
      c.second = in.u2();
      break;
    case ConstantTag::Placeholder:
      break;
  }
  return c;
}

bool known_tag(std::uint8_t tag) {
  switch (tag) {
    case 1: case 3: case 4: case 5: case 6: case 7: case 8: case 9:
    case 10: case 11: case 12:
      return true;
    default:
      return false;
  }
}

std::vector<RawAttribute> read_attributes(ClassReader& in,
                                          const RawClassFile& raw,
                                          std::size_t& dropped) {
  PoolChecker check(raw);
  std::uint16_t count = in.u2();
  std::vector<RawAttribute> out;
  out.reserve(count);
  for (std::uint16_t i = 0; i < count; ++i) {
    RawAttribute a;
    a.file_offset = in.pos();
    a.name_index = in.u2();
    check.expect(a.name_index, {ConstantTag::Utf8}, "attribute name");
    a.name = raw.raw_pool[a.name_index].text;
    a.length = in.u4();
    a.retained = is_retained_attribute(a.name);
    if (a.retained) {
      ByteView body = in.bytes(a.length);
      a.payload.assign(body.begin(), body.end());
    } else {
      in.skip(a.length);
      dropped += 6 + std::size_t{a.length};
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<RawMember> read_members(ClassReader& in, RawClassFile& raw,
                                    bool is_field) {
  PoolChecker check(raw);
  std::uint16_t count = in.u2();
  std::vector<RawMember> out;
  out.reserve(count);
  for (std::uint16_t i = 0; i < count; ++i) {
    RawMember m;
    m.access_flags = in.u2();
    m.name_index = in.u2();
    m.descriptor_index = in.u2();
    check.expect(m.name_index, {ConstantTag::Utf8}, "member name");
    check.expect(m.descriptor_index, {ConstantTag::Utf8}, "member descriptor");
    m.attributes = read_attributes(in, raw, raw.dropped_attribute_bytes);
    for (const RawAttribute& a : m.attributes) {
      if (a.name == "ConstantValue" && is_field) {
        if (a.payload.size() != 2) {
          throw Error(ErrorCode::BadIndex, "ConstantValue length " +
                                               std::to_string(a.length));
        }
        check.expect(load_u2(a.payload, 0),
                     {ConstantTag::Integer, ConstantTag::Float,
                      ConstantTag::Long, ConstantTag::Double,
                      ConstantTag::String},
                     "ConstantValue");
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

void check_pool_links(const RawClassFile& raw) {
  PoolChecker check(raw);
  for (std::size_t i = 1; i < raw.pool_count(); ++i) {
    const RawConstant& c = raw.raw_pool[i];
    switch (c.tag) {
      case ConstantTag::Class:
      case ConstantTag::String:
        check.expect(c.first, {ConstantTag::Utf8}, "constant");
        break;
      case ConstantTag::Fieldref:
      case ConstantTag::Methodref:
      case ConstantTag::InterfaceMethodref:
        check.expect(c.first, {ConstantTag::Class}, "member class");
        check.expect(c.second, {ConstantTag::NameAndType}, "member type");
        break;
      case ConstantTag::NameAndType:
        check.expect(c.first, {ConstantTag::Utf8}, "name");
        check.expect(c.second, {ConstantTag::Utf8}, "descriptor");
        break;
      default:
        break;
    }
  }
}

}  // namespace

std::string_view constant_tag_name(ConstantTag tag) {
  switch (tag) {
    case ConstantTag::Placeholder: return "Placeholder";
    case ConstantTag::Utf8: return "Utf8";
    case ConstantTag::Integer: return "Integer";
    case ConstantTag::Float: return "Float";
    case ConstantTag::Long: return "Long";
    case ConstantTag::Double: return "Double";
    case ConstantTag::Class: return "Class";
    case ConstantTag::String: return "String";
    case ConstantTag::Fieldref: return "Fieldref";
    case ConstantTag::Methodref: return "Methodref";
    case ConstantTag::InterfaceMethodref: return "InterfaceMethodref";
    case ConstantTag::NameAndType: return "NameAndType";
  }
  return "?";
}

bool is_retained_attribute(std::string_view name) {
  for (std::string_view r : kRetainedAttributes) {
    if (r == name) return true;
  }
  return false;
}

bool is_valid_modified_utf8(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    auto b = static_cast<std::uint8_t>(bytes[i]);
    std::size_t extra;
    if (b == 0 || b >= 0xF0) return false;
    if (b < 0x80) {
      extra = 0;
    } else if ((b & 0xE0) == 0xC0) {
      extra = 1;
    } else if ((b & 0xF0) == 0xE0) {
      extra = 2;
    } else {
      return false;  // stray continuation byte
    }
    if (i + extra >= bytes.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      auto c = static_cast<std::uint8_t>(bytes[i + k]);
      if ((c & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

const RawAttribute* RawMember::find_attribute(std::string_view name) const {
  for (const RawAttribute& a : attributes) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

const RawConstant& RawClassFile::at(std::uint16_t index) const {
  if (index == 0 || index >= raw_pool.size()) {
    throw Error(ErrorCode::BadIndex, describe_index(index) + " out of range");
  }
  return raw_pool[index];
}

const std::string& RawClassFile::utf8(std::uint16_t index) const {
  const RawConstant& c = at(index);
  if (c.tag != ConstantTag::Utf8) {
    throw Error(ErrorCode::BadIndex, describe_index(index) + " is not Utf8");
  }
  return c.text;
}

const std::string& RawClassFile::class_name(std::uint16_t index) const {
  const RawConstant& c = at(index);
  if (c.tag != ConstantTag::Class) {
    throw Error(ErrorCode::BadIndex, describe_index(index) + " is not Class");
  }
  return utf8(c.first);
}

std::optional<std::string> RawClassFile::super_name() const {
  if (super_class == 0) return std::nullopt;
  return class_name(super_class);
}

RawClassFile parse_class(ByteView bytes) {
  ClassReader in(bytes, ErrorCode::Truncated);
  RawClassFile raw;
  raw.file_size = bytes.size();
  if (bytes.size() < 4) {
    throw Error(ErrorCode::Truncated, "input shorter than the magic number", 0);
  }
  if (in.u4() != kClassMagic) {
    throw Error(ErrorCode::BadMagic, "not a class file", 0);
  }
  raw.minor_version = in.u2();
  raw.major_version = in.u2();
  if (raw.major_version < kMinMajorVersion ||
      raw.major_version > kMaxMajorVersion) {
    throw Error(ErrorCode::UnsupportedVersion,
                "major version " + std::to_string(raw.major_version), 6);
  }

  std::uint16_t pool_count = in.u2();
  raw.pool_begin = in.pos();
  raw.raw_pool.resize(pool_count == 0 ? 1 : pool_count);
  for (std::size_t i = 1; i < pool_count; ++i) {
    std::size_t at = in.pos();
    std::uint8_t tag = in.u1();
    if (!known_tag(tag)) {
      throw Error(ErrorCode::BadIndex,
                  "unsupported constant tag " + std::to_string(tag), at);
    }
    raw.raw_pool[i] = read_constant(in, static_cast<ConstantTag>(tag));
    if (raw.raw_pool[i].is_wide()) {
      if (i + 1 >= pool_count) {
        throw Error(ErrorCode::BadIndex, "wide constant in last slot", at);
      }
      ++i;  // explicit placeholder already default-constructed
    }
  }
  raw.pool_end = in.pos();
  check_pool_links(raw);

  PoolChecker check(raw);
  raw.access_flags = in.u2();
  raw.this_class = in.u2();
  check.expect(raw.this_class, {ConstantTag::Class}, "this_class");
  raw.super_class = in.u2();
  if (raw.super_class != 0) {
    check.expect(raw.super_class, {ConstantTag::Class}, "super_class");
  }
  std::uint16_t n_interfaces = in.u2();
  for (std::uint16_t i = 0; i < n_interfaces; ++i) {
    std::uint16_t idx = in.u2();
    check.expect(idx, {ConstantTag::Class}, "interface");
    raw.interfaces.push_back(idx);
  }
  raw.fields = read_members(in, raw, /*is_field=*/true);
  raw.methods = read_members(in, raw, /*is_field=*/false);
  raw.attributes = read_attributes(in, raw, raw.dropped_attribute_bytes);
  return raw;
}

RawCode parse_code(const RawClassFile& raw, const RawAttribute& code) {
  if (!code.retained || code.name != "Code") {
    throw Error(ErrorCode::BadIndex, "not a retained Code attribute");
  }
  RawCode out;
  ClassReader in(code.payload, ErrorCode::Truncated);
  out.max_stack = in.u2();
  out.max_locals = in.u2();
  std::uint32_t length = in.u4();
  ByteView body = in.bytes(length);
  out.bytecode.assign(body.begin(), body.end());
  PoolChecker check(raw);
  std::uint16_t n_handlers = in.u2();
  for (std::uint16_t i = 0; i < n_handlers; ++i) {
    RawExceptionEntry e;
    e.start_pc = in.u2();
    e.end_pc = in.u2();
    e.handler_pc = in.u2();
    e.catch_type = in.u2();
    if (e.catch_type != 0) {
      check.expect(e.catch_type, {ConstantTag::Class}, "catch type");
    }
    out.exception_table.push_back(e);
  }
  std::uint16_t n_attrs = in.u2();
  for (std::uint16_t i = 0; i < n_attrs; ++i) {
    std::uint16_t name_index = in.u2();
    check.expect(name_index, {ConstantTag::Utf8}, "attribute name");
    std::uint32_t len = in.u4();
    ByteView payload = in.bytes(len);
    if (raw.raw_pool[name_index].text == "StackMapTable") {
      out.stack_map.emplace(payload.begin(), payload.end());
    } else {
      out.dropped_bytes += 6 + std::size_t{len};
    }
  }
  return out;
}

std::size_t pool_entry_count(const RawClassFile& raw) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    if (raw.raw_pool[i].tag != ConstantTag::Placeholder) ++n;
  }
  return n;
}

std::size_t raw_pool_byte_size(const RawClassFile& raw) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    const RawConstant& c = raw.raw_pool[i];
    switch (c.tag) {
      case ConstantTag::Placeholder: break;
      case ConstantTag::Utf8: n += 3 + c.text.size(); break;
      case ConstantTag::Integer:
      case ConstantTag::Float: n += 5; break;
      case ConstantTag::Long:
      case ConstantTag::Double: n += 9; break;
      case ConstantTag::Class:
      case ConstantTag::String: n += 3; break;
      default: n += 5; break;
    }
  }
  return n;
}

Bytes serialize_pool(const RawClassFile& raw) {
  ClassWriter out;
  out.u2(static_cast<std::uint16_t>(raw.raw_pool.size()));
  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    const RawConstant& c = raw.raw_pool[i];
    if (c.tag == ConstantTag::Placeholder) continue;
    out.u1(static_cast<std::uint8_t>(c.tag));
    switch (c.tag) {
      case ConstantTag::Utf8:
        out.u2(static_cast<std::uint16_t>(c.text.size()));
        out.text(c.text);
        break;
      case ConstantTag::Integer:
      case ConstantTag::Float:
        out.u4(static_cast<std::uint32_t>(c.value));
        break;
      case ConstantTag::Long:
      case ConstantTag::Double:
        out.u8(c.value);
        break;
      case ConstantTag::Class:
      case ConstantTag::String:
        out.u2(c.first);
        break;
      default:
        out.u2(c.first);
        out.u2(c.second);
        break;
    }
  }
  return std::move(out).take();
}

Bytes serialize_attribute(const RawAttribute& attribute) {
  ClassWriter out;
  out.u2(attribute.name_index);
  out.u4(attribute.length);
  out.bytes(attribute.payload);
  return std::move(out).take();
}

}  // namespace jrom
