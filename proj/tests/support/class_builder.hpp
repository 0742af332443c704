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

// Hand assembly of small class files for tests.

#ifndef JROM_TESTS_CLASS_BUILDER_HPP_
#define JROM_TESTS_CLASS_BUILDER_HPP_

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "jrom/bytes.hpp"
#include "jrom/classfile.hpp"

namespace jrom::testing {

class Asm {
 public:
  Asm& op(std::uint8_t opcode) { return u1(opcode); }
  Asm& u1(std::uint8_t v) {
    code_.push_back(v);
    return *this;
  }
  Asm& u2(std::uint16_t v) {
    code_.push_back(static_cast<std::uint8_t>(v >> 8));
    code_.push_back(static_cast<std::uint8_t>(v));
    return *this;
  }
  Asm& s2(std::int16_t v) { return u2(static_cast<std::uint16_t>(v)); }
  Asm& u4(std::uint32_t v) {
    u2(static_cast<std::uint16_t>(v >> 16));
    return u2(static_cast<std::uint16_t>(v));
  }
  std::uint32_t pc() const { return static_cast<std::uint32_t>(code_.size()); }
  const Bytes& bytes() const { return code_; }

 private:
  Bytes code_;
};

struct CodeSpec {
  std::uint16_t max_stack = 4;
  std::uint16_t max_locals = 4;
  Bytes bytecode;
  std::vector<RawExceptionEntry> handlers;
};

class ClassBuilder {
 public:
  explicit ClassBuilder(std::string name,
                        std::optional<std::string> super = "java/lang/Object",
                        std::uint16_t flags = kAccPublic | kAccSuper)
      : flags_(flags) {
    this_ = cls(name);
    if (super) super_ = cls(*super);
  }

  std::uint16_t utf8(const std::string& s) {
    return intern({ConstantTag::Utf8, s, 0, 0, 0});
  }
  std::uint16_t cls(const std::string& name) {
    return intern({ConstantTag::Class, {}, 0, utf8(name), 0});
  }
  std::uint16_t string(const std::string& s) {
    return intern({ConstantTag::String, {}, 0, utf8(s), 0});
  }
  std::uint16_t integer(std::int32_t v) {
    return intern({ConstantTag::Integer, {}, static_cast<std::uint32_t>(v), 0, 0});
  }
  std::uint16_t flt(float v) {
    return intern({ConstantTag::Float, {}, std::bit_cast<std::uint32_t>(v), 0, 0});
  }
  std::uint16_t lng(std::int64_t v) {
    return intern({ConstantTag::Long, {}, static_cast<std::uint64_t>(v), 0, 0});
  }
  std::uint16_t dbl(double v) {
    return intern({ConstantTag::Double, {}, std::bit_cast<std::uint64_t>(v), 0, 0});
  }
  std::uint16_t nat(const std::string& name, const std::string& desc) {
    return intern({ConstantTag::NameAndType, {}, 0, utf8(name), utf8(desc)});
  }
  std::uint16_t fieldref(const std::string& owner, const std::string& name,
                         const std::string& desc) {
    return ref(ConstantTag::Fieldref, owner, name, desc);
  }
  std::uint16_t methodref(const std::string& owner, const std::string& name,
                          const std::string& desc) {
    return ref(ConstantTag::Methodref, owner, name, desc);
  }
  std::uint16_t imethodref(const std::string& owner, const std::string& name,
                           const std::string& desc) {
    return ref(ConstantTag::InterfaceMethodref, owner, name, desc);
  }
  // A fresh, never shared Utf8 entry (pads the pool).
  std::uint16_t filler(const std::string& s) {
    return push({ConstantTag::Utf8, s, 0, 0, 0});
  }

  void implement(const std::string& iface) { interfaces_.push_back(cls(iface)); }

  void field(std::uint16_t flags, const std::string& name,
             const std::string& desc,
             std::optional<std::uint16_t> constant = std::nullopt) {
    Member m{flags, utf8(name), utf8(desc), {}};
    if (constant) {
      ClassWriter w;
      w.u2(*constant);
      m.attributes.push_back({utf8("ConstantValue"), w.data()});
    }
    fields_.push_back(std::move(m));
  }

  void method(std::uint16_t flags, const std::string& name,
              const std::string& desc, std::optional<CodeSpec> code) {
    Member m{flags, utf8(name), utf8(desc), {}};
    if (code) {
      ClassWriter w;
      w.u2(code->max_stack);
      w.u2(code->max_locals);
      w.u4(static_cast<std::uint32_t>(code->bytecode.size()));
      w.bytes(code->bytecode);
      w.u2(static_cast<std::uint16_t>(code->handlers.size()));
      for (const auto& h : code->handlers) {
        w.u2(h.start_pc);
        w.u2(h.end_pc);
        w.u2(h.handler_pc);
        w.u2(h.catch_type);
      }
      w.u2(0);
      m.attributes.push_back({utf8("Code"), w.data()});
    }
    methods_.push_back(std::move(m));
  }

  // Default constructor calling Object.<init>.
  void default_init(const std::string& super = "java/lang/Object") {
    std::uint16_t init = methodref(super, "<init>", "()V");
    Asm a;
    a.op(0x2a).op(0xb7).u2(init).op(0xb1);
    method(kAccPublic, "<init>", "()V", CodeSpec{1, 1, a.bytes(), {}});
  }

  Bytes build(std::uint16_t major = 50) const {
    ClassWriter w;
    w.u4(kClassMagic);
    w.u2(0);
    w.u2(major);
    w.u2(static_cast<std::uint16_t>(pool_.size() + 1));
    for (const RawConstant& c : pool_) {
      if (c.tag == ConstantTag::Placeholder) continue;
      w.u1(static_cast<std::uint8_t>(c.tag));
      switch (c.tag) {
        case ConstantTag::Utf8:
          w.u2(static_cast<std::uint16_t>(c.text.size()));
          w.text(c.text);
          break;
        case ConstantTag::Integer:
        case ConstantTag::Float:
          w.u4(static_cast<std::uint32_t>(c.value));
          break;
        case ConstantTag::Long:
        case ConstantTag::Double:
          w.u8(c.value);
          break;
        case ConstantTag::Class:
        case ConstantTag::String:
          w.u2(c.first);
          break;
        default:
          w.u2(c.first);
          w.u2(c.second);
          break;
      }
    }
    w.u2(flags_);
    w.u2(this_);
    w.u2(super_);
    w.u2(static_cast<std::uint16_t>(interfaces_.size()));
    for (std::uint16_t i : interfaces_) w.u2(i);
    for (const auto* members : {&fields_, &methods_}) {
      w.u2(static_cast<std::uint16_t>(members->size()));
      for (const Member& m : *members) {
        w.u2(m.flags);
        w.u2(m.name);
        w.u2(m.desc);
        w.u2(static_cast<std::uint16_t>(m.attributes.size()));
        for (const auto& [name, payload] : m.attributes) {
          w.u2(name);
          w.u4(static_cast<std::uint32_t>(payload.size()));
          w.bytes(payload);
        }
      }
    }
    w.u2(0);
    return w.data();
  }

  std::size_t pool_size() const { return pool_.size(); }

 private:
  struct Member {
    std::uint16_t flags;
    std::uint16_t name;
    std::uint16_t desc;
    std::vector<std::pair<std::uint16_t, Bytes>> attributes;
  };

  using Key = std::tuple<int, std::string, std::uint64_t, int, int>;

  std::uint16_t intern(RawConstant c) {
    Key k{static_cast<int>(c.tag), c.text, c.value, c.first, c.second};
    if (auto it = index_.find(k); it != index_.end()) return it->second;
    std::uint16_t at = push(c);
    index_.emplace(k, at);
    return at;
  }

  std::uint16_t push(RawConstant c) {
    bool wide = c.is_wide();
    pool_.push_back(std::move(c));
    std::uint16_t at = static_cast<std::uint16_t>(pool_.size());
    if (wide) pool_.push_back({});
    return at;
  }

  std::uint16_t ref(ConstantTag tag, const std::string& owner,
                    const std::string& name, const std::string& desc) {
    std::uint16_t c = cls(owner);
    std::uint16_t n = nat(name, desc);
    return intern({tag, {}, 0, c, n});
  }

  std::uint16_t flags_;
  std::uint16_t this_ = 0;
  std::uint16_t super_ = 0;
  std::vector<std::uint16_t> interfaces_;
  std::vector<RawConstant> pool_;
  std::map<Key, std::uint16_t> index_;
  std::vector<Member> fields_;
  std::vector<Member> methods_;
};

// java/lang/Object with an empty constructor and no superclass.
inline Bytes minimal_object() {
  ClassBuilder b("java/lang/Object", std::nullopt);
  Asm a;
  a.op(0xb1);
  b.method(kAccPublic, "<init>", "()V", CodeSpec{0, 1, a.bytes(), {}});
  return b.build();
}

}  // namespace jrom::testing

#endif  // JROM_TESTS_CLASS_BUILDER_HPP_
