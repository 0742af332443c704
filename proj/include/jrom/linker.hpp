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

// Linking: dependency loading, handle unification, structural
// preverification, invokevirtual compaction, static and field reference
// encoding, pool packing and operand remapping.

#ifndef JROM_LINKER_HPP_
#define JROM_LINKER_HPP_

#include <cstdint>
#include <set>
#include <span>
#include <string>

#include "jrom/bytecode.hpp"
#include "jrom/lifecycle.hpp"

namespace jrom {

struct LinkFlags {
  bool introspection = true;
  bool private_field_opt = false;
  std::set<std::string> closed_packages;
  bool closed_world = false;

  bool package_closed(const std::string& package) const {
    return closed_world || closed_packages.count(package) != 0;
  }
  // Member names are kept for reflection only while some class may still
  // be linked against this one.
  bool keeps_reflection() const { return introspection && !closed_world; }
  LoadOptions load_options() const { return {keeps_reflection()}; }
};

class Linker {
 public:
  Linker(Resolver& resolver, LinkFlags flags)
      : resolver_(resolver), flags_(std::move(flags)) {}

  // Loaded (possibly ready) -> Linked. Dependencies are loaded, not linked.
  void link(ClassRep& cls);

  const LinkFlags& flags() const { return flags_; }

 private:
  Resolver& resolver_;
  LinkFlags flags_;
};

// Loads every class named by a ClassHandle of `cls`, depth first.
void load_dependencies(ClassRep& cls, Resolver& resolver);

// Points every member handle at the FieldRep/MethodRep it names.
void unify_handles(ClassRep& cls, Resolver& resolver);

// Structural checks: decoding, branch targets, pool operand kinds,
// exception ranges. Throws VerifyError.
void preverify(const MethodRep& m, const RuntimePool& pool);

// Table location of a pool operand, reading raw operands through the
// pool's origin map. Empty when the operand names nothing.
std::optional<Origin> locate_operand(const RuntimePool& pool,
                                     const MethodCode& code,
                                     const PoolOperand& operand);

// The resolved member behind a Field/Method pool operand, or null.
const FieldRep* operand_field(const RuntimePool& pool, const MethodCode& code,
                              std::uint32_t operand);
const MethodRep* operand_method(const RuntimePool& pool, const MethodCode& code,
                                std::uint32_t operand);

// Rewrites the invokevirtual at `pc` when both bytes fit. Returns whether
// it did.
bool compact_invokevirtual(std::span<std::uint8_t> bytecode, std::uint32_t pc,
                           const MethodRep& target);

// getstatic/putstatic over statics of the method's own class.
void encode_static_refs(MethodRep& m, const RuntimePool& pool);

void rewrite_private_fields(ClassRep& cls, const LinkFlags& flags);

// Re-marks member name/descriptor text when reflection is kept.
void mark_reflection(ClassRep& cls, const LinkFlags& flags);

// Rewrites pool operands through the pool's remap. Throws InternalError on
// an operand naming a swept entry.
void relink_method(MethodRep& m, const RuntimePool& pool);

}  // namespace jrom

#endif  // JROM_LINKER_HPP_
