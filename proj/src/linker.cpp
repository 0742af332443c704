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


#include "jrom/linker.hpp"

#include <set>

#include "jrom/bytecode.hpp"
#include "jrom/error.hpp"

namespace jrom {

namespace {

constexpr std::string_view kObjectName = "java/lang/Object";

}  // namespace

std::optional<Origin> locate_operand(const RuntimePool& pool,
                                     const MethodCode& code,
                                     const PoolOperand& p) {
  switch (p.kind) {
    case OperandKind::VTable8:
    case OperandKind::VTable16:
      return Origin{PoolTable::VTable, static_cast<std::uint16_t>(p.value)};
    case OperandKind::ATable8:
    case OperandKind::ATable16:
      return Origin{PoolTable::ATable, static_cast<std::uint16_t>(p.value)};
    default:
      break;
  }
  if (code.operands == OperandSpace::Raw) {
    if (p.value == 0 || p.value >= pool.origin.size() ||
        pool.origin[p.value].index == 0) {
      return std::nullopt;
    }
    return pool.origin[p.value];
  }
  PoolTable table =
      p.use == PoolUse::Class ? PoolTable::ATable : PoolTable::VTable;
  return Origin{table, static_cast<std::uint16_t>(p.value)};
}

namespace {

std::optional<Origin> locate(const RuntimePool& pool, const MethodCode& code,
                             const PoolOperand& p) {
  return locate_operand(pool, code, p);
}

const AEntry* member_handle(const RuntimePool& pool, const MethodCode& code,
                            std::uint32_t operand) {
  std::uint32_t index = operand;
  if (code.operands == OperandSpace::Raw) {
    if (operand == 0 || operand >= pool.origin.size()) return nullptr;
    const Origin& o = pool.origin[operand];
    if (o.table != PoolTable::VTable || o.index == 0) return nullptr;
    index = o.index;
  }
  if (!pool.in_range(PoolTable::VTable, index)) return nullptr;
  VKind kind = pool.vkind(index);
  if (kind != VKind::FieldRef && kind != VKind::MethodRef &&
      kind != VKind::InterfaceMethodRef) {
    return nullptr;
  }
  std::uint16_t handle = pair_second(pool.v(index));
  if (!pool.in_range(PoolTable::ATable, handle)) return nullptr;
  return &pool.a(handle);
}

bool kind_matches(const RuntimePool& pool, const Origin& o, PoolUse use) {
  if (!pool.in_range(o.table, o.index)) return false;
  if (o.table == PoolTable::ATable) {
    AKind k = pool.a(o.index).kind;
    switch (use) {
      case PoolUse::Class:
      case PoolUse::QuickClass:
        return k == AKind::ClassHandle;
      case PoolUse::QuickString:
        return k == AKind::StringLiteral;
      default:
        return false;
    }
  }
  VKind k = pool.vkind(o.index);
  switch (use) {
    case PoolUse::Loadable:
      return k == VKind::Int || k == VKind::Float || k == VKind::StringRef;
    case PoolUse::Loadable2:
      return k == VKind::Long || k == VKind::Double;
    case PoolUse::Field:
      return k == VKind::FieldRef;
    case PoolUse::Method:
      return k == VKind::MethodRef || k == VKind::InterfaceMethodRef;
    case PoolUse::InterfaceMethod:
      return k == VKind::InterfaceMethodRef;
    case PoolUse::QuickInt:
      return k == VKind::Int;
    case PoolUse::QuickFloat:
      return k == VKind::Float;
    case PoolUse::QuickLong:
      return k == VKind::Long;
    case PoolUse::QuickDouble:
      return k == VKind::Double;
    default:
      return false;
  }
}

[[noreturn]] void verify_error(const MethodRep& m, std::uint32_t pc,
                               const std::string& what) {
  throw Error(ErrorCode::VerifyError,
              m.qualified_name() + " pc " + std::to_string(pc) + ": " + what);
}

bool is_field_access(std::uint8_t opcode) {
  return opcode == op::kGetfield || opcode == op::kPutfield;
}

std::uint16_t remap_index(const RuntimePool& pool, const MethodRep& m,
                          std::uint32_t pc, PoolTable table,
                          std::uint32_t index) {
  const auto& map =
      table == PoolTable::ATable ? pool.remap->atable : pool.remap->vtable;
  std::uint16_t to = index < map.size() ? map[index] : 0;
  if (to == 0) {
    throw Error(ErrorCode::InternalError,
                m.qualified_name() + " pc " + std::to_string(pc) +
                    " references swept " +
                    (table == PoolTable::ATable ? "atable" : "vtable") +
                    " entry " + std::to_string(index));
  }
  return to;
}

}  // namespace

// ------------------------------------------------------------ dependencies

void load_dependencies(ClassRep& cls, Resolver& resolver) {
  // Iterative depth-first walk; the registry breaks cycles because a class
  // already past Unloaded is never revisited.
  std::set<const ClassRep*> visited{&cls};
  std::vector<ClassRep*> stack{&cls};
  while (!stack.empty()) {
    ClassRep* c = stack.back();
    stack.pop_back();
    for (std::uint32_t i = c->pool.atable.size(); i-- > 1;) {
      const AEntry& e = c->pool.atable[i];
      if (e.kind != AKind::ClassHandle) continue;
      ClassRep& dep = resolver.require_loaded(e.class_name);
      if (visited.insert(&dep).second) stack.push_back(&dep);
    }
  }
}

void unify_handles(ClassRep& cls, Resolver& resolver) {
  for (std::uint32_t i = 1; i < cls.pool.atable.size(); ++i) {
    AEntry& e = cls.pool.atable[i];
    if (e.kind != AKind::FieldHandle && e.kind != AKind::MethodHandle) continue;
    if (e.resolved()) continue;
    ClassRep& owner = resolver.require_loaded(e.class_name);
    e.cls = &owner;
    if (e.kind == AKind::FieldHandle) {
      e.field = owner.lookup_field(e.text, e.descriptor);
      if (!e.field) {
        throw Error(ErrorCode::NoSuchField,
                    e.class_name + "." + e.text + ":" + e.descriptor);
      }
      continue;
    }
    e.method = owner.lookup_method(e.text, e.descriptor);
    if (!e.method && (owner.is_interface() || owner.kind() == ClassKind::Array)) {
      e.method = resolver.require_loaded(std::string(kObjectName))
                     .lookup_method(e.text, e.descriptor);
    }
    if (!e.method) {
      throw Error(ErrorCode::NoSuchMethod,
                  e.class_name + "." + e.text + e.descriptor);
    }
  }
}

// ---------------------------------------------------------------- preverify

void preverify(const MethodRep& m, const RuntimePool& pool) {
  if (!m.code) return;
  const MethodCode& code = *m.code;
  std::span<const std::uint8_t> bc(code.bytecode);
  if (bc.empty()) verify_error(m, 0, "empty code");
  std::vector<Instruction> insns;
  try {
    insns = decode(bc);
  } catch (const Error& e) {
    verify_error(m, static_cast<std::uint32_t>(e.offset().value_or(0)),
                 e.what());
  }
  std::vector<bool> starts(bc.size() + 1, false);
  for (const Instruction& insn : insns) starts[insn.pc] = true;
  auto boundary = [&](std::int64_t at) {
    return at >= 0 && at < static_cast<std::int64_t>(bc.size()) && starts[at];
  };

  for (const Instruction& insn : insns) {
    for (std::int64_t target : branch_targets(bc, insn)) {
      if (!boundary(target)) {
        verify_error(m, insn.pc,
                     "branch to " + std::to_string(target) +
                         " is not an instruction boundary");
      }
    }
    std::optional<PoolOperand> p = pool_operand(bc, insn);
    if (!p) continue;
    std::optional<Origin> o = locate(pool, code, *p);
    if (!o || !kind_matches(pool, *o, p->use)) {
      verify_error(m, insn.pc,
                   std::string(op_info(insn.opcode).mnemonic) + " operand " +
                       std::to_string(p->value) + " has the wrong kind");
    }
  }
  for (const ExceptionEntry& e : code.exception_table) {
    bool ok = boundary(e.start_pc) && e.start_pc < e.end_pc &&
              (e.end_pc == bc.size() || boundary(e.end_pc)) &&
              boundary(e.handler_pc);
    if (!ok) verify_error(m, e.handler_pc, "malformed exception range");
    if (e.catch_type != 0 &&
        !kind_matches(pool, {PoolTable::ATable, e.catch_type},
                      PoolUse::Class)) {
      verify_error(m, e.handler_pc, "catch type is not a class");
    }
  }
}

const FieldRep* operand_field(const RuntimePool& pool, const MethodCode& code,
                              std::uint32_t operand) {
  const AEntry* h = member_handle(pool, code, operand);
  return h && h->kind == AKind::FieldHandle ? h->field : nullptr;
}

const MethodRep* operand_method(const RuntimePool& pool,
                                const MethodCode& code,
                                std::uint32_t operand) {
  const AEntry* h = member_handle(pool, code, operand);
  return h && h->kind == AKind::MethodHandle ? h->method : nullptr;
}

// ------------------------------------------------------------- rewrites

bool compact_invokevirtual(std::span<std::uint8_t> bytecode, std::uint32_t pc,
                           const MethodRep& target) {
  if (bytecode[pc] != op::kInvokevirtual || !target.is_virtual() ||
      !target.dispatch_slot || (target.owner && target.owner->is_interface())) {
    return false;
  }
  if (target.nargs >= 256 || *target.dispatch_slot >= 256) return false;
  bytecode[pc] = op::kInvokevirtualQuick;
  bytecode[pc + 1] = static_cast<std::uint8_t>(target.nargs);
  bytecode[pc + 2] = static_cast<std::uint8_t>(*target.dispatch_slot);
  return true;
}

void encode_static_refs(MethodRep& m, const RuntimePool& pool) {
  if (!m.code) return;
  MethodCode& code = *m.code;
  std::span<std::uint8_t> bc(code.bytecode);
  for (const Instruction& insn : decode(bc)) {
    if (insn.opcode != op::kGetstatic && insn.opcode != op::kPutstatic) {
      continue;
    }
    const FieldRep* f = operand_field(pool, code, load_u2(bc, insn.pc + 1));
    // The quick operand names no class, so only the running class's own
    // zones are reachable through it.
    if (!f || !f->placement || f->owner != m.owner) continue;
    bc[insn.pc] = insn.opcode == op::kGetstatic ? op::kGetstaticQuick
                                                : op::kPutstaticQuick;
    store_u2(bc, insn.pc + 1,
             encode_quick_field(f->placement->offset, f->placement->type_code));
  }
}

void rewrite_private_fields(ClassRep& cls, const LinkFlags& flags) {
  for (auto& m : cls.methods) {
    if (!m->code) continue;
    MethodCode& code = *m->code;
    std::span<std::uint8_t> bc(code.bytecode);
    for (const Instruction& insn : decode(bc)) {
      if (!is_field_access(insn.opcode)) continue;
      const FieldRep* f = operand_field(cls.pool, code, load_u2(bc, insn.pc + 1));
      if (!f || f->is_static()) continue;
      bool own_private =
          flags.private_field_opt && f->is_private() && f->owner == &cls;
      bool closed_package =
          !f->is_public() && f->owner && flags.package_closed(f->owner->package());
      if (!(own_private || closed_package || flags.closed_world)) continue;
      bc[insn.pc] = insn.opcode == op::kGetfield ? op::kGetfieldQuick
                                                 : op::kPutfieldQuick;
      store_u2(bc, insn.pc + 1,
               encode_quick_field(f->instance_offset, f->type_code));
    }
  }
}

void mark_reflection(ClassRep& cls, const LinkFlags& flags) {
  if (flags.keeps_reflection()) mark_member_names(cls);
}

void relink_method(MethodRep& m, const RuntimePool& pool) {
  if (!m.code) return;
  MethodCode& code = *m.code;
  if (!pool.remap) {
    throw Error(ErrorCode::InternalError, "relink before pack");
  }
  std::span<std::uint8_t> bc(code.bytecode);
  for (const Instruction& insn : decode(bc)) {
    std::optional<PoolOperand> p = pool_operand(bc, insn);
    if (!p) continue;
    std::optional<Origin> o = locate(pool, code, *p);
    if (!o) {
      throw Error(ErrorCode::InternalError,
                  m.qualified_name() + " pc " + std::to_string(insn.pc) +
                      " operand names no constant");
    }
    std::uint16_t to = remap_index(pool, m, insn.pc, o->table, o->index);
    if (p->width == 1) {
      bc[p->at] = static_cast<std::uint8_t>(to);
    } else {
      store_u2(bc, p->at, to);
    }
  }
  for (ExceptionEntry& e : code.exception_table) {
    if (e.catch_type != 0) {
      e.catch_type =
          remap_index(pool, m, e.handler_pc, PoolTable::ATable, e.catch_type);
    }
  }
  code.operands = OperandSpace::Tables;
}

// -------------------------------------------------------------------- link

void Linker::link(ClassRep& cls) {
  if (cls.state() != LoadState::Loaded) {
    throw Error(ErrorCode::IllegalTransition,
                cls.name() + ": link needs a loaded class, found " +
                    std::string(load_state_name(cls.state())));
  }
  if (cls.kind() != ClassKind::Regular) {
    cls.linked_stats = cls.loaded_stats;
    cls.advance(LoadState::Linked);
    return;
  }
  load_dependencies(cls, resolver_);
  unify_handles(cls, resolver_);
  // Every check runs before the first rewrite so a rejected class stays
  // loaded and intact.
  for (const auto& m : cls.methods) preverify(*m, cls.pool);

  for (auto& m : cls.methods) {
    if (!m->code) continue;
    std::span<std::uint8_t> bc(m->code->bytecode);
    for (const Instruction& insn : decode(bc)) {
      if (insn.opcode != op::kInvokevirtual) continue;
      const MethodRep* target =
          operand_method(cls.pool, *m->code, load_u2(bc, insn.pc + 1));
      if (target) compact_invokevirtual(bc, insn.pc, *target);
    }
    encode_static_refs(*m, cls.pool);
  }
  rewrite_private_fields(cls, flags_);

  clear_marks(cls.pool);
  for (const auto& m : cls.methods) {
    if (m->code) mark_code(*m->code, cls.pool);
  }
  mark_reflection(cls, flags_);

  pack(cls.pool);
  auto remap_text = [&](std::uint16_t& entry) {
    entry = entry < cls.pool.remap->atable.size()
                ? cls.pool.remap->atable[entry]
                : 0;
  };
  for (auto& f : cls.fields) {
    remap_text(f->name_entry);
    remap_text(f->descriptor_entry);
  }
  for (auto& m : cls.methods) {
    relink_method(*m, cls.pool);
    remap_text(m->name_entry);
    remap_text(m->descriptor_entry);
  }
  cls.pool.origin.clear();
  cls.linked_stats = measure_stage(cls);
  cls.advance(LoadState::Linked);
}

}  // namespace jrom
