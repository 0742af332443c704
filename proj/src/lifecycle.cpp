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

#include "jrom/lifecycle.hpp"

#include <fstream>
#include <iterator>

#include "jrom/bytecode.hpp"
#include "jrom/error.hpp"

namespace jrom {

namespace {

constexpr std::string_view kObjectName = "java/lang/Object";

std::string operand_error(const MethodCode& code, std::uint32_t pc,
                          std::string_view what) {
  (void)code;
  return std::string(what) + " at pc " + std::to_string(pc);
}

}  // namespace

std::string_view load_state_name(LoadState state) {
  switch (state) {
    case LoadState::Unloaded: return "unloaded";
    case LoadState::Loaded: return "loaded";
    case LoadState::Linked: return "linked";
  }
  return "?";
}

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::Unloaded: return "unloaded";
    case Stage::Loaded: return "loaded";
    case Stage::Linked: return "linked";
  }
  return "?";
}

std::uint8_t type_code_of(std::string_view d) {
  if (d.empty()) {
    throw Error(ErrorCode::BadIndex, "empty field descriptor");
  }
  switch (d[0]) {
    case 'L':
    case '[': return kTypeReference;
    case 'I': return kTypeInt;
    case 'F': return kTypeFloat;
    case 'J': return kTypeLong;
    case 'D': return kTypeDouble;
    case 'B':
    case 'Z': return kTypeByte;
    case 'C': return kTypeChar;
    case 'S': return kTypeShort;
    default:
      throw Error(ErrorCode::BadIndex,
                  "bad field descriptor " + std::string(d));
  }
}

std::string MethodRep::qualified_name() const {
  return (owner ? owner->name() : std::string("?")) + "." + name + descriptor;
}

// ---------------------------------------------------------------- ClassRep

ClassRep::ClassRep(std::string name, ClassKind kind)
    : name_(std::move(name)), kind_(kind) {}

void ClassRep::advance(LoadState to) {
  bool legal = (state_ == LoadState::Unloaded && to == LoadState::Loaded) ||
               (state_ == LoadState::Loaded && to == LoadState::Linked);
  if (!legal) {
    throw Error(ErrorCode::IllegalTransition,
                name_ + ": " + std::string(load_state_name(state_)) + " -> " +
                    std::string(load_state_name(to)));
  }
  state_ = to;
}

void ClassRep::set_ready() {
  if (state_ == LoadState::Unloaded) {
    throw Error(ErrorCode::IllegalTransition,
                name_ + ": an unloaded class cannot become ready");
  }
  ready_ = true;
}

std::string ClassRep::package() const {
  std::size_t slash = name_.rfind('/');
  return slash == std::string::npos ? std::string() : name_.substr(0, slash);
}

FieldRep* ClassRep::find_field(std::string_view name,
                               std::string_view descriptor) const {
  for (const auto& f : fields) {
    if (f->name == name && f->descriptor == descriptor) return f.get();
  }
  return nullptr;
}

MethodRep* ClassRep::find_method(std::string_view name,
                                 std::string_view descriptor) const {
  for (const auto& m : methods) {
    if (m->name == name && m->descriptor == descriptor) return m.get();
  }
  return nullptr;
}

FieldRep* ClassRep::lookup_field(std::string_view name,
                                 std::string_view descriptor) const {
  if (FieldRep* f = find_field(name, descriptor)) return f;
  for (const ClassRep* i : interfaces) {
    if (FieldRep* f = i->lookup_field(name, descriptor)) return f;
  }
  return super ? super->lookup_field(name, descriptor) : nullptr;
}

MethodRep* ClassRep::lookup_method(std::string_view name,
                                   std::string_view descriptor) const {
  for (const ClassRep* c = this; c != nullptr; c = c->super) {
    if (MethodRep* m = c->find_method(name, descriptor)) return m;
  }
  for (const ClassRep* c = this; c != nullptr; c = c->super) {
    for (const ClassRep* i : c->interfaces) {
      if (MethodRep* m = i->lookup_method(name, descriptor)) return m;
    }
  }
  return nullptr;
}

bool ClassRep::is_subclass_of(const ClassRep& other) const {
  if (this == &other) return true;
  for (const ClassRep* i : interfaces) {
    if (i->is_subclass_of(other)) return true;
  }
  return super != nullptr && super->is_subclass_of(other);
}

void ClassRep::reset_contents() {
  access_flags = 0;
  super = nullptr;
  interfaces.clear();
  pool = RuntimePool();
  fields.clear();
  methods.clear();
  dispatch_table.clear();
  statics = StaticZones();
  instance_slots = 0;
  unloaded_stats.reset();
  loaded_stats.reset();
  linked_stats.reset();
}

// ----------------------------------------------------------- ClassRegistry

ClassRep& ClassRegistry::new_unloaded(std::string_view name) {
  if (name.empty()) {
    throw Error(ErrorCode::InvalidName, "empty class name");
  }
  std::lock_guard lock(mu_);
  auto it = classes_.find(name);
  if (it != classes_.end()) return *it->second;
  ClassKind kind = is_array_name(name)       ? ClassKind::Array
                   : is_primitive_name(name) ? ClassKind::Primitive
                                             : ClassKind::Regular;
  auto cls = std::make_unique<ClassRep>(std::string(name), kind);
  ClassRep& ref = *cls;
  classes_.emplace(std::string(name), std::move(cls));
  return ref;
}

ClassRep* ClassRegistry::find(std::string_view name) const {
  std::lock_guard lock(mu_);
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : it->second.get();
}

std::vector<ClassRep*> ClassRegistry::classes() const {
  std::lock_guard lock(mu_);
  std::vector<ClassRep*> out;
  out.reserve(classes_.size());
  for (const auto& [name, cls] : classes_) out.push_back(cls.get());
  return out;
}

ClassRep& ClassRegistry::adopt(std::unique_ptr<ClassRep> cls) {
  std::lock_guard lock(mu_);
  ClassRep& ref = *cls;
  classes_[cls->name()] = std::move(cls);
  return ref;
}

// ----------------------------------------------------------------- sources

DirectorySource::DirectorySource(std::filesystem::path root)
    : root_(std::move(root)) {
  if (!std::filesystem::is_directory(root_)) {
    throw Error(ErrorCode::Io, "classpath entry not found: " + root_.string());
  }
}

std::optional<Bytes> DirectorySource::find(
    const std::string& binary_name) const {
  std::filesystem::path file = root_ / (binary_name + ".class");
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  return Bytes(std::istreambuf_iterator<char>(in),
               std::istreambuf_iterator<char>());
}

void MemorySource::add(std::string binary_name, Bytes bytes) {
  files_[std::move(binary_name)] = std::move(bytes);
}

std::optional<Bytes> MemorySource::find(const std::string& binary_name) const {
  auto it = files_.find(binary_name);
  if (it == files_.end()) return std::nullopt;
  return it->second;
}

void ClassPath::add(std::shared_ptr<const ClassSource> source) {
  sources_.push_back(std::move(source));
}

void ClassPath::add_directory(const std::filesystem::path& dir) {
  sources_.push_back(std::make_shared<DirectorySource>(dir));
}

std::optional<Bytes> ClassPath::find(const std::string& binary_name) const {
  for (const auto& s : sources_) {
    if (auto bytes = s->find(binary_name)) return bytes;
  }
  return std::nullopt;
}

// ------------------------------------------------------------- ClassLoader

bool is_array_name(std::string_view name) {
  return !name.empty() && name[0] == '[';
}

bool is_primitive_name(std::string_view name) {
  return name.size() == 1 && std::string_view("BCDFIJSZV").find(name[0]) !=
                                 std::string_view::npos;
}

void synthesize(ClassRep& cls, ClassRep* object_class) {
  if (cls.state() != LoadState::Unloaded) return;
  cls.access_flags = kAccPublic | kAccFinal;
  if (cls.kind() == ClassKind::Array) {
    cls.super = object_class;
    if (object_class) cls.dispatch_table = object_class->dispatch_table;
  }
  StageStats zero;
  cls.unloaded_stats = zero;
  cls.loaded_stats = zero;
  cls.advance(LoadState::Loaded);
  cls.set_ready();
}

ClassLoader::ClassLoader(ClassRegistry& registry, ClassPath classpath,
                         LoadOptions options)
    : registry_(registry),
      classpath_(std::move(classpath)),
      options_(options) {}

ClassRep& ClassLoader::handle(const std::string& name) {
  ClassRep& cls = registry_.new_unloaded(name);
  if (cls.kind() != ClassKind::Regular && cls.state() == LoadState::Unloaded) {
    ClassRep* object = registry_.find(kObjectName);
    synthesize(cls, object && object->state() != LoadState::Unloaded ? object
                                                                     : nullptr);
  }
  return cls;
}

ClassRep& ClassLoader::require_loaded(const std::string& name) {
  std::lock_guard lock(mu_);
  ClassRep& cls = handle(name);
  if (cls.kind() == ClassKind::Array && cls.super == nullptr &&
      name != kObjectName) {
    if (classpath_.find(std::string(kObjectName))) {
      cls.super = &require_loaded(std::string(kObjectName));
      cls.dispatch_table = cls.super->dispatch_table;
    }
  }
  if (cls.state() != LoadState::Unloaded) return cls;
  if (cls.loading) {
    throw Error(ErrorCode::HierarchyCycle,
                "class " + name + " is its own ancestor");
  }
  std::optional<Bytes> bytes = classpath_.find(name);
  if (!bytes) {
    throw Error(ErrorCode::ClassNotFound, name);
  }
  load(cls, *bytes, *this, options_);
  return cls;
}

// -------------------------------------------------------------------- load

void lay_out_statics(ClassRep& cls) {
  std::uint32_t a_next = 0;
  std::uint32_t v_next = 0;
  for (auto& f : cls.fields) {
    if (!f->is_static()) continue;
    StaticPlacement p;
    p.type_code = f->type_code;
    std::uint32_t& next = f->type_code == kTypeReference ? a_next : v_next;
    p.zone = f->type_code == kTypeReference ? Zone::A : Zone::V;
    if (next >= kStaticOffsetLimit) {
      throw Error(ErrorCode::StaticOverflow,
                  cls.name() + "." + f->name + " needs static offset " +
                      std::to_string(next));
    }
    p.offset = static_cast<std::uint16_t>(next);
    next += f->slots();
    f->placement = p;
  }
  cls.statics.a.assign(a_next, 0);
  cls.statics.v.assign(v_next, 0);
}

namespace {

void lay_out_instance_fields(ClassRep& cls) {
  std::uint32_t next = cls.super ? cls.super->instance_slots : 0;
  for (auto& f : cls.fields) {
    if (f->is_static()) continue;
    f->instance_offset = static_cast<std::uint16_t>(next);
    next += f->slots();
  }
  cls.instance_slots = next;
}

std::optional<ConstantInit> constant_init(const RawClassFile& raw,
                                          const RawMember& member) {
  const RawAttribute* attr = member.find_attribute("ConstantValue");
  if (!attr || !(member.access_flags & kAccStatic)) return std::nullopt;
  const RawConstant& c = raw.at(load_u2(attr->payload, 0));
  ConstantInit init;
  init.tag = c.tag;
  init.value = c.value;
  if (c.tag == ConstantTag::String) init.text = raw.utf8(c.first);
  return init;
}

void unify_own_members(ClassRep& cls) {
  for (std::uint32_t i = 1; i < cls.pool.atable.size(); ++i) {
    AEntry& e = cls.pool.atable[i];
    if (e.class_name != cls.name()) continue;
    if (e.kind == AKind::FieldHandle && !e.field) {
      e.field = cls.find_field(e.text, e.descriptor);
    } else if (e.kind == AKind::MethodHandle && !e.method) {
      e.method = cls.find_method(e.text, e.descriptor);
    }
  }
}

void load_contents(ClassRep& cls, const RawClassFile& raw, Resolver& resolver,
                   const LoadOptions& options) {
  cls.access_flags = raw.access_flags;
  cls.pool = build_pool(raw);
  prelink_pass1(cls.pool, raw, [&resolver](const std::string& name) {
    return &resolver.handle(name);
  });
  prelink_pass2(cls.pool, raw);

  if (cls.name() != kObjectName) {
    std::optional<std::string> super = raw.super_name();
    if (!super) {
      throw Error(ErrorCode::BadIndex,
                  cls.name() + " has no superclass");
    }
    if (*super == cls.name()) {
      throw Error(ErrorCode::HierarchyCycle, cls.name() + " extends itself");
    }
    cls.super = &resolver.require_loaded(*super);
  }
  for (std::uint16_t i : raw.interfaces) {
    cls.interfaces.push_back(&resolver.require_loaded(raw.class_name(i)));
  }

  for (const RawMember& m : raw.fields) {
    auto f = std::make_unique<FieldRep>();
    f->owner = &cls;
    f->name = raw.utf8(m.name_index);
    f->descriptor = raw.utf8(m.descriptor_index);
    f->access_flags = m.access_flags;
    f->type_code = type_code_of(f->descriptor);
    f->constant_value = constant_init(raw, m);
    f->name_entry = cls.pool.origin[m.name_index].index;
    f->descriptor_entry = cls.pool.origin[m.descriptor_index].index;
    cls.fields.push_back(std::move(f));
  }
  lay_out_statics(cls);
  lay_out_instance_fields(cls);

  for (const RawMember& m : raw.methods) {
    auto method = std::make_unique<MethodRep>();
    method->owner = &cls;
    method->name = raw.utf8(m.name_index);
    method->descriptor = raw.utf8(m.descriptor_index);
    method->access_flags = m.access_flags;
    method->nargs = descriptor_arg_slots(method->descriptor) +
                    (method->is_static() ? 0 : 1);
    method->name_entry = cls.pool.origin[m.name_index].index;
    method->descriptor_entry = cls.pool.origin[m.descriptor_index].index;
    if (const RawAttribute* attr = m.find_attribute("Code")) {
      RawCode rc = parse_code(raw, *attr);
      MethodCode code;
      code.bytecode = std::move(rc.bytecode);
      code.max_stack = rc.max_stack;
      code.max_locals = rc.max_locals;
      code.stack_maps = std::move(rc.stack_map);
      for (const RawExceptionEntry& e : rc.exception_table) {
        ExceptionEntry x{e.start_pc, e.end_pc, e.handler_pc, 0};
        if (e.catch_type != 0) x.catch_type = cls.pool.origin[e.catch_type].index;
        code.exception_table.push_back(x);
      }
      method->code = rewrite_load(std::move(code), cls.pool, cls.pool.origin);
    }
    cls.methods.push_back(std::move(method));
  }

  unify_own_members(cls);
  build_dispatch_table(cls);

  // Live set at loaded: whatever the code references, plus member names
  // when reflection must keep working.
  clear_marks(cls.pool);
  for (const auto& m : cls.methods) {
    if (m->code) mark_code(*m->code, cls.pool);
  }
  if (options.introspection) mark_member_names(cls);

  StageStats raw_stats;
  raw_stats.pool.entries = pool_entry_count(raw);
  raw_stats.pool.bytes = raw_pool_byte_size(raw);
  raw_stats.class_bytes = raw.file_size;
  cls.unloaded_stats = raw_stats;
  cls.loaded_stats = measure_stage(cls);
}

}  // namespace

void load(ClassRep& cls, ByteView bytes, Resolver& resolver,
          const LoadOptions& options) {
  if (cls.state() != LoadState::Unloaded) {
    throw Error(ErrorCode::IllegalTransition,
                cls.name() + " is already " +
                    std::string(load_state_name(cls.state())));
  }
  RawClassFile raw = parse_class(bytes);
  std::string declared = raw.this_name();
  if (declared != cls.name()) {
    throw Error(ErrorCode::NameMismatch,
                "file declares " + declared + ", expected " + cls.name());
  }
  cls.loading = true;
  try {
    load_contents(cls, raw, resolver, options);
  } catch (...) {
    cls.loading = false;
    cls.reset_contents();
    throw;
  }
  cls.loading = false;
  cls.advance(LoadState::Loaded);
}

MethodCode rewrite_load(MethodCode code, RuntimePool& pool,
                        const std::vector<Origin>& origin) {
  std::span<std::uint8_t> bc(code.bytecode);
  for (const Instruction& insn : decode(bc)) {
    std::uint8_t opcode = insn.opcode;
    if (insn.wide || (opcode != op::kLdc && opcode != op::kLdcW &&
                      opcode != op::kLdc2W && opcode != op::kAnewarray)) {
      continue;
    }
    std::uint32_t raw_index = opcode == op::kLdc ? bc[insn.pc + 1]
                                                 : load_u2(bc, insn.pc + 1);
    if (raw_index == 0 || raw_index >= origin.size() ||
        origin[raw_index].index == 0) {
      throw Error(ErrorCode::BadPoolRef,
                  operand_error(code, insn.pc, "operand names no constant"));
    }
    const Origin& o = origin[raw_index];
    std::uint8_t quick = 0;
    std::uint32_t index = o.index;
    if (opcode == op::kAnewarray) {
      if (o.table != PoolTable::ATable ||
          pool.a(o.index).kind != AKind::ClassHandle) {
        throw Error(ErrorCode::BadPoolRef,
                    operand_error(code, insn.pc, "anewarray needs a class"));
      }
      quick = op::kAnewarrayQuick;
      mark(pool, PoolTable::ATable, index);
    } else if (o.table != PoolTable::VTable) {
      throw Error(ErrorCode::BadPoolRef,
                  operand_error(code, insn.pc, "ldc of a non-loadable constant"));
    } else {
      VKind kind = pool.vkind(o.index);
      bool wide = opcode == op::kLdc2W;
      bool narrow = opcode == op::kLdc;
      switch (kind) {
        case VKind::Int:
          if (wide) break;
          quick = narrow ? op::kLdcQuickI : op::kLdcWQuickI;
          break;
        case VKind::Float:
          if (wide) break;
          quick = narrow ? op::kLdcQuickF : op::kLdcWQuickF;
          break;
        case VKind::StringRef:
          if (wide) break;
          quick = narrow ? op::kLdcQuickA : op::kLdcWQuickA;
          index = pool.v(o.index);  // the interned literal itself
          break;
        case VKind::Long:
          if (wide) quick = op::kLdc2QuickL;
          break;
        case VKind::Double:
          if (wide) quick = op::kLdc2QuickD;
          break;
        default:
          break;
      }
      if (quick == 0) {
        throw Error(ErrorCode::BadPoolRef,
                    operand_error(code, insn.pc,
                                  std::string(op_info(opcode).mnemonic) +
                                      " over " +
                                      std::string(vkind_name(kind))));
      }
      mark(pool, kind == VKind::StringRef ? PoolTable::ATable
                                          : PoolTable::VTable,
           index);
    }
    if (opcode == op::kLdc) {
      if (index > 0xFF) {
        throw Error(ErrorCode::PoolOverflow,
                    operand_error(code, insn.pc,
                                  "ldc target index " + std::to_string(index) +
                                      " does not fit in one byte"));
      }
      bc[insn.pc + 1] = static_cast<std::uint8_t>(index);
    } else {
      store_u2(bc, insn.pc + 1, static_cast<std::uint16_t>(index));
    }
    bc[insn.pc] = quick;
  }
  return code;
}

void build_dispatch_table(ClassRep& cls) {
  cls.dispatch_table = cls.super ? cls.super->dispatch_table
                                 : std::vector<MethodRep*>{};
  for (auto& m : cls.methods) {
    if (!m->is_virtual()) continue;
    std::optional<std::uint16_t> slot;
    for (std::size_t i = 0; i < cls.dispatch_table.size(); ++i) {
      const MethodRep* inherited = cls.dispatch_table[i];
      if (inherited->name == m->name && inherited->descriptor == m->descriptor) {
        slot = static_cast<std::uint16_t>(i);
        break;
      }
    }
    if (slot) {
      cls.dispatch_table[*slot] = m.get();
    } else {
      slot = static_cast<std::uint16_t>(cls.dispatch_table.size());
      cls.dispatch_table.push_back(m.get());
    }
    m->dispatch_slot = slot;
  }
}

void mark_code(const MethodCode& code, RuntimePool& pool) {
  std::span<const std::uint8_t> bc(code.bytecode);
  for (const Instruction& insn : decode(bc)) {
    std::optional<PoolOperand> p = pool_operand(bc, insn);
    if (!p) continue;
    PoolTable table;
    std::uint32_t index = p->value;
    switch (p->kind) {
      case OperandKind::VTable8:
      case OperandKind::VTable16:
        table = PoolTable::VTable;
        break;
      case OperandKind::ATable8:
      case OperandKind::ATable16:
        table = PoolTable::ATable;
        break;
      default:
        if (code.operands == OperandSpace::Raw) {
          if (index == 0 || index >= pool.origin.size() ||
              pool.origin[index].index == 0) {
            throw Error(ErrorCode::BadPoolRef,
                        "operand #" + std::to_string(index) + " at pc " +
                            std::to_string(insn.pc) + " names no constant");
          }
          table = pool.origin[index].table;
          index = pool.origin[index].index;
        } else {
          table = p->use == PoolUse::Class ? PoolTable::ATable
                                           : PoolTable::VTable;
        }
        break;
    }
    mark(pool, table, index);
  }
  for (const ExceptionEntry& e : code.exception_table) {
    if (e.catch_type != 0) mark(pool, PoolTable::ATable, e.catch_type);
  }
}

void mark_member_names(ClassRep& cls) {
  auto mark_text = [&](std::uint16_t index) {
    if (index != 0) mark(cls.pool, PoolTable::ATable, index);
  };
  for (const auto& f : cls.fields) {
    mark_text(f->name_entry);
    mark_text(f->descriptor_entry);
  }
  for (const auto& m : cls.methods) {
    mark_text(m->name_entry);
    mark_text(m->descriptor_entry);
  }
}

StageStats measure_stage(const ClassRep& cls) {
  StageStats s;
  s.pool = measure_live(cls.pool);
  std::size_t bytes = s.pool.bytes;
  bytes += 8 * (cls.fields.size() + cls.methods.size());
  for (const auto& m : cls.methods) {
    if (!m->code) continue;
    bytes += m->code->bytecode.size();
    bytes += 8 * m->code->exception_table.size();
    if (m->code->stack_maps) bytes += m->code->stack_maps->size();
  }
  s.class_bytes = bytes;
  return s;
}

// ------------------------------------------------------------------- ready

void make_ready(ClassRep& cls, StaticInitializer& init) {
  if (cls.state() == LoadState::Unloaded) {
    throw Error(ErrorCode::IllegalTransition,
                cls.name() + ": cannot initialize an unloaded class");
  }
  if (cls.ready() || cls.initializing) return;
  cls.initializing = true;
  try {
    if (cls.super) make_ready(*cls.super, init);
    for (const auto& f : cls.fields) {
      if (!f->placement || !f->constant_value) continue;
      const ConstantInit& c = *f->constant_value;
      std::uint16_t at = f->placement->offset;
      if (f->placement->zone == Zone::A) {
        if (c.tag == ConstantTag::String) cls.statics.a[at] = init.intern(c.text);
      } else if (c.tag == ConstantTag::Long || c.tag == ConstantTag::Double) {
        cls.statics.v[at] = static_cast<std::uint32_t>(c.value >> 32);
        cls.statics.v[at + 1] = static_cast<std::uint32_t>(c.value);
      } else {
        cls.statics.v[at] = static_cast<std::uint32_t>(c.value);
      }
    }
    if (MethodRep* clinit = cls.find_method("<clinit>", "()V")) {
      if (clinit->code) init.run_clinit(*clinit);
    }
  } catch (...) {
    cls.initializing = false;
    throw;
  }
  cls.initializing = false;
  cls.set_ready();
}

}  // namespace jrom
