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

#include "jrom/verify.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "jrom/bytecode.hpp"
#include "jrom/error.hpp"
#include "jrom/linker.hpp"

namespace jrom {

namespace {

constexpr std::string_view kObject = "java/lang/Object";
constexpr std::string_view kString = "java/lang/String";

std::string hex32(std::uint64_t v) {
  std::ostringstream out;
  out << "0x" << std::hex << v;
  return out.str();
}

}  // namespace

// ------------------------------------------------------------------ values

Value Value::of_int(std::int32_t v) {
  return {ValueKind::Int, static_cast<std::uint32_t>(v)};
}
Value Value::of_long(std::int64_t v) {
  return {ValueKind::Long, static_cast<std::uint64_t>(v)};
}
Value Value::of_float(float v) {
  return {ValueKind::Float, std::bit_cast<std::uint32_t>(v)};
}
Value Value::of_double(double v) {
  return {ValueKind::Double, std::bit_cast<std::uint64_t>(v)};
}
Value Value::of_ref(std::uint32_t id) { return {ValueKind::Ref, id}; }

float Value::as_float() const {
  return std::bit_cast<float>(static_cast<std::uint32_t>(bits));
}
double Value::as_double() const { return std::bit_cast<double>(bits); }

std::string Outcome::describe() const {
  switch (kind) {
    case Kind::FuelExhausted:
      return "fuel exhausted";
    case Kind::Threw:
      return "threw " + exception + " #" + std::to_string(thrown);
    case Kind::Returned:
      break;
  }
  switch (value.kind) {
    case ValueKind::Void: return "void";
    case ValueKind::Int: return "int " + std::to_string(value.as_int());
    case ValueKind::Long: return "long " + std::to_string(value.as_long());
    case ValueKind::Float: return "float " + hex32(value.bits);
    case ValueKind::Double: return "double " + hex32(value.bits);
    case ValueKind::Ref: return "ref #" + std::to_string(value.bits);
  }
  return "?";
}

// -------------------------------------------------------------------- heap

std::uint32_t MiniHeap::new_object(std::string class_name, const ClassRep* cls,
                                   std::uint32_t slots) {
  Cell cell;
  cell.object.class_name = std::move(class_name);
  cell.object.cls = cls;
  cell.object.slots.assign(slots, 0);
  cells_.push_back(std::move(cell));
  return static_cast<std::uint32_t>(cells_.size());
}

std::uint32_t MiniHeap::new_array(std::string descriptor, std::size_t length) {
  Cell cell;
  cell.is_array = true;
  cell.array.descriptor = std::move(descriptor);
  cell.array.elems.assign(length, 0);
  elements_ += length;
  cells_.push_back(std::move(cell));
  return static_cast<std::uint32_t>(cells_.size());
}

namespace {

// Modified UTF-8 to UTF-16 code units.
std::vector<std::uint16_t> utf16_units(const std::string& text) {
  std::vector<std::uint16_t> out;
  for (std::size_t i = 0; i < text.size();) {
    auto b = static_cast<unsigned char>(text[i]);
    if (b < 0x80) {
      out.push_back(b);
      i += 1;
    } else if ((b & 0xE0) == 0xC0 && i + 1 < text.size()) {
      out.push_back(static_cast<std::uint16_t>(((b & 0x1F) << 6) |
                                               (text[i + 1] & 0x3F)));
      i += 2;
    } else if (i + 2 < text.size()) {
      out.push_back(static_cast<std::uint16_t>(((b & 0x0F) << 12) |
                                               ((text[i + 1] & 0x3F) << 6) |
                                               (text[i + 2] & 0x3F)));
      i += 3;
    } else {
      out.push_back(b);
      i += 1;
    }
  }
  return out;
}

}  // namespace

std::uint32_t MiniHeap::intern(const std::string& text,
                               const ClassRep* string_class) {
  if (auto it = interned_.find(text); it != interned_.end()) return it->second;
  std::uint32_t slots = string_class ? string_class->instance_slots : 0;
  std::uint32_t id = new_object(std::string(kString), string_class, slots);
  interned_.emplace(text, id);
  if (string_class != nullptr) {
    if (FieldRep* value = string_class->find_field("value", "[C");
        value != nullptr && !value->is_static()) {
      std::vector<std::uint16_t> units = utf16_units(text);
      std::uint32_t chars = new_array("[C", units.size());
      for (std::size_t i = 0; i < units.size(); ++i) {
        array(chars).elems[i] = units[i];
      }
      object(id).slots.at(value->instance_offset) = chars;
    }
  }
  return id;
}

bool MiniHeap::contains(std::uint32_t id) const {
  return id != 0 && id <= cells_.size();
}

bool MiniHeap::is_array(std::uint32_t id) const {
  return contains(id) && cells_[id - 1].is_array;
}

HeapObject& MiniHeap::object(std::uint32_t id) {
  return cells_.at(id - 1).object;
}
const HeapObject& MiniHeap::object(std::uint32_t id) const {
  return cells_.at(id - 1).object;
}
HeapArray& MiniHeap::array(std::uint32_t id) { return cells_.at(id - 1).array; }
const HeapArray& MiniHeap::array(std::uint32_t id) const {
  return cells_.at(id - 1).array;
}

std::string MiniHeap::type_of(std::uint32_t id) const {
  const Cell& c = cells_.at(id - 1);
  return c.is_array ? c.array.descriptor : c.object.class_name;
}

bool MiniHeap::operator==(const MiniHeap& other) const {
  return first_difference(other).empty();
}

std::string MiniHeap::first_difference(const MiniHeap& other) const {
  std::size_t n = std::min(cells_.size(), other.cells_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Cell& a = cells_[i];
    const Cell& b = other.cells_[i];
    std::string where = "heap #" + std::to_string(i + 1);
    if (a.is_array != b.is_array) return where + ": object vs array";
    if (a.is_array) {
      if (a.array.descriptor != b.array.descriptor) {
        return where + ": " + a.array.descriptor + " vs " + b.array.descriptor;
      }
      if (a.array.elems.size() != b.array.elems.size()) {
        return where + ": length " + std::to_string(a.array.elems.size()) +
               " vs " + std::to_string(b.array.elems.size());
      }
      for (std::size_t k = 0; k < a.array.elems.size(); ++k) {
        if (a.array.elems[k] != b.array.elems[k]) {
          return where + "[" + std::to_string(k) + "]: " +
                 hex32(a.array.elems[k]) + " vs " + hex32(b.array.elems[k]);
        }
      }
    } else {
      if (a.object.class_name != b.object.class_name) {
        return where + ": " + a.object.class_name + " vs " +
               b.object.class_name;
      }
      if (a.object.slots != b.object.slots) {
        for (std::size_t k = 0;
             k < std::min(a.object.slots.size(), b.object.slots.size()); ++k) {
          if (a.object.slots[k] != b.object.slots[k]) {
            return where + " slot " + std::to_string(k) + ": " +
                   hex32(a.object.slots[k]) + " vs " +
                   hex32(b.object.slots[k]);
          }
        }
        return where + ": slot count differs";
      }
    }
  }
  if (cells_.size() != other.cells_.size()) {
    return "heap size " + std::to_string(cells_.size()) + " vs " +
           std::to_string(other.cells_.size());
  }
  if (interned_ != other.interned_) return "interned strings differ";
  return {};
}

// ----------------------------------------------------------------- machine

struct Machine::Frame {
  const MethodRep* method = nullptr;
  const MethodCode* code = nullptr;
  ClassRep* cls = nullptr;
  std::vector<std::uint32_t> locals;
  std::vector<std::uint32_t> stack;
  std::uint32_t pc = 0;
  std::uint32_t resume = 0;  // caller: pc after the pending invoke
};

Machine::Machine(World& world, bool isolate_statics, StaticInitializer* init)
    : world_(world), isolate_(isolate_statics), init_(init) {}

StaticZones& Machine::zones(const ClassRep& cls) {
  if (!isolate_) return const_cast<ClassRep&>(cls).statics;
  return overlay_.try_emplace(&cls, cls.statics).first->second;
}

std::map<std::string, StaticZones> Machine::touched_zones() const {
  std::map<std::string, StaticZones> out;
  for (const auto& [cls, z] : overlay_) out.emplace(cls->name(), z);
  return out;
}

namespace {

std::int32_t f2i(double v) {
  if (std::isnan(v)) return 0;
  if (v >= 2147483648.0) return std::numeric_limits<std::int32_t>::max();
  if (v <= -2147483648.0) return std::numeric_limits<std::int32_t>::min();
  return static_cast<std::int32_t>(v);
}

std::int64_t f2l(double v) {
  if (std::isnan(v)) return 0;
  if (v >= 9223372036854775808.0) return std::numeric_limits<std::int64_t>::max();
  if (v <= -9223372036854775808.0) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(v);
}

template <typename T>
std::int32_t fcmp(T a, T b, bool nan_is_greater) {
  if (a > b) return 1;
  if (a == b) return 0;
  if (a < b) return -1;
  return nan_is_greater ? 1 : -1;
}

std::string newarray_descriptor(std::uint8_t atype) {
  switch (atype) {
    case 4: return "[Z";
    case 5: return "[C";
    case 6: return "[F";
    case 7: return "[D";
    case 8: return "[B";
    case 9: return "[S";
    case 10: return "[I";
    case 11: return "[J";
    default: return {};
  }
}

std::string array_of(const std::string& component) {
  if (!component.empty() && component[0] == '[') return "[" + component;
  return "[L" + component + ";";
}

// Type name of an array element descriptor: class name, array descriptor,
// or the primitive letter itself.
std::string element_type(std::string_view desc) {
  if (desc.size() > 1 && desc[0] == 'L') {
    return std::string(desc.substr(1, desc.size() - 2));
  }
  return std::string(desc);
}

bool is_primitive_letter(std::string_view t) {
  return t.size() == 1 && std::string_view("ZBCSIJFD").find(t[0]) !=
                              std::string_view::npos;
}

}  // namespace

class Machine::Run {
 public:
  Run(Machine& m, const ExecOptions& options)
      : m_(m), opt_(options), fuel_(options.fuel) {}

  Outcome run(const MethodRep& entry, const std::vector<std::uint32_t>& args) {
    if (!entry.code) {
      throw Error(ErrorCode::UnsupportedOpcode,
                  entry.qualified_name() + ": no code to execute");
    }
    push_frame(entry, args);
    for (;;) {
      if (fuel_ == 0) return Outcome{Outcome::Kind::FuelExhausted, {}, {}, 0};
      --fuel_;
      if (std::optional<Outcome> done = step()) return *done;
    }
  }

 private:
  Machine& m_;
  const ExecOptions& opt_;
  std::uint64_t fuel_;
  std::vector<Frame> frames_;

  World& world() { return m_.world_; }
  MiniHeap& heap() { return m_.world_.heap; }

  ClassRep* class_named(std::string_view name) {
    return world().registry ? world().registry->find(name) : nullptr;
  }

  [[noreturn]] void fail(ErrorCode code, const std::string& what) {
    const Frame& f = frames_.back();
    throw Error(code, f.method->qualified_name() + " pc " +
                          std::to_string(f.pc) + ": " + what);
  }

  // ------------------------------------------------------ frame plumbing

  void push_frame(const MethodRep& method,
                  const std::vector<std::uint32_t>& args) {
    Frame f;
    f.method = &method;
    f.code = &*method.code;
    f.cls = method.owner;
    f.locals.assign(std::max<std::size_t>(f.code->max_locals, args.size()), 0);
    std::copy(args.begin(), args.end(), f.locals.begin());
    frames_.push_back(std::move(f));
  }

  Frame& top() { return frames_.back(); }

  void push(std::uint32_t v) {
    Frame& f = top();
    if (f.stack.size() >= f.code->max_stack) {
      fail(ErrorCode::StackOverflow,
           "operand stack exceeds max_stack " +
               std::to_string(f.code->max_stack));
    }
    f.stack.push_back(v);
  }
  std::uint32_t pop() {
    Frame& f = top();
    if (f.stack.empty()) fail(ErrorCode::StackUnderflow, "empty operand stack");
    std::uint32_t v = f.stack.back();
    f.stack.pop_back();
    return v;
  }
  std::uint32_t peek(std::size_t depth) {
    Frame& f = top();
    if (depth >= f.stack.size()) {
      fail(ErrorCode::StackUnderflow, "operand stack too shallow");
    }
    return f.stack[f.stack.size() - 1 - depth];
  }

  void push_i(std::int32_t v) { push(static_cast<std::uint32_t>(v)); }
  std::int32_t pop_i() { return static_cast<std::int32_t>(pop()); }
  void push_w(std::uint64_t v) {
    push(static_cast<std::uint32_t>(v >> 32));
    push(static_cast<std::uint32_t>(v));
  }
  std::uint64_t pop_w() {
    std::uint64_t lo = pop();
    std::uint64_t hi = pop();
    return (hi << 32) | lo;
  }
  void push_l(std::int64_t v) { push_w(static_cast<std::uint64_t>(v)); }
  std::int64_t pop_l() { return static_cast<std::int64_t>(pop_w()); }
  void push_f(float v) { push(std::bit_cast<std::uint32_t>(v)); }
  float pop_f() { return std::bit_cast<float>(pop()); }
  void push_d(double v) { push_w(std::bit_cast<std::uint64_t>(v)); }
  double pop_d() { return std::bit_cast<double>(pop_w()); }

  std::uint32_t& local(std::uint32_t index) {
    Frame& f = top();
    if (index >= f.locals.size()) {
      fail(ErrorCode::VerifyError,
           "local " + std::to_string(index) + " beyond max_locals");
    }
    return f.locals[index];
  }

  // ------------------------------------------------------------ bytecode

  const Bytes& code() { return top().code->bytecode; }
  std::uint8_t u1(std::uint32_t at) {
    const Bytes& c = code();
    if (at >= c.size()) fail(ErrorCode::Truncated, "operand past end of code");
    return c[at];
  }
  std::int8_t s1(std::uint32_t at) { return static_cast<std::int8_t>(u1(at)); }
  std::uint16_t u2(std::uint32_t at) {
    return static_cast<std::uint16_t>((u1(at) << 8) | u1(at + 1));
  }
  std::int16_t s2(std::uint32_t at) { return static_cast<std::int16_t>(u2(at)); }
  std::int32_t s4(std::uint32_t at) {
    return static_cast<std::int32_t>((std::uint32_t{u2(at)} << 16) |
                                     u2(at + 2));
  }

  // ----------------------------------------------------------- resolution

  Origin where(const Instruction& insn) {
    Frame& f = top();
    std::optional<PoolOperand> p = pool_operand(f.code->bytecode, insn);
    if (!p) fail(ErrorCode::BadPoolRef, "instruction has no pool operand");
    std::optional<Origin> o = locate_operand(f.cls->pool, *f.code, *p);
    if (!o || !f.cls->pool.in_range(o->table, o->index)) {
      fail(ErrorCode::BadPoolRef,
           "operand " + std::to_string(p->value) + " names no pool entry");
    }
    return *o;
  }

  const AEntry& aentry(const Origin& o, AKind kind) {
    const RuntimePool& pool = top().cls->pool;
    if (o.table != PoolTable::ATable || pool.a(o.index).kind != kind) {
      fail(ErrorCode::BadPoolRef, "expected " + std::string(akind_name(kind)) +
                                      " at " + describe(pool, o.table, o.index));
    }
    return pool.a(o.index);
  }

  ClassRep* handle_class(const AEntry& e) {
    ClassRep* c = e.cls != nullptr && e.cls->state() != LoadState::Unloaded
                      ? e.cls
                      : class_named(e.class_name);
    if (c == nullptr) {
      fail(ErrorCode::ClassNotFound, "class " + e.class_name + " not present");
    }
    return c;
  }

  ClassRep* operand_class(const Instruction& insn) {
    return handle_class(aentry(where(insn), AKind::ClassHandle));
  }

  const AEntry& operand_member(const Instruction& insn) {
    Origin o = where(insn);
    const RuntimePool& pool = top().cls->pool;
    if (o.table != PoolTable::VTable) fail(ErrorCode::BadPoolRef, "not a ref");
    VKind k = pool.vkind(o.index);
    if (k != VKind::FieldRef && k != VKind::MethodRef &&
        k != VKind::InterfaceMethodRef) {
      fail(ErrorCode::BadPoolRef,
           "expected a member ref at " + describe(pool, o.table, o.index));
    }
    std::uint16_t h = pair_second(pool.v(o.index));
    if (!pool.in_range(PoolTable::ATable, h)) {
      fail(ErrorCode::BadPoolRef, "dangling member handle");
    }
    return pool.a(h);
  }

  const FieldRep* operand_field(const Instruction& insn) {
    const AEntry& h = operand_member(insn);
    if (h.field != nullptr) return h.field;
    ClassRep* c = class_named(h.class_name);
    const FieldRep* f = c ? c->lookup_field(h.text, h.descriptor) : nullptr;
    if (f == nullptr) {
      fail(ErrorCode::NoSuchField, h.class_name + "." + h.text);
    }
    return f;
  }

  const MethodRep* operand_method(const Instruction& insn,
                                  const AEntry** handle = nullptr) {
    const AEntry& h = operand_member(insn);
    if (handle) *handle = &h;
    if (h.method != nullptr) return h.method;
    const MethodRep* m = nullptr;
    if (ClassRep* c = class_named(h.class_name)) {
      m = c->lookup_method(h.text, h.descriptor);
      if (m == nullptr && (c->is_interface() || c->kind() != ClassKind::Regular)) {
        if (ClassRep* o = class_named(kObject)) {
          m = o->lookup_method(h.text, h.descriptor);
        }
      }
    }
    if (m == nullptr) {
      fail(ErrorCode::NoSuchMethod, h.class_name + "." + h.text + h.descriptor);
    }
    return m;
  }

  // Class of a non-null reference for dispatch purposes.
  const ClassRep* runtime_class(std::uint32_t ref) {
    if (heap().is_array(ref)) return class_named(kObject);
    const HeapObject& o = heap().object(ref);
    return o.cls != nullptr ? o.cls : class_named(o.class_name);
  }

  void touch(ClassRep* c) {
    if (!m_.isolate_ && m_.init_ != nullptr && !c->ready() &&
        !c->initializing && c->state() != LoadState::Unloaded) {
      make_ready(*c, *m_.init_);
    }
  }

  std::uint32_t intern(const std::string& text) {
    return heap().intern(text, class_named(kString));
  }

  bool assignable(const std::string& from, const std::string& to) {
    if (from == to || to == kObject) return true;
    bool from_array = !from.empty() && from[0] == '[';
    bool to_array = !to.empty() && to[0] == '[';
    if (from_array) {
      if (!to_array) {
        return to == "java/lang/Cloneable" || to == "java/io/Serializable";
      }
      std::string fe = element_type(std::string_view(from).substr(1));
      std::string te = element_type(std::string_view(to).substr(1));
      if (is_primitive_letter(fe) || is_primitive_letter(te)) return fe == te;
      return assignable(fe, te);
    }
    if (to_array || is_primitive_letter(from)) return false;
    const ClassRep* f = class_named(from);
    const ClassRep* t = class_named(to);
    return f != nullptr && t != nullptr && f->is_subclass_of(*t);
  }

  // ----------------------------------------------------------- exceptions

  // Throws `ref` from the current frame. Returns an outcome when nothing
  // catches it.
  std::optional<Outcome> unwind(std::uint32_t ref) {
    std::string type = heap().type_of(ref);
    while (!frames_.empty()) {
      Frame& f = frames_.back();
      for (const ExceptionEntry& e : f.code->exception_table) {
        if (f.pc < e.start_pc || f.pc >= e.end_pc) continue;
        if (e.catch_type != 0) {
          const RuntimePool& pool = f.cls->pool;
          if (!pool.in_range(PoolTable::ATable, e.catch_type)) {
            fail(ErrorCode::BadPoolRef, "catch type out of range");
          }
          if (!assignable(type, pool.a(e.catch_type).class_name)) continue;
        }
        f.stack.clear();
        f.stack.push_back(ref);
        f.pc = e.handler_pc;
        return std::nullopt;
      }
      frames_.pop_back();
    }
    return Outcome{Outcome::Kind::Threw, {}, type, ref};
  }

  std::optional<Outcome> raise(std::string_view class_name) {
    const ClassRep* c = class_named(class_name);
    std::uint32_t slots = c ? c->instance_slots : 0;
    return unwind(heap().new_object(std::string(class_name), c, slots));
  }

  // ------------------------------------------------------------- invokes

  // Pushes a frame for `target`, taking its arguments off the caller stack.
  std::optional<Outcome> invoke(const MethodRep& target, std::uint32_t nargs,
                                std::uint32_t next_pc) {
    if (target.is_abstract()) return raise("java/lang/AbstractMethodError");
    if (target.is_native() || !target.code) {
      fail(ErrorCode::UnsupportedOpcode,
           "native method " + target.qualified_name());
    }
    Frame& caller = top();
    if (caller.stack.size() < nargs) {
      fail(ErrorCode::StackUnderflow, "too few invoke arguments");
    }
    std::vector<std::uint32_t> args(caller.stack.end() - nargs,
                                    caller.stack.end());
    caller.stack.resize(caller.stack.size() - nargs);
    caller.resume = next_pc;
    if (frames_.size() >= opt_.max_frames) {
      return raise("java/lang/StackOverflowError");
    }
    push_frame(target, args);
    return std::nullopt;
  }

  std::optional<Outcome> do_return(ValueKind kind, std::uint32_t width) {
    std::uint64_t bits = 0;
    if (width == 2) {
      bits = pop_w();
    } else if (width == 1) {
      bits = pop();
    }
    frames_.pop_back();
    if (frames_.empty()) {
      return Outcome{Outcome::Kind::Returned, Value{kind, bits}, {}, 0};
    }
    Frame& caller = top();
    if (width == 2) {
      push_w(bits);
    } else if (width == 1) {
      push(static_cast<std::uint32_t>(bits));
    }
    caller.pc = caller.resume;
    return std::nullopt;
  }

  // ---------------------------------------------------------------- fields

  void load_slots(const std::vector<std::uint32_t>& from, std::uint32_t at,
                  std::uint32_t width) {
    if (at + width > from.size()) {
      fail(ErrorCode::InternalError, "slot " + std::to_string(at) +
                                         " outside storage of " +
                                         std::to_string(from.size()));
    }
    for (std::uint32_t i = 0; i < width; ++i) push(from[at + i]);
  }

  void store_slots(std::vector<std::uint32_t>& to, std::uint32_t at,
                   const std::vector<std::uint32_t>& values) {
    if (at + values.size() > to.size()) {
      fail(ErrorCode::InternalError, "slot " + std::to_string(at) +
                                         " outside storage of " +
                                         std::to_string(to.size()));
    }
    std::copy(values.begin(), values.end(), to.begin() + at);
  }

  std::vector<std::uint32_t> pop_values(std::uint32_t width) {
    std::vector<std::uint32_t> v(width);
    for (std::uint32_t i = width; i-- > 0;) v[i] = pop();
    return v;
  }

  std::vector<std::uint32_t>& zone(const ClassRep& c, Zone z) {
    StaticZones& zs = m_.zones(c);
    return z == Zone::A ? zs.a : zs.v;
  }

  // ----------------------------------------------------------------- arrays

  bool fits(std::int32_t n) {
    return heap().element_count() + static_cast<std::size_t>(n) <=
           kHeapElementLimit;
  }

  HeapArray* array_ref(std::uint32_t ref) {
    if (!heap().is_array(ref)) fail(ErrorCode::VerifyError, "not an array");
    return &heap().array(ref);
  }

  // ------------------------------------------------------------------ step

  std::optional<Outcome> step() {
    Frame& f = top();
    const std::uint32_t pc = f.pc;
    const Bytes& bc = f.code->bytecode;
    if (pc >= bc.size()) fail(ErrorCode::VerifyError, "fell off end of code");
    Instruction insn;
    insn.pc = pc;
    insn.opcode = bc[pc];
    insn.length = instruction_length(bc, pc);
    if (insn.opcode == op::kWide) {
      insn.wide = true;
      insn.opcode = u1(pc + 1);
    }
    const std::uint32_t next = pc + insn.length;
    if (opt_.coverage) opt_.coverage->emplace(f.method, pc);
    if (opt_.trace) {
      *opt_.trace << f.method->qualified_name() << ' ' << pc << ' '
                  << op_info(bc[pc]).mnemonic << ' ' << f.stack.size() << '\n';
    }
    // The pc stays on this instruction while it runs, so a throw is
    // matched against the right handler ranges.
    std::optional<std::uint32_t> jump;
    const std::uint8_t o = insn.opcode;
    auto branch = [&](bool taken) {
      if (taken) jump = pc + s2(pc + 1);
    };
    auto local_index = [&]() -> std::uint32_t {
      return insn.wide ? u2(pc + 2) : u1(pc + 1);
    };

    switch (o) {
      case 0x00: break;  // nop
      case 0x01: push(0); break;
      case 0x02: case 0x03: case 0x04: case 0x05: case 0x06: case 0x07:
      case 0x08:
        push_i(o - 0x03);
        break;
      case 0x09: case 0x0a: push_l(o - 0x09); break;
      case 0x0b: case 0x0c: case 0x0d: push_f(static_cast<float>(o - 0x0b)); break;
      case 0x0e: case 0x0f: push_d(o - 0x0e); break;
      case 0x10: push_i(s1(pc + 1)); break;
      case 0x11: push_i(s2(pc + 1)); break;

      case op::kLdc:
      case op::kLdcW: {
        Origin w = where(insn);
        const RuntimePool& pool = f.cls->pool;
        if (w.table == PoolTable::ATable) {
          push(intern(aentry(w, AKind::StringLiteral).text));
          break;
        }
        VKind k = pool.vkind(w.index);
        if (k == VKind::Int || k == VKind::Float) {
          push(pool.v(w.index));
        } else if (k == VKind::StringRef) {
          push(intern(pool.a(pool.v(w.index)).text));
        } else {
          fail(ErrorCode::BadPoolRef, "ldc of " + describe(pool, w.table, w.index));
        }
        break;
      }
      case op::kLdc2W: {
        Origin w = where(insn);
        const RuntimePool& pool = f.cls->pool;
        if (w.table != PoolTable::VTable ||
            (pool.vkind(w.index) != VKind::Long &&
             pool.vkind(w.index) != VKind::Double)) {
          fail(ErrorCode::BadPoolRef, "ldc2_w of a non-wide entry");
        }
        push_w(pool.wide(w.index));
        break;
      }
      case op::kLdcQuickI: case op::kLdcQuickF:
      case op::kLdcWQuickI: case op::kLdcWQuickF: {
        Origin w = where(insn);
        VKind want = (o == op::kLdcQuickI || o == op::kLdcWQuickI) ? VKind::Int
                                                                   : VKind::Float;
        if (w.table != PoolTable::VTable || f.cls->pool.vkind(w.index) != want) {
          fail(ErrorCode::BadPoolRef, "quick ldc names " +
                                          describe(f.cls->pool, w.table, w.index));
        }
        push(f.cls->pool.v(w.index));
        break;
      }
      case op::kLdcQuickA: case op::kLdcWQuickA:
        push(intern(aentry(where(insn), AKind::StringLiteral).text));
        break;
      case op::kLdc2QuickL: case op::kLdc2QuickD: {
        Origin w = where(insn);
        VKind want = o == op::kLdc2QuickL ? VKind::Long : VKind::Double;
        if (w.table != PoolTable::VTable || f.cls->pool.vkind(w.index) != want) {
          fail(ErrorCode::BadPoolRef, "quick ldc2 names " +
                                          describe(f.cls->pool, w.table, w.index));
        }
        push_w(f.cls->pool.wide(w.index));
        break;
      }

      // loads
      case 0x15: case 0x17: case 0x19: push(local(local_index())); break;
      case 0x16: case 0x18: {
        std::uint32_t i = local_index();
        std::uint32_t hi = local(i);
        std::uint32_t lo = local(i + 1);
        push(hi);
        push(lo);
        break;
      }
      case 0x1a: case 0x1b: case 0x1c: case 0x1d: push(local(o - 0x1a)); break;
      case 0x1e: case 0x1f: case 0x20: case 0x21: {
        std::uint32_t i = o - 0x1e;
        std::uint32_t hi = local(i);
        std::uint32_t lo = local(i + 1);
        push(hi);
        push(lo);
        break;
      }
      case 0x22: case 0x23: case 0x24: case 0x25: push(local(o - 0x22)); break;
      case 0x26: case 0x27: case 0x28: case 0x29: {
        std::uint32_t i = o - 0x26;
        std::uint32_t hi = local(i);
        std::uint32_t lo = local(i + 1);
        push(hi);
        push(lo);
        break;
      }
      case 0x2a: case 0x2b: case 0x2c: case 0x2d: push(local(o - 0x2a)); break;

      // stores
      case 0x36: case 0x38: case 0x3a: {
        std::uint32_t v = pop();
        local(local_index()) = v;
        break;
      }
      case 0x37: case 0x39: {
        std::uint32_t lo = pop();
        std::uint32_t hi = pop();
        std::uint32_t i = local_index();
        local(i) = hi;
        local(i + 1) = lo;
        break;
      }
      case 0x3b: case 0x3c: case 0x3d: case 0x3e: {
        std::uint32_t v = pop();
        local(o - 0x3b) = v;
        break;
      }
      case 0x3f: case 0x40: case 0x41: case 0x42:
      case 0x47: case 0x48: case 0x49: case 0x4a: {
        std::uint32_t i = o < 0x47 ? o - 0x3f : o - 0x47;
        std::uint32_t lo = pop();
        std::uint32_t hi = pop();
        local(i) = hi;
        local(i + 1) = lo;
        break;
      }
      case 0x43: case 0x44: case 0x45: case 0x46: {
        std::uint32_t v = pop();
        local(o - 0x43) = v;
        break;
      }
      case 0x4b: case 0x4c: case 0x4d: case 0x4e: {
        std::uint32_t v = pop();
        local(o - 0x4b) = v;
        break;
      }

      // array loads
      case 0x2e: case 0x2f: case 0x30: case 0x31: case 0x32: case 0x33:
      case 0x34: case 0x35: {
        std::int32_t index = pop_i();
        std::uint32_t ref = pop();
        if (ref == 0) return raise("java/lang/NullPointerException");
        HeapArray* a = array_ref(ref);
        if (index < 0 || static_cast<std::size_t>(index) >= a->elems.size()) {
          return raise("java/lang/ArrayIndexOutOfBoundsException");
        }
        std::uint64_t e = a->elems[index];
        switch (o) {
          case 0x2f: case 0x31: push_w(e); break;  // laload daload
          case 0x33:                                // baload
            if (a->descriptor == "[Z") {
              push_i(static_cast<std::int32_t>(e & 1));
            } else {
              push_i(static_cast<std::int8_t>(e));
            }
            break;
          case 0x34: push_i(static_cast<std::uint16_t>(e)); break;
          case 0x35: push_i(static_cast<std::int16_t>(e)); break;
          default: push(static_cast<std::uint32_t>(e)); break;
        }
        break;
      }
      // array stores
      case 0x4f: case 0x50: case 0x51: case 0x52: case 0x53: case 0x54:
      case 0x55: case 0x56: {
        std::uint64_t value = (o == 0x50 || o == 0x52) ? pop_w() : pop();
        std::int32_t index = pop_i();
        std::uint32_t ref = pop();
        if (ref == 0) return raise("java/lang/NullPointerException");
        HeapArray* a = array_ref(ref);
        if (index < 0 || static_cast<std::size_t>(index) >= a->elems.size()) {
          return raise("java/lang/ArrayIndexOutOfBoundsException");
        }
        switch (o) {
          case 0x53:  // aastore
            if (value != 0 &&
                !assignable(heap().type_of(static_cast<std::uint32_t>(value)),
                            element_type(std::string_view(a->descriptor).substr(1)))) {
              return raise("java/lang/ArrayStoreException");
            }
            break;
          case 0x54:
            value = a->descriptor == "[Z" ? (value & 1) : (value & 0xFF);
            break;
          case 0x55: case 0x56: value &= 0xFFFF; break;
          default: break;
        }
        a->elems[index] = value;
        break;
      }

      // stack
      case 0x57: pop(); break;
      case 0x58: pop(); pop(); break;
      case 0x59: push(peek(0)); break;
      case 0x5a: {  // dup_x1
        std::uint32_t v1 = pop(), v2 = pop();
        push(v1); push(v2); push(v1);
        break;
      }
      case 0x5b: {  // dup_x2
        std::uint32_t v1 = pop(), v2 = pop(), v3 = pop();
        push(v1); push(v3); push(v2); push(v1);
        break;
      }
      case 0x5c: {  // dup2
        std::uint32_t v1 = pop(), v2 = pop();
        push(v2); push(v1); push(v2); push(v1);
        break;
      }
      case 0x5d: {  // dup2_x1
        std::uint32_t v1 = pop(), v2 = pop(), v3 = pop();
        push(v2); push(v1); push(v3); push(v2); push(v1);
        break;
      }
      case 0x5e: {  // dup2_x2
        std::uint32_t v1 = pop(), v2 = pop(), v3 = pop(), v4 = pop();
        push(v2); push(v1); push(v4); push(v3); push(v2); push(v1);
        break;
      }
      case 0x5f: {
        std::uint32_t v1 = pop(), v2 = pop();
        push(v1); push(v2);
        break;
      }

      // int arithmetic
      case 0x60: case 0x64: case 0x68: case 0x7e: case 0x80: case 0x82:
      case 0x78: case 0x7a: case 0x7c: {
        std::uint32_t b = pop(), a = pop();
        std::uint32_t r = 0;
        switch (o) {
          case 0x60: r = a + b; break;
          case 0x64: r = a - b; break;
          case 0x68: r = a * b; break;
          case 0x7e: r = a & b; break;
          case 0x80: r = a | b; break;
          case 0x82: r = a ^ b; break;
          case 0x78: r = a << (b & 31); break;
          case 0x7a:
            r = static_cast<std::uint32_t>(static_cast<std::int32_t>(a) >> (b & 31));
            break;
          case 0x7c: r = a >> (b & 31); break;
        }
        push(r);
        break;
      }
      case 0x6c: case 0x70: {  // idiv irem
        std::int32_t b = pop_i(), a = pop_i();
        if (b == 0) return raise("java/lang/ArithmeticException");
        if (b == -1) {
          push(o == 0x6c ? 0u - static_cast<std::uint32_t>(a) : 0u);
        } else {
          push_i(o == 0x6c ? a / b : a % b);
        }
        break;
      }
      case 0x74: push(0u - pop()); break;

      // long arithmetic
      case 0x61: case 0x65: case 0x69: case 0x7f: case 0x81: case 0x83: {
        std::uint64_t b = pop_w(), a = pop_w();
        std::uint64_t r = 0;
        switch (o) {
          case 0x61: r = a + b; break;
          case 0x65: r = a - b; break;
          case 0x69: r = a * b; break;
          case 0x7f: r = a & b; break;
          case 0x81: r = a | b; break;
          case 0x83: r = a ^ b; break;
        }
        push_w(r);
        break;
      }
      case 0x79: case 0x7b: case 0x7d: {  // lshl lshr lushr
        std::uint32_t s = pop() & 63;
        std::uint64_t a = pop_w();
        if (o == 0x79) {
          push_w(a << s);
        } else if (o == 0x7b) {
          push_l(static_cast<std::int64_t>(a) >> s);
        } else {
          push_w(a >> s);
        }
        break;
      }
      case 0x6d: case 0x71: {  // ldiv lrem
        std::int64_t b = pop_l(), a = pop_l();
        if (b == 0) return raise("java/lang/ArithmeticException");
        if (b == -1) {
          push_w(o == 0x6d ? 0ull - static_cast<std::uint64_t>(a) : 0ull);
        } else {
          push_l(o == 0x6d ? a / b : a % b);
        }
        break;
      }
      case 0x75: push_w(0ull - pop_w()); break;

      // float / double arithmetic
      case 0x62: case 0x66: case 0x6a: case 0x6e: case 0x72: {
        float b = pop_f(), a = pop_f();
        float r = 0;
        switch (o) {
          case 0x62: r = a + b; break;
          case 0x66: r = a - b; break;
          case 0x6a: r = a * b; break;
          case 0x6e: r = a / b; break;
          case 0x72: r = std::fmod(a, b); break;
        }
        push_f(r);
        break;
      }
      case 0x63: case 0x67: case 0x6b: case 0x6f: case 0x73: {
        double b = pop_d(), a = pop_d();
        double r = 0;
        switch (o) {
          case 0x63: r = a + b; break;
          case 0x67: r = a - b; break;
          case 0x6b: r = a * b; break;
          case 0x6f: r = a / b; break;
          case 0x73: r = std::fmod(a, b); break;
        }
        push_d(r);
        break;
      }
      case 0x76: push_f(-pop_f()); break;
      case 0x77: push_d(-pop_d()); break;

      case 0x84: {  // iinc
        std::uint32_t index = insn.wide ? u2(pc + 2) : u1(pc + 1);
        std::int32_t delta = insn.wide ? s2(pc + 4) : s1(pc + 2);
        local(index) += static_cast<std::uint32_t>(delta);
        break;
      }

      // conversions
      case 0x85: push_l(pop_i()); break;
      case 0x86: push_f(static_cast<float>(pop_i())); break;
      case 0x87: push_d(pop_i()); break;
      case 0x88: push_i(static_cast<std::int32_t>(pop_w())); break;
      case 0x89: push_f(static_cast<float>(pop_l())); break;
      case 0x8a: push_d(static_cast<double>(pop_l())); break;
      case 0x8b: push_i(f2i(pop_f())); break;
      case 0x8c: push_l(f2l(pop_f())); break;
      case 0x8d: push_d(pop_f()); break;
      case 0x8e: push_i(f2i(pop_d())); break;
      case 0x8f: push_l(f2l(pop_d())); break;
      case 0x90: push_f(static_cast<float>(pop_d())); break;
      case 0x91: push_i(static_cast<std::int8_t>(pop())); break;
      case 0x92: push_i(static_cast<std::uint16_t>(pop())); break;
      case 0x93: push_i(static_cast<std::int16_t>(pop())); break;

      // comparisons
      case 0x94: {
        std::int64_t b = pop_l(), a = pop_l();
        push_i(a > b ? 1 : (a == b ? 0 : -1));
        break;
      }
      case 0x95: case 0x96: {
        float b = pop_f(), a = pop_f();
        push_i(fcmp(a, b, o == 0x96));
        break;
      }
      case 0x97: case 0x98: {
        double b = pop_d(), a = pop_d();
        push_i(fcmp(a, b, o == 0x98));
        break;
      }

      // branches
      case 0x99: branch(pop_i() == 0); break;
      case 0x9a: branch(pop_i() != 0); break;
      case 0x9b: branch(pop_i() < 0); break;
      case 0x9c: branch(pop_i() >= 0); break;
      case 0x9d: branch(pop_i() > 0); break;
      case 0x9e: branch(pop_i() <= 0); break;
      case 0x9f: case 0xa0: case 0xa1: case 0xa2: case 0xa3: case 0xa4: {
        std::int32_t b = pop_i(), a = pop_i();
        bool t = false;
        switch (o) {
          case 0x9f: t = a == b; break;
          case 0xa0: t = a != b; break;
          case 0xa1: t = a < b; break;
          case 0xa2: t = a >= b; break;
          case 0xa3: t = a > b; break;
          case 0xa4: t = a <= b; break;
        }
        branch(t);
        break;
      }
      case 0xa5: { std::uint32_t b = pop(), a = pop(); branch(a == b); break; }
      case 0xa6: { std::uint32_t b = pop(), a = pop(); branch(a != b); break; }
      case 0xa7: branch(true); break;
      case op::kGotoW: jump = pc + s4(pc + 1); break;
      case 0xc6: branch(pop() == 0); break;
      case 0xc7: branch(pop() != 0); break;

      case op::kTableswitch: {
        std::uint32_t at = (pc + 4) & ~3u;
        std::int32_t dflt = s4(at);
        std::int32_t low = s4(at + 4);
        std::int32_t high = s4(at + 8);
        std::int32_t key = pop_i();
        std::int32_t off = dflt;
        if (key >= low && key <= high) {
          off = s4(at + 12 + 4 * static_cast<std::uint32_t>(
                                     static_cast<std::int64_t>(key) - low));
        }
        jump = pc + off;
        break;
      }
      case op::kLookupswitch: {
        std::uint32_t at = (pc + 4) & ~3u;
        std::int32_t off = s4(at);
        std::int32_t n = s4(at + 4);
        std::int32_t key = pop_i();
        for (std::int32_t i = 0; i < n; ++i) {
          std::uint32_t pair = at + 8 + 8 * static_cast<std::uint32_t>(i);
          if (s4(pair) == key) {
            off = s4(pair + 4);
            break;
          }
        }
        jump = pc + off;
        break;
      }

      // returns
      case 0xac: return do_return(ValueKind::Int, 1);
      case 0xad: return do_return(ValueKind::Long, 2);
      case 0xae: return do_return(ValueKind::Float, 1);
      case 0xaf: return do_return(ValueKind::Double, 2);
      case 0xb0: return do_return(ValueKind::Ref, 1);
      case 0xb1: return do_return(ValueKind::Void, 0);

      // statics
      case op::kGetstatic: case op::kPutstatic: {
        const FieldRep* fld = operand_field(insn);
        if (!fld->is_static() || !fld->placement) {
          fail(ErrorCode::VerifyError, fld->name + " is not static");
        }
        touch(fld->owner);
        auto& z = zone(*fld->owner, fld->placement->zone);
        if (o == op::kGetstatic) {
          load_slots(z, fld->placement->offset, fld->slots());
        } else {
          store_slots(z, fld->placement->offset, pop_values(fld->slots()));
        }
        break;
      }
      case op::kGetstaticQuick: case op::kPutstaticQuick: {
        std::uint16_t operand = u2(pc + 1);
        std::uint8_t type = quick_field_type(operand);
        auto& z = zone(*f.cls, type == kTypeReference ? Zone::A : Zone::V);
        touch(f.cls);
        if (o == op::kGetstaticQuick) {
          load_slots(z, quick_field_offset(operand), type_code_slots(type));
        } else {
          store_slots(z, quick_field_offset(operand),
                      pop_values(type_code_slots(type)));
        }
        break;
      }

      // instance fields
      case op::kGetfield: {
        const FieldRep* fld = operand_field(insn);
        if (fld->is_static()) fail(ErrorCode::VerifyError, fld->name + " is static");
        std::uint32_t ref = pop();
        if (ref == 0) return raise("java/lang/NullPointerException");
        load_slots(object_slots(ref), fld->instance_offset, fld->slots());
        break;
      }
      case op::kPutfield: {
        const FieldRep* fld = operand_field(insn);
        if (fld->is_static()) fail(ErrorCode::VerifyError, fld->name + " is static");
        auto values = pop_values(fld->slots());
        std::uint32_t ref = pop();
        if (ref == 0) return raise("java/lang/NullPointerException");
        store_slots(object_slots(ref), fld->instance_offset, values);
        break;
      }
      case op::kGetfieldQuick: {
        std::uint16_t operand = u2(pc + 1);
        std::uint32_t ref = pop();
        if (ref == 0) return raise("java/lang/NullPointerException");
        load_slots(object_slots(ref), quick_field_offset(operand),
                   type_code_slots(quick_field_type(operand)));
        break;
      }
      case op::kPutfieldQuick: {
        std::uint16_t operand = u2(pc + 1);
        auto values = pop_values(type_code_slots(quick_field_type(operand)));
        std::uint32_t ref = pop();
        if (ref == 0) return raise("java/lang/NullPointerException");
        store_slots(object_slots(ref), quick_field_offset(operand), values);
        break;
      }

      // invocation
      case op::kInvokevirtual: case op::kInvokeinterface: {
        const AEntry* h = nullptr;
        const MethodRep* resolved = operand_method(insn, &h);
        std::uint32_t nargs = descriptor_arg_slots(h->descriptor) + 1;
        std::uint32_t recv = peek(nargs - 1);
        if (recv == 0) return raise("java/lang/NullPointerException");
        const MethodRep* target = resolved;
        if (resolved->is_virtual()) {
          const ClassRep* rc = runtime_class(recv);
          if (rc != nullptr) {
            if (const MethodRep* m = rc->lookup_method(h->text, h->descriptor)) {
              target = m;
            }
          }
        }
        return invoke(*target, nargs, next);
      }
      case op::kInvokevirtualQuick: {
        std::uint32_t nargs = u1(pc + 1);
        std::uint32_t slot = u1(pc + 2);
        if (nargs == 0) fail(ErrorCode::VerifyError, "quick invoke with no receiver");
        std::uint32_t recv = peek(nargs - 1);
        if (recv == 0) return raise("java/lang/NullPointerException");
        const ClassRep* rc = runtime_class(recv);
        if (rc == nullptr || slot >= rc->dispatch_table.size()) {
          fail(ErrorCode::InternalError,
               "dispatch slot " + std::to_string(slot) + " out of range");
        }
        const MethodRep* target = rc->dispatch_table[slot];
        if (target->nargs != nargs) {
          fail(ErrorCode::InternalError, "dispatch slot " + std::to_string(slot) +
                                             " takes " +
                                             std::to_string(target->nargs) +
                                             " argument slots");
        }
        return invoke(*target, nargs, next);
      }
      case op::kInvokespecial: {
        const MethodRep* target = operand_method(insn);
        std::uint32_t nargs = target->nargs;
        if (peek(nargs - 1) == 0) return raise("java/lang/NullPointerException");
        return invoke(*target, nargs, next);
      }
      case op::kInvokestatic: {
        const MethodRep* target = operand_method(insn);
        if (!target->is_static()) fail(ErrorCode::VerifyError, "not static");
        touch(target->owner);
        return invoke(*target, target->nargs, next);
      }

      // objects
      case op::kNew: {
        ClassRep* c = operand_class(insn);
        touch(c);
        if (c->is_interface() || (c->access_flags & kAccAbstract)) {
          return raise("java/lang/InstantiationError");
        }
        push(heap().new_object(c->name(), c, c->instance_slots));
        break;
      }
      case op::kNewarray: {
        std::string desc = newarray_descriptor(u1(pc + 1));
        if (desc.empty()) fail(ErrorCode::VerifyError, "bad newarray type");
        std::int32_t n = pop_i();
        if (n < 0) return raise("java/lang/NegativeArraySizeException");
        if (!fits(n)) return raise("java/lang/OutOfMemoryError");
        push(heap().new_array(desc, static_cast<std::size_t>(n)));
        break;
      }
      case op::kAnewarray: case op::kAnewarrayQuick: {
        const AEntry& e = aentry(where(insn), AKind::ClassHandle);
        std::int32_t n = pop_i();
        if (n < 0) return raise("java/lang/NegativeArraySizeException");
        if (!fits(n)) return raise("java/lang/OutOfMemoryError");
        push(heap().new_array(array_of(e.class_name), static_cast<std::size_t>(n)));
        break;
      }
      case op::kArraylength: {
        std::uint32_t ref = pop();
        if (ref == 0) return raise("java/lang/NullPointerException");
        push_i(static_cast<std::int32_t>(array_ref(ref)->elems.size()));
        break;
      }
      case op::kAthrow: {
        std::uint32_t ref = pop();
        if (ref == 0) return raise("java/lang/NullPointerException");
        return unwind(ref);
      }
      case op::kCheckcast: {
        const AEntry& e = aentry(where(insn), AKind::ClassHandle);
        std::uint32_t ref = peek(0);
        if (ref != 0 && !assignable(heap().type_of(ref), e.class_name)) {
          return raise("java/lang/ClassCastException");
        }
        break;
      }
      case op::kInstanceof: {
        const AEntry& e = aentry(where(insn), AKind::ClassHandle);
        std::uint32_t ref = pop();
        push_i(ref != 0 && assignable(heap().type_of(ref), e.class_name) ? 1 : 0);
        break;
      }

      default:
        fail(ErrorCode::UnsupportedOpcode,
             "unsupported opcode " + std::string(op_info(o).mnemonic) + " (" +
                 std::to_string(o) + ")");
    }
    top().pc = jump.value_or(next);
    return std::nullopt;
  }

  std::vector<std::uint32_t>& object_slots(std::uint32_t ref) {
    if (!heap().contains(ref) || heap().is_array(ref)) {
      fail(ErrorCode::VerifyError, "field access on a non-object");
    }
    return heap().object(ref).slots;
  }
};

Outcome Machine::execute(const MethodRep& entry,
                         const std::vector<std::uint32_t>& args,
                         const ExecOptions& options) {
  Run run(*this, options);
  return run.run(entry, args);
}

// ----------------------------------------------------------- initializers

ClinitRunner::ClinitRunner(World& world, std::uint64_t fuel)
    : world_(world), fuel_(fuel) {}

std::uint32_t ClinitRunner::intern(const std::string& text) {
  const ClassRep* s = world_.registry ? world_.registry->find(kString) : nullptr;
  return world_.heap.intern(text, s);
}

void ClinitRunner::run_clinit(MethodRep& clinit) {
  Machine machine(world_, false, this);
  ExecOptions options;
  options.fuel = fuel_;
  Outcome out;
  try {
    out = machine.execute(clinit, {}, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnsupportedClinit) throw;
    throw Error(ErrorCode::UnsupportedClinit,
                clinit.qualified_name() + ": " + e.what());
  }
  if (out.kind != Outcome::Kind::Returned) {
    throw Error(ErrorCode::UnsupportedClinit,
                clinit.qualified_name() + ": " + out.describe());
  }
}

std::vector<std::string> make_world_ready(World& world) {
  std::vector<std::string> failed;
  ClinitRunner runner(world);
  for (ClassRep* c : world.registry->classes()) {
    if (c->state() == LoadState::Unloaded || c->ready()) continue;
    try {
      make_ready(*c, runner);
    } catch (const Error&) {
      failed.push_back(c->name());
    }
  }
  return failed;
}

// -------------------------------------------------------------- arguments

namespace {

std::uint64_t pick_int(std::mt19937_64& rng) {
  static constexpr std::int32_t kEdges[] = {
      0, 1, -1, 2, 7, 10, 100, std::numeric_limits<std::int32_t>::min(),
      std::numeric_limits<std::int32_t>::max()};
  switch (rng() % 8) {
    case 0:
      return static_cast<std::uint32_t>(kEdges[rng() % std::size(kEdges)]);
    case 7:
      return static_cast<std::uint32_t>(rng());
    default:
      return static_cast<std::uint32_t>(static_cast<std::int32_t>(rng() % 41) - 10);
  }
}

std::uint64_t pick_long(std::mt19937_64& rng) {
  static constexpr std::int64_t kEdges[] = {
      0, 1, -1, 1000000007, std::numeric_limits<std::int64_t>::min(),
      std::numeric_limits<std::int64_t>::max()};
  switch (rng() % 8) {
    case 0:
      return static_cast<std::uint64_t>(kEdges[rng() % std::size(kEdges)]);
    case 7:
      return rng();
    default:
      return static_cast<std::uint64_t>(static_cast<std::int64_t>(rng() % 201) - 100);
  }
}

double pick_real(std::mt19937_64& rng) {
  static constexpr double kEdges[] = {0.0, -0.0, 1.0, -1.0, 0.5,
                                      1e30, -1e-30, 3.25};
  switch (rng() % 8) {
    case 0:
      return kEdges[rng() % std::size(kEdges)];
    case 7:
      return static_cast<double>(static_cast<std::int64_t>(rng() % 2000001) -
                                 1000000) / 7.0;
    default:
      return static_cast<double>(static_cast<std::int64_t>(rng() % 401) - 200) / 4.0;
  }
}

std::uint64_t pick_prim(char t, std::mt19937_64& rng) {
  switch (t) {
    case 'Z': return rng() % 2;
    case 'B': return static_cast<std::uint32_t>(static_cast<std::int8_t>(rng()));
    case 'C': {
      static constexpr char kChars[] = "aZ09 _-+x(";
      return rng() % 4 == 0 ? static_cast<std::uint64_t>(rng() % 128)
                            : static_cast<std::uint64_t>(
                                  kChars[rng() % (sizeof(kChars) - 1)]);
    }
    case 'S': return static_cast<std::uint32_t>(static_cast<std::int16_t>(rng()));
    case 'I': return pick_int(rng);
    case 'J': return pick_long(rng);
    case 'F': return std::bit_cast<std::uint32_t>(static_cast<float>(pick_real(rng)));
    case 'D': return std::bit_cast<std::uint64_t>(pick_real(rng));
    default: return 0;
  }
}

ArgValue pick_value(std::string_view type, std::mt19937_64& rng) {
  ArgValue v;
  v.type = std::string(type);
  if (is_primitive_letter(type)) {
    v.bits = pick_prim(type[0], rng);
    return v;
  }
  if (rng() % 6 == 0) {
    v.kind = ArgValue::Kind::Null;
    return v;
  }
  if (type == "Ljava/lang/String;") {
    static const char* kTexts[] = {"",      "a",       "hello", "Hello World",
                                   "  pad ", "12345",  "-42",   "abcabc",
                                   "x,y,z", "racecar"};
    v.kind = ArgValue::Kind::String;
    v.text = kTexts[rng() % std::size(kTexts)];
    return v;
  }
  if (type[0] == '[') {
    v.kind = ArgValue::Kind::Array;
    std::size_t n = rng() % 7;
    std::string_view elem = type.substr(1);
    v.elems.resize(n, 0);
    if (is_primitive_letter(elem)) {
      for (auto& e : v.elems) e = pick_prim(elem[0], rng);
    }
    return v;
  }
  v.kind = ArgValue::Kind::Object;
  return v;
}

}  // namespace

std::vector<ArgValue> generate_args(const MethodRep& method,
                                    std::mt19937_64& rng) {
  std::vector<ArgValue> out;
  if (!method.is_static()) {
    ArgValue self;
    self.kind = ArgValue::Kind::Object;
    self.type = "L" + (method.owner ? method.owner->name() : std::string()) + ";";
    out.push_back(std::move(self));
  }
  for (std::string_view p : descriptor_params(method.descriptor)) {
    out.push_back(pick_value(p, rng));
  }
  return out;
}

std::vector<std::uint32_t> materialize(const std::vector<ArgValue>& args,
                                       World& world) {
  std::vector<std::uint32_t> slots;
  auto find = [&](std::string_view name) -> ClassRep* {
    return world.registry ? world.registry->find(name) : nullptr;
  };
  for (const ArgValue& a : args) {
    switch (a.kind) {
      case ArgValue::Kind::Prim:
        if (a.type == "J" || a.type == "D") {
          slots.push_back(static_cast<std::uint32_t>(a.bits >> 32));
          slots.push_back(static_cast<std::uint32_t>(a.bits));
        } else {
          slots.push_back(static_cast<std::uint32_t>(a.bits));
        }
        break;
      case ArgValue::Kind::Null:
        slots.push_back(0);
        break;
      case ArgValue::Kind::String:
        slots.push_back(world.heap.intern(a.text, find(kString)));
        break;
      case ArgValue::Kind::Array: {
        std::uint32_t id = world.heap.new_array(a.type, a.elems.size());
        world.heap.array(id).elems = a.elems;
        slots.push_back(id);
        break;
      }
      case ArgValue::Kind::Object: {
        std::string name = element_type(a.type);
        ClassRep* c = find(name);
        if (c == nullptr || c->is_interface() || c->kind() != ClassKind::Regular) {
          slots.push_back(0);
        } else {
          slots.push_back(world.heap.new_object(name, c, c->instance_slots));
        }
        break;
      }
    }
  }
  return slots;
}

// ------------------------------------------------------------ differential

namespace {

std::string zones_difference(const Machine& a, const World& wa,
                             const Machine& b, const World& wb) {
  auto za = a.touched_zones();
  auto zb = b.touched_zones();
  std::set<std::string> names;
  for (const auto& [n, z] : za) names.insert(n);
  for (const auto& [n, z] : zb) names.insert(n);
  auto base = [](const World& w, const std::string& n) {
    const ClassRep* c = w.registry->find(n);
    return c ? c->statics : StaticZones{};
  };
  for (const std::string& n : names) {
    StaticZones x = za.count(n) ? za.at(n) : base(wa, n);
    StaticZones y = zb.count(n) ? zb.at(n) : base(wb, n);
    if (x.a != y.a) return "static a-zone of " + n;
    if (x.v != y.v) {
      for (std::size_t i = 0; i < std::min(x.v.size(), y.v.size()); ++i) {
        if (x.v[i] != y.v[i]) {
          return "static v-zone of " + n + " slot " + std::to_string(i) + ": " +
                 hex32(x.v[i]) + " vs " + hex32(y.v[i]);
        }
      }
      return "static v-zone size of " + n;
    }
  }
  return {};
}

}  // namespace

DiffResult differential_check(const MethodRep& before_method,
                              const World& before,
                              const MethodRep& after_method,
                              const World& after,
                              const std::vector<ArgValue>& args,
                              const ExecOptions& options) {
  World wa{before.registry, before.heap};
  World wb{after.registry, after.heap};
  std::vector<std::uint32_t> sa = materialize(args, wa);
  std::vector<std::uint32_t> sb = materialize(args, wb);
  Machine ma(wa, true);
  Machine mb(wb, true);
  DiffResult r;
  r.before = ma.execute(before_method, sa, options);
  try {
    r.after = mb.execute(after_method, sb, options);
  } catch (const Error& e) {
    r.equal = false;
    r.difference = std::string("after raised ") +
                   std::string(error_code_name(e.code())) + ": " + e.what();
    return r;
  }
  if (!(r.before == r.after)) {
    r.equal = false;
    r.difference = "outcome " + r.before.describe() + " vs " + r.after.describe();
    return r;
  }
  if (std::string z = zones_difference(ma, wa, mb, wb); !z.empty()) {
    r.equal = false;
    r.difference = z;
    return r;
  }
  if (std::string h = wa.heap.first_difference(wb.heap); !h.empty()) {
    r.equal = false;
    r.difference = h;
  }
  return r;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Checked {
  const MethodRep* before;
  MethodRep* after;
  std::vector<std::vector<ArgValue>> vectors;
};

// Byte offset and xor mask of the operand byte this sentinel may flip, if
// the instruction carries a constant or quick operand.
std::optional<std::pair<std::uint32_t, std::uint8_t>> mutation_point(
    const Instruction& insn) {
  switch (insn.opcode) {
    case op::kBipush:
    case op::kLdcQuickI:
    case op::kLdcQuickF:
    case op::kLdcQuickA:
      return std::pair{insn.pc + 1, std::uint8_t{1}};
    case op::kSipush:
    case op::kLdcWQuickI:
    case op::kLdcWQuickF:
    case op::kLdcWQuickA:
    case op::kLdc2QuickL:
    case op::kLdc2QuickD:
      return std::pair{insn.pc + 2, std::uint8_t{1}};
    case op::kIinc:
      if (insn.wide) return std::nullopt;
      return std::pair{insn.pc + 2, std::uint8_t{1}};
    case op::kGetstaticQuick:
    case op::kPutstaticQuick:
    case op::kGetfieldQuick:
    case op::kPutfieldQuick:
      return std::pair{insn.pc + 2, std::uint8_t{1 << 3}};
    case op::kInvokevirtualQuick:
      return std::pair{insn.pc + 2, std::uint8_t{1}};
    default:
      return std::nullopt;
  }
}

}  // namespace

SuiteReport differential_suite(const World& before, World& after,
                               const SuiteOptions& options) {
  SuiteReport report;
  std::set<std::pair<const MethodRep*, std::uint32_t>> coverage;
  ExecOptions exec;
  exec.fuel = options.fuel;
  exec.trace = options.trace;
  exec.coverage = &coverage;

  if (std::string z = [&]() -> std::string {
        for (const ClassRep* c : before.registry->classes()) {
          const ClassRep* d = after.registry->find(c->name());
          if (d == nullptr || c->kind() != ClassKind::Regular) continue;
          if (c->statics != d->statics) return "initial statics of " + c->name();
        }
        return before.heap.first_difference(after.heap);
      }();
      !z.empty()) {
    report.zones_difference = z;
  }

  std::vector<Checked> checked;
  for (const ClassRep* c : before.registry->classes()) {
    if (c->kind() != ClassKind::Regular || c->state() == LoadState::Unloaded) {
      continue;
    }
    const ClassRep* d = after.registry->find(c->name());
    for (const auto& m : c->methods) {
      std::string name = m->qualified_name();
      if (!m->code) {
        ++report.skipped;
        report.skipped_methods.push_back(name + " (no code)");
        continue;
      }
      MethodRep* am = d ? d->find_method(m->name, m->descriptor) : nullptr;
      if (am == nullptr || !am->code) {
        report.failures.push_back({name, "missing after transformation"});
        continue;
      }
      std::mt19937_64 rng(options.seed ^ fnv1a(name));
      Checked entry{m.get(), am, {}};
      std::optional<std::string> skip;
      std::optional<MethodFailure> failure;
      for (int v = 0; v < options.vectors && !skip && !failure; ++v) {
        std::vector<ArgValue> args = generate_args(*m, rng);
        try {
          DiffResult r = differential_check(*m, before, *am, after, args, exec);
          ++report.vectors;
          if (!r.equal) {
            failure = MethodFailure{
                name, "vector " + std::to_string(v) + ": " + r.difference};
          }
        } catch (const Error& e) {
          if (e.code() == ErrorCode::UnsupportedOpcode) {
            skip = e.what();
          } else {
            failure = MethodFailure{name, std::string("reference run failed: ") +
                                              e.what()};
          }
        }
        entry.vectors.push_back(std::move(args));
      }
      if (skip) {
        ++report.skipped;
        report.skipped_methods.push_back(name + " (" + *skip + ")");
      } else if (failure) {
        report.failures.push_back(*failure);
      } else {
        ++report.checked;
        checked.push_back(std::move(entry));
      }
    }
  }

  if (!options.mutation_sentinel || checked.empty()) return report;
  exec.coverage = nullptr;
  std::size_t n = checked.size();
  std::size_t start = options.seed % n;
  for (std::size_t k = 0; k < n && !report.mutation_ran; ++k) {
    Checked& c = checked[(start + k) % n];
    Bytes& code = c.after->code->bytecode;
    for (const Instruction& insn : decode(code)) {
      auto point = mutation_point(insn);
      if (!point || !coverage.count({c.after, insn.pc})) continue;
      report.mutation_ran = true;
      report.mutation_target = c.after->qualified_name() + " pc " +
                               std::to_string(insn.pc) + " " +
                               std::string(op_info(insn.opcode).mnemonic);
      code[point->first] ^= point->second;
      try {
        for (const auto& args : c.vectors) {
          DiffResult r = differential_check(*c.before, before, *c.after, after,
                                            args, exec);
          if (!r.equal) {
            report.mutation_detected = true;
            break;
          }
        }
      } catch (...) {
        code[point->first] ^= point->second;
        throw;
      }
      code[point->first] ^= point->second;
      break;
    }
  }
  return report;
}

}  // namespace jrom
