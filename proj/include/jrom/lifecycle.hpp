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

// Class lifecycle: unloaded -> loaded -> linked, with an orthogonal ready
// flag that may be set at loaded or linked and is never cleared.
//
// Loading parses the class file, builds and prelinks the two-table pool,
// lays out static zones and instance slots, rewrites ldc/anewarray to quick
// forms, and builds the dispatch table. Linking lives in linker.hpp.

#ifndef JROM_LIFECYCLE_HPP_
#define JROM_LIFECYCLE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jrom/bytes.hpp"
#include "jrom/classfile.hpp"
#include "jrom/constpool.hpp"

namespace jrom {

enum class LoadState : std::uint8_t { Unloaded, Loaded, Linked };
enum class ClassKind : std::uint8_t { Regular, Array, Primitive };
enum class Stage : std::uint8_t { Unloaded, Loaded, Linked };

std::string_view load_state_name(LoadState state);
std::string_view stage_name(Stage stage);

// 3-bit field type codes carried by quick static/field operands.
enum TypeCode : std::uint8_t {
  kTypeReference = 0,
  kTypeInt = 1,
  kTypeFloat = 2,
  kTypeLong = 3,
  kTypeDouble = 4,
  kTypeByte = 5,  // also boolean
  kTypeChar = 6,
  kTypeShort = 7,
};

std::uint8_t type_code_of(std::string_view field_descriptor);
inline std::uint32_t type_code_slots(std::uint8_t code) {
  return code == kTypeLong || code == kTypeDouble ? 2 : 1;
}

inline constexpr std::uint32_t kStaticOffsetLimit = 1u << 13;

inline constexpr std::uint16_t encode_quick_field(std::uint16_t offset,
                                                  std::uint8_t type_code) {
  return static_cast<std::uint16_t>((offset << 3) | (type_code & 0x7));
}
inline constexpr std::uint16_t quick_field_offset(std::uint16_t operand) {
  return operand >> 3;
}
inline constexpr std::uint8_t quick_field_type(std::uint16_t operand) {
  return operand & 0x7;
}

enum class Zone : std::uint8_t { A, V };

struct StaticPlacement {
  Zone zone = Zone::V;
  std::uint16_t offset = 0;
  std::uint8_t type_code = kTypeInt;
};

// Initial value from a ConstantValue attribute.
struct ConstantInit {
  ConstantTag tag = ConstantTag::Integer;
  std::uint64_t value = 0;
  std::string text;  // String constants
};

class ClassRep;

struct FieldRep {
  ClassRep* owner = nullptr;
  std::string name;
  std::string descriptor;
  std::uint16_t access_flags = 0;
  std::uint8_t type_code = kTypeInt;
  std::optional<StaticPlacement> placement;  // statics only
  std::uint16_t instance_offset = 0;         // instance fields only
  std::optional<ConstantInit> constant_value;
  std::uint16_t name_entry = 0;        // atable text, for reflection
  std::uint16_t descriptor_entry = 0;

  bool is_static() const { return access_flags & kAccStatic; }
  bool is_private() const { return access_flags & kAccPrivate; }
  bool is_public() const { return access_flags & kAccPublic; }
  std::uint32_t slots() const { return type_code_slots(type_code); }
};

struct ExceptionEntry {
  std::uint16_t start_pc = 0;
  std::uint16_t end_pc = 0;
  std::uint16_t handler_pc = 0;
  std::uint16_t catch_type = 0;  // atable ClassHandle or 0 (any)

  bool operator==(const ExceptionEntry&) const = default;
};

// How non-quick pool operands are to be read: raw class-file indexes
// (resolved through the pool's origin map) before linking, table indexes
// afterwards.
enum class OperandSpace : std::uint8_t { Raw, Tables };

struct MethodCode {
  Bytes bytecode;
  std::uint16_t max_stack = 0;
  std::uint16_t max_locals = 0;
  std::vector<ExceptionEntry> exception_table;
  std::optional<Bytes> stack_maps;
  OperandSpace operands = OperandSpace::Raw;

  bool operator==(const MethodCode&) const = default;
};

struct MethodRep {
  ClassRep* owner = nullptr;
  std::string name;
  std::string descriptor;
  std::uint16_t access_flags = 0;
  std::uint32_t nargs = 0;  // argument slots, receiver included
  std::optional<MethodCode> code;
  std::optional<std::uint16_t> dispatch_slot;
  std::uint16_t name_entry = 0;
  std::uint16_t descriptor_entry = 0;

  bool is_static() const { return access_flags & kAccStatic; }
  bool is_private() const { return access_flags & kAccPrivate; }
  bool is_native() const { return access_flags & kAccNative; }
  bool is_abstract() const { return access_flags & kAccAbstract; }
  bool is_initializer() const { return name == "<init>" || name == "<clinit>"; }
  bool is_virtual() const {
    return !is_static() && !is_private() && !is_initializer();
  }
  std::string qualified_name() const;
};

struct StaticZones {
  std::vector<std::uint32_t> a;  // heap ids, 0 = null
  std::vector<std::uint32_t> v;

  bool operator==(const StaticZones&) const = default;
};

struct StageStats {
  PoolStats pool;
  std::size_t class_bytes = 0;

  bool operator==(const StageStats&) const = default;
};

class ClassRep {
 public:
  explicit ClassRep(std::string name, ClassKind kind = ClassKind::Regular);

  ClassRep(const ClassRep&) = delete;
  ClassRep& operator=(const ClassRep&) = delete;

  const std::string& name() const { return name_; }
  ClassKind kind() const { return kind_; }
  LoadState state() const { return state_; }
  bool ready() const { return ready_; }

  // Moves along loaded/linked edges only; anything else throws
  // IllegalTransition.
  void advance(LoadState to);
  // Sets ready; throws IllegalTransition for unloaded classes.
  void set_ready();

  bool is_interface() const { return access_flags & kAccInterface; }
  std::string package() const;

  FieldRep* find_field(std::string_view name, std::string_view descriptor) const;
  MethodRep* find_method(std::string_view name,
                         std::string_view descriptor) const;
  // Searches this class, then superclasses, then superinterfaces.
  FieldRep* lookup_field(std::string_view name,
                         std::string_view descriptor) const;
  MethodRep* lookup_method(std::string_view name,
                           std::string_view descriptor) const;
  bool is_subclass_of(const ClassRep& other) const;

  // Drops everything load() filled in. Used when a load fails halfway.
  void reset_contents();

  std::uint16_t access_flags = 0;
  ClassRep* super = nullptr;
  std::vector<ClassRep*> interfaces;
  RuntimePool pool;
  std::vector<std::unique_ptr<FieldRep>> fields;
  std::vector<std::unique_ptr<MethodRep>> methods;
  std::vector<MethodRep*> dispatch_table;
  StaticZones statics;
  std::uint32_t instance_slots = 0;
  std::optional<StageStats> unloaded_stats;
  std::optional<StageStats> loaded_stats;
  std::optional<StageStats> linked_stats;

  bool loading = false;       // load() in progress (cycle detection)
  bool initializing = false;  // make_ready() in progress

 private:
  std::string name_;
  ClassKind kind_;
  LoadState state_ = LoadState::Unloaded;
  bool ready_ = false;
};

// Name-keyed, registry-backed ClassRep store. One instance per name.
class ClassRegistry {
 public:
  // Throws InvalidName for the empty name.
  ClassRep& new_unloaded(std::string_view name);
  ClassRep* find(std::string_view name) const;
  // All classes, sorted by name.
  std::vector<ClassRep*> classes() const;
  // Inserts a fully built class (image loading).
  ClassRep& adopt(std::unique_ptr<ClassRep> cls);

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<ClassRep>, std::less<>> classes_;
};

class ClassSource {
 public:
  virtual ~ClassSource() = default;
  virtual std::optional<Bytes> find(const std::string& binary_name) const = 0;
  virtual std::string describe() const = 0;
};

class DirectorySource : public ClassSource {
 public:
  // Throws Io if the directory does not exist.
  explicit DirectorySource(std::filesystem::path root);
  std::optional<Bytes> find(const std::string& binary_name) const override;
  std::string describe() const override { return root_.string(); }

 private:
  std::filesystem::path root_;
};

class MemorySource : public ClassSource {
 public:
  void add(std::string binary_name, Bytes bytes);
  std::optional<Bytes> find(const std::string& binary_name) const override;
  std::string describe() const override { return "<memory>"; }

 private:
  std::map<std::string, Bytes, std::less<>> files_;
};

// Ordered list of sources searched for `<binary-name>.class`.
class ClassPath {
 public:
  void add(std::shared_ptr<const ClassSource> source);
  void add_directory(const std::filesystem::path& dir);
  std::optional<Bytes> find(const std::string& binary_name) const;
  bool empty() const { return sources_.empty(); }

 private:
  std::vector<std::shared_ptr<const ClassSource>> sources_;
};

struct LoadOptions {
  bool introspection = true;
};

class Resolver {
 public:
  virtual ~Resolver() = default;
  // Registry entry for `name`, possibly still unloaded.
  virtual ClassRep& handle(const std::string& name) = 0;
  // Loads `name` if needed. Throws ClassNotFound.
  virtual ClassRep& require_loaded(const std::string& name) = 0;
};

class ClassLoader : public Resolver {
 public:
  ClassLoader(ClassRegistry& registry, ClassPath classpath,
              LoadOptions options = {});

  ClassRep& handle(const std::string& name) override;
  ClassRep& require_loaded(const std::string& name) override;

  ClassRegistry& registry() { return registry_; }
  const LoadOptions& options() const { return options_; }

 private:
  ClassRegistry& registry_;
  ClassPath classpath_;
  LoadOptions options_;
  std::recursive_mutex mu_;
};

bool is_array_name(std::string_view name);
bool is_primitive_name(std::string_view name);
// Array and primitive classes are created directly as loaded + ready.
void synthesize(ClassRep& cls, ClassRep* object_class);

void load(ClassRep& cls, ByteView bytes, Resolver& resolver,
          const LoadOptions& options = {});

// Places statics in declaration order: references in the a-zone,
// primitives in the v-zone (long/double take two slots). Throws
// StaticOverflow once an offset reaches 2^13.
void lay_out_statics(ClassRep& cls);

// Rewrites ldc/ldc_w/ldc2_w/anewarray to their quick forms and marks the
// entries every pool-touching instruction references. Lengths unchanged.
MethodCode rewrite_load(MethodCode code, RuntimePool& pool,
                        const std::vector<Origin>& origin);

void build_dispatch_table(ClassRep& cls);

// Marks the entries referenced by one method body (operands and catch
// types), in whichever operand space the code is in.
void mark_code(const MethodCode& code, RuntimePool& pool);
// Marks name and descriptor text of every declared member.
void mark_member_names(ClassRep& cls);

StageStats measure_stage(const ClassRep& cls);

class StaticInitializer {
 public:
  virtual ~StaticInitializer() = default;
  // Heap id of the interned string.
  virtual std::uint32_t intern(const std::string& text) = 0;
  // Executes `<clinit>`. Throws UnsupportedClinit if it cannot.
  virtual void run_clinit(MethodRep& clinit) = 0;
};

// Writes ConstantValue statics and runs `<clinit>` (superclass first).
// Leaves the class non-ready if initialization throws.
void make_ready(ClassRep& cls, StaticInitializer& init);

}  // namespace jrom

#endif  // JROM_LIFECYCLE_HPP_
