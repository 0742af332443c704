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

// Runtime constant pool split in two tables.
//
// The atable holds reference-kind entries (text, string literals, class and
// member handles); the vtable holds 32-bit cells (immediates, the two words
// of a long/double, and cells that pack atable indexes). Both tables are
// 1-indexed; slot 0 is reserved so that index 0 can mean "none".
//
// Packed cell layout: high 16 bits = first index, low 16 bits = second.

#ifndef JROM_CONSTPOOL_HPP_
#define JROM_CONSTPOOL_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jrom/classfile.hpp"

namespace jrom {

class ClassRep;
struct FieldRep;
struct MethodRep;

enum class PoolTable : std::uint8_t { ATable, VTable };

enum class AKind : std::uint8_t {
  Utf8Text,
  StringLiteral,
  ClassHandle,
  FieldHandle,
  MethodHandle,
};

struct AEntry {
  AKind kind = AKind::Utf8Text;
  std::string text;        // Utf8Text/StringLiteral text; member name
  std::string descriptor;  // member handles only
  std::string class_name;  // ClassHandle target / member's symbolic class
  ClassRep* cls = nullptr;
  const FieldRep* field = nullptr;    // set once unified
  const MethodRep* method = nullptr;  // set once unified
  bool interface_method = false;

  bool resolved() const { return field != nullptr || method != nullptr; }
};

enum class VKind : std::uint8_t {
  Int,
  Float,
  Long,      // high word; the low word follows as WideLow
  Double,    // high word; the low word follows as WideLow
  WideLow,
  StringRef, // atable index of a StringLiteral
  NameAndType,
  FieldRef,
  MethodRef,
  InterfaceMethodRef,
};

std::string_view vkind_name(VKind kind);
std::string_view akind_name(AKind kind);

inline constexpr std::uint32_t pack_pair(std::uint16_t first,
                                         std::uint16_t second) {
  return (std::uint32_t{first} << 16) | second;
}
inline constexpr std::uint16_t pair_first(std::uint32_t cell) {
  return static_cast<std::uint16_t>(cell >> 16);
}
inline constexpr std::uint16_t pair_second(std::uint32_t cell) {
  return static_cast<std::uint16_t>(cell & 0xFFFF);
}

// Where a raw constant landed.
struct Origin {
  PoolTable table = PoolTable::ATable;
  std::uint16_t index = 0;  // 0 = nowhere (slot 0, placeholder)
};

// Entry counts and modeled sizes over the live (marked) entries.
struct PoolStats {
  std::size_t entries = 0;
  std::size_t bytes = 0;

  bool operator==(const PoolStats&) const = default;
};

struct PackStats {
  PoolStats before;  // every entry present before the sweep
  PoolStats after;
};

class RuntimePool {
 public:
  RuntimePool();

  std::vector<AEntry> atable;
  std::vector<std::uint32_t> vtable;
  std::vector<VKind> vkinds;
  std::vector<bool> amarks;
  std::vector<bool> vmarks;

  // Raw index -> location; cleared once the pool has been packed and the
  // code relinked.
  std::vector<Origin> origin;

  // Populated by pack(): old index -> new index, 0 for swept entries.
  struct Remap {
    std::vector<std::uint16_t> atable;
    std::vector<std::uint16_t> vtable;
  };
  std::optional<Remap> remap;

  std::size_t a_size() const { return atable.size() - 1; }
  std::size_t v_size() const { return vtable.size() - 1; }

  std::uint16_t add_a(AEntry entry);
  std::uint16_t add_v(VKind kind, std::uint32_t value);
  std::uint16_t add_wide(VKind kind, std::uint64_t value);

  const AEntry& a(std::uint32_t index) const;
  AEntry& a(std::uint32_t index);
  VKind vkind(std::uint32_t index) const;
  std::uint32_t v(std::uint32_t index) const;
  std::uint64_t wide(std::uint32_t index) const;

  bool marked(PoolTable table, std::uint32_t index) const;
  bool in_range(PoolTable table, std::uint32_t index) const;
};

using ClassHandleProvider = std::function<ClassRep*(const std::string& name)>;

// Utf8 -> atable text, numeric constants -> vtable immediates. Every created
// entry starts marked. Other tags are filled in by the prelink passes.
RuntimePool build_pool(const RawClassFile& raw);

// Class -> ClassHandle, String -> StringRef cell over an interned literal,
// NameAndType -> cell packing two atable text indexes. Utf8 entries that no
// longer feed any surviving constant are unmarked.
void prelink_pass1(RuntimePool& pool, const RawClassFile& raw,
                   const ClassHandleProvider& resolver);

// Field/Method/InterfaceMethod refs -> cells packing (ClassHandle, member
// handle) atable indexes; member handles are interned per (class, name,
// descriptor). The NameAndType cells and text they consumed are unmarked.
void prelink_pass2(RuntimePool& pool, const RawClassFile& raw);

// Marks an entry and, through packing cells, the atable entries it names.
void mark(RuntimePool& pool, PoolTable table, std::uint32_t index);
void clear_marks(RuntimePool& pool);

// Sweeps unmarked entries from both tables, keeping relative order, and
// rewrites the indexes packed in surviving cells.
PackStats pack(RuntimePool& pool);

std::size_t entry_cost(const RuntimePool& pool, PoolTable table,
                       std::uint32_t index);
PoolStats measure_live(const RuntimePool& pool);
PoolStats measure_all(const RuntimePool& pool);

// Human-readable payload of an entry, following packed indexes. Two entries
// with equal descriptions denote the same constant.
std::string describe(const RuntimePool& pool, PoolTable table,
                     std::uint32_t index);

// Descriptions of every live entry (the surviving-entry multiset).
std::vector<std::string> live_entries(const RuntimePool& pool);

}  // namespace jrom

#endif  // JROM_CONSTPOOL_HPP_
