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

#include "jrom/constpool.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

#include "jrom/error.hpp"

namespace jrom {

namespace {

constexpr std::size_t kMaxTableEntries = 0xFFFF;

bool is_pair_cell(VKind kind) {
  return kind == VKind::NameAndType || kind == VKind::FieldRef ||
         kind == VKind::MethodRef || kind == VKind::InterfaceMethodRef;
}

std::uint16_t origin_index(const RuntimePool& pool, std::uint16_t raw_index,
                           PoolTable expected) {
  if (raw_index == 0 || raw_index >= pool.origin.size() ||
      pool.origin[raw_index].index == 0 ||
      pool.origin[raw_index].table != expected) {
    throw Error(ErrorCode::DanglingIndex,
                "raw constant #" + std::to_string(raw_index) +
                    " has not been placed");
  }
  return pool.origin[raw_index].index;
}

const RawConstant& raw_at(const RawClassFile& raw, std::uint16_t index) {
  if (index == 0 || index >= raw.raw_pool.size()) {
    throw Error(ErrorCode::DanglingIndex,
                "reference to nonexistent slot #" + std::to_string(index));
  }
  return raw.raw_pool[index];
}

const std::string& raw_utf8(const RawClassFile& raw, std::uint16_t index) {
  const RawConstant& c = raw_at(raw, index);
  if (c.tag != ConstantTag::Utf8) {
    throw Error(ErrorCode::DanglingIndex,
                "slot #" + std::to_string(index) + " is not Utf8");
  }
  return c.text;
}

std::string hex32(std::uint32_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s = "0x";
  for (int shift = 28; shift >= 0; shift -= 4) s += digits[(v >> shift) & 0xF];
  return s;
}

}  // namespace

std::string_view vkind_name(VKind kind) {
  switch (kind) {
    case VKind::Int: return "Int";
    case VKind::Float: return "Float";
    case VKind::Long: return "Long";
    case VKind::Double: return "Double";
    case VKind::WideLow: return "WideLow";
    case VKind::StringRef: return "StringRef";
    case VKind::NameAndType: return "NameAndType";
    case VKind::FieldRef: return "FieldRef";
    case VKind::MethodRef: return "MethodRef";
    case VKind::InterfaceMethodRef: return "InterfaceMethodRef";
  }
  return "?";
}

std::string_view akind_name(AKind kind) {
  switch (kind) {
    case AKind::Utf8Text: return "Utf8Text";
    case AKind::StringLiteral: return "StringLiteral";
    case AKind::ClassHandle: return "ClassHandle";
    case AKind::FieldHandle: return "FieldHandle";
    case AKind::MethodHandle: return "MethodHandle";
  }
  return "?";
}

RuntimePool::RuntimePool()
    : atable(1), vtable(1, 0), vkinds(1, VKind::Int), amarks(1, false),
      vmarks(1, false) {}

std::uint16_t RuntimePool::add_a(AEntry entry) {
  if (atable.size() > kMaxTableEntries) {
    throw Error(ErrorCode::PoolOverflow, "atable exceeds 65535 entries");
  }
  atable.push_back(std::move(entry));
  amarks.push_back(true);
  return static_cast<std::uint16_t>(atable.size() - 1);
}

std::uint16_t RuntimePool::add_v(VKind kind, std::uint32_t value) {
  if (vtable.size() > kMaxTableEntries) {
    throw Error(ErrorCode::PoolOverflow, "vtable exceeds 65535 cells");
  }
  vtable.push_back(value);
  vkinds.push_back(kind);
  vmarks.push_back(true);
  return static_cast<std::uint16_t>(vtable.size() - 1);
}

std::uint16_t RuntimePool::add_wide(VKind kind, std::uint64_t value) {
  std::uint16_t high = add_v(kind, static_cast<std::uint32_t>(value >> 32));
  add_v(VKind::WideLow, static_cast<std::uint32_t>(value));
  return high;
}

bool RuntimePool::in_range(PoolTable table, std::uint32_t index) const {
  std::size_t size = table == PoolTable::ATable ? atable.size() : vtable.size();
  return index >= 1 && index < size;
}

const AEntry& RuntimePool::a(std::uint32_t index) const {
  if (!in_range(PoolTable::ATable, index)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "atable index " + std::to_string(index));
  }
  return atable[index];
}

AEntry& RuntimePool::a(std::uint32_t index) {
  return const_cast<AEntry&>(std::as_const(*this).a(index));
}

VKind RuntimePool::vkind(std::uint32_t index) const {
  if (!in_range(PoolTable::VTable, index)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "vtable index " + std::to_string(index));
  }
  return vkinds[index];
}

std::uint32_t RuntimePool::v(std::uint32_t index) const {
  vkind(index);
  return vtable[index];
}

std::uint64_t RuntimePool::wide(std::uint32_t index) const {
  VKind k = vkind(index);
  if ((k != VKind::Long && k != VKind::Double) ||
      !in_range(PoolTable::VTable, index + 1)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "vtable index " + std::to_string(index) + " is not wide");
  }
  return (std::uint64_t{vtable[index]} << 32) | vtable[index + 1];
}

bool RuntimePool::marked(PoolTable table, std::uint32_t index) const {
  if (!in_range(table, index)) return false;
  return table == PoolTable::ATable ? amarks[index] : vmarks[index];
}

RuntimePool build_pool(const RawClassFile& raw) {
  RuntimePool pool;
  pool.origin.assign(raw.raw_pool.size(), Origin{});
  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    const RawConstant& c = raw.raw_pool[i];
    switch (c.tag) {
      case ConstantTag::Utf8: {
        AEntry e;
        e.kind = AKind::Utf8Text;
        e.text = c.text;
        pool.origin[i] = {PoolTable::ATable, pool.add_a(std::move(e))};
        break;
      }
      case ConstantTag::Integer:
        pool.origin[i] = {PoolTable::VTable,
                          pool.add_v(VKind::Int, std::uint32_t(c.value))};
        break;
      case ConstantTag::Float:
        pool.origin[i] = {PoolTable::VTable,
                          pool.add_v(VKind::Float, std::uint32_t(c.value))};
        break;
      case ConstantTag::Long:
        pool.origin[i] = {PoolTable::VTable, pool.add_wide(VKind::Long, c.value)};
        break;
      case ConstantTag::Double:
        pool.origin[i] = {PoolTable::VTable,
                          pool.add_wide(VKind::Double, c.value)};
        break;
      default:
        break;
    }
  }
  return pool;
}

void prelink_pass1(RuntimePool& pool, const RawClassFile& raw,
                   const ClassHandleProvider& resolver) {
  std::map<std::string, std::uint16_t> literals;
  std::map<std::string, std::uint16_t> classes;
  std::vector<bool> fed(raw.raw_pool.size(), false);  // Utf8 consumed here
  std::vector<bool> kept(raw.raw_pool.size(), false); // Utf8 used by a NAT

  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    const RawConstant& c = raw.raw_pool[i];
    switch (c.tag) {
      case ConstantTag::Class: {
        const std::string& name = raw_utf8(raw, c.first);
        fed[c.first] = true;
        auto [it, fresh] = classes.try_emplace(name, 0);
        if (fresh) {
          AEntry e;
          e.kind = AKind::ClassHandle;
          e.class_name = name;
          e.cls = resolver ? resolver(name) : nullptr;
          it->second = pool.add_a(std::move(e));
        }
        pool.origin[i] = {PoolTable::ATable, it->second};
        break;
      }
      case ConstantTag::String: {
        const std::string& text = raw_utf8(raw, c.first);
        fed[c.first] = true;
        auto [it, fresh] = literals.try_emplace(text, 0);
        if (fresh) {
          AEntry e;
          e.kind = AKind::StringLiteral;
          e.text = text;
          it->second = pool.add_a(std::move(e));
        }
        pool.origin[i] = {PoolTable::VTable,
                          pool.add_v(VKind::StringRef, it->second)};
        break;
      }
      case ConstantTag::NameAndType: {
        raw_utf8(raw, c.first);
        raw_utf8(raw, c.second);
        kept[c.first] = kept[c.second] = true;
        std::uint16_t name = origin_index(pool, c.first, PoolTable::ATable);
        std::uint16_t desc = origin_index(pool, c.second, PoolTable::ATable);
        pool.origin[i] = {PoolTable::VTable,
                          pool.add_v(VKind::NameAndType, pack_pair(name, desc))};
        break;
      }
      default:
        break;
    }
  }
  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    if (fed[i] && !kept[i]) pool.amarks[pool.origin[i].index] = false;
  }
}

void prelink_pass2(RuntimePool& pool, const RawClassFile& raw) {
  using Key = std::tuple<int, std::string, std::string, std::string>;
  std::map<Key, std::uint16_t> handles;
  std::vector<bool> consumed(raw.raw_pool.size(), false);  // NAT slots

  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    const RawConstant& c = raw.raw_pool[i];
    VKind kind;
    switch (c.tag) {
      case ConstantTag::Fieldref: kind = VKind::FieldRef; break;
      case ConstantTag::Methodref: kind = VKind::MethodRef; break;
      case ConstantTag::InterfaceMethodref:
        kind = VKind::InterfaceMethodRef;
        break;
      default: continue;
    }
    std::uint16_t class_index = origin_index(pool, c.first, PoolTable::ATable);
    const RawConstant& nat = raw_at(raw, c.second);
    if (nat.tag != ConstantTag::NameAndType) {
      throw Error(ErrorCode::DanglingIndex,
                  "member ref #" + std::to_string(i) + " lacks NameAndType");
    }
    consumed[c.second] = true;
    const AEntry& owner = pool.a(class_index);
    const std::string& name = raw_utf8(raw, nat.first);
    const std::string& desc = raw_utf8(raw, nat.second);
    Key key{static_cast<int>(kind), owner.class_name, name, desc};
    auto [it, fresh] = handles.try_emplace(key, 0);
    if (fresh) {
      AEntry e;
      e.kind = kind == VKind::FieldRef ? AKind::FieldHandle
                                       : AKind::MethodHandle;
      e.text = name;
      e.descriptor = desc;
      e.class_name = owner.class_name;
      e.cls = owner.cls;
      e.interface_method = kind == VKind::InterfaceMethodRef;
      it->second = pool.add_a(std::move(e));
    }
    pool.origin[i] = {PoolTable::VTable,
                      pool.add_v(kind, pack_pair(class_index, it->second))};
  }

  // Consumed NameAndType cells go away, and with them any text that only
  // they were keeping alive.
  std::vector<bool> still_used(raw.raw_pool.size(), false);
  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    const RawConstant& c = raw.raw_pool[i];
    if (c.tag != ConstantTag::NameAndType) continue;
    if (consumed[i]) {
      pool.vmarks[pool.origin[i].index] = false;
    } else if (pool.vmarks[pool.origin[i].index]) {
      still_used[c.first] = still_used[c.second] = true;
    }
  }
  for (std::size_t i = 1; i < raw.raw_pool.size(); ++i) {
    const RawConstant& c = raw.raw_pool[i];
    if (c.tag != ConstantTag::NameAndType || !consumed[i]) continue;
    for (std::uint16_t text : {c.first, c.second}) {
      if (!still_used[text]) pool.amarks[pool.origin[text].index] = false;
    }
  }
}

void mark(RuntimePool& pool, PoolTable table, std::uint32_t index) {
  if (!pool.in_range(table, index)) {
    throw Error(ErrorCode::IndexOutOfRange,
                std::string(table == PoolTable::ATable ? "atable" : "vtable") +
                    " index " + std::to_string(index));
  }
  if (table == PoolTable::ATable) {
    pool.amarks[index] = true;
    return;
  }
  VKind kind = pool.vkinds[index];
  if (kind == VKind::WideLow) {
    mark(pool, PoolTable::VTable, index - 1);
    return;
  }
  pool.vmarks[index] = true;
  std::uint32_t cell = pool.vtable[index];
  switch (kind) {
    case VKind::Long:
    case VKind::Double:
      pool.vmarks[index + 1] = true;
      break;
    case VKind::StringRef:
      mark(pool, PoolTable::ATable, cell);
      break;
    case VKind::NameAndType:
    case VKind::FieldRef:
    case VKind::MethodRef:
    case VKind::InterfaceMethodRef:
      mark(pool, PoolTable::ATable, pair_first(cell));
      mark(pool, PoolTable::ATable, pair_second(cell));
      break;
    default:
      break;
  }
}

void clear_marks(RuntimePool& pool) {
  std::fill(pool.amarks.begin(), pool.amarks.end(), false);
  std::fill(pool.vmarks.begin(), pool.vmarks.end(), false);
}

std::size_t entry_cost(const RuntimePool& pool, PoolTable table,
                       std::uint32_t index) {
  if (table == PoolTable::VTable) return 4;
  const AEntry& e = pool.atable[index];
  switch (e.kind) {
    case AKind::Utf8Text:
    case AKind::StringLiteral:
      return 2 + e.text.size();
    default:
      return 4;
  }
}

namespace {

PoolStats measure(const RuntimePool& pool, bool live_only) {
  PoolStats s;
  for (std::uint32_t i = 1; i < pool.atable.size(); ++i) {
    if (live_only && !pool.amarks[i]) continue;
    ++s.entries;
    s.bytes += entry_cost(pool, PoolTable::ATable, i);
  }
  for (std::uint32_t i = 1; i < pool.vtable.size(); ++i) {
    if (live_only && !pool.vmarks[i]) continue;
    if (pool.vkinds[i] != VKind::WideLow) ++s.entries;
    s.bytes += 4;
  }
  return s;
}

}  // namespace

PoolStats measure_live(const RuntimePool& pool) { return measure(pool, true); }
PoolStats measure_all(const RuntimePool& pool) { return measure(pool, false); }

PackStats pack(RuntimePool& pool) {
  PackStats stats;
  stats.before = measure_all(pool);

  RuntimePool::Remap remap;
  remap.atable.assign(pool.atable.size(), 0);
  remap.vtable.assign(pool.vtable.size(), 0);

  std::vector<AEntry> atable(1);
  for (std::uint32_t i = 1; i < pool.atable.size(); ++i) {
    if (!pool.amarks[i]) continue;
    atable.push_back(std::move(pool.atable[i]));
    remap.atable[i] = static_cast<std::uint16_t>(atable.size() - 1);
  }
  std::vector<std::uint32_t> vtable(1, 0);
  std::vector<VKind> vkinds(1, VKind::Int);
  for (std::uint32_t i = 1; i < pool.vtable.size(); ++i) {
    if (!pool.vmarks[i]) continue;
    vtable.push_back(pool.vtable[i]);
    vkinds.push_back(pool.vkinds[i]);
    remap.vtable[i] = static_cast<std::uint16_t>(vtable.size() - 1);
  }

  auto through = [&](std::uint32_t old_index) -> std::uint16_t {
    std::uint16_t n =
        old_index < remap.atable.size() ? remap.atable[old_index] : 0;
    if (n == 0) {
      throw Error(ErrorCode::InternalError,
                  "surviving cell names swept atable entry " +
                      std::to_string(old_index));
    }
    return n;
  };
  for (std::size_t i = 1; i < vtable.size(); ++i) {
    if (vkinds[i] == VKind::StringRef) {
      vtable[i] = through(vtable[i]);
    } else if (is_pair_cell(vkinds[i])) {
      vtable[i] = pack_pair(through(pair_first(vtable[i])),
                            through(pair_second(vtable[i])));
    }
  }

  pool.atable = std::move(atable);
  pool.vtable = std::move(vtable);
  pool.vkinds = std::move(vkinds);
  pool.amarks.assign(pool.atable.size(), true);
  pool.vmarks.assign(pool.vtable.size(), true);
  pool.amarks[0] = pool.vmarks[0] = false;
  pool.remap = std::move(remap);
  stats.after = measure_all(pool);
  return stats;
}

std::string describe(const RuntimePool& pool, PoolTable table,
                     std::uint32_t index) {
  if (table == PoolTable::ATable) {
    const AEntry& e = pool.a(index);
    switch (e.kind) {
      case AKind::Utf8Text: return "utf8 " + e.text;
      case AKind::StringLiteral: return "string " + e.text;
      case AKind::ClassHandle: return "class " + e.class_name;
      case AKind::FieldHandle:
        return "field " + e.class_name + "." + e.text + ":" + e.descriptor;
      case AKind::MethodHandle:
        return std::string(e.interface_method ? "imethod " : "method ") +
               e.class_name + "." + e.text + e.descriptor;
    }
  }
  VKind kind = pool.vkind(index);
  std::uint32_t cell = pool.vtable[index];
  switch (kind) {
    case VKind::Int: return "int " + std::to_string(std::int32_t(cell));
    case VKind::Float: return "float " + hex32(cell);
    case VKind::Long:
      return "long " + std::to_string(std::int64_t(pool.wide(index)));
    case VKind::Double:
      return "double " + hex32(cell) + hex32(pool.vtable[index + 1]).substr(2);
    case VKind::WideLow: return "wide-low " + hex32(cell);
    case VKind::StringRef:
      return "ref(" + describe(pool, PoolTable::ATable, cell) + ")";
    case VKind::NameAndType:
    case VKind::FieldRef:
    case VKind::MethodRef:
    case VKind::InterfaceMethodRef:
      return std::string(vkind_name(kind)) + "(" +
             describe(pool, PoolTable::ATable, pair_first(cell)) + ", " +
             describe(pool, PoolTable::ATable, pair_second(cell)) + ")";
  }
  return "?";
}

std::vector<std::string> live_entries(const RuntimePool& pool) {
  std::vector<std::string> out;
  for (std::uint32_t i = 1; i < pool.atable.size(); ++i) {
    if (pool.amarks[i]) out.push_back(describe(pool, PoolTable::ATable, i));
  }
  for (std::uint32_t i = 1; i < pool.vtable.size(); ++i) {
    if (pool.vmarks[i] && pool.vkinds[i] != VKind::WideLow) {
      out.push_back(describe(pool, PoolTable::VTable, i));
    }
  }
  return out;
}

}  // namespace jrom
