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

#include "jrom/bytecode.hpp"

#include <array>
#include <string>

#include "jrom/bytes.hpp"
#include "jrom/error.hpp"

namespace jrom {

namespace {

using K = OperandKind;
using U = PoolUse;

struct Row {
  std::uint8_t opcode;
  OpInfo info;
};

// clang-format off
constexpr Row kRows[] = {
  {0x00, {"nop", 1, K::None}},
  {0x01, {"aconst_null", 1, K::None}},
  {0x02, {"iconst_m1", 1, K::None}},
  {0x03, {"iconst_0", 1, K::None}},
  {0x04, {"iconst_1", 1, K::None}},
  {0x05, {"iconst_2", 1, K::None}},
  {0x06, {"iconst_3", 1, K::None}},
  {0x07, {"iconst_4", 1, K::None}},
  {0x08, {"iconst_5", 1, K::None}},
  {0x09, {"lconst_0", 1, K::None}},
  {0x0a, {"lconst_1", 1, K::None}},
  {0x0b, {"fconst_0", 1, K::None}},
  {0x0c, {"fconst_1", 1, K::None}},
  {0x0d, {"fconst_2", 1, K::None}},
  {0x0e, {"dconst_0", 1, K::None}},
  {0x0f, {"dconst_1", 1, K::None}},
  {0x10, {"bipush", 2, K::Byte}},
  {0x11, {"sipush", 3, K::Short}},
  {0x12, {"ldc", 2, K::RawPool8, U::Loadable}},
  {0x13, {"ldc_w", 3, K::RawPool16, U::Loadable}},
  {0x14, {"ldc2_w", 3, K::RawPool16, U::Loadable2}},
  {0x15, {"iload", 2, K::Local}},
  {0x16, {"lload", 2, K::Local}},
  {0x17, {"fload", 2, K::Local}},
  {0x18, {"dload", 2, K::Local}},
  {0x19, {"aload", 2, K::Local}},
  {0x1a, {"iload_0", 1, K::None}},
  {0x1b, {"iload_1", 1, K::None}},
  {0x1c, {"iload_2", 1, K::None}},
  {0x1d, {"iload_3", 1, K::None}},
  {0x1e, {"lload_0", 1, K::None}},
  {0x1f, {"lload_1", 1, K::None}},
  {0x20, {"lload_2", 1, K::None}},
  {0x21, {"lload_3", 1, K::None}},
  {0x22, {"fload_0", 1, K::None}},
  {0x23, {"fload_1", 1, K::None}},
  {0x24, {"fload_2", 1, K::None}},
  {0x25, {"fload_3", 1, K::None}},
  {0x26, {"dload_0", 1, K::None}},
  {0x27, {"dload_1", 1, K::None}},
  {0x28, {"dload_2", 1, K::None}},
  {0x29, {"dload_3", 1, K::None}},
  {0x2a, {"aload_0", 1, K::None}},
  {0x2b, {"aload_1", 1, K::None}},
  {0x2c, {"aload_2", 1, K::None}},
  {0x2d, {"aload_3", 1, K::None}},
  {0x2e, {"iaload", 1, K::None}},
  {0x2f, {"laload", 1, K::None}},
  {0x30, {"faload", 1, K::None}},
  {0x31, {"daload", 1, K::None}},
  {0x32, {"aaload", 1, K::None}},
  {0x33, {"baload", 1, K::None}},
  {0x34, {"caload", 1, K::None}},
  {0x35, {"saload", 1, K::None}},
  {0x36, {"istore", 2, K::Local}},
  {0x37, {"lstore", 2, K::Local}},
  {0x38, {"fstore", 2, K::Local}},
  {0x39, {"dstore", 2, K::Local}},
  {0x3a, {"astore", 2, K::Local}},
  {0x3b, {"istore_0", 1, K::None}},
  {0x3c, {"istore_1", 1, K::None}},
  {0x3d, {"istore_2", 1, K::None}},
  {0x3e, {"istore_3", 1, K::None}},
  {0x3f, {"lstore_0", 1, K::None}},
  {0x40, {"lstore_1", 1, K::None}},
  {0x41, {"lstore_2", 1, K::None}},
  {0x42, {"lstore_3", 1, K::None}},
  {0x43, {"fstore_0", 1, K::None}},
  {0x44, {"fstore_1", 1, K::None}},
  {0x45, {"fstore_2", 1, K::None}},
  {0x46, {"fstore_3", 1, K::None}},
  {0x47, {"dstore_0", 1, K::None}},
  {0x48, {"dstore_1", 1, K::None}},
  {0x49, {"dstore_2", 1, K::None}},
  {0x4a, {"dstore_3", 1, K::None}},
  {0x4b, {"astore_0", 1, K::None}},
  {0x4c, {"astore_1", 1, K::None}},
  {0x4d, {"astore_2", 1, K::None}},
  {0x4e, {"astore_3", 1, K::None}},
  {0x4f, {"iastore", 1, K::None}},
  {0x50, {"lastore", 1, K::None}},
  {0x51, {"fastore", 1, K::None}},
  {0x52, {"dastore", 1, K::None}},
  {0x53, {"aastore", 1, K::None}},
  {0x54, {"bastore", 1, K::None}},
  {0x55, {"castore", 1, K::None}},
  {0x56, {"sastore", 1, K::None}},
  {0x57, {"pop", 1, K::None}},
  {0x58, {"pop2", 1, K::None}},
  {0x59, {"dup", 1, K::None}},
  {0x5a, {"dup_x1", 1, K::None}},
  {0x5b, {"dup_x2", 1, K::None}},
  {0x5c, {"dup2", 1, K::None}},
  {0x5d, {"dup2_x1", 1, K::None}},
  {0x5e, {"dup2_x2", 1, K::None}},
  {0x5f, {"swap", 1, K::None}},
  {0x60, {"iadd", 1, K::None}},
  {0x61, {"ladd", 1, K::None}},
  {0x62, {"fadd", 1, K::None}},
  {0x63, {"dadd", 1, K::None}},
  {0x64, {"isub", 1, K::None}},
  {0x65, {"lsub", 1, K::None}},
  {0x66, {"fsub", 1, K::None}},
  {0x67, {"dsub", 1, K::None}},
  {0x68, {"imul", 1, K::None}},
  {0x69, {"lmul", 1, K::None}},
  {0x6a, {"fmul", 1, K::None}},
  {0x6b, {"dmul", 1, K::None}},
  {0x6c, {"idiv", 1, K::None}},
  {0x6d, {"ldiv", 1, K::None}},
  {0x6e, {"fdiv", 1, K::None}},
  {0x6f, {"ddiv", 1, K::None}},
  {0x70, {"irem", 1, K::None}},
  {0x71, {"lrem", 1, K::None}},
  {0x72, {"frem", 1, K::None}},
  {0x73, {"drem", 1, K::None}},
  {0x74, {"ineg", 1, K::None}},
  {0x75, {"lneg", 1, K::None}},
  {0x76, {"fneg", 1, K::None}},
  {0x77, {"dneg", 1, K::None}},
  {0x78, {"ishl", 1, K::None}},
  {0x79, {"lshl", 1, K::None}},
  {0x7a, {"ishr", 1, K::None}},
  {0x7b, {"lshr", 1, K::None}},
  {0x7c, {"iushr", 1, K::None}},
  {0x7d, {"lushr", 1, K::None}},
  {0x7e, {"iand", 1, K::None}},
  {0x7f, {"land", 1, K::None}},
  {0x80, {"ior", 1, K::None}},
  {0x81, {"lor", 1, K::None}},
  {0x82, {"ixor", 1, K::None}},
  {0x83, {"lxor", 1, K::None}},
  {0x84, {"iinc", 3, K::Iinc}},
  {0x85, {"i2l", 1, K::None}},
  {0x86, {"i2f", 1, K::None}},
  {0x87, {"i2d", 1, K::None}},
  {0x88, {"l2i", 1, K::None}},
  {0x89, {"l2f", 1, K::None}},
  {0x8a, {"l2d", 1, K::None}},
  {0x8b, {"f2i", 1, K::None}},
  {0x8c, {"f2l", 1, K::None}},
  {0x8d, {"f2d", 1, K::None}},
  {0x8e, {"d2i", 1, K::None}},
  {0x8f, {"d2l", 1, K::None}},
  {0x90, {"d2f", 1, K::None}},
  {0x91, {"i2b", 1, K::None}},
  {0x92, {"i2c", 1, K::None}},
  {0x93, {"i2s", 1, K::None}},
  {0x94, {"lcmp", 1, K::None}},
  {0x95, {"fcmpl", 1, K::None}},
  {0x96, {"fcmpg", 1, K::None}},
  {0x97, {"dcmpl", 1, K::None}},
  {0x98, {"dcmpg", 1, K::None}},
  {0x99, {"ifeq", 3, K::Branch16}},
  {0x9a, {"ifne", 3, K::Branch16}},
  {0x9b, {"iflt", 3, K::Branch16}},
  {0x9c, {"ifge", 3, K::Branch16}},
  {0x9d, {"ifgt", 3, K::Branch16}},
  {0x9e, {"ifle", 3, K::Branch16}},
  {0x9f, {"if_icmpeq", 3, K::Branch16}},
  {0xa0, {"if_icmpne", 3, K::Branch16}},
  {0xa1, {"if_icmplt", 3, K::Branch16}},
  {0xa2, {"if_icmpge", 3, K::Branch16}},
  {0xa3, {"if_icmpgt", 3, K::Branch16}},
  {0xa4, {"if_icmple", 3, K::Branch16}},
  {0xa5, {"if_acmpeq", 3, K::Branch16}},
  {0xa6, {"if_acmpne", 3, K::Branch16}},
  {0xa7, {"goto", 3, K::Branch16}},
  {0xa8, {"jsr", 3, K::Branch16}},
  {0xa9, {"ret", 2, K::Local}},
  {0xaa, {"tableswitch", 0, K::TableSwitch}},
  {0xab, {"lookupswitch", 0, K::LookupSwitch}},
  {0xac, {"ireturn", 1, K::None}},
  {0xad, {"lreturn", 1, K::None}},
  {0xae, {"freturn", 1, K::None}},
  {0xaf, {"dreturn", 1, K::None}},
  {0xb0, {"areturn", 1, K::None}},
  {0xb1, {"return", 1, K::None}},
  {0xb2, {"getstatic", 3, K::RawPool16, U::Field}},
  {0xb3, {"putstatic", 3, K::RawPool16, U::Field}},
  {0xb4, {"getfield", 3, K::RawPool16, U::Field}},
  {0xb5, {"putfield", 3, K::RawPool16, U::Field}},
  {0xb6, {"invokevirtual", 3, K::RawPool16, U::Method}},
  {0xb7, {"invokespecial", 3, K::RawPool16, U::Method}},
  {0xb8, {"invokestatic", 3, K::RawPool16, U::Method}},
  {0xb9, {"invokeinterface", 5, K::InvokeInterface, U::InterfaceMethod}},
  {0xbb, {"new", 3, K::RawPool16, U::Class}},
  {0xbc, {"newarray", 2, K::Byte}},
  {0xbd, {"anewarray", 3, K::RawPool16, U::Class}},
  {0xbe, {"arraylength", 1, K::None}},
  {0xbf, {"athrow", 1, K::None}},
  {0xc0, {"checkcast", 3, K::RawPool16, U::Class}},
  {0xc1, {"instanceof", 3, K::RawPool16, U::Class}},
  {0xc2, {"monitorenter", 1, K::None}},
  {0xc3, {"monitorexit", 1, K::None}},
  {0xc4, {"wide", 0, K::Wide}},
  {0xc5, {"multianewarray", 4, K::MultiANewArray, U::Class}},
  {0xc6, {"ifnull", 3, K::Branch16}},
  {0xc7, {"ifnonnull", 3, K::Branch16}},
  {0xc8, {"goto_w", 5, K::Branch32}},
  {0xc9, {"jsr_w", 5, K::Branch32}},
  {op::kLdcQuickI, {"ldc_quick_i", 2, K::VTable8, U::QuickInt}},
  {op::kLdcQuickF, {"ldc_quick_f", 2, K::VTable8, U::QuickFloat}},
  {op::kLdcQuickA, {"ldc_quick_a", 2, K::ATable8, U::QuickString}},
  {op::kLdc2QuickL, {"ldc2_quick_l", 3, K::VTable16, U::QuickLong}},
  {op::kLdc2QuickD, {"ldc2_quick_d", 3, K::VTable16, U::QuickDouble}},
  {op::kAnewarrayQuick, {"anewarray_quick", 3, K::ATable16, U::QuickClass}},
  {op::kInvokevirtualQuick, {"invokevirtual_quick", 3, K::QuickInvoke}},
  {op::kGetstaticQuick, {"getstatic_quick", 3, K::QuickImmediate16}},
  {op::kPutstaticQuick, {"putstatic_quick", 3, K::QuickImmediate16}},
  {op::kGetfieldQuick, {"getfield_quick", 3, K::QuickImmediate16}},
  {op::kPutfieldQuick, {"putfield_quick", 3, K::QuickImmediate16}},
  {op::kLdcWQuickI, {"ldc_w_quick_i", 3, K::VTable16, U::QuickInt}},
  {op::kLdcWQuickF, {"ldc_w_quick_f", 3, K::VTable16, U::QuickFloat}},
  {op::kLdcWQuickA, {"ldc_w_quick_a", 3, K::ATable16, U::QuickString}},
};
// clang-format on

std::array<OpInfo, 256> build_table() {
  std::array<OpInfo, 256> table{};
  for (OpInfo& info : table) info = OpInfo{"<invalid>", 0, K::Invalid};
  for (const Row& row : kRows) table[row.opcode] = row.info;
  return table;
}

const std::array<OpInfo, 256>& table() {
  static const std::array<OpInfo, 256> t = build_table();
  return t;
}

std::uint32_t align4(std::uint32_t pc) { return (pc + 4) & ~std::uint32_t{3}; }

void need(std::span<const std::uint8_t> code, std::uint64_t end,
          std::uint32_t pc) {
  if (end > code.size()) {
    throw Error(ErrorCode::Truncated, "instruction runs past end of code", pc);
  }
}

bool wide_target_ok(std::uint8_t opcode) {
  return (opcode >= 0x15 && opcode <= 0x19) ||
         (opcode >= 0x36 && opcode <= 0x3a) || opcode == op::kIinc ||
         opcode == op::kRet;
}

}  // namespace

const OpInfo& op_info(std::uint8_t opcode) { return table()[opcode]; }

bool is_quick(std::uint8_t opcode) {
  return opcode >= op::kLdcQuickI && opcode <= op::kLdcWQuickA;
}

std::uint32_t instruction_length(std::span<const std::uint8_t> code,
                                 std::uint32_t pc) {
  need(code, std::uint64_t{pc} + 1, pc);
  std::uint8_t opcode = code[pc];
  const OpInfo& info = op_info(opcode);
  switch (info.operand) {
    case K::Invalid:
      throw Error(ErrorCode::BadOpcode,
                  "unknown opcode " + std::to_string(opcode) + " at pc " +
                      std::to_string(pc),
                  pc);
    case K::TableSwitch: {
      std::uint32_t base = align4(pc);
      need(code, std::uint64_t{base} + 12, pc);
      std::int32_t low = load_s4(code, base + 4);
      std::int32_t high = load_s4(code, base + 8);
      if (high < low) {
        throw Error(ErrorCode::BadOpcode, "tableswitch high < low", pc);
      }
      std::uint64_t n = std::uint64_t(std::int64_t{high} - low + 1);
      std::uint64_t end = base + 12 + 4 * n;
      need(code, end, pc);
      return static_cast<std::uint32_t>(end - pc);
    }
    case K::LookupSwitch: {
      std::uint32_t base = align4(pc);
      need(code, std::uint64_t{base} + 8, pc);
      std::int32_t npairs = load_s4(code, base + 4);
      if (npairs < 0) {
        throw Error(ErrorCode::BadOpcode, "lookupswitch npairs < 0", pc);
      }
      std::uint64_t end = base + 8 + 8 * std::uint64_t(npairs);
      need(code, end, pc);
      return static_cast<std::uint32_t>(end - pc);
    }
    case K::Wide: {
      need(code, std::uint64_t{pc} + 2, pc);
      std::uint8_t target = code[pc + 1];
      if (!wide_target_ok(target)) {
        throw Error(ErrorCode::BadOpcode, "illegal wide target", pc);
      }
      std::uint32_t len = target == op::kIinc ? 6 : 4;
      need(code, std::uint64_t{pc} + len, pc);
      return len;
    }
    default:
      need(code, std::uint64_t{pc} + info.length, pc);
      return info.length;
  }
}

std::vector<Instruction> decode(std::span<const std::uint8_t> code) {
  std::vector<Instruction> out;
  std::uint32_t pc = 0;
  while (pc < code.size()) {
    Instruction insn;
    insn.pc = pc;
    insn.length = instruction_length(code, pc);
    insn.opcode = code[pc];
    if (insn.opcode == op::kWide) {
      insn.wide = true;
      insn.opcode = code[pc + 1];
    }
    out.push_back(insn);
    pc += insn.length;
  }
  return out;
}

std::vector<std::int64_t> branch_targets(std::span<const std::uint8_t> code,
                                         const Instruction& insn) {
  std::vector<std::int64_t> out;
  if (insn.wide) return out;
  std::int64_t pc = insn.pc;
  switch (op_info(insn.opcode).operand) {
    case K::Branch16:
      out.push_back(pc + static_cast<std::int16_t>(load_u2(code, insn.pc + 1)));
      break;
    case K::Branch32:
      out.push_back(pc + load_s4(code, insn.pc + 1));
      break;
    case K::TableSwitch: {
      std::uint32_t base = align4(insn.pc);
      out.push_back(pc + load_s4(code, base));
      std::int32_t low = load_s4(code, base + 4);
      std::int32_t high = load_s4(code, base + 8);
      for (std::int64_t i = 0; i <= std::int64_t{high} - low; ++i) {
        out.push_back(pc + load_s4(code, base + 12 + 4 * std::uint32_t(i)));
      }
      break;
    }
    case K::LookupSwitch: {
      std::uint32_t base = align4(insn.pc);
      out.push_back(pc + load_s4(code, base));
      std::int32_t n = load_s4(code, base + 4);
      for (std::int32_t i = 0; i < n; ++i) {
        out.push_back(pc + load_s4(code, base + 8 + 8 * std::uint32_t(i) + 4));
      }
      break;
    }
    default:
      break;
  }
  return out;
}

std::optional<PoolOperand> pool_operand(std::span<const std::uint8_t> code,
                                        const Instruction& insn) {
  if (insn.wide) return std::nullopt;
  const OpInfo& info = op_info(insn.opcode);
  PoolOperand p;
  p.kind = info.operand;
  p.use = info.use;
  p.at = insn.pc + 1;
  switch (info.operand) {
    case K::RawPool8:
    case K::VTable8:
    case K::ATable8:
      p.width = 1;
      p.value = code[p.at];
      return p;
    case K::RawPool16:
    case K::VTable16:
    case K::ATable16:
    case K::InvokeInterface:
    case K::MultiANewArray:
      p.width = 2;
      p.value = load_u2(code, p.at);
      return p;
    default:
      return std::nullopt;
  }
}

namespace {

// Advances past one field descriptor starting at `i`; returns its end.
std::size_t skip_type(std::string_view d, std::size_t i) {
  while (i < d.size() && d[i] == '[') ++i;
  if (i >= d.size()) {
    throw Error(ErrorCode::BadIndex, "malformed descriptor " + std::string(d));
  }
  if (d[i] == 'L') {
    std::size_t semi = d.find(';', i);
    if (semi == std::string_view::npos) {
      throw Error(ErrorCode::BadIndex,
                  "malformed descriptor " + std::string(d));
    }
    return semi + 1;
  }
  return i + 1;
}

}  // namespace

std::vector<std::string_view> descriptor_params(std::string_view d) {
  if (d.empty() || d[0] != '(') {
    throw Error(ErrorCode::BadIndex, "not a method descriptor: " +
                                         std::string(d));
  }
  std::vector<std::string_view> out;
  std::size_t i = 1;
  while (i < d.size() && d[i] != ')') {
    std::size_t end = skip_type(d, i);
    out.push_back(d.substr(i, end - i));
    i = end;
  }
  if (i >= d.size()) {
    throw Error(ErrorCode::BadIndex, "malformed descriptor " + std::string(d));
  }
  return out;
}

std::uint32_t descriptor_arg_slots(std::string_view d) {
  std::uint32_t n = 0;
  for (std::string_view p : descriptor_params(d)) {
    n += (p == "J" || p == "D") ? 2 : 1;
  }
  return n;
}

std::string_view descriptor_return(std::string_view d) {
  std::size_t close = d.find(')');
  if (close == std::string_view::npos) {
    throw Error(ErrorCode::BadIndex, "malformed descriptor " + std::string(d));
  }
  return d.substr(close + 1);
}

}  // namespace jrom
