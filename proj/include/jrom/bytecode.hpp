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

// JVM opcode table plus the quick forms produced by load-time and link-time
// rewriting. Quick forms always have the byte length of the instruction they
// replace, so rewriting never relocates code.

#ifndef JROM_BYTECODE_HPP_
#define JROM_BYTECODE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace jrom {

namespace op {
inline constexpr std::uint8_t kNop = 0x00;
inline constexpr std::uint8_t kAconstNull = 0x01;
inline constexpr std::uint8_t kIconstM1 = 0x02;
inline constexpr std::uint8_t kIconst0 = 0x03;
inline constexpr std::uint8_t kIconst5 = 0x08;
inline constexpr std::uint8_t kLconst0 = 0x09;
inline constexpr std::uint8_t kLconst1 = 0x0a;
inline constexpr std::uint8_t kFconst0 = 0x0b;
inline constexpr std::uint8_t kFconst2 = 0x0d;
inline constexpr std::uint8_t kDconst0 = 0x0e;
inline constexpr std::uint8_t kDconst1 = 0x0f;
inline constexpr std::uint8_t kBipush = 0x10;
inline constexpr std::uint8_t kSipush = 0x11;
inline constexpr std::uint8_t kLdc = 0x12;
inline constexpr std::uint8_t kLdcW = 0x13;
inline constexpr std::uint8_t kLdc2W = 0x14;
inline constexpr std::uint8_t kIload = 0x15;
inline constexpr std::uint8_t kLload = 0x16;
inline constexpr std::uint8_t kFload = 0x17;
inline constexpr std::uint8_t kDload = 0x18;
inline constexpr std::uint8_t kAload = 0x19;
inline constexpr std::uint8_t kIload0 = 0x1a;
inline constexpr std::uint8_t kAload0 = 0x2a;
inline constexpr std::uint8_t kAload3 = 0x2d;
inline constexpr std::uint8_t kIaload = 0x2e;
inline constexpr std::uint8_t kSaload = 0x35;
inline constexpr std::uint8_t kIstore = 0x36;
inline constexpr std::uint8_t kAstore = 0x3a;
inline constexpr std::uint8_t kIstore0 = 0x3b;
inline constexpr std::uint8_t kAstore3 = 0x4e;
inline constexpr std::uint8_t kIastore = 0x4f;
inline constexpr std::uint8_t kSastore = 0x56;
inline constexpr std::uint8_t kPop = 0x57;
inline constexpr std::uint8_t kSwap = 0x5f;
inline constexpr std::uint8_t kIadd = 0x60;
inline constexpr std::uint8_t kImul = 0x68;
inline constexpr std::uint8_t kIinc = 0x84;
inline constexpr std::uint8_t kLcmp = 0x94;
inline constexpr std::uint8_t kIfeq = 0x99;
inline constexpr std::uint8_t kIfAcmpne = 0xa6;
inline constexpr std::uint8_t kGoto = 0xa7;
inline constexpr std::uint8_t kJsr = 0xa8;
inline constexpr std::uint8_t kRet = 0xa9;
inline constexpr std::uint8_t kTableswitch = 0xaa;
inline constexpr std::uint8_t kLookupswitch = 0xab;
inline constexpr std::uint8_t kIreturn = 0xac;
inline constexpr std::uint8_t kReturn = 0xb1;
inline constexpr std::uint8_t kGetstatic = 0xb2;
inline constexpr std::uint8_t kPutstatic = 0xb3;
inline constexpr std::uint8_t kGetfield = 0xb4;
inline constexpr std::uint8_t kPutfield = 0xb5;
inline constexpr std::uint8_t kInvokevirtual = 0xb6;
inline constexpr std::uint8_t kInvokespecial = 0xb7;
inline constexpr std::uint8_t kInvokestatic = 0xb8;
inline constexpr std::uint8_t kInvokeinterface = 0xb9;
inline constexpr std::uint8_t kNew = 0xbb;
inline constexpr std::uint8_t kNewarray = 0xbc;
inline constexpr std::uint8_t kAnewarray = 0xbd;
inline constexpr std::uint8_t kArraylength = 0xbe;
inline constexpr std::uint8_t kAthrow = 0xbf;
inline constexpr std::uint8_t kCheckcast = 0xc0;
inline constexpr std::uint8_t kInstanceof = 0xc1;
inline constexpr std::uint8_t kMonitorenter = 0xc2;
inline constexpr std::uint8_t kMonitorexit = 0xc3;
inline constexpr std::uint8_t kWide = 0xc4;
inline constexpr std::uint8_t kMultianewarray = 0xc5;
inline constexpr std::uint8_t kIfnull = 0xc6;
inline constexpr std::uint8_t kIfnonnull = 0xc7;
inline constexpr std::uint8_t kGotoW = 0xc8;
inline constexpr std::uint8_t kJsrW = 0xc9;

// Quick forms, in the unassigned range from 203. The 2-byte-index ldc
// variants follow the documented block so that `ldc_w` keeps its length.
inline constexpr std::uint8_t kLdcQuickI = 203;
inline constexpr std::uint8_t kLdcQuickF = 204;
inline constexpr std::uint8_t kLdcQuickA = 205;
inline constexpr std::uint8_t kLdc2QuickL = 206;
inline constexpr std::uint8_t kLdc2QuickD = 207;
inline constexpr std::uint8_t kAnewarrayQuick = 208;
inline constexpr std::uint8_t kInvokevirtualQuick = 209;
inline constexpr std::uint8_t kGetstaticQuick = 210;
inline constexpr std::uint8_t kPutstaticQuick = 211;
inline constexpr std::uint8_t kGetfieldQuick = 212;
inline constexpr std::uint8_t kPutfieldQuick = 213;
inline constexpr std::uint8_t kLdcWQuickI = 214;
inline constexpr std::uint8_t kLdcWQuickF = 215;
inline constexpr std::uint8_t kLdcWQuickA = 216;
}  // namespace op

enum class OperandKind : std::uint8_t {
  None,
  Byte,          // bipush (signed), newarray (type code)
  Short,         // sipush
  Local,         // u1 local index
  Iinc,          // u1 index, s1 delta
  RawPool8,      // ldc
  RawPool16,     // raw constant-pool index
  Branch16,
  Branch32,
  TableSwitch,
  LookupSwitch,
  Wide,
  InvokeInterface,   // u2 pool index, u1 count, u1 zero
  MultiANewArray,    // u2 pool index, u1 dimensions
  VTable8,
  ATable8,
  VTable16,
  ATable16,
  QuickInvoke,       // u1 nargs, u1 dispatch slot
  QuickImmediate16,  // (offset << 3) | type code
  Invalid,
};

// What a pool-referencing operand must resolve to.
enum class PoolUse : std::uint8_t {
  None,
  Loadable,         // ldc / ldc_w: Integer, Float, String
  Loadable2,        // ldc2_w: Long, Double
  Field,
  Method,
  InterfaceMethod,
  Class,
  QuickInt,
  QuickFloat,
  QuickString,
  QuickLong,
  QuickDouble,
  QuickClass,
};

struct OpInfo {
  std::string_view mnemonic;
  std::uint8_t length = 0;  // 0 means variable length
  OperandKind operand = OperandKind::Invalid;
  PoolUse use = PoolUse::None;
};

const OpInfo& op_info(std::uint8_t opcode);
bool is_quick(std::uint8_t opcode);

struct Instruction {
  std::uint32_t pc = 0;
  std::uint8_t opcode = 0;
  std::uint32_t length = 0;
  bool wide = false;  // prefixed by `wide`; opcode is the modified one
};

// Length of the instruction starting at `pc`. Throws BadOpcode for unknown
// opcodes and Truncated when the instruction runs past the end.
std::uint32_t instruction_length(std::span<const std::uint8_t> code,
                                 std::uint32_t pc);

std::vector<Instruction> decode(std::span<const std::uint8_t> code);

// Absolute branch targets of one instruction (empty for non-branches).
std::vector<std::int64_t> branch_targets(std::span<const std::uint8_t> code,
                                         const Instruction& insn);

// The pool operand of an instruction, if it has one: the operand value and
// where it sits in the code.
struct PoolOperand {
  std::uint32_t value = 0;
  std::uint32_t at = 0;   // byte offset of the operand
  std::uint8_t width = 0; // 1 or 2
  OperandKind kind = OperandKind::None;
  PoolUse use = PoolUse::None;
};

std::optional<PoolOperand> pool_operand(std::span<const std::uint8_t> code,
                                        const Instruction& insn);

// Argument slots of a method descriptor (long/double count two).
std::uint32_t descriptor_arg_slots(std::string_view descriptor);
// Return type descriptor ("V", "I", "Ljava/lang/Object;", ...).
std::string_view descriptor_return(std::string_view descriptor);
// Parameter type descriptors, in order.
std::vector<std::string_view> descriptor_params(std::string_view descriptor);

}  // namespace jrom

#endif  // JROM_BYTECODE_HPP_
