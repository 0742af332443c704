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

#ifndef JROM_ERROR_HPP_
#define JROM_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jrom {

enum class ErrorCode {
  // classfile
  BadMagic,
  Truncated,
  BadIndex,
  BadUtf8,
  UnsupportedVersion,
  // constpool
  DanglingIndex,
  IndexOutOfRange,
  PoolOverflow,
  // lifecycle
  InvalidName,
  NameMismatch,
  HierarchyCycle,
  StaticOverflow,
  BadOpcode,
  BadPoolRef,
  UnsupportedClinit,
  IllegalTransition,
  // linker
  ClassNotFound,
  NoSuchField,
  NoSuchMethod,
  VerifyError,
  InternalError,
  // verify
  UnsupportedOpcode,
  StackUnderflow,
  StackOverflow,
  // romizer
  StageNotReached,
  IncompleteClosure,
  NotLinked,
  BadImageMagic,
  VersionMismatch,
  Corrupt,
  // io / configuration
  Io,
};

std::string_view error_code_name(ErrorCode code);

// The single exception type thrown by the library. `offset` is set for
// errors tied to a byte position (truncated input, corrupt image).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace jrom

#endif  // JROM_ERROR_HPP_
