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

#include "jrom/error.hpp"

namespace jrom {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BadUtf8: return "BadUtf8";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::DanglingIndex: return "DanglingIndex";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PoolOverflow: return "PoolOverflow";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::NameMismatch: return "NameMismatch";
    case ErrorCode::HierarchyCycle: return "HierarchyCycle";
    case ErrorCode::StaticOverflow: return "StaticOverflow";
    case ErrorCode::BadOpcode: return "BadOpcode";
    case ErrorCode::BadPoolRef: return "BadPoolRef";
    case ErrorCode::UnsupportedClinit: return "UnsupportedClinit";
    case ErrorCode::IllegalTransition: return "IllegalTransition";
    case ErrorCode::ClassNotFound: return "ClassNotFound";
    case ErrorCode::NoSuchField: return "NoSuchField";
    case ErrorCode::NoSuchMethod: return "NoSuchMethod";
    case ErrorCode::VerifyError: return "VerifyError";
    case ErrorCode::InternalError: return "InternalError";
    case ErrorCode::UnsupportedOpcode: return "UnsupportedOpcode";
    case ErrorCode::StackUnderflow: return "StackUnderflow";
    case ErrorCode::StackOverflow: return "StackOverflow";
    case ErrorCode::StageNotReached: return "StageNotReached";
    case ErrorCode::IncompleteClosure: return "IncompleteClosure";
    case ErrorCode::NotLinked: return "NotLinked";
    case ErrorCode::BadImageMagic: return "BadImageMagic";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::Corrupt: return "Corrupt";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           std::optional<std::size_t> offset) {
  std::string out(error_code_name(code));
  out += ": ";
  out += message;
  if (offset) {
    out += " (at offset ";
    out += std::to_string(*offset);
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> offset)
    : std::runtime_error(format_message(code, message, offset)),
      code_(code),
      offset_(offset) {}

}  // namespace jrom
