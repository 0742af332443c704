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

// Bounds-checked byte cursors. Class files are big-endian, ROM images are
// little-endian; a short read throws with the offset of the failed access.

#ifndef JROM_BYTES_HPP_
#define JROM_BYTES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jrom/error.hpp"

namespace jrom {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

enum class Endian { Big, Little };

template <Endian E>
class ByteReader {
 public:
  ByteReader(ByteView data, ErrorCode short_read)
      : data_(data), short_read_(short_read) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool at_end() const { return pos_ == data_.size(); }

  std::uint8_t u1() { return static_cast<std::uint8_t>(read(1)); }
  std::uint16_t u2() { return static_cast<std::uint16_t>(read(2)); }
  std::uint32_t u4() { return static_cast<std::uint32_t>(read(4)); }
  std::uint64_t u8() { return read(8); }

  ByteView bytes(std::size_t n) {
    require(n);
    ByteView out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::string text(std::size_t n) {
    ByteView raw = bytes(n);
    return std::string(raw.begin(), raw.end());
  }

  void skip(std::size_t n) {
    require(n);
    pos_ += n;
  }

 private:
  void require(std::size_t n) const {
    if (n > remaining()) {
      throw Error(short_read_,
                  "need " + std::to_string(n) + " bytes, " +
                      std::to_string(remaining()) + " left",
                  pos_);
    }
  }

  std::uint64_t read(std::size_t n) {
    require(n);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t b = data_[pos_ + i];
      if constexpr (E == Endian::Big) {
        v = (v << 8) | b;
      } else {
        v |= b << (8 * i);
      }
    }
    pos_ += n;
    return v;
  }

  ByteView data_;
  std::size_t pos_ = 0;
  ErrorCode short_read_;
};

template <Endian E>
class ByteWriter {
 public:
  void u1(std::uint8_t v) { out_.push_back(v); }
  void u2(std::uint16_t v) { write(v, 2); }
  void u4(std::uint32_t v) { write(v, 4); }
  void u8(std::uint64_t v) { write(v, 8); }
  void bytes(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void text(const std::string& s) { out_.insert(out_.end(), s.begin(), s.end()); }

  std::size_t size() const { return out_.size(); }
  const Bytes& data() const& { return out_; }
  Bytes take() && { return std::move(out_); }

 private:
  void write(std::uint64_t v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t shift = E == Endian::Big ? 8 * (n - 1 - i) : 8 * i;
      out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
  }

  Bytes out_;
};

using ClassReader = ByteReader<Endian::Big>;
using ClassWriter = ByteWriter<Endian::Big>;
using ImageReader = ByteReader<Endian::Little>;
using ImageWriter = ByteWriter<Endian::Little>;

inline std::uint16_t load_u2(ByteView code, std::size_t at) {
  return static_cast<std::uint16_t>((code[at] << 8) | code[at + 1]);
}

inline std::int32_t load_s4(ByteView code, std::size_t at) {
  return static_cast<std::int32_t>(
      (std::uint32_t{code[at]} << 24) | (std::uint32_t{code[at + 1]} << 16) |
      (std::uint32_t{code[at + 2]} << 8) | std::uint32_t{code[at + 3]});
}

inline void store_u2(std::span<std::uint8_t> code, std::size_t at,
                     std::uint16_t v) {
  code[at] = static_cast<std::uint8_t>(v >> 8);
  code[at + 1] = static_cast<std::uint8_t>(v);
}

}  // namespace jrom

#endif  // JROM_BYTES_HPP_
