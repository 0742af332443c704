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

// Footprint reports and the ROM image.
//
// Image layout (little-endian):
//   "JRMZ" u16 version u16 flags u32 class-count
//   u32 closed-package-count, strings
//   class records, sorted by name
//   heap section: cells, then the interned-string table
// Strings are u32 length + bytes. Class references are u16 indexes into
// the image's class table, 0xFFFF for none.

#ifndef JROM_ROMIZER_HPP_
#define JROM_ROMIZER_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "jrom/bytes.hpp"
#include "jrom/lifecycle.hpp"
#include "jrom/linker.hpp"
#include "jrom/verify.hpp"

namespace jrom {

inline constexpr std::uint16_t kImageVersion = 1;
inline constexpr std::uint16_t kNoClass = 0xFFFF;

// Throws StageNotReached when `cls` has not been through `stage`.
StageStats snapshot_stats(const ClassRep& cls, Stage stage);

struct ClassFootprint {
  std::string name;
  StageStats unloaded;
  StageStats loaded;
  StageStats linked;
};

struct FootprintReport {
  std::vector<ClassFootprint> classes;  // sorted by name
  ClassFootprint total;
  LinkFlags flags;

  // Aligned text table, one row per class plus the total.
  std::string table() const;
  // One JSON object per line: each class, then the total.
  std::string records() const;
};

std::string describe_flags(const LinkFlags& flags);

// Classes must be linked; aggregate is the per-class sum.
FootprintReport build_report(const std::vector<const ClassRep*>& classes,
                             const LinkFlags& flags);

// Percentage of `part` over `whole`, 0 when `whole` is 0.
double percent(std::size_t part, std::size_t whole);

// Serializes the classes (any order) plus the heap their static zones
// point into. Throws NotLinked or IncompleteClosure.
Bytes emit_image(const std::vector<const ClassRep*>& classes,
                 const MiniHeap& heap, const LinkFlags& flags);

struct LoadedImage {
  std::unique_ptr<ClassRegistry> registry;
  MiniHeap heap;
  LinkFlags flags;
  std::vector<const ClassRep*> classes;  // image order

  // A world over the reloaded classes, sharing nothing with this image.
  World world() const { return World{registry.get(), heap}; }
};

// Throws BadImageMagic, VersionMismatch or Corrupt (with offset).
LoadedImage load_image(ByteView bytes);

// A C definition of `symbol` holding the image bytes, plus its length.
std::string emit_c_array(ByteView bytes, const std::string& symbol);

}  // namespace jrom

#endif  // JROM_ROMIZER_HPP_
