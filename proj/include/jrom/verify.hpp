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

// A small stack-machine interpreter that runs both the class-file dialect
// and the quick dialect, and a differential harness on top of it.

#ifndef JROM_VERIFY_HPP_
#define JROM_VERIFY_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jrom/lifecycle.hpp"

namespace jrom {

enum class ValueKind : std::uint8_t { Void, Int, Long, Float, Double, Ref };

struct Value {
  ValueKind kind = ValueKind::Void;
  std::uint64_t bits = 0;  // refs hold the heap id

  static Value of_int(std::int32_t v);
  static Value of_long(std::int64_t v);
  static Value of_float(float v);
  static Value of_double(double v);
  static Value of_ref(std::uint32_t id);

  std::int32_t as_int() const { return static_cast<std::int32_t>(bits); }
  std::int64_t as_long() const { return static_cast<std::int64_t>(bits); }
  float as_float() const;
  double as_double() const;

  bool operator==(const Value&) const = default;
};

struct Outcome {
  enum class Kind : std::uint8_t { Returned, Threw, FuelExhausted };

  Kind kind = Kind::Returned;
  Value value;              // Returned
  std::string exception;    // Threw: class name
  std::uint32_t thrown = 0; // Threw: heap id of the exception object

  bool operator==(const Outcome&) const = default;
  std::string describe() const;
};

struct HeapObject {
  std::string class_name;
  const ClassRep* cls = nullptr;
  std::vector<std::uint32_t> slots;
};

struct HeapArray {
  std::string descriptor;            // "[I", "[Ljava/lang/String;", ...
  std::vector<std::uint64_t> elems;  // raw bits; refs are heap ids
};

class MiniHeap {
 public:
  // Ids start at 1; 0 is null.
  std::uint32_t new_object(std::string class_name, const ClassRep* cls,
                           std::uint32_t slots);
  std::uint32_t new_array(std::string descriptor, std::size_t length);
  // A java/lang/String for `text`, shared per text. When `string_class`
  // declares `value:[C` the chars are stored there.
  std::uint32_t intern(const std::string& text, const ClassRep* string_class);

  bool contains(std::uint32_t id) const;
  bool is_array(std::uint32_t id) const;
  HeapObject& object(std::uint32_t id);
  const HeapObject& object(std::uint32_t id) const;
  HeapArray& array(std::uint32_t id);
  const HeapArray& array(std::uint32_t id) const;
  // Class name or array descriptor.
  std::string type_of(std::uint32_t id) const;
  std::size_t size() const { return cells_.size(); }
  // Array elements allocated so far.
  std::size_t element_count() const { return elements_; }
  const std::map<std::string, std::uint32_t>& interned() const {
    return interned_;
  }
  // Registers an existing String object (image loading).
  void set_interned(const std::string& text, std::uint32_t id) {
    interned_[text] = id;
  }

  // Structural comparison. Objects compare by class name and slots.
  bool operator==(const MiniHeap& other) const;
  // Empty when equal, else the first difference found.
  std::string first_difference(const MiniHeap& other) const;

 private:
  struct Cell {
    bool is_array = false;
    HeapObject object;
    HeapArray array;
  };
  std::vector<Cell> cells_;
  std::size_t elements_ = 0;
  std::map<std::string, std::uint32_t> interned_;
};

// A class set plus the dynamic state the interpreter sees: the heap and the
// classes' static zones.
struct World {
  const ClassRegistry* registry = nullptr;
  MiniHeap heap;
};

// Allocation beyond this many array elements per heap raises
// OutOfMemoryError.
inline constexpr std::size_t kHeapElementLimit = std::size_t{1} << 22;

struct ExecOptions {
  std::uint64_t fuel = 200000;
  std::size_t max_frames = 512;
  std::ostream* trace = nullptr;
  // Records (method, pc) of each executed instruction when set.
  std::set<std::pair<const MethodRep*, std::uint32_t>>* coverage = nullptr;
};

class Machine {
 public:
  // With `isolate_statics` the classes' zones are copied on first touch
  // and never written back; otherwise the interpreter works on them
  // directly and `init` (if any) readies classes on first use.
  Machine(World& world, bool isolate_statics,
          StaticInitializer* init = nullptr);

  Outcome execute(const MethodRep& entry,
                  const std::vector<std::uint32_t>& args,
                  const ExecOptions& options = {});

  // The zones this machine sees for `cls`.
  StaticZones& zones(const ClassRep& cls);
  // Isolated mode: zones touched so far, keyed by class name.
  std::map<std::string, StaticZones> touched_zones() const;

  World& world() { return world_; }

 private:
  struct Frame;
  class Run;

  World& world_;
  bool isolate_;
  StaticInitializer* init_;
  std::map<const ClassRep*, StaticZones> overlay_;
};

// Runs `<clinit>` bodies with a direct-mode machine over `world`.
class ClinitRunner : public StaticInitializer {
 public:
  explicit ClinitRunner(World& world, std::uint64_t fuel = 1000000);

  std::uint32_t intern(const std::string& text) override;
  void run_clinit(MethodRep& clinit) override;

 private:
  World& world_;
  std::uint64_t fuel_;
};

// Readies every class of the world's registry, in name order. Classes
// whose initializer fails stay non-ready; their names are returned.
std::vector<std::string> make_world_ready(World& world);

// A generated argument, independent of any heap.
struct ArgValue {
  enum class Kind : std::uint8_t { Prim, Null, Object, String, Array };
  Kind kind = Kind::Prim;
  std::string type;                  // field descriptor
  std::uint64_t bits = 0;            // Prim
  std::string text;                  // String
  std::vector<std::uint64_t> elems;  // Array of primitives
};

// Receiver (for instance methods) followed by one value per parameter.
std::vector<ArgValue> generate_args(const MethodRep& method,
                                    std::mt19937_64& rng);
// Allocates as needed and returns argument slots.
std::vector<std::uint32_t> materialize(const std::vector<ArgValue>& args,
                                       World& world);

struct DiffResult {
  bool equal = true;
  std::string difference;  // first diverging observable
  Outcome before;
  Outcome after;
};

// Executes each method on its own copy of its world's heap with isolated
// statics, then compares outcome, touched zones and heap.
DiffResult differential_check(const MethodRep& before_method,
                              const World& before,
                              const MethodRep& after_method,
                              const World& after,
                              const std::vector<ArgValue>& args,
                              const ExecOptions& options = {});

struct MethodFailure {
  std::string method;
  std::string difference;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int vectors = 5;
  std::uint64_t fuel = 200000;
  bool mutation_sentinel = true;
  std::ostream* trace = nullptr;
};

struct SuiteReport {
  std::size_t checked = 0;  // subset-supported methods compared
  std::size_t skipped = 0;  // abstract, native or outside the subset
  std::size_t vectors = 0;  // executions compared
  std::vector<MethodFailure> failures;
  std::vector<std::string> skipped_methods;
  std::string zones_difference;  // post-initialization state mismatch
  bool mutation_ran = false;
  bool mutation_detected = false;
  std::string mutation_target;

  bool passed() const {
    return failures.empty() && zones_difference.empty() &&
           (!mutation_ran || mutation_detected);
  }
};

// Pairs methods by class and signature and checks each on seeded argument
// vectors. The sentinel then flips one constant operand byte of a covered
// instruction in `after` and expects a mismatch; the code is restored.
SuiteReport differential_suite(const World& before, World& after,
                               const SuiteOptions& options = {});

}  // namespace jrom

#endif  // JROM_VERIFY_HPP_
