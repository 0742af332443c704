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

// Drives a class set through load, link and initialization, recording
// per-class failures instead of stopping at the first one.

#ifndef JROM_PIPELINE_HPP_
#define JROM_PIPELINE_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "jrom/error.hpp"
#include "jrom/lifecycle.hpp"
#include "jrom/linker.hpp"
#include "jrom/verify.hpp"

namespace jrom {

struct ClassFailure {
  std::string class_name;
  ErrorCode code = ErrorCode::InternalError;
  std::string message;
};

// Binary names of every .class file under `dir`, sorted.
std::vector<std::string> list_class_names(const std::filesystem::path& dir);

class Session {
 public:
  Session(ClassPath classpath, LinkFlags flags);

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  // Loads `roots`. With `closure`, every class they transitively reference
  // is loaded too and becomes a target.
  void load(const std::vector<std::string>& roots, bool closure);
  // Links every loaded target.
  void link();
  // Readies every loaded class, running static initializers.
  void initialize();

  // Loaded regular targets, sorted by name.
  std::vector<const ClassRep*> targets() const;
  std::vector<ClassRep*> mutable_targets();

  ClassRegistry& registry() { return *registry_; }
  const ClassRegistry& registry() const { return *registry_; }
  ClassLoader& loader() { return *loader_; }
  World& world() { return world_; }
  const World& world() const { return world_; }
  const LinkFlags& flags() const { return flags_; }
  const std::vector<ClassFailure>& failures() const { return failures_; }

 private:
  void record(const std::string& name, const Error& e);

  LinkFlags flags_;
  std::unique_ptr<ClassRegistry> registry_;
  std::unique_ptr<ClassLoader> loader_;
  World world_;
  std::vector<std::string> target_names_;
  std::vector<ClassFailure> failures_;
};

}  // namespace jrom

#endif  // JROM_PIPELINE_HPP_
