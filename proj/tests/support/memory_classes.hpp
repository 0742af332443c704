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

// A loader over hand-built classes, with java/lang/Object preinstalled.

#ifndef JROM_TESTS_MEMORY_CLASSES_HPP_
#define JROM_TESTS_MEMORY_CLASSES_HPP_

#include <memory>
#include <string>

#include "jrom/lifecycle.hpp"
#include "jrom/linker.hpp"
#include "support/class_builder.hpp"

namespace jrom::testing {

class MemoryClasses {
 public:
  explicit MemoryClasses(LoadOptions options = {})
      : source_(std::make_shared<MemorySource>()) {
    source_->add("java/lang/Object", minimal_object());
    ClassPath cp;
    cp.add(source_);
    loader_ = std::make_unique<ClassLoader>(registry_, std::move(cp), options);
  }

  void add(const std::string& name, Bytes bytes) {
    source_->add(name, std::move(bytes));
  }
  void add(const std::string& name, const ClassBuilder& b) {
    add(name, b.build());
  }

  ClassRep& load(const std::string& name) {
    return loader_->require_loaded(name);
  }
  ClassRep& link(const std::string& name, LinkFlags flags = {}) {
    ClassRep& c = load(name);
    Linker(*loader_, std::move(flags)).link(c);
    return c;
  }

  ClassLoader& loader() { return *loader_; }
  ClassRegistry& registry() { return registry_; }

 private:
  std::shared_ptr<MemorySource> source_;
  ClassRegistry registry_;
  std::unique_ptr<ClassLoader> loader_;
};

}  // namespace jrom::testing

#endif  // JROM_TESTS_MEMORY_CLASSES_HPP_
