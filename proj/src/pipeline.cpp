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

#include "jrom/pipeline.hpp"

#include <algorithm>
#include <set>

namespace jrom {

std::vector<std::string> list_class_names(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::Io, "not a directory: " + dir.string());
  }
  std::vector<std::string> names;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".class") continue;
    fs::path rel = fs::relative(e.path(), dir);
    rel.replace_extension();
    names.push_back(rel.generic_string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

Session::Session(ClassPath classpath, LinkFlags flags)
    : flags_(std::move(flags)),
      registry_(std::make_unique<ClassRegistry>()),
      loader_(std::make_unique<ClassLoader>(*registry_, std::move(classpath),
                                            flags_.load_options())) {
  world_.registry = registry_.get();
}

void Session::record(const std::string& name, const Error& e) {
  failures_.push_back({name, e.code(), e.what()});
}

void Session::load(const std::vector<std::string>& roots, bool closure) {
  std::set<std::string> names(target_names_.begin(), target_names_.end());
  for (const std::string& root : roots) {
    try {
      ClassRep& c = loader_->require_loaded(root);
      names.insert(c.name());
      if (closure) load_dependencies(c, *loader_);
    } catch (const Error& e) {
      record(root, e);
    }
  }
  if (closure) {
    for (const ClassRep* c : registry_->classes()) {
      if (c->kind() == ClassKind::Regular && c->state() != LoadState::Unloaded) {
        names.insert(c->name());
      }
    }
  }
  target_names_.assign(names.begin(), names.end());
}

void Session::link() {
  Linker linker(*loader_, flags_);
  for (ClassRep* c : mutable_targets()) {
    if (c->state() != LoadState::Loaded) continue;
    try {
      linker.link(*c);
    } catch (const Error& e) {
      record(c->name(), e);
    }
  }
}

void Session::initialize() {
  ClinitRunner runner(world_);
  for (ClassRep* c : registry_->classes()) {
    if (c->state() == LoadState::Unloaded || c->ready()) continue;
    try {
      make_ready(*c, runner);
    } catch (const Error& e) {
      record(c->name(), e);
    }
  }
}

std::vector<const ClassRep*> Session::targets() const {
  std::vector<const ClassRep*> out;
  for (const std::string& n : target_names_) {
    const ClassRep* c = registry_->find(n);
    if (c && c->kind() == ClassKind::Regular && c->state() != LoadState::Unloaded) {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<ClassRep*> Session::mutable_targets() {
  std::vector<ClassRep*> out;
  for (const ClassRep* c : targets()) out.push_back(const_cast<ClassRep*>(c));
  return out;
}

}  // namespace jrom
