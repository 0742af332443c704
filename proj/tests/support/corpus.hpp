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

// Access to the desk corpus and the frozen oracle files.

#ifndef JROM_TESTS_CORPUS_HPP_
#define JROM_TESTS_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "jrom/pipeline.hpp"
#include "jrom/verify.hpp"

#ifndef JROM_CORPUS_DIR
#error "JROM_CORPUS_DIR must be defined"
#endif
#ifndef JROM_ORACLE_DIR
#error "JROM_ORACLE_DIR must be defined"
#endif

namespace jrom::testing {

inline std::filesystem::path corpus_dir() { return JROM_CORPUS_DIR; }
inline std::filesystem::path oracle_path(const std::string& file) {
  return std::filesystem::path(JROM_ORACLE_DIR) / file;
}

inline Bytes read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

inline Bytes corpus_class(const std::string& name) {
  return read_bytes(corpus_dir() / (name + ".class"));
}

inline ClassPath corpus_classpath() {
  ClassPath cp;
  cp.add_directory(corpus_dir());
  return cp;
}

inline std::vector<std::string> corpus_names() {
  return list_class_names(corpus_dir());
}

// Non-empty, non-comment lines of an oracle file.
inline std::vector<std::string> oracle_lines(const std::string& file) {
  std::ifstream in(oracle_path(file));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

enum class Upto { Loaded, Linked };

// The whole corpus taken to `upto`, then initialized.
inline std::unique_ptr<Session> corpus_session(Upto upto,
                                               LinkFlags flags = {}) {
  auto s = std::make_unique<Session>(corpus_classpath(), std::move(flags));
  s->load(corpus_names(), true);
  if (upto == Upto::Linked) s->link();
  s->initialize();
  return s;
}

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::vector<std::string> parameter_types(const std::string& desc) {
  std::vector<std::string> out;
  std::size_t i = 1;
  while (desc[i] != ')') {
    std::size_t start = i;
    while (desc[i] == '[') ++i;
    if (desc[i] == 'L') i = desc.find(';', i);
    ++i;
    out.push_back(desc.substr(start, i - start));
  }
  return out;
}

inline ArgValue case_argument(const std::string& type, const std::string& a) {
  ArgValue v;
  v.type = type;
  if (a == "null") {
    v.kind = ArgValue::Kind::Null;
  } else if (a.starts_with("s:")) {
    v.kind = ArgValue::Kind::String;
    v.text = a.substr(2);
    for (char& c : v.text) {
      if (c == '_') c = ' ';
    }
  } else if (type == "[I") {
    v.kind = ArgValue::Kind::Array;
    std::istringstream in(a == "-" ? std::string() : a);
    for (std::string x; std::getline(in, x, ',');) {
      v.elems.push_back(static_cast<std::uint32_t>(std::stoi(x)));
    }
  } else if (type == "F" || type == "D") {
    v.bits = std::stoull(a, nullptr, 16);
  } else if (type == "J") {
    v.bits = static_cast<std::uint64_t>(std::stoll(a));
  } else {
    v.bits = static_cast<std::uint32_t>(std::stoi(a));
  }
  return v;
}

inline std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << "0x" << std::hex << v;
  return out.str();
}

inline std::string string_text(const World& w, std::uint32_t id) {
  const HeapObject& o = w.heap.object(id);
  const FieldRep* f = o.cls ? o.cls->lookup_field("value", "[C") : nullptr;
  if (!f) return "?";
  std::uint32_t chars = o.slots.at(f->instance_offset);
  std::string out;
  for (std::uint64_t c : w.heap.array(chars).elems) {
    out.push_back(c == ' ' ? '_' : static_cast<char>(c));
  }
  return out;
}

inline std::string render_outcome(const World& w, const std::string& ret,
                                  const Outcome& o) {
  if (o.kind == Outcome::Kind::Threw) return "threw " + o.exception;
  if (o.kind == Outcome::Kind::FuelExhausted) return "fuel";
  const Value& v = o.value;
  switch (ret[0]) {
    case 'V':
      return "void";
    case 'I':
    case 'S':
    case 'B':
    case 'C':
    case 'Z':
      return "int " + std::to_string(v.as_int());
    case 'J':
      return "long " + std::to_string(v.as_long());
    case 'F':
      return "float " + hex(static_cast<std::uint32_t>(v.bits));
    case 'D':
      return "double " + hex(v.bits);
    default:
      break;
  }
  auto id = static_cast<std::uint32_t>(v.bits);
  if (id == 0) return "null";
  std::string type = w.heap.type_of(id);
  if (type == "java/lang/String") return "string " + string_text(w, id);
  if (type == "[I") {
    std::string out = "ints ";
    const auto& elems = w.heap.array(id).elems;
    for (std::size_t k = 0; k < elems.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(static_cast<std::int32_t>(elems[k]));
    }
    return out;
  }
  return "object " + type;
}

// Runs one "owner name descriptor args..." case on a private copy of
// `world` and renders the result the way the host-JVM harness does.
inline std::string run_case(const World& world, const std::string& line) {
  std::vector<std::string> parts = split_words(line);
  const ClassRep* owner = world.registry->find(parts.at(0));
  if (!owner) return "no class " + parts[0];
  const MethodRep* m = owner->find_method(parts.at(1), parts.at(2));
  if (!m) return "no method " + parts[1];
  std::vector<std::string> types = parameter_types(parts[2]);
  std::vector<ArgValue> args;
  for (std::size_t k = 0; k < types.size(); ++k) {
    args.push_back(case_argument(types[k], parts.at(3 + k)));
  }
  World w = world;
  std::vector<std::uint32_t> slots = materialize(args, w);
  Machine machine(w, true);
  Outcome o = machine.execute(*m, slots);
  std::string ret = parts[2].substr(parts[2].find(')') + 1);
  return render_outcome(w, ret, o);
}

}  // namespace jrom::testing

#endif  // JROM_TESTS_CORPUS_HPP_
