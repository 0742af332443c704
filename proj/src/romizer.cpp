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

#include "jrom/romizer.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "jrom/error.hpp"

namespace jrom {

// ------------------------------------------------------------------- stats

StageStats snapshot_stats(const ClassRep& cls, Stage stage) {
  const std::optional<StageStats>* s = nullptr;
  switch (stage) {
    case Stage::Unloaded: s = &cls.unloaded_stats; break;
    case Stage::Loaded: s = &cls.loaded_stats; break;
    case Stage::Linked: s = &cls.linked_stats; break;
  }
  if (!s->has_value()) {
    throw Error(ErrorCode::StageNotReached,
                cls.name() + " has not reached " +
                    std::string(stage_name(stage)));
  }
  return **s;
}

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) /
                                static_cast<double>(whole);
}

std::string describe_flags(const LinkFlags& flags) {
  std::string out = flags.introspection ? "introspection" : "no-introspection";
  if (flags.private_field_opt) out += " private-field-opt";
  for (const std::string& p : flags.closed_packages) {
    out += " close-package=" + (p.empty() ? std::string("<default>") : p);
  }
  if (flags.closed_world) out += " closed-world";
  return out;
}

namespace {

void accumulate(StageStats& into, const StageStats& s) {
  into.pool.entries += s.pool.entries;
  into.pool.bytes += s.pool.bytes;
  into.class_bytes += s.class_bytes;
}

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace

FootprintReport build_report(const std::vector<const ClassRep*>& classes,
                             const LinkFlags& flags) {
  FootprintReport r;
  r.flags = flags;
  r.total.name = "TOTAL";
  for (const ClassRep* c : classes) {
    ClassFootprint f{c->name(), snapshot_stats(*c, Stage::Unloaded),
                     snapshot_stats(*c, Stage::Loaded),
                     snapshot_stats(*c, Stage::Linked)};
    accumulate(r.total.unloaded, f.unloaded);
    accumulate(r.total.loaded, f.loaded);
    accumulate(r.total.linked, f.linked);
    r.classes.push_back(std::move(f));
  }
  std::sort(r.classes.begin(), r.classes.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  return r;
}

std::string FootprintReport::table() const {
  std::size_t width = total.name.size();
  for (const auto& c : classes) width = std::max(width, c.name.size());
  const int w = static_cast<int>(width);
  std::ostringstream out;
  out << "# flags: " << describe_flags(flags) << "\n"
      << "# pool bytes: 2+length per text entry, 4 per handle or cell\n"
      << "# class bytes: pool + 8 per field/method + code + 8 per handler"
         " + stack maps (raw: file size)\n";
  out << format("%-*s %8s %8s %8s %7s %9s %9s %9s %7s %9s %9s %9s\n", w,
                "class", "entries", "loaded", "linked", "link%", "bytes",
                "loaded", "linked", "link%", "cls.raw", "cls.load", "cls.link");
  auto row = [&](const ClassFootprint& c) {
    out << format(
        "%-*s %8zu %8zu %8zu %6.2f%% %9zu %9zu %9zu %6.2f%% %9zu %9zu %9zu\n",
        w, c.name.c_str(), c.unloaded.pool.entries, c.loaded.pool.entries,
        c.linked.pool.entries,
        percent(c.linked.pool.entries, c.unloaded.pool.entries),
        c.unloaded.pool.bytes, c.loaded.pool.bytes, c.linked.pool.bytes,
        percent(c.linked.pool.bytes, c.unloaded.pool.bytes),
        c.unloaded.class_bytes, c.loaded.class_bytes, c.linked.class_bytes);
  };
  for (const auto& c : classes) row(c);
  row(total);
  return out.str();
}

std::string FootprintReport::records() const {
  auto stage = [](const StageStats& s) {
    return nlohmann::ordered_json{{"entries", s.pool.entries},
                                  {"bytes", s.pool.bytes},
                                  {"class_bytes", s.class_bytes}};
  };
  auto record = [&](const ClassFootprint& c, const char* kind) {
    nlohmann::ordered_json j;
    j["record"] = kind;
    j["class"] = c.name;
    j["unloaded"] = stage(c.unloaded);
    j["loaded"] = stage(c.loaded);
    j["linked"] = stage(c.linked);
    return j.dump();
  };
  std::string out;
  for (const auto& c : classes) out += record(c, "class") + "\n";
  nlohmann::ordered_json t = nlohmann::ordered_json::parse(record(total, "total"));
  t["flags"] = describe_flags(flags);
  out += t.dump() + "\n";
  return out;
}

// ------------------------------------------------------------------- image

namespace {

constexpr char kMagic[4] = {'J', 'R', 'M', 'Z'};

std::uint16_t flag_bits(const LinkFlags& f) {
  return static_cast<std::uint16_t>((f.introspection ? 1 : 0) |
                                    (f.private_field_opt ? 2 : 0) |
                                    (f.closed_world ? 4 : 0));
}

bool is_special_name(std::string_view name) {
  return is_array_name(name) || is_primitive_name(name);
}

void put_str(ImageWriter& w, const std::string& s) {
  w.u4(static_cast<std::uint32_t>(s.size()));
  w.text(s);
}

void put_stats(ImageWriter& w, const std::optional<StageStats>& s) {
  w.u1(s ? 1 : 0);
  StageStats v = s.value_or(StageStats{});
  w.u4(static_cast<std::uint32_t>(v.pool.entries));
  w.u4(static_cast<std::uint32_t>(v.pool.bytes));
  w.u4(static_cast<std::uint32_t>(v.class_bytes));
}

template <typename T>
std::uint16_t index_in(const std::vector<std::unique_ptr<T>>& v, const T* p) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get() == p) return static_cast<std::uint16_t>(i);
  }
  throw Error(ErrorCode::InternalError, "member not declared by its owner");
}

}  // namespace

Bytes emit_image(const std::vector<const ClassRep*>& input,
                 const MiniHeap& heap, const LinkFlags& flags) {
  std::vector<const ClassRep*> classes = input;
  std::sort(classes.begin(), classes.end(),
            [](const ClassRep* a, const ClassRep* b) {
              return a->name() < b->name();
            });
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::map<std::string, std::uint16_t> index;
  for (const ClassRep* c : classes) {
    if (c->state() != LoadState::Linked) {
      throw Error(ErrorCode::NotLinked, c->name() + " is not linked");
    }
    index.emplace(c->name(), static_cast<std::uint16_t>(index.size()));
  }

  std::set<std::string> missing;
  auto need = [&](const std::string& name) {
    if (!name.empty() && !is_special_name(name) && !index.count(name)) {
      missing.insert(name);
    }
  };
  for (const ClassRep* c : classes) {
    if (c->super) need(c->super->name());
    for (const ClassRep* i : c->interfaces) need(i->name());
    for (std::size_t k = 1; k < c->pool.atable.size(); ++k) {
      const AEntry& e = c->pool.atable[k];
      if (e.kind == AKind::ClassHandle || e.kind == AKind::FieldHandle ||
          e.kind == AKind::MethodHandle) {
        need(e.class_name);
      }
      if (e.field) need(e.field->owner->name());
      if (e.method) need(e.method->owner->name());
    }
    for (const MethodRep* m : c->dispatch_table) need(m->owner->name());
  }
  if (!missing.empty()) {
    std::string names;
    for (const std::string& n : missing) names += (names.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::IncompleteClosure, "missing classes: " + names);
  }

  auto class_ref = [&](const ClassRep* c) -> std::uint16_t {
    if (c == nullptr) return kNoClass;
    auto it = index.find(c->name());
    return it == index.end() ? kNoClass : it->second;
  };

  ImageWriter w;
  w.bytes(ByteView(reinterpret_cast<const std::uint8_t*>(kMagic), 4));
  w.u2(kImageVersion);
  w.u2(flag_bits(flags));
  w.u4(static_cast<std::uint32_t>(classes.size()));
  w.u4(static_cast<std::uint32_t>(flags.closed_packages.size()));
  for (const std::string& p : flags.closed_packages) put_str(w, p);

  for (const ClassRep* c : classes) {
    put_str(w, c->name());
    w.u2(c->access_flags);
    w.u2(class_ref(c->super));
    w.u2(static_cast<std::uint16_t>(c->interfaces.size()));
    for (const ClassRep* i : c->interfaces) w.u2(class_ref(i));
    w.u4(c->instance_slots);

    const RuntimePool& pool = c->pool;
    w.u4(static_cast<std::uint32_t>(pool.a_size()));
    for (std::size_t k = 1; k < pool.atable.size(); ++k) {
      const AEntry& e = pool.atable[k];
      w.u1(static_cast<std::uint8_t>(e.kind));
      w.u1(e.interface_method ? 1 : 0);
      w.u1(pool.amarks[k] ? 1 : 0);
      put_str(w, e.text);
      put_str(w, e.descriptor);
      put_str(w, e.class_name);
      w.u2(class_ref(e.cls));
      if (e.field) {
        w.u2(class_ref(e.field->owner));
        w.u2(index_in(e.field->owner->fields, e.field));
      } else {
        w.u2(kNoClass);
        w.u2(0);
      }
      if (e.method) {
        w.u2(class_ref(e.method->owner));
        w.u2(index_in(e.method->owner->methods, e.method));
      } else {
        w.u2(kNoClass);
        w.u2(0);
      }
    }
    w.u4(static_cast<std::uint32_t>(pool.v_size()));
    for (std::size_t k = 1; k < pool.vtable.size(); ++k) {
      w.u1(static_cast<std::uint8_t>(pool.vkinds[k]));
      w.u1(pool.vmarks[k] ? 1 : 0);
      w.u4(pool.vtable[k]);
    }

    w.u4(static_cast<std::uint32_t>(c->fields.size()));
    for (const auto& f : c->fields) {
      put_str(w, f->name);
      put_str(w, f->descriptor);
      w.u2(f->access_flags);
      w.u1(f->type_code);
      w.u1(f->placement ? 1 : 0);
      StaticPlacement p = f->placement.value_or(StaticPlacement{});
      w.u1(static_cast<std::uint8_t>(p.zone));
      w.u2(p.offset);
      w.u1(p.type_code);
      w.u2(f->instance_offset);
      w.u1(f->constant_value ? 1 : 0);
      ConstantInit ci = f->constant_value.value_or(ConstantInit{});
      w.u1(static_cast<std::uint8_t>(ci.tag));
      w.u8(ci.value);
      put_str(w, ci.text);
      w.u2(f->name_entry);
      w.u2(f->descriptor_entry);
    }

    w.u4(static_cast<std::uint32_t>(c->methods.size()));
    for (const auto& m : c->methods) {
      put_str(w, m->name);
      put_str(w, m->descriptor);
      w.u2(m->access_flags);
      w.u4(m->nargs);
      w.u1(m->code ? 1 : 0);
      if (m->code) {
        const MethodCode& code = *m->code;
        w.u4(static_cast<std::uint32_t>(code.bytecode.size()));
        w.bytes(code.bytecode);
        w.u2(code.max_stack);
        w.u2(code.max_locals);
        w.u4(static_cast<std::uint32_t>(code.exception_table.size()));
        for (const ExceptionEntry& e : code.exception_table) {
          w.u2(e.start_pc);
          w.u2(e.end_pc);
          w.u2(e.handler_pc);
          w.u2(e.catch_type);
        }
        w.u1(code.stack_maps ? 1 : 0);
        if (code.stack_maps) {
          w.u4(static_cast<std::uint32_t>(code.stack_maps->size()));
          w.bytes(*code.stack_maps);
        }
        w.u1(static_cast<std::uint8_t>(code.operands));
      }
      w.u1(m->dispatch_slot ? 1 : 0);
      w.u2(m->dispatch_slot.value_or(0));
      w.u2(m->name_entry);
      w.u2(m->descriptor_entry);
    }

    w.u4(static_cast<std::uint32_t>(c->dispatch_table.size()));
    for (const MethodRep* m : c->dispatch_table) {
      w.u2(class_ref(m->owner));
      w.u2(index_in(m->owner->methods, m));
    }

    w.u4(static_cast<std::uint32_t>(c->statics.a.size()));
    for (std::uint32_t v : c->statics.a) w.u4(v);
    w.u4(static_cast<std::uint32_t>(c->statics.v.size()));
    for (std::uint32_t v : c->statics.v) w.u4(v);

    put_stats(w, c->unloaded_stats);
    put_stats(w, c->loaded_stats);
    put_stats(w, c->linked_stats);
  }

  w.u4(static_cast<std::uint32_t>(heap.size()));
  for (std::uint32_t id = 1; id <= heap.size(); ++id) {
    bool array = heap.is_array(id);
    w.u1(array ? 1 : 0);
    if (array) {
      const HeapArray& a = heap.array(id);
      put_str(w, a.descriptor);
      w.u4(static_cast<std::uint32_t>(a.elems.size()));
      for (std::uint64_t e : a.elems) w.u8(e);
    } else {
      const HeapObject& o = heap.object(id);
      put_str(w, o.class_name);
      w.u4(static_cast<std::uint32_t>(o.slots.size()));
      for (std::uint32_t s : o.slots) w.u4(s);
    }
  }
  w.u4(static_cast<std::uint32_t>(heap.interned().size()));
  for (const auto& [text, id] : heap.interned()) {
    put_str(w, text);
    w.u4(id);
  }
  return std::move(w).take();
}

namespace {

class ImageParser {
 public:
  explicit ImageParser(ByteView bytes) : r_(bytes, ErrorCode::Corrupt) {}

  std::uint8_t u1() { return r_.u1(); }
  std::uint16_t u2() { return r_.u2(); }
  std::uint32_t u4() { return r_.u4(); }
  std::uint64_t u8() { return r_.u8(); }
  std::size_t pos() const { return r_.pos(); }
  bool at_end() const { return r_.at_end(); }

  std::string str() {
    std::uint32_t n = u4();
    return r_.text(n);
  }

  // A count that must fit in what is left, given `unit` bytes per item.
  std::uint32_t count(std::size_t unit) {
    std::size_t at = pos();
    std::uint32_t n = u4();
    if (unit != 0 && n > r_.remaining() / unit) {
      corrupt(at, "count " + std::to_string(n) + " exceeds image size");
    }
    return n;
  }

  Bytes blob() {
    std::uint32_t n = count(1);
    ByteView b = r_.bytes(n);
    return Bytes(b.begin(), b.end());
  }

  std::optional<StageStats> stats() {
    bool has = u1() != 0;
    StageStats s;
    s.pool.entries = u4();
    s.pool.bytes = u4();
    s.class_bytes = u4();
    if (!has) return std::nullopt;
    return s;
  }

  [[noreturn]] static void corrupt(std::size_t at, const std::string& what) {
    throw Error(ErrorCode::Corrupt, what, at);
  }

 private:
  ImageReader r_;
};

}  // namespace

LoadedImage load_image(ByteView bytes) {
  if (bytes.size() < 4 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw Error(ErrorCode::BadImageMagic, "not a jrom image", 0);
  }
  ImageParser p(bytes);
  for (int i = 0; i < 4; ++i) p.u1();
  std::uint16_t version = p.u2();
  if (version != kImageVersion) {
    throw Error(ErrorCode::VersionMismatch,
                "image version " + std::to_string(version) + ", expected " +
                    std::to_string(kImageVersion),
                4);
  }
  LoadedImage out;
  std::uint16_t bits = p.u2();
  out.flags.introspection = bits & 1;
  out.flags.private_field_opt = bits & 2;
  out.flags.closed_world = bits & 4;
  std::uint32_t n_classes = p.count(4);
  std::uint32_t n_packages = p.count(4);
  for (std::uint32_t i = 0; i < n_packages; ++i) {
    out.flags.closed_packages.insert(p.str());
  }

  // Cross-references are recorded as (offset, class, member) and resolved
  // once every record is in.
  struct Ref {
    std::size_t at;
    std::uint16_t cls;
    std::uint16_t member;
  };
  std::vector<std::unique_ptr<ClassRep>> classes;
  std::vector<std::function<void()>> fixups;
  auto check_class = [&](std::size_t at, std::uint16_t idx) {
    if (idx != kNoClass && idx >= n_classes) {
      ImageParser::corrupt(at, "class index " + std::to_string(idx));
    }
  };
  auto class_at = [&](std::uint16_t idx) -> ClassRep* {
    return idx == kNoClass ? nullptr : classes[idx].get();
  };

  for (std::uint32_t ci = 0; ci < n_classes; ++ci) {
    std::size_t at = p.pos();
    std::string name = p.str();
    if (name.empty()) ImageParser::corrupt(at, "empty class name");
    if (!classes.empty() && !(classes.back()->name() < name)) {
      ImageParser::corrupt(at, "class records out of order");
    }
    auto cls = std::make_unique<ClassRep>(name);
    ClassRep* c = cls.get();
    c->access_flags = p.u2();
    std::size_t sat = p.pos();
    std::uint16_t super = p.u2();
    check_class(sat, super);
    fixups.push_back([=, &class_at] { c->super = class_at(super); });
    std::uint16_t n_if = p.u2();
    for (std::uint16_t i = 0; i < n_if; ++i) {
      std::size_t iat = p.pos();
      std::uint16_t idx = p.u2();
      check_class(iat, idx);
      if (idx == kNoClass) ImageParser::corrupt(iat, "missing interface");
      fixups.push_back([=, &class_at] { c->interfaces.push_back(class_at(idx)); });
    }
    c->instance_slots = p.u4();

    RuntimePool& pool = c->pool;
    std::uint32_t n_a = p.count(3);
    for (std::uint32_t k = 0; k < n_a; ++k) {
      std::size_t eat = p.pos();
      AEntry e;
      std::uint8_t kind = p.u1();
      if (kind > static_cast<std::uint8_t>(AKind::MethodHandle)) {
        ImageParser::corrupt(eat, "bad atable kind");
      }
      e.kind = static_cast<AKind>(kind);
      e.interface_method = p.u1() != 0;
      bool marked = p.u1() != 0;
      e.text = p.str();
      e.descriptor = p.str();
      e.class_name = p.str();
      std::size_t rat = p.pos();
      std::uint16_t cls_idx = p.u2();
      Ref field{rat + 2, p.u2(), p.u2()};
      Ref method{rat + 6, p.u2(), p.u2()};
      check_class(rat, cls_idx);
      check_class(field.at, field.cls);
      check_class(method.at, method.cls);
      std::uint16_t slot = pool.add_a(std::move(e));
      pool.amarks[slot] = marked;
      fixups.push_back([=, &classes, &class_at] {
        AEntry& ent = c->pool.a(slot);
        ent.cls = class_at(cls_idx);
        if (field.cls != kNoClass) {
          auto& fs = classes[field.cls]->fields;
          if (field.member >= fs.size()) ImageParser::corrupt(field.at, "field index");
          ent.field = fs[field.member].get();
        }
        if (method.cls != kNoClass) {
          auto& ms = classes[method.cls]->methods;
          if (method.member >= ms.size()) {
            ImageParser::corrupt(method.at, "method index");
          }
          ent.method = ms[method.member].get();
        }
      });
    }
    std::uint32_t n_v = p.count(6);
    for (std::uint32_t k = 0; k < n_v; ++k) {
      std::size_t vat = p.pos();
      std::uint8_t kind = p.u1();
      if (kind > static_cast<std::uint8_t>(VKind::InterfaceMethodRef)) {
        ImageParser::corrupt(vat, "bad vtable kind");
      }
      bool marked = p.u1() != 0;
      std::uint16_t slot = pool.add_v(static_cast<VKind>(kind), p.u4());
      pool.vmarks[slot] = marked;
    }

    std::uint32_t n_fields = p.count(4);
    for (std::uint32_t k = 0; k < n_fields; ++k) {
      auto f = std::make_unique<FieldRep>();
      f->owner = c;
      f->name = p.str();
      f->descriptor = p.str();
      f->access_flags = p.u2();
      f->type_code = p.u1();
      bool placed = p.u1() != 0;
      StaticPlacement sp;
      sp.zone = static_cast<Zone>(p.u1() & 1);
      sp.offset = p.u2();
      sp.type_code = p.u1();
      if (placed) f->placement = sp;
      f->instance_offset = p.u2();
      bool has_const = p.u1() != 0;
      ConstantInit init;
      init.tag = static_cast<ConstantTag>(p.u1());
      init.value = p.u8();
      init.text = p.str();
      if (has_const) f->constant_value = std::move(init);
      f->name_entry = p.u2();
      f->descriptor_entry = p.u2();
      c->fields.push_back(std::move(f));
    }

    std::uint32_t n_methods = p.count(4);
    for (std::uint32_t k = 0; k < n_methods; ++k) {
      auto m = std::make_unique<MethodRep>();
      m->owner = c;
      m->name = p.str();
      m->descriptor = p.str();
      m->access_flags = p.u2();
      m->nargs = p.u4();
      if (p.u1() != 0) {
        MethodCode code;
        code.bytecode = p.blob();
        code.max_stack = p.u2();
        code.max_locals = p.u2();
        std::uint32_t n_exc = p.count(8);
        for (std::uint32_t x = 0; x < n_exc; ++x) {
          ExceptionEntry e;
          e.start_pc = p.u2();
          e.end_pc = p.u2();
          e.handler_pc = p.u2();
          e.catch_type = p.u2();
          code.exception_table.push_back(e);
        }
        if (p.u1() != 0) code.stack_maps = p.blob();
        std::size_t oat = p.pos();
        std::uint8_t space = p.u1();
        if (space > 1) ImageParser::corrupt(oat, "bad operand space");
        code.operands = static_cast<OperandSpace>(space);
        m->code = std::move(code);
      }
      bool has_slot = p.u1() != 0;
      std::uint16_t slot = p.u2();
      if (has_slot) m->dispatch_slot = slot;
      m->name_entry = p.u2();
      m->descriptor_entry = p.u2();
      c->methods.push_back(std::move(m));
    }

    std::uint32_t n_dispatch = p.count(4);
    for (std::uint32_t k = 0; k < n_dispatch; ++k) {
      Ref ref{p.pos(), p.u2(), p.u2()};
      check_class(ref.at, ref.cls);
      if (ref.cls == kNoClass) ImageParser::corrupt(ref.at, "dispatch owner");
      fixups.push_back([=, &classes] {
        auto& ms = classes[ref.cls]->methods;
        if (ref.member >= ms.size()) ImageParser::corrupt(ref.at, "method index");
        c->dispatch_table.push_back(ms[ref.member].get());
      });
    }

    std::uint32_t n_sa = p.count(4);
    for (std::uint32_t k = 0; k < n_sa; ++k) c->statics.a.push_back(p.u4());
    std::uint32_t n_sv = p.count(4);
    for (std::uint32_t k = 0; k < n_sv; ++k) c->statics.v.push_back(p.u4());

    c->unloaded_stats = p.stats();
    c->loaded_stats = p.stats();
    c->linked_stats = p.stats();
    classes.push_back(std::move(cls));
  }

  std::uint32_t n_cells = p.count(5);
  for (std::uint32_t k = 0; k < n_cells; ++k) {
    bool array = p.u1() != 0;
    std::string type = p.str();
    if (array) {
      std::uint32_t n = p.count(8);
      std::uint32_t id = out.heap.new_array(type, n);
      for (std::uint32_t e = 0; e < n; ++e) out.heap.array(id).elems[e] = p.u8();
    } else {
      std::uint32_t n = p.count(4);
      std::uint32_t id = out.heap.new_object(type, nullptr, n);
      for (std::uint32_t s = 0; s < n; ++s) out.heap.object(id).slots[s] = p.u4();
    }
  }
  std::uint32_t n_interned = p.count(8);
  for (std::uint32_t k = 0; k < n_interned; ++k) {
    std::string text = p.str();
    std::size_t at = p.pos();
    std::uint32_t id = p.u4();
    if (!out.heap.contains(id) || out.heap.is_array(id)) {
      ImageParser::corrupt(at, "interned string id " + std::to_string(id));
    }
    out.heap.set_interned(text, id);
  }
  if (!p.at_end()) ImageParser::corrupt(p.pos(), "trailing bytes");

  for (auto& fix : fixups) fix();

  out.registry = std::make_unique<ClassRegistry>();
  for (auto& cls : classes) {
    cls->advance(LoadState::Loaded);
    cls->advance(LoadState::Linked);
    cls->set_ready();
    out.classes.push_back(&out.registry->adopt(std::move(cls)));
  }
  for (std::uint32_t id = 1; id <= out.heap.size(); ++id) {
    if (out.heap.is_array(id)) continue;
    HeapObject& o = out.heap.object(id);
    o.cls = out.registry->find(o.class_name);
  }
  return out;
}

// ---------------------------------------------------------------- C output

std::string emit_c_array(ByteView bytes, const std::string& symbol) {
  std::ostringstream out;
  out << "/* jrom image, " << bytes.size() << " bytes */\n";
  out << "const unsigned char " << symbol << "[" << std::max<std::size_t>(bytes.size(), 1)
      << "] = {";
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i % 12 == 0) out << "\n ";
    out << format(" 0x%02x", bytes[i]) << (i + 1 < bytes.size() ? "," : "");
  }
  if (bytes.empty()) out << "0";
  out << "\n};\n";
  out << "const unsigned long " << symbol << "_len = " << bytes.size() << ";\n";
  return out.str();
}

}  // namespace jrom
