#!/usr/bin/env python3
# Copyright 2026 The jrom Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Static-zone layout and dispatch tables computed from class files alone.

Statics go in declaration order: references to the a-zone, primitives to
the v-zone, long and double taking two v slots. A dispatch table starts as
a copy of the superclass table; each virtual method either replaces the
slot with the same name and descriptor or is appended.

Usage: layout_oracle.py CLASSES_DIR > layout_expected.jsonl
"""
import json
import os
import sys

import classdump

ACC_PRIVATE = 0x0002
ACC_STATIC = 0x0008


def statics(d):
    out = []
    a = v = 0
    for f in d["fields"]:
        if not f["flags"] & ACC_STATIC:
            continue
        desc = f["descriptor"]
        if desc[0] in "L[":
            out.append([f["name"], "a", a])
            a += 1
        else:
            out.append([f["name"], "v", v])
            v += 2 if desc in ("J", "D") else 1
    return out


def dispatch(root, name, cache):
    if name in cache:
        return cache[name]
    d = classdump.dump(os.path.join(root, name + ".class"))
    table = list(dispatch(root, d["super_class"], cache)) if d["super_class"] else []
    for m in d["methods"]:
        if m["flags"] & (ACC_STATIC | ACC_PRIVATE) or m["name"] in ("<init>", "<clinit>"):
            continue
        key = m["name"] + m["descriptor"]
        for i, (owner, k) in enumerate(table):
            if k == key:
                table[i] = (name, key)
                break
        else:
            table.append((name, key))
    cache[name] = table
    return table


def main():
    root = sys.argv[1]
    cache = {}
    names = []
    for dp, _, fs in os.walk(root):
        for f in fs:
            if f.endswith(".class"):
                names.append(os.path.relpath(os.path.join(dp, f), root)[:-6])
    for name in sorted(names):
        d = classdump.dump(os.path.join(root, name + ".class"))
        if d["access_flags"] & 0x0200:
            continue
        rec = {
            "class": name,
            "statics": statics(d),
            "dispatch": [owner + "." + k for owner, k in dispatch(root, name, cache)],
        }
        print(json.dumps(rec, sort_keys=True))


if __name__ == "__main__":
    main()
