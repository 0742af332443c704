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

"""Patches a compiled java/lang/Object so it is a valid root class.

The compiler treats Object like any other class: super_class names Object
itself and the constructor starts with aload_0; invokespecial Object.<init>.
This rewrites super_class to 0 and turns that self-call into nops.
"""

import struct
import sys

WIDE_TAGS = (5, 6)
SIZES = {3: 4, 4: 4, 7: 2, 8: 2, 9: 4, 10: 4, 11: 4, 12: 4}


def skip_pool(data, pos):
    (count,) = struct.unpack_from(">H", data, pos)
    pos += 2
    utf8 = {}
    i = 1
    while i < count:
        tag = data[pos]
        pos += 1
        if tag == 1:
            (n,) = struct.unpack_from(">H", data, pos)
            utf8[i] = data[pos + 2:pos + 2 + n].decode("utf-8", "replace")
            pos += 2 + n
        elif tag in WIDE_TAGS:
            pos += 8
            i += 1
        else:
            pos += SIZES[tag]
        i += 1
    return pos, utf8


def patch(data):
    data = bytearray(data)
    pos, utf8 = skip_pool(data, 8)
    super_at = pos + 4
    struct.pack_into(">H", data, super_at, 0)
    pos += 6
    (n_ifaces,) = struct.unpack_from(">H", data, pos)
    pos += 2 + 2 * n_ifaces
    for table in ("fields", "methods"):
        (n,) = struct.unpack_from(">H", data, pos)
        pos += 2
        for _ in range(n):
            _, name_idx, _, n_attr = struct.unpack_from(">HHHH", data, pos)
            pos += 8
            for _ in range(n_attr):
                attr_name, length = struct.unpack_from(">HI", data, pos)
                body = pos + 6
                if (table == "methods" and utf8.get(name_idx) == "<init>"
                        and utf8.get(attr_name) == "Code"):
                    code = body + 8
                    if data[code] == 0x2A and data[code + 1] == 0xB7:
                        data[code:code + 4] = b"\x00\x00\x00\x00"
                pos = body + length
    return bytes(data)


def main(argv):
    path = argv[1]
    with open(path, "rb") as f:
        data = f.read()
    with open(path, "wb") as f:
        f.write(patch(data))


if __name__ == "__main__":
    main(sys.argv)
