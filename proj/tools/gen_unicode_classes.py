#!/usr/bin/env python3
"""Regenerates include/rex/unicode_classes.hpp.

Freezes the BMP code-point sets matched by \\d, \\w and \\s in Python's
`re` module into interval tables, so the engine's named classes do not
drift with the host runtime.
"""

import re
import sys

CLASSES = [
    ("digit", re.compile(r"\d")),
    ("word", re.compile(r"\w")),
    ("space", re.compile(r"\s")),
]


def intervals(pattern):
    out = []
    lo = None
    prev = None
    for cp in range(0x10000):
        if pattern.match(chr(cp)):
            if lo is None:
                lo = prev = cp
            elif cp == prev + 1:
                prev = cp
            else:
                out.append((lo, prev))
                lo = prev = cp
    if lo is not None:
        out.append((lo, prev))
    return out


def emit(out):
    out.write("// Generated by tools/gen_unicode_classes.py. Do not edit by hand.\n")
    out.write("#pragma once\n\n")
    out.write("#include <cstdint>\n#include <utility>\n\n")
    out.write("namespace rex::tables {\n\n")
    out.write("using CodePointRange = std::pair<std::uint16_t, std::uint16_t>;\n\n")
    for name, pattern in CLASSES:
        ranges = intervals(pattern)
        out.write(f"inline constexpr CodePointRange k_{name}[] = {{\n")
        for i in range(0, len(ranges), 6):
            row = ", ".join(f"{{0x{lo:04X}, 0x{hi:04X}}}" for lo, hi in ranges[i : i + 6])
            out.write(f"    {row},\n")
        out.write("};\n\n")
    out.write("}  // namespace rex::tables\n")


if __name__ == "__main__":
    emit(sys.stdout)
