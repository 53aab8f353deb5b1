#!/usr/bin/env python3
"""Regenerates include/coocnet/unicode_tables.hpp from Python's unicodedata.

Emits sorted, inclusive codepoint ranges for the Unicode general categories
the normalizer needs: punctuation (P*) and separator spaces (Zs).
"""
import sys
import unicodedata


def ranges(predicate):
    out = []
    start = None
    prev = None
    for cp in range(0x110000):
        if predicate(chr(cp)):
            if start is None:
                start = cp
            prev = cp
        elif start is not None:
            out.append((start, prev))
            start = None
    if start is not None:
        out.append((start, prev))
    return out


def emit(name, rs, fh):
    fh.write(f"inline constexpr CpRange {name}[] = {{\n")
    for lo, hi in rs:
        fh.write(f"    {{0x{lo:04X}, 0x{hi:04X}}},\n")
    fh.write("};\n\n")


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else "include/coocnet/unicode_tables.hpp"
    punct = ranges(lambda c: unicodedata.category(c).startswith("P"))
    zs = ranges(lambda c: unicodedata.category(c) == "Zs")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("// Generated by tools/gen_unicode_tables.py from Python unicodedata\n")
        fh.write(f"// (Unicode {unicodedata.unidata_version}). Do not edit by hand.\n")
        fh.write("#pragma once\n\n")
        fh.write("#include <cstdint>\n\n")
        fh.write("namespace coocnet::uni {\n\n")
        fh.write("struct CpRange {\n    char32_t lo;\n    char32_t hi;\n};\n\n")
        emit("kPunctRanges", punct, fh)
        emit("kSpaceSeparatorRanges", zs, fh)
        fh.write("}  // namespace coocnet::uni\n")
    print(f"wrote {path}: {len(punct)} punct ranges, {len(zs)} Zs ranges")


if __name__ == "__main__":
    main()
