#!/usr/bin/env python3
"""Frequency-count reference for a character-level order-2 model.

Counts which character follows "th" in data/corpus.txt (one document per
non-blank line) and writes the add-alpha smoothed probabilities to
tests/oracles/ngram_th.inc. The support is every character that occurs in
the corpus.

    python3 scripts/oracles/ngram_frequency.py [--alpha 0.1]
"""

import argparse
from collections import Counter
from pathlib import Path

CONTEXT = "th"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--corpus", default="data/corpus.txt")
    ap.add_argument("--alpha", type=float, default=0.1)
    ap.add_argument("--out", default="tests/oracles/ngram_th.inc")
    args = ap.parse_args()

    docs = [line.rstrip("\r") for line in Path(args.corpus).read_text(encoding="utf-8").split("\n")]
    docs = [d for d in docs if d]
    follow = Counter()
    alphabet = set()
    for doc in docs:
        alphabet.update(doc)
        for i in range(len(doc) - 2):
            if doc[i:i + 2] == CONTEXT:
                follow[doc[i + 2]] += 1
    total = sum(follow.values())
    support = len(alphabet)
    norm = total + args.alpha * support

    lines = [
        "// Generated by scripts/oracles/ngram_frequency.py; do not edit.",
        "",
        f"inline constexpr double kThAlpha = {args.alpha!r};",
        f"inline constexpr std::size_t kThTotal = {total};",
        f"inline constexpr std::size_t kThSupport = {support};",
        f"inline constexpr double kThUnseen = {args.alpha / norm!r};",
        "inline constexpr ThRow kThRows[] = {",
    ]
    for ch in sorted(follow):
        count = follow[ch]
        lines.append(f"    {{U'\\U{ord(ch):08X}', {count}, {(count + args.alpha) / norm!r}}},")
    lines.append("};")
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
