#!/usr/bin/env python3
"""Reference values for the closed-form statistics and metrics.

Every value is computed in exact rational arithmetic (square roots at 50
digits) and rounded once to a double, so the C++ results can be checked to
within a few ulps. Writes tests/oracles/closed_forms.inc.

    python3 scripts/oracles/closed_forms.py [--out tests/oracles/closed_forms.inc]
"""

import argparse
from decimal import Decimal, getcontext
from fractions import Fraction
from pathlib import Path

getcontext().prec = 50

# (green, length, gamma)
KGW_CASES = [
    (40, 100, "0.25"), (25, 100, "0.25"), (0, 1, "0.25"), (1, 1, "0.25"),
    (200, 200, "0.25"), (0, 200, "0.25"), (57, 200, "0.25"), (63, 200, "0.5"),
    (150, 200, "0.5"), (7, 10, "0.1"), (3, 17, "0.3"), (999, 1000, "0.9"),
    (12, 37, "0.25"), (88, 400, "0.25"), (131, 400, "0.25"), (5, 5, "0.75"),
    (1, 3, "0.5"), (333, 1000, "0.333"), (40, 64, "0.125"), (2, 1024, "0.01"),
]

# (ones, n) against p = 1/2
BINOMIAL_CASES = [
    (80, 100), (50, 100), (0, 1), (1, 1), (0, 100), (100, 100), (7, 10),
    (3, 7), (156, 156), (78, 156), (90, 156), (13, 20), (501, 1000),
    (600, 1000), (1, 2), (2, 3), (17, 31), (250, 400), (199, 400), (42, 64),
]

# (q_clean, q_attack)
QUALITY_CASES = [
    ("0.8", "0.8"), ("0.8", "0"), ("0.8", "0.9"), ("0", "0"), ("0", "0.5"),
    ("1", "1"), ("1", "0"), ("0.5", "0.25"), ("0.56", "0.51"), ("0.3", "0.1"),
    ("0.9", "0.45"), ("0.123", "0.0456"), ("0.75", "0.7499"), ("0.2", "0.2"),
    ("0.6", "0.3"), ("0.999", "0.001"), ("0.41", "0.82"), ("0.55", "0.54"),
    ("0.07", "0.03"), ("0.33", "0.11"),
]

# Decision strings: 1 = detected, 0 = not detected, U = undecidable.
RATE_CASES = [
    "1", "0", "U", "1111", "0000", "10", "110", "1U0", "UUUU1", "1011001",
    "1" * 199 + "0", "1" * 190 + "0" * 10, "01" * 50, "1110" * 25,
    "U1" * 7, "100000000", "1" * 7 + "U" * 3, "0" * 19 + "1",
    "1" * 33 + "0" * 67, "11U11U11U1",
]

# (Q, W)
ROBUST_CASES = [
    ("0.8", "0.6"), ("0", "0"), ("1", "1"), ("1", "0"), ("0", "1"),
    ("0.780358", "1"), ("0.5", "0.5"), ("0.123456", "0.654321"),
    ("0.9", "0.0349"), ("0.7", "0.2365"), ("0.33", "0.67"), ("0.01", "0.99"),
    ("0.25", "0.75"), ("0.6", "0.6"), ("0.875", "0.125"), ("0.4", "0.1"),
    ("0.95", "0.05"), ("0.5095", "0.5095"), ("0.2", "0.8"), ("0.111", "0.222"),
]


def dsqrt(x: Fraction) -> Decimal:
    return (Decimal(x.numerator) / Decimal(x.denominator)).sqrt()


def to_double(x) -> float:
    if isinstance(x, Fraction):
        return float(x)  # correctly rounded
    return float(x)


def kgw_z(green, length, gamma):
    g = Fraction(gamma)
    num = Fraction(green) - g * length
    den = dsqrt(Fraction(length) * g * (1 - g))
    return Decimal(num.numerator) / Decimal(num.denominator) / den


def binomial_z(ones, n):
    num = Fraction(ones, n) - Fraction(1, 2)
    den = dsqrt(Fraction(1, 4) / n)
    return Decimal(num.numerator) / Decimal(num.denominator) / den


def quality(qc, qa):
    qc, qa = Fraction(qc), Fraction(qa)
    ratio = Fraction(0) if qc == 0 else min(max(qa / qc, Fraction(0)), Fraction(1))
    return qc / 2 + ratio / 2


def rate(decisions):
    return Fraction(decisions.count("1"), len(decisions))


def robust(q, w):
    return (Fraction(q) + Fraction(w)) / 2


def lit(x: float) -> str:
    return repr(float(x))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="tests/oracles/closed_forms.inc")
    args = ap.parse_args()
    lines = ["// Generated by scripts/oracles/closed_forms.py; do not edit.", ""]

    lines.append("inline constexpr KgwCase kKgwCases[] = {")
    for green, length, gamma in KGW_CASES:
        lines.append(f"    {{{green}, {length}, {gamma}, {lit(kgw_z(green, length, gamma))}}},")
    lines.append("};")
    lines.append("")
    lines.append("inline constexpr BinomialCase kBinomialCases[] = {")
    for ones, n in BINOMIAL_CASES:
        lines.append(f"    {{{ones}, {n}, {lit(binomial_z(ones, n))}}},")
    lines.append("};")
    lines.append("")
    lines.append("inline constexpr QualityCase kQualityCases[] = {")
    for qc, qa in QUALITY_CASES:
        lines.append(f"    {{{qc}, {qa}, {lit(to_double(quality(qc, qa)))}}},")
    lines.append("};")
    lines.append("")
    lines.append("inline constexpr RateCase kRateCases[] = {")
    for d in RATE_CASES:
        lines.append(f'    {{"{d}", {lit(to_double(rate(d)))}}},')
    lines.append("};")
    lines.append("")
    lines.append("inline constexpr RobustCase kRobustCases[] = {")
    for q, w in ROBUST_CASES:
        lines.append(f"    {{{q}, {w}, {lit(to_double(robust(q, w)))}}},")
    lines.append("};")

    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
