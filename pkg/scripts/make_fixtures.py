#!/usr/bin/env python3
"""Regenerate the bundled b-file fixtures and the preset manifest.

Every fixture is produced from a closed form or an independent recurrence,
never from the summation presets the fixtures are meant to check. Files are
written comment-free so the parser/serializer round-trip stays
byte-identical.

Run from the repository root:  python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from moessner.oeis import BFileEntry, parse_bfile, serialize_bfile  # noqa: E402
from moessner.oracles import (  # noqa: E402
    a002449_rec,
    catalan,
    euler_zigzag,
    factorial,
    fibonacci,
    fuss_catalan,
    pow_fast,
)

FIXTURES = ROOT / "src" / "moessner" / "fixtures"


def convolve(u, v, length):
    return [sum(u[i] * v[m - i] for i in range(m + 1)) for m in range(length)]


def catalan_self_convolution(fold, length):
    """fold-fold convolution of the Catalan sequence with itself."""
    base = [catalan(i) for i in range(length)]
    out = [1] + [0] * (length - 1)  # identity for convolution
    for _ in range(fold):
        out = convolve(out, base, length)
    return out


@lru_cache(maxsize=None)
def widening_count(m, s):
    """Chains of m choices where a choice of i widens the next range by i.

    The first range is 0..s; picking i makes the next range 0..s+i.
    """
    if m == 0:
        return 1
    return sum(widening_count(m - 1, s + i) for i in range(s + 1))


def two_back_count(n):
    """Chains i_1..i_n with i_1 = 0, i_2 <= 1, and i_k <= i_{k-2} + i_{k-1}.

    Forward DP over (second-to-last, last) index pairs; independent of the
    nested-summation engine's recursive descent.
    """
    if n == 0 or n == 1:
        return 1
    states = {(0, 0): 1, (0, 1): 1}
    for _ in range(3, n + 1):
        new = {}
        for (a, b), cnt in states.items():
            for i in range(a + b + 1):
                key = (b, i)
                new[key] = new.get(key, 0) + cnt
        states = new
    return sum(states.values())


def entries(values, start=0):
    return [BFileEntry(start + i, v) for i, v in enumerate(values)]


def double_factorial_odd(m):
    """(2m-1)!! with the empty product at m = 0."""
    out = 1
    for i in range(1, m + 1):
        out *= 2 * i - 1
    return out


def build_all():
    conv3 = catalan_self_convolution(3, 31)
    conv4 = catalan_self_convolution(4, 31)
    conv5 = catalan_self_convolution(5, 31)
    conv6 = catalan_self_convolution(6, 31)
    fixtures = {
        "A000027": entries([m for m in range(1, 42)], start=1),
        "A000045": entries([fibonacci(m) for m in range(41)]),
        "A000079": entries([pow_fast(2, m) for m in range(41)]),
        "A000108": entries([catalan(m) for m in range(31)]),
        "A000111": entries([euler_zigzag(m) for m in range(31)]),
        "A000142": entries([factorial(m) for m in range(26)]),
        "A000217": entries([m * (m + 1) // 2 for m in range(201)]),
        "A000244": entries([pow_fast(3, m) for m in range(41)]),
        # Catalan first differences: one leading zero, then 1, 3, 9, 28, ...
        "A000245": entries([0] + [catalan(m + 1) - catalan(m) for m in range(1, 31)]),
        "A000326": entries([m * (3 * m - 1) // 2 for m in range(201)]),
        "A000344": entries(conv5),
        "A000384": entries([m * (2 * m - 1) for m in range(201)]),
        "A001147": entries([double_factorial_odd(m) for m in range(26)]),
        "A002057": entries(conv4),
        "A002293": entries([fuss_catalan(4, m) for m in range(31)]),
        "A002449": entries([a002449_rec(m) for m in range(15)]),
        "A003517": entries(conv6),
        "A125860": entries([widening_count(m, 1) for m in range(13)]),
        "A137273": entries([two_back_count(m) for m in range(17)]),
    }
    # conv3 must agree with the Catalan-difference fixture where both exist
    assert [e.value for e in fixtures["A000245"]][1:] == conv3[:30]
    return fixtures


MANIFEST = """\
# Preset-to-fixture pairings. One line per pairing:
#   <preset> <A-number> vary=<param> from=<int> shift=<int> [fixed key=value ...]
# The preset value at vary=t is compared against fixture index t+shift.
moessner A000079 vary=n from=0 shift=0 x=1
moessner A000244 vary=n from=0 shift=0 x=2
moessner_stolid A000079 vary=n from=0 shift=0 x=1
factorial_rising A000142 vary=n from=0 shift=1
factorial_falling A000142 vary=n from=0 shift=0
xfold_factorial A001147 vary=n from=0 shift=1 x=2
binomial A000217 vary=x from=0 shift=1 n=2
catalan A000108 vary=n from=0 shift=0
catalan_from_one A000108 vary=n from=0 shift=0
catalan_convolved A000245 vary=n from=0 shift=1 x=2
catalan_convolved A002057 vary=n from=0 shift=0 x=3
catalan_convolved A000344 vary=n from=0 shift=0 x=4
catalan_convolved A003517 vary=n from=0 shift=0 x=5
a002293 A002293 vary=n from=0 shift=0
positive_integers A000027 vary=n from=0 shift=1
a125860 A125860 vary=n from=0 shift=0 x=1
a137273 A137273 vary=n from=0 shift=0
fibonacci A000045 vary=n from=0 shift=1
fibonacci_lahlou A000045 vary=n from=2 shift=1
euler_zigzag A000111 vary=n from=0 shift=0
a002449 A002449 vary=n from=0 shift=2
a002449_irwin A002449 vary=n from=1 shift=2
"""


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for a_number, rows in sorted(build_all().items()):
        text = serialize_bfile(rows)
        assert parse_bfile(text) == rows  # round-trip before anything lands on disk
        path = FIXTURES / f"b{a_number[1:]}.txt"
        path.write_text(text, encoding="ascii")
        print(f"wrote {path.name}: {len(rows)} entries")
    (FIXTURES / "manifest.txt").write_text(MANIFEST, encoding="ascii")
    print(f"wrote manifest.txt: {len([l for l in MANIFEST.splitlines() if l and not l.startswith('#')])} pairings")


if __name__ == "__main__":
    main()
