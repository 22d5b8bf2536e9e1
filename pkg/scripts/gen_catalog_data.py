#!/usr/bin/env python3
"""Regenerate the built-in group catalog data files.

Centered orthorhombic groups are tabulated in a conventional cell whose
lattice is larger than the primitive one; this script rewrites their point
group matrices and translations in a primitive basis (where the translation
lattice is exactly Z^3) and emits every catalog entry as a JSON document
under src/crysturn/data/.

Run from anywhere; requires the package to be importable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from crysturn.catalog import load_group
from crysturn.linalg import IntMatrix, rat_apply, rational_inverse

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "crysturn" / "data"

# Conventional-to-primitive basis matrices, doubled so they stay integral.
# Columns are the primitive lattice vectors in conventional coordinates.
FACE_CENTERED_2B = IntMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
BODY_CENTERED_2B = IntMatrix.from_rows([[-1, 1, 1], [1, -1, 1], [1, 1, -1]])


def to_primitive(basis_doubled: IntMatrix, m: IntMatrix) -> list[list[int]]:
    """Conjugate a conventional point operation into the primitive basis."""
    inv = rational_inverse(basis_doubled)
    rows = [rat_apply(inv, col) for col in zip(*(m @ basis_doubled).rows)]
    out = [[rows[j][i] for j in range(len(rows))] for i in range(len(rows))]
    assert all(x.denominator == 1 for row in out for x in row), (
        "operation does not preserve the centered lattice"
    )
    return [[int(x) for x in row] for row in out]


def translation_to_primitive(basis_doubled: IntMatrix, t: list) -> list[str]:
    inv = rational_inverse(basis_doubled)
    prim = rat_apply(inv, [2 * Fraction(x) for x in t])
    return [str(x % 1) for x in prim]


def gen(translation, matrix) -> dict:
    return {"translation": [str(Fraction(x)) for x in translation], "matrix": matrix}


I2 = [[1, 0], [0, 1]]
SWAP2 = [[0, 1], [1, 0]]
SHEAR2 = [[1, 1], [0, 1]]
ROT3 = [[0, -1], [1, -1]]
ROT6 = [[1, -1], [1, 0]]

CYCLE3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
SWAP12_3 = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
SHEAR12_3 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]


def diag(*entries):
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def block(upper, lower):
    n, m = len(upper), len(lower)
    out = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        out[i][:n] = upper[i]
    for i in range(m):
        out[n + i][n:] = lower[i]
    return out


SIGNED_PERM_GENS = [CYCLE3, SWAP12_3, diag(-1, 1, 1)]

ENTRIES = [
    {
        "name": "1/1/1/1/1",
        "dimension": 1,
        "labels": {"bbnwz": "1/1/1/1/1", "it": "1/1", "carat": "min.1-1.1-0"},
        "generators": [],
        "normalizer_generators": [[[-1]]],
        "expected": {"spectrum": "{2}", "r_infinity": False},
    },
    {
        "name": "1/2/1/1/1",
        "dimension": 1,
        "labels": {"bbnwz": "1/2/1/1/1"},
        "generators": [gen([0], [[-1]])],
        "normalizer_generators": [[[-1]]],
        "expected": {"r_infinity": True},
    },
    {
        "name": "2/1/1/1/1",
        "dimension": 2,
        "labels": {"bbnwz": "2/1/1/1/1", "it": "2/1", "carat": "min.2-1.1-0"},
        "generators": [],
        "normalizer_generators": [SWAP2, SHEAR2],
        "expected": {"spectrum": "N", "r_infinity": False},
    },
    {
        "name": "2/1/2/1/1",
        "dimension": 2,
        "labels": {"bbnwz": "2/1/2/1/1", "it": "2/2", "carat": "group.1-1.1-0"},
        "generators": [gen([0, 0], diag(-1, -1))],
        "normalizer_generators": [SWAP2, SHEAR2],
        "expected": {"spectrum": "2N ∪ {3}", "r_infinity": False},
    },
    {
        "name": "2/4/1/1/1",
        "dimension": 2,
        "labels": {"bbnwz": "2/4/1/1/1", "it": "2/13", "carat": "min.5-1.1-0"},
        "generators": [gen([0, 0], ROT3)],
        "normalizer_generators": [ROT6, SWAP2],
        "expected": {"spectrum": "{4}", "r_infinity": False},
    },
    {
        "name": "klein-bottle",
        "dimension": 2,
        "labels": {"it": "2/4"},
        "generators": [gen(["1/2", 0], diag(1, -1))],
        "normalizer_generators": [diag(-1, 1), diag(1, -1)],
        "expected": {"r_infinity": True},
    },
    {
        "name": "3/1/1/1/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/1/1/1/1", "it": "3/1", "carat": "min.6-1.1-0"},
        "generators": [],
        "normalizer_generators": [CYCLE3, SWAP12_3, diag(-1, 1, 1), SHEAR12_3],
        "expected": {"spectrum": "N", "r_infinity": False},
    },
    {
        "name": "3/1/2/1/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/1/2/1/1", "it": "3/2", "carat": "group.5-1.1-0"},
        "generators": [gen([0, 0, 0], diag(-1, -1, -1))],
        "normalizer_generators": [CYCLE3, SWAP12_3, diag(-1, 1, 1), SHEAR12_3],
        "expected": {"spectrum": "N∖{1}", "r_infinity": False},
    },
    {
        "name": "3/2/1/1/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/2/1/1/1", "it": "3/3", "carat": "min.7-1.1-0"},
        "generators": [gen([0, 0, 0], diag(1, -1, -1))],
        "normalizer_generators": [
            diag(-1, 1, 1),
            block([[1]], SWAP2),
            block([[1]], SHEAR2),
        ],
        "expected": {"spectrum": "4N ∪ {6}", "r_infinity": False},
    },
    {
        "name": "3/2/1/1/2",
        "dimension": 3,
        "labels": {"bbnwz": "3/2/1/1/2", "it": "3/4", "carat": "min.7-1.1-1"},
        "generators": [gen([0, 0, "1/2"], diag(-1, -1, 1))],
        "normalizer_generators": [
            block(SWAP2, [[1]]),
            block(SHEAR2, [[1]]),
            diag(1, 1, -1),
            diag(-1, 1, 1),
        ],
        "expected": {"spectrum": "2N", "r_infinity": False},
    },
    {
        "name": "3/2/1/2/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/2/1/2/1", "it": "3/5", "carat": "min.7-1.2-0"},
        "generators": [gen([0, 0, 0], [[1, -1, 0], [0, -1, 0], [0, 0, -1]])],
        "normalizer_generators": [
            [[-1, 1, 1], [0, 1, 2], [0, 1, 1]],
            diag(1, 1, -1),
            diag(-1, -1, -1),
        ],
        "expected": {"spectrum": "4N", "r_infinity": False},
    },
    {
        "name": "3/3/1/1/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/3/1/1/1", "it": "3/16", "carat": "min.10-1.1-0"},
        "generators": [
            gen([0, 0, 0], diag(1, -1, -1)),
            gen([0, 0, 0], diag(-1, 1, -1)),
        ],
        "normalizer_generators": SIGNED_PERM_GENS,
        "expected": {"spectrum": "{2}", "r_infinity": False},
    },
    {
        "name": "3/3/1/1/4",
        "dimension": 3,
        "labels": {"bbnwz": "3/3/1/1/4", "it": "3/19", "carat": "min.10-1.1-3"},
        "generators": [
            gen(["1/2", 0, "1/2"], diag(-1, -1, 1)),
            gen([0, "1/2", "1/2"], diag(-1, 1, -1)),
        ],
        "normalizer_generators": SIGNED_PERM_GENS,
        "expected": {"spectrum": "{2}", "r_infinity": False},
    },
    {
        "name": "3/3/1/3/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/3/1/3/1", "it": "3/22", "carat": "min.10-1.3-0"},
        "generators": [
            gen([0, 0, 0], to_primitive(FACE_CENTERED_2B, IntMatrix.from_rows(diag(1, -1, -1)))),
            gen([0, 0, 0], to_primitive(FACE_CENTERED_2B, IntMatrix.from_rows(diag(-1, -1, 1)))),
        ],
        "normalizer_generators": [
            to_primitive(FACE_CENTERED_2B, IntMatrix.from_rows(g)) for g in SIGNED_PERM_GENS
        ],
        "expected": {"spectrum": "{2}", "r_infinity": False},
    },
    {
        "name": "3/3/1/4/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/3/1/4/1", "it": "3/23", "carat": "min.10-1.4-0"},
        "generators": [
            gen([0, 0, 0], to_primitive(BODY_CENTERED_2B, IntMatrix.from_rows(diag(1, -1, -1)))),
            gen([0, 0, 0], to_primitive(BODY_CENTERED_2B, IntMatrix.from_rows(diag(-1, -1, 1)))),
        ],
        "normalizer_generators": [
            to_primitive(BODY_CENTERED_2B, IntMatrix.from_rows(g)) for g in SIGNED_PERM_GENS
        ],
        "expected": {"spectrum": "{2}", "r_infinity": False},
    },
    {
        "name": "3/3/1/4/2",
        "dimension": 3,
        "labels": {"bbnwz": "3/3/1/4/2", "it": "3/24", "carat": "min.10-1.4-1"},
        "generators": [
            gen(
                translation_to_primitive(BODY_CENTERED_2B, ["1/2", 0, "1/2"]),
                to_primitive(BODY_CENTERED_2B, IntMatrix.from_rows(diag(-1, -1, 1))),
            ),
            gen(
                translation_to_primitive(BODY_CENTERED_2B, [0, "1/2", "1/2"]),
                to_primitive(BODY_CENTERED_2B, IntMatrix.from_rows(diag(-1, 1, -1))),
            ),
        ],
        "normalizer_generators": [
            to_primitive(BODY_CENTERED_2B, IntMatrix.from_rows(g)) for g in SIGNED_PERM_GENS
        ],
        "expected": {"spectrum": "{2}", "r_infinity": False},
    },
    {
        "name": "3/5/1/1/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/5/1/1/1", "it": "3/146", "carat": "min.13-1.2-0"},
        "generators": [gen([0, 0, 0], CYCLE3)],
        "normalizer_generators": [CYCLE3, SWAP12_3, diag(-1, -1, -1)],
        "expected": {"spectrum": "{8}", "r_infinity": False},
    },
    {
        "name": "3/5/1/2/1",
        "dimension": 3,
        "labels": {"bbnwz": "3/5/1/2/1", "it": "3/143", "carat": "min.13-1.1-0"},
        "generators": [gen([0, 0, 0], block(ROT3, [[1]]))],
        "normalizer_generators": [
            block(ROT6, [[1]]),
            block(SWAP2, [[1]]),
            diag(1, 1, -1),
        ],
        "expected": {"spectrum": "{8}", "r_infinity": False},
    },
    {
        "name": "4/3/1/1/1",
        "dimension": 4,
        "labels": {"bbnwz": "4/3/1/1/1", "carat": "min.18-1.1-0"},
        "generators": [gen([0, 0, 0, 0], diag(1, 1, -1, -1))],
        "normalizer_generators": [
            block(SWAP2, I2),
            block(SHEAR2, I2),
            block(I2, SWAP2),
            block(I2, SHEAR2),
        ],
        "expected": {"spectrum": "2N ∪ 3N", "r_infinity": False},
    },
    {
        "name": "4/9/2/1/1",
        "dimension": 4,
        "labels": {"bbnwz": "4/9/2/1/1", "carat": "group.182-1.1-0"},
        "generators": [
            gen([0, 0, 0, 0], block(diag(-1, -1), I2)),
            gen([0, 0, 0, 0], block(I2, ROT3)),
        ],
        "normalizer_generators": [
            block(SWAP2, I2),
            block(SHEAR2, I2),
            block(I2, ROT6),
            block(I2, SWAP2),
            diag(-1, -1, -1, -1),
        ],
        "expected": {"spectrum": "8N ∪ {12}", "r_infinity": False},
    },
]


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    for entry in ENTRIES:
        path = DATA_DIR / (entry["name"].replace("/", "-") + ".json")
        path.write_text(json.dumps(entry, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        load_group(path)  # every entry must build and validate
        print(f"wrote {path.name}")
    print(f"{len(ENTRIES)} entries written to {DATA_DIR}")


if __name__ == "__main__":
    main()
