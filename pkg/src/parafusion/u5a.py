"""The nine-module fusion algebra extending the level-5 pair ring.

Pairs of level-5 irreducibles that are neutral for the diagonal current
grading (45 of the 225) fall into nine orbits of size five under the
current pair action; each orbit is one irreducible of the extension.
Products are computed componentwise in the pair ring and pushed through
the induction map, then checked against the golden tables, which ship
as reviewable JSON data.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .fusion import (
    IrrLabel,
    canonical_label,
    conformal_weight,
    fuse,
    simple_current,
    theta_dual,
)

Q = Fraction
LEVEL = 5


@dataclass(frozen=True, order=True)
class PairLabel:
    """Canonical pair of level-5 irreducibles."""

    left: IrrLabel
    right: IrrLabel

    def __post_init__(self):
        if self.left.k != LEVEL or self.right.k != LEVEL:
            raise ValueError("both components must live at level 5")

    def __repr__(self):
        return (
            f"[{self.left.i},{self.left.j};{self.right.i},{self.right.j}]"
        )


def pair(i1: int, j1: int, i2: int, j2: int) -> PairLabel:
    return PairLabel(
        canonical_label(i1, j1, LEVEL), canonical_label(i2, j2, LEVEL)
    )


def b_pairing(p: int, q: int, x: PairLabel) -> Fraction:
    """Monodromy pairing of the (p, q) current pair with x, in [0, 1)."""
    if not (0 <= p <= 4 and 0 <= q <= 4):
        raise ValueError(f"current exponents ({p},{q}) outside [0,4]")
    val = Q(
        p * (x.left.i - 2 * x.left.j) + q * (x.right.i - 2 * x.right.j), LEVEL
    )
    return val - val.__floor__()


def all_pairs() -> list[PairLabel]:
    from .fusion import all_labels

    labels = all_labels(LEVEL)
    return [PairLabel(a, b) for a in labels for b in labels]


def irr0_list() -> list[PairLabel]:
    """The 45 pairs neutral for every diagonal current (p, 2p)."""
    return [
        x
        for x in all_pairs()
        if all(b_pairing(p, (2 * p) % 5, x) == 0 for p in range(5))
    ]


def current_pair(j: int) -> PairLabel:
    """The j-th diagonal current pair (current^j, current^{2j})."""
    return PairLabel(
        simple_current(j % 5, LEVEL), simple_current((2 * j) % 5, LEVEL)
    )


def pair_fuse(x: PairLabel, y: PairLabel) -> dict[PairLabel, int]:
    """Componentwise product in the level-5 pair ring."""
    out: dict[PairLabel, int] = {}
    for l, ml in fuse(x.left, y.left):
        for r, mr in fuse(x.right, y.right):
            key = PairLabel(l, r)
            out[key] = out.get(key, 0) + ml * mr
    return out


def orbit_of(x: PairLabel) -> frozenset:
    """Size-5 orbit of x under the diagonal current pairs."""
    orbit = set()
    for j in range(5):
        prod = pair_fuse(current_pair(j), x)
        if len(prod) != 1 or set(prod.values()) != {1}:
            raise AssertionError(f"current action on {x} is not a permutation")
        orbit.add(next(iter(prod)))
    if len(orbit) != 5:
        raise AssertionError(f"orbit of {x} has size {len(orbit)}, expected 5")
    return frozenset(orbit)


def _load_golden(name: str, golden_dir: Optional[str] = None) -> dict:
    if golden_dir is not None:
        return json.loads((Path(golden_dir) / name).read_text())
    data = resources.files("parafusion").joinpath(f"golden/{name}")
    return json.loads(data.read_text())


def golden_rows(golden_dir: Optional[str] = None) -> tuple:
    payload = _load_golden("u5a_orbits.json", golden_dir)
    rows = []
    for row in payload["rows"]:
        rows.append(tuple(pair(*entry) for entry in row))
    if len(rows) != 9:
        raise ValueError(f"expected 9 golden rows, got {len(rows)}")
    return tuple(rows)


def golden_weight_table(golden_dir: Optional[str] = None) -> tuple:
    payload = _load_golden("u5a_weights.json", golden_dir)
    return tuple(
        (Q(w), int(d))
        for w, d in zip(payload["weights"], payload["dimensions"])
    )


def golden_fusion_table(golden_dir: Optional[str] = None) -> tuple:
    payload = _load_golden("u5a_fusion.json", golden_dir)
    return tuple(tuple(tuple(cell) for cell in row) for row in payload["table"])


def derive_orbits() -> list[frozenset]:
    """Partition of the computed neutral pairs into current orbits,
    derived with no reference to the golden rows."""
    remaining = set(irr0_list())
    orbits = []
    while remaining:
        x = min(remaining)
        orb = orbit_of(x)
        if not orb <= remaining:
            raise AssertionError("orbits do not partition the neutral set")
        remaining -= orb
        orbits.append(orb)
    return orbits


def induce(x: PairLabel, rows: Optional[tuple] = None) -> int:
    """Index of the unique golden row whose orbit contains x."""
    if rows is None:
        rows = golden_rows()
    orb = orbit_of(x)
    matches = [i for i, row in enumerate(rows) if frozenset(row) == orb]
    if len(matches) != 1:
        raise ValueError(f"{x} does not induce onto a unique row: {matches}")
    return matches[0]


def u_weight_dim(i: int, rows: Optional[tuple] = None) -> tuple[Fraction, int]:
    """Minimal summand weight of row i and the number of summands attaining it."""
    if rows is None:
        rows = golden_rows()
    if not (0 <= i <= 8):
        raise ValueError(f"index {i} outside [0,8]")
    weights = [
        conformal_weight(x.left) + conformal_weight(x.right) for x in rows[i]
    ]
    w = min(weights)
    return w, weights.count(w)


def u_fuse(
    i: int,
    j: int,
    rows: Optional[tuple] = None,
    reps: Optional[tuple[PairLabel, PairLabel]] = None,
) -> tuple[int, ...]:
    """Product row indices of rows i and j, via componentwise fusion of
    representatives followed by induction; asserted multiplicity-free."""
    if rows is None:
        rows = golden_rows()
    x, y = reps if reps is not None else (rows[i][0], rows[j][0])
    counts: dict[int, int] = {}
    for z, m in pair_fuse(x, y).items():
        idx = induce(z, rows)
        counts[idx] = counts.get(idx, 0) + m
    if any(m != 1 for m in counts.values()):
        raise AssertionError(f"fusion {i} x {j} is not multiplicity-free: {counts}")
    return tuple(sorted(counts))


def contragredient(i: int, rows: Optional[tuple] = None) -> int:
    """Row index of the componentwise dual of row i's representative."""
    if rows is None:
        rows = golden_rows()
    x = rows[i][0]
    dual_pair = PairLabel(theta_dual(x.left), theta_dual(x.right))
    return induce(dual_pair, rows)


@dataclass(frozen=True)
class InductionReport:
    passed: bool
    failures: tuple[tuple, ...]


def verify_induction_tables(
    golden_dir: Optional[str] = None, check_representatives: bool = True
) -> InductionReport:
    """Re-derive everything and diff against the golden tables.

    Covers: the 45-count, orbit partition vs golden rows, weight and
    dimension table, the full fusion table cell-for-cell, symmetry, and
    (optionally) independence from representative choice over all 25
    representative pairs per cell.
    """
    failures: list[tuple] = []
    rows = golden_rows(golden_dir)

    neutral = irr0_list()
    if len(neutral) != 45:
        failures.append(("irr0_count", len(neutral), 45))

    derived = {frozenset(o) for o in derive_orbits()}
    golden_sets = {frozenset(row) for row in rows}
    if derived != golden_sets:
        failures.append(
            ("orbit_partition", tuple(sorted(map(sorted, derived - golden_sets)))),
        )
    for idx, row in enumerate(rows):
        if len(frozenset(row)) != 5:
            failures.append(("row_distinctness", idx))

    weight_table = golden_weight_table(golden_dir)
    for i in range(9):
        got = u_weight_dim(i, rows)
        if got != weight_table[i]:
            failures.append(("weight_dim", i, got, weight_table[i]))

    fusion_table = golden_fusion_table(golden_dir)
    computed = {}
    for i in range(9):
        for j in range(9):
            got = u_fuse(i, j, rows)
            computed[(i, j)] = got
            if got != tuple(fusion_table[i][j]):
                failures.append(("fusion_cell", i, j, got, tuple(fusion_table[i][j])))
    for i in range(9):
        for j in range(9):
            if computed[(i, j)] != computed[(j, i)]:
                failures.append(("fusion_symmetry", i, j))

    if check_representatives:
        for i in range(9):
            for j in range(i, 9):
                expected = computed[(i, j)]
                for x in rows[i]:
                    for y in rows[j]:
                        got = u_fuse(i, j, rows, reps=(x, y))
                        if got != expected:
                            failures.append(
                                ("representative_dependence", i, j, x, y, got)
                            )
    return InductionReport(passed=not failures, failures=tuple(failures))
