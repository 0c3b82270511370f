"""Parafermion fusion ring at level k, with exact rational weights.

Irreducibles are labelled by pairs (i, j) with 0 <= i <= k and j mod k,
subject to the identification (i, j) ~ (k-i, j-i).  The canonical
representative has 0 <= j < i <= k; the identity is (k, 0).  The
equivalent "tilde" labelling (i, l) with l = i - 2j mod 2k makes the
mod-k grading of the fusion product visible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator


class LevelMismatchError(ValueError):
    """Operands live at different levels k."""


@dataclass(frozen=True, order=True)
class IrrLabel:
    """Canonical label (i, j) of an irreducible at level k."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"level must be >= 2, got {self.k}")
        if not (0 <= self.j < self.i <= self.k):
            raise ValueError(
                f"({self.i},{self.j}) is not canonical at level {self.k}; "
                "use canonical_label()"
            )

    def __repr__(self):
        return f"M[{self.i},{self.j}]"


@dataclass(frozen=True)
class TildeLabel:
    """Grading-adapted label (i, l), l = i - 2j mod 2k; i and l share parity."""

    i: int
    l: int
    k: int

    def __post_init__(self):
        if not (0 <= self.i <= self.k):
            raise ValueError(f"i={self.i} outside [0,{self.k}]")
        if not (0 <= self.l < 2 * self.k):
            raise ValueError(f"l={self.l} not reduced mod {2 * self.k}")
        if (self.i - self.l) % 2 != 0:
            raise ValueError(f"i={self.i} and l={self.l} must have equal parity")


@dataclass(frozen=True)
class FusionVector:
    """Finitely supported multiplicity vector over hashable labels."""

    terms: tuple[tuple[object, int], ...]

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[object, int]]) -> "FusionVector":
        acc: dict = {}
        for label, mult in pairs:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                acc[label] = acc.get(label, 0) + mult
        return FusionVector(tuple(sorted(acc.items(), key=lambda t: repr(t[0]))))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def labels(self) -> tuple:
        return tuple(label for label, _ in self.terms)

    def __getitem__(self, label) -> int:
        return self.as_dict().get(label, 0)

    def __iter__(self) -> Iterator[tuple[object, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "FusionVector") -> "FusionVector":
        return FusionVector.from_pairs(self.terms + other.terms)

    def total(self) -> int:
        return sum(m for _, m in self.terms)


def canonical_label(i: int, j: int, k: int) -> IrrLabel:
    """Reduce (i, j) to canonical form: 0 <= j < i <= k, identity (k, 0)."""
    if k < 2:
        raise ValueError(f"level must be >= 2, got {k}")
    if not (0 <= i <= k):
        raise ValueError(f"i={i} outside [0,{k}]")
    j %= k
    if j >= i:
        i, j = k - i, j - i
    return IrrLabel(i, j, k)


def all_labels(k: int) -> list[IrrLabel]:
    """All k(k+1)/2 canonical labels at level k, sorted."""
    return sorted(IrrLabel(i, j, k) for i in range(1, k + 1) for j in range(i))


def to_tilde(label: IrrLabel) -> TildeLabel:
    return TildeLabel(label.i, (label.i - 2 * label.j) % (2 * label.k), label.k)


def from_tilde(t: TildeLabel) -> IrrLabel:
    # Solve 2j = i - l mod 2k, i.e. j = (i - l)/2 mod k.
    j = ((t.i - t.l) // 2) % t.k
    return canonical_label(t.i, j, t.k)


def _same_level(a: IrrLabel, b: IrrLabel) -> int:
    if a.k != b.k:
        raise LevelMismatchError(f"levels differ: {a.k} vs {b.k}")
    return a.k


def fuse(a: IrrLabel, b: IrrLabel) -> FusionVector:
    """Fusion product of two irreducibles as a multiplicity vector.

    The output ranges over r with |i1-i2| <= r <= min(i1+i2, 2k-i1-i2)
    and r = i1+i2 mod 2; the second index of each term is
    (2j1-i1+2j2-i2+r)/2 mod k.
    """
    k = _same_level(a, b)
    s = 2 * a.j - a.i + 2 * b.j - b.i
    lo = abs(a.i - b.i)
    hi = min(a.i + b.i, 2 * k - a.i - b.i)
    pairs = []
    for r in range(lo, hi + 1):
        if (a.i + b.i + r) % 2 == 0:
            pairs.append((canonical_label(r, (s + r) // 2, k), 1))
    return FusionVector.from_pairs(pairs)


def fuse_vectors(va: FusionVector, vb: FusionVector) -> FusionVector:
    """Bilinear extension of fuse to multiplicity vectors."""
    pairs = []
    for x, mx in va:
        for y, my in vb:
            for z, mz in fuse(x, y):
                pairs.append((z, mx * my * mz))
    return FusionVector.from_pairs(pairs)


def simple_current(p: int, k: int) -> IrrLabel:
    """The invertible label (k, p); fusing with it sends (i, j) to (i, j+p)."""
    return canonical_label(k, p, k)


def theta_dual(label: IrrLabel) -> IrrLabel:
    """Pullback along the charge-conjugation automorphism: (i, j) -> (i, i-j)."""
    if label.k < 3:
        raise ValueError("charge conjugation needs level >= 3")
    return canonical_label(label.i, label.i - label.j, label.k)


def conformal_weight(label: IrrLabel) -> Fraction:
    """Lowest conformal weight of the irreducible, as an exact rational.

    The closed form is valid for any presentation with 0 <= j <= i <= k;
    the canonical presentation always qualifies, and whenever the
    alternate presentation (k-i, j-i mod k) also qualifies the two
    values are computed and checked to agree.
    """
    k = label.k

    def weight_from(i: int, j: int) -> Fraction:
        m = i - 2 * j
        num = k * m - m * m + 2 * k * (i - j + 1) * j
        return Fraction(num, 2 * k * (k + 2))

    h = weight_from(label.i, label.j)
    alt_i, alt_j = k - label.i, (label.j - label.i) % k
    if 0 <= alt_j <= alt_i <= k:
        h_alt = weight_from(alt_i, alt_j)
        if h_alt != h:
            raise AssertionError(
                f"weight disagrees between presentations of {label}: {h} vs {h_alt}"
            )
    if h < 0:
        raise AssertionError(f"negative weight for {label}")
    return h


def is_sigma_type(label: IrrLabel) -> bool:
    """True iff the label is (2j, j) for some 0 <= j <= floor(k/2)."""
    k = label.k
    return any(
        label == canonical_label(2 * j, j, k) for j in range(k // 2 + 1)
    )


def sigma_type_index(label: IrrLabel) -> int:
    """The j with label = canonical (2j, j); raises if not sigma-type."""
    for j in range(label.k // 2 + 1):
        if label == canonical_label(2 * j, j, label.k):
            return j
    raise ValueError(f"{label} is not sigma-type")


@dataclass(frozen=True)
class GradingReport:
    k: int
    passed: bool
    violations: tuple[tuple, ...]


def verify_zk_grading(
    k: int, fuse_fn: Callable[[IrrLabel, IrrLabel], FusionVector] = fuse
) -> GradingReport:
    """Check the additive mod-k grading l_out = l1 + l2 of the fusion product.

    Also confirms the label identification (i, l) ~ (k-i, k+l) preserves
    l mod k, so the grading is well defined on canonical classes.
    ``fuse_fn`` is injectable so that mutation tests can break it.
    """
    violations = []
    labels = all_labels(k)
    for x in labels:
        # Both presentations of x must carry the same grade mod k.
        l_canon = to_tilde(x).l
        alt = (k - x.i, (x.j - x.i) % k)
        l_alt = (alt[0] - 2 * alt[1]) % (2 * k)
        if (l_canon - l_alt) % k != 0:
            violations.append((x, "presentation", l_canon, l_alt))
    for a in labels:
        la = to_tilde(a).l
        for b in labels:
            lb = to_tilde(b).l
            for c, _ in fuse_fn(a, b):
                lc = to_tilde(c).l
                if (lc - la - lb) % k != 0:
                    violations.append((a, b, c, lc % k, (la + lb) % k))
    return GradingReport(k=k, passed=not violations, violations=tuple(violations))


def minimal_model_weight(m: int, r: int, s: int) -> Fraction:
    """Conformal weight h_{r,s} in the m-th unitary Virasoro minimal model."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not (1 <= r <= m + 1):
        raise ValueError(f"r={r} outside [1,{m + 1}]")
    if not (1 <= s <= m + 2):
        raise ValueError(f"s={s} outside [1,{m + 2}]")
    return Fraction((r * (m + 3) - s * (m + 2)) ** 2 - 1, 4 * (m + 2) * (m + 3))


@dataclass(frozen=True)
class WeightOneReport:
    k: int
    passed: bool
    sums: tuple[tuple[int, Fraction], ...]


def verify_weight_one_tops(k: int) -> WeightOneReport:
    """Check h^p_{1,3} + sum_{m=p+1}^{k-1} h^m_{3,3} + h(M[2,1]) = 1 for all p.

    The branching sum telescopes to k/(k+2) and the sigma-type weight
    h(M[2,1]) = 2/(k+2) tops it up to exactly 1.
    """
    if k < 3:
        raise ValueError("needs level >= 3")
    h21 = conformal_weight(canonical_label(2, 1, k))
    sums = []
    for p in range(1, k):
        total = minimal_model_weight(p, 1, 3)
        for m in range(p + 1, k):
            total += minimal_model_weight(m, 3, 3)
        sums.append((p, total + h21))
    return WeightOneReport(
        k=k, passed=all(s == 1 for _, s in sums), sums=tuple(sums)
    )


def twisted_conformal_weight(p: int) -> Fraction:
    """Lowest weight (p-1)(p+1)/(24p) of the order-p twisted sector; never an integer."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd integer >= 3")
    total = sum(i * (p - i) for i in range(1, p)) * Fraction(1, 4 * p * p)
    closed = Fraction((p - 1) * (p + 1), 24 * p)
    if total != closed:
        raise AssertionError(f"weight sum {total} != closed form {closed}")
    if total.denominator == 1:
        raise AssertionError(f"twisted weight {total} unexpectedly integral")
    return total


def untwisted_coset_weight(j: int, p: int) -> Fraction:
    """Weight j(p-j)/p of the j-th untwisted coset block."""
    if not (0 <= j <= p - 1):
        raise ValueError(f"j={j} outside [0,{p - 1}]")
    return Fraction(j * (p - j), p)
