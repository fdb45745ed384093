"""Bit strings under cyclic translation: orbits, periods, cyclic units, classes.

Conventions
-----------
A configuration of ``N`` qubits is an integer whose binary expansion, written
MSB-first with exactly ``N`` digits, lists sites ``1..N`` left to right.  So the
string ``"100"`` is the integer 4 and has its excitation on site 1.

One translation step is a cyclic right rotation of that string: the value on
site ``i`` moves to site ``i + 1`` and site ``N`` wraps to site 1
(``"100" -> "010"``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SizeError

MIN_SITES = 2
MAX_SITES = 24

__all__ = [
    "BitConfig",
    "CyclicOrbit",
    "SloccClass",
    "translate",
    "rotate_bits",
    "orbit_of",
    "period_of_string",
    "canonical_bits",
    "enumerate_orbits",
    "partition_classes",
    "orbits_to_json",
]


def _check_n(n_sites: int) -> None:
    if not MIN_SITES <= n_sites <= MAX_SITES:
        raise SizeError(
            f"n_sites must lie in [{MIN_SITES}, {MAX_SITES}], got {n_sites}",
            module="necklace",
        )


@dataclass(frozen=True, order=True)
class BitConfig:
    """An ``n_sites``-qubit computational basis string stored as an integer."""

    n_sites: int
    bits: int

    def __post_init__(self):
        _check_n(self.n_sites)
        if not 0 <= self.bits < (1 << self.n_sites):
            raise ValueError(f"bits={self.bits} does not fit in {self.n_sites} sites")

    @classmethod
    def from_string(cls, s: str) -> "BitConfig":
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {s!r}")
        return cls(len(s), int(s, 2))

    def __str__(self) -> str:
        return format(self.bits, f"0{self.n_sites}b")

    def complement(self) -> "BitConfig":
        return BitConfig(self.n_sites, self.bits ^ ((1 << self.n_sites) - 1))

    def weight(self) -> int:
        return self.bits.bit_count()


def rotate_bits(bits, n_sites: int, steps: int):
    """Right-rotate ``bits`` (int or integer ndarray) by ``steps`` within ``n_sites`` bits."""
    steps %= n_sites
    if steps == 0:
        return bits
    mask = (1 << n_sites) - 1
    return ((bits >> steps) | (bits << (n_sites - steps))) & mask


def translate(s: BitConfig, steps: int = 1) -> BitConfig:
    """Apply the translation ``steps`` times; negative ``steps`` translate backwards."""
    return BitConfig(s.n_sites, rotate_bits(s.bits, s.n_sites, steps))


def _period_bits(bits: int, n_sites: int) -> int:
    # only divisors of N can be periods
    for k in range(1, n_sites + 1):
        if n_sites % k == 0 and rotate_bits(bits, n_sites, k) == bits:
            return k
    raise AssertionError("unreachable: rotation by N is the identity")


def period_of_string(s: BitConfig) -> int:
    """Smallest ``j >= 1`` with ``translate(s, j) == s``."""
    return _period_bits(s.bits, s.n_sites)


def canonical_bits(bits: int, n_sites: int) -> int:
    """Smallest integer among the rotations of ``bits``."""
    return min(rotate_bits(bits, n_sites, j) for j in range(n_sites))


@dataclass(frozen=True)
class CyclicOrbit:
    """Translation orbit of a string, identified by its canonical cyclic unit.

    ``members[j]`` is the representative translated ``j`` times.  Members are
    derived on demand so that enumerating every orbit at large ``N`` stays cheap.
    """

    n_sites: int
    representative: BitConfig
    period: int

    @property
    def members(self) -> list[BitConfig]:
        return [translate(self.representative, j) for j in range(self.period)]

    @property
    def member_bits(self) -> np.ndarray:
        r = self.representative.bits
        return np.array(
            [rotate_bits(r, self.n_sites, j) for j in range(self.period)], dtype=np.int64
        )

    @property
    def unit(self) -> str:
        return str(self.representative)

    def to_json(self) -> dict:
        return {
            "repr": self.unit,
            "period": self.period,
            "members": [str(m) for m in self.members],
        }


def orbit_of(s: BitConfig) -> CyclicOrbit:
    rep = canonical_bits(s.bits, s.n_sites)
    return CyclicOrbit(s.n_sites, BitConfig(s.n_sites, rep), _period_bits(rep, s.n_sites))


@lru_cache(maxsize=8)
def _orbit_table(n_sites: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical representatives and their periods, ascending, for all ``2**N`` strings."""
    dtype = np.uint32
    allbits = np.arange(1 << n_sites, dtype=dtype)
    canon = allbits.copy()
    period = np.zeros(allbits.size, dtype=np.int8)
    for j in range(1, n_sites + 1):
        rot = rotate_bits(allbits, n_sites, j)
        np.minimum(canon, rot, out=canon)
        first_return = (period == 0) & (rot == allbits)
        period[first_return] = j
    is_rep = canon == allbits
    reps = allbits[is_rep].astype(np.int64)
    periods = period[is_rep].astype(np.int64)
    reps.flags.writeable = False
    periods.flags.writeable = False
    return reps, periods


def enumerate_orbits(n_sites: int) -> list[CyclicOrbit]:
    """All translation orbits of ``n_sites``-bit strings, ordered by representative."""
    _check_n(n_sites)
    reps, periods = _orbit_table(n_sites)
    return [
        CyclicOrbit(n_sites, BitConfig(n_sites, int(r)), int(k))
        for r, k in zip(reps, periods)
    ]


@dataclass(frozen=True)
class SloccClass:
    """Orbits related by rotation and/or global complement of every bit."""

    n_sites: int
    orbit_reps: frozenset[int]
    label: str

    @property
    def units(self) -> list[str]:
        return [format(r, f"0{self.n_sites}b") for r in sorted(self.orbit_reps)]


def partition_classes(n_sites: int) -> list[SloccClass]:
    """Group orbits into classes generated by rotation and global bit complement.

    Labels are ``C1, C2, ...`` in order of each class's smallest representative.
    Reflection is deliberately not a generator: reordering parties is not local.
    """
    _check_n(n_sites)
    reps, _ = _orbit_table(n_sites)
    mask = (1 << n_sites) - 1
    seen: set[int] = set()
    groups: list[frozenset[int]] = []
    for r in reps.tolist():
        if r in seen:
            continue
        partner = canonical_bits(r ^ mask, n_sites)
        group = frozenset({r, partner})
        seen |= group
        groups.append(group)
    groups.sort(key=min)
    return [SloccClass(n_sites, g, f"C{i + 1}") for i, g in enumerate(groups)]


def orbits_to_json(n_sites: int, orbits: list[CyclicOrbit] | None = None) -> dict:
    if orbits is None:
        orbits = enumerate_orbits(n_sites)
    return {"n": n_sites, "orbits": [o.to_json() for o in orbits]}
