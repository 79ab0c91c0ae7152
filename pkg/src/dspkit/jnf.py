"""Partitions, Jordan normal forms and their exact conjugacy-class invariants.

A Jordan normal form (JNF) of size n is a family of integer partitions, one
per eigenvalue slot, recording the Jordan block sizes attached to that
eigenvalue.  Slots are anonymous: two JNFs are equal when their multisets of
partitions agree.  Everything in this module is exact integer arithmetic on
immutable values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InvalidInputError

__all__ = [
    "Partition",
    "Jnf",
    "JnfTuple",
    "InvariantSummary",
    "Subordination",
    "z_of",
    "d_of",
    "r_of",
    "kappa_of",
    "invariant_summary",
    "dual_partition",
    "corresponding_diagonal",
    "power_rank",
    "is_subordinate",
]


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers (Jordan block sizes)."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        norm = tuple(sorted((int(p) for p in parts), reverse=True))
        if not norm:
            raise InvalidInputError("partition must have at least one part")
        if norm[-1] < 1:
            raise InvalidInputError(f"partition parts must be positive, got {norm}")
        object.__setattr__(self, "parts", norm)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def dual(self) -> "Partition":
        """Conjugate partition: dual()_k counts parts that are >= k."""
        return Partition(
            tuple(sum(1 for p in self.parts if p >= k) for k in range(1, self.parts[0] + 1))
        )

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


def dual_partition(partition: Partition) -> Partition:
    return partition.dual()


@dataclass(frozen=True)
class Jnf:
    """Jordan normal form: one partition per (anonymous) eigenvalue slot.

    Slots are stored in a canonical order (partitions sorted descending by
    their parts tuple) so structural equality means multiset equality.
    """

    slots: tuple[Partition, ...]

    def __init__(self, slots: Iterable[Iterable[int] | Partition]):
        norm = tuple(
            sorted(
                (s if isinstance(s, Partition) else Partition(s) for s in slots),
                key=lambda p: p.parts,
                reverse=True,
            )
        )
        if not norm:
            raise InvalidInputError("JNF must have at least one eigenvalue slot")
        object.__setattr__(self, "slots", norm)

    @property
    def size(self) -> int:
        return sum(s.total for s in self.slots)

    @property
    def num_slots(self) -> int:
        return len(self.slots)

    def multiplicities(self) -> tuple[int, ...]:
        """Eigenvalue multiplicities, one per slot in canonical order."""
        return tuple(s.total for s in self.slots)

    def is_diagonal(self) -> bool:
        return all(p == 1 for s in self.slots for p in s.parts)

    def __repr__(self) -> str:
        inner = ",".join(str(list(s.parts)) for s in self.slots)
        return f"Jnf[{inner}]"


@dataclass(frozen=True)
class JnfTuple:
    """Tuple of p+1 JNFs sharing one size n (the conjugacy-class prescriptions)."""

    entries: tuple[Jnf, ...]

    def __init__(self, entries: Iterable[Jnf | Iterable]):
        norm = tuple(e if isinstance(e, Jnf) else Jnf(e) for e in entries)
        if len(norm) < 2:
            raise InvalidInputError("a tuple needs at least two entries (p >= 1)")
        sizes = {e.size for e in norm}
        if len(sizes) != 1:
            raise InvalidInputError(f"all entries must share one size, got {sorted(sizes)}")
        object.__setattr__(self, "entries", norm)

    @property
    def n(self) -> int:
        return self.entries[0].size

    @property
    def p(self) -> int:
        return len(self.entries) - 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"JnfTuple(n={self.n}, {list(self.entries)})"


@lru_cache(maxsize=None)
def z_of(jnf: Jnf) -> int:
    """Centralizer dimension of a matrix with this JNF.

    Closed form: sum over slots of sum_i (2i-1)*b_i with b the decreasing
    block sizes (i 1-based).  For a diagonal JNF this is the sum of squared
    multiplicities.
    """
    return sum((2 * i - 1) * b for s in jnf.slots for i, b in enumerate(s.parts, start=1))


@lru_cache(maxsize=None)
def d_of(jnf: Jnf) -> int:
    """Conjugacy-class dimension n^2 - z; always even."""
    n = jnf.size
    d = n * n - z_of(jnf)
    assert d % 2 == 0, f"class dimension must be even, got {d} for {jnf}"
    return d


@lru_cache(maxsize=None)
def r_of(jnf: Jnf) -> int:
    """n minus the maximal number of Jordan blocks sharing one eigenvalue.

    Equals min over lambda of rank(Y - lambda*I) for Y with this JNF.
    """
    return jnf.size - max(s.num_parts for s in jnf.slots)


def kappa_of(tup: JnfTuple) -> int:
    """Index of rigidity 2n^2 - sum of class dimensions."""
    n = tup.n
    return 2 * n * n - sum(d_of(e) for e in tup.entries)


@dataclass(frozen=True)
class InvariantSummary:
    """Per-entry (r, d, z) plus the tuple's rigidity index."""

    r: tuple[int, ...]
    d: tuple[int, ...]
    z: tuple[int, ...]
    kappa: int


def invariant_summary(tup: JnfTuple) -> InvariantSummary:
    return InvariantSummary(
        r=tuple(r_of(e) for e in tup.entries),
        d=tuple(d_of(e) for e in tup.entries),
        z=tuple(z_of(e) for e in tup.entries),
        kappa=kappa_of(tup),
    )


def corresponding_diagonal(jnf: Jnf) -> Jnf:
    """Diagonal JNF with the same invariants, via dual partitions.

    Each slot's partition is replaced by fresh distinct eigenvalue slots
    whose multiplicities are the parts of the dual partition.
    """
    new_slots: list[Partition] = []
    for slot in jnf.slots:
        for mult in slot.dual().parts:
            new_slots.append(Partition((1,) * mult))
    return Jnf(new_slots)


def power_rank(partition: Partition, j: int, n: int) -> int:
    """rank((A - lambda*I)^j) for the eigenvalue carrying `partition`.

    The nilpotent part on the eigenvalue's generalized eigenspace contributes
    sum_i max(b_i - j, 0); the rest of the space contributes n minus the
    eigenvalue multiplicity.  Computed in closed form, never by matrix powers.
    """
    if j < 1:
        raise InvalidInputError("power must be >= 1")
    return sum(max(b - j, 0) for b in partition.parts) + (n - partition.total)


class Subordination(enum.Enum):
    """Three-valued closure-order comparison of eigenvalue-labelled JNFs."""

    SUBORDINATE = "subordinate"
    NOT_SUBORDINATE = "not_subordinate"
    NOT_COMPARABLE = "not_comparable"

    def __bool__(self) -> bool:
        return self is Subordination.SUBORDINATE


def is_subordinate(
    lower: Mapping[Hashable, Partition] | Sequence[tuple[Hashable, Partition]],
    upper: Mapping[Hashable, Partition] | Sequence[tuple[Hashable, Partition]],
) -> Subordination:
    """Whether the class `lower` lies in the closure of the class `upper`.

    Both arguments map eigenvalue labels (any hashable) to block partitions.
    True requires identical eigenvalue multisets (labels and multiplicities)
    and, for every shared eigenvalue and every power j,
    rank((upper - lambda)^j) >= rank((lower - lambda)^j).
    A multiplicity or label mismatch yields NOT_COMPARABLE, distinct from a
    rank failure.
    """
    lo = dict(lower.items() if isinstance(lower, Mapping) else lower)
    up = dict(upper.items() if isinstance(upper, Mapping) else upper)
    if set(lo) != set(up):
        return Subordination.NOT_COMPARABLE
    if any(lo[ev].total != up[ev].total for ev in lo):
        return Subordination.NOT_COMPARABLE
    n_lo = sum(p.total for p in lo.values())
    n_up = sum(p.total for p in up.values())
    if n_lo != n_up:
        return Subordination.NOT_COMPARABLE
    for ev in lo:
        max_j = max(lo[ev].parts[0], up[ev].parts[0])
        for j in range(1, max_j + 1):
            if power_rank(up[ev], j, n_up) < power_rank(lo[ev], j, n_lo):
                return Subordination.NOT_SUBORDINATE
    return Subordination.SUBORDINATE
