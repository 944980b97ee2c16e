"""Finite algebras as dense operation tables over carriers {0..n-1}.

Tables are flat integer sequences in row-major order: the table of a k-ary
operation has n**k entries, indexed lexicographically by argument tuple.
Nullary operations are 1-entry tables. All values are immutable after
construction and safe to share across workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AlgebraError",
    "SignatureMismatch",
    "SizeMismatch",
    "ClosureError",
    "Signature",
    "FiniteAlgebra",
    "Mapping",
    "PropertyReport",
    "validate_algebra",
    "is_homomorphism",
    "compose",
    "is_retraction_respecting",
    "induced_subalgebra",
    "check_properties",
]


class AlgebraError(ValueError):
    """Malformed or mismatched algebraic data."""


class SignatureMismatch(AlgebraError):
    pass


class SizeMismatch(AlgebraError):
    pass


class ClosureError(AlgebraError):
    """A subset is not closed under some operation."""


@dataclass(frozen=True)
class Signature:
    """Ordered list of (name, arity) pairs shared by all algebras in a problem."""

    ops: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple((str(n), int(a)) for n, a in self.ops))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.ops)

    def arity(self, name: str) -> int:
        for n, a in self.ops:
            if n == name:
                return a
        raise AlgebraError(f"unknown operation {name!r}")

    @property
    def is_rich(self) -> bool:
        """At least one operation of arity >= 2, or at least two unary operations."""
        unary = sum(1 for _, a in self.ops if a == 1)
        return any(a >= 2 for _, a in self.ops) or unary >= 2


class FiniteAlgebra:
    """Operation tables over the carrier {0..n-1}.

    Equality is structural: same signature, size and tables. Labels are a
    presentation layer only and do not participate in equality. Construction
    does not validate; use :func:`validate_algebra` to get a report, so that
    deliberately broken tables can be represented and diagnosed.
    """

    __slots__ = ("signature", "size", "tables", "labels")

    def __init__(self, signature, size, tables, labels=None):
        if not isinstance(signature, Signature):
            signature = Signature(tuple(signature))
        self.signature = signature
        self.size = int(size)
        norm = {}
        for name, flat in tables.items():
            arr = np.array(flat, dtype=np.int64).reshape(-1)
            arr.setflags(write=False)
            norm[name] = arr
        self.tables = norm
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_function(cls, signature, size, funcs, labels=None):
        """Build dense tables from callables, one per operation name."""
        if not isinstance(signature, Signature):
            signature = Signature(tuple(signature))
        tables = {}
        for name, arity in signature.ops:
            fn = funcs[name]
            tables[name] = [fn(*t) for t in itertools.product(range(size), repeat=arity)]
        return cls(signature, size, tables, labels)

    def table(self, name: str) -> np.ndarray:
        return self.tables[name]

    def nd(self, name: str) -> np.ndarray:
        """Table reshaped to (n,)*arity; only meaningful on validated algebras."""
        return self.tables[name].reshape((self.size,) * self.signature.arity(name))

    def apply(self, name: str, *args: int) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return int(self.tables[name][idx])

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.size == other.size
            and self.tables.keys() == other.tables.keys()
            and all(np.array_equal(self.tables[k], other.tables[k]) for k in self.tables)
        )

    def __hash__(self):
        return hash(
            (self.signature, self.size, tuple(self.tables[k].tobytes() for k in sorted(self.tables)))
        )

    def __repr__(self):
        ops = ", ".join(f"{n}/{a}" for n, a in self.signature.ops)
        return f"FiniteAlgebra(size={self.size}, ops=[{ops}])"


@dataclass(frozen=True)
class Mapping:
    """Total function between two carriers; the unit of all homomorphism reasoning."""

    dom_size: int
    cod_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.dom_size < 1 or self.cod_size < 1:
            raise AlgebraError("mapping carrier sizes must be positive")
        if len(self.values) != self.dom_size:
            raise AlgebraError(
                f"mapping has {len(self.values)} values, expected {self.dom_size}"
            )
        if any(v < 0 or v >= self.cod_size for v in self.values):
            raise AlgebraError("mapping value out of range")

    def __call__(self, x: int) -> int:
        return self.values[x]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    @staticmethod
    def identity(n: int) -> "Mapping":
        return Mapping(n, n, tuple(range(n)))

    @staticmethod
    def constant(dom_size: int, cod_size: int, value: int) -> "Mapping":
        return Mapping(dom_size, cod_size, (value,) * dom_size)


def validate_algebra(alg: FiniteAlgebra) -> list[str]:
    """Report every violated invariant; an empty report means well-formed."""
    problems = []
    seen = set()
    for name, arity in alg.signature.ops:
        if name in seen:
            problems.append(f"duplicate operation name {name!r}")
        seen.add(name)
        if arity < 0:
            problems.append(f"operation {name!r} has negative arity")
    if alg.size < 1:
        problems.append(f"carrier size {alg.size} is not positive")
        return problems
    for name, arity in alg.signature.ops:
        if name not in alg.tables:
            problems.append(f"missing table for operation {name!r}")
            continue
        t = alg.tables[name]
        expected = alg.size**arity
        if t.size != expected:
            problems.append(
                f"table for {name!r} has {t.size} entries, expected {expected}"
            )
        if t.size and (t.min() < 0 or t.max() >= alg.size):
            problems.append(f"table for {name!r} has entries outside [0, {alg.size})")
    for name in alg.tables:
        if name not in alg.signature.names:
            problems.append(f"table for {name!r} not in signature")
    if alg.labels is not None:
        if len(alg.labels) != alg.size:
            problems.append(f"{len(alg.labels)} labels for {alg.size} elements")
        if len(set(alg.labels)) != len(alg.labels):
            problems.append("labels are not pairwise distinct")
    return problems


def _require_signatures(a: FiniteAlgebra, b: FiniteAlgebra):
    if a.signature != b.signature:
        raise SignatureMismatch(
            f"signatures differ: {a.signature.ops} vs {b.signature.ops}"
        )


def is_homomorphism(m: Mapping, a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    """True iff m(op_A(x...)) == op_B(m(x)...) for every operation and tuple."""
    _require_signatures(a, b)
    if m.dom_size != a.size or m.cod_size != b.size:
        raise SizeMismatch(
            f"mapping is {m.dom_size}->{m.cod_size}, algebras are {a.size}, {b.size}"
        )
    vals = np.asarray(m.values, dtype=np.int64)
    for name, arity in a.signature.ops:
        ta = a.nd(name)
        tb = b.nd(name)
        lhs = vals[ta]
        rhs = tb[np.ix_(*([vals] * arity))] if arity else tb
        if not np.array_equal(lhs, rhs):
            return False
    return True


def compose(outer: Mapping, inner: Mapping) -> Mapping:
    """Apply inner first, then outer."""
    if inner.cod_size != outer.dom_size:
        raise SizeMismatch(
            f"cannot compose {outer.dom_size}->{outer.cod_size} after "
            f"{inner.dom_size}->{inner.cod_size}"
        )
    return Mapping(
        inner.dom_size, outer.cod_size, tuple(outer.values[v] for v in inner.values)
    )


def is_retraction_respecting(r: Mapping, x: FiniteAlgebra, f: Mapping) -> bool:
    """True iff r is an idempotent endomorphism of x with f∘r = f."""
    if r.dom_size != x.size or r.cod_size != x.size:
        raise SizeMismatch(f"retraction is {r.dom_size}->{r.cod_size} on algebra of size {x.size}")
    if f.dom_size != x.size:
        raise SizeMismatch(f"f has domain {f.dom_size}, algebra has size {x.size}")
    if not is_homomorphism(r, x, x):
        return False
    if compose(r, r) != r:
        return False
    return compose(f, r) == f


def induced_subalgebra(a: FiniteAlgebra, subset) -> tuple[FiniteAlgebra, dict[int, int]]:
    """Restrict to a closed subset, re-indexed to 0..|subset|-1.

    Returns the restricted algebra and the old->new index mapping. Raises
    ClosureError naming the violating operation and tuple when the subset
    is not closed.
    """
    elems = sorted(set(int(e) for e in subset))
    if not elems:
        raise AlgebraError("subset is empty")
    if elems[0] < 0 or elems[-1] >= a.size:
        raise AlgebraError("subset element out of range")
    index = {old: new for new, old in enumerate(elems)}
    for name, arity in a.signature.ops:
        for tup in itertools.product(elems, repeat=arity):
            v = a.apply(name, *tup)
            if v not in index:
                raise ClosureError(f"not closed: {name}{tup} = {v} is outside the subset")
    tables = {}
    for name, arity in a.signature.ops:
        tables[name] = [
            index[a.apply(name, *tup)] for tup in itertools.product(elems, repeat=arity)
        ]
    labels = tuple(a.labels[e] for e in elems) if a.labels else None
    return FiniteAlgebra(a.signature, len(elems), tables, labels), index


@dataclass(frozen=True)
class PropertyReport:
    associative: bool
    commutative: bool
    idempotent: bool
    meet_semilattice: bool


def check_properties(a: FiniteAlgebra, name: str) -> PropertyReport:
    """Exhaustive equational flags for one binary operation."""
    if a.signature.arity(name) != 2:
        raise AlgebraError(f"operation {name!r} is not binary")
    t = a.nd(name)
    associative = bool(np.array_equal(t[t], t[:, t]))
    commutative = bool(np.array_equal(t, t.T))
    idempotent = bool(np.array_equal(np.diagonal(t), np.arange(a.size)))
    return PropertyReport(
        associative=associative,
        commutative=commutative,
        idempotent=idempotent,
        meet_semilattice=associative and commutative and idempotent,
    )
