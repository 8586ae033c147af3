"""Heisenberg Fock space over an evenly graded Frobenius model.

Basis slots are ordered ``(1, alpha_1, ..., alpha_k, x)``.  A key of a
:class:`FockState` is one partition per slot and stands for the creation
monomial ``prod_j a_{-lambda^j}(e_j) |0>``; all classes are even, so the
creation operators commute and the key determines the monomial.

Conventions:

* ``[a_m(u), a_n(v)] = -m * delta_{m,-n} * (u, v)``
* ``a_n(v) = (-1)**n * a_{-n}(v)^dagger`` for the adjoint under the pairing
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .exact_linalg import ExactMatrix, format_rational, parse_rational
from .partitions import EMPTY, Partition, multipartition_sort_key

Key = tuple  # tuple[Partition, ...] of length k + 2


class ModelMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class FrobeniusModel:
    """Even cohomology pairing: hyperbolic block on {1, x} plus a middle lattice with Gram ``gram``."""

    name: str
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        k = len(gram)
        if any(len(row) != k for row in gram):
            raise ValueError("middle Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(k) for j in range(i)):
            raise ValueError("middle Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    @property
    def k(self) -> int:
        return len(self.gram)

    @property
    def nslots(self) -> int:
        return self.k + 2

    @property
    def unit_slot(self) -> int:
        return 0

    @property
    def point_slot(self) -> int:
        return self.k + 1

    def mid_slots(self) -> range:
        return range(1, self.k + 1)

    def pair_slots(self, i: int, j: int) -> Fraction:
        k1 = self.k + 1
        if i == 0:
            return Fraction(int(j == k1))
        if j == 0:
            return Fraction(int(i == k1))
        if i == k1 or j == k1:
            return Fraction(0)
        return self.gram[i - 1][j - 1]

    def pairing_matrix(self) -> ExactMatrix:
        n = self.nslots
        return ExactMatrix([[self.pair_slots(i, j) for j in range(n)] for i in range(n)], n)

    def mid_gram_matrix(self) -> ExactMatrix:
        return ExactMatrix(self.gram, self.k)

    def basis_vector(self, slot: int) -> "ClassVector":
        coords = [0] * self.nslots
        coords[slot] = 1
        return ClassVector(self, coords)

    @property
    def unit(self) -> "ClassVector":
        return self.basis_vector(0)

    @property
    def point(self) -> "ClassVector":
        return self.basis_vector(self.k + 1)

    def alpha(self, i: int) -> "ClassVector":
        """The i-th lattice basis class, 1-based."""
        if not 1 <= i <= self.k:
            raise IndexError(f"alpha index {i} out of range 1..{self.k}")
        return self.basis_vector(i)

    def vector(self, coords: Sequence) -> "ClassVector":
        return ClassVector(self, coords)

    def empty_key(self) -> Key:
        return (EMPTY,) * self.nslots


class ClassVector:
    """Rational coordinates over the slots (1, alpha_1..alpha_k, x) of a model."""

    __slots__ = ("model", "coords")

    def __init__(self, model: FrobeniusModel, coords: Iterable):
        self.model = model
        self.coords = tuple(Fraction(c) for c in coords)
        if len(self.coords) != model.nslots:
            raise ValueError(f"class vector needs {model.nslots} coordinates, got {len(self.coords)}")

    def _check(self, other: "ClassVector") -> None:
        if other.model != self.model:
            raise ModelMismatchError("class vectors belong to different models")

    def __add__(self, other: "ClassVector") -> "ClassVector":
        self._check(other)
        return ClassVector(self.model, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ClassVector") -> "ClassVector":
        return self + (-other)

    def __neg__(self) -> "ClassVector":
        return ClassVector(self.model, (-a for a in self.coords))

    def __mul__(self, c) -> "ClassVector":
        c = Fraction(c)
        return ClassVector(self.model, (c * a for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassVector) and self.model == other.model and self.coords == other.coords

    def __hash__(self):
        return hash((self.model, self.coords))

    def __repr__(self) -> str:
        return f"ClassVector({self.model.name}, {[str(c) for c in self.coords]})"

    def pair(self, other: "ClassVector") -> Fraction:
        self._check(other)
        m = self.model
        return sum(
            (a * b * m.pair_slots(i, j)
             for i, a in enumerate(self.coords) if a
             for j, b in enumerate(other.coords) if b),
            Fraction(0),
        )

    def pair_slot(self, j: int) -> Fraction:
        m = self.model
        return sum((a * m.pair_slots(i, j) for i, a in enumerate(self.coords) if a), Fraction(0))


class FockState:
    """Finite linear combination of Heisenberg monomials.  Treated as immutable."""

    __slots__ = ("model", "_terms")

    def __init__(self, model: FrobeniusModel, terms: Mapping[Key, Fraction] | None = None):
        self.model = model
        clean: dict[Key, Fraction] = {}
        for key, c in (terms or {}).items():
            if len(key) != model.nslots:
                raise ValueError(f"key {key} does not have {model.nslots} slots")
            c = Fraction(c)
            if c:
                key = tuple(Partition(p) for p in key)
                clean[key] = clean.get(key, Fraction(0)) + c
        self._terms = {key: c for key, c in clean.items() if c}

    @classmethod
    def _raw(cls, model: FrobeniusModel, terms: dict) -> "FockState":
        # terms already canonical and zero-free
        obj = cls.__new__(cls)
        obj.model = model
        obj._terms = terms
        return obj

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self._terms.items())

    def keys(self):
        return self._terms.keys()

    def coefficient(self, key: Sequence) -> Fraction:
        return self._terms.get(tuple(Partition(p) for p in key), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "FockState") -> None:
        if other.model != self.model:
            raise ModelMismatchError("Fock states belong to different models")

    def __add__(self, other: "FockState") -> "FockState":
        self._check(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key, Fraction(0)) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return FockState._raw(self.model, out)

    def __neg__(self) -> "FockState":
        return FockState._raw(self.model, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "FockState") -> "FockState":
        return self + (-other)

    def __mul__(self, scalar) -> "FockState":
        scalar = Fraction(scalar)
        if not scalar:
            return FockState._raw(self.model, {})
        return FockState._raw(self.model, {k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return self.model == other.model and self._terms == other._terms

    def __hash__(self):
        return hash((self.model, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{[list(p) for p in k]}" for k, c in self.sorted_items()) or "0"
        return f"FockState({self.model.name}: {body})"

    def sorted_items(self) -> list[tuple[Key, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: multipartition_sort_key(kv[0]))

    def degrees(self) -> set[int]:
        return {sum(p.size for p in key) for key in self._terms}

    def degree(self) -> int:
        """Total size of a homogeneous state (0 for the zero state)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"state is not homogeneous: degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def to_json(self) -> dict:
        return {
            "model": self.model.name,
            "terms": [[[list(p) for p in key], format_rational(c)] for key, c in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, data: Mapping, model: FrobeniusModel) -> "FockState":
        if data.get("model") != model.name:
            raise ModelMismatchError(f"state is for model {data.get('model')!r}, not {model.name!r}")
        return cls(model, {tuple(Partition(p) for p in key): parse_rational(c) for key, c in data["terms"]})


def vacuum(model: FrobeniusModel) -> FockState:
    return FockState._raw(model, {model.empty_key(): Fraction(1)})


def zero(model: FrobeniusModel) -> FockState:
    return FockState._raw(model, {})


def _append_part(key: Key, slot: int, r: int) -> Key:
    p = key[slot]
    return key[:slot] + (Partition(p + (r,)),) + key[slot + 1:]


def create(state: FockState, r: int, v: ClassVector) -> FockState:
    """Apply the creation operator a_{-r}(v)."""
    if r <= 0:
        raise ValueError(f"creation index must be positive, got {r}")
    if v.model != state.model:
        raise ModelMismatchError("class vector and state belong to different models")
    out: dict[Key, Fraction] = {}
    for slot, a in enumerate(v.coords):
        if not a:
            continue
        for key, c in state._terms.items():
            nk = _append_part(key, slot, r)
            out[nk] = out.get(nk, Fraction(0)) + a * c
    return FockState._raw(state.model, {k: c for k, c in out.items() if c})


def annihilate(state: FockState, r: int, v: ClassVector) -> FockState:
    """Apply the annihilation operator a_r(v) by commuting it through each creation monomial."""
    if r <= 0:
        raise ValueError(f"annihilation index must be positive, got {r}")
    if v.model != state.model:
        raise ModelMismatchError("class vector and state belong to different models")
    weights = [v.pair_slot(j) for j in range(state.model.nslots)]
    out: dict[Key, Fraction] = {}
    for key, c in state._terms.items():
        for slot, part in enumerate(key):
            w = weights[slot]
            if not w:
                continue
            m = part.multiplicity(r)
            if not m:
                continue
            nk = key[:slot] + (part.remove_part(r),) + key[slot + 1:]
            out[nk] = out.get(nk, Fraction(0)) + (-r) * w * m * c
    return FockState._raw(state.model, {k: c for k, c in out.items() if c})


def _annihilate_slot(state: FockState, r: int, slot: int) -> FockState:
    return annihilate(state, r, state.model.basis_vector(slot))


@lru_cache(maxsize=1 << 16)
def _monomial_pairing(model: FrobeniusModel, left: Key, right: Key) -> Fraction:
    # <a_{-left}|0>, a_{-right}|0>> = vacuum coefficient of (a_{-left})^dagger a_{-right}|0>
    if sum(p.size for p in left) != sum(p.size for p in right):
        return Fraction(0)
    state = FockState._raw(model, {right: Fraction(1)})
    for slot, part in enumerate(left):
        for r in part:
            state = _annihilate_slot(state, r, slot)
            if not state:
                return Fraction(0)
            if r % 2:
                state = -state
    return state.coefficient(model.empty_key())


def pairing(a: FockState, b: FockState) -> Fraction:
    """Bilinear pairing <a, b> induced by the adjoint convention."""
    if a.model != b.model:
        raise ModelMismatchError("cannot pair states of different models")
    total = Fraction(0)
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            p = _monomial_pairing(a.model, ka, kb)
            if p:
                total += ca * cb * p
    return total


def vertical_unit(n: int) -> Callable[[FockState], FockState]:
    """The operator a_{-1}(1)**n / n!; the zero operator for n < 0."""

    def apply(state: FockState) -> FockState:
        if n < 0:
            return zero(state.model)
        one = state.model.unit
        for _ in range(n):
            state = create(state, 1, one)
        return state * Fraction(1, math.factorial(n))

    return apply


def degree_component(state: FockState, n: int) -> FockState:
    return FockState._raw(
        state.model, {k: c for k, c in state._terms.items() if sum(p.size for p in k) == n}
    )


def apply_creation_word(state: FockState, word: Iterable[tuple[int, ClassVector]]) -> FockState:
    """Apply creations left to right: the first pair acts first."""
    for r, v in word:
        state = create(state, r, v)
    return state


def apply_annihilation_word(state: FockState, word: Iterable[tuple[int, ClassVector]]) -> FockState:
    for r, v in word:
        state = annihilate(state, r, v)
    return state


def adjoint_creation_word(state: FockState, word: Sequence[tuple[int, ClassVector]]) -> FockState:
    """Apply the adjoint of the creation word: each a_{-r}(v) becomes (-1)**r a_r(v)."""
    sign = 1
    for r, v in word:
        state = annihilate(state, r, v)
        sign *= (-1) ** r
    return state * sign
