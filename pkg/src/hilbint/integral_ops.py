"""Integral operators m_{lam, v}, the classes [L^lam v], and lattice bases.

``m_operator(lam, v, .)`` is the monomial symmetric function m_lam with every
power sum p_r replaced by the creation operator a_{-r}(v).  On top of it sit
the Pieri, splitting and negation identities, the tuple classes spanning the
middle lattice, the full integral basis, the Chern class expansion of the
tautological bundle, and the sector / blow-up decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact_linalg import ExactMatrix, det, format_rational, solve
from .fock import (
    ClassVector,
    FockState,
    FrobeniusModel,
    annihilate,
    create,
    pairing,
    vacuum,
    zero,
)
from .partitions import (
    EMPTY,
    Partition,
    add_part,
    enumerate_multipartitions,
    enumerate_partitions,
    multipartition_sort_key,
    sub_multisets,
    z_of,
)
from .symfunc import IntegralityError, forgotten, m_to_p_matrix


class DecompositionError(ValueError):
    pass


def _power_sum_word(state: FockState, mu: Partition, v: ClassVector) -> FockState:
    for r in mu:
        state = create(state, r, v)
    return state


def m_operator(lam, v: ClassVector, state: FockState) -> FockState:
    """Apply m_{lam, v} = sum_mu d_mu a_{-mu}(v), where m_lam = sum_mu d_mu p_mu."""
    lam = Partition(lam)
    if not lam:
        return state
    out = zero(state.model)
    for mu, d in m_to_p_matrix(lam.size).row(lam).items():
        out = out + _power_sum_word(state, mu, v) * d
    return out


def m_adjoint(lam, v: ClassVector, state: FockState) -> FockState:
    """Apply the adjoint of m_{lam, v}: each a_{-r}(v) becomes (-1)**r a_r(v)."""
    lam = Partition(lam)
    if not lam:
        return state
    out = zero(state.model)
    for mu, d in m_to_p_matrix(lam.size).row(lam).items():
        s = state
        for r in mu:
            s = annihilate(s, r, v)
        out = out + s * (d * (-1) ** mu.size)
    return out


@dataclass(frozen=True)
class LClass:
    """The class [L^lam v] = m_{lam, v}|0> together with what produced it."""

    lam: Partition
    v: ClassVector
    value: FockState


def l_class(lam, v: ClassVector) -> LClass:
    lam = Partition(lam)
    return LClass(lam, v, m_operator(lam, v, vacuum(v.model)))


def verify_pieri(lam, i: int, v: ClassVector) -> bool:
    """a_{-i}(v)[L^lam v] == sum over add_part(lam, i) of a * [L^mu v]."""
    lhs = create(l_class(lam, v).value, i, v)
    rhs = zero(v.model)
    for mu, a in add_part(Partition(lam), i):
        rhs = rhs + l_class(mu, v).value * a
    return lhs == rhs


def split_expansion(lam, v1: ClassVector, v2: ClassVector) -> FockState:
    """Sum over ordered pairs (lam1, lam2) with lam1 u lam2 = lam of m_{lam1,v1} m_{lam2,v2}|0>."""
    out = zero(v1.model)
    for lam1, lam2 in sub_multisets(Partition(lam)):
        out = out + m_operator(lam1, v1, m_operator(lam2, v2, vacuum(v1.model)))
    return out


def verify_split(lam, v1: ClassVector, v2: ClassVector) -> bool:
    return l_class(lam, v1 + v2).value == split_expansion(lam, v1, v2)


def negate_class(lam, v: ClassVector) -> dict[Partition, int]:
    """Integer coefficients c_mu with [L^lam(-v)] = sum_mu c_mu [L^mu v].

    c_mu is (-1)**|lam| times the coefficient of m_mu in the forgotten function
    f_lam.  The expansion is checked against a direct evaluation of [L^lam(-v)].
    """
    lam = Partition(lam)
    sign = (-1) ** lam.size
    f = forgotten(lam)
    coeffs = {mu: sign * int(c) for mu, c in f.coeffs.items()}
    direct = l_class(lam, -v).value
    via_basis = zero(v.model)
    for mu, c in coeffs.items():
        via_basis = via_basis + l_class(mu, v).value * c
    if direct != via_basis:
        raise IntegralityError(f"negation expansion of [L^{list(lam)}] does not reproduce the direct value")
    return coeffs


def _lattice_vectors(model: FrobeniusModel, basis: Sequence[ClassVector] | None) -> list[ClassVector]:
    if basis is None:
        return [model.alpha(i) for i in range(1, model.k + 1)]
    return list(basis)


def tuple_class(nus: Sequence, model: FrobeniusModel, basis: Sequence[ClassVector] | None = None) -> FockState:
    """m_{nu^1, alpha_1} ... m_{nu^k, alpha_k}|0>; ``basis`` overrides the lattice basis."""
    vectors = _lattice_vectors(model, basis)
    if len(nus) != len(vectors):
        raise ValueError(f"expected {len(vectors)} partitions, got {len(nus)}")
    state = vacuum(model)
    for nu, a in zip(reversed(list(nus)), reversed(vectors)):
        state = m_operator(nu, a, state)
    return state


def gram_matrix(states: Sequence[FockState]) -> ExactMatrix:
    n = len(states)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = pairing(states[i], states[j])
    return ExactMatrix(rows, n)


def mid_labels(n: int, model: FrobeniusModel) -> list[tuple[Partition, ...]]:
    return enumerate_multipartitions(model.k, n) if model.k else ([()] if n == 0 else [])


def mid_basis(n: int, model: FrobeniusModel, basis: Sequence[ClassVector] | None = None) -> list[FockState]:
    return [tuple_class(nus, model, basis) for nus in mid_labels(n, model)]


def mid_gram(n: int, model: FrobeniusModel) -> ExactMatrix:
    """Intersection matrix of the tuple classes of total size n."""
    return gram_matrix(mid_basis(n, model))


def mid_gram_det(n: int, model: FrobeniusModel) -> Fraction:
    return det(mid_gram(n, model))


@dataclass(frozen=True)
class BasisLabel:
    lam: Partition
    mu: Partition
    nus: tuple[Partition, ...]

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu), "nus": [list(p) for p in self.nus]}

    @classmethod
    def from_json(cls, data: dict) -> "BasisLabel":
        return cls(Partition(data["lambda"]), Partition(data["mu"]), tuple(Partition(p) for p in data["nus"]))


def _creation_unit_point(lam: Partition, mu: Partition, state: FockState) -> FockState:
    m = state.model
    state = _power_sum_word(state, mu, m.point)
    state = _power_sum_word(state, lam, m.unit)
    return state * Fraction(1, z_of(lam))


def basis_class(label: BasisLabel, model: FrobeniusModel) -> FockState:
    """(1/z_lam) a_{-lam}(1) a_{-mu}(x) m_{nu^1,alpha_1} ... |0>."""
    return _creation_unit_point(label.lam, label.mu, tuple_class(label.nus, model))


@dataclass
class BasisManifest:
    n: int
    model: FrobeniusModel
    labels: list[BasisLabel]
    classes: dict[BasisLabel, FockState]
    gram_det: Fraction | None = None

    def states(self) -> list[FockState]:
        return [self.classes[label] for label in self.labels]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "model": self.model.name,
            "labels": [label.to_json() for label in self.labels],
            "gram_det": None if self.gram_det is None else format_rational(self.gram_det),
        }


def full_labels(n: int, model: FrobeniusModel) -> list[BasisLabel]:
    return [
        BasisLabel(t[0], t[1], tuple(t[2:]))
        for t in enumerate_multipartitions(model.k + 2, n)
    ]


def full_basis(n: int, model: FrobeniusModel, with_det: bool = False) -> BasisManifest:
    labels = full_labels(n, model)
    classes = {label: basis_class(label, model) for label in labels}
    manifest = BasisManifest(n, model, labels, classes)
    if with_det:
        manifest.gram_det = det(gram_matrix(manifest.states()))
    return manifest


def full_gram(n: int, model: FrobeniusModel) -> ExactMatrix:
    return gram_matrix(full_basis(n, model).states())


def full_gram_det(n: int, model: FrobeniusModel) -> Fraction:
    return det(full_gram(n, model))


def chern_expansion(n: int, i: int, model: FrobeniusModel | None = None) -> tuple[FockState, list[int]]:
    """c_i of the tautological bundle O^[n] and its coordinates in the unit-sector basis.

    The coordinates are against {(1/z_lam) a_{-lam}(1)|0> : lam |- n} in
    canonical partition order.
    """
    if i < 0:
        raise ValueError("Chern degree must be nonnegative")
    if model is None:
        model = FrobeniusModel("point", ())
    one = model.unit
    state = zero(model)
    for nu in enumerate_partitions(n):
        if nu.length == n - i:
            state = state + _power_sum_word(vacuum(model), nu, one) * Fraction((-1) ** i, z_of(nu))
    coords = []
    for lam in enumerate_partitions(n):
        key = (lam,) + (EMPTY,) * (model.nslots - 1)
        c = state.coefficient(key) * z_of(lam)
        if c.denominator != 1:
            raise IntegralityError(f"Chern coordinate at {list(lam)} is {c}")
        coords.append(int(c))
    return state, coords


# -- sector decomposition ---------------------------------------------------

def _is_middle_only(state: FockState) -> bool:
    m = state.model
    return all(not key[0] and not key[m.point_slot] for key in state.keys())


def _unit_point_labels(n0: int) -> list[tuple[Partition, Partition]]:
    return [(t[0], t[1]) for t in enumerate_multipartitions(2, n0)]


def sector_decompose(state: FockState) -> dict[tuple[Partition, Partition], FockState]:
    """Components A_{lam,mu} with state = sum (1/z_lam) a_{-lam}(1) a_{-mu}(x) A_{lam,mu}.

    Each component involves only middle classes.  Strata are peeled off by
    decreasing |lam| + |mu| using the adjoint of (1/z_mu) a_{-mu}(1) a_{-lam}(x),
    which returns (-1)**(|lam|-l(lam)+|mu|-l(mu)) * A_{lam,mu} on the top stratum.
    """
    degrees = state.degrees()
    if len(degrees) > 1:
        raise DecompositionError(f"state is not homogeneous: degrees {sorted(degrees)}")
    n = degrees.pop() if degrees else 0
    model = state.model
    one, x = model.unit, model.point
    remaining = state
    components: dict[tuple[Partition, Partition], FockState] = {}
    for n0 in range(n, -1, -1):
        if remaining.is_zero():
            break
        stratum = {}
        for lam, mu in _unit_point_labels(n0):
            s = remaining
            for r in lam:
                s = annihilate(s, r, x)
            for r in mu:
                s = annihilate(s, r, one)
            if s.is_zero():
                continue
            # adjoint signs (-1)**r per annihilator, 1/z_mu, then undo the extraction sign
            s = s * Fraction((-1) ** (lam.size + mu.size), z_of(mu))
            s = s * (-1) ** (lam.size - lam.length + mu.size - mu.length)
            if not _is_middle_only(s):
                raise DecompositionError("extracted component still involves 1 or x")
            stratum[(lam, mu)] = s
        for (lam, mu), comp in stratum.items():
            remaining = remaining - _creation_unit_point(lam, mu, comp)
        components.update(stratum)
    if not remaining.is_zero():
        raise DecompositionError("sector decomposition left a nonzero remainder")
    return dict(sorted(components.items(), key=lambda kv: multipartition_sort_key(kv[0])))


def sector_recompose(components: dict, model: FrobeniusModel) -> FockState:
    out = zero(model)
    for (lam, mu), comp in components.items():
        out = out + _creation_unit_point(Partition(lam), Partition(mu), comp)
    return out


# -- blow-up decomposition --------------------------------------------------

def exceptional_check(model: FrobeniusModel, slot: int) -> None:
    """Require the 1-based middle slot to have self-pairing -1 and be orthogonal to the rest."""
    if not 1 <= slot <= model.k:
        raise DecompositionError(f"exceptional slot {slot} out of range 1..{model.k}")
    g = model.gram
    if g[slot - 1][slot - 1] != -1:
        raise DecompositionError(f"exceptional slot {slot} has self-pairing {g[slot - 1][slot - 1]}, not -1")
    if any(g[slot - 1][j] for j in range(model.k) if j != slot - 1):
        raise DecompositionError(f"exceptional slot {slot} is not orthogonal to the other middle classes")


@lru_cache(maxsize=None)
def _e_gram(model: FrobeniusModel, slot: int, n0: int) -> ExactMatrix:
    e = model.alpha(slot)
    return gram_matrix([l_class(rho, e).value for rho in enumerate_partitions(n0)])


def _e_degree(state: FockState, slot: int) -> int:
    return max((key[slot].size for key in state.keys()), default=0)


def e_decompose(state: FockState, slot: int) -> dict[Partition, FockState]:
    """Components B_nu (free of the E slot) with state = sum_nu m_{nu,E}(B_nu)."""
    model = state.model
    e = model.alpha(slot)
    remaining = state
    components: dict[Partition, FockState] = {}
    for n0 in range(_e_degree(state, slot), -1, -1):
        if remaining.is_zero():
            break
        rhos = enumerate_partitions(n0)
        projections = [m_adjoint(rho, e, remaining) for rho in rhos]
        # sum_nu (m_rho E|0>, m_nu E|0>) B_nu = m_rho^dagger(state)
        keys = sorted({k for p in projections for k in p.keys()}, key=multipartition_sort_key)
        if not keys:
            continue
        rhs = ExactMatrix([[p.coefficient(k) for k in keys] for p in projections], len(keys))
        sol = solve(_e_gram(model, slot, n0), rhs)
        for nu, row in zip(rhos, sol.rows()):
            comp = FockState(model, {k: c for k, c in zip(keys, row) if c})
            if comp.is_zero():
                continue
            if any(key[slot] for key in comp.keys()):
                raise DecompositionError("E-component still involves the exceptional class")
            components[nu] = comp
            remaining = remaining - m_operator(nu, e, comp)
    if not remaining.is_zero():
        raise DecompositionError("blow-up decomposition left a nonzero remainder")
    return components


def blowup_decompose(state: FockState, slot: int) -> dict[tuple[Partition, Partition, Partition], FockState]:
    """Components A~_{lam,mu,nu} with
    state = sum (1/z_lam) a_{-lam}(1) a_{-mu}(x) m_{nu,E}(A~_{lam,mu,nu}).

    ``slot`` is the 1-based middle slot of the exceptional class E.
    """
    exceptional_check(state.model, slot)
    out = {}
    for (lam, mu), comp in sector_decompose(state).items():
        for nu, sub in e_decompose(comp, slot).items():
            out[(lam, mu, nu)] = sub
    return dict(sorted(out.items(), key=lambda kv: multipartition_sort_key(kv[0])))


def blowup_recompose(components: dict, model: FrobeniusModel, slot: int) -> FockState:
    e = model.alpha(slot)
    out = zero(model)
    for (lam, mu, nu), comp in components.items():
        out = out + _creation_unit_point(Partition(lam), Partition(mu), m_operator(nu, e, comp))
    return out


# -- lattice coordinates ----------------------------------------------------

def coordinates(state: FockState, basis: Sequence[FockState]) -> list[Fraction]:
    """Coordinates of state in a linearly independent family spanning it (exact solve)."""
    keys = sorted({k for b in basis for k in b.keys()} | set(state.keys()), key=multipartition_sort_key)
    if len(keys) < len(basis):
        raise ValueError("basis states are linearly dependent")
    # full column rank makes the normal equations square and nonsingular
    a = ExactMatrix([[b.coefficient(k) for b in basis] for k in keys], len(basis))
    rhs = ExactMatrix([[state.coefficient(k)] for k in keys], 1)
    at = a.T
    sol = solve(at @ a, at @ rhs)
    coords = [row[0] for row in sol.rows()]
    check = zero(state.model)
    for c, b in zip(coords, basis):
        check = check + b * c
    if check != state:
        raise ValueError("state is not in the span of the given basis")
    return coords


@lru_cache(maxsize=None)
def _mid_transition(model: FrobeniusModel, m: int, basis: tuple | None):
    """Inverse of the matrix expressing mid tuple classes of degree m in creation monomials."""
    labels = mid_labels(m, model)
    states = mid_basis(m, model, list(basis) if basis is not None else None)
    keys = sorted({k for s in states for k in s.keys()}, key=multipartition_sort_key)
    if len(keys) != len(states):
        raise ValueError("tuple classes do not form a basis of the middle sector")
    a = ExactMatrix([[s.coefficient(k) for s in states] for k in keys], len(states))
    return labels, keys, a


def mid_coordinates(state: FockState, basis: Sequence[ClassVector] | None = None) -> dict[tuple, Fraction]:
    """Coordinates of a middle-only homogeneous state in the tuple-class basis."""
    model = state.model
    if state.is_zero():
        return {}
    m = state.degree()
    labels, keys, a = _mid_transition(model, m, tuple(basis) if basis is not None else None)
    key_index = {k: i for i, k in enumerate(keys)}
    extra = set(state.keys()) - set(key_index)
    if extra:
        raise ValueError("state is not in the middle sector")
    rhs = ExactMatrix([[state.coefficient(k)] for k in keys], 1)
    sol = solve(a, rhs)
    return {label: row[0] for label, row in zip(labels, sol.rows()) if row[0]}


def full_coordinates(state: FockState) -> dict[BasisLabel, Fraction]:
    """Coordinates of a homogeneous state in the full integral basis of its degree."""
    out = {}
    for (lam, mu), comp in sector_decompose(state).items():
        for nus, c in mid_coordinates(comp).items():
            out[BasisLabel(lam, mu, tuple(nus))] = c
    return out
