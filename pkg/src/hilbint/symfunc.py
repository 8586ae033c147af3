"""Degree-n symmetric functions in the power-sum, monomial and forgotten bases.

Power sums are the working basis: the Hall pairing is diagonal there, and
every operator built later substitutes p_r -> creation operator.  The
monomial and forgotten bases are reached through transition matrices that
are computed once per degree.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from .exact_linalg import ExactMatrix, det, format_rational, inverse, parse_rational
from .partitions import (
    Partition,
    add_part,
    enumerate_partitions,
    partition_rank,
    z_of,
)

BASES = ("P", "M", "F")

CACHE_ENV = "HILBINT_CACHE_DIR"


@dataclass(frozen=True)
class SymFunc:
    """A homogeneous symmetric function: sparse partition -> rational map in one basis."""

    degree: int
    basis: str
    coeffs: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        clean = {}
        for lam, c in self.coeffs.items():
            lam = Partition(lam)
            if lam.size != self.degree:
                raise ValueError(f"{lam} has size {lam.size}, expected {self.degree}")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, Fraction(0)) + c
        clean = {lam: c for lam, c in sorted(clean.items(), key=lambda t: partition_rank(t[0])) if c}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis_element(cls, basis: str, lam) -> "SymFunc":
        lam = Partition(lam)
        return cls(lam.size, basis, {lam: Fraction(1)})

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if self.degree != other.degree:
            raise ValueError("cannot add symmetric functions of different degrees")
        other = other.to_basis(self.basis)
        merged = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            merged[lam] = merged.get(lam, Fraction(0)) + c
        return SymFunc(self.degree, self.basis, merged)

    def __neg__(self) -> "SymFunc":
        return self * -1

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def __mul__(self, scalar) -> "SymFunc":
        scalar = Fraction(scalar)
        return SymFunc(self.degree, self.basis, {lam: scalar * c for lam, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return self.to_basis("P").coeffs == other.to_basis("P").coeffs

    def __hash__(self):
        return hash((self.degree, tuple(self.to_basis("P").coeffs.items())))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def to_basis(self, basis: str) -> "SymFunc":
        if basis == self.basis:
            return self
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        p = _to_p(self)
        if basis == "P":
            return p
        if basis == "M":
            return _p_to(p, "M")
        # F-coordinates of g are the M-coordinates of omega(g)
        return SymFunc(self.degree, "F", _p_to(omega(p), "M").coeffs)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": [[list(lam), format_rational(c)] for lam, c in self.coeffs.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymFunc":
        return cls(
            int(data["degree"]),
            data["basis"],
            {Partition(lam): parse_rational(c) for lam, c in data["terms"]},
        )


@dataclass(frozen=True)
class TransitionMatrix:
    """Row lam of ``matrix`` expresses the lam-th source basis element in the target basis."""

    degree: int
    direction: str  # "P->M" or "M->P"
    matrix: ExactMatrix

    @property
    def index(self) -> list[Partition]:
        return enumerate_partitions(self.degree)

    def row(self, lam: Partition) -> dict[Partition, Fraction]:
        idx = self.index
        r = self.matrix.rows()[partition_rank(Partition(lam))]
        return {mu: c for mu, c in zip(idx, r) if c}


def _cache_file(n: int) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"p_to_m_{n}.json"


def _build_p_to_m(n: int) -> ExactMatrix:
    index = enumerate_partitions(n)
    rows = []
    for lam in index:
        # p_lam = p_{lam_1} p_{lam_2} ... applied to m_empty = 1
        expansion = {Partition(): 1}
        for part in lam:
            nxt: dict[Partition, int] = {}
            for nu, c in expansion.items():
                for mu, a in add_part(nu, part):
                    nxt[mu] = nxt.get(mu, 0) + a * c
            expansion = nxt
        rows.append([expansion.get(mu, 0) for mu in index])
    return ExactMatrix(rows, len(index))


@lru_cache(maxsize=None)
def p_to_m_matrix(n: int) -> TransitionMatrix:
    """Power sums in terms of monomials; integer entries, built from the Pieri rule."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    path = _cache_file(n)
    if path is not None and path.exists():
        m = ExactMatrix.from_json(json.loads(path.read_text()))
    else:
        m = _build_p_to_m(n)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            # write then rename so a concurrent reader never sees a partial file
            tmp = path.with_suffix(f".{os.getpid()}.tmp")
            tmp.write_text(json.dumps(m.to_json()))
            os.replace(tmp, path)
    return TransitionMatrix(n, "P->M", m)


@lru_cache(maxsize=None)
def m_to_p_matrix(n: int) -> TransitionMatrix:
    """Monomials in terms of power sums: the exact inverse of p_to_m_matrix(n)."""
    return TransitionMatrix(n, "M->P", inverse(p_to_m_matrix(n).matrix))


def _to_p(f: SymFunc) -> SymFunc:
    if f.basis == "P":
        return f
    if f.basis == "F":
        return omega(_to_p(SymFunc(f.degree, "M", f.coeffs)))
    trans = m_to_p_matrix(f.degree)
    out: dict[Partition, Fraction] = {}
    for lam, c in f.coeffs.items():
        for mu, d in trans.row(lam).items():
            out[mu] = out.get(mu, Fraction(0)) + c * d
    return SymFunc(f.degree, "P", out)


def _p_to(f: SymFunc, basis: str) -> SymFunc:
    trans = p_to_m_matrix(f.degree)
    out: dict[Partition, Fraction] = {}
    for lam, c in f.coeffs.items():
        for mu, d in trans.row(lam).items():
            out[mu] = out.get(mu, Fraction(0)) + c * d
    return SymFunc(f.degree, basis, out)


def power_sum(lam) -> SymFunc:
    return SymFunc.basis_element("P", lam)


def monomial(lam) -> SymFunc:
    return SymFunc.basis_element("M", lam)


def omega(f: SymFunc) -> SymFunc:
    """The involution p_mu -> (-1)**(|mu| - l(mu)) p_mu; input must be in the P basis."""
    if f.basis != "P":
        raise ValueError("omega expects a symmetric function in the P basis")
    return SymFunc(
        f.degree,
        "P",
        {mu: (-1) ** (mu.size - mu.length) * c for mu, c in f.coeffs.items()},
    )


class IntegralityError(ArithmeticError):
    """An expansion that must be integral came out with a denominator."""


def forgotten(lam) -> SymFunc:
    """Forgotten symmetric function f_lam = omega(m_lam), in the M basis."""
    lam = Partition(lam)
    f = _p_to(omega(_to_p(monomial(lam))), "M")
    if not f.is_integral():
        raise IntegralityError(f"forgotten function f_{list(lam)} has non-integer coefficients")
    return f


def hall_pairing(f: SymFunc, g: SymFunc) -> Fraction:
    """Bilinear form with (p_lam, p_mu) = delta * z_lam."""
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    fp, gp = _to_p(f).coeffs, _to_p(g).coeffs
    return sum((c * gp[lam] * z_of(lam) for lam, c in fp.items() if lam in gp), Fraction(0))


@lru_cache(maxsize=None)
def monomial_gram(n: int) -> ExactMatrix:
    """Hall-pairing Gram matrix of {m_lam : lam |- n} in canonical order."""
    trans = m_to_p_matrix(n).matrix
    z = [z_of(lam) for lam in enumerate_partitions(n)]
    rows = trans.rows()
    return ExactMatrix(
        [[sum((a * b * zz for a, b, zz in zip(ri, rj, z)), Fraction(0)) for rj in rows] for ri in rows],
        len(rows),
    )


def monomial_gram_det(n: int) -> int:
    d = det(monomial_gram(n))
    if d.denominator != 1:
        raise IntegralityError(f"monomial Gram determinant {d} is not an integer")
    return int(d)


def verify_detTn(n: int) -> bool:
    """det(P->M)**2 equals the product of z_lam over lam |- n, up to sign."""
    d = det(p_to_m_matrix(n).matrix)
    z_prod = math.prod(z_of(lam) for lam in enumerate_partitions(n))
    return abs(d * d) == z_prod
