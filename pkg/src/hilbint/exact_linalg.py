"""Exact rational matrices and the symmetric-power Gram computations.

Determinants and solves run Bareiss fraction-free elimination on integer
matrices obtained by clearing row denominators; nothing here touches floats.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .partitions import Partition


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise TypeError(f"expected a 'num/den' string, got {text!r}")
    num, sep, den = text.strip().partition("/")
    if sep and not den:
        raise ValueError(f"malformed rational {text!r}")
    return Fraction(int(num), int(den) if sep else 1)


class ExactMatrix:
    """Dense rectangular matrix of reduced fractions.  Immutable."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("matrix rows must have equal length")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls([[0] * c for _ in range(r)], c)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"ExactMatrix({[[str(x) for x in row] for row in self._rows]})"

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self._rows), self.nrows) if self.nrows else ExactMatrix([], 0)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        return ExactMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self._rows],
            other.ncols,
        )

    def scale(self, c) -> "ExactMatrix":
        c = as_fraction(c)
        return ExactMatrix([[c * x for x in row] for row in self._rows], self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self._rows for x in row)

    def det(self) -> Fraction:
        return det(self)

    def inverse(self) -> "ExactMatrix":
        return inverse(self)

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[format_rational(x) for x in row] for row in self._rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExactMatrix":
        m = cls([[parse_rational(x) for x in row] for row in data["entries"]], data["cols"])
        if m.nrows != data["rows"]:
            raise ValueError("row count does not match entries")
        return m


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(
        [[x * y for x in ra for y in rb] for ra in a.rows() for rb in b.rows()],
        a.ncols * b.ncols,
    )


def _clear_denominators(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns (int rows, product of row scalings)."""
    out, scale = [], 1
    for row in rows:
        d = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * d) for x in row])
        scale *= d
    return out, scale


def _bareiss(a: list[list[int]], ncols_elim: int) -> tuple[list[list[int]], int, int]:
    """In-place Bareiss elimination on the first ncols_elim columns.

    Returns (matrix, sign from row swaps, rank).  Rows are swapped when a pivot
    vanishes; if a column has no nonzero pivot the elimination stops there.
    """
    n = len(a)
    sign, prev = 1, 1
    rank = 0
    for k in range(min(n, ncols_elim)):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return a, sign, rank
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        rank += 1
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, len(row_i)):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return a, sign, rank


def det(m: ExactMatrix) -> Fraction:
    """Exact determinant via fraction-free elimination."""
    if not m.is_square():
        raise ValueError(f"determinant of non-square {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    a, scale = _clear_denominators(m.rows())
    a, sign, rank = _bareiss(a, n)
    if rank < n:
        return Fraction(0)
    return Fraction(sign * a[n - 1][n - 1], scale)


class SingularMatrixError(ArithmeticError):
    pass


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Solve a @ x = b exactly for square nonsingular a."""
    if not a.is_square() or a.nrows != b.nrows:
        raise ValueError(f"cannot solve {a.shape} against {b.shape}")
    n = a.nrows
    if n == 0:
        return ExactMatrix([], b.ncols)
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows(), b.rows())]
    ints, _ = _clear_denominators(aug)
    ints, _, rank = _bareiss(ints, n)
    if rank < n:
        raise SingularMatrixError("matrix is singular")
    x: list[list[Fraction]] = [[Fraction(0)] * b.ncols for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = ints[i]
        for c in range(b.ncols):
            acc = Fraction(row[n + c])
            for j in range(i + 1, n):
                if row[j]:
                    acc -= row[j] * x[j][c]
            x[i][c] = acc / row[i]
    return ExactMatrix(x, b.ncols)


def inverse(m: ExactMatrix) -> ExactMatrix:
    return solve(m, ExactMatrix.identity(m.nrows))


def monomial_indices(k: int, n: int) -> list[tuple[int, ...]]:
    """Nondecreasing index tuples (0-based) labelling the monomial basis of S^n(V)."""
    return list(itertools.combinations_with_replacement(range(k), n))


def sym_power_gram(g: ExactMatrix, n: int) -> ExactMatrix:
    """Gram matrix of the monomial basis of S^n(V) under the permutation-sum pairing."""
    if not g.is_symmetric():
        raise ValueError("bilinear form must be symmetric")
    basis = monomial_indices(g.nrows, n)
    perms = list(itertools.permutations(range(n)))
    rows = []
    for left in basis:
        row = []
        for right in basis:
            total = Fraction(0)
            for sigma in perms:
                term = Fraction(1)
                for a in range(n):
                    term *= g[left[a], right[sigma[a]]]
                    if not term:
                        break
                total += term
            row.append(total)
        rows.append(row)
    return ExactMatrix(rows, len(basis))


def random_symmetric_forms(k: int, count: int, seed: int = 0, bound: int = 3) -> list[ExactMatrix]:
    """Seeded random symmetric integer k x k matrices with distinct nonzero determinants."""
    rng = random.Random(seed)
    forms: list[ExactMatrix] = []
    seen: set[Fraction] = set()
    attempts = 0
    while len(forms) < count:
        attempts += 1
        if attempts > 10_000:
            raise RuntimeError("could not draw enough forms with distinct determinants")
        entries = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                entries[i][j] = entries[j][i] = rng.randint(-bound, bound)
        g = ExactMatrix(entries, k)
        d = det(g)
        if d == 0 or d in seen:
            continue
        seen.add(d)
        forms.append(g)
    return forms


def verify_sympower_det(k: int, n: int, samples: Sequence[ExactMatrix] | int = 3, seed: int = 0):
    """Observe det(M_n) / det(G)**C(n+k-1, k) over several forms G.

    ``samples`` is either a list of symmetric integer forms or a count of
    seeded random forms to draw.  Forms with det G = 0 are discarded.
    Returns (common ratio or None, whether the ratio was constant).
    """
    if isinstance(samples, int):
        samples = random_symmetric_forms(k, samples, seed=seed)
    exponent = math.comb(n + k - 1, k)
    ratios = []
    for g in samples:
        dg = det(g)
        if dg == 0:
            continue
        ratios.append(det(sym_power_gram(g, n)) / dg**exponent)
    if len(ratios) < 2:
        raise ValueError("need at least two forms with nonzero determinant")
    constant = all(r == ratios[0] for r in ratios)
    return (ratios[0] if constant else None), constant


def _mu_factors(mu: Partition) -> list[tuple[int, int]]:
    """(r, m_r) pairs for the distinct parts of mu, largest part first."""
    return sorted(Partition(mu).multiplicities().items(), reverse=True)


def mu_gram(g: ExactMatrix, mu: Partition) -> ExactMatrix:
    """Gram of S^mu V, the tensor product over r of S^{m_r}(V[r]).

    V[r] carries the form (-1)**(r-1) * r * G.  Tensor factors are ordered by
    decreasing part value, so the basis is the Kronecker product basis.
    """
    if not g.is_symmetric():
        raise ValueError("bilinear form must be symmetric")
    result = ExactMatrix([[1]], 1)
    for r, m in _mu_factors(mu):
        result = kron(result, sym_power_gram(g.scale((-1) ** (r - 1) * r), m))
    return result


def iden_exponent(mu: Partition, k: int) -> int:
    """Exponent d(mu, k) with det(mu_gram) = c * det(G)**d, from det(A (x) B) = det A**dim B * det B**dim A."""
    factors = _mu_factors(mu)
    dims = [math.comb(m + k - 1, m) for _, m in factors]
    total = 0
    for idx, (_, m) in enumerate(factors):
        others = math.prod(d for j, d in enumerate(dims) if j != idx)
        total += math.comb(m + k - 1, k) * others
    return total


def verify_iden(g_or_k, mu: Partition, samples: int = 3, seed: int = 0):
    """Check det(mu_gram(G, mu)) = c * det(G)**d with c independent of G.

    The first argument is either a single form G (whose rank fixes k and which
    is included among the samples) or the rank k itself.  Returns
    (c, d, passed).
    """
    if isinstance(g_or_k, ExactMatrix):
        k = g_or_k.nrows
        forms = [g_or_k] + random_symmetric_forms(k, samples, seed=seed)
    else:
        k = int(g_or_k)
        forms = random_symmetric_forms(k, samples, seed=seed)
    d = iden_exponent(mu, k)
    ratios = []
    for g in forms:
        dg = det(g)
        if dg == 0:
            continue
        ratios.append(det(mu_gram(g, mu)) / dg**d)
    ok = len(ratios) >= 2 and all(r == ratios[0] for r in ratios) and d >= 0
    return ratios[0], d, ok


def comb_identity(n: int, k: int) -> bool:
    """The two binomial sums that both count C(n+k-1, k)."""
    if n < 0 or k < 2:
        raise ValueError("need n >= 0 and k >= 2")
    first = sum(math.comb(n - m + k - 2, k - 1) for m in range(n + 1))
    second = sum(m * math.comb(n - m + k - 2, k - 2) for m in range(n + 1))
    return first == second == math.comb(n + k - 1, k)
