"""Exact linear algebra over the ring Z/nZ.

The workhorse is :func:`howell_rows`, which brings a list of integer rows to
Howell normal form.  Unlike plain row echelon form, the Howell form also keeps
the "annihilator" multiples of each pivot row, so that for every ``j`` the rows
whose first ``j`` entries vanish span *exactly* the vectors of the row span
whose first ``j`` entries vanish.  That property is what makes kernel
computation and the unknown/parameter split of :mod:`godeaux.solver` work when
the modulus is not prime (``n = 4``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterable, Sequence


class ModulusMismatch(ValueError):
    """Raised when residues or matrices with different moduli are combined."""


class DimensionMismatch(ValueError):
    """Raised when a right-hand side does not fit the matrix shape."""


class EmptySolutionSet(ValueError):
    """Raised when enumerating a solution set that has no elements."""


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"Z/{self.modulus} vs Z/{other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return Residue(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return Residue(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        return Residue(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._other(other)
        return Residue(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class ZModMatrix:
    """Row-major matrix with entries reduced modulo ``modulus``."""

    entries: tuple[tuple[int, ...], ...]
    modulus: int
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], modulus: int, cols: int | None = None):
        rows = [tuple(int(x) % modulus for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix without rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(tuple(rows), modulus, cols)

    @classmethod
    def zero(cls, rows: int, cols: int, modulus: int):
        return cls.from_rows([[0] * cols for _ in range(rows)], modulus, cols)

    @classmethod
    def identity(cls, k: int, modulus: int):
        return cls.from_rows([[int(i == j) for j in range(k)] for i in range(k)], modulus, k)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def row_residues(self, i: int) -> list[Residue]:
        return [Residue(x, self.modulus) for x in self.entries[i]]

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """Return ``m . x`` reduced modulo n."""
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.cols} columns")
        n = self.modulus
        return tuple(sum(a * b for a, b in zip(r, x)) % n for r in self.entries)


@dataclass(frozen=True)
class AffineSolutionSet:
    """The coset ``offset + span(basis)`` inside ``(Z/n)^k``.

    ``basis`` is itself in Howell form, so two equal solution sets always have
    equal ``basis`` and ``offset`` fields.
    """

    basis: tuple[tuple[int, ...], ...]
    offset: tuple[int, ...]
    empty: bool
    modulus: int
    size_k: int

    def size(self) -> int:
        if self.empty:
            return 0
        n = self.modulus
        total = 1
        for row in self.basis:
            total *= n // _pivot_of(row)[1]
        return total

    def contains(self, x: Sequence[int]) -> bool:
        if self.empty:
            return False
        diff = [(a - b) % self.modulus for a, b in zip(x, self.offset)]
        return _in_span(self.basis, diff, self.modulus)


# -- Howell form ------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _unit_normalizer(a: int, n: int) -> int:
    """A unit ``w`` of Z/n with ``a*w = gcd(a, n)`` (mod n)."""
    g = gcd(a, n)
    for w in range(1, n):
        if gcd(w, n) == 1 and (a * w) % n == g % n:
            return w
    raise ArithmeticError("no unit normalizer")  # pragma: no cover - impossible


def _pivot_of(row: Sequence[int]) -> tuple[int, int]:
    for j, x in enumerate(row):
        if x:
            return j, x
    return -1, 0


def howell_rows(rows: Iterable[Sequence[int]], n: int, cols: int) -> list[list[int]]:
    """Howell normal form of the Z/n-module spanned by ``rows``.

    Rows of the result have strictly increasing pivot columns, each pivot is a
    divisor of ``n``, entries above a pivot are reduced into ``[0, pivot)``, and
    the annihilator multiple of each row is contained in the span of the rows
    below it.  The result is unique for a given row span.
    """
    work = [[x % n for x in r] for r in rows]
    work = [r for r in work if any(r)]
    out: list[list[int]] = []
    for c in range(cols):
        cand = [r for r in work if r[c]]
        rest = [r for r in work if not r[c]]
        if not cand:
            continue
        piv = cand[0]
        others = []
        for r in cand[1:]:
            g, s, t = _xgcd(piv[c], r[c])
            u, v = piv[c] // g, r[c] // g
            new_piv = [(s * a + t * b) % n for a, b in zip(piv, r)]
            new_r = [(-v * a + u * b) % n for a, b in zip(piv, r)]
            piv = new_piv
            if any(new_r):
                others.append(new_r)
        # others now have zero in column c
        rest.extend(others)
        if not piv[c]:
            # the combination degenerated (pivot entry was a zero divisor product)
            if any(piv):
                rest.append(piv)
            work = rest
            continue
        w = _unit_normalizer(piv[c], n)
        piv = [(x * w) % n for x in piv]
        p = piv[c]
        ann = [(x * (n // p)) % n for x in piv]
        if any(ann):
            rest.append(ann)
        for prev in out:
            q = prev[c] // p
            if q:
                for j in range(c, cols):
                    prev[j] = (prev[j] - q * piv[j]) % n
        out.append(piv)
        work = [r for r in rest if any(r)]
    return out


def _reduce_against(basis: Sequence[Sequence[int]], x: Sequence[int], n: int) -> list[int]:
    x = [v % n for v in x]
    for row in basis:
        c, p = _pivot_of(row)
        q = x[c] // p
        if q:
            x = [(a - q * b) % n for a, b in zip(x, row)]
    return x


def _in_span(basis: Sequence[Sequence[int]], x: Sequence[int], n: int) -> bool:
    return not any(_reduce_against(basis, x, n))


def canonical_form(m: ZModMatrix) -> ZModMatrix:
    """Howell normal form of ``m``; equal row spans give equal results."""
    rows = howell_rows(m.entries, m.modulus, m.cols)
    return ZModMatrix.from_rows(rows, m.modulus, m.cols)


def row_span_contains(m: ZModMatrix, x: Sequence[int]) -> bool:
    return _in_span(howell_rows(m.entries, m.modulus, m.cols), x, m.modulus)


def solve_affine(m: ZModMatrix, rhs: Sequence[int]) -> AffineSolutionSet:
    """All ``x`` with ``m . x = rhs`` over Z/n, as an offset plus a subgroup.

    Works on the transposed system: the rows ``(column_j of m, e_j, 0)`` and
    ``(-rhs, 0, 1)`` span the pairs ``(m.y - t*rhs, y, t)``.  Howell form with
    the ``m`` block first isolates the vectors with ``m.y = t*rhs``; a pivot 1
    in the ``t`` column gives a particular solution, the rows below it give the
    homogeneous solutions.
    """
    n, k, r = m.modulus, m.cols, m.rows
    if len(rhs) != r:
        raise DimensionMismatch(f"rhs of length {len(rhs)} for {r} rows")
    rows = []
    for j in range(k):
        rows.append([m.entries[i][j] for i in range(r)] + [0] + [int(j == l) for l in range(k)])
    rows.append([(-b) % n for b in rhs] + [1] + [0] * k)
    h = howell_rows(rows, n, r + 1 + k)
    tail = [row for row in h if not any(row[:r])]
    offset = None
    basis = []
    for row in tail:
        if row[r]:
            if row[r] == 1:
                offset = row[r + 1:]
        else:
            basis.append(row[r + 1:])
    basis = howell_rows(basis, n, k)
    if offset is None:
        return AffineSolutionSet((), (0,) * k, True, n, k)
    offset = _reduce_against(basis, offset, n)
    return AffineSolutionSet(tuple(tuple(b) for b in basis), tuple(offset), False, n, k)


def span_elements(basis: Sequence[Sequence[int]], n: int, k: int) -> list[tuple[int, ...]]:
    """Every element of the subgroup spanned by a Howell basis."""
    ranges = [range(n // _pivot_of(b)[1]) for b in basis]
    out = []
    for coeffs in product(*ranges):
        v = [0] * k
        for c, b in zip(coeffs, basis):
            if c:
                for j in range(k):
                    v[j] += c * b[j]
        out.append(tuple(x % n for x in v))
    return out


def enumerate_solutions(s: AffineSolutionSet) -> list[tuple[int, ...]]:
    """Every solution exactly once, in lexicographic order."""
    if s.empty:
        raise EmptySolutionSet("the system has no solutions")
    n = s.modulus
    pts = {tuple((a + b) % n for a, b in zip(s.offset, v)) for v in span_elements(s.basis, n, s.size_k)}
    return sorted(pts)
