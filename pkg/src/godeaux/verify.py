"""Exact check that an automorphism preserves the defining relations on a stratum.

The check does not use the coefficient action.  It picks an integral point
of the stratum, applies the monomial matrix to every relation as a
polynomial over ``Z[xi]`` and tests that the image is a multiple of the
original relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .config import CaseConfig, ParamRelation
from .groups import GroupElement, embed
from .strata import Stratum


@dataclass(frozen=True)
class Cyclotomic:
    """An element of ``Z[x] / Phi_n(x)`` for prime ``n`` or ``n = 4``, stored on the power basis."""

    n: int
    coeffs: tuple[int, ...]

    @staticmethod
    def degree(n: int) -> int:
        return {3: 2, 4: 2, 5: 4}[n]

    @classmethod
    def from_int(cls, n: int, k: int) -> "Cyclotomic":
        return cls(n, (k,) + (0,) * (cls.degree(n) - 1))

    @classmethod
    def root_power(cls, n: int, e: int) -> "Cyclotomic":
        vec = [0] * n
        vec[e % n] = 1
        return cls(n, _reduce(n, vec))

    def __add__(self, other):
        return Cyclotomic(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return Cyclotomic(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        prod = [0] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return Cyclotomic(self.n, _reduce(self.n, prod))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _reduce(n: int, vec: list[int]) -> tuple[int, ...]:
    """Reduce modulo ``x^n - 1`` and then modulo ``Phi_n``."""
    folded = [0] * n
    for i, c in enumerate(vec):
        folded[i % n] += c
    d = Cyclotomic.degree(n)
    if n == 4:
        # x^2 = -1, x^3 = -x
        return (folded[0] - folded[2], folded[1] - folded[3])
    # prime n: x^(n-1) = -(1 + x + ... + x^(n-2))
    top = folded[n - 1]
    return tuple(folded[i] - top for i in range(d))


def sample_point(stratum: Stratum, rng: random.Random, bound: int = 50) -> dict[str, Cyclotomic]:
    n = stratum.nu
    base = {s: Cyclotomic.from_int(n, rng.randint(1, bound)) for s in stratum.mod_pars}
    roots = stratum.root_of()
    out = {}
    for s in stratum.mod_pars:
        if s in stratum.vanished:
            out[s] = Cyclotomic.from_int(n, 0)
        else:
            r, o = roots[s]
            out[s] = base[r] * Cyclotomic.root_power(n, o)
    return out


def relation_at(rel: ParamRelation, point: dict[str, Cyclotomic], n: int) -> dict:
    out: dict = {}
    for t in rel.terms:
        c = Cyclotomic.from_int(n, t.coef.const)
        for s, k in t.coef.coeffs:
            c = c + point[s] * Cyclotomic.from_int(n, k)
        out[t.mono] = out.get(t.mono, Cyclotomic.from_int(n, 0)) + c
    return out


def transformed(poly: dict, e: GroupElement) -> dict:
    m = embed(e)
    out: dict = {}
    for mono, c in poly.items():
        img, k = m.monomial_image(mono)
        v = c * Cyclotomic.root_power(e.nu, k)
        out[img] = out.get(img, Cyclotomic.from_int(e.nu, 0)) + v
    return out


def proportional(p: dict, q: dict) -> bool:
    """``q = lambda p`` for a nonzero ``lambda``, tested by cross multiplication."""
    keys = sorted(set(p) | set(q))
    zero = Cyclotomic.from_int(next(iter(p.values())).n, 0)
    pivot = next((k for k in keys if not p.get(k, zero).is_zero()), None)
    if pivot is None or q.get(pivot, zero).is_zero():
        return False
    a, b = p[pivot], q[pivot]
    return all((q.get(k, zero) * a - p.get(k, zero) * b).is_zero() for k in keys)


def preserves_relations(case: CaseConfig, e: GroupElement, stratum: Stratum, seed: int = 0, trials: int = 2) -> bool:
    """True when ``e`` maps every relation at random points of ``stratum`` to a multiple of itself."""
    rng = random.Random(seed)
    for _ in range(trials):
        point = sample_point(stratum, rng)
        for rel in case.relations:
            p = relation_at(rel, point, case.nu)
            if not proportional(p, transformed(p, e)):
                return False
    return True
