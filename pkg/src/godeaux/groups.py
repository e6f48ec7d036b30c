"""Projective monomial matrices normalizing the torsion action, and finite groups of them.

An element of ``H_nu`` is stored in the tuple parametrization of the three
cases: ``(i2, i3, i4; h)`` for nu = 5, ``(i1, i3, j1; h)`` for nu = 4 and
``(k; h)`` for nu = 3.  ``h`` is the exponent of the fixed generator ``u`` of
``Z_nu^*`` (2 for nu in {3, 5}, 3 for nu = 4).

Acting on polynomials, the element with diagonal exponents ``d`` and twist
``h`` substitutes ``x_j -> xi^(d_j) * x_(pi(j))``, where ``pi`` sends the
coordinate of eigenspace ``e`` to the coordinate (of the same degree) of
eigenspace ``u^h * e``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Sequence


class CaseMismatch(ValueError):
    pass


class NotInGroup(ValueError):
    pass


@dataclass(frozen=True)
class Ambient:
    """Weighted coordinates and the candidate shape of one torsion case."""

    nu: int
    coords: tuple[str, ...]
    weights: tuple[int, ...]
    eigen: tuple[int, ...]
    unit: int
    twist_order: int
    norm_index: int
    tuple_names: tuple[str, ...]
    # diagonal exponent of each coordinate as integer combination of the tuple entries
    shape: tuple[tuple[int, ...], ...]
    # coordinate index read back for each tuple entry
    readback: tuple[tuple[int, int], ...]
    # order in which tuple entries are compared when picking coset representatives
    rep_key: tuple[int, ...]

    def perm(self, h: int) -> tuple[int, ...]:
        return _twist_perm(self, h % self.twist_order)

    def _perm_uncached(self, h: int) -> tuple[int, ...]:
        u = pow(self.unit, h, self.nu)
        out = []
        for j, (w, e) in enumerate(zip(self.weights, self.eigen)):
            target = (u * e) % self.nu
            k = next(i for i, (w2, e2) in enumerate(zip(self.weights, self.eigen)) if w2 == w and e2 == target)
            out.append(k)
        return tuple(out)

    def twist_unit(self, h: int) -> int:
        return pow(self.unit, h % self.twist_order, self.nu)

    def twist_of_unit(self, u: int) -> int:
        for h in range(self.twist_order):
            if self.twist_unit(h) == u % self.nu:
                return h
        raise ValueError(f"{u} is not a unit modulo {self.nu}")

    def diag_of(self, exps: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(c * e for c, e in zip(row, exps)) % self.nu for row in self.shape)

    def normalize(self, diag: Sequence[int]) -> tuple[int, ...]:
        t = diag[self.norm_index] * pow(self.weights[self.norm_index], -1, self.nu)
        return tuple((d - t * w) % self.nu for d, w in zip(diag, self.weights))

    def exps_of(self, diag: Sequence[int]) -> tuple[int, ...]:
        d = self.normalize(diag)
        exps = tuple((sign * d[i]) % self.nu for i, sign in self.readback)
        if self.diag_of(exps) != d:
            raise NotInGroup(f"diagonal {tuple(diag)} does not have the candidate shape")
        return exps


@lru_cache(maxsize=None)
def _twist_perm(amb: Ambient, h: int) -> tuple[int, ...]:
    return amb._perm_uncached(h)


@lru_cache(maxsize=None)
def _twist_of_perm(amb: Ambient, perm: tuple[int, ...]) -> int | None:
    for h in range(amb.twist_order):
        if amb.perm(h) == perm:
            return h
    return None


AMBIENTS: dict[int, Ambient] = {
    5: Ambient(
        nu=5,
        coords=("x1", "x2", "x3", "x4"),
        weights=(1, 1, 1, 1),
        eigen=(1, 2, 3, 4),
        unit=2,
        twist_order=4,
        norm_index=0,
        tuple_names=("i2", "i3", "i4"),
        shape=((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
        readback=((1, 1), (2, 1), (3, 1)),
        rep_key=(0, 1, 2),
    ),
    4: Ambient(
        nu=4,
        coords=("x1", "x2", "x3", "y1", "y3"),
        weights=(1, 1, 1, 2, 2),
        eigen=(1, 2, 3, 1, 3),
        unit=3,
        twist_order=2,
        norm_index=1,
        tuple_names=("i1", "i3", "j1"),
        # -j1 on y1 and j1 on y3, so that the generator (1,3,1) of G acts trivially
        shape=((1, 0, 0), (0, 0, 0), (0, 1, 0), (0, 0, -1), (0, 0, 1)),
        readback=((0, 1), (2, 1), (4, 1)),
        # representatives with j1 = 0, the form used for all tuples of H_4/G
        rep_key=(2, 0, 1),
    ),
    3: Ambient(
        nu=3,
        coords=("x1", "x2", "y0", "y1", "y2"),
        weights=(1, 1, 2, 2, 2),
        eigen=(1, 2, 0, 1, 2),
        unit=2,
        twist_order=2,
        norm_index=0,
        tuple_names=("k",),
        shape=((0,), (1,), (1,), (2,), (0,)),
        readback=((1, 1),),
        rep_key=(0,),
    ),
}


def ambient(nu: int) -> Ambient:
    try:
        return AMBIENTS[nu]
    except KeyError:
        raise ValueError(f"unsupported torsion order {nu}") from None


@dataclass(frozen=True, order=True)
class GroupElement:
    nu: int
    exps: tuple[int, ...]
    twist: int

    def __post_init__(self):
        amb = ambient(self.nu)
        if len(self.exps) != len(amb.tuple_names):
            raise ValueError(f"nu={self.nu} elements have {len(amb.tuple_names)} exponents")
        object.__setattr__(self, "exps", tuple(int(e) % self.nu for e in self.exps))
        object.__setattr__(self, "twist", int(self.twist) % amb.twist_order)

    @classmethod
    def from_tuple(cls, nu: int, values: Sequence[int]) -> "GroupElement":
        """Build from the printed form ``(e_1, ..., e_d, h)``."""
        values = list(values)
        return cls(nu, tuple(values[:-1]), values[-1])

    def as_tuple(self) -> tuple[int, ...]:
        return self.exps + (self.twist,)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True)
class EmbeddedMatrix:
    """A monomial matrix on the weighted coordinates, up to weighted scalars."""

    nu: int
    diag_exps: tuple[int, ...]
    perm: tuple[int, ...]

    def normalized(self) -> "EmbeddedMatrix":
        amb = ambient(self.nu)
        return EmbeddedMatrix(self.nu, amb.normalize(self.diag_exps), self.perm)

    def __eq__(self, other):
        if not isinstance(other, EmbeddedMatrix):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.nu == b.nu and a.diag_exps == b.diag_exps and a.perm == b.perm

    def __hash__(self):
        n = self.normalized()
        return hash((n.nu, n.diag_exps, n.perm))

    def compose(self, other: "EmbeddedMatrix") -> "EmbeddedMatrix":
        """Substitution ``self`` applied after ``other``: ``(self*other)^* = self^* o other^*``."""
        if self.nu != other.nu:
            raise CaseMismatch("different cases")
        d = tuple((other.diag_exps[j] + self.diag_exps[other.perm[j]]) % self.nu for j in range(len(self.perm)))
        p = tuple(self.perm[other.perm[j]] for j in range(len(self.perm)))
        return EmbeddedMatrix(self.nu, d, p)

    def monomial_image(self, mono: Sequence[int]) -> tuple[tuple[int, ...], int]:
        """Image of the monomial with exponent vector ``mono``: (new exponents, xi exponent)."""
        out = [0] * len(mono)
        for j, m in enumerate(mono):
            out[self.perm[j]] += m
        e = sum(m * d for m, d in zip(mono, self.diag_exps)) % self.nu
        return tuple(out), e


def embed(e: GroupElement, nu: int | None = None) -> EmbeddedMatrix:
    if nu is not None and nu != e.nu:
        raise CaseMismatch(f"element of nu={e.nu} used with nu={nu}")
    amb = ambient(e.nu)
    return EmbeddedMatrix(e.nu, amb.diag_of(e.exps), amb.perm(e.twist))


def from_embedded(m: EmbeddedMatrix) -> GroupElement:
    amb = ambient(m.nu)
    h = _twist_of_perm(amb, m.perm)
    if h is not None:
        return GroupElement(m.nu, amb.exps_of(m.diag_exps), h)
    raise NotInGroup(f"permutation {m.perm} is not a twist")


@lru_cache(maxsize=None)
def _mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return from_embedded(embed(a).compose(embed(b)))


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.nu != b.nu:
        raise CaseMismatch("elements of different cases")
    return _mul(a, b)


def identity(nu: int) -> GroupElement:
    return GroupElement(nu, (0,) * len(ambient(nu).tuple_names), 0)


@lru_cache(maxsize=None)
def inverse(a: GroupElement) -> GroupElement:
    m = embed(a)
    inv_perm = [0] * len(m.perm)
    for j, k in enumerate(m.perm):
        inv_perm[k] = j
    d = tuple((-m.diag_exps[inv_perm[j]]) % a.nu for j in range(len(m.perm)))
    return from_embedded(EmbeddedMatrix(a.nu, d, tuple(inv_perm)))


def torsion_generator(nu: int) -> GroupElement:
    """The generator of G: diagonal exponents equal to the eigenspace labels."""
    amb = ambient(nu)
    return GroupElement(nu, amb.exps_of(amb.eigen), 0)


def standard_generators(nu: int) -> list[GroupElement]:
    d = len(ambient(nu).tuple_names)
    gens = [GroupElement(nu, tuple(int(i == j) for j in range(d)), 0) for i in range(d)]
    gens.append(GroupElement(nu, (0,) * d, 1))
    return gens


@lru_cache(maxsize=None)
def torsion_subgroup(nu: int) -> frozenset:
    return frozenset(generate([torsion_generator(nu)], nu).elements)


@lru_cache(maxsize=None)
def coset_rep(e: GroupElement) -> GroupElement:
    """Canonical representative of ``e G``: least in the case's comparison order."""
    amb = ambient(e.nu)
    coset = [multiply(e, g) for g in torsion_subgroup(e.nu)]
    return min(coset, key=lambda x: tuple(x.exps[i] for i in amb.rep_key) + (x.twist,))


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group of elements of ``H_nu``, or of ``H_nu / G`` when ``modulo_torsion``.

    In the quotient, elements are canonical coset representatives and products
    are reduced back to representatives.
    """

    nu: int
    elements: tuple[GroupElement, ...]
    generators: tuple[GroupElement, ...]
    modulo_torsion: bool = False
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, e):
        return self.reduce(e) in self._index

    def __iter__(self):
        return iter(self.elements)

    def reduce(self, e: GroupElement) -> GroupElement:
        return coset_rep(e) if self.modulo_torsion else e

    def mul(self, a, b):
        return self.reduce(multiply(a, b))

    def inv(self, a):
        return self.reduce(inverse(a))

    def identity(self):
        return self.reduce(identity(self.nu))

    def element_order(self, a) -> int:
        k, x, one = 1, a, self.identity()
        while x != one:
            x = self.mul(x, a)
            k += 1
        return k

    def subgroup(self, gens: Iterable[GroupElement]) -> "FiniteGroup":
        gens = [self.reduce(g) for g in gens]
        return FiniteGroup(self.nu, tuple(_closure(gens, self.mul, self.identity())), tuple(gens), self.modulo_torsion)

    def is_abelian(self) -> bool:
        gens = self.generators or self.elements
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)


def _closure(gens, mul, one) -> set:
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def generate(gens: Sequence[GroupElement], nu: int, modulo_torsion: bool = False) -> FiniteGroup:
    for g in gens:
        if g.nu != nu:
            raise CaseMismatch(f"generator {g} does not belong to nu={nu}")
    red = coset_rep if modulo_torsion else (lambda x: x)
    gens = [red(g) for g in gens]
    mul = (lambda a, b: coset_rep(multiply(a, b))) if modulo_torsion else multiply
    elems = _closure(gens, mul, red(identity(nu)))
    return FiniteGroup(nu, tuple(elems), tuple(gens), modulo_torsion)


def ambient_group(nu: int) -> FiniteGroup:
    return generate(standard_generators(nu), nu)


def quotient_by_torsion(g: FiniteGroup) -> FiniteGroup:
    if g.modulo_torsion:
        return g
    members = set(g.elements)
    if not torsion_subgroup(g.nu) <= members:
        raise NotInGroup("the group does not contain the torsion subgroup G")
    reps = {coset_rep(e) for e in g.elements}
    gens = tuple(sorted({coset_rep(e) for e in g.generators}))
    return FiniteGroup(g.nu, tuple(reps), gens, True)


def centralizer(g: FiniteGroup, e: GroupElement) -> FiniteGroup:
    e = g.reduce(e)
    if e not in g:
        raise NotInGroup(f"{e} is not in the group")
    elems = tuple(x for x in g.elements if g.mul(x, e) == g.mul(e, x))
    return FiniteGroup(g.nu, elems, (), g.modulo_torsion)


def conjugacy_classes(g: FiniteGroup) -> list[tuple[GroupElement, ...]]:
    seen = set()
    classes = []
    for x in g.elements:
        if x in seen:
            continue
        cls = {g.mul(g.mul(y, x), g.inv(y)) for y in g.elements}
        seen |= cls
        classes.append(tuple(sorted(cls)))
    return classes


# -- invariants ----------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    order: int
    order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    abelianization: tuple[int, ...]

    def as_list(self) -> list:
        return [self.order, [list(p) for p in self.order_histogram], self.center_order, self.derived_order, list(self.abelianization)]

    @classmethod
    def from_list(cls, data) -> "Fingerprint":
        o, hist, z, d, ab = data
        return cls(o, tuple(tuple(p) for p in hist), z, d, tuple(ab))


def abstract_fingerprint(elements: Sequence, mul: Callable, one) -> Fingerprint:
    """Fingerprint of any finite group given by its element list and product."""
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    e = index[one]
    inv = [row.index(e) for row in table]

    def order_of(i):
        k, x = 1, i
        while x != e:
            x = table[x][i]
            k += 1
        return k

    orders = [order_of(i) for i in range(n)]
    hist = tuple(sorted(Counter(orders).items()))
    center = sum(1 for i in range(n) if all(table[i][j] == table[j][i] for j in range(n)))
    comms = {table[table[a][b]][table[inv[a]][inv[b]]] for a in range(n) for b in range(n)}
    derived = {e}
    frontier = [e]
    comms = list(comms)
    while frontier:
        nxt = []
        for x in frontier:
            for c in comms:
                y = table[x][c]
                if y not in derived:
                    derived.add(y)
                    nxt.append(y)
        frontier = nxt
    # abelianization: cosets of the derived subgroup
    coset_id = {}
    cosets = []
    for i in range(n):
        if i in coset_id:
            continue
        members = {table[i][d] for d in derived}
        for m in members:
            coset_id[m] = len(cosets)
        cosets.append(i)
    ab_orders = []
    for i in cosets:
        k, x = 1, i
        while coset_id[x] != coset_id[e]:
            x = table[x][i]
            k += 1
        ab_orders.append(k)
    return Fingerprint(n, hist, center, len(derived), _abelian_invariants(ab_orders))


def _abelian_invariants(orders: Sequence[int]) -> tuple[int, ...]:
    """Elementary divisors of a finite abelian group from its element orders."""
    n = len(orders)
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    out = []
    for p in primes:
        # c[k] = log_p |{a : a^(p^k) = 1}|
        c = [0]
        k = 1
        while True:
            cnt = sum(1 for o in orders if (p ** k) % o == 0 and _is_p_power(o, p))
            logc = round(_log(cnt, p))
            c.append(logc)
            if logc == c[-2] and k > 1:
                break
            k += 1
        # number of cyclic factors of order >= p^k is c[k] - c[k-1]
        counts = [c[k] - c[k - 1] for k in range(1, len(c))]
        for k in range(len(counts)):
            exactly = counts[k] - (counts[k + 1] if k + 1 < len(counts) else 0)
            out.extend([p ** (k + 1)] * exactly)
    return tuple(sorted(out))


def _is_p_power(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def _log(x: int, p: int) -> float:
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k


def fingerprint(g: FiniteGroup) -> Fingerprint:
    return abstract_fingerprint(g.elements, g.mul, g.identity())
