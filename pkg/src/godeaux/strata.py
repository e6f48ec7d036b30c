"""Strata of the coefficient space, their automorphism groups, and the containment poset.

A stratum is the linear subspace where some coefficients vanish and some
surviving ones are tied together by root-of-unity ratios.  The pipeline
solves, for every vanishing pattern and twist, the modular system of
:mod:`godeaux.config`; every admissible assignment of the ratio parameters
gives a stratum together with the automorphisms found on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import naming
from .catalog import CatalogLabel, identify
from .config import CaseConfig, builtin_config, param_action, param_permutation, ratio_form, system_for
from .groups import FiniteGroup, GroupElement, coset_rep, generate, quotient_by_torsion, torsion_subgroup
from .solver import iter_pars_solutions, solve, solutions_at


class InconsistentRatios(ValueError):
    pass


class PipelineError(RuntimeError):
    """An internal consistency check of the pipeline failed."""


@dataclass(frozen=True)
class Stratum:
    """``vanished`` symbols are zero; each ratio ``(s, r, e)`` reads ``s = r * xi^e``.

    Ratios are stored canonically: every linked class is rooted at its first
    symbol in ``mod_pars`` order and lists the other members with their
    offsets from the root.
    """

    nu: int
    mod_pars: tuple[str, ...]
    vanished: tuple[str, ...]
    ratios: tuple[tuple[str, str, int], ...]

    @classmethod
    def build(cls, case: CaseConfig, vanished: Iterable[str] = (), ratios: Iterable[tuple[str, str, int]] = ()):
        return cls.from_parts(case.nu, case.mod_pars, vanished, ratios)

    @classmethod
    def from_parts(cls, nu, mod_pars, vanished=(), ratios=()):
        order = {s: i for i, s in enumerate(mod_pars)}
        zero = set(vanished)
        if zero - set(order):
            raise ValueError(f"unknown symbols {sorted(zero - set(order))}")
        parent = {s: s for s in mod_pars}
        off = {s: 0 for s in mod_pars}  # s = parent[s] * xi^off[s]

        def find(s):
            if parent[s] == s:
                return s, 0
            r, o = find(parent[s])
            parent[s], off[s] = r, (off[s] + o) % nu
            return r, off[s]

        for s, t, e in ratios:
            if s in zero or t in zero:
                raise InconsistentRatios(f"ratio {s} = {t} xi^{e} involves a vanished symbol")
            rs, os_ = find(s)
            rt, ot = find(t)
            # s = rs xi^os, t = rt xi^ot, s = t xi^e  =>  rs = rt xi^(ot + e - os)
            if rs == rt:
                if (ot + e - os_) % nu:
                    raise InconsistentRatios(f"ratio {s} = {t} xi^{e} closes an inconsistent cycle")
                continue
            if order[rs] < order[rt]:
                parent[rt], off[rt] = rs, (os_ - ot - e) % nu
            else:
                parent[rs], off[rs] = rt, (ot + e - os_) % nu
        canon = []
        for s in mod_pars:
            if s in zero:
                continue
            r, o = find(s)
            if r != s:
                canon.append((s, r, o))
        van = tuple(s for s in mod_pars if s in zero)
        return cls(nu, tuple(mod_pars), van, tuple(canon))

    # -- views --------------------------------------------------------------

    @property
    def live(self) -> tuple[str, ...]:
        z = set(self.vanished)
        return tuple(s for s in self.mod_pars if s not in z)

    def root_of(self) -> dict[str, tuple[str, int]]:
        """Every live symbol as (root, offset)."""
        out = {s: (s, 0) for s in self.live}
        for s, r, o in self.ratios:
            out[s] = (r, o)
        return out

    def classes(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for s, (r, _) in self.root_of().items():
            out.setdefault(r, []).append(s)
        return out

    def dimension(self) -> int:
        return len(self.mod_pars) - len(self.vanished) - len(self.ratios)

    def key(self):
        return (self.vanished, self.ratios)

    def mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.mod_pars) if s in set(self.vanished))

    def contained_in(self, other: "Stratum", exact: bool = True) -> bool:
        """True when every condition of ``other`` holds on ``self``.

        With ``exact=False`` the ratio exponents are ignored and only the
        vanishing pattern and the linking of symbols are compared.
        """
        if self.nu != other.nu or self.mod_pars != other.mod_pars:
            raise ValueError("strata of different cases")
        mine = set(self.vanished)
        if not set(other.vanished) <= mine:
            return False
        roots = self.root_of()
        for s, r, e in other.ratios:
            if s in mine and r in mine:
                continue
            if s in mine or r in mine:
                return False
            (rs, os_), (rr, orr) = roots[s], roots[r]
            if rs != rr:
                return False
            if exact and (os_ - orr - e) % self.nu:
                return False
        return True

    def contains_point(self, values: Mapping[str, complex], tol: float = 1e-9) -> bool:
        import cmath

        xi = cmath.exp(2j * cmath.pi / self.nu)
        if any(abs(values[s]) > tol for s in self.vanished):
            return False
        return all(abs(values[s] - values[r] * xi ** e) <= tol for s, r, e in self.ratios)

    def image(self, case: CaseConfig, e: GroupElement) -> "Stratum":
        """The stratum ``e . self`` under the coefficient action."""
        pi, scale = param_action(case, e)
        vanished = [pi[s] for s in self.vanished]
        # pi(s) = xi^scale[s] s = xi^(scale[s] + o) r and pi(r) = xi^scale[r] r
        ratios = [(pi[s], pi[r], (o + scale[s] - scale[r]) % self.nu) for s, r, o in self.ratios]
        return Stratum.from_parts(self.nu, self.mod_pars, vanished, ratios)

    def equations(self) -> list[str]:
        out = []
        if self.vanished:
            out.append(" = ".join(self.vanished) + " = 0")
        for s, r, e in self.ratios:
            out.append(f"{s} = {r}" + (f" xi^{e}" if e else ""))
        return out

    def as_dict(self) -> dict:
        return {
            "vanished": list(self.vanished),
            "ratios": [{"src": s, "dst": r, "exp": e} for s, r, e in self.ratios],
            "dim": self.dimension(),
        }


def containment(a: Stratum, b: Stratum) -> bool:
    """``a`` is contained in ``b``."""
    return a.contained_in(b)


# -- enumeration ------------------------------------------------------------------


@dataclass
class StratumAssignment:
    stratum: Stratum
    generators: set = field(default_factory=set)
    group: FiniteGroup | None = None
    label: CatalogLabel | None = None
    quotient_elements: frozenset = frozenset()


def enumerate_strata(case: CaseConfig) -> list[StratumAssignment]:
    """Solve every (vanishing pattern, twist) system and collect the strata found."""
    found: dict = {}
    pars = case.mod_pars
    for k in range(len(pars) + 1):
        for live in combinations(pars, len(pars) - k):
            vanished = tuple(s for s in pars if s not in live)
            for h in case.twists:
                for stratum, elems in _solve_pattern(case, h, live, vanished):
                    slot = found.setdefault(stratum.key(), StratumAssignment(stratum))
                    slot.generators |= elems
    return sorted(found.values(), key=lambda a: (a.stratum.mask(), a.stratum.ratios))


def _solve_pattern(case, h, live, vanished):
    s = system_for(case, h, live)
    if s is None:
        return
    sol = solve(s)
    if sol.empty:
        return
    pi = param_permutation(case, h)
    for assign in iter_pars_solutions(sol):
        sols = solutions_at(sol, assign)
        if not sols:
            continue
        ratios = []
        for sym in live:
            t = pi[sym]
            if t != sym:
                ratios.append((t, sym, ratio_form(case, t, sym).evaluate(assign) % case.nu))
        try:
            stratum = Stratum.build(case, vanished, ratios)
        except InconsistentRatios as exc:
            raise PipelineError(f"pattern {vanished}, twist {h}: {exc}") from exc
        yield stratum, {GroupElement(case.nu, u, h) for u in sols}


def propagate(assignments: Sequence[StratumAssignment]) -> list[StratumAssignment]:
    """Give every stratum the automorphisms of all strata containing it."""
    masks = [a.stratum.mask() for a in assignments]
    out = []
    for i, w in enumerate(assignments):
        gens = set(w.generators)
        for j, v in enumerate(assignments):
            # V contains W only if V's vanished set is a subset of W's
            if i != j and masks[j] & ~masks[i] == 0 and w.stratum.contained_in(v.stratum):
                gens |= v.generators
        out.append(StratumAssignment(w.stratum, gens))
    return out


@lru_cache(maxsize=None)
def _label_of(nu: int, reps: frozenset) -> tuple[CatalogLabel, FiniteGroup]:
    g = FiniteGroup(nu, tuple(reps), tuple(sorted(reps)), True)
    return identify(g), g


def attach_groups(case: CaseConfig, assignments: Sequence[StratumAssignment]) -> None:
    tors = torsion_subgroup(case.nu)
    for a in assignments:
        if not tors <= a.generators:
            raise PipelineError(f"stratum {a.stratum.key()}: the torsion group does not act")
        group = generate(sorted(a.generators), case.nu)
        if set(group.elements) != a.generators:
            raise PipelineError(f"stratum {a.stratum.key()}: automorphisms are not closed under products")
        reps = frozenset(coset_rep(e) for e in a.generators)
        a.group = group
        a.quotient_elements = reps
        a.label, _ = _label_of(case.nu, reps)


@dataclass(frozen=True)
class NamedStratum:
    stratum: Stratum
    name: str
    family: str
    index: tuple[int, ...]
    label: CatalogLabel
    group: tuple[GroupElement, ...]  # coset representatives in H/G

    @property
    def dim(self) -> int:
        return self.stratum.dimension()


@dataclass(frozen=True)
class TableRow:
    label: CatalogLabel
    strata: tuple[NamedStratum, ...]
    dims: tuple[int, ...]
    components: int
    bad: bool


@dataclass(frozen=True)
class StratumTable:
    nu: int
    rows: tuple[TableRow, ...]
    strata: tuple[NamedStratum, ...]

    def by_name(self, name: str) -> NamedStratum:
        for s in self.strata:
            if s.name == name:
                return s
        raise KeyError(name)

    def family(self, fam: str) -> list[NamedStratum]:
        return [s for s in self.strata if s.family == fam]


def regroup(case: CaseConfig, assignments: Sequence[StratumAssignment]) -> StratumTable:
    """Keep the strata not contained in a different stratum with the same label."""
    for a in assignments:
        if a.label is None:
            raise PipelineError("regroup needs labelled assignments")
    kept = []
    for a in assignments:
        redundant = any(
            b is not a and b.label == a.label and a.stratum.contained_in(b.stratum) for b in assignments
        )
        if not redundant:
            kept.append(a)
    named = []
    for a in kept:
        fam, idx = naming.family_of(case, a.stratum)
        named.append(
            NamedStratum(a.stratum, naming.display_name(fam, idx), fam, idx, a.label, tuple(sorted(a.quotient_elements)))
        )
    named.sort(key=lambda s: (s.label.order, s.label.index, naming.family_rank(case.nu, s.family), s.index))
    rows = []
    for lab in sorted({s.label for s in named}, key=lambda l: (l.order, l.index)):
        members = tuple(s for s in named if s.label == lab)
        bad = any(s.family in case.bad_families for s in members)
        dims = tuple(sorted({s.dim for s in members}, reverse=True))
        rows.append(TableRow(lab, members, dims, len(members), bad))
    return StratumTable(case.nu, tuple(rows), tuple(named))


@lru_cache(maxsize=None)
def pipeline(nu: int, include_h: bool = True) -> tuple[CaseConfig, tuple[StratumAssignment, ...], StratumTable]:
    case = builtin_config(nu, include_h)
    raw = enumerate_strata(case)
    prop = propagate(raw)
    attach_groups(case, prop)
    table = regroup(case, prop)
    return case, tuple(prop), table


def strata_table(nu: int, include_h: bool = True) -> StratumTable:
    return pipeline(nu, include_h)[2]


# -- orbits and the Hasse diagram ---------------------------------------------------


@dataclass(frozen=True)
class Component:
    name: str
    family: str
    members: tuple[NamedStratum, ...]
    label: CatalogLabel
    dim: int
    bad: bool


def collapse_orbits(table: StratumTable, case: CaseConfig) -> list[Component]:
    """Merge retained strata lying in one orbit of H/G."""
    from .groups import quotient_by_torsion, ambient_group

    quotient = quotient_by_torsion(ambient_group(case.nu))
    remaining = list(table.strata)
    keyed = {s.stratum.key(): s for s in table.strata}
    comps = []
    while remaining:
        s = remaining[0]
        orbit_keys = {s.stratum.image(case, g).key() for g in quotient.elements}
        members = tuple(keyed[k] for k in sorted(orbit_keys, key=lambda k: list(keyed).index(k)) if k in keyed)
        missing = orbit_keys - set(keyed)
        if missing:
            raise PipelineError(f"the orbit of {s.name} leaves the retained strata")
        remaining = [t for t in remaining if t.stratum.key() not in orbit_keys]
        fams = sorted({m.family for m in members}, key=lambda f: naming.family_rank(case.nu, f))
        name = naming.component_name(case.nu, fams)
        comps.append(Component(name, name, members, s.label, s.dim, any(f in case.bad_families for f in fams)))
    comps.sort(key=lambda c: (-c.dim, c.label.order, naming.family_rank(case.nu, c.members[0].family)))
    return comps


@dataclass(frozen=True)
class HasseEdge:
    upper: str
    lower: str
    quotient_only: bool


def hasse(components: Sequence[Component]) -> list[HasseEdge]:
    """Covering relations between components; dashed when no literal member pair is contained."""
    n = len(components)
    literal = [[False] * n for _ in range(n)]
    loose = [[False] * n for _ in range(n)]
    for i, a in enumerate(components):
        for j, b in enumerate(components):
            if i == j:
                continue
            literal[i][j] = any(x.stratum.contained_in(y.stratum) for x in b.members for y in a.members)
            loose[i][j] = literal[i][j] or any(
                x.stratum.contained_in(y.stratum, exact=False) for x in b.members for y in a.members
            )
    # loose[i][j]: component j lies below component i
    edges = []
    for i in range(n):
        for j in range(n):
            if not loose[i][j]:
                continue
            if any(loose[i][k] and loose[k][j] for k in range(n) if k not in (i, j)):
                continue
            edges.append(HasseEdge(components[i].name, components[j].name, not literal[i][j]))
    return edges
