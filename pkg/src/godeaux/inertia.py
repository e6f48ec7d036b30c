"""Fixed loci of single elements and the components of the inertia stack.

An element ``e`` of ``H_nu/G`` acts linearly on the coefficient space; its
fixed locus is again a stratum.  The inertia components are pairs
(stratum, element), one for each element that is an automorphism of the
chosen representative of some family.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .catalog import CatalogLabel, identify
from .config import CaseConfig, cycles, param_action
from .groups import FiniteGroup, GroupElement, ambient_group, centralizer, coset_rep, quotient_by_torsion
from .strata import Component, NamedStratum, PipelineError, Stratum, collapse_orbits, hasse, pipeline


def fixed_stratum(e: GroupElement, case: CaseConfig) -> Stratum:
    """The subspace of coefficient vectors fixed by ``e``.

    A fixed vector satisfies ``p[pi(s)] = xi^scale[s] p[s]`` for every
    symbol; along a cycle of ``pi`` these conditions either close up (and
    become ratio conditions) or force the whole cycle to vanish.
    """
    pi, scale = param_action(case, e)
    n = case.nu
    vanished, ratios = [], []
    for cyc in cycles(pi, case.mod_pars):
        total = sum(scale[s] for s in cyc) % n
        if total:
            vanished.extend(cyc)
            continue
        for s in cyc[:-1] if len(cyc) > 1 else []:
            ratios.append((pi[s], s, scale[s] % n))
    return Stratum.build(case, vanished, ratios)


def acts_trivially(e: GroupElement, case: CaseConfig, stratum: Stratum) -> bool:
    return stratum.contained_in(fixed_stratum(e, case))


@dataclass(frozen=True)
class InertiaComponent:
    element: GroupElement
    fixed: Stratum
    family: str
    component_name: str
    centralizer_label: CatalogLabel
    bad: bool = False

    @property
    def name(self) -> str:
        return f"({self.family},{tuple_str(self.element)})"


@dataclass(frozen=True)
class SubcomponentReport:
    family: str
    group_label: CatalogLabel
    rows: tuple[tuple[str, CatalogLabel], ...]


def tuple_str(e: GroupElement) -> str:
    return "(" + ",".join(str(v) for v in e.as_tuple()) + ")"


@lru_cache(maxsize=None)
def quotient_group(nu: int) -> FiniteGroup:
    return quotient_by_torsion(ambient_group(nu))


@lru_cache(maxsize=None)
def _centralizer_label(nu: int, e: GroupElement) -> CatalogLabel:
    return identify(centralizer(quotient_group(nu), e))


# -- representative choice --------------------------------------------------------


@dataclass(frozen=True)
class Choice:
    """One representative stratum per component, containments holding literally where possible."""

    components: tuple[Component, ...]
    chosen: tuple[NamedStratum, ...]

    def of(self, name: str) -> NamedStratum:
        for c, s in zip(self.components, self.chosen):
            if c.name == name:
                return s
        raise KeyError(name)


def choose_representatives(components: Sequence[Component], good_only: bool = True) -> Choice:
    """Greedy choice from the smallest strata upwards.

    Each component takes the member containing the most representatives
    already chosen for the components below it; ties go to the member whose
    sorted automorphism group is lexicographically least, which is the one
    with the simplest generators.
    """
    comps = [c for c in components if not (good_only and c.bad)]
    below = {c.name: set() for c in comps}
    names = {c.name for c in comps}
    edges = hasse(comps)
    for ed in edges:
        if ed.upper in names and ed.lower in names:
            below[ed.upper].add(ed.lower)
    # transitive closure of "below"
    changed = True
    while changed:
        changed = False
        for n in below:
            extra = set().union(*(below[m] for m in below[n])) - below[n] if below[n] else set()
            if extra:
                below[n] |= extra
                changed = True
    order = sorted(range(len(comps)), key=lambda i: (comps[i].dim, i))
    picked: dict[str, NamedStratum] = {}
    for i in order:
        c = comps[i]
        lower = [picked[m] for m in below[c.name] if m in picked]

        def score(st, lower=lower):
            return sum(1 for w in lower if w.stratum.contained_in(st.stratum))

        best = min(c.members, key=lambda st: (-score(st), st.group, c.members.index(st)))
        picked[c.name] = best
    return Choice(tuple(comps), tuple(picked[c.name] for c in comps))


# -- components ---------------------------------------------------------------------


def raw_components(case: CaseConfig) -> list[InertiaComponent]:
    """One component per element of ``H_nu/G`` over the whole coefficient space.

    The family is the smallest table family containing the fixed locus.
    """
    _, _, table = pipeline(case.nu, case.option("include_h", True))
    components = collapse_orbits(table, case)
    by_key = {}
    for comp in components:
        for m in comp.members:
            by_key[m.stratum.key()] = comp
    out = []
    for e in quotient_group(case.nu).elements:
        fixed = fixed_stratum(e, case)
        comp = by_key.get(fixed.key())
        if comp is None:
            # the fixed locus is not itself retained: name it by the smallest retained stratum containing it
            hosts = [c for c in components for m in c.members if fixed.contained_in(m.stratum)]
            if not hosts:
                raise PipelineError(f"fixed locus of {e} lies in no retained stratum")
            comp = min(hosts, key=lambda c: c.dim)
        out.append(
            InertiaComponent(e, fixed, comp.family, comp.name, _centralizer_label(case.nu, e), comp.bad)
        )
    return out


def inertia_components(case: CaseConfig, include_bad: bool = True) -> list[InertiaComponent]:
    """Components attached to the chosen representatives.

    Every element of the automorphism group of some chosen representative
    gives one component, placed on the largest chosen stratum having it as
    an automorphism.  Strata of bad families lie outside the moduli space:
    they are chosen after the others, only receive the elements no good
    stratum has, and their components carry the bad flag.
    """
    _, _, table = pipeline(case.nu, case.option("include_h", True))
    components = collapse_orbits(table, case)
    good = choose_representatives(components, good_only=True)
    tiers = [list(zip(good.components, good.chosen))]
    if include_bad:
        full = choose_representatives(components, good_only=False)
        tiers.append([(c, st) for c, st in zip(full.components, full.chosen) if c.bad])
    out = []
    placed: set = set()
    for hosts in tiers:
        elements = sorted({e for _, st in hosts for e in st.group} - placed)
        for e in elements:
            having = [(c, st) for c, st in hosts if e in st.group]
            top = max(st.dim for _, st in having)
            biggest = [(c, st) for c, st in having if st.dim == top]
            if len(biggest) > 1:
                names = [c.name for c, _ in biggest]
                raise PipelineError(f"{e} is an automorphism of incomparable chosen strata {names}")
            c, st = biggest[0]
            if not acts_trivially(e, case, st.stratum):
                raise PipelineError(f"{e} does not act trivially on {st.name}")
            out.append(InertiaComponent(e, fixed_stratum(e, case), c.family, c.name, _centralizer_label(case.nu, e), c.bad))
            placed.add(e)
    out.sort(key=lambda ic: (ic.bad, -ic.fixed.dimension(), ic.element))
    return out


def effective_components(case: CaseConfig) -> list[InertiaComponent]:
    """The components lying in the moduli space."""
    return [ic for ic in inertia_components(case) if not ic.bad]


def minimal_generators(elements: Sequence[GroupElement], nu: int) -> list[GroupElement]:
    """A generating set read greedily from the sorted element list."""
    q = quotient_group(nu)
    gens: list[GroupElement] = []
    span = {q.identity()}
    for e in sorted(elements):
        if e in span:
            continue
        gens.append(e)
        span = set(q.subgroup(gens).elements)
    return gens


def embedded_automorphism_groups(case: CaseConfig) -> dict[str, list[GroupElement]]:
    """Generators in ``H_nu/G`` of the automorphism group of each chosen representative."""
    _, _, table = pipeline(case.nu, case.option("include_h", True))
    choice = choose_representatives(collapse_orbits(table, case))
    return {c.name: minimal_generators(st.group, case.nu) for c, st in zip(choice.components, choice.chosen)}


def subcomponent_automorphisms(case: CaseConfig, family: str) -> SubcomponentReport:
    """Automorphism groups of the chosen ``family`` stratum inside each inertia component.

    Inside the component of ``e`` the automorphisms of a point are those
    commuting with ``e``, so each row is a centralizer in the stratum's group.
    """
    _, _, table = pipeline(case.nu, case.option("include_h", True))
    comps = collapse_orbits(table, case)
    choice = choose_representatives(comps)
    st = choice.of(family)
    q = quotient_group(case.nu)
    group = q.subgroup(st.group)
    rows = []
    for ic in effective_components(case):
        if ic.element not in group.elements:
            continue
        rows.append((ic.name, identify(centralizer(group, ic.element))))
    return SubcomponentReport(family, identify(group), tuple(rows))


def nonabelian_families(case: CaseConfig) -> list[str]:
    _, _, table = pipeline(case.nu, case.option("include_h", True))
    choice = choose_representatives(collapse_orbits(table, case))
    q = quotient_group(case.nu)
    return [c.name for c, st in zip(choice.components, choice.chosen) if not q.subgroup(st.group).is_abelian()]
