"""The three torsion cases as data, and the modular equations a candidate automorphism must satisfy.

A candidate of twist ``h`` acts by ``x_j -> xi^(d_j) x_(pi(j))`` where the
diagonal ``d`` is linear in the unknown exponents.  A term ``F * m`` of a
relation goes to ``F * xi^(E) * pi(m)`` with ``E = sum m_j d_j``.  Preserving
the relation up to the factor ``xi^mult`` means that, at the image monomial,
each coefficient symbol ``s`` of ``F`` lands on the symbol ``pi(s)`` and

    E - mult == log_xi(pi(s) / s)   (mod nu).

When ``pi(s) != s`` the right side is a ratio parameter from the coupling
table; otherwise it is zero.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .forms import LinearForm, ModularEquation
from .groups import Ambient, GroupElement, ambient, embed, torsion_generator
from .solver import ParamSystem


class ConfigError(ValueError):
    pass


class MultiplierInconsistent(ConfigError):
    pass


# -- polynomial helpers ----------------------------------------------------------

Monomial = tuple[int, ...]


def parse_monomial(text: str, coords: Sequence[str]) -> Monomial:
    exps = [0] * len(coords)
    for tok in text.replace("*", " ").split():
        m = re.fullmatch(r"([a-z]\d*)(?:\^(\d+))?", tok)
        if not m or m.group(1) not in coords:
            raise ConfigError(f"bad monomial factor {tok!r}")
        exps[coords.index(m.group(1))] += int(m.group(2) or 1)
    return tuple(exps)


def parse_coef(text: str) -> LinearForm:
    """``"2 b1 - b12 + 3"`` style integer combinations of symbols."""
    text = text.replace(" ", "")
    if not text:
        return LinearForm.of({}, 1)
    out = LinearForm()
    for sign, num, sym in re.findall(r"([+-]?)(\d*)([a-z][a-z0-9']*)?", text):
        if not num and not sym:
            if sign:
                raise ConfigError(f"dangling sign in {text!r}")
            continue
        k = int(num) if num else 1
        if sign == "-":
            k = -k
        out = out + (LinearForm.symbol(sym, k) if sym else LinearForm.of({}, k))
    return out


class Poly:
    """Polynomial in the coordinates with linear forms as coefficients."""

    def __init__(self, coords: Sequence[str], terms: Mapping[Monomial, LinearForm] | None = None):
        self.coords = tuple(coords)
        self.terms: dict[Monomial, LinearForm] = {}
        for m, f in (terms or {}).items():
            self._add(m, f)

    def _add(self, m: Monomial, f: LinearForm):
        cur = self.terms.get(m, LinearForm()) + f
        if cur.is_zero():
            self.terms.pop(m, None)
        else:
            self.terms[m] = cur

    @classmethod
    def parse(cls, coords: Sequence[str], spec: Iterable[tuple[str, str]]) -> "Poly":
        p = cls(coords)
        for coef, mono in spec:
            p._add(parse_monomial(mono, coords), parse_coef(coef))
        return p

    def __add__(self, other: "Poly") -> "Poly":
        out = Poly(self.coords, self.terms)
        for m, f in other.terms.items():
            out._add(m, f)
        return out

    def __mul__(self, other: "Poly") -> "Poly":
        """Product; one factor must have constant coefficients to stay linear."""
        out = Poly(self.coords)
        for m1, f1 in self.terms.items():
            for m2, f2 in other.terms.items():
                if f1.coeffs and f2.coeffs:
                    raise ConfigError("product of two non-constant coefficients")
                m = tuple(a + b for a, b in zip(m1, m2))
                f = f2.scale(f1.const) if not f1.coeffs else f1.scale(f2.const)
                out._add(m, f)
        return out


# -- case data --------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    coef: LinearForm
    mono: Monomial


@dataclass(frozen=True)
class ParamRelation:
    name: str
    degree: int
    terms: tuple[Term, ...]

    def term_at(self, mono: Monomial) -> Term | None:
        for t in self.terms:
            if t.mono == mono:
                return t
        return None


@dataclass(frozen=True)
class CaseConfig:
    nu: int
    coordinates: tuple[str, ...]
    weights: tuple[int, ...]
    mod_pars: tuple[str, ...]
    relations: tuple[ParamRelation, ...]
    multipliers: tuple[tuple[str, LinearForm], ...]
    unknowns: tuple[str, ...]
    ratio_params: tuple[str, ...]
    coupling: tuple[tuple[tuple[str, str], str], ...]
    bad_families: tuple[str, ...] = ()
    options: tuple[tuple[str, object], ...] = field(default=())

    @property
    def ambient(self) -> Ambient:
        return ambient(self.nu)

    @property
    def torsion_gen(self) -> GroupElement:
        return torsion_generator(self.nu)

    @property
    def twists(self) -> tuple[int, ...]:
        return tuple(range(self.ambient.twist_order))

    def multiplier(self, rel: str) -> LinearForm:
        return dict(self.multipliers)[rel]

    def option(self, name: str, default=None):
        return dict(self.options).get(name, default)

    def coupling_map(self) -> dict[tuple[str, str], str]:
        return dict(self.coupling)

    def relation(self, name: str) -> ParamRelation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    def candidate_shape(self) -> dict[str, tuple[int, ...]]:
        """For each unknown, its coefficient in the diagonal exponent of each coordinate."""
        amb = self.ambient
        return {u: tuple(row[k] for row in amb.shape) for k, u in enumerate(self.unknowns)}

    def diag_forms(self) -> tuple[LinearForm, ...]:
        amb = self.ambient
        return tuple(LinearForm.of({u: row[k] for k, u in enumerate(self.unknowns)}) for row in amb.shape)

    def as_dict(self) -> dict:
        return {
            "nu": self.nu,
            "coordinates": [{"name": c, "weight": w} for c, w in zip(self.coordinates, self.weights)],
            "mod_pars": list(self.mod_pars),
            "relations": [
                {
                    "name": r.name,
                    "degree": r.degree,
                    "terms": [{"coef": t.coef.render(self.mod_pars), "mono": list(t.mono)} for t in r.terms],
                }
                for r in self.relations
            ],
            "multipliers": {k: v.render(self.unknowns) for k, v in self.multipliers},
            "unknowns": list(self.unknowns),
            "ratio_params": list(self.ratio_params),
            "coupling": [{"pair": list(k), "param": v} for k, v in self.coupling],
            "torsion_gen": list(self.torsion_gen.as_tuple()),
            "candidate_shape": {u: list(v) for u, v in self.candidate_shape().items()},
            "bad_families": list(self.bad_families),
            "options": {k: v for k, v in self.options},
        }

    def digest(self) -> str:
        blob = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _relation(name, degree, poly: Poly) -> ParamRelation:
    terms = tuple(Term(f, m) for m, f in sorted(poly.terms.items(), reverse=True))
    return ParamRelation(name, degree, terms)


def _nu5() -> CaseConfig:
    coords = ("x1", "x2", "x3", "x4")
    q0 = Poly.parse(
        coords,
        [
            ("", "x1^5"), ("", "x2^5"), ("", "x3^5"), ("", "x4^5"),
            ("b1", "x2 x3^3 x4"), ("b2", "x1^3 x3 x4"), ("b3", "x1 x2 x4^3"), ("b4", "x1 x2^3 x3"),
            ("c1", "x2^2 x3 x4^2"), ("c2", "x1 x3^2 x4^2"), ("c3", "x1^2 x2^2 x4"), ("c4", "x1^2 x2 x3^2"),
        ],
    )
    pairs = [(1, 4), (3, 2), (1, 2), (2, 4), (3, 1), (4, 3)]
    coupling = tuple(((f"b{s}", f"b{t}"), f"n_{s}_{t}") for s, t in pairs)
    coupling += tuple(((f"c{s}", f"c{t}"), f"m_{s}_{t}") for s, t in pairs)
    return CaseConfig(
        nu=5,
        coordinates=coords,
        weights=(1, 1, 1, 1),
        mod_pars=("b1", "b2", "b3", "b4", "c1", "c2", "c3", "c4"),
        relations=(_relation("q0", 5, q0),),
        multipliers=(("q0", LinearForm()),),
        unknowns=("i2", "i3", "i4"),
        ratio_params=tuple(p for _, p in coupling),
        coupling=coupling,
    )


def _nu4() -> CaseConfig:
    coords = ("x1", "x2", "x3", "y1", "y3")
    q0 = Poly.parse(
        coords,
        [
            ("", "x1^4"), ("", "x2^4"), ("", "x3^4"), ("a", "x1^2 x3^2"), ("a'", "x1 x2^2 x3"),
            ("", "y1 y3"), ("b1", "y1 x1 x2"), ("b3", "y3 x2 x3"),
        ],
    )
    q2 = Poly.parse(
        coords,
        [("c1", "x1^3 x3"), ("c3", "x1 x3^3"), ("d1", "x1^2 x2^2"), ("d3", "x2^2 x3^2"), ("", "y1^2"), ("", "y3^2")],
    )
    coupling = ((("b1", "b3"), "n_1_3"), (("c1", "c3"), "m_1_3"), (("d1", "d3"), "l_1_3"))
    return CaseConfig(
        nu=4,
        coordinates=coords,
        weights=(1, 1, 1, 2, 2),
        mod_pars=("a", "a'", "b1", "b3", "c1", "c3", "d1", "d3"),
        relations=(_relation("q0", 4, q0), _relation("q2", 4, q2)),
        multipliers=(("q0", LinearForm()), ("q2", LinearForm.symbol("j1", 2))),
        unknowns=("i1", "i3", "j1"),
        ratio_params=tuple(p for _, p in coupling),
        coupling=coupling,
        bad_families=("S_1", "T_1", "O"),
    )


def _nu3(include_h: bool = True) -> CaseConfig:
    coords = ("x1", "x2", "y0", "y1", "y2")

    def P(spec):
        return Poly.parse(coords, spec)

    S = P([("c1", "x1^3"), ("c2", "x2^3"), ("d1", "x1 y2"), ("d2", "x2 y1")])
    q0 = P(
        [
            ("", "x1 x2 y0^2"), ("-1", "x1 x2 y1 y2"), ("-1", "x1^2 y2^2"), ("", "x1^2 y0 y1"),
            ("-1", "x2^2 y1^2"), ("", "x2^2 y0 y2"),
            ("a1", "x1^3 x2 y1"), ("a2", "x1 x2^3 y2"), ("-b1", "x1^6"), ("b12", "x1^3 x2^3"), ("-b2", "x2^6"),
        ]
    )
    p0 = P(
        [
            ("", "y0^3"), ("", "y1^3"), ("", "y2^3"), ("-3", "y0 y1 y2"),
            ("a1", "x1^2 y0 y1"), ("a2", "x2^2 y0 y2"), ("-a1-a2", "x1 x2 y1 y2"),
            ("a1", "x2^2 y1^2"), ("a2", "x1^2 y2^2"), ("b1+b12+b2", "x1^2 x2^2 y0"),
            ("b2", "x2^4 y1"), ("-b1-b12", "x1^3 x2 y1"), ("b1", "x1^4 y2"), ("-b12-b2", "x1 x2^3 y2"),
        ]
    ) + P([("", "x1^3"), ("", "x2^3")]) * S
    h = P(
        [
            ("", "x1 y1 y2^2"), ("-1", "x1 y0 y1^2"), ("", "x2 y2 y1^2"), ("-1", "x2 y0 y2^2"),
            ("-a1", "x1^2 x2 y1^2"), ("-a2", "x1 x2^2 y2^2"),
            ("-b1", "x1^4 x2 y0"), ("-b2", "x1 x2^4 y0"), ("b1", "x1^5 y1"), ("b2", "x2^5 y2"),
        ]
    ) + P([("-1", "x1^2 x2^2")]) * S
    rels = [_relation("q0", 6, q0), _relation("p0", 6, p0)]
    mults = [("q0", LinearForm()), ("p0", LinearForm())]
    if include_h:
        rels.append(_relation("h", 7, h))
        mults.append(("h", LinearForm.symbol("k", 2)))
    coupling = ((("a1", "a2"), "p_1_2"), (("b1", "b2"), "n_1_2"), (("c1", "c2"), "m_1_2"), (("d1", "d2"), "l_1_2"))
    return CaseConfig(
        nu=3,
        coordinates=coords,
        weights=(1, 1, 2, 2, 2),
        mod_pars=("a1", "a2", "b1", "b12", "b2", "c1", "c2", "d1", "d2"),
        relations=tuple(rels),
        multipliers=tuple(mults),
        unknowns=("k",),
        ratio_params=tuple(p for _, p in coupling),
        coupling=coupling,
        bad_families=("A",),
        options=(("include_h", include_h),),
    )


@lru_cache(maxsize=None)
def builtin_config(nu: int, include_h: bool = True) -> CaseConfig:
    if nu == 5:
        case = _nu5()
    elif nu == 4:
        case = _nu4()
    elif nu == 3:
        case = _nu3(include_h)
    else:
        raise ValueError(f"unsupported torsion order {nu}; expected 3, 4 or 5")
    check_config(case)
    return case


# -- candidate action -------------------------------------------------------------


def monomial_exponent(case: CaseConfig, mono: Monomial) -> LinearForm:
    """xi-exponent acquired by ``mono`` under the generic candidate, linear in the unknowns."""
    out = LinearForm()
    for m, d in zip(mono, case.diag_forms()):
        if m:
            out = out + d.scale(m)
    return out.reduce(case.nu)


def apply_candidate(rel: ParamRelation, twist: int, case: CaseConfig) -> list[tuple[Term, Monomial, LinearForm]]:
    """(source term, image monomial, xi-exponent form) for every term of ``rel``."""
    perm = case.ambient.perm(twist)
    out = []
    for t in rel.terms:
        image = [0] * len(t.mono)
        for j, m in enumerate(t.mono):
            image[perm[j]] += m
        out.append((t, tuple(image), monomial_exponent(case, t.mono)))
    return out


def derived_multiplier(case: CaseConfig, rel: ParamRelation, twist: int) -> LinearForm:
    """Multiplier forced by the constant monomials; raises if they disagree."""
    forms = set()
    for t, image, e in apply_candidate(rel, twist, case):
        if t.coef.coeffs:
            continue
        target = rel.term_at(image)
        if target is None or target.coef != t.coef:
            raise MultiplierInconsistent(f"{rel.name}: constant term {t.mono} has no matching image under twist {twist}")
        forms.add(e)
    if len(forms) != 1:
        raise MultiplierInconsistent(f"{rel.name}, twist {twist}: constant monomials give {sorted(map(str, forms))}")
    return forms.pop()


@lru_cache(maxsize=None)
def param_permutation(case: CaseConfig, twist: int) -> dict[str, str]:
    """The permutation of coefficient symbols induced by a twist.

    Read off by matching each term with the term at its image monomial; a
    symbol alone in a coefficient determines its image directly, and
    compound coefficients are resolved once the other symbols are known.
    """
    pairs = []
    for rel in case.relations:
        for t, image, _ in apply_candidate(rel, twist, case):
            target = rel.term_at(image)
            if t.coef.coeffs:
                if target is None:
                    raise ConfigError(f"{rel.name}: image of {t.mono} missing under twist {twist}")
                pairs.append((t.coef, target.coef))
    pi: dict[str, str] = {}
    changed = True
    while changed:
        changed = False
        for src, dst in pairs:
            s_unknown = [s for s in src.symbols() if s not in pi]
            taken = {pi[s] for s in src.symbols() if s in pi}
            d_unknown = [s for s in dst.symbols() if s not in taken]
            if len(s_unknown) == 1 and len(d_unknown) == 1:
                pi[s_unknown[0]] = d_unknown[0]
                changed = True
    if set(pi) != set(case.mod_pars) or sorted(pi.values()) != sorted(case.mod_pars):
        raise ConfigError(f"twist {twist} does not induce a permutation of the coefficients")
    return pi


def ratio_form(case: CaseConfig, target: str, source: str) -> LinearForm:
    """The linear form equal to ``log_xi(target / source)``."""
    if target == source:
        return LinearForm()
    cm = case.coupling_map()
    if (target, source) in cm:
        return LinearForm.symbol(cm[(target, source)])
    if (source, target) in cm:
        return LinearForm.symbol(cm[(source, target)], -1)
    raise ConfigError(f"no coupling parameter for the pair ({target}, {source})")


@dataclass(frozen=True)
class EquationEntry:
    twist: int
    relation: str
    term: Monomial
    pair: tuple[str, str] | None
    equation: ModularEquation
    structural_ok: bool


@lru_cache(maxsize=None)
def equation_entries(case: CaseConfig) -> tuple[EquationEntry, ...]:
    out = []
    n = case.nu
    for h in case.twists:
        pi = param_permutation(case, h)
        for rel in case.relations:
            mult = case.multiplier(rel.name)
            for t, image, e in apply_candidate(rel, h, case):
                target = rel.term_at(image)
                ok = target is not None and target.coef == t.coef.rename(pi)
                base = (e - mult).reduce(n)
                if not t.coef.coeffs:
                    eq = ModularEquation(base, 0, n, (h, rel.name, None))
                    out.append(EquationEntry(h, rel.name, t.mono, None, eq, ok))
                for s in t.coef.symbols():
                    pair = (pi[s], s)
                    lhs = (base - ratio_form(case, *pair)).reduce(n)
                    eq = ModularEquation(lhs, 0, n, (h, rel.name, pair))
                    out.append(EquationEntry(h, rel.name, t.mono, pair, eq, ok))
    return tuple(out)


def compute_equations(case: CaseConfig) -> dict[tuple[int, tuple[str, str]], list[ModularEquation]]:
    """Equations keyed by (twist, (image symbol, source symbol)); constant terms are keyed by ``None``."""
    table: dict = {}
    for entry in equation_entries(case):
        table.setdefault((entry.twist, entry.pair), [])
        if entry.equation not in table[(entry.twist, entry.pair)]:
            table[(entry.twist, entry.pair)].append(entry.equation)
    return table


def present_equation(eq: ModularEquation, case: CaseConfig) -> str:
    """Render as ``ratio == exponent`` in the style of the worked example."""
    n = case.nu
    lhs = eq.normalized().lhs
    params = lhs.restrict(case.ratio_params)
    unknowns = lhs.restrict(case.unknowns)
    if not params.coeffs:
        return f"{_centered(unknowns, case.unknowns, n)} = 0"
    return f"{_centered(params.scale(-1), case.ratio_params, n)} = {_centered(unknowns, case.unknowns, n)}"


def _centered(form: LinearForm, order, n) -> str:
    # print each coefficient as the representative of least absolute value, preferring positive ones
    m = {s: (c % n if c % n <= n // 2 else c % n - n) for s, c in form.coeffs}
    return LinearForm.of(m).render(order)


def system_for(case: CaseConfig, twist: int, nonvanished: Iterable[str]) -> ParamSystem | None:
    """The modular system for one twist and vanishing pattern, or None if no candidate can exist."""
    live = frozenset(nonvanished)
    pi = param_permutation(case, twist)
    if {pi[s] for s in live} != live:
        return None
    eqs = []
    for entry in equation_entries(case):
        if entry.twist != twist:
            continue
        if entry.pair is None:
            if not entry.structural_ok:
                return None
            eqs.append(entry.equation)
            continue
        if entry.pair[1] not in live:
            continue
        rel = case.relation(entry.relation)
        src = rel.term_at(entry.term)
        image = dict((t.mono, t) for t in rel.terms)
        tgt_mono = next(img for t, img, _ in apply_candidate(rel, twist, case) if t.mono == entry.term)
        tgt = image.get(tgt_mono)
        if tgt is None or tgt.coef.restrict(live) != src.coef.restrict(live).rename(pi):
            return None
        eqs.append(entry.equation)
    eqs.extend(cycle_closures(case, twist, live))
    used = set()
    for e in eqs:
        used |= set(e.lhs.symbols())
    params = tuple(p for p in case.ratio_params if p in used)
    eqs = [e for e in dict.fromkeys(eqs) if not e.is_trivial()]
    return ParamSystem(tuple(eqs), case.unknowns, params, case.nu)


def cycles(pi: Mapping[str, str], order: Sequence[str], among: Iterable[str] | None = None) -> list[list[str]]:
    among = set(order if among is None else among)
    seen, out = set(), []
    for s in order:
        if s in seen or s not in among:
            continue
        cyc = [s]
        seen.add(s)
        t = pi[s]
        while t != s:
            cyc.append(t)
            seen.add(t)
            t = pi[t]
        out.append(cyc)
    return out


def cycle_closures(case: CaseConfig, twist: int, live: Iterable[str]) -> list[ModularEquation]:
    """Ratios around a coefficient cycle of length > 2 multiply to one."""
    pi = param_permutation(case, twist)
    out = []
    for cyc in cycles(pi, case.mod_pars, live):
        if len(cyc) <= 2:
            continue
        total = LinearForm()
        for s in cyc:
            total = total + ratio_form(case, pi[s], s)
        out.append(ModularEquation(total.reduce(case.nu), 0, case.nu, (twist, "cycle", tuple(cyc))))
    return out


# -- action of concrete elements on the coefficients --------------------------------


def _value(form: LinearForm, values: Mapping[str, int], n: int) -> int:
    return form.evaluate(values) % n


def param_action(case: CaseConfig, e: GroupElement) -> tuple[dict[str, str], dict[str, int]]:
    """``(pi, scale)`` with ``(e . p)[pi(s)] = xi^scale[s] * p[s]``.

    The point ``p`` and its image ``e . p`` are coefficient vectors such
    that ``e`` carries the surface of ``p`` to the surface of ``e . p``.
    """
    if e.nu != case.nu:
        raise ValueError("element of another case")
    pi = param_permutation(case, e.twist)
    values = dict(zip(case.unknowns, e.exps))
    n = case.nu
    scale: dict[str, int] = {}
    for rel in case.relations:
        mult = _value(case.multiplier(rel.name), values, n)
        for t, _, ef in apply_candidate(rel, e.twist, case):
            ex = (_value(ef, values, n) - mult) % n
            for s in t.coef.symbols():
                if scale.setdefault(s, ex) != ex:
                    raise ConfigError(f"inconsistent scaling of {s} under {e}")
    return pi, scale


def check_config(case: CaseConfig) -> None:
    """Startup consistency assertions on a case description."""
    for rel in case.relations:
        for t in rel.terms:
            deg = sum(m * w for m, w in zip(t.mono, case.weights))
            if deg != rel.degree:
                raise ConfigError(f"{rel.name}: term {t.mono} has degree {deg}, expected {rel.degree}")
        for h in case.twists:
            got = derived_multiplier(case, rel, h)
            if got != case.multiplier(rel.name).reduce(case.nu):
                raise MultiplierInconsistent(f"{rel.name}, twist {h}: stored multiplier differs from derived {got}")
    for h in case.twists:
        param_permutation(case, h)
    pi, scale = param_action(case, case.torsion_gen)
    if any(pi[s] != s for s in case.mod_pars) or any(scale.values()):
        raise ConfigError("the torsion generator acts nontrivially on the coefficients")


def twist_for_unit(case: CaseConfig, u: int) -> int:
    return case.ambient.twist_of_unit(u)
