"""Presentation names for strata, keyed by their canonical form.

Names follow the printed tables.  The index of an indexed family is read
from a designated ratio: for instance ``Q_s`` has ``b1 = b4 xi^s``.  The
tables are lookups only; every stratum is computed before it is named.
"""

from __future__ import annotations

from typing import Callable


class UnnamedStratum(LookupError):
    pass


def _log(stratum, num: str, den: str) -> int | None:
    """Exponent e with num = den * xi^e, if the stratum links the two."""
    roots = stratum.root_of()
    if num not in roots or den not in roots:
        return None
    (rn, on), (rd, od) = roots[num], roots[den]
    if rn != rd:
        return None
    return (on - od) % stratum.nu


def _linked(stratum) -> set[frozenset]:
    return {frozenset(m) for m in stratum.classes().values() if len(m) > 1}


Rule = tuple[str, frozenset, Callable]


def _const(*links):
    want = {frozenset(l) for l in links}
    return lambda st: () if _linked(st) == want else None


def _indexed(links, index):
    want = {frozenset(l) for l in links}

    def f(st):
        if _linked(st) != want:
            return None
        return index(st)

    return f


def _nu5_rules() -> list[Rule]:
    b = [f"b{i}" for i in range(1, 5)]
    c = [f"c{i}" for i in range(1, 5)]
    rules: list[Rule] = [
        ("affmod", frozenset(), _const()),
        ("Q", frozenset(), _indexed([("b1", "b4"), ("b2", "b3"), ("c1", "c4"), ("c2", "c3")], lambda st: (_log(st, "b1", "b4"),))),
        (
            "P",
            frozenset(),
            _indexed(
                [tuple(b), tuple(c)],
                lambda st: (_log(st, "b2", "b4"), (_log(st, "b1", "b2") - _log(st, "b2", "b4")) % 5),
            ),
        ),
        ("O", frozenset(b + c), _const()),
    ]
    for u in range(1, 5):
        rules.append(("H", frozenset(s for s in b + c if s[1:] != str(u)), lambda st, u=u: (u,)))
    return rules


def _nu4_rules() -> list[Rule]:
    bcd = ["b1", "b3", "c1", "c3", "d1", "d3"]
    f = frozenset
    c_idx = lambda st: (_log(st, "c1", "c3"),)
    return [
        ("affmod", f(), _const()),
        ("W", f(), _indexed([("b1", "b3"), ("c1", "c3"), ("d1", "d3")], lambda st: (_log(st, "b1", "b3"),))),
        ("R_1", f(["b1", "b3"]), _const()),
        ("R_4", f(["b1", "b3"]), _indexed([("c1", "c3"), ("d1", "d3")], c_idx)),
        ("R_2", f(["a'", "b3", "c1", "c3"]), _const()),
        ("R_3", f(["a'", "b1", "c1", "c3"]), _const()),
        ("R_5", f(["a'", "b1", "b3"]), _indexed([("c1", "c3"), ("d1", "d3")], c_idx)),
        ("S_5", f(["a'", "b1", "b3", "c1", "c3"]), _const()),
        ("S_7", f(["a'", "b1", "b3", "c1", "c3"]), _indexed([("d1", "d3")], lambda st: (_log(st, "d1", "d3"),))),
        ("S_4", f(["a'", "b1", "b3", "d1", "d3"]), _const()),
        ("S_6", f(["a'", "b1", "b3", "d1", "d3"]), _indexed([("c1", "c3")], c_idx)),
        ("S_2", f(["a", "a'", "b3", "c1", "c3", "d3"]), _const()),
        ("S_3", f(["a", "a'", "b1", "c1", "c3", "d1"]), _const()),
        ("T_4", f(["a", "a'", "b1", "b3", "d1", "d3"]), _indexed([("c1", "c3")], lambda st: ((_log(st, "c1", "c3") - 1) % 4,))),
        ("T_2", f(["a", "a'", "b1", "b3", "c1", "c3", "d3"]), _const()),
        ("T_3", f(["a", "a'", "b1", "b3", "c1", "c3", "d1"]), _const()),
        ("S_1", f(bcd), _const()),
        ("T_1", f(["a'"] + bcd), _const()),
        ("O", f(["a", "a'"] + bcd), _const()),
    ]


def _nu3_rules() -> list[Rule]:
    return [
        ("affmod", frozenset(), _const()),
        ("A", frozenset(), _indexed([("a1", "a2"), ("b1", "b2"), ("c1", "c2"), ("d1", "d2")], lambda st: ())),
        ("A", frozenset(["a1", "a2", "b1", "b2"]), lambda st: ()),
    ]


RULES = {5: _nu5_rules(), 4: _nu4_rules(), 3: _nu3_rules()}

FAMILY_ORDER = {
    5: ["affmod", "Q", "P", "H", "O"],
    4: ["affmod", "R_1", "W", "R_2", "R_3", "R_4", "R_5", "S_5", "S_4", "S_2", "S_3",
        "S_6", "T_4", "T_2", "T_3", "S_1", "S_7", "T_1", "O"],
    3: ["affmod", "A"],
}

# symbol used for the index of each indexed family in tables
INDEX_SYMBOLS = {"Q": "s", "P": "s,t", "H": "u", "W": "s", "R_4": "s", "R_5": "s", "S_6": "s", "S_7": "s", "T_4": "s"}


def family_of(case, stratum) -> tuple[str, tuple[int, ...]]:
    van = frozenset(stratum.vanished)
    for fam, pattern, test in RULES[case.nu]:
        if pattern != van:
            continue
        idx = test(stratum)
        if idx is not None:
            return fam, tuple(idx)
    raise UnnamedStratum(f"no name for the stratum {stratum.equations()} (nu={case.nu})")


def family_rank(nu: int, family: str) -> int:
    order = FAMILY_ORDER[nu]
    return order.index(family) if family in order else len(order)


def display_name(family: str, index: tuple[int, ...]) -> str:
    if not index:
        return family
    inner = ",".join(str(i) for i in index)
    if "_" in family:
        head, sub = family.split("_", 1)
        return f"{head}_{{{sub},{inner}}}"
    if len(index) == 1:
        return f"{family}_{inner}"
    return f"{family}_{{{inner}}}"


def component_name(nu: int, families: list[str]) -> str:
    """``R_2`` and ``R_3`` together become ``R_{2,3}``."""
    if len(families) == 1:
        return families[0]
    heads = {f.split("_", 1)[0] for f in families}
    if len(heads) == 1 and all("_" in f for f in families):
        subs = ",".join(f.split("_", 1)[1] for f in families)
        return f"{heads.pop()}_{{{subs}}}"
    return "+".join(families)
