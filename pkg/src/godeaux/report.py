"""Report documents and their text, JSON and DOT renderings.

Every command builds a plain-data document ``{case, kind, tool_version,
config_digest, payload}``; the renderers only format what is in it, so the
CLI, the HTTP service and the tests all see the same data.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from typing import Iterable, Sequence

from . import __version__
from .catalog import identify
from .config import CaseConfig, builtin_config, compute_equations, system_for, twist_for_unit
from .forms import LinearForm, ModularEquation
from .groups import (
    FiniteGroup,
    GroupElement,
    abstract_fingerprint,
    ambient,
    ambient_group,
    generate,
    identity,
    multiply,
    quotient_by_torsion,
    standard_generators,
    torsion_generator,
)
from .inertia import (
    embedded_automorphism_groups,
    inertia_components,
    nonabelian_families,
    raw_components,
    subcomponent_automorphisms,
)
from .solver import solve
from .strata import collapse_orbits, hasse, pipeline

KINDS = ("strata", "inertia", "equations", "ambient", "group-id")


class UsageError(ValueError):
    """Bad user input: unknown case, malformed generators, invalid twist."""


def check_nu(nu: int) -> int:
    if nu not in (3, 4, 5):
        raise UsageError(f"--nu must be 3, 4 or 5, not {nu}")
    return nu


def document(kind: str, case: CaseConfig, payload: dict) -> dict:
    return {
        "case": case.nu,
        "kind": kind,
        "tool_version": __version__,
        "config_digest": case.digest(),
        "payload": payload,
    }


# -- presentation helpers -----------------------------------------------------------


def pretty_symbol(name: str) -> str:
    """``n_1_4`` becomes ``n_{1,4}``; other names are unchanged."""
    head, *rest = name.split("_")
    if len(rest) >= 2:
        return f"{head}_{{{','.join(rest)}}}"
    return name


def _render(form: LinearForm, order: Sequence[str], n: int, centered: bool) -> str:
    m = {}
    for s, c in form.coeffs:
        c %= n
        if centered and c > n // 2:
            c -= n
        if c:
            m[s] = c
    text = LinearForm.of(m, form.const % n if form.const else 0).render(order)
    for s in sorted(m, key=len, reverse=True):
        if s != pretty_symbol(s):
            text = re.sub(rf"(?<![A-Za-z_{{,]){re.escape(s)}(?![\w}}])", pretty_symbol(s), text)
    return text


def present_equation(eq: ModularEquation, case: CaseConfig) -> str:
    """``-n_{1,4} = i2 + 3i3 + i4``: ratio parameters left, unknowns right with residues in ``[0, nu)``."""
    n = case.nu
    e = eq.normalized()
    params = e.lhs.restrict(case.ratio_params)
    unknowns = LinearForm.of(e.lhs.restrict(case.unknowns).mapping, -e.rhs)
    right = _render(unknowns, case.unknowns, n, centered=False)
    if not params.coeffs:
        return f"{right} = 0"
    return f"{_render(params.scale(-1), case.ratio_params, n, centered=True)} = {right}"


def present_constraint(eq: ModularEquation, case: CaseConfig) -> str:
    """Solve a parameter-only constraint for its last declared unit-coefficient symbol."""
    n = case.nu
    e = eq.normalized()
    m = e.lhs.mapping
    units = [s for s in case.ratio_params if s in m and m[s] % n in (1, n - 1)]
    if not units:
        return f"{_render(e.lhs, case.ratio_params, n, centered=True)} = {e.rhs}"
    piv = units[-1]
    sign = 1 if m[piv] % n == 1 else -1
    # piv = sign * (rhs - rest)
    rest = LinearForm.of({s: c for s, c in m.items() if s != piv}, -e.rhs).scale(-sign)
    return f"{pretty_symbol(piv)} = {_render(rest, case.ratio_params, n, centered=False)}"


def present_solution(form: LinearForm, case: CaseConfig) -> str:
    """Affine solution with free unknowns printed under their own names."""
    table = {s: s.split(".", 1)[1] for s in form.symbols() if s.startswith("free.")}
    half = {s: "t_" + s.split(".", 1)[1] for s in form.symbols() if s.startswith("half.")}
    f = form.rename({**table, **half})
    order = list(case.unknowns) + sorted(half.values()) + list(case.ratio_params)
    return _render(f, order, case.nu, centered=False)


def label_dict(label) -> dict:
    return {"order": label.order, "index": label.index, "name": label.name}


# -- builders -----------------------------------------------------------------------


def strata_report(nu: int, include_h: bool = True) -> dict:
    check_nu(nu)
    case, _, table = pipeline(nu, include_h)
    rows = []
    for row in table.rows:
        rows.append(
            {
                "label": label_dict(row.label),
                "strata": [
                    {
                        "name": s.name,
                        "family": s.family,
                        "vanished": list(s.stratum.vanished),
                        "ratios": [{"src": a, "dst": b, "exp": e} for a, b, e in s.stratum.ratios],
                        "dim": s.dim,
                        "equations": s.stratum.equations(),
                    }
                    for s in row.strata
                ],
                "dims": list(row.dims),
                "components": row.components,
                "bad": row.bad,
            }
        )
    comps = collapse_orbits(table, case)
    edges = hasse(comps)
    payload = {
        "rows": rows,
        "components": [
            {
                "name": c.name,
                "members": [m.name for m in c.members],
                "dim": c.dim,
                "label": label_dict(c.label),
                "bad": c.bad,
            }
            for c in comps
        ],
        "edges": [{"upper": e.upper, "lower": e.lower, "quotient_only": e.quotient_only} for e in edges],
    }
    return document("strata", case, payload)


def _component_dict(ic) -> dict:
    return {
        "name": ic.name,
        "family": ic.family,
        "element": list(ic.element.as_tuple()),
        "fixed": {
            "vanished": list(ic.fixed.vanished),
            "ratios": [{"src": a, "dst": b, "exp": e} for a, b, e in ic.fixed.ratios],
            "dim": ic.fixed.dimension(),
        },
        "centralizer": label_dict(ic.centralizer_label),
        "bad": ic.bad,
    }


def inertia_report(nu: int, include_h: bool = True) -> dict:
    check_nu(nu)
    case = builtin_config(nu, include_h)
    comps = inertia_components(case)
    raw = raw_components(case)
    subs = []
    for fam in nonabelian_families(case):
        rep = subcomponent_automorphisms(case, fam)
        subs.append(
            {
                "family": fam,
                "group": label_dict(rep.group_label),
                "rows": [{"component": name, "group": label_dict(lab)} for name, lab in rep.rows],
            }
        )
    embedded = embedded_automorphism_groups(case)
    payload = {
        "components": [_component_dict(ic) for ic in comps],
        "histogram": dict(sorted(Counter(ic.family for ic in comps).items())),
        "effective": sum(1 for ic in comps if not ic.bad),
        "raw": [_component_dict(ic) for ic in raw],
        "raw_histogram": dict(sorted(Counter(ic.family for ic in raw).items())),
        "embedded": {name: [list(e.as_tuple()) for e in gens] for name, gens in embedded.items()},
        "subcomponents": subs,
    }
    return document("inertia", case, payload)


def equations_report(nu: int, unit: int, include_h: bool = True) -> dict:
    check_nu(nu)
    case = builtin_config(nu, include_h)
    try:
        h = twist_for_unit(case, unit)
    except ValueError:
        raise UsageError(f"--twist {unit} is not a unit modulo {nu}") from None
    if h not in case.twists:
        raise UsageError(f"--twist {unit} is excluded in this configuration")
    entries = []
    for (tw, pair), eqs in compute_equations(case).items():
        if tw != h:
            continue
        for eq in eqs:
            # constant monomials give 0 = 0 by construction; coefficient
            # equations are kept even when they reduce to 0 = 0
            if pair is None and eq.is_trivial():
                continue
            entries.append(
                {
                    "relation": eq.provenance[1],
                    "pair": list(pair) if pair else None,
                    "text": present_equation(eq, case),
                    "lhs": {s: c for s, c in eq.normalized().lhs.coeffs},
                    "rhs": eq.normalized().rhs,
                }
            )
    system = system_for(case, h, case.mod_pars)
    solution: dict = {"solvable": False, "constraints": [], "unknowns": {}}
    if system is not None:
        sol = solve(system)
        solution["solvable"] = not sol.empty
        solution["constraints"] = [present_constraint(c, case) for c in sol.param_constraints]
        if sol.unknown_exprs is not None:
            solution["unknowns"] = {u: present_solution(sol.unknown_exprs[u], case) for u in case.unknowns}
    payload = {"unit": unit % nu, "twist": h, "modulus": nu, "equations": entries, "solution": solution}
    return document("equations", case, payload)


def _structure(nu: int, full: FiniteGroup) -> str:
    diag = [e for e in full.elements if e.twist == 0]
    fp = abstract_fingerprint(diag, multiply, identity(nu))
    counts = Counter(fp.abelianization)
    parts = [f"Z_{p}" + (f"^{k}" if k > 1 else "") for p, k in sorted(counts.items())]
    return " x ".join(parts) + f" : Z_{ambient(nu).twist_order}"


def ambient_report(nu: int) -> dict:
    check_nu(nu)
    case = builtin_config(nu)
    full = ambient_group(nu)
    quo = quotient_by_torsion(full)
    qlabel = identify(quo)
    payload = {
        "order": full.order,
        "quotient_order": quo.order,
        "generators": [list(g.as_tuple()) for g in standard_generators(nu)],
        "torsion_generator": list(torsion_generator(nu).as_tuple()),
        "structure": _structure(nu, full),
        "quotient_label": label_dict(qlabel),
        "tuple_names": list(ambient(nu).tuple_names) + ["h"],
    }
    return document("ambient", case, payload)


TUPLE_RE = re.compile(r"\(([^()]*)\)")


def parse_generators(nu: int, text: str) -> list[GroupElement]:
    text = text.strip()
    if not text:
        return []
    width = len(ambient(nu).tuple_names) + 1
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = TUPLE_RE.fullmatch(chunk)
        if not m:
            raise UsageError(f"cannot parse generator {chunk!r}; expected a tuple like (0,0,0,2)")
        try:
            values = [int(v) for v in m.group(1).split(",")]
        except ValueError:
            raise UsageError(f"non-integer entry in {chunk!r}") from None
        if len(values) != width:
            raise UsageError(f"nu={nu} tuples have {width} entries, {chunk!r} has {len(values)}")
        out.append(GroupElement.from_tuple(nu, values))
    return out


def group_id_report(nu: int, generators: str, elements: bool = False) -> dict:
    check_nu(nu)
    case = builtin_config(nu)
    gens = parse_generators(nu, generators)
    g = generate(gens, nu, modulo_torsion=True)
    lab = identify(g)
    payload = {
        "generators": [list(e.as_tuple()) for e in g.generators],
        "order": g.order,
        "label": label_dict(lab),
        "abelian": g.is_abelian(),
    }
    if elements:
        payload["elements"] = [list(e.as_tuple()) for e in g.elements]
    return document("group-id", case, payload)


# -- renderers ----------------------------------------------------------------------


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _grid(headers: Sequence[str], rows: Iterable[Sequence[str]]) -> list[str]:
    rows = [list(map(str, r)) for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*headers).rstrip(), "  ".join("-" * w for w in widths)]
    out.extend(fmt.format(*r).rstrip() for r in rows)
    return out


def _header(doc: dict) -> str:
    return f"# {doc['kind']} nu={doc['case']} (godeaux {doc['tool_version']}, config {doc['config_digest']})"


def _fmt_tuple(values) -> str:
    return "(" + ",".join(map(str, values)) + ")"


def _fmt_label(lab: dict) -> str:
    return f"({lab['order']}, {lab['index']})"


def render_table(doc: dict) -> str:
    kind, p = doc["kind"], doc["payload"]
    lines = [_header(doc)]
    if kind == "strata":
        body = []
        for row in p["rows"]:
            first = True
            for s in row["strata"]:
                body.append(
                    [
                        row["label"]["name"] if first else "",
                        _fmt_label(row["label"]) if first else "",
                        s["name"],
                        "; ".join(s["equations"]) or "-",
                        s["dim"],
                        row["components"] if first else "",
                        "*" if first and row["bad"] else "",
                    ]
                )
                first = False
        lines += _grid(["Group", "Id", "Stratum", "Equations", "dim", "comps", "bad"], body)
        lines.append("")
        lines.append("Components and containments:")
        lines += _grid(
            ["Component", "dim", "Group", "bad", "members"],
            [[c["name"], c["dim"], c["label"]["name"], "*" if c["bad"] else "", ", ".join(c["members"])] for c in p["components"]],
        )
        for e in p["edges"]:
            lines.append(f"  {e['upper']} > {e['lower']}" + ("  (in the quotient only)" if e["quotient_only"] else ""))
    elif kind == "inertia":
        hist = ", ".join(f"{k}: {v}" for k, v in p["histogram"].items())
        lines.append(f"{len(p['components'])} components, {p['effective']} in the moduli space ({hist})")
        lines += _grid(
            ["Component", "dim", "Centralizer", "Id", "bad"],
            [
                [c["name"], c["fixed"]["dim"], c["centralizer"]["name"], _fmt_label(c["centralizer"]), "*" if c["bad"] else ""]
                for c in p["components"]
            ],
        )
        lines.append("")
        lines.append("Embedded automorphism groups of the chosen strata:")
        for name, gens in p["embedded"].items():
            width = len(ambient(doc["case"]).tuple_names) + 1
            inner = ", ".join(_fmt_tuple(g) for g in gens) or _fmt_tuple([0] * width)
            lines.append(f"  Aut({name}) = <{inner}>")
        for sub in p["subcomponents"]:
            lines.append("")
            lines.append(f"Subcomponents {sub['family']} (group {sub['group']['name']}):")
            lines += _grid(["Component", f"Aut({sub['family']})", "Id"], [[r["component"], r["group"]["name"], _fmt_label(r["group"])] for r in sub["rows"]])
        rhist = ", ".join(f"{k}: {v}" for k, v in p["raw_histogram"].items())
        lines.append("")
        lines.append(f"Raw fixed loci, one per element of H/G: {len(p['raw'])} ({rhist})")
        bad = [c["name"] for c in p["raw"] if c["bad"]]
        if bad:
            lines.append("  outside the moduli space: " + ", ".join(bad))
    elif kind == "equations":
        lines.append(f"twist u = {p['unit']} (h = {p['twist']}), congruences mod {p['modulus']}")
        for e in p["equations"]:
            pair = f"({', '.join(e['pair'])})" if e["pair"] else "(constant)"
            lines.append(f"  {e['relation']} {pair:<12} {e['text']}")
        sol = p["solution"]
        if not sol["solvable"]:
            lines.append("no solutions")
        else:
            for c in sol["constraints"]:
                lines.append(f"  constraint: {c}")
            for u, f in sol["unknowns"].items():
                lines.append(f"  {u} free" if f == u else f"  {u} = {f}")
    elif kind == "ambient":
        lines.append(f"|H| = {p['order']}  structure {p['structure']}")
        lines.append(f"|H/G| = {p['quotient_order']}  {p['quotient_label']['name']} {_fmt_label(p['quotient_label'])}")
        lines.append("tuples (" + ", ".join(p["tuple_names"]) + ")")
        lines.append("G = <" + _fmt_tuple(p["torsion_generator"]) + ">")
        lines.append("generators: " + ", ".join(_fmt_tuple(g) for g in p["generators"]))
    elif kind == "group-id":
        lines.append(f"order {p['order']}  {p['label']['name']} {_fmt_label(p['label'])}" + ("  abelian" if p["abelian"] else ""))
        if "elements" in p:
            lines.append("elements: " + ", ".join(_fmt_tuple(e) for e in p["elements"]))
    return "\n".join(lines) + "\n"


def render_dot(doc: dict) -> str:
    if doc["kind"] != "strata":
        raise UsageError("dot output is only available for strata")
    p = doc["payload"]
    lines = [f"digraph strata_nu{doc['case']} {{", "  rankdir=TB;", "  node [shape=box];"]
    for c in p["components"]:
        label = f"{c['name']}\\n(dim {c['dim']}, {c['label']['name']})"
        style = ", style=dashed" if c["bad"] else ""
        lines.append(f'  "{c["name"]}" [label="{label}"{style}];')
    for e in p["edges"]:
        style = " [style=dashed]" if e["quotient_only"] else ""
        lines.append(f'  "{e["upper"]}" -> "{e["lower"]}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    if fmt == "dot":
        return render_dot(doc)
    if fmt == "table":
        return render_table(doc)
    raise UsageError(f"unknown format {fmt}")


BUILDERS = {
    "strata": strata_report,
    "inertia": inertia_report,
    "equations": equations_report,
    "ambient": ambient_report,
    "group-id": group_id_report,
}
