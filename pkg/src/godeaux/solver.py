"""Linear congruence systems with unknowns and parameters.

Unknowns are the exponents ``i_*`` of a candidate automorphism; parameters are
the ratio exponents ``n_*``, ``m_*`` between permuted coefficients.  Solving
eliminates unknowns first, so whatever survives about the parameters alone is
a constraint that no choice of unknowns can remove.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence

from .forms import LinearForm, ModularEquation
from .zmod import ZModMatrix, enumerate_solutions, howell_rows, solve_affine


class UndeclaredSymbol(ValueError):
    pass


class NotAffine(ValueError):
    """The unknowns cannot be written as affine forms in the parameters."""


@dataclass(frozen=True)
class ParamSystem:
    equations: tuple[ModularEquation, ...]
    unknowns: tuple[str, ...]
    parameters: tuple[str, ...]
    modulus: int

    def __post_init__(self):
        declared = set(self.unknowns) | set(self.parameters)
        for eq in self.equations:
            extra = set(eq.lhs.symbols()) - declared
            if extra:
                raise UndeclaredSymbol(f"undeclared symbols {sorted(extra)} in {eq.render()}")

    def elimination_order(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        """Columns are eliminated from the last declared symbol, so earlier ones stay free."""
        return tuple(reversed(self.unknowns)), tuple(reversed(self.parameters))

    def matrix_rows(self) -> list[list[int]]:
        eu, ep = self.elimination_order()
        cols = list(eu) + list(ep)
        rows = []
        n = self.modulus
        for eq in self.equations:
            e = eq.normalized()
            m = e.lhs.mapping
            rows.append([m.get(c, 0) % n for c in cols] + [(-e.rhs) % n])
        return rows


@dataclass(frozen=True)
class _PivotRow:
    unknown: int
    pivot: int
    row: tuple[int, ...]


@dataclass(frozen=True)
class ParametricSolution:
    """Result of :func:`solve`.

    ``unknown_exprs`` maps each unknown to an affine form in parameters and in
    the free symbols ``free.<u>`` (a fully free unknown) or ``half.<u>`` (the
    residual choice left by a non-unit pivot).  It is ``None`` when some
    unknown depends on the parameters non-affinely, which can only happen for
    composite moduli; :func:`solutions_at` works in every case.
    """

    unknowns: tuple[str, ...]
    parameters: tuple[str, ...]
    modulus: int
    param_constraints: tuple[ModularEquation, ...]
    unknown_exprs: Mapping[str, LinearForm] | None
    empty: bool
    pivots: tuple[_PivotRow, ...]
    elim_unknowns: tuple[str, ...] = ()
    elim_parameters: tuple[str, ...] = ()

    def free_choices(self) -> list[tuple[str, int, int]]:
        """(symbol, number of values, step) for every free direction."""
        n = self.modulus
        pivot_for = {p.unknown: p.pivot for p in self.pivots}
        out = []
        for j, u in enumerate(self.elim_unknowns):
            if j not in pivot_for:
                out.append((f"free.{u}", n, 1))
            elif pivot_for[j] != 1:
                p = pivot_for[j]
                out.append((f"half.{u}", p, n // p))
        return out


def solve(s: ParamSystem) -> ParametricSolution:
    """Howell-form elimination with unknowns ordered before parameters."""
    n = s.modulus
    ku, kp = len(s.unknowns), len(s.parameters)
    eu, ep = s.elimination_order()
    ncols = ku + kp + 1
    rows = howell_rows(s.matrix_rows(), n, ncols)
    pivots = []
    constraints = []
    empty = False
    for row in rows:
        c = next(j for j, x in enumerate(row) if x)
        if c < ku:
            pivots.append(_PivotRow(c, row[c], tuple(row)))
        elif c < ku + kp:
            lhs = LinearForm.of({ep[j - ku]: row[j] for j in range(ku, ku + kp)})
            constraints.append(ModularEquation(lhs, (-row[-1]) % n, n, ("constraint",)))
        else:
            empty = True
    exprs = None if empty else _affine_exprs(s, pivots)
    return ParametricSolution(s.unknowns, s.parameters, n, tuple(constraints), exprs, empty, tuple(pivots), eu, ep)


def _affine_exprs(s: ParamSystem, pivots: Sequence[_PivotRow]) -> dict[str, LinearForm] | None:
    n = s.modulus
    ku = len(s.unknowns)
    eu, ep = s.elimination_order()
    by_unknown = {p.unknown: p for p in pivots}
    exprs: dict[str, LinearForm] = {}
    for j in reversed(range(ku)):
        u = eu[j]
        if j not in by_unknown:
            exprs[u] = LinearForm.symbol(f"free.{u}")
            continue
        pr = by_unknown[j]
        # pivot * u_j = -(sum_{l>j} a_l u_l + sum b p + c)
        rest = LinearForm.of({}, -pr.row[-1])
        for l in range(j + 1, ku):
            if pr.row[l]:
                rest = rest - exprs[eu[l]].scale(pr.row[l])
        for l, p in enumerate(ep):
            if pr.row[ku + l]:
                rest = rest - LinearForm.symbol(p, pr.row[ku + l])
        rest = rest.reduce(n)
        p = pr.pivot
        if p == 1:
            exprs[u] = rest
            continue
        if any(c % p for _, c in rest.coeffs) or rest.const % p:
            return None
        base = LinearForm.of({t: c // p for t, c in rest.coeffs}, rest.const // p)
        exprs[u] = base + LinearForm.symbol(f"half.{u}", n // p)
    return {u: exprs[u].reduce(n) for u in s.unknowns}


def solutions_at(sol: ParametricSolution, params: Mapping[str, int]) -> list[tuple[int, ...]]:
    """All unknown vectors solving the system at concrete parameter values."""
    if sol.empty:
        return []
    n = sol.modulus
    ku = len(sol.unknowns)
    for c in sol.param_constraints:
        if not c.holds(params):
            return []
    by_unknown = {p.unknown: p for p in sol.pivots}
    partial: list[dict[int, int]] = [{}]
    for j in reversed(range(ku)):
        nxt = []
        for vals in partial:
            if j not in by_unknown:
                for v in range(n):
                    d = dict(vals)
                    d[j] = v
                    nxt.append(d)
                continue
            pr = by_unknown[j]
            rhs = -pr.row[-1]
            rhs -= sum(pr.row[l] * vals[l] for l in range(j + 1, ku))
            rhs -= sum(pr.row[ku + l] * params[p] for l, p in enumerate(sol.elim_parameters))
            rhs %= n
            p = pr.pivot
            if rhs % p:
                continue
            for t in range(p):
                d = dict(vals)
                d[j] = (rhs // p + t * (n // p)) % n
                nxt.append(d)
        partial = nxt
    pos = {u: j for j, u in enumerate(sol.elim_unknowns)}
    return sorted(tuple(d[pos[u]] for u in sol.unknowns) for d in partial)


def iter_solutions(sol: ParametricSolution) -> Iterator[tuple[LinearForm, ...]]:
    """Unknown assignments as affine forms in the parameters, one per free choice."""
    if sol.empty:
        raise ValueError("the system has no solutions")
    if sol.unknown_exprs is None:
        raise NotAffine("unknowns depend non-affinely on parameters; use solutions_at")
    choices = sol.free_choices()
    n = sol.modulus
    for combo in product(*[range(cnt) for _, cnt, _ in choices]):
        values = {sym: v for (sym, _, _), v in zip(choices, combo)}
        # the stored expression already carries the step for half-free symbols
        subst = {sym: LinearForm.of({}, v) for sym, v in values.items()}
        yield tuple(sol.unknown_exprs[u].substitute(subst).reduce(n) for u in sol.unknowns)


def iter_pars_solutions(sol: ParametricSolution) -> Iterator[dict[str, int]]:
    """Every parameter assignment compatible with the constraints.

    Constraints that no parameter value satisfies simply give no assignment;
    only a system that is inconsistent outright is an error.
    """
    if sol.empty:
        raise ValueError("the system has no solutions")
    if not sol.parameters:
        yield {}
        return
    n = sol.modulus
    rows = [[c.lhs.mapping.get(p, 0) for p in sol.parameters] for c in sol.param_constraints]
    rhs = [c.rhs for c in sol.param_constraints]
    m = ZModMatrix.from_rows(rows, n, len(sol.parameters))
    ss = solve_affine(m, rhs)
    if ss.empty:
        return
    for v in enumerate_solutions(ss):
        yield dict(zip(sol.parameters, v))


@dataclass(frozen=True)
class SampleSolutions:
    offset: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]


def gens_sample_solutions(sol: ParametricSolution) -> SampleSolutions:
    """Solutions with every parameter set to zero, as offset plus generators."""
    if sol.empty:
        raise ValueError("the system has no solutions")
    n = sol.modulus
    ku = len(sol.unknowns)
    pos = [sol.elim_unknowns.index(u) for u in sol.unknowns]
    rows = [[p.row[j] for j in pos] for p in sol.pivots]
    rhs = [(-p.row[-1]) % n for p in sol.pivots]
    m = ZModMatrix.from_rows(rows, n, ku) if rows else ZModMatrix.zero(0, ku, n)
    ss = solve_affine(m, rhs)
    if ss.empty:
        raise ValueError("no solution at the zero parameter sample")
    return SampleSolutions(ss.offset, ss.basis)
