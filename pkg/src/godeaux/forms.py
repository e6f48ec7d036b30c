"""Integer linear forms over named symbols, and modular equations built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class LinearForm:
    """``sum(coeffs[s] * s) + const`` with integer coefficients.

    Zero coefficients are never stored, so structural equality is meaningful.
    """

    coeffs: tuple[tuple[str, int], ...] = ()
    const: int = 0

    @classmethod
    def of(cls, coeffs: Mapping[str, int] | None = None, const: int = 0) -> "LinearForm":
        items = tuple(sorted((s, c) for s, c in (coeffs or {}).items() if c))
        return cls(items, const)

    @classmethod
    def symbol(cls, name: str, coef: int = 1) -> "LinearForm":
        return cls.of({name: coef})

    @property
    def mapping(self) -> dict[str, int]:
        return dict(self.coeffs)

    def symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs and not self.const

    def __add__(self, other: "LinearForm") -> "LinearForm":
        m = self.mapping
        for s, c in other.coeffs:
            m[s] = m.get(s, 0) + c
        return LinearForm.of(m, self.const + other.const)

    def __neg__(self) -> "LinearForm":
        return LinearForm.of({s: -c for s, c in self.coeffs}, -self.const)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scale(self, k: int) -> "LinearForm":
        return LinearForm.of({s: k * c for s, c in self.coeffs}, k * self.const)

    def reduce(self, n: int) -> "LinearForm":
        return LinearForm.of({s: c % n for s, c in self.coeffs}, self.const % n)

    def restrict(self, keep: Iterable[str]) -> "LinearForm":
        keep = set(keep)
        return LinearForm.of({s: c for s, c in self.coeffs if s in keep}, self.const)

    def rename(self, table: Mapping[str, str]) -> "LinearForm":
        m: dict[str, int] = {}
        for s, c in self.coeffs:
            t = table.get(s, s)
            m[t] = m.get(t, 0) + c
        return LinearForm.of(m, self.const)

    def evaluate(self, values: Mapping[str, int]) -> int:
        return self.const + sum(c * values[s] for s, c in self.coeffs)

    def substitute(self, table: Mapping[str, "LinearForm"]) -> "LinearForm":
        out = LinearForm.of({}, self.const)
        for s, c in self.coeffs:
            out = out + (table[s].scale(c) if s in table else LinearForm.symbol(s, c))
        return out

    def render(self, order: Iterable[str] | None = None) -> str:
        m = self.mapping
        names = list(order) if order is not None else sorted(m)
        names = [s for s in names if s in m] + sorted(s for s in m if s not in set(names))
        parts = []
        for s in names:
            c = m[s]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = s if mag == 1 else f"{mag}{s}"
            parts.append((sign, body))
        if self.const or not parts:
            parts.append(("-" if self.const < 0 else "+", str(abs(self.const))))
        text = "".join(f" {sg} {b}" for sg, b in parts).strip()
        if text.startswith("+ "):
            text = text[2:]
        elif text.startswith("- "):
            text = "-" + text[2:]
        return text

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class ModularEquation:
    """``lhs == rhs (mod modulus)``; ``provenance`` records where it came from."""

    lhs: LinearForm
    rhs: int
    modulus: int
    provenance: tuple = field(default=(), compare=False)

    def normalized(self) -> "ModularEquation":
        """Move the constant of ``lhs`` to the right and reduce everything."""
        n = self.modulus
        lhs = LinearForm.of({s: c % n for s, c in self.lhs.coeffs})
        return ModularEquation(lhs, (self.rhs - self.lhs.const) % n, n, self.provenance)

    def is_trivial(self) -> bool:
        e = self.normalized()
        return not e.lhs.coeffs and e.rhs == 0

    def holds(self, values: Mapping[str, int]) -> bool:
        return (self.lhs.evaluate(values) - self.rhs) % self.modulus == 0

    def render(self, order=None) -> str:
        return f"{self.lhs.render(order)} = {self.rhs % self.modulus} (mod {self.modulus})"
