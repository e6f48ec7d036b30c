"""Rebuild the small-group catalog fingerprints from explicit constructions.

Each catalog group is built here from scratch (cyclic groups, semidirect
products given by an explicit action, a Gaussian-integer matrix group, a
permutation group) and fingerprinted with a self-contained routine that
shares no code with the package.  Run it to regenerate the shipped data:

    python scripts/catalog_oracle.py > src/godeaux/data/catalog.json
"""

from __future__ import annotations

import json
import sys
from collections import Counter
from itertools import product


def cyclic(n):
    return list(range(n)), (lambda a, b: (a + b) % n), 0


def direct(*factors):
    elems = [tuple(t) for t in product(*[f[0] for f in factors])]

    def mul(a, b):
        return tuple(f[1](x, y) for f, x, y in zip(factors, a, b))

    return elems, mul, tuple(f[2] for f in factors)


def semidirect_cyclic(n, m, r):
    """Z_n : Z_m where the generator of Z_m acts on Z_n as multiplication by r."""
    assert pow(r, m, n) == 1 % n
    elems = [(x, k) for x in range(n) for k in range(m)]

    def mul(a, b):
        return ((a[0] + pow(r, a[1], n) * b[0]) % n, (a[1] + b[1]) % m)

    return elems, mul, (0, 0)


def affine_diag(p, rs, m):
    """(Z_p)^k : Z_m, the generator acting by diag(rs)."""
    k = len(rs)
    elems = [(v, t) for v in product(range(p), repeat=k) for t in range(m)]

    def mul(a, b):
        (v, s), (w, t) = a, b
        return (tuple((x + pow(r, s, p) * y) % p for x, y, r in zip(v, w, rs)), (s + t) % m)

    return elems, mul, ((0,) * k, 0)


def closure(gens, mul, one):
    seen = {one}
    todo = [one]
    while todo:
        x = todo.pop()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return sorted(seen), mul, one


def perm_group(gens, n):
    def mul(a, b):
        # apply b first, then a, matching composition of maps
        return tuple(a[b[i]] for i in range(n))

    return closure([tuple(g) for g in gens], mul, tuple(range(n)))


def gaussian_matrix_group(gens):
    """2x2 matrices over Z[i]; entries stored as (re, im)."""

    def cmul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def cadd(x, y):
        return (x[0] + y[0], x[1] + y[1])

    def mul(a, b):
        return tuple(
            tuple(cadd(cmul(a[i][0], b[0][j]), cmul(a[i][1], b[1][j])) for j in range(2)) for i in range(2)
        )

    one = (((1, 0), (0, 0)), ((0, 0), (1, 0)))
    return closure(gens, mul, one)


def fingerprint(group):
    elems, mul, one = group
    n = len(elems)

    def power_order(x):
        k, y = 1, x
        while y != one:
            y = mul(y, x)
            k += 1
        return k

    hist = sorted(Counter(power_order(x) for x in elems).items())
    center = [z for z in elems if all(mul(z, x) == mul(x, z) for x in elems)]
    inv = {x: next(y for y in elems if mul(x, y) == one) for x in elems}
    derived = {one}
    gens = {mul(mul(a, b), mul(inv[a], inv[b])) for a in elems for b in elems}
    grow = True
    while grow:
        new = {mul(x, g) for x in derived for g in gens} | derived
        grow = len(new) > len(derived)
        derived = new
    # abelianization: element orders in G / G'
    cosets = {}
    for x in elems:
        key = frozenset(mul(x, d) for d in derived)
        cosets.setdefault(key, x)
    ab_orders = []
    for key, x in cosets.items():
        k, y = 1, x
        while y not in derived:
            y = mul(y, x)
            k += 1
        ab_orders.append(k)
    return [n, [list(p) for p in hist], len(center), len(derived), elementary_divisors(ab_orders)]


def elementary_divisors(orders):
    n = len(orders)
    out = []
    for p in range(2, n + 1):
        if n % p or any(p % q == 0 for q in range(2, p)):
            continue
        # sizes of the p^k-torsion subgroups
        sizes = []
        k = 0
        while True:
            sizes.append(sum(1 for o in orders if (p ** k) % o == 0))
            if k and sizes[-1] == sizes[-2]:
                break
            k += 1
        logs = []
        for s in sizes:
            e = 0
            while s > 1:
                s //= p
                e += 1
            logs.append(e)
        ge = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        for j, cnt in enumerate(ge):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            out += [p ** (j + 1)] * (cnt - nxt)
    return sorted(out)


def catalog():
    i = (0, 1)
    z = (0, 0)
    o = (1, 0)
    m = (-1, 0)
    pauli_x = ((z, o), (o, z))
    pauli_z = ((o, z), (z, m))
    i_scalar = ((i, z), (z, i))
    d8 = perm_group([(1, 2, 3, 0), (0, 3, 2, 1)], 4)
    wreath = perm_group([(1, 2, 3, 0, 4, 5, 6, 7), (4, 5, 6, 7, 0, 1, 2, 3)], 8)
    return [
        (1, 1, "1", cyclic(1)),
        (2, 1, "Z_2", cyclic(2)),
        (4, 1, "Z_4", cyclic(4)),
        (4, 2, "Z_2^2", direct(cyclic(2), cyclic(2))),
        (5, 1, "Z_5", cyclic(5)),
        (6, 1, "S_3", perm_group([(1, 2, 0), (1, 0, 2)], 3)),
        (8, 1, "Z_8", cyclic(8)),
        (8, 2, "Z_4 x Z_2", direct(cyclic(4), cyclic(2))),
        (8, 3, "D_8", d8),
        (10, 1, "D_10", semidirect_cyclic(5, 2, 4)),
        (10, 2, "Z_10", cyclic(10)),
        (16, 2, "Z_4^2", direct(cyclic(4), cyclic(4))),
        (16, 10, "Z_4 x Z_2^2", direct(cyclic(4), cyclic(2), cyclic(2))),
        (16, 11, "Z_2 x D_8", direct(cyclic(2), d8)),
        (16, 13, "(Z_4 x Z_2) : Z_2", gaussian_matrix_group([pauli_x, pauli_z, i_scalar])),
        (16, 14, "Z_2^4", direct(cyclic(2), cyclic(2), cyclic(2), cyclic(2))),
        (20, 1, "Z_5 : Z_4", semidirect_cyclic(5, 4, 4)),
        (20, 3, "Z_5 : Z_4 (Frobenius)", semidirect_cyclic(5, 4, 2)),
        (25, 2, "Z_5^2", direct(cyclic(5), cyclic(5))),
        (32, 11, "Z_4^2 : Z_2", wreath),
        (50, 3, "Z_5 x D_10", direct(cyclic(5), semidirect_cyclic(5, 2, 4))),
        (100, 10, "Z_5^2 : Z_4", affine_diag(5, (2, 4), 4)),
    ]


def main(out=sys.stdout):
    rows = [{"order": o, "index": k, "name": name, "fingerprint": fingerprint(g)} for o, k, name, g in catalog()]
    for row in rows:
        assert row["fingerprint"][0] == row["order"], row["name"]
    json.dump(rows, out, indent=1)
    out.write("\n")


if __name__ == "__main__":
    main()
