"""Small-group identification by invariant fingerprints.

The catalog data lives in ``data/catalog.json`` and is produced by
``scripts/catalog_oracle.py`` from explicit constructions of each group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .groups import FiniteGroup, Fingerprint, fingerprint


class NoMatch(LookupError):
    pass


class AmbiguousMatch(LookupError):
    pass


@dataclass(frozen=True, order=True)
class CatalogLabel:
    order: int
    index: int
    name: str = ""

    def __str__(self):
        return f"({self.order}, {self.index})"

    def as_dict(self) -> dict:
        return {"order": self.order, "index": self.index, "name": self.name}


@lru_cache(maxsize=None)
def catalog() -> tuple[tuple[CatalogLabel, Fingerprint], ...]:
    text = resources.files("godeaux").joinpath("data/catalog.json").read_text()
    rows = json.loads(text)
    return tuple((CatalogLabel(r["order"], r["index"], r["name"]), Fingerprint.from_list(r["fingerprint"])) for r in rows)


def label(order: int, index: int) -> CatalogLabel:
    for lab, _ in catalog():
        if (lab.order, lab.index) == (order, index):
            return lab
    raise NoMatch(f"({order}, {index}) is not in the catalog")


def identify_fingerprint(fp: Fingerprint) -> CatalogLabel:
    hits = [lab for lab, f in catalog() if f == fp]
    if not hits:
        raise NoMatch(f"no catalog group has fingerprint {fp.as_list()}")
    if len(hits) > 1:
        raise AmbiguousMatch(f"fingerprint {fp.as_list()} matches {[str(h) for h in hits]}")
    return hits[0]


def identify(g: FiniteGroup) -> CatalogLabel:
    return identify_fingerprint(fingerprint(g))
