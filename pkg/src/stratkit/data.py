"""Shipped triangulations, checked by homology ranks when loaded."""

from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources

from .complex import FilteredComplex, SimplicialComplex
from .errors import ValidationError

_FILES = ("T2", "RP2", "CP2")


def names() -> list[str]:
    return ["pt", "S0", "S1", "S2", "S3", "S4", "S<n>", *_FILES]


@lru_cache(maxsize=None)
def triangulation(name: str) -> SimplicialComplex:
    if name == "pt":
        return SimplicialComplex([(0,)])
    m = re.fullmatch(r"S(\d+)", name)
    if m:
        return SimplicialComplex.boundary_of_simplex(int(m.group(1)) + 1)
    if name not in _FILES:
        raise ValidationError(f"no shipped triangulation named {name!r}")
    raw = json.loads(resources.files("stratkit").joinpath("data", f"{name}.json").read_text())
    K = SimplicialComplex(raw["facets"], raw["vertices"])
    got = K.homology_ranks()
    if got != raw["homology"]:
        raise ValidationError(f"shipped {name} has homology ranks {got}, expected {raw['homology']}")
    return K


def atom_complex(name: str) -> FilteredComplex:
    return FilteredComplex.trivial(triangulation(name))
