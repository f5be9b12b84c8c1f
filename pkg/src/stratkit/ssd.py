"""SSD files: JSON descriptions of stratified spaces.

    {"space": expr}
    expr := {"atom": "T2"}                      shipped triangulation
          | {"atom": {"name", "vertices", "facets", "strata"?}}
          | {"cone": expr} | {"susp": expr}
          | {"join": [expr, expr]} | {"prod": [expr, expr]}

An inline atom may carry a stratification::

    "strata": {"elements": [...], "order": [[lower, upper], ...],
               "closures": {label: [simplex, ...]}}

``closures[a]`` lists simplices generating the closed stratum X_{<=a}
(closures of lower strata are added automatically). At most one element
may be left out of ``closures``; its closure is the whole complex. Each
simplex is labelled by the unique minimal stratum whose closure holds it.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from importlib import resources
from itertools import combinations
from pathlib import Path

from . import desc as sd
from .complex import FilteredComplex, SimplicialComplex
from .errors import ParseError, ValidationError
from .poset import Poset, PosetError

_WS = re.compile(r"\s*")
_KINDS = ("atom", "cone", "susp", "join", "prod")


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj) -> str:
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


def _locate(text: str | None, path: tuple) -> tuple[int | None, int | None]:
    """Line and column of the value at ``path`` inside ``text``."""
    if text is None:
        return None, None
    dec = json.JSONDecoder()
    try:
        i = _WS.match(text, 0).end()
        for key in path:
            if text[i] == "{":
                i = _WS.match(text, i + 1).end()
                while True:
                    k, i = dec.raw_decode(text, i)
                    i = _WS.match(text, i).end() + 1
                    i = _WS.match(text, i).end()
                    if k == key:
                        break
                    _, i = dec.raw_decode(text, i)
                    i = _WS.match(text, i).end() + 1
                    i = _WS.match(text, i).end()
            else:
                i = _WS.match(text, i + 1).end()
                for _ in range(key):
                    _, i = dec.raw_decode(text, i)
                    i = _WS.match(text, i).end() + 1
                    i = _WS.match(text, i).end()
    except (ValueError, IndexError):
        return None, None
    line = text.count("\n", 0, i) + 1
    return line, i - (text.rfind("\n", 0, i) + 1) + 1


class _Parser:
    def __init__(self, text: str | None):
        self.text = text

    def parse_error(self, msg, path):
        line, col = _locate(self.text, path)
        where = "/".join(str(p) for p in path)
        return ParseError(f"{msg} at {where or '<root>'}", line, col)

    def expr(self, e, path):
        if not isinstance(e, dict) or len(e) != 1:
            raise ValidationError(f"expression at {'/'.join(map(str, path))} must be an object "
                                  f"with exactly one of {', '.join(_KINDS)}")
        (kind, body), = e.items()
        sub = path + (kind,)
        if kind == "atom":
            return self.atom(body, sub)
        if kind == "cone":
            return sd.Cone(self.expr(body, sub))
        if kind == "susp":
            return sd.Suspension(self.expr(body, sub))
        if kind in ("join", "prod"):
            if not isinstance(body, list) or len(body) != 2:
                raise ValidationError(f"{kind} at {'/'.join(map(str, sub))} takes exactly two operands")
            a, b = (self.expr(x, sub + (i,)) for i, x in enumerate(body))
            return sd.Join(a, b) if kind == "join" else sd.Product(a, b)
        raise ValidationError(f"unknown expression kind {kind!r}; expected one of {', '.join(_KINDS)}")

    def atom(self, body, path):
        if isinstance(body, str):
            return sd.atom(body)
        if not isinstance(body, dict):
            raise ValidationError("atom must be a shipped name or an object")
        extra = set(body) - {"name", "vertices", "facets", "strata"}
        if extra:
            raise ValidationError(f"unknown atom field {sorted(extra)[0]!r}")
        n = body.get("vertices")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise self.parse_error("atom vertex count must be a positive integer", path + ("vertices",))
        facets = body.get("facets")
        if not isinstance(facets, list) or not facets:
            raise self.parse_error("atom needs a non-empty facet list", path + ("facets",))
        simplices = [self.simplex(f, n, path + ("facets", i)) for i, f in enumerate(facets)]
        used = {v for s in simplices for v in s}
        if len(used) != n:
            missing = min(set(range(n)) - used)
            raise ValidationError(f"face closure: vertex {missing} lies in no facet")
        K = SimplicialComplex(simplices, n)
        strata = body.get("strata")
        fc = FilteredComplex.trivial(K) if strata is None else self.filtration(K, strata, path + ("strata",))
        return sd.Atom(str(body.get("name", "atom")), fc)

    def simplex(self, f, n, path):
        if not isinstance(f, list) or not f:
            raise self.parse_error("simplex must be a non-empty list of vertex indices", path)
        for j, v in enumerate(f):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise self.parse_error(f"vertex index {v!r} outside 0..{n - 1}", path + (j,))
        if len(set(f)) != len(f):
            raise self.parse_error("repeated vertex in simplex", path)
        return tuple(sorted(f))

    def filtration(self, K, strata, path):
        if not isinstance(strata, dict):
            raise ValidationError("strata must be an object")
        elements = strata.get("elements")
        if not isinstance(elements, list) or not elements or not all(isinstance(a, str) for a in elements):
            raise ValidationError("strata.elements must be a non-empty list of labels")
        try:
            poset = Poset(elements, [tuple(r) for r in strata.get("order", [])])
        except (PosetError, TypeError, ValueError) as exc:
            raise ValidationError(f"strata.order is not a partial order: {exc}") from None
        closures = strata.get("closures", {})
        if not isinstance(closures, dict):
            raise ValidationError("strata.closures must be an object")
        for a in closures:
            if a not in poset:
                raise ValidationError(f"closure given for unknown stratum {a!r}")
        unlisted = [a for a in poset.elements if a not in closures]
        if len(unlisted) > 1:
            raise ValidationError(f"strata {unlisted} have no closure; at most one may default")
        if unlisted and poset.up_set(unlisted[0]) != [unlisted[0]]:
            raise ValidationError(f"default stratum {unlisted[0]!r} must be maximal")
        closed: dict[str, set] = {}
        for a in poset.linear_extension():
            if a not in closures:
                closed[a] = set(K)
                continue
            gens = closures[a]
            if not isinstance(gens, list):
                raise ValidationError(f"closure of {a!r} must be a list of simplices")
            cl = set()
            for i, g in enumerate(gens):
                s = self.simplex(g, len(K.simplices[0]), path + ("closures", a, i))
                if s not in K:
                    raise ValidationError(f"closure of {a!r}: {list(s)} is not a simplex of the atom")
                for k in range(1, len(s) + 1):
                    cl.update(combinations(s, k))
            for b in poset.down_set(a):
                if b != a:
                    cl |= closed[b]
            closed[a] = cl
        labels = {}
        for s in K:
            holders = [a for a in poset.elements if s in closed[a]]
            low = [a for a in holders if not any(b != a and poset.leq(b, a) for b in holders)]
            if len(low) != 1:
                raise ValidationError(
                    f"filtration: simplex {list(s)} has {len(low)} minimal strata {low}; closures are "
                    "not compatible with the order")
            labels[s] = low[0]
        return FilteredComplex(K, poset, labels)


def load_json(source) -> tuple[object, str | None]:
    """(document, raw text); ``source`` is a path, JSON text or an already parsed object."""
    if isinstance(source, (dict, list)):
        return source, None
    if isinstance(source, os.PathLike) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        text = Path(resolve_path(str(source))).read_text()
    else:
        text = source
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def parse_document(doc, text: str | None = None) -> sd.SpaceDesc:
    if not isinstance(doc, dict) or "space" not in doc:
        raise ValidationError('SSD document must be an object with a "space" field')
    d = _Parser(text).expr(doc["space"], ("space",))
    sd.dim(d)
    return d


def parse_ssd(source) -> sd.SpaceDesc:
    """Parse a path, JSON text, or decoded document into a validated description."""
    doc, text = load_json(source)
    return parse_document(doc, text)


# -- serialization ---------------------------------------------------------


def _atom_json(a: sd.Atom):
    try:
        if a.fc == sd.atom(a.name).fc:
            return a.name
    except ValidationError:
        pass
    fc = a.fc
    K = fc.complex
    body = {"name": a.name, "vertices": len(K.simplices[0]), "facets": [list(s) for s in K.facets]}
    if fc != FilteredComplex.trivial(K):
        order = [list(r) for r in fc.poset.hasse]
        closures = {}
        for b in fc.poset.elements:
            tops = [s for s, lab in fc.labels.items() if lab == b]
            # generators: simplices of this stratum not a face of another one
            gens = [s for s in tops if not any(len(t) > len(s) and set(s) < set(t) for t in tops)]
            closures[b] = [list(s) for s in sorted(gens)]
        top = fc.poset.maximal()
        if len(top) == 1:
            del closures[top[0]]  # the default stratum
        body["strata"] = {"elements": list(fc.poset.elements), "order": order, "closures": closures}
    return body


def dumps(doc) -> str:
    """Indented JSON with flat lists kept on one line."""
    text = json.dumps(doc, indent=1)
    return re.sub(r"\[[^\[\]{}]*\]", lambda m: json.dumps(json.loads(m.group(0))), text) + "\n"


def to_json(d: sd.SpaceDesc):
    """Expression for ``d``; ``parse_document({"space": to_json(d)})`` gives back ``d``."""
    if isinstance(d, sd.Atom):
        return {"atom": _atom_json(d)}
    if isinstance(d, sd.Cone):
        return {"cone": to_json(d.inner)}
    if isinstance(d, sd.Suspension):
        return {"susp": to_json(d.inner)}
    if isinstance(d, sd.Join):
        if d.merge != sd.Join(d.left, d.right).merge:
            raise ValidationError("join with non-default folding has no SSD form")
        return {"join": [to_json(d.left), to_json(d.right)]}
    if isinstance(d, sd.Product):
        return {"prod": [to_json(d.left), to_json(d.right)]}
    raise ValidationError(f"{type(d).__name__} has no SSD form")


# -- shipped examples ------------------------------------------------------


def examples_dir():
    return resources.files("stratkit").joinpath("examples")


def example_names() -> list[str]:
    return sorted(p.name for p in examples_dir().iterdir() if p.name.endswith(".ssd"))


def manifest() -> dict:
    return json.loads(examples_dir().joinpath("manifest.json").read_text())


def resolve_path(name: str) -> str:
    """A path as given if it exists, else the shipped example of that name."""
    if os.path.exists(name):
        return name
    shipped = examples_dir().joinpath(Path(name).name)
    if shipped.is_file():
        return str(shipped)
    raise ValidationError(f"no such file or shipped example: {name}")
