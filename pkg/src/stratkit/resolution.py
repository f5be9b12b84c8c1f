"""Resolution of stratified descriptions into fibered-corner face data.

Singular strata are blown up in order of height, ties broken by label.
Blowing up a stratum a produces a boundary face fibering over the
resolved closure of a with fiber the resolved link of a. Two faces a < b
meet in a corner; there the face of b restricts to a bundle over the base
of a whose fiber is the link of a inside the closure of b.

Nothing is realized geometrically: records hold descriptions and the
dimensions that must fit together.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from . import desc as sd
from .desc import SpaceDesc
from .errors import NotPseudomanifold, ValidationError
from .poset import Poset, depth, is_linear_extension, pair_label, product as product_poset


@dataclass
class FaceRecord:
    label: str
    fiber_desc: SpaceDesc
    base_desc: SpaceDesc
    base_labels: dict
    fiber_dim: int
    base_dim: int
    fiber: "FiberedCorners | None" = field(default=None, repr=False)
    base: "FiberedCorners | None" = field(default=None, repr=False)

    def to_json(self):
        return {"label": self.label, "fiber": str(self.fiber_desc), "fiber_dim": self.fiber_dim,
                "base": str(self.base_desc), "base_dim": self.base_dim}


@dataclass
class CornerRecord:
    lower: str
    upper: str
    inner_label: str  # the lower stratum as a stratum of the upper closure
    total_dim: int  # dimension of the boundary face of the upper base
    fiber_desc: SpaceDesc
    fiber_dim: int
    base_desc: SpaceDesc
    base_dim: int

    def to_json(self):
        return {"lower": self.lower, "upper": self.upper, "total_dim": self.total_dim,
                "fiber": str(self.fiber_desc), "fiber_dim": self.fiber_dim,
                "base": str(self.base_desc), "base_dim": self.base_dim}


@dataclass
class FiberedCorners:
    desc: SpaceDesc
    poset: Poset
    total_dim: int
    faces: dict[str, FaceRecord]
    corners: dict[tuple[str, str], CornerRecord]
    order: list[str]
    interior: list[str]

    def to_json(self, deep: bool = True):
        out = {"space": str(self.desc), "total_dim": self.total_dim, "order": self.order,
               "interior": self.interior,
               "faces": [self.faces[a].to_json() for a in self.order],
               "corners": [c.to_json() for _, c in sorted(self.corners.items())]}
        if deep:
            for rec, face in zip(out["faces"], (self.faces[a] for a in self.order)):
                rec["fiber_resolution"] = face.fiber.to_json() if face.fiber else None
                rec["base_resolution"] = face.base.to_json() if face.base else None
        return out


def blowup_order(poset: Poset) -> list[str]:
    reg = set(poset.maximal())
    return sorted((a for a in poset if a not in reg), key=lambda a: (poset.height(a), a))


def resolve(d: SpaceDesc, _top: bool = True) -> FiberedCorners:
    if _top:
        ok, rep = sd.is_pseudomanifold(d)
        if not ok:
            raise NotPseudomanifold(rep.reason)
    poset = sd.strat_poset_of(d)
    dims = sd.stratum_dims(d)
    n = sd._top_dim(d)
    order = blowup_order(poset)
    faces = {}
    for a in order:
        link = sd.link_of(d, a)
        base, m = sd.closure_of(d, a)
        faces[a] = FaceRecord(a, link, base, m, sd._top_dim(link), dims[a],
                              resolve(link, False), resolve(base, False))
    corners = {}
    for b in order:
        base_b = faces[b].base_desc
        for a in order:
            if a == b or not poset.lt(a, b):
                continue
            inner = faces[b].base_labels[a]
            fiber = sd.link_of(base_b, inner)
            cbase, _ = sd.closure_of(base_b, inner)
            corners[(a, b)] = CornerRecord(a, b, inner, dims[b] - 1, fiber, sd._top_dim(fiber),
                                           cbase, sd._top_dim(cbase))
    return FiberedCorners(d, poset, n, faces, corners, order, poset.maximal())


@dataclass
class IFSReport:
    ok: bool = True
    problems: list[str] = field(default_factory=list)

    def fail(self, msg: str):
        self.ok = False
        self.problems.append(msg)

    def to_json(self):
        return {"ok": self.ok, "problems": self.problems}


def verify_ifs(f: FiberedCorners, _path: str = "") -> tuple[bool, IFSReport]:
    """Check the dimension equations, corner comparability, base compatibility and recursion."""
    rep = IFSReport()
    where = _path or str(f.desc)
    n = f.total_dim
    singular = {a for a in f.poset if a not in f.poset.maximal()}
    if set(f.faces) != singular:
        rep.fail(f"{where}: faces {sorted(f.faces)} do not match singular strata {sorted(singular)}")
    if len(f.poset) and singular:
        dp = depth(f.poset)
    else:
        dp = 0
    for a, face in f.faces.items():
        if face.fiber_dim + face.base_dim + 1 != n:
            rep.fail(f"{where}: face {a}: dim fiber {face.fiber_dim} + dim base {face.base_dim} + 1 != {n}")
        for part, sub in (("fiber", face.fiber), ("base", face.base)):
            if sub is None:
                continue
            want = face.fiber_dim if part == "fiber" else face.base_dim
            if sub.total_dim != want:
                rep.fail(f"{where}: face {a}: resolved {part} has dimension {sub.total_dim}, recorded {want}")
            if len(sub.poset) and depth(sub.poset) >= dp and dp > 0:
                rep.fail(f"{where}: face {a}: {part} depth {depth(sub.poset)} not below {dp}")
            ok, inner = verify_ifs(sub, f"{where}/{a}.{part}")
            if not ok:
                rep.ok = False
                rep.problems.extend(inner.problems)
    for (a, b), c in f.corners.items():
        label = f"{where}: corner ({a},{b})"
        if a not in f.poset or b not in f.poset or not f.poset.comparable(a, b):
            rep.fail(f"{label}: labels are not comparable")
            continue
        if a not in f.faces or b not in f.faces:
            rep.fail(f"{label}: missing face record")
            continue
        fb, fa = f.faces[b], f.faces[a]
        if c.total_dim != fb.base_dim - 1:
            rep.fail(f"{label}: corner face dimension {c.total_dim} != dim B_b - 1 = {fb.base_dim - 1}")
        if c.fiber_dim + c.base_dim != c.total_dim:
            rep.fail(f"{label}: fiber {c.fiber_dim} + base {c.base_dim} != {c.total_dim}")
        if fa.fiber_dim != fb.fiber_dim + c.fiber_dim + 1:
            rep.fail(f"{label}: fiber dimensions {fa.fiber_dim} != {fb.fiber_dim} + {c.fiber_dim} + 1")
        if c.base_dim != fa.base_dim or c.base_desc != fa.base_desc:
            rep.fail(f"{label}: corner base {c.base_desc} differs from base of face {a} ({fa.base_desc})")
        if fb.base is not None:
            inner = fb.base.faces.get(c.inner_label)
            if inner is None or inner.base_desc != fa.base_desc:
                rep.fail(f"{label}: base of face {b} has no face over the base of face {a}")
    for a in f.faces:
        for b in f.faces:
            if f.poset.lt(a, b) and (a, b) not in f.corners:
                rep.fail(f"{where}: comparable faces {a} < {b} have no corner record")
    return rep.ok, rep


# -- stratified bundles ----------------------------------------------------------


@dataclass
class GridFace:
    kind: str  # "vertical" or "horizontal"
    factor_label: str
    label: str
    fiber_desc: SpaceDesc
    base_desc: SpaceDesc
    fiber_dim: int
    base_dim: int
    pullback: bool

    def to_json(self):
        return {"kind": self.kind, "factor_label": self.factor_label, "label": self.label,
                "fiber": str(self.fiber_desc), "fiber_dim": self.fiber_dim,
                "base": str(self.base_desc), "base_dim": self.base_dim, "pullback": self.pullback}


@dataclass
class GridResolution:
    fiber: SpaceDesc
    base: SpaceDesc
    total_dim: int
    vertical: list[GridFace]
    horizontal: list[GridFace]
    schedule: list[tuple[str, str]]
    fiber_resolution: FiberedCorners = field(repr=False)
    base_resolution: FiberedCorners = field(repr=False)

    def schedule_ok(self) -> bool:
        return schedule_is_linear_extension(self.schedule, sd.strat_poset_of(self.fiber),
                                            sd.strat_poset_of(self.base))

    def pullbacks_ok(self) -> bool:
        return all(h.pullback for h in self.horizontal) and all(v.pullback for v in self.vertical)

    def to_json(self):
        return {"fiber": str(self.fiber), "base": str(self.base), "total_dim": self.total_dim,
                "vertical": [v.to_json() for v in self.vertical],
                "horizontal": [h.to_json() for h in self.horizontal],
                "schedule": [list(p) for p in self.schedule],
                "schedule_is_linear_extension": self.schedule_ok(),
                "pullbacks": self.pullbacks_ok()}


def _unique_top(d: SpaceDesc, role: str) -> str:
    top = sd.regular_labels(d)
    if len(top) != 1:
        raise ValidationError(f"{role} {d} must have a connected regular part, has strata {top}")
    return top[0]


def _times(w: SpaceDesc, b: SpaceDesc) -> SpaceDesc:
    if sd._is_point(b):
        return w
    if sd._is_point(w):
        return b
    return sd.Product(w, b)


def resolve_bundle(fiber: SpaceDesc, base: SpaceDesc) -> GridResolution:
    """Grid resolution of the product bundle fiber x base, fiber first."""
    for d in (fiber, base):
        ok, rep = sd.is_pseudomanifold(d)
        if not ok:
            raise NotPseudomanifold(rep.reason)
    top_w = _unique_top(fiber, "fiber")
    top_y = _unique_top(base, "base")
    X = sd.Product(fiber, base)
    res_w = resolve(fiber)
    res_y = resolve(base)
    # closure of (a, top) is cl(a) x cl(top); cl(top) is the factor up to its folding
    cl_w, _ = sd.closure_of(fiber, top_w)
    cl_y, _ = sd.closure_of(base, top_y)
    vertical = []
    for a in res_w.order:
        lab = pair_label(a, top_y)
        link = sd.link_of(X, lab)
        cl, _ = sd.closure_of(X, lab)
        expect_base = _times(res_w.faces[a].base_desc, cl_y)
        ok = link == res_w.faces[a].fiber_desc and cl == expect_base
        vertical.append(GridFace("vertical", a, lab, link, cl, sd._top_dim(link), sd._top_dim(cl), ok))
    horizontal = []
    for alpha in res_y.order:
        lab = pair_label(top_w, alpha)
        link = sd.link_of(X, lab)
        cl, _ = sd.closure_of(X, lab)
        # pull-back square: same fiber as the base face, total space fibers over its base with fiber W
        expect_base = _times(cl_w, res_y.faces[alpha].base_desc)
        ok = link == res_y.faces[alpha].fiber_desc and cl == expect_base
        horizontal.append(GridFace("horizontal", alpha, lab, link, cl, sd._top_dim(link), sd._top_dim(cl), ok))
    sched = blowup_schedule(sd.strat_poset_of(fiber), sd.strat_poset_of(base))
    return GridResolution(fiber, base, sd._top_dim(X), vertical, horizontal, sched, res_w, res_y)


def blowup_schedule(sw: Poset, sy: Poset) -> list[tuple[str, str]]:
    """Pairs of singular strata in a deterministic linear extension of the product order."""
    sing_w = [a for a in sw if a not in sw.maximal()]
    sing_y = [b for b in sy if b not in sy.maximal()]
    pairs = [(a, b) for a in sing_w for b in sing_y]
    return sorted(pairs, key=lambda p: (sw.height(p[0]) + sy.height(p[1]), p[0], p[1]))


def schedule_is_linear_extension(schedule, sw: Poset, sy: Poset) -> bool:
    pairs = {pair_label(a, b): (a, b) for a, b in schedule}
    full = product_poset(sw, sy).restrict(pairs)
    return is_linear_extension([pair_label(a, b) for a, b in schedule], full)


# -- random descriptions -------------------------------------------------------------


MANIFOLD_ATOMS = ("S1", "S2", "T2")


def random_desc(rng: Random, depth_left: int = 3, max_dim: int = 6) -> SpaceDesc:
    """Random pseudomanifold description with Cone/Join nesting at most ``depth_left``.

    Dimensions are capped to keep links and closures small; atoms are
    manifolds of dimension at least one.
    """
    for _ in range(50):
        d = _random(rng, depth_left)
        if sd._top_dim(d) <= max_dim:
            return d
    return sd.atom(rng.choice(MANIFOLD_ATOMS))


def _random(rng: Random, depth_left: int) -> SpaceDesc:
    if depth_left == 0 or rng.random() < 0.25:
        return sd.atom(rng.choice(MANIFOLD_ATOMS))
    kind = rng.choice(["cone", "susp", "join", "prod"])
    if kind == "cone":
        return sd.Cone(_random(rng, depth_left - 1))
    if kind == "susp":
        return sd.Suspension(_random(rng, depth_left - 1))
    if kind == "join":
        k = rng.randint(0, depth_left - 1)
        return sd.Join(_random(rng, k), _random(rng, depth_left - 1 - k))
    k = rng.randint(0, depth_left)
    return sd.Product(_random(rng, k), _random(rng, depth_left - k))
