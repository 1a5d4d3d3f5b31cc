"""Scenes: a finite affine atlas with divisor, function and gluing data.

A scene models (X, U, f, Y): chart rings are localized polynomial rings,
Y is cut out per chart by a coordinate variable (or misses the chart, x=1),
f = x*g per chart, and overlap rings carry explicit restriction maps.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .parsing import parse_image, parse_poly
from .rings import LocPoly, MalformedElement, Poly, Ring, RingMap


class SceneError(ValueError):
    pass


class UnsupportedScene(SceneError):
    """Operation needs structure this scene does not provide (e.g. a divisor
    that is not a coordinate on some chart)."""


@dataclass(frozen=True)
class Chart:
    id: int
    ring: Ring
    x: LocPoly       # divisor equation: a chart variable or 1
    f: LocPoly
    g: LocPoly


class Atlas:
    """Charts plus overlap rings, restriction maps and transition units."""

    def __init__(self, charts, overlap_rings, chart_maps):
        # overlap_rings: {tuple I (len>=2): Ring}
        # chart_maps: {(chart_id, I): RingMap chart_ring -> R_I}
        self.charts = {c.id: c for c in charts}
        self.chart_ids = tuple(sorted(self.charts))
        self._rings = {(i,): self.charts[i].ring for i in self.chart_ids}
        self._rings.update(overlap_rings)
        self._chart_maps = chart_maps
        self.tuples = tuple(sorted(self._rings, key=lambda t: (len(t), t)))
        self._res_cache: dict = {}
        self._unit_cache: dict = {}
        self._ext_cache: dict = {}
        self._pole_cache: dict = {}
        self._div_cache: dict = {}

    def ring(self, I) -> Ring:
        try:
            return self._rings[tuple(I)]
        except KeyError:
            raise SceneError(f"tuple {I} not in atlas") from None

    def has_tuple(self, I) -> bool:
        return tuple(I) in self._rings

    def res(self, I, J) -> RingMap:
        """Restriction R_I -> R_J for I a subset of J.

        Non-singleton source rings use the variables of their lead chart, so
        the map is inherited from the lead chart's declared images.
        """
        I, J = tuple(I), tuple(J)
        key = (I, J)
        if key in self._res_cache:
            return self._res_cache[key]
        if I == J:
            out = RingMap.identity(self.ring(I))
        else:
            assert set(I) <= set(J), f"{I} not a subset of {J}"
            lead = I[0]
            lead_map = self._chart_maps[(lead, J)]
            src = self.ring(I)
            images = [lead_map(self.charts[lead].ring.var(v)) for v in src.variables]
            out = RingMap(src, self.ring(J), images)
        self._res_cache[key] = out
        return out

    def restrict(self, section: LocPoly, I, J) -> LocPoly:
        return self.res(I, J)(section)

    def extensions(self, I):
        """All (j, position, I+{j}) with the extended tuple in the atlas."""
        I = tuple(I)
        if I in self._ext_cache:
            return self._ext_cache[I]
        out = []
        for j in self.chart_ids:
            if j in I:
                continue
            J = tuple(sorted(I + (j,)))
            if self.has_tuple(J):
                out.append((j, J.index(j), J))
        self._ext_cache[I] = out
        return out

    def divisor_on(self, I) -> LocPoly:
        """Lead-chart divisor equation restricted to U_I."""
        I = tuple(I)
        if I in self._div_cache:
            return self._div_cache[I]
        lead = I[0]
        out = self.res((lead,), I)(self.charts[lead].x)
        self._div_cache[I] = out
        return out

    def pole_var(self, I):
        """Index of the divisor variable in R_I, or None when Y misses U_I
        (x restricts to 1 or to a unit).  Raises UnsupportedScene otherwise."""
        I = tuple(I)
        if I in self._pole_cache:
            return self._pole_cache[I]
        x = self.divisor_on(I)
        ring = self.ring(I)
        out = None
        found = False
        if len(x.num.terms) == 1 and all(d == 0 for d in x.den):
            (exp, c), = x.num.terms.items()
            if sum(exp) == 1 and c == 1:
                v = exp.index(1)
                if v not in ring.laurent_vars():
                    out, found = v, True
        if not found:
            try:
                x.inverse()
                out = None
            except MalformedElement:
                raise UnsupportedScene(
                    f"divisor over {I} is neither a coordinate nor a unit: {x!r}"
                ) from None
        self._pole_cache[I] = out
        return out

    def unit(self, i, j, I=None) -> LocPoly:
        """u_ij = x_j * x_i^{-1} over U_I (default U_{ij})."""
        I = tuple(I) if I is not None else tuple(sorted((i, j)))
        key = (i, j, I)
        if key in self._unit_cache:
            return self._unit_cache[key]
        if i == j:
            u = self.ring(I).one()
        else:
            xi = self.res((i,), I)(self.charts[i].x)
            xj = self.res((j,), I)(self.charts[j].x)
            u = _loc_divide(xj, xi)
            if u is None:
                raise SceneError(f"unit u_{i}{j} does not exist over {I}")
        self._unit_cache[key] = u
        return u


def _loc_divide(a: LocPoly, b: LocPoly):
    """a / b in the localized ring, or None when the quotient does not exist.

    Strips invertible factors from b's numerator, then divides exactly.
    """
    if b.is_zero():
        return None
    try:
        return a * b.inverse()
    except MalformedElement:
        pass
    ring = a.ring
    # clear b's denominator (a product of units) into a
    c = a * LocPoly(ring, b._den_poly())
    # peel inverted-variable factors off b's numerator
    bn = b.num
    extra_den = [0] * len(ring.inverted)
    for pos, s in enumerate(ring.inverted):
        while True:
            q = s.try_divide(bn)
            if q is None:
                break
            bn = q
            extra_den[pos] += 1
    q = bn.try_divide(c.num)
    if q is None:
        return None
    den = tuple(d + e for d, e in zip(c.den, extra_den))
    return LocPoly(ring, q, den)


@dataclass
class Scene:
    name: str
    atlas: Atlas
    trunc: int = 6       # Hochschild length cap N
    window: int = 4      # homology window D
    global_ring: Ring | None = None
    global_res: dict = field(default_factory=dict)  # chart_id -> RingMap

    def chart(self, i) -> Chart:
        return self.atlas.charts[i]

    def f_on(self, I) -> LocPoly:
        I = tuple(I)
        return self.atlas.res((I[0],), I)(self.chart(I[0]).f)

    def g_on(self, I) -> LocPoly:
        I = tuple(I)
        return self.atlas.res((I[0],), I)(self.chart(I[0]).g)


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)  # (name, ok, detail)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(n, d) for n, ok, d in self.checks if not ok]


def validate_scene(scene: Scene) -> ValidationReport:
    """Check every Chart/Atlas invariant exactly; report each failure."""
    rep = ValidationReport()
    atlas = scene.atlas
    rep.add("trunc", scene.trunc >= 2, f"N={scene.trunc}")
    rep.add("window", scene.window >= 1, f"D={scene.window}")

    for I in atlas.tuples:
        ring = atlas.ring(I)
        rep.add(
            f"laurent-ring {I}",
            ring.is_laurent(),
            "inverted set must consist of distinct variables",
        )

    for cid in atlas.chart_ids:
        c = atlas.charts[cid]
        is_coord = (
            len(c.x.num.terms) == 1
            and all(d == 0 for d in c.x.den)
            and next(iter(c.x.num.terms.values())) == 1
            and sum(next(iter(c.x.num.terms))) <= 1
        )
        rep.add(f"divisor-shape chart {cid}", is_coord, f"x={c.x!r}")
        rep.add(
            f"f=x*g chart {cid}",
            c.f == c.x * c.g,
            f"f={c.f!r}, x*g={(c.x * c.g)!r}",
        )

    # downward closure of the tuple set
    for I in atlas.tuples:
        if len(I) < 3:
            continue
        for sub in itertools.combinations(I, len(I) - 1):
            rep.add(f"closure {I}>{sub}", atlas.has_tuple(sub), "")

    # lead-chart variable convention and functoriality of restrictions
    for I in atlas.tuples:
        if len(I) == 1:
            continue
        ring = atlas.ring(I)
        lead_ring = atlas.charts[I[0]].ring
        ok = set(ring.variables) <= set(lead_ring.variables)
        rep.add(f"lead-vars {I}", ok, "overlap ring vars must come from lead chart")
        if not ok:
            continue
        m = atlas._chart_maps[(I[0], I)]
        ident = all(
            m(lead_ring.var(v)) == ring.var(v) for v in ring.variables
        )
        rep.add(f"lead-identity {I}", ident, "res(lead) must fix overlap variables")

    for J in atlas.tuples:
        for I in atlas.tuples:
            if len(I) >= len(J) or not set(I) <= set(J):
                continue
            for j in I:
                lhs = atlas.res(I, J).compose(atlas.res((j,), I))
                rhs = atlas.res((j,), J)
                rep.add(
                    f"functorial {j}->{I}->{J}",
                    lhs.images == rhs.images,
                    "res composition mismatch",
                )

    # units: existence, u_ii = 1, u_ij x_i = x_j, cocycle
    for I in atlas.tuples:
        if len(I) < 2:
            continue
        for i, j in itertools.permutations(I, 2):
            try:
                u = atlas.unit(i, j, I)
            except SceneError as e:
                rep.add(f"unit u_{i}{j} on {I}", False, str(e))
                continue
            xi = atlas.res((i,), I)(atlas.charts[i].x)
            xj = atlas.res((j,), I)(atlas.charts[j].x)
            rep.add(f"unit-eq u_{i}{j} on {I}", u * xi == xj, f"u={u!r}")
        if len(I) >= 3:
            for i, j, k in itertools.permutations(I, 3):
                lhs = atlas.unit(i, j, I) * atlas.unit(j, k, I)
                rep.add(
                    f"cocycle u_{i}{j}*u_{j}{k}=u_{i}{k} on {I}",
                    lhs == atlas.unit(i, k, I),
                    "",
                )

    # f agrees on overlaps, and x_i g_i glues to the same section
    for I in atlas.tuples:
        if len(I) < 2:
            continue
        for i, j in itertools.combinations(I, 2):
            fi = atlas.res((i,), I)(atlas.charts[i].f)
            fj = atlas.res((j,), I)(atlas.charts[j].f)
            rep.add(f"f-match {i},{j} on {I}", fi == fj, f"{fi!r} vs {fj!r}")
            xgi = atlas.res((i,), I)(atlas.charts[i].x * atlas.charts[i].g)
            xgj = atlas.res((j,), I)(atlas.charts[j].x * atlas.charts[j].g)
            rep.add(f"xg-match {i},{j} on {I}", xgi == xgj, "")

    # inverted variables of source rings must restrict to units
    for J in atlas.tuples:
        for I in atlas.tuples:
            if len(I) >= len(J) or not set(I) <= set(J):
                continue
            m = atlas.res(I, J)
            for s in atlas.ring(I).inverted:
                try:
                    s.subs(list(m.images), atlas.ring(J)).inverse()
                    rep.add(f"unit-res {I}->{J}", True, "")
                except MalformedElement:
                    rep.add(f"unit-res {I}->{J}", False, f"{s!r} not a unit downstream")
    return rep


# ---------------------------------------------------------------------------
# scene files


def _build_ring(spec) -> Ring:
    variables = list(spec["vars"])
    ring0 = Ring(variables, [])
    inverted = [parse_poly(s, ring0).num for s in spec.get("inverted", [])]
    return Ring(variables, inverted)


def scene_from_dict(data: dict) -> Scene:
    charts = []
    for cs in data["charts"]:
        ring = _build_ring(cs)
        charts.append(
            Chart(
                id=int(cs["id"]),
                ring=ring,
                x=parse_poly(cs["x"], ring),
                f=parse_poly(cs["f"], ring),
                g=parse_poly(cs["g"], ring),
            )
        )
    chart_by_id = {c.id: c for c in charts}
    overlap_rings = {}
    chart_maps = {}
    for os in data.get("overlaps", []):
        I = tuple(sorted(int(x) for x in os["tuple"]))
        ring = _build_ring(os)
        overlap_rings[I] = ring
        for cid_s, images in os["res"].items():
            cid = int(cid_s)
            chart = chart_by_id[cid]
            imgs = [parse_image(images[v], ring) for v in chart.ring.variables]
            chart_maps[(cid, I)] = RingMap(chart.ring, ring, imgs)
    atlas = Atlas(charts, overlap_rings, chart_maps)

    global_ring = None
    global_res = {}
    if "global" in data:
        gs = data["global"]
        global_ring = _build_ring(gs)
        for cid_s, images in gs["res"].items():
            cid = int(cid_s)
            imgs = [parse_image(images[v], chart_by_id[cid].ring) for v in global_ring.variables]
            global_res[cid] = RingMap(global_ring, chart_by_id[cid].ring, imgs)
    return Scene(
        name=data.get("name", "scene"),
        atlas=atlas,
        trunc=int(data.get("trunc", 6)),
        window=int(data.get("window", 4)),
        global_ring=global_ring,
        global_res=global_res,
    )


def load_scene(path) -> Scene:
    with open(path) as fh:
        return scene_from_dict(json.load(fh))
