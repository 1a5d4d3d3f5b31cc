"""Presentations of the small curved/dg actors over a scene.

All presheaves expose the same per-tuple interface: a finite object list,
free hom modules with homogeneous bases, composition, differential and
curvature on basis symbols, and restriction of basis symbols along tuple
extensions.  Elements are {symbol: LocPoly} dictionaries.

Matrix-factorization morphisms are stored as matrices in the trivialization
of the lead (minimum) chart of each tuple; restricting to a tuple with a
smaller lead conjugates by the transition matrix, which makes every
structure map strictly compatible with restrictions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import LocPoly, quotient_restrict
from .scene import Scene, SceneError


def elem_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for s, c in b.items():
        out[s] = out[s] + c if s in out else c
    return {s: c for s, c in out.items() if not c.is_zero()}


def elem_scale(a: dict, c) -> dict:
    if isinstance(c, LocPoly):
        out = {s: v * c for s, v in a.items()}
    else:
        out = {s: v.scale(c) for s, v in a.items()}
    return {s: v for s, v in out.items() if not v.is_zero()}


class CdgPresheaf:
    """Base class; subclasses fill in the per-tuple presentation."""

    def __init__(self, scene: Scene):
        self.scene = scene

    def ring(self, I):
        return self.scene.atlas.ring(tuple(I))

    # overridden where coefficients do not restrict by the plain atlas map
    def restrict_coeff(self, I, J, c: LocPoly) -> LocPoly:
        return self.scene.atlas.res(tuple(I), tuple(J))(c)

    def live(self, I) -> bool:
        return True

    def objects(self, I):
        raise NotImplementedError

    def hom_basis(self, I, x, y):
        raise NotImplementedError

    def parity(self, sym) -> int:
        raise NotImplementedError

    def identity(self, I, x) -> dict:
        raise NotImplementedError

    def compose(self, I, a, b) -> dict:
        """a after b, on basis symbols."""
        raise NotImplementedError

    def d(self, I, sym) -> dict:
        raise NotImplementedError

    def curvature(self, I, x) -> dict:
        raise NotImplementedError

    def restrict_sym(self, I, J, sym) -> dict:
        return {sym: self.ring(J).one()}


class CurvedLine(CdgPresheaf):
    """One object, hom = chart ring, d = 0, curvature = sign * f."""

    def __init__(self, scene: Scene, sign: int = 1):
        super().__init__(scene)
        self.sign = sign

    def objects(self, I):
        return ("*",)

    def hom_basis(self, I, x, y):
        return ("1",)

    def parity(self, sym):
        return 0

    def identity(self, I, x):
        return {"1": self.ring(I).one()}

    def compose(self, I, a, b):
        return {"1": self.ring(I).one()}

    def d(self, I, sym):
        return {}

    def curvature(self, I, x):
        f = self.scene.f_on(tuple(I))
        return {} if f.is_zero() else {"1": f.scale(self.sign)}


class SheafAlgebraA(CdgPresheaf):
    """The two-term dg algebra [O(-Y) -> O]: basis 1 (even), e (odd),
    e*e = 0, d(e) = x_lead, restriction rescales e by the transition unit."""

    def objects(self, I):
        return ("*",)

    def hom_basis(self, I, x, y):
        return ("1", "e")

    def parity(self, sym):
        return 0 if sym == "1" else 1

    def identity(self, I, x):
        return {"1": self.ring(I).one()}

    def compose(self, I, a, b):
        if a == "1" and b == "1":
            return {"1": self.ring(I).one()}
        if a == "e" and b == "e":
            return {}
        return {"e": self.ring(I).one()}

    def d(self, I, sym):
        if sym == "e":
            x = self.scene.atlas.divisor_on(tuple(I))
            return {} if x.is_zero() else {"1": x}
        return {}

    def curvature(self, I, x):
        return {}

    def restrict_sym(self, I, J, sym):
        J = tuple(J)
        if sym == "1":
            return {"1": self.ring(J).one()}
        i0, j0 = tuple(I)[0], J[0]
        if i0 == j0:
            return {"e": self.ring(J).one()}
        # e_{i0} = u_{j0 i0} e_{j0}
        u = self.scene.atlas.unit(j0, i0, J)
        return {"e": u}


class OYAlgebra(CdgPresheaf):
    """Structure algebra of the divisor: lives on tuples the divisor meets,
    coefficients are x-free representatives of the quotient ring."""

    def live(self, I) -> bool:
        return self.scene.atlas.pole_var(tuple(I)) is not None

    def restrict_coeff(self, I, J, c):
        out = self.scene.atlas.res(tuple(I), tuple(J))(c)
        pole = self.scene.atlas.pole_var(tuple(J))
        assert pole is not None
        return quotient_restrict(out, pole)

    def objects(self, I):
        return ("*",) if self.live(I) else ()

    def hom_basis(self, I, x, y):
        return ("1",)

    def parity(self, sym):
        return 0

    def identity(self, I, x):
        return {"1": self.ring(I).one()}

    def compose(self, I, a, b):
        return {"1": self.ring(I).one()}

    def d(self, I, sym):
        return {}

    def curvature(self, I, x):
        return {}


@dataclass(frozen=True)
class MFObject:
    """Free Z/2-graded module with a per-tuple odd endomorphism.

    parities: basis parities, even generators first.
    twists: O(-Y)-twist of each basis vector; transitions are diag(u^twist).
    delta: callable I -> matrix (list of rows of LocPoly) or None for zero.
    """

    name: str
    parities: tuple
    twists: tuple
    delta_of: object  # callable

    @property
    def rank(self):
        return len(self.parities)

    def delta(self, scene: Scene, I):
        I = tuple(I)
        ring = scene.atlas.ring(I)
        if self.delta_of is None:
            n = self.rank
            return [[ring.zero()] * n for _ in range(n)]
        return self.delta_of(scene, I)


def build_P(scene: Scene) -> MFObject:
    """The matrix factorization [O(-Y) <-> O] with forward map x, back map g.

    Basis order (1, eps): delta(1) = g*eps, delta(eps) = x*1, i.e. columns
    [[0, x], [g, 0]]; transitions diag(1, u).
    """

    def delta(sc, I):
        ring = sc.atlas.ring(I)
        x = sc.atlas.divisor_on(I)
        g = sc.g_on(I)
        z = ring.zero()
        return [[z, x], [g, z]]

    return MFObject(name="P", parities=(0, 1), twists=(0, 1), delta_of=delta)


def trivial_line(scene: Scene) -> MFObject:
    """(O_X, 0) viewed inside the quasi matrix factorizations; curvature -f."""
    return MFObject(name="O", parities=(0,), twists=(0,), delta_of=None)


def mf_delta_squared_is_f(scene: Scene, mf: MFObject) -> bool:
    for I in scene.atlas.tuples:
        ring = scene.atlas.ring(I)
        d = mf.delta(scene, I)
        f = scene.f_on(I)
        n = mf.rank
        for r in range(n):
            for c in range(n):
                entry = sum((d[r][k] * d[k][c] for k in range(n)), ring.zero())
                want = f if r == c else ring.zero()
                if entry != want:
                    return False
    return True


class MFCategory(CdgPresheaf):
    """Full subcategory of quasi matrix factorizations on the given objects,
    with hom spaces realized as matrices in the lead-chart trivializations."""

    def __init__(self, scene: Scene, mfs, curved: bool = True):
        super().__init__(scene)
        self.mfs = {m.name: m for m in mfs}
        self.curved = curved

    def objects(self, I):
        return tuple(self.mfs)

    def hom_basis(self, I, x, y):
        src, tgt = self.mfs[x], self.mfs[y]
        return tuple(
            ("E", y, x, r, c) for r in range(tgt.rank) for c in range(src.rank)
        )

    def parity(self, sym):
        _, y, x, r, c = sym
        return (self.mfs[y].parities[r] + self.mfs[x].parities[c]) % 2

    def identity(self, I, x):
        ring = self.ring(I)
        return {("E", x, x, r, r): ring.one() for r in range(self.mfs[x].rank)}

    def compose(self, I, a, b):
        # a: y -> z, b: x -> y as matrices; (a b)[r][c] = sum_k a[r][k] b[k][c]
        _, za, ya, ra, ca = a
        _, yb, xb, rb, cb = b
        assert ya == yb, "objects do not match"
        if ca != rb:
            return {}
        return {("E", za, xb, ra, cb): self.ring(I).one()}

    def delta_element(self, I, x) -> dict:
        mf = self.mfs[x]
        d = mf.delta(self.scene, I)
        out = {}
        for r in range(mf.rank):
            for c in range(mf.rank):
                if not d[r][c].is_zero():
                    out[("E", x, x, r, c)] = d[r][c]
        return out

    def d(self, I, sym):
        # d(F) = delta_y F - (-1)^{|F|} F delta_x
        _, y, x, r, c = sym
        sign = -1 if self.parity(sym) % 2 else 1
        out: dict = {}
        dy = self.mfs[y].delta(self.scene, I)
        for rr in range(self.mfs[y].rank):
            v = dy[rr][r]
            if not v.is_zero():
                key = ("E", y, x, rr, c)
                out[key] = out[key] + v if key in out else v
        dx = self.mfs[x].delta(self.scene, I)
        for cc in range(self.mfs[x].rank):
            v = dx[c][cc].scale(-sign)
            if not v.is_zero():
                key = ("E", y, x, r, cc)
                out[key] = out[key] + v if key in out else v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def curvature(self, I, x):
        if not self.curved:
            return {}
        ring = self.ring(I)
        f = self.scene.f_on(tuple(I))
        mf = self.mfs[x]
        d = mf.delta(self.scene, I)
        n = mf.rank
        out = {}
        for r in range(n):
            for c in range(n):
                entry = sum((d[r][k] * d[k][c] for k in range(n)), ring.zero())
                if r == c:
                    entry = entry - f
                if not entry.is_zero():
                    out[("E", x, x, r, c)] = entry
        return out

    def transition(self, I, J, x) -> list | None:
        """Change of trivialization from lead(I) to lead(J); None if leads match."""
        i0, j0 = tuple(I)[0], tuple(J)[0]
        if i0 == j0:
            return None
        u = self.scene.atlas.unit(j0, i0, tuple(J))
        return [u ** k for k in self.mfs[x].twists]

    def restrict_sym(self, I, J, sym):
        _, y, x, r, c = sym
        ring = self.ring(J)
        gy = self.transition(I, J, y)
        if gy is None:
            return {sym: ring.one()}
        gx = self.transition(I, J, x)
        # diagonal transitions: G_y E_rc G_x^{-1} scales by g_y[r] / g_x[c]
        coeff = gy[r] * gx[c].inverse()
        return {sym: coeff}


class TrivializedCategory(MFCategory):
    """Same objects with zero differential: morphisms are plain matrices that
    do not transform under restriction; curvature is -f."""

    def __init__(self, scene: Scene, mfs):
        zeroed = [
            MFObject(name=m.name, parities=m.parities, twists=m.twists, delta_of=None)
            for m in mfs
        ]
        super().__init__(scene, zeroed, curved=True)

    def restrict_sym(self, I, J, sym):
        return {sym: self.ring(J).one()}


def end_algebra(scene: Scene, mf: MFObject) -> MFCategory:
    """The dg algebra of endomorphisms of one matrix factorization."""
    return MFCategory(scene, [mf])


# ---------------------------------------------------------------------------
# the chart-level algebra morphism can: A -> End(P)


class CanMorphism:
    """Left multiplication of the two-term algebra on P via A^# = P^#.

    Strict morphism of presheaves: matrices are taken in the lead-chart
    basis, which absorbs the transition conjugations.
    """

    def __init__(self, scene: Scene, src: SheafAlgebraA, dst: MFCategory):
        assert "P" in dst.mfs and dst.mfs["P"].rank == 2
        self.scene = scene
        self.src = src
        self.dst = dst

    def object(self, x):
        return "P"

    def apply_sym(self, I, sym) -> dict:
        ring = self.scene.atlas.ring(tuple(I))
        if sym == "1":
            return self.dst.identity(I, "P")
        # eps * 1 = eps, eps * eps = 0: the odd matrix unit E_{10}
        return {("E", "P", "P", 1, 0): ring.one()}


def can_map(scene: Scene, endp: MFCategory | None = None):
    if endp is None:
        endp = end_algebra(scene, build_P(scene))
    return CanMorphism(scene, SheafAlgebraA(scene), endp)
