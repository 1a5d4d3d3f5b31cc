"""Differential forms on chart rings: regular, logarithmic, cone pairs.

A Form is a finite sum c_K dx_K over strictly increasing index sets K;
possibly inhomogeneous in degree.  A LogForm over a tuple with divisor x
represents w + (dx/x) ^ w' with the canonical normal form: the residue w'
carries no dx factor and no x-multiples in its coefficients (those fold
into the regular part, since (dx/x) ^ x q = dx ^ q).  When the divisor is
a unit or 1 on the tuple the pole is spurious and everything is regular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import LocPoly, MalformedElement, Poly, Ring
from .scene import Scene, UnsupportedScene


class Form:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict | None = None):
        self.ring = ring
        clean = {}
        for k, c in (terms or {}).items():
            k = tuple(k)
            assert all(0 <= i < ring.nvars for i in k)
            assert list(k) == sorted(set(k)), f"index set not increasing: {k}"
            if not c.is_zero():
                clean[k] = c
        self.terms = clean

    @staticmethod
    def zero(ring: Ring) -> "Form":
        return Form(ring, {})

    @staticmethod
    def scalar(c: LocPoly) -> "Form":
        return Form(c.ring, {(): c})

    @staticmethod
    def one(ring: Ring) -> "Form":
        return Form.scalar(ring.one())

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        return sorted({len(k) for k in self.terms})

    def homogeneous_part(self, k: int) -> "Form":
        return Form(self.ring, {K: c for K, c in self.terms.items() if len(K) == k})

    def __eq__(self, other):
        return isinstance(other, Form) and self.ring == other.ring and self.terms == other.terms

    def __add__(self, other: "Form") -> "Form":
        assert self.ring == other.ring
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return Form(self.ring, terms)

    def __neg__(self) -> "Form":
        return Form(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        if isinstance(c, LocPoly):
            return Form(self.ring, {k: v * c for k, v in self.terms.items()})
        return Form(self.ring, {k: v.scale(c) for k, v in self.terms.items()})

    def wedge(self, other: "Form") -> "Form":
        assert self.ring == other.ring
        terms: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                merged = _merge_indices(ka, kb)
                if merged is None:
                    continue
                k, sign = merged
                c = (ca * cb).scale(sign)
                terms[k] = terms[k] + c if k in terms else c
        return Form(self.ring, terms)

    def d(self) -> "Form":
        """Exterior derivative; d(d(w)) = 0."""
        terms: dict = {}
        for k, c in self.terms.items():
            for v in range(self.ring.nvars):
                dc = c.diff(v)
                if dc.is_zero() or v in k:
                    continue
                merged = _merge_indices((v,), k)
                key, sign = merged
                add = dc.scale(sign)
                terms[key] = terms[key] + add if key in terms else add
        return Form(self.ring, terms)

    def __repr__(self):
        if self.is_zero():
            return "0"
        names = self.ring.variables
        bits = []
        for k in sorted(self.terms, key=lambda kk: (len(kk), kk)):
            dx = "^".join(f"d{names[i]}" for i in k) or "1"
            bits.append(f"({self.terms[k]!r}){dx}")
        return " + ".join(bits)


def _merge_indices(ka, kb):
    """Sort the concatenation of two disjoint increasing index sets.

    Returns (merged tuple, permutation sign) or None if they intersect.
    """
    if set(ka) & set(kb):
        return None
    out = list(ka)
    sign = 1
    for b in kb:
        pos = len(out)
        while pos > 0 and out[pos - 1] > b:
            pos -= 1
        sign *= (-1) ** (len(out) - pos)
        out.insert(pos, b)
    return tuple(out), sign


def de_rham_d(w: Form) -> Form:
    return w.d()


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


class TupleCtx:
    """Divisor data of one atlas tuple: pole variable and log bookkeeping."""

    __slots__ = ("scene", "I", "ring", "p", "pole", "x", "dx", "dlog")

    def __init__(self, scene: Scene, I):
        self.scene = scene
        self.I = tuple(I)
        self.ring = scene.atlas.ring(self.I)
        self.p = len(self.I) - 1
        self.pole = scene.atlas.pole_var(self.I)
        self.x = scene.atlas.divisor_on(self.I)
        dxp = _d_of(self.x)
        self.dx = dxp
        if self.pole is None:
            if self.x.is_one() or dxp.is_zero():
                self.dlog = Form.zero(self.ring)
            else:
                self.dlog = dxp.scale(self.x.inverse())
        else:
            self.dlog = None  # genuine pole: dx/x is not a regular form


def _d_of(e: LocPoly) -> Form:
    terms = {}
    for v in range(e.ring.nvars):
        de = e.diff(v)
        if not de.is_zero():
            terms[(v,)] = de
    return Form(e.ring, terms)


def d_of(e: LocPoly) -> Form:
    """de Rham differential of a ring element."""
    return _d_of(e)


def dlog_of(u: LocPoly) -> Form:
    """du/u for a unit u."""
    return _d_of(u).scale(u.inverse())


class LogForm:
    """Normalized logarithmic form over one tuple: regular + (dx/x)^residue."""

    __slots__ = ("ctx", "regular", "residue")

    def __init__(self, ctx: TupleCtx, regular: Form, residue: Form):
        # normalization happens here, so any (regular, residue) pair is legal input
        self.ctx = ctx
        if ctx.pole is None:
            if not residue.is_zero():
                regular = regular + ctx.dlog.wedge(residue)
            self.regular = regular
            self.residue = Form.zero(ctx.ring)
            return
        v = ctx.pole
        reg_extra = Form.zero(ctx.ring)
        res_terms: dict = {}
        for k, c in residue.terms.items():
            if v in k:
                continue  # dx ^ dx = 0 under the pole
            low, high = _split_by_var(c, v)
            if not high.is_zero():
                # (dx/x) ^ (x q dx_K) = dx ^ q dx_K
                reg_extra = reg_extra + Form(ctx.ring, {(v,): high}).wedge(
                    Form(ctx.ring, {k: ctx.ring.one()})
                )
            if not low.is_zero():
                res_terms[k] = res_terms[k] + low if k in res_terms else low
        self.regular = regular + reg_extra
        self.residue = Form(ctx.ring, res_terms)

    @staticmethod
    def zero(ctx: TupleCtx) -> "LogForm":
        z = Form.zero(ctx.ring)
        return LogForm(ctx, z, z)

    def is_zero(self) -> bool:
        return self.regular.is_zero() and self.residue.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, LogForm)
            and self.ctx.I == other.ctx.I
            and self.regular == other.regular
            and self.residue == other.residue
        )

    def __add__(self, other: "LogForm") -> "LogForm":
        assert self.ctx.I == other.ctx.I
        return LogForm(self.ctx, self.regular + other.regular, self.residue + other.residue)

    def __neg__(self):
        return LogForm(self.ctx, -self.regular, -self.residue)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LogForm":
        return LogForm(self.ctx, self.regular.scale(c), self.residue.scale(c))

    def wedge_left(self, gamma: Form) -> "LogForm":
        """gamma ^ self, commuting gamma past dx/x termwise."""
        signed = Form(
            gamma.ring, {k: c.scale((-1) ** len(k)) for k, c in gamma.terms.items()}
        )
        return LogForm(self.ctx, gamma.wedge(self.regular), signed.wedge(self.residue))

    def wedge_right(self, gamma: Form) -> "LogForm":
        """self ^ gamma."""
        return LogForm(self.ctx, self.regular.wedge(gamma), self.residue.wedge(gamma))

    def __repr__(self):
        return f"LogForm(reg={self.regular!r}, res={self.residue!r})"


def _split_by_var(c: LocPoly, v: int):
    """c = low + x_v * q with low free of x_v; returns (low, q)."""
    ring = c.ring
    low_terms, high_terms = {}, {}
    for exp, coef in c.num.terms.items():
        if exp[v] == 0:
            low_terms[exp] = coef
        else:
            e = list(exp)
            e[v] -= 1
            high_terms[tuple(e)] = coef
    den = c.den
    for s, dd in zip(ring.inverted, den):
        assert dd == 0 or s.diff(v).is_zero(), "pole variable in denominator"
    return LocPoly(ring, Poly(ring.nvars, low_terms), den), LocPoly(
        ring, Poly(ring.nvars, high_terms), den
    )


@dataclass
class ConeForm:
    """Section of the cone complex over one tuple: (regular summand, log summand)."""

    reg: Form
    log: LogForm

    @staticmethod
    def zero(ctx: TupleCtx) -> "ConeForm":
        return ConeForm(Form.zero(ctx.ring), LogForm.zero(ctx))

    def is_zero(self) -> bool:
        return self.reg.is_zero() and self.log.is_zero()

    def __add__(self, other: "ConeForm") -> "ConeForm":
        return ConeForm(self.reg + other.reg, self.log + other.log)

    def __neg__(self):
        return ConeForm(-self.reg, -self.log)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ConeForm":
        return ConeForm(self.reg.scale(c), self.log.scale(c))

    def __eq__(self, other):
        return isinstance(other, ConeForm) and self.reg == other.reg and self.log == other.log


def map_form(w: Form, ringmap, dst_ring: Ring) -> Form:
    """Pullback of a form along a ring map: coefficients map, dx by chain rule."""
    out = Form.zero(dst_ring)
    for k, c in w.terms.items():
        piece = Form.scalar(ringmap(c))
        for v in k:
            piece = piece.wedge(_d_of(ringmap(w.ring.var(w.ring.variables[v]))))
        out = out + piece
    return out


def restrict_form(scene: Scene, w: Form, I, J) -> Form:
    m = scene.atlas.res(I, J)
    return map_form(w, m, scene.atlas.ring(J))


def restrict_logform(scene: Scene, lf: LogForm, I, J, ctx_J: TupleCtx) -> LogForm:
    """Restrict w + (dx_I/x_I)^w' rewriting the pole:
    dx_I/x_I = du/u + dx_J/x_J with u = x_I|_J / x_J a unit."""
    reg = restrict_form(scene, lf.regular, I, J)
    if lf.residue.is_zero():
        return LogForm(ctx_J, reg, Form.zero(ctx_J.ring))
    res = restrict_form(scene, lf.residue, I, J)
    x_old = scene.atlas.res(I, J)(lf.ctx.x)
    if ctx_J.pole is None:
        try:
            dl = _d_of(x_old).scale(x_old.inverse())
        except MalformedElement:
            raise UnsupportedScene(
                f"cannot restrict log pole from {I} to {J}"
            ) from None
        return LogForm(ctx_J, reg + dl.wedge(res), Form.zero(ctx_J.ring))
    from .scene import _loc_divide

    u = _loc_divide(x_old, ctx_J.x)
    if u is None:
        raise UnsupportedScene(f"divisors over {I} and {J} are incompatible")
    if u.is_one():
        return LogForm(ctx_J, reg, res)
    return LogForm(ctx_J, reg + dlog_of(u).wedge(res), res)


def y_normalize(w: Form, ctx: TupleCtx) -> Form:
    """Project a form to the divisor: kill dx terms and reduce coefficients mod x."""
    if ctx.pole is None:
        return Form.zero(ctx.ring)
    from .rings import quotient_restrict

    v = ctx.pole
    terms = {}
    for k, c in w.terms.items():
        if v in k:
            continue
        q = quotient_restrict(c, v)
        if not q.is_zero():
            terms[k] = terms[k] + q if k in terms else q
    return Form(ctx.ring, terms)


def restrict_yform(scene: Scene, w: Form, I, J, ctx_J: TupleCtx) -> Form:
    return y_normalize(restrict_form(scene, w, I, J), ctx_J)
