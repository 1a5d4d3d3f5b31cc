"""Cech cochains of forms and the total differentials of the four complexes.

Conventions (see signs.py):
  * total differential = d_Cech + (-1)^p d_sheaf on Cech degree p,
  * cone differential d(a, b) = (d_Cech a - (-1)^p df^a,
                                 (-1)^p L(a) + d_Cech b + (-1)^p df^b),
  * products multiply front face times back face:
    (a.b)_{i_0..i_{p+q}} = a_{i_0..i_p} b_{i_p..i_{p+q}},
  * bar product (a ~^ b) = (-1)^{pq} (b ^ a) in Cech degrees p, q.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .forms import (
    ConeForm,
    Form,
    LogForm,
    TupleCtx,
    d_of,
    dlog_of,
    restrict_form,
    restrict_logform,
    restrict_yform,
    y_normalize,
)
from .scene import Scene, SceneError

OMEGA = "omega"                # (Omega, -df^)
OMEGA_PLUS = "omega_plus"      # (Omega, +df^): the (X, -f) twist
OMEGA_LOG = "omega_log"        # (Omega(log Y), -df^)
OMEGA_LOG_SHIFTED = "omega_log_shifted"  # (Omega(log Y), -df^)[1]
OMEGA_Y = "omega_y"            # (Omega_Y, 0)
CONE = "cone"
COMPLEXES = (OMEGA, OMEGA_LOG, OMEGA_Y, CONE)

FORM, LOG, CONEF, YFORM = "form", "log", "cone", "yform"
_SECTION_OF_COMPLEX = {
    OMEGA: FORM,
    OMEGA_PLUS: FORM,
    OMEGA_LOG: LOG,
    OMEGA_LOG_SHIFTED: LOG,
    OMEGA_Y: YFORM,
    CONE: CONEF,
}


class Cochain:
    """Assignment of a section to each atlas tuple; missing entries are zero."""

    __slots__ = ("scene", "kind", "entries")

    def __init__(self, scene: Scene, kind: str, entries: dict | None = None):
        assert kind in (FORM, LOG, CONEF, YFORM)
        self.scene = scene
        self.kind = kind
        self.entries = {}
        for I, s in (entries or {}).items():
            I = tuple(I)
            if not scene.atlas.has_tuple(I):
                raise SceneError(f"tuple {I} not in atlas")
            if not s.is_zero():
                self.entries[I] = s

    def ctx(self, I) -> TupleCtx:
        return _ctx(self.scene, I)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.kind == other.kind
            and self.scene is other.scene
            and self.entries == other.entries
        )

    def __add__(self, other: "Cochain") -> "Cochain":
        assert self.kind == other.kind and self.scene is other.scene
        entries = dict(self.entries)
        for I, s in other.entries.items():
            entries[I] = entries[I] + s if I in entries else s
        return Cochain(self.scene, self.kind, entries)

    def __neg__(self):
        return Cochain(self.scene, self.kind, {I: -s for I, s in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Cochain":
        return Cochain(self.scene, self.kind, {I: s.scale(c) for I, s in self.entries.items()})

    def __repr__(self):
        inner = ", ".join(f"{I}: {s!r}" for I, s in sorted(self.entries.items()))
        return f"Cochain[{self.kind}]{{{inner}}}"


_CTX_CACHE: dict = {}


def _ctx(scene: Scene, I) -> TupleCtx:
    key = (id(scene), tuple(I))
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = TupleCtx(scene, I)
    return _CTX_CACHE[key]


def zero_cochain(scene: Scene, kind: str) -> Cochain:
    return Cochain(scene, kind, {})


def unit_cochain(scene: Scene, kind: str = FORM) -> Cochain:
    """The Cech-degree-0 unit: constant 1 over every chart."""
    entries = {}
    for i in scene.atlas.chart_ids:
        ring = scene.atlas.ring((i,))
        if kind == FORM:
            entries[(i,)] = Form.one(ring)
        elif kind == YFORM:
            ctx = _ctx(scene, (i,))
            s = y_normalize(Form.one(ring), ctx)
            if not s.is_zero():
                entries[(i,)] = s
        else:
            raise ValueError(kind)
    return Cochain(scene, kind, entries)


def restrict_section(scene: Scene, kind: str, s, I, J):
    if kind == FORM:
        return restrict_form(scene, s, I, J)
    if kind == LOG:
        return restrict_logform(scene, s, I, J, _ctx(scene, J))
    if kind == YFORM:
        return restrict_yform(scene, s, I, J, _ctx(scene, J))
    if kind == CONEF:
        return ConeForm(
            restrict_form(scene, s.reg, I, J),
            restrict_logform(scene, s.log, I, J, _ctx(scene, J)),
        )
    raise ValueError(kind)


def cech_d(c: Cochain) -> Cochain:
    """Alternating Cech differential via single-index extensions."""
    out = zero_cochain(c.scene, c.kind)
    acc: dict = {}
    for I, s in c.entries.items():
        for j, pos, J in c.scene.atlas.extensions(I):
            piece = restrict_section(c.scene, c.kind, s, I, J)
            if pos % 2:
                piece = -piece
            acc[J] = acc[J] + piece if J in acc else piece
    return Cochain(c.scene, c.kind, acc)


def _sheaf_d(scene: Scene, kind: str, complex_kind: str, I, s):
    """Sheaf-level differential of one section (before the (-1)^p twist)."""
    ctx = _ctx(scene, I)
    f = scene.f_on(I)
    df = d_of(f)
    if complex_kind == OMEGA:
        return -df.wedge(s)
    if complex_kind == OMEGA_PLUS:
        return df.wedge(s)
    if complex_kind == OMEGA_LOG:
        return -s.wedge_left(df)
    if complex_kind == OMEGA_LOG_SHIFTED:
        return s.wedge_left(df)
    if complex_kind == OMEGA_Y:
        return Form.zero(ctx.ring)
    raise ValueError(complex_kind)


def cech_total_d(c: Cochain, complex_kind: str) -> Cochain:
    """Total differential d_Cech + (-1)^p d_sheaf of the named complex."""
    if complex_kind == CONE:
        return _cone_total_d(c)
    assert c.kind == _SECTION_OF_COMPLEX[complex_kind]
    out = cech_d(c)
    acc: dict = {}
    for I, s in c.entries.items():
        p = len(I) - 1
        piece = _sheaf_d(c.scene, c.kind, complex_kind, I, s)
        if p % 2:
            piece = -piece
        if not piece.is_zero():
            acc[I] = acc[I] + piece if I in acc else piece
    return out + Cochain(c.scene, c.kind, acc)


def _cone_total_d(c: Cochain) -> Cochain:
    assert c.kind == CONEF
    scene = c.scene
    reg = Cochain(scene, FORM, {I: s.reg for I, s in c.entries.items() if not s.reg.is_zero()})
    log = Cochain(
        scene, LOG, {I: s.log for I, s in c.entries.items() if not s.log.is_zero()}
    )
    reg_out = cech_total_d(reg, OMEGA)
    log_out = cech_total_d(log, OMEGA_LOG_SHIFTED)
    # connecting component: (-1)^p L(reg part)
    l_entries: dict = {}
    for I, s in reg.entries.items():
        p = len(I) - 1
        piece = LogForm(_ctx(scene, I), s.scale(Fraction((-1) ** p)), Form.zero(s.ring))
        l_entries[I] = piece
    l_out = Cochain(scene, LOG, l_entries)
    merged: dict = {}
    for I in set(reg_out.entries) | set(log_out.entries) | set(l_out.entries):
        ctx = _ctx(scene, I)
        r = reg_out.entries.get(I, Form.zero(ctx.ring))
        lg = log_out.entries.get(I, LogForm.zero(ctx))
        lc = l_out.entries.get(I, LogForm.zero(ctx))
        merged[I] = ConeForm(r, lg + lc)
    return Cochain(scene, CONEF, merged)


def cone_cochain(scene: Scene, reg: Cochain | None = None, log: Cochain | None = None) -> Cochain:
    entries: dict = {}
    tuples = set()
    if reg is not None:
        tuples |= set(reg.entries)
    if log is not None:
        tuples |= set(log.entries)
    for I in tuples:
        ctx = _ctx(scene, I)
        r = reg.entries.get(I, Form.zero(ctx.ring)) if reg is not None else Form.zero(ctx.ring)
        lg = log.entries.get(I, LogForm.zero(ctx)) if log is not None else LogForm.zero(ctx)
        entries[I] = ConeForm(r, lg)
    return Cochain(scene, CONEF, entries)


# ---------------------------------------------------------------------------
# products


def cech_wedge(a: Cochain, b: Cochain) -> Cochain:
    """Front-face/back-face product on form-valued cochains."""
    assert a.kind == FORM and b.kind in (FORM, YFORM)
    assert a.scene is b.scene
    scene = a.scene
    acc: dict = {}
    for I, sa in a.entries.items():
        for J, sb in b.entries.items():
            if I[-1] != J[0]:
                continue
            K = I + J[1:]
            if list(K) != sorted(set(K)):
                continue
            if not scene.atlas.has_tuple(K):
                raise SceneError(f"product tuple {K} missing from atlas")
            ra = restrict_section(scene, a.kind, sa, I, K)
            rb = restrict_section(scene, b.kind, sb, J, K)
            piece = ra.wedge(rb)
            if b.kind == YFORM:
                piece = y_normalize(piece, _ctx(scene, K))
            if not piece.is_zero():
                acc[K] = acc[K] + piece if K in acc else piece
    return Cochain(scene, b.kind, acc)


def cech_wedge_y(a: Cochain, b: Cochain) -> Cochain:
    """Product of two Y-form cochains."""
    assert a.kind == YFORM and b.kind == YFORM
    scene = a.scene
    acc: dict = {}
    for I, sa in a.entries.items():
        for J, sb in b.entries.items():
            if I[-1] != J[0]:
                continue
            K = I + J[1:]
            if list(K) != sorted(set(K)):
                continue
            ra = restrict_section(scene, YFORM, sa, I, K)
            rb = restrict_section(scene, YFORM, sb, J, K)
            piece = ra.wedge(rb)
            if not piece.is_zero():
                acc[K] = acc[K] + piece if K in acc else piece
    return Cochain(scene, YFORM, acc)


def bar_wedge(alpha: Cochain, gamma: Cochain) -> Cochain:
    """Right module action a ~^ g.

    Forms:   (a ~^ g) = (-1)^{pq} (g ^ a).
    Cone:    (a + b) ~^ g = (-1)^{pq} g^a + (-1)^{(p+1)q} g^b
    with p, q the Cech degrees of the cochain entries.
    """
    scene = alpha.scene
    assert gamma.kind == FORM or (alpha.kind == YFORM and gamma.kind == YFORM)
    if alpha.kind in (FORM, YFORM):
        acc: dict = {}
        for J, sa in alpha.entries.items():      # alpha at Cech degree p
            p = len(J) - 1
            for I, sg in gamma.entries.items():  # gamma at Cech degree q
                q = len(I) - 1
                if I[-1] != J[0]:
                    continue
                K = I + J[1:]
                if list(K) != sorted(set(K)) or not scene.atlas.has_tuple(K):
                    continue
                rg = restrict_section(scene, alpha.kind, sg, I, K)
                ra = restrict_section(scene, alpha.kind, sa, J, K)
                piece = rg.wedge(ra)
                if alpha.kind == YFORM:
                    piece = y_normalize(piece, _ctx(scene, K))
                if (p * q) % 2:
                    piece = -piece
                if not piece.is_zero():
                    acc[K] = acc[K] + piece if K in acc else piece
        return Cochain(scene, alpha.kind, acc)
    assert alpha.kind == CONEF
    acc = {}
    for J, s in alpha.entries.items():
        p = len(J) - 1
        for I, sg in gamma.entries.items():
            q = len(I) - 1
            if I[-1] != J[0]:
                continue
            K = I + J[1:]
            if list(K) != sorted(set(K)) or not scene.atlas.has_tuple(K):
                continue
            ctx_K = _ctx(scene, K)
            rg = restrict_section(scene, FORM, sg, I, K)
            r_reg = restrict_section(scene, FORM, s.reg, J, K)
            r_log = restrict_section(scene, LOG, s.log, J, K)
            reg_piece = rg.wedge(r_reg).scale(Fraction((-1) ** (p * q)))
            log_piece = r_log.wedge_left(rg).scale(Fraction((-1) ** ((p + 1) * q)))
            piece = ConeForm(reg_piece, log_piece)
            if not piece.is_zero():
                acc[K] = acc[K] + piece if K in acc else piece
    return Cochain(scene, CONEF, acc)


# ---------------------------------------------------------------------------
# Chern data


def c1_minus_Y(scene: Scene) -> Cochain:
    """(u_ij du_ij^{-1})_{j<i}: the Cech 1-cocycle of O_X(-Y)."""
    entries: dict = {}
    for I in scene.atlas.tuples:
        if len(I) != 2:
            continue
        j, i = I  # j < i
        u = scene.atlas.unit(i, j, I)
        # u du^{-1} = d(u^{-1}) / u^{-1}
        entries[I] = dlog_of(u.inverse())
    return Cochain(scene, FORM, entries)


def todd_inverse(scene: Scene, sign: int = 1) -> Cochain:
    """sum_q (-1)^{binom(q,2)} c1^{^q} / (q+1)!, times `sign`.

    The series truncates because Cech degrees are bounded by the cover size.
    """
    c1 = c1_minus_Y(scene)
    out = unit_cochain(scene, FORM)
    power = unit_cochain(scene, FORM)
    q = 1
    while True:
        power = cech_wedge(power, c1)
        if power.is_zero():
            break
        coeff = Fraction((-1) ** comb(q, 2), factorial(q + 1))
        out = out + power.scale(coeff)
        q += 1
    return out.scale(Fraction(sign))


def bar_power(c: Cochain, q: int) -> Cochain:
    """q-fold bar-wedge power of a form cochain (right-nested)."""
    if q == 0:
        return unit_cochain(c.scene, FORM)
    out = c
    for _ in range(q - 1):
        out = bar_wedge(out, c)
    return out
