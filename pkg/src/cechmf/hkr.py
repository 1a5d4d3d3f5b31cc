"""The HKR chain maps: curved-line chains to twisted forms, and two-term
algebra chains to the cone complex.

Targets follow the curvature: chains over the line with curvature c map to
(Omega, dc^(-)); the sheaf-algebra map has the three element classes, with
the odd factor stripped to its coefficient (which is differentiated like
the rest) and everything with two or more odd factors sent to zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .cdg import CurvedLine, OYAlgebra, SheafAlgebraA
from .cech import CONEF, FORM, LOG, YFORM, Cochain, _ctx, cone_cochain
from .forms import Form, LogForm, d_of, dlog_of, restrict_form, y_normalize
from .hochschild import CechHochChain
from .scene import Scene


def hkr_xf(c: CechHochChain) -> Cochain:
    """a_0[a_1|...|a_k] -> (1/k!) a_0 da_1 ^ ... ^ da_k."""
    assert isinstance(c.presheaf, CurvedLine), "chains must live over a curved line"
    scene = c.scene
    entries: dict = {}
    for I, ch in c.entries.items():
        ring = scene.atlas.ring(I)
        acc = Form.zero(ring)
        for (path, syms, monos), coeff in ch.terms.items():
            k = len(syms) - 1
            w = Form.scalar(ring.monomial(monos[0])).scale(
                coeff * Fraction(1, factorial(k))
            )
            for i in range(1, k + 1):
                w = w.wedge(d_of(ring.monomial(monos[i])))
                if w.is_zero():
                    break
            acc = acc + w
        if not acc.is_zero():
            entries[I] = acc
    return Cochain(scene, FORM, entries)


def hkr_y(c: CechHochChain) -> Cochain:
    """Classical HKR on the divisor: same formula, divisor coefficients."""
    assert isinstance(c.presheaf, OYAlgebra)
    scene = c.scene
    entries: dict = {}
    for I, ch in c.entries.items():
        ctx = _ctx(scene, I)
        ring = ctx.ring
        acc = Form.zero(ring)
        for (path, syms, monos), coeff in ch.terms.items():
            k = len(syms) - 1
            w = Form.scalar(ring.monomial(monos[0])).scale(
                coeff * Fraction(1, factorial(k))
            )
            for i in range(1, k + 1):
                w = w.wedge(d_of(ring.monomial(monos[i])))
                if w.is_zero():
                    break
            acc = acc + w
        acc = y_normalize(acc, ctx)
        if not acc.is_zero():
            entries[I] = acc
    return Cochain(scene, YFORM, entries)


def hkr_A(c: CechHochChain) -> Cochain:
    """The cone-valued HKR map of the two-term algebra.

    Internal degree 0:   (1/k!) a_0 (dx/x) ^ da_1 ^ ... ^ da_k      (log)
                       + (1/k!) a_0 dx ^ dg ^ da_1 ^ ... ^ da_k     (regular)
                       - sum_{j<i_0} ((-1)^p/k!) a_0 (du/u) ^ da_1 ^ ... (Cech+1)
    one odd factor in slot l: ((-1)^l/k!) a_0 dx ^ da_1 ^ ... ^ da_k (regular)
    two or more odd factors: 0.
    """
    assert isinstance(c.presheaf, SheafAlgebraA)
    scene = c.scene
    reg_acc: dict = {}
    log_acc: dict = {}

    def add(acc, I, w):
        if not w.is_zero():
            acc[I] = acc[I] + w if I in acc else w

    for I, ch in c.entries.items():
        ctx = _ctx(scene, I)
        ring = ctx.ring
        p = len(I) - 1
        dg = d_of(scene.g_on(I))
        for (path, syms, monos), coeff in ch.terms.items():
            k = len(syms) - 1
            eps_slots = [i for i, s in enumerate(syms) if s == "e"]
            if len(eps_slots) >= 2:
                continue
            kfact = Fraction(1, factorial(k))
            m = [ring.monomial(mono) for mono in monos]
            if not eps_slots:
                tail = Form.one(ring)
                for i in range(1, k + 1):
                    tail = tail.wedge(d_of(m[i]))
                head = Form.scalar(m[0]).scale(coeff * kfact)
                # log summand: a_0 (dx/x) ^ tail, as the raw residue
                add_log = LogForm(ctx, Form.zero(ring), head.wedge(tail))
                if not add_log.is_zero():
                    log_acc[I] = log_acc[I] + add_log if I in log_acc else add_log
                # regular summand: a_0 dx ^ dg ^ tail
                add(reg_acc, I, head.wedge(ctx.dx).wedge(dg).wedge(tail))
                # Cech-degree-raising terms over j < i_0
                i0 = I[0]
                for j in scene.atlas.chart_ids:
                    if j >= i0:
                        continue
                    K = tuple(sorted((j,) + I))
                    if not scene.atlas.has_tuple(K):
                        continue
                    u = scene.atlas.unit(i0, j, K)
                    w = Form.scalar(scene.atlas.res(I, K)(m[0])).scale(
                        coeff * kfact * Fraction((-1) ** (p + 1))
                    )
                    w = w.wedge(dlog_of(u))
                    for i in range(1, k + 1):
                        w = w.wedge(d_of(scene.atlas.res(I, K)(m[i])))
                        if w.is_zero():
                            break
                    add(reg_acc, K, w)
            else:
                l = eps_slots[0]
                w = Form.scalar(m[0]).scale(coeff * kfact * Fraction((-1) ** l))
                w = w.wedge(ctx.dx)
                for i in range(1, k + 1):
                    w = w.wedge(d_of(m[i]))
                    if w.is_zero():
                        break
                add(reg_acc, I, w)

    return cone_cochain(
        scene,
        Cochain(scene, FORM, reg_acc),
        Cochain(scene, LOG, log_acc),
    )


def a_to_oy(c: CechHochChain, oy: OYAlgebra) -> CechHochChain:
    """The quotient chain map from the two-term algebra to divisor functions:
    1 -> 1, eps -> 0, coefficients reduced mod the divisor."""
    assert isinstance(c.presheaf, SheafAlgebraA)
    from .hochschild import HochChain
    from .rings import quotient_restrict

    scene = c.scene
    entries = {}
    for I, ch in c.entries.items():
        if not oy.live(I):
            continue
        pole = scene.atlas.pole_var(I)
        ring = scene.atlas.ring(I)
        out: dict = {}
        for (path, syms, monos), coeff in ch.terms.items():
            if any(s == "e" for s in syms):
                continue
            new_monos = []
            dead = False
            for mono in monos:
                q = quotient_restrict(ring.monomial(mono), pole)
                if q.is_zero():
                    dead = True
                    break
                ((frac, mm),) = list(q.monomials())
                new_monos.append(mm)
                coeff = coeff * frac
            if dead:
                continue
            key = (path, syms, tuple(new_monos))
            out[key] = out.get(key, Fraction(0)) + coeff
        hc = HochChain(oy, I, out)
        if not hc.is_zero():
            entries[I] = hc
    return CechHochChain(oy, entries)
