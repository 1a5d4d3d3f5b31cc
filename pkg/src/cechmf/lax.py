"""Lax morphisms of presheaves of dg algebras and their Cech chain maps.

A lax morphism is a family of functors, one per tuple, together with
invertible even closed natural-isomorphism components alpha(V, W) for
V inside W, satisfying the cocycle alpha(V, K) = res(alpha(V, W)) *
alpha(W, K).  The induced map on Cech-Hochschild complexes is a sum of
operators that restrict through intermediate tuples and insert inverse
isomorphism components; two chain homotopies compare the lax map with the
strict one and with maps induced by isomorphic lax structures.

Everything here is for one-object presheaves, which covers the algebra
actors of the build; signs follow the displayed formulas.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .cdg import CdgPresheaf, elem_add, elem_scale
from .hochschild import CechHochChain, HochChain, _expand_slot
from .scene import Scene


def sort_sign(J, I):
    """Sign of the permutation arranging (j_1..j_q, i_0..i_p) increasingly."""
    seq = list(J) + list(I)
    sign = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign


def restrict_elem(ph: CdgPresheaf, elem: dict, I, J) -> dict:
    out: dict = {}
    for sym, c in elem.items():
        rc = ph.restrict_coeff(I, J, c)
        for sym2, c2 in ph.restrict_sym(I, J, sym).items():
            add = {sym2: c2 * rc}
            out = elem_add(out, add)
    return out


GLOBAL = ("X",)


class GlobalModel:
    """One-object global-sections algebra: enough structure to run the
    Hochschild differential and restrict into the atlas."""

    def __init__(self, scene: Scene, chart_presheaf: CdgPresheaf, basis,
                 d_fn, curvature_elem=None, compose_fn=None, sym_image=None):
        self.scene = scene
        self.chart = chart_presheaf
        self._basis = tuple(basis)
        self._d = d_fn                      # sym -> Element over global ring
        self._h = curvature_elem or {}
        self._compose = compose_fn or chart_presheaf.compose
        # sym_image(i, sym) -> Element over chart i; identity by default
        self._sym_image = sym_image
        assert scene.global_ring is not None, "scene declares no global ring"

    def ring(self, I):
        return self.scene.global_ring

    def objects(self, I):
        return ("*",)

    def hom_basis(self, I, x, y):
        return self._basis

    def parity(self, sym):
        return self.chart.parity(sym)

    def identity(self, I, x):
        return {"1": self.scene.global_ring.one()}

    def compose(self, I, a, b):
        # symbol-level products agree with the chart presheaf; coefficients
        # are global, so reuse the table over any chart
        out = self._compose((self.scene.atlas.chart_ids[0],), a, b)
        ring = self.scene.global_ring
        return {
            s: ring.monomial((0,) * ring.nvars, c.num.const_value())
            if c.num.is_const() and all(d == 0 for d in c.den)
            else self._fail(s)
            for s, c in out.items()
        }

    @staticmethod
    def _fail(s):
        raise NotImplementedError("non-scalar structure constants at the global level")

    def d(self, I, sym):
        return self._d(sym)

    def curvature(self, I, x):
        return self._h

    def to_tuple(self, elem: dict, K) -> dict:
        """Restrict a global element into an atlas tuple."""
        scene = self.scene
        i = K[0]
        gmap = scene.global_res[i]
        out: dict = {}
        for sym, c in elem.items():
            chart_c = gmap(c)
            if self._sym_image is None:
                chart_elem = {sym: chart_c}
            else:
                chart_elem = elem_scale(self._sym_image(i, sym), chart_c)
            piece = restrict_elem(self.chart, chart_elem, (i,), K)
            out = elem_add(out, piece)
        return out


class OneObjectLax:
    """Lax morphism data between one-object presheaves of dg algebras."""

    def __init__(self, scene: Scene, src: CdgPresheaf, dst: CdgPresheaf,
                 functor_sym, alpha_elem, dst_obj="*"):
        self.scene = scene
        self.src = src
        self.dst = dst
        self.functor_sym = functor_sym      # (I, sym) -> Element over dst at I
        self.alpha_elem = alpha_elem        # (V, W) -> Element over dst at W
        self.dst_obj = dst_obj

    def alpha(self, V, W) -> dict:
        return self.alpha_elem(tuple(V), tuple(W))

    def alpha_inv(self, V, W) -> dict:
        elem = self.alpha(V, W)
        # invertible even element: a single even symbol family; invert the
        # coefficient of the identity presentation
        inv: dict = {}
        for sym, c in elem.items():
            inv[sym] = c.inverse()
        assert len(inv) == 1, "isomorphism components must be unit multiples"
        return inv

    def cocycle_ok(self) -> bool:
        atlas = self.scene.atlas
        for V in atlas.tuples:
            for W in atlas.tuples:
                if not set(V) < set(W):
                    continue
                for U in atlas.tuples:
                    if not (set(V) < set(U) and set(U) < set(W)):
                        continue
                    lhs = self.alpha(V, W)
                    mid = restrict_elem(self.dst, self.alpha(V, U), U, W)
                    rhs = _elem_mul(self.dst, W, mid, self.alpha(U, W))
                    if lhs != rhs:
                        return False
        return True


def _elem_mul(ph: CdgPresheaf, I, a: dict, b: dict) -> dict:
    out: dict = {}
    for sa, ca in a.items():
        for sb, cb in b.items():
            for s, c in ph.compose(I, sa, sb).items():
                add = {s: c * ca * cb}
                out = elem_add(out, add)
    return out


class CocycleError(ValueError):
    pass


def _levels(scene, I, J):
    """Intermediate tuples J_s = sorted(I + J[:s]); None if any is missing."""
    out = []
    for s in range(len(J) + 1):
        T = tuple(sorted(set(I) | set(J[:s])))
        if not scene.atlas.has_tuple(T):
            return None
        out.append(T)
    return out


def lax_hq(lax: OneObjectLax, q: int, c: CechHochChain) -> CechHochChain:
    """The q-th insertion operator of the lax morphism."""
    scene = lax.scene
    src, dst = lax.src, lax.dst
    acc: dict = {}

    def emit(K, key, val):
        if val == 0:
            return
        acc.setdefault(K, {})
        acc[K][key] = acc[K].get(key, Fraction(0)) + val

    for I, ch in c.entries.items():
        p = len(I) - 1
        others = [j for j in scene.atlas.chart_ids if j not in I]
        for J in itertools.permutations(others, q):
            levels = _levels(scene, I, J)
            if levels is None:
                continue
            K = levels[-1]
            sigma = sort_sign(J, I)
            ring_K = scene.atlas.ring(K)
            for (path, syms, monos), coeff in ch.terms.items():
                k = len(syms) - 1
                par = [src.parity(s) for s in syms]
                prefix = [0] * (k + 2)
                for i in range(k + 1):
                    prefix[i + 1] = prefix[i] + par[i]
                for ls in itertools.combinations_with_replacement(range(k + 1), q):
                    eps = sum(prefix[l + 1] + l for l in ls) + (p * q)
                    sign = sort_sign(J, I) * (-1) ** (eps % 2)
                    # slot i is processed at level q - #{s: l_s < i}
                    level_of = []
                    for i in range(k + 1):
                        s = 0
                        while s < q and ls[s] < i:
                            s += 1
                        level_of.append(q - s)
                    _lax_expand(
                        lax, I, levels, K, path, syms, monos, ls, level_of,
                        Fraction(sign) * coeff, emit,
                    )
    out = {K: HochChain(lax.dst, K, terms) for K, terms in acc.items()}
    return CechHochChain(lax.dst, out)


def _lax_expand(lax, I, levels, K, path, syms, monos, ls, level_of, coeff, emit):
    scene = lax.scene
    src, dst = lax.src, lax.dst
    k = len(syms) - 1
    q = len(ls)
    src_ring = src.ring(I)
    obj = lax.dst_obj

    def processed(i):
        """Slot i: restrict to its level, apply the functor, restrict to K."""
        lvl = levels[level_of[i]]
        elem = restrict_elem(src, {syms[i]: src_ring.monomial(monos[i])}, I, lvl)
        out: dict = {}
        for sym, cc in elem.items():
            fe = lax.functor_sym(lvl, sym)
            out = elem_add(out, elem_scale(fe, cc))
        return restrict_elem(dst, out, lvl, K)

    head = processed(0)
    if q:
        head = _elem_mul(dst, K, lax.alpha(I, K), head)
    seq = [head]
    out_path = [obj]
    ins_after: dict = {}
    for s, l in enumerate(ls):
        ins_after.setdefault(l, []).append(s)
    for i in range(1, k + 1):
        for s in ins_after.get(i - 1, []):
            # the (s+1)-th insertion mediates levels q-s and q-s-1:
            # alpha^{-1} of the pair (levels[q-s-1], levels[q-s]), restricted to K
            below, above = levels[q - s - 1], levels[q - s]
            a_inv = lax.alpha_inv(below, above)
            seq.append(restrict_elem(dst, a_inv, above, K))
            out_path.append(obj)
        seq.append(processed(i))
        out_path.append(obj)
    for s in ins_after.get(k, []):
        below, above = levels[q - s - 1], levels[q - s]
        a_inv = lax.alpha_inv(below, above)
        seq.append(restrict_elem(dst, a_inv, above, K))
        out_path.append(obj)

    ring_K = dst.ring(K)

    def rec(idx, syms2, monos2, c2):
        if c2 == 0:
            return
        if idx == len(seq):
            emit(K, (tuple(out_path), tuple(syms2), tuple(monos2)), c2)
            return
        for sym2, cc in seq[idx].items():
            for frac, mono2 in cc.monomials():
                rec(idx + 1, syms2 + [sym2], monos2 + [mono2], c2 * frac)

    rec(0, [], [], coeff)


def global_to_cech(model: GlobalModel, chain: HochChain) -> CechHochChain:
    """The vertical restriction map: a global chain to its Cech degree 0 image."""
    scene = model.scene
    entries = {}
    ph = model.chart
    for i in scene.atlas.chart_ids:
        I = (i,)
        out: dict = {}
        for (path, syms, monos), coeff in chain.terms.items():
            slots = [
                model.to_tuple({s: model.scene.global_ring.monomial(m)}, I)
                for s, m in zip(syms, monos)
            ]

            def rec(idx, syms2, monos2, c2):
                if c2 == 0:
                    return
                if idx == len(slots):
                    key = (path, tuple(syms2), tuple(monos2))
                    out[key] = out.get(key, Fraction(0)) + c2
                    return
                for sym2, cc in slots[idx].items():
                    for frac, mono2 in cc.monomials():
                        rec(idx + 1, syms2 + [sym2], monos2 + [mono2], c2 * frac)

            rec(0, [], [], coeff)
        ch = HochChain(ph, I, out)
        if not ch.is_zero():
            entries[I] = ch
    return CechHochChain(ph, entries)


def apply_global_functor(model: GlobalModel, chain: HochChain, functor_sym) -> HochChain:
    """Apply a functor sym-wise at the global level."""
    out: dict = {}
    ring = model.scene.global_ring
    for (path, syms, monos), coeff in chain.terms.items():
        slots = [elem_scale(functor_sym(GLOBAL, s), ring.monomial(m)) for s, m in zip(syms, monos)]

        def rec(idx, syms2, monos2, c2):
            if c2 == 0:
                return
            if idx == len(slots):
                key = (path, tuple(syms2), tuple(monos2))
                out[key] = out.get(key, Fraction(0)) + c2
                return
            for sym2, cc in slots[idx].items():
                for frac, mono2 in cc.monomials():
                    rec(idx + 1, syms2 + [sym2], monos2 + [mono2], c2 * frac)

        rec(0, [], [], coeff)
    return HochChain(model, GLOBAL, out)


def restriction_htilde(lax: OneObjectLax, model: GlobalModel, chain: HochChain) -> CechHochChain:
    """The comparison homotopy between restriction-then-lax-map and
    global-map-then-restriction: the insertion operators with p = -1."""
    scene = lax.scene
    src, dst = lax.src, lax.dst
    acc: dict = {}

    def emit(K, key, val):
        if val == 0:
            return
        acc.setdefault(K, {})
        acc[K][key] = acc[K].get(key, Fraction(0)) + val

    nq = len(scene.atlas.chart_ids)
    for q in range(1, nq + 1):
        for J in itertools.permutations(scene.atlas.chart_ids, q):
            T = tuple(sorted(J))
            if not scene.atlas.has_tuple(T):
                continue
            levels = [GLOBAL] + [tuple(sorted(J[:s])) for s in range(1, q + 1)]
            if any(lv != GLOBAL and not scene.atlas.has_tuple(lv) for lv in levels):
                continue
            K = levels[-1]
            sigma = sort_sign(J, ())
            for (path, syms, monos), coeff in chain.terms.items():
                k = len(syms) - 1
                par = [model.parity(s) for s in syms]
                prefix = [0] * (k + 2)
                for i in range(k + 1):
                    prefix[i + 1] = prefix[i] + par[i]
                for ls in itertools.combinations_with_replacement(range(k + 1), q):
                    eps = sum(prefix[l + 1] + l for l in ls) + q  # p = -1
                    sign = sigma * (-1) ** (eps % 2)
                    level_of = []
                    for i in range(k + 1):
                        s = 0
                        while s < q and ls[s] < i:
                            s += 1
                        level_of.append(q - s)
                    _htilde_expand(
                        lax, model, levels, K, path, syms, monos, ls, level_of,
                        Fraction(sign) * coeff, emit,
                    )
    out = {K: HochChain(dst, K, terms) for K, terms in acc.items()}
    return CechHochChain(dst, out)


def _htilde_expand(lax, model, levels, K, path, syms, monos, ls, level_of, coeff, emit):
    scene = lax.scene
    src, dst = lax.src, lax.dst
    k = len(syms) - 1
    q = len(ls)
    gring = scene.global_ring
    obj = lax.dst_obj

    def processed(i):
        lvl = levels[level_of[i]]
        gelem = {syms[i]: gring.monomial(monos[i])}
        if lvl == GLOBAL:
            # apply the functor at the global level, then push into K
            felem: dict = {}
            for sym, cc in gelem.items():
                felem = elem_add(felem, elem_scale(lax.functor_sym(GLOBAL, sym), cc))
            return model.to_tuple(felem, K)
        chart_elem = model.to_tuple(gelem, lvl)
        out = {}
        for sym, cc in chart_elem.items():
            out = elem_add(out, elem_scale(lax.functor_sym(lvl, sym), cc))
        return restrict_elem(dst, out, lvl, K)

    head = processed(0)
    head = _elem_mul(dst, K, lax.alpha(GLOBAL, K), head)
    seq = [head]
    out_path = [obj]
    ins_after: dict = {}
    for s, l in enumerate(ls):
        ins_after.setdefault(l, []).append(s)

    def a_ins(s):
        below, above = levels[q - s - 1], levels[q - s]
        return restrict_elem(dst, lax.alpha_inv(below, above), above, K)

    for i in range(1, k + 1):
        for s in ins_after.get(i - 1, []):
            seq.append(a_ins(s))
            out_path.append(obj)
        seq.append(processed(i))
        out_path.append(obj)
    for s in ins_after.get(k, []):
        seq.append(a_ins(s))
        out_path.append(obj)

    def rec(idx, syms2, monos2, c2):
        if c2 == 0:
            return
        if idx == len(seq):
            emit(K, (tuple(out_path), tuple(syms2), tuple(monos2)), c2)
            return
        for sym2, cc in seq[idx].items():
            for frac, mono2 in cc.monomials():
                rec(idx + 1, syms2 + [sym2], monos2 + [mono2], c2 * frac)

    rec(0, [], [], coeff)


def cech_lax_map(lax: OneObjectLax, c: CechHochChain, check: bool = True) -> CechHochChain:
    """Sum of the insertion operators over all q."""
    if check and not lax.cocycle_ok():
        raise CocycleError("isomorphism components fail the cocycle condition")
    out = CechHochChain(lax.dst, {})
    for q in range(len(lax.scene.atlas.chart_ids) + 1):
        piece = lax_hq(lax, q, c)
        if not piece.is_zero():
            out = out + piece
    return out


def cech_strict_map(lax: OneObjectLax, c: CechHochChain) -> CechHochChain:
    """Entrywise functor application (the strict map)."""
    return lax_hq(lax, 0, c)


def strict_vs_lax_homotopy(lax: OneObjectLax, c: CechHochChain) -> CechHochChain:
    """H with two identity insertions: dH + Hd = strict - lax (= -h^1)."""
    scene = lax.scene
    dst = lax.dst
    acc: dict = {}

    def emit(K, key, val):
        if val == 0:
            return
        acc.setdefault(K, {})
        acc[K][key] = acc[K].get(key, Fraction(0)) + val

    for I, ch in c.entries.items():
        others = [j for j in scene.atlas.chart_ids if j not in I]
        for j in others:
            K = tuple(sorted(set(I) | {j}))
            if not scene.atlas.has_tuple(K):
                continue
            sigma = sort_sign((j,), I)
            src_ring = lax.src.ring(I)
            ident = dst.identity(K, lax.dst_obj)
            for (path, syms, monos), coeff in ch.terms.items():
                k = len(syms) - 1
                par = [lax.src.parity(s) for s in syms]
                prefix = [0] * (k + 2)
                for i in range(k + 1):
                    prefix[i + 1] = prefix[i] + par[i]

                def processed(i):
                    elem = restrict_elem(
                        lax.src, {syms[i]: src_ring.monomial(monos[i])}, I, K
                    )
                    out: dict = {}
                    for sym, cc in elem.items():
                        out = elem_add(out, elem_scale(lax.functor_sym(K, sym), cc))
                    return out

                slots = [processed(i) for i in range(k + 1)]
                for l1 in range(k + 1):
                    for l2 in range(l1, k + 1):
                        tau = (prefix[l1 + 1] + l1) + (prefix[l2 + 1] + l2)
                        sign = sigma * (-1) ** (tau % 2)
                        seq = []
                        out_path = []
                        for i in range(k + 1):
                            seq.append(slots[i])
                            out_path.append(lax.dst_obj)
                            if i == l1:
                                seq.append(ident)
                                out_path.append(lax.dst_obj)
                            if i == l2:
                                seq.append(ident)
                                out_path.append(lax.dst_obj)

                        def rec(idx, syms2, monos2, c2):
                            if c2 == 0:
                                return
                            if idx == len(seq):
                                emit(
                                    K,
                                    (tuple(out_path), tuple(syms2), tuple(monos2)),
                                    c2,
                                )
                                return
                            for sym2, cc in seq[idx].items():
                                for frac, mono2 in cc.monomials():
                                    rec(idx + 1, syms2 + [sym2], monos2 + [mono2], c2 * frac)

                        rec(0, [], [], Fraction(sign) * coeff)
    out = {K: HochChain(dst, K, terms) for K, terms in acc.items()}
    return CechHochChain(dst, out)


def iso_homotopy(lax_a: OneObjectLax, lax_b: OneObjectLax, tau_elem, c: CechHochChain) -> CechHochChain:
    """Homotopy between the maps of two isomorphic lax morphisms:

        dH + Hd = (first lax map) - (second lax map).

    tau_elem(T) is the natural isomorphism component over the tuple T.  The
    inserted inverse carries the component of the level the descent has
    reached, and switches functor and isomorphism family from the first
    structure to the second.  Sign: eps' = eps + |a_0| + ... + |a_r| + r
    (the insertions are even, so they do not enter the sign).
    """
    scene = lax_a.scene
    src, dst = lax_a.src, lax_a.dst
    acc: dict = {}

    def emit(K, key, val):
        if val == 0:
            return
        acc.setdefault(K, {})
        acc[K][key] = acc[K].get(key, Fraction(0)) + val

    def inv(elem):
        out = {s: cc.inverse() for s, cc in elem.items()}
        assert len(out) == 1
        return out

    for I, ch in c.entries.items():
        p = len(I) - 1
        for q in range(len(scene.atlas.chart_ids) + 1):
            others = [j for j in scene.atlas.chart_ids if j not in I]
            for J in itertools.permutations(others, q):
                levels = _levels(scene, I, J)
                if levels is None:
                    continue
                K = levels[-1]
                sigma = sort_sign(J, I)
                src_ring = src.ring(I)
                for (path, syms, monos), coeff in ch.terms.items():
                    k = len(syms) - 1
                    par = [src.parity(s) for s in syms]
                    prefix = [0] * (k + 2)
                    for i in range(k + 1):
                        prefix[i + 1] = prefix[i] + par[i]
                    for ls in itertools.combinations_with_replacement(range(k + 1), q):
                        eps = sum(prefix[l + 1] + l for l in ls) + p * q
                        level_of = []
                        for i in range(k + 1):
                            s = 0
                            while s < q and ls[s] < i:
                                s += 1
                            level_of.append(q - s)
                        # position t of the tau^{-1} insertion among the k+q
                        # slots after the head
                        for t in range(0, k + q + 1):
                            _iso_expand(
                                lax_a, lax_b, tau_elem, I, levels, K, path, syms,
                                monos, ls, level_of, t,
                                Fraction(sigma) * coeff, eps, prefix, emit,
                            )
    out = {K: HochChain(dst, K, terms) for K, terms in acc.items()}
    return CechHochChain(dst, out)


def _iso_expand(lax_a, lax_b, tau_elem, I, levels, K, path, syms, monos, ls,
                level_of, t, coeff, eps, prefix, emit):
    scene = lax_a.scene
    src, dst = lax_a.src, lax_a.dst
    k = len(syms) - 1
    q = len(ls)
    src_ring = src.ring(I)
    obj = lax_a.dst_obj

    # walk the h^q slot layout, tracking original-slot and insertion counts,
    # switching from (phi, alpha) to (psi, beta) after position t
    layout = []  # ("slot", i) or ("ains", s)
    ins_after: dict = {}
    for s, l in enumerate(ls):
        ins_after.setdefault(l, []).append(s)
    for i in range(k + 1):
        layout.append(("slot", i))
        for s in ins_after.get(i, []):
            layout.append(("ains", s))
    # positions after the head are 1..k+q; t = 0 puts tau^{-1} right after
    # the head slot 0
    if t > k + q:
        return
    r = 0   # last original slot index before tau^{-1}
    ins_before = 0  # inverse-iso insertions before tau^{-1}
    for pos in range(1, t + 1):
        kind, val = layout[pos]
        if kind == "slot":
            r = val
        else:
            ins_before += 1
    sign = (-1) ** ((eps + prefix[r + 1] + r) % 2)

    def processed(lax, i):
        lvl = levels[level_of[i]]
        elem = restrict_elem(src, {syms[i]: src_ring.monomial(monos[i])}, I, lvl)
        out: dict = {}
        for sym, cc in elem.items():
            out = elem_add(out, elem_scale(lax.functor_sym(lvl, sym), cc))
        return restrict_elem(dst, out, lvl, K)

    def a_ins(lax, s):
        below, above = levels[q - s - 1], levels[q - s]
        return restrict_elem(dst, lax.alpha_inv(below, above), above, K)

    # tau^{-1} carries the component of the level the descent has reached
    switch_level = levels[q - ins_before]
    tau_here = tau_elem(switch_level)
    if switch_level != K:
        tau_here = restrict_elem(dst, tau_here, switch_level, K)
    tau_inv = {sy: cc.inverse() for sy, cc in tau_here.items()}
    assert len(tau_inv) == 1
    tau_head = tau_elem(I)
    if I != K:
        tau_head = restrict_elem(dst, tau_head, I, K)

    seq = []
    out_path = []
    for pos, (kind, val) in enumerate(layout):
        lax = lax_a if pos <= t else lax_b
        if kind == "slot":
            piece = processed(lax, val)
            if pos == 0:
                if q:
                    piece = _elem_mul(dst, K, lax_a.alpha(I, K), piece)
                piece = _elem_mul(dst, K, tau_head, piece)
            seq.append(piece)
        else:
            seq.append(a_ins(lax, val))
        out_path.append(obj)
        if pos == t:
            seq.append(tau_inv)
            out_path.append(obj)

    def rec(idx, syms2, monos2, c2):
        if c2 == 0:
            return
        if idx == len(seq):
            emit(K, (tuple(out_path), tuple(syms2), tuple(monos2)), c2)
            return
        for sym2, cc in seq[idx].items():
            for frac, mono2 in cc.monomials():
                rec(idx + 1, syms2 + [sym2], monos2 + [mono2], c2 * frac)

    rec(0, [], [], coeff * sign)
