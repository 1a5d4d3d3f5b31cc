"""The trace map from matrix-factorization chains to curved-line chains.

Three ingredients: the shuffle insertion of twisted differentials, the
chart-reindexing operators h^q that insert inverse transition matrices
while sliding realizations across charts, and the supertrace that collapses
matrix tensors to scalar tensors with parity signs.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .cdg import CurvedLine, MFCategory, TrivializedCategory
from .hochschild import CechHochChain, HochChain, TruncationOverflow, _expand_slot
from .scene import Scene


def sh_shuffle(n: int, chain: HochChain, trunc: int | None = None, strict: bool = True) -> HochChain:
    """Sum over all ways to distribute n twisted-differential slots into the
    k+1 gaps: a_0[d^{i_0}|a_1|d^{i_1}|...|a_k|d^{i_k}], i_0+...+i_k = n."""
    cat = chain.presheaf
    assert isinstance(cat, MFCategory)
    I = chain.I
    ring = cat.ring(I)
    if trunc is None:
        trunc = cat.scene.trunc
    if n == 0:
        return chain
    out: dict = {}
    deltas = {x: cat.delta_element(I, x) for x in cat.objects(I)}
    unit_mono = (0,) * ring.nvars

    for (path, syms, monos), coeff in chain.terms.items():
        k = len(syms) - 1
        if k + n > trunc:
            if strict:
                raise TruncationOverflow(
                    f"shuffle insertion would exceed the length cap {trunc}"
                )
            continue
        gap_objs = [path[(i + 1) % (k + 1)] for i in range(k + 1)]
        for cuts in itertools.combinations(range(n + k), k):
            # composition of n into k+1 parts via stars and bars
            counts = []
            prev = -1
            for c in cuts:
                counts.append(c - prev - 1)
                prev = c
            counts.append(n + k - 1 - prev)
            new_path = []
            slot_elems = []
            for i in range(k + 1):
                new_path.append(path[i])
                slot_elems.append(None)  # placeholder: original slot i
                obj = gap_objs[i]
                if counts[i] and not deltas[obj]:
                    slot_elems = None
                    break
                for _ in range(counts[i]):
                    new_path.append(obj)
                    slot_elems.append(deltas[obj])
            if slot_elems is None:
                continue

            def rec(idx, orig_idx, syms2, monos2, c2):
                if c2 == 0:
                    return
                if idx == len(slot_elems):
                    key = (tuple(new_path), tuple(syms2), tuple(monos2))
                    out[key] = out.get(key, Fraction(0)) + c2
                    return
                elem = slot_elems[idx]
                if elem is None:
                    rec(idx + 1, orig_idx + 1, syms2 + [syms[orig_idx]],
                        monos2 + [monos[orig_idx]], c2)
                    return
                for sym2, mono2, frac in _expand_slot(ring, elem, unit_mono):
                    rec(idx + 1, orig_idx, syms2 + [sym2], monos2 + [mono2], c2 * frac)

            rec(0, 0, [], [], coeff)
    return HochChain(cat, I, out)


def sh_shuffle_cech(n: int, c: CechHochChain, strict: bool = True) -> CechHochChain:
    return CechHochChain(
        c.presheaf,
        {I: sh_shuffle(n, ch, strict=strict) for I, ch in c.entries.items()},
    )


def supertrace_tensor(cat: MFCategory, I, path, syms, monos, line: CurvedLine):
    """sTr of one matrix tensor: scalar tensor with sign
    (m+1)|e_0| + |e_1| + ... + |e_m| when the unit entries close up cyclically."""
    m = len(syms) - 1
    rows, cols = [], []
    for s in syms:
        _, y, x, r, c = s
        rows.append(r)
        cols.append(c)
    for i in range(m + 1):
        if cols[i] != rows[(i + 1) % (m + 1)]:
            return None
    sigma = (m + 1) * cat.mfs[path[0]].parities[rows[0]]
    for i in range(1, m + 1):
        sigma += cat.mfs[path[i]].parities[rows[i]]
    sign = -1 if sigma % 2 else 1
    key = (("*",) * (m + 1), ("1",) * (m + 1), tuple(monos))
    return key, sign


def supertrace(c: CechHochChain, line: CurvedLine) -> CechHochChain:
    cat = c.presheaf
    assert isinstance(cat, MFCategory)
    entries = {}
    for I, ch in c.entries.items():
        out: dict = {}
        for (path, syms, monos), coeff in ch.terms.items():
            got = supertrace_tensor(cat, I, path, syms, monos, line)
            if got is None:
                continue
            key, sign = got
            out[key] = out.get(key, Fraction(0)) + coeff * sign
        hc = HochChain(line, I, out)
        if not hc.is_zero():
            entries[I] = hc
    return CechHochChain(line, entries)


def _unit_powers(scene: Scene, cat: MFCategory, a, b, K):
    """u_{ab}^k for the twists appearing in the objects, cached per call site."""
    return scene.atlas.unit(a, b, K)


def hq_basis(q: int, c: CechHochChain, triv: TrivializedCategory) -> CechHochChain:
    """Insert q inverse transition matrices while sliding realizations to
    progressively smaller lead charts; lands in trivialized chains.

    Sign: (-1)^{eps + p q + binom(q, 2)} with
    eps = sum_s (|a_0| + ... + |a_{l_s}| + l_s).
    """
    cat = c.presheaf
    assert isinstance(cat, MFCategory)
    scene = cat.scene
    acc: dict = {}

    def emit(K, key, val):
        if val == 0:
            return
        acc.setdefault(K, {})
        acc[K][key] = acc[K].get(key, Fraction(0)) + val

    for I, ch in c.entries.items():
        p = len(I) - 1
        i0 = I[0]
        smaller = [j for j in scene.atlas.chart_ids if j < i0]
        for J in itertools.combinations(smaller, q):
            K = tuple(J) + I
            if not scene.atlas.has_tuple(K):
                continue
            charts = list(J) + [i0]  # i_{-q} < ... < i_{-1} < i_0
            res = scene.atlas.res(I, K)
            # transitions from the stored lead i0 to each smaller chart
            units = {a: scene.atlas.unit(a, i0, K) for a in J}
            ring = scene.atlas.ring(K)
            upow_cache: dict = {}

            def u_pow(chart, n, _units=units, _ring=ring, _i0=i0, _cache=upow_cache):
                if chart == _i0 or n == 0:
                    return _ring.one()
                key = (chart, n)
                if key not in _cache:
                    _cache[key] = _units[chart] ** n
                return _cache[key]
            for (path, syms, monos), coeff in ch.terms.items():
                k = len(syms) - 1
                par = [cat.parity(s) for s in syms]
                prefix = [0] * (k + 2)
                for i in range(k + 1):
                    prefix[i + 1] = prefix[i] + par[i]
                res_monos = []
                dead = False
                for m in monos:
                    rm = res(cat.ring(I).monomial(m))
                    if rm.is_zero():
                        dead = True
                        break
                    ((frac, mono2),) = list(rm.monomials())
                    res_monos.append((frac, mono2))
                if dead:
                    continue
                for ls in itertools.combinations_with_replacement(range(k + 1), q):
                    eps = sum(prefix[l + 1] + l for l in ls)
                    sign = (-1) ** ((eps + p * q + comb(q, 2)) % 2)
                    # slot i realized at charts[#{s : l_s < i}]
                    chart_of = []
                    for i in range(k + 1):
                        s = 0
                        while s < q and ls[s] < i:
                            s += 1
                        chart_of.append(charts[s])
                    _hq_expand(
                        cat, scene, K, path, syms, res_monos, ls,
                        charts, u_pow, coeff * sign, emit, chart_of,
                    )
    out = {
        K: HochChain(triv, K, terms)
        for K, terms in acc.items()
    }
    return CechHochChain(triv, out)


def _hq_expand(cat, scene, K, path, syms, res_monos, ls, charts, u_pow,
               coeff, emit, chart_of):
    """Assemble one h^q summand: realized slots, g^{-1} insertions, head twist."""
    k = len(syms) - 1
    q = len(ls)
    i0 = charts[-1]
    ring = scene.atlas.ring(K)

    # realized slot i: (F)_c = g_{c,i0} F g_{c,i0}^{-1} scales the matrix unit
    # by u_{c,i0}^{tw_row - tw_col}
    slot_items = []
    for i in range(k + 1):
        _, y, x, r, col = syms[i]
        frac, mono = res_monos[i]
        tw = cat.mfs[y].twists[r] - cat.mfs[x].twists[col]
        up = u_pow(chart_of[i], tw)
        m = ring.monomial(mono)
        lp = m if up is ring.one() else up * m
        slot_items.append((syms[i], lp, frac))
    # head factor g_{i0, i_{-q}} scales slot 0 by u_{i_{-q}, i0}^{-tw_row}
    _, y0, _, r0, _ = syms[0]
    head_extra = u_pow(charts[0], -cat.mfs[y0].twists[r0])

    seq = []  # realized slots interleaved with g^{-1} diagonal insertions
    out_path = []
    ins_after: dict = {}
    for s, l in enumerate(ls):
        ins_after.setdefault(l, []).append(s)
    for i in range(k + 1):
        sym, lp, frac = slot_items[i]
        if i == 0 and head_extra is not ring.one():
            lp = lp * head_extra
        out_path.append(path[i])
        seq.append((sym, lp, frac))
        for s in ins_after.get(i, []):
            # g^{-1}_{ab} with a = charts[s+1], b = charts[s]: diagonal
            # entries u_{ab}^{-twist} = u_{a,i0}^{-twist} u_{b,i0}^{twist}
            obj = path[(i + 1) % (k + 1)]
            a, b = charts[s + 1], charts[s]
            elem = {}
            mf = cat.mfs[obj]
            for rb in range(mf.rank):
                n = mf.twists[rb]
                elem[("E", obj, obj, rb, rb)] = u_pow(a, -n) * u_pow(b, n)
            out_path.append(obj)
            seq.append((elem, None, None))

    def rec(idx, syms2, monos2, c2):
        if c2 == 0:
            return
        if idx == len(seq):
            emit(K, (tuple(out_path), tuple(syms2), tuple(monos2)), c2)
            return
        item = seq[idx]
        if item[1] is not None:
            sym, lp, frac = item
            for f2, mono2 in lp.monomials():
                rec(idx + 1, syms2 + [sym], monos2 + [mono2], c2 * frac * f2)
        else:
            for sym2, val in item[0].items():
                for f2, mono2 in val.monomials():
                    rec(idx + 1, syms2 + [sym2], monos2 + [mono2], c2 * f2)

    rec(0, [], [], coeff)


def yoneda(c: CechHochChain, cat: MFCategory, obj: str) -> CechHochChain:
    """Scalars act on a rank-one even object: the strict inclusion of the
    curved line into the matrix category."""
    assert isinstance(c.presheaf, CurvedLine)
    entries = {}
    for I, ch in c.entries.items():
        out = {}
        for (path, syms, monos), coeff in ch.terms.items():
            m = len(syms)
            key = ((obj,) * m, (("E", obj, obj, 0, 0),) * m, monos)
            out[key] = out.get(key, Fraction(0)) + coeff
        entries[I] = HochChain(cat, I, out)
    return CechHochChain(cat, entries)


def phi(c: CechHochChain, out_max_len: int, line: CurvedLine | None = None,
        triv: TrivializedCategory | None = None) -> CechHochChain:
    """phi = sum_{n,q} (-1)^n sTr(h^q(Sh(d^n, -))), complete on all output
    lengths <= out_max_len."""
    cat = c.presheaf
    assert isinstance(cat, MFCategory)
    scene = cat.scene
    assert out_max_len <= scene.trunc
    if line is None:
        line = CurvedLine(scene, -1)
    if triv is None:
        triv = TrivializedCategory(scene, list(cat.mfs.values()))
    acc = CechHochChain(line, {})
    nq_max = len(scene.atlas.chart_ids)
    for n in range(out_max_len + 1):
        shn = sh_shuffle_cech(n, c, strict=False)
        if shn.is_zero():
            continue
        sign = Fraction((-1) ** n)
        for q in range(nq_max):
            hq = hq_basis(q, shn, triv)
            if hq.is_zero():
                continue
            tr = supertrace(hq, line).truncate(out_max_len)
            if not tr.is_zero():
                acc = acc + tr.scale(sign)
    return acc
