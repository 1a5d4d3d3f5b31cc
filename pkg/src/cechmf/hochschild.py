"""Truncated Hochschild chains over a cdg presentation and their differentials.

A chain is a Q-linear combination of basis tensors

    c * (m_0 s_0)[m_1 s_1 | ... | m_k s_k]

with s_i hom-basis symbols forming a cyclic composable path (s_i maps the
(i+1)-st path object to the i-th, indices mod k+1) and m_i Laurent monomials
of the tuple ring.  The differential is d_0 (curvature insertion) + d_1
(internal differential) + d_2 (composition), with the standard signs; the
Cech-Hochschild total differential twists the internal part by (-1)^p.

Lengths are capped by the scene truncation; a curvature insertion that
would exceed the cap raises TruncationOverflow rather than dropping terms.
"""

from __future__ import annotations

from fractions import Fraction

from .cdg import CdgPresheaf
from .rings import LocPoly
from .scene import Scene


class TruncationOverflow(RuntimeError):
    pass


class HochChain:
    """Chain over one tuple: {(path, syms, monos): Fraction}."""

    __slots__ = ("presheaf", "I", "terms")

    def __init__(self, presheaf: CdgPresheaf, I, terms: dict | None = None):
        self.presheaf = presheaf
        self.I = tuple(I)
        self.terms = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                self.terms[key] = c

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, HochChain)
            and self.I == other.I
            and self.terms == other.terms
        )

    def __add__(self, other):
        assert self.I == other.I and self.presheaf is other.presheaf
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return HochChain(self.presheaf, self.I, terms)

    def __neg__(self):
        return HochChain(self.presheaf, self.I, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return HochChain(self.presheaf, self.I, {k: v * c for k, v in self.terms.items()})

    def lengths(self):
        return sorted({len(key[1]) - 1 for key in self.terms})

    def truncate(self, max_len: int) -> "HochChain":
        return HochChain(
            self.presheaf,
            self.I,
            {k: c for k, c in self.terms.items() if len(k[1]) - 1 <= max_len},
        )

    def __repr__(self):
        bits = []
        for (path, syms, monos), c in sorted(self.terms.items(), key=repr):
            slots = [f"{m}*{s}" for s, m in zip(syms, monos)]
            bits.append(f"{c}*{slots[0]}[{'|'.join(slots[1:])}]")
        return " + ".join(bits) or "0"


def term_parity(presheaf, syms) -> int:
    """Total parity |a_0| + sum(|a_i| + 1)."""
    k = len(syms) - 1
    return (sum(presheaf.parity(s) for s in syms) + k) % 2


def make_chain(presheaf, I, path, slots, coeff=1) -> HochChain:
    """Expand element-valued slots (dicts {sym: LocPoly}) into basis terms."""
    I = tuple(I)
    terms: dict = {}

    def rec(i, syms, monos, c):
        if i == len(slots):
            key = (tuple(path), tuple(syms), tuple(monos))
            terms[key] = terms.get(key, Fraction(0)) + c
            return
        for sym, coeff_lp in slots[i].items():
            for frac, mono in coeff_lp.monomials():
                rec(i + 1, syms + [sym], monos + [mono], c * frac)

    rec(0, [], [], Fraction(coeff))
    return HochChain(presheaf, I, terms)


def _mono_lp(ring, mono) -> LocPoly:
    return ring.monomial(mono)


def _expand_slot(ring, element: dict, mono):
    """Multiply an element by a monomial and expand to (sym, mono, Fraction)."""
    m = _mono_lp(ring, mono)
    for sym, c in element.items():
        for frac, mm in (c * m).monomials():
            yield sym, mm, frac


ALL_PARTS = ("d0", "d1", "d2")


def hoch_d(chain: HochChain, trunc: int | None = None, parts=ALL_PARTS) -> HochChain:
    """d_0 + d_1 + d_2 with the displayed signs (or a subset of the three)."""
    ph = chain.presheaf
    I = chain.I
    ring = ph.ring(I)
    if trunc is None:
        trunc = ph.scene.trunc
    out: dict = {}

    def emit(path, syms, monos, c):
        if c == 0:
            return
        key = (tuple(path), tuple(syms), tuple(monos))
        out[key] = out.get(key, Fraction(0)) + c

    for (path, syms, monos), coeff in chain.terms.items():
        k = len(syms) - 1
        par = [ph.parity(s) for s in syms]
        prefix = [0] * (k + 2)
        for i in range(k + 1):
            prefix[i + 1] = prefix[i] + par[i]

        # d_0: insert the curvature of the object after slot i
        for i in range(k + 1) if "d0" in parts else ():
            obj = path[(i + 1) % (k + 1)]
            h = ph.curvature(I, obj)
            if not h:
                continue
            if k + 1 > trunc:
                raise TruncationOverflow(
                    f"curvature insertion would exceed the length cap {trunc}"
                )
            sign = (-1) ** ((prefix[i + 1] + i) % 2)
            for hsym, hmono, hfrac in _expand_slot(ring, h, (0,) * ring.nvars):
                new_path = path[: i + 1] + (obj,) + path[i + 1 :]
                new_syms = syms[: i + 1] + (hsym,) + syms[i + 1 :]
                new_monos = monos[: i + 1] + (hmono,) + monos[i + 1 :]
                emit(new_path, new_syms, new_monos, coeff * sign * hfrac)

        # d_1: internal differential of slot i
        for i in range(k + 1) if "d1" in parts else ():
            ds = ph.d(I, syms[i])
            if not ds:
                continue
            sign = (-1) ** ((prefix[i] + i) % 2)
            for nsym, nmono, nfrac in _expand_slot(ring, ds, monos[i]):
                new_syms = syms[:i] + (nsym,) + syms[i + 1 :]
                new_monos = monos[:i] + (nmono,) + monos[i + 1 :]
                emit(path, new_syms, new_monos, coeff * sign * nfrac)

        # d_2: compositions
        if k >= 1 and "d2" in parts:
            for i in range(k):
                prod = ph.compose(I, syms[i], syms[i + 1])
                if not prod:
                    continue
                if i == 0:
                    sign = (-1) ** (par[0] % 2)
                else:
                    sign = (-1) ** ((prefix[i + 1] + i) % 2)
                mono_prod = tuple(a + b for a, b in zip(monos[i], monos[i + 1]))
                new_path = path[: i + 1] + path[i + 2 :]
                for nsym, nmono, nfrac in _expand_slot(ring, prod, mono_prod):
                    new_syms = syms[:i] + (nsym,) + syms[i + 2 :]
                    new_monos = monos[:i] + (nmono,) + monos[i + 2 :]
                    emit(new_path, new_syms, new_monos, coeff * sign * nfrac)
            # wrap-around term a_k a_0 [a_1 | ... | a_{k-1}]
            prod = ph.compose(I, syms[k], syms[0])
            if prod:
                expo = 1 + (par[k] + 1) * (prefix[k] + k - 1)
                sign = (-1) ** (expo % 2)
                mono_prod = tuple(a + b for a, b in zip(monos[k], monos[0]))
                new_path = (path[k],) + path[1:k]
                for nsym, nmono, nfrac in _expand_slot(ring, prod, mono_prod):
                    new_syms = (nsym,) + syms[1:k]
                    new_monos = (nmono,) + monos[1:k]
                    emit(new_path, new_syms, new_monos, coeff * sign * nfrac)

    return HochChain(ph, I, out)


def restrict_chain(chain: HochChain, J) -> HochChain:
    """Image under the restriction functor to a larger tuple."""
    ph = chain.presheaf
    I, J = chain.I, tuple(J)
    ring_J = ph.ring(J)
    if not ph.live(J):
        return HochChain(ph, J, {})
    src_ring = ph.ring(I)
    out: dict = {}
    for (path, syms, monos), coeff in chain.terms.items():
        # each slot: restrict the basis symbol and the monomial coefficient
        expanded = [[] for _ in syms]
        for i, (s, m) in enumerate(zip(syms, monos)):
            elem = ph.restrict_sym(I, J, s)
            c = ph.restrict_coeff(I, J, _mono_lp(src_ring, m))
            for sym2, c2 in elem.items():
                for frac, mono2 in (c2 * c).monomials():
                    expanded[i].append((sym2, mono2, frac))

        def rec(i, syms2, monos2, c):
            if c == 0:
                return
            if i == len(expanded):
                key = (path, tuple(syms2), tuple(monos2))
                out[key] = out.get(key, Fraction(0)) + c
                return
            for sym2, mono2, frac in expanded[i]:
                rec(i + 1, syms2 + [sym2], monos2 + [mono2], c * frac)

        rec(0, [], [], coeff)
    return HochChain(ph, J, out)


class CechHochChain:
    """Cech cochain of Hochschild chains: {tuple: HochChain}."""

    __slots__ = ("presheaf", "entries")

    def __init__(self, presheaf: CdgPresheaf, entries: dict | None = None):
        self.presheaf = presheaf
        self.entries = {}
        for I, ch in (entries or {}).items():
            if not ch.is_zero():
                self.entries[tuple(I)] = ch

    @property
    def scene(self) -> Scene:
        return self.presheaf.scene

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, CechHochChain)
            and self.presheaf is other.presheaf
            and self.entries == other.entries
        )

    def __add__(self, other):
        assert self.presheaf is other.presheaf
        entries = dict(self.entries)
        for I, ch in other.entries.items():
            entries[I] = entries[I] + ch if I in entries else ch
        return CechHochChain(self.presheaf, entries)

    def __neg__(self):
        return CechHochChain(self.presheaf, {I: -ch for I, ch in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return CechHochChain(self.presheaf, {I: ch.scale(c) for I, ch in self.entries.items()})

    def truncate(self, max_len: int) -> "CechHochChain":
        return CechHochChain(
            self.presheaf, {I: ch.truncate(max_len) for I, ch in self.entries.items()}
        )

    def __repr__(self):
        inner = ", ".join(f"{I}: {ch!r}" for I, ch in sorted(self.entries.items()))
        return f"CechHochChain{{{inner}}}"


def cech_part_d(c: CechHochChain) -> CechHochChain:
    acc: dict = {}
    for I, ch in c.entries.items():
        for j, pos, J in c.scene.atlas.extensions(I):
            piece = restrict_chain(ch, J)
            if pos % 2:
                piece = -piece
            acc[J] = acc[J] + piece if J in acc else piece
    return CechHochChain(c.presheaf, acc)


def twisted_hoch_d(c: CechHochChain, trunc: int | None = None, parts=ALL_PARTS) -> CechHochChain:
    """(-1)^p (selected internal parts), no Cech summand."""
    acc: dict = {}
    for I, ch in c.entries.items():
        p = len(I) - 1
        piece = hoch_d(ch, trunc, parts)
        if p % 2:
            piece = -piece
        if not piece.is_zero():
            acc[I] = acc[I] + piece if I in acc else piece
    return CechHochChain(c.presheaf, acc)


def cech_hoch_d(c: CechHochChain, trunc: int | None = None) -> CechHochChain:
    """Total differential d_Cech + (-1)^p (d_0 + d_1 + d_2)."""
    return cech_part_d(c) + twisted_hoch_d(c, trunc)


def apply_morphism(c: CechHochChain, morphism, dst: CdgPresheaf) -> CechHochChain:
    """Entrywise application of a strict presheaf morphism."""
    entries = {}
    for I, ch in c.entries.items():
        ring = dst.ring(I)
        out: dict = {}
        for (path, syms, monos), coeff in ch.terms.items():
            new_path = tuple(morphism.object(x) for x in path)
            slots = [morphism.apply_sym(I, s) for s in syms]

            def rec(i, syms2, monos2, cc):
                if cc == 0:
                    return
                if i == len(slots):
                    key = (new_path, tuple(syms2), tuple(monos2))
                    out[key] = out.get(key, Fraction(0)) + cc
                    return
                for sym2, mono2, frac in _expand_slot(ring, slots[i], monos[i]):
                    rec(i + 1, syms2 + [sym2], monos2 + [mono2], cc * frac)

            rec(0, [], [], coeff)
        entries[I] = HochChain(dst, I, out)
    return CechHochChain(dst, entries)
