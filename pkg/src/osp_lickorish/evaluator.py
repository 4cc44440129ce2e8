"""Reshetikhin-Turaev evaluation of Morse diagrams colored by the vector module V.

Upward strands carry V, downward strands carry V*.  Diagrams are folded
slice by slice: the state is the matrix of the tangle read so far, from the
input boundary space to the current slice space V^{a1} x ... x V^{as}.

The state is stored as an integer array of shape (inputs, 3^s, deg) holding
power-basis coefficients, over one common integer denominator.  An exact
elementary morphism acts on it through its "realified" integer matrix, in
which every entry c is replaced by the deg x deg matrix of multiplication by
c.  Arithmetic is int64 while a bound on the result fits, Python ints after.
"""

from __future__ import annotations

import math
from functools import lru_cache, reduce
from typing import Optional, Sequence

import numpy as np

from .cyclotomic import CycContext, CycNum
from .diagram import CAP, CUP, UP, MorseDiagram, _cabled
from .matrix import Matrix, inverse, kron_all
from .rep import V, VSTAR, Morphism, braid_on_VV, decompose_power, duality_morphisms

INT64_SAFE = 2**62
MAX_WIDTH = 13


class EvaluationError(RuntimeError):
    pass


def _I(ctx: CycContext, n: int = 1) -> Matrix:
    return Matrix.identity(ctx, 3**n)


@lru_cache(maxsize=None)
def crossing_variants(ctx: CycContext) -> dict[tuple[str, str], tuple[Morphism, Morphism]]:
    """Braiding c_{a,b}: a x b -> b x a and its inverse b x a -> a x b, for a, b in {V, V*}.

    The mixed and dual braidings are obtained from c_{V,V} by bending strands
    with the duality morphisms (naturality of the braiding).
    """
    d = {k: m.matrix for k, m in duality_morphisms(ctx).items()}
    ev, coev, ev_t, coev_t = d["ev"], d["coev"], d["ev_twisted"], d["coev_twisted"]
    I1 = _I(ctx)
    c_vv = braid_on_VV(ctx).matrix
    c_vv_inv = inverse(c_vv)
    # c_{V*,V} = (ev x id x id)(id x c_{V,V}^-1 x id)(id x id x coev)
    c_dv = kron_all([ev, I1, I1]) @ kron_all([I1, c_vv_inv, I1]) @ kron_all([I1, I1, coev])
    # c_{V,V*} = (id x id x ev~)(id x c_{V,V}^-1 x id)(coev~ x id x id)
    c_vd = kron_all([I1, I1, ev_t]) @ kron_all([I1, c_vv_inv, I1]) @ kron_all([coev_t, I1, I1])
    c_vd_inv = inverse(c_vd)
    # c_{V*,V*} = (ev x id x id)(id x c_{V,V*}^-1 x id)(id x id x coev)
    c_dd = kron_all([ev, I1, I1]) @ kron_all([I1, c_vd_inv, I1]) @ kron_all([I1, I1, coev])
    out = {}
    for (a, b), c, ci in (
        ((V, V), c_vv, c_vv_inv),
        ((VSTAR, V), c_dv, None),
        ((V, VSTAR), c_vd, c_vd_inv),
        ((VSTAR, VSTAR), c_dd, None),
    ):
        ci = ci if ci is not None else inverse(c)
        out[(a, b)] = (Morphism((a, b), (b, a), c), Morphism((b, a), (a, b), ci))
    return out


def crossing_morphism(types: tuple[str, str], sign: int, ctx: CycContext) -> Morphism:
    """Morphism of a crossing with bottom strand types ``types`` and orientation sign ``sign``.

    The bottom-left strand passes over exactly when sign = +1 for parallel
    strands and sign = -1 for antiparallel ones.
    """
    a, b = types
    left_over = sign == (1 if a == b else -1)
    variants = crossing_variants(ctx)
    if left_over:
        return variants[(a, b)][0]
    return variants[(b, a)][1]


# -- integer realification ------------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def realify(M: Matrix) -> tuple[np.ndarray, int]:
    """Integer matrix G and denominator D with M acting on coefficient vectors as G / D."""
    ctx = M.ctx
    deg = ctx.deg
    m, n = M.shape
    q = ctx.q
    prods = []
    D = 1
    for a, b, c in M.items():
        cj = c
        for j in range(deg):
            prods.append((a, b, j, cj))
            D = _lcm(D, cj.den)
            cj = cj * q
    G = np.zeros((m * deg, n * deg), dtype=object)
    for a, b, j, cj in prods:
        f = D // cj.den
        for i, x in enumerate(cj.num):
            if x:
                G[a * deg + i, b * deg + j] = x * f
    bound = max((sum(abs(int(v)) for v in row) for row in G), default=0)
    if bound < INT64_SAFE:
        G = G.astype(np.int64)
    return G, D


class _Gate:
    __slots__ = ("G", "G64", "D", "w_in", "w_out", "row_bound")

    def __init__(self, M: Matrix, w_in: int, w_out: int):
        G, D = realify(M)
        self.G = G.astype(object)
        self.G64 = G if G.dtype == np.int64 else None
        self.D = D
        self.w_in = w_in
        self.w_out = w_out
        self.row_bound = int(max((np.abs(self.G).sum(axis=1).max() if self.G.size else 0), 1))


@lru_cache(maxsize=None)
def _gate_table(ctx: CycContext) -> dict:
    d = duality_morphisms(ctx)
    table = {
        ("cup", UP): _Gate(d["coev"].matrix, 0, 2),
        ("cup", "d"): _Gate(d["coev_twisted"].matrix, 0, 2),
        ("cap", (VSTAR, V)): _Gate(d["ev"].matrix, 2, 0),
        ("cap", (V, VSTAR)): _Gate(d["ev_twisted"].matrix, 2, 0),
    }
    for a in (V, VSTAR):
        for b in (V, VSTAR):
            for s in (1, -1):
                table[("x", (a, b), s)] = _Gate(crossing_morphism((a, b), s, ctx).matrix, 2, 2)
    return table


@lru_cache(maxsize=None)
def top_projector_gate(ctx: CycContext, mu: int) -> _Gate:
    return _Gate(top_projector(ctx, mu), mu, mu)


@lru_cache(maxsize=None)
def top_projector(ctx: CycContext, mu: int) -> Matrix:
    """Projector of V^{(x)mu} onto its unique V+(mu) summand."""
    if mu == 0:
        return Matrix.identity(ctx, 1)
    tops = [s for s in decompose_power(ctx, mu) if s.label.lam == mu]
    assert len(tops) == 1 and tops[0].label.eps == 0, "top summand must be unique and even"
    return tops[0].projector()


class SliceState:
    """Tangle read so far: integer coefficient array over a common denominator."""

    def __init__(self, ctx: CycContext, k_in: int):
        self.ctx = ctx
        self.types: list[str] = [V] * k_in
        B = 3**k_in
        S = np.zeros((B, B, ctx.deg), dtype=np.int64)
        for b in range(B):
            S[b, b, 0] = 1
        self.S = S
        self.den = 1

    def apply(self, gate: _Gate, pos: int) -> None:
        """Act with ``gate`` on the strands pos .. pos + w_in - 1 (0-based)."""
        S = self.S
        B, dim, deg = S.shape
        left = 3**pos
        mid = 3**gate.w_in
        right = dim // (left * mid)
        big = S.dtype == object
        if not big:
            peak = int(np.abs(S).max()) if S.size else 0
            if peak * gate.row_bound >= INT64_SAFE or gate.G64 is None:
                S = S.astype(object)
                big = True
        G = gate.G if big else gate.G64
        X = S.reshape(B, left, mid, right, deg).transpose(0, 1, 3, 2, 4).reshape(B * left * right, mid * deg)
        Y = X @ G.T
        mo = 3**gate.w_out
        Y = Y.reshape(B, left, right, mo, deg).transpose(0, 1, 3, 2, 4).reshape(B, left * mo * right, deg)
        self.S = Y
        self.den *= gate.D
        if gate.D != 1:
            self._normalize()

    def _normalize(self) -> None:
        S = self.S
        if S.dtype == object:
            g = reduce(math.gcd, (int(x) for x in S.flat), self.den)
        else:
            g = math.gcd(int(np.gcd.reduce(S.ravel())) if S.size else 0, self.den)
        if g > 1:
            self.S = S // g
            self.den //= g
        if self.S.dtype == object and self.S.size and int(np.abs(self.S).max()) < INT64_SAFE // 2**20:
            self.S = self.S.astype(np.int64)

    def scalar(self) -> CycNum:
        assert self.S.shape[:2] == (1, 1)
        return CycNum(self.ctx, tuple(int(x) for x in self.S[0, 0]), self.den)

    def matrix(self) -> Matrix:
        B, dim, deg = self.S.shape
        ctx = self.ctx
        entries = []
        for b in range(B):
            for a in range(dim):
                row = self.S[b, a]
                if row.any():
                    entries.append((a, b, CycNum(ctx, tuple(int(x) for x in row), self.den)))
        return Matrix.from_entries(ctx, (dim, B), entries)


def _run(d: MorseDiagram, ctx: CycContext, inserts: Sequence[tuple[int, int, int, int]] = (), gates: Optional[dict] = None) -> SliceState:
    if d.width() > MAX_WIDTH:
        raise EvaluationError(f"diagram width {d.width()} exceeds the supported maximum {MAX_WIDTH}")
    table = _gate_table(ctx)
    st = SliceState(ctx, d.k_in)
    pending = {}
    for after, start, length, comp in inserts:
        pending.setdefault(after, []).append((start, length, comp))

    def insert_projectors(n: int) -> None:
        for start, length, comp in pending.get(n, ()):
            gate = (gates or {}).get(comp)
            if gate is None:
                continue
            if any(t != V for t in st.types[start - 1 : start - 1 + length]):
                raise EvaluationError("projector must sit on upward strands")
            st.apply(gate, start - 1)

    insert_projectors(0)
    for n, ev in enumerate(d.events, start=1):
        p = ev.pos - 1
        if ev.kind == CUP:
            st.apply(table[("cup", ev.orient)], p)
            st.types[p:p] = [V, VSTAR] if ev.orient == UP else [VSTAR, V]
        elif ev.kind == CAP:
            pair = (st.types[p], st.types[p + 1])
            if pair[0] == pair[1]:
                raise EvaluationError(f"internal type mismatch at event {n}: cap on {pair}")
            st.apply(table[("cap", pair)], p)
            del st.types[p : p + 2]
        else:
            pair = (st.types[p], st.types[p + 1])
            st.apply(table[("x", pair, ev.sign)], p)
            st.types[p], st.types[p + 1] = pair[1], pair[0]
        insert_projectors(n)
        if not st.S.any():
            break
    return st


def evaluate(d: MorseDiagram, ctx: CycContext) -> CycNum:
    """Value of a closed diagram with every component colored by V."""
    if not d.closed:
        raise EvaluationError("evaluate needs a closed diagram; use evaluate_open")
    st = _run(d, ctx)
    if not st.S.any():
        return ctx.zero()
    return st.scalar()


def evaluate_open(d: MorseDiagram, ctx: CycContext) -> Morphism:
    """Endomorphism of V^{(x)k} assigned to a (k, k) tangle with upward boundary strands."""
    if d.k_in != d.k_out:
        raise EvaluationError("evaluate_open needs a (k, k) tangle")
    orients = d.trace().final[0]
    if any(o != UP for o in orients):
        raise EvaluationError("boundary type mismatch: output strands must all point up")
    st = _run(d, ctx)
    if not st.S.any():
        M = Matrix.zeros(ctx, 3**d.k_out, 3**d.k_in)
    else:
        M = st.matrix()
    types = (V,) * d.k_in
    return Morphism(types, types, M)


def projected_evaluate(d: MorseDiagram, ctx: CycContext, mult: Sequence[int], projectors: Sequence[Optional[Matrix]]) -> CycNum:
    """Evaluate cable(d, mult) with projectors[c] (an idempotent on V^{(x)mult[c]}, or None) inserted on component c."""
    if not d.closed:
        raise EvaluationError("projected evaluation needs a closed diagram")
    cabled, inserts = _cabled(d, mult, marks=True)
    gates = {}
    for c, P in enumerate(projectors):
        if P is not None:
            if P.shape != (3 ** mult[c],) * 2:
                raise EvaluationError(f"projector for component {c} has shape {P.shape}, expected {3 ** mult[c]}")
            gates[c] = _Gate(P, mult[c], mult[c])
    st = _run(cabled, ctx, inserts, gates)
    if not st.S.any():
        return ctx.zero()
    return st.scalar()


def colored_evaluate(d: MorseDiagram, ctx: CycContext, colors: Sequence[int]) -> CycNum:
    """Value of a closed diagram with component c colored by V+(colors[c]).

    Each component is cabled colors[c] times and the projector onto the top
    summand V+(mu) of V^{(x)mu} is inserted once on its first cup block.
    """
    if not d.closed:
        raise EvaluationError("colored evaluation needs a closed diagram")
    if any(not 0 <= c <= ctx.N - 1 for c in colors):
        raise EvaluationError(f"colors must lie in 0..{ctx.N - 1}")
    cabled, inserts = _cabled(d, colors, marks=True)
    gates = {c: top_projector_gate(ctx, mu) for c, mu in enumerate(colors) if mu > 1}
    st = _run(cabled, ctx, inserts, gates)
    if not st.S.any():
        return ctx.zero()
    return st.scalar()
