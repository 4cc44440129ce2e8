"""Surgery invariant F(M_L) = z^{-sigma(A_L)} Sigma(L) and its supporting tables.

Sigma(L) sums the V-colored evaluations of all cablings of L, weighted by
coefficients d^{(l)}.  The d are fixed by requiring that a (+1)-framed
V^{(x)l}-colored annulus, summed with these weights, acts on every V+(lam) as
the ribbon element; that linear system is solved through the b recursion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .cyclotomic import CycContext, CycNum, gauss_minus
from .diagram import MorseDiagram, cable, encircled_strands, linking_matrix, LinkingData, unknot
from .evaluator import colored_evaluate, evaluate, evaluate_open
from .inertia import inertia
from .matrix import Matrix
from .rep import ribbon_scalar, sd_q, twist_on_tensor


class VerificationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CheckReport:
    name: str
    ok: bool
    failures: tuple[str, ...] = ()

    def raise_for_failure(self) -> "CheckReport":
        if not self.ok:
            raise VerificationError(f"{self.name} failed: " + "; ".join(self.failures))
        return self


# -- b recursion -----------------------------------------------------------------

@dataclass(frozen=True)
class BTable:
    """Rows b^{(k)} = (b_0, ..., b_k): signed multiplicities of V+(j) in V^{(x)k}."""

    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, k: int) -> tuple[int, ...]:
        return self.rows[k]

    def __len__(self) -> int:
        return len(self.rows)

    def entry(self, k: int, j: int) -> int:
        row = self.rows[k]
        return row[j] if 0 <= j < len(row) else 0


@lru_cache(maxsize=None)
def b_rows(k_max: int) -> BTable:
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    rows = [(1,)]
    for _ in range(k_max):
        prev = rows[-1] + (0, 0)
        n = len(rows) - 1
        new = [prev[1]]
        for j in range(1, n + 2):
            new.append(prev[j - 1] - prev[j] + prev[j + 1])
        rows.append(tuple(new))
    return BTable(tuple(rows))


def b_matrix(N: int) -> list[list[int]]:
    """B[mu][nu] = b^{(mu)}_nu for 0 <= mu, nu < N; lower unitriangular."""
    t = b_rows(N - 1)
    return [[t.entry(mu, nu) for nu in range(N)] for mu in range(N)]


# -- eigenvalues of the annulus elements ---------------------------------------------

def _alternating(j: int, s: int, ctx: CycContext) -> CycNum:
    # (q^{(j+1)s} + q^{-js}) / (1 + q^s), expanded before specializing
    return ctx.laurent(_merge((t * s - j * s, (-1) ** t) for t in range(2 * j + 1)))


def _merge(pairs) -> dict[int, int]:
    out: dict[int, int] = {}
    for e, c in pairs:
        out[e] = out.get(e, 0) + c
    return out


def chi_C(lam: int, k: int, ctx: CycContext) -> CycNum:
    """Scalar by which a (+1)-framed annulus colored V^{(x)k} acts on V+(lam)."""
    if not 0 <= k <= ctx.N - 1:
        raise ValueError(f"k must lie in 0..{ctx.N - 1}")
    lam %= ctx.N
    s = 2 * lam + 1
    assert ctx.one() + ctx.monomial(s), "1 + q^s vanishes"
    out = ctx.zero()
    for j, bj in enumerate(b_rows(k)[k]):
        if bj:
            out = out + ctx.monomial(j * (j + 1), bj) * _alternating(j, s, ctx)
    return out


# -- closed-form solution --------------------------------------------------------------

def _as_vector(x: Optional[Sequence], ctx: CycContext) -> list[CycNum]:
    if x is None:
        return [ctx.zero()] * ctx.N
    if len(x) != ctx.N:
        raise ValueError(f"x must have length N = {ctx.N}")
    return [v if isinstance(v, CycNum) else ctx.const(v) for v in x]


def b_closed_form(ctx: CycContext, x: Optional[Sequence] = None) -> list[CycNum]:
    """b_mu = (1+q) q^{((N+1)/2)^2} G_{-1} SD(mu) / 2N + x_mu - x_{N-1-mu}."""
    N = ctx.N
    xs = _as_vector(x, ctx)
    pref = (ctx.one() + ctx.q) * ctx.monomial(((N + 1) // 2) ** 2) * gauss_minus(ctx) / (2 * N)
    return [pref * sd_q(mu, ctx) + xs[mu] - xs[N - 1 - mu] for mu in range(N)]


def solve_d(ctx: CycContext, b: Sequence[CycNum]) -> list[CycNum]:
    """The unique d with sum_mu d_mu B[mu][nu] = b_nu, by back-substitution."""
    N = ctx.N
    B = b_matrix(N)
    d = [ctx.zero()] * N
    for nu in range(N - 1, -1, -1):
        acc = b[nu]
        for mu in range(nu + 1, N):
            if B[mu][nu]:
                acc = acc - d[mu] * B[mu][nu]
        d[nu] = acc  # B[nu][nu] == 1
    return d


def d_times_B(ctx: CycContext, d: Sequence[CycNum]) -> list[CycNum]:
    B = b_matrix(ctx.N)
    return [sum((d[mu] * B[mu][nu] for mu in range(ctx.N) if B[mu][nu]), ctx.zero()) for nu in range(ctx.N)]


def verify_kirby_equation(ctx: CycContext, d: Sequence[CycNum]) -> CheckReport:
    failures = []
    for lam in range(ctx.N):
        lhs = sum((d[l] * chi_C(lam, l, ctx) for l in range(ctx.N)), ctx.zero())
        rhs = ribbon_scalar(lam, ctx)
        if lhs != rhs:
            failures.append(f"lambda={lam}: residual {lhs - rhs}")
    return CheckReport("kirby equation", not failures, tuple(failures))


# -- normalization z ---------------------------------------------------------------------

def z_forms(ctx: CycContext, d: Sequence[CycNum], b: Sequence[CycNum]) -> tuple[CycNum, CycNum, CycNum]:
    """z by the cable sum, by the b-weighted sum and by the Gauss-sum closed form."""
    N = ctx.N
    rows = b_rows(N - 1)
    cable_sum = ctx.zero()
    for l in range(N):
        if d[l]:
            inner = ctx.zero()
            for j, bj in enumerate(rows[l]):
                if bj:
                    inner = inner + _alternating(j, 1, ctx) * ribbon_scalar(j, ctx) * bj
            cable_sum = cable_sum + d[l] * inner
    weighted = sum((b[lam] * ribbon_scalar(lam, ctx) * sd_q(lam, ctx) for lam in range(N)), ctx.zero())
    G = gauss_minus(ctx)
    closed = ctx.monomial((N + 3) // 2) * G * G / N
    return cable_sum, weighted, closed


def z_value(ctx: CycContext, d: Sequence[CycNum], b: Sequence[CycNum]) -> CycNum:
    z1, z2, z3 = z_forms(ctx, d, b)
    if not (z1 == z2 == z3):
        raise VerificationError(f"z forms disagree: {z1} | {z2} | {z3}")
    return z1


# -- tables ------------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantTables:
    ctx: CycContext
    B: tuple[tuple[int, ...], ...]
    b: tuple[CycNum, ...]
    d: tuple[CycNum, ...]
    z: CycNum
    x: tuple[CycNum, ...] = field(default=())

    @property
    def N(self) -> int:
        return self.ctx.N


def build_tables(ctx: CycContext, x: Optional[Sequence] = None, d_override: Optional[Sequence[CycNum]] = None) -> InvariantTables:
    """Tables for the given x (default zero).  ``d_override`` replaces d; z is then taken from the cable formula."""
    xs = _as_vector(x, ctx)
    b = b_closed_form(ctx, xs)
    if d_override is not None:
        d = list(d_override)
        z = z_forms(ctx, d, b)[0]
    else:
        d = solve_d(ctx, b)
        z = z_value(ctx, d, b)
    if not z:
        raise VerificationError("z vanishes")
    B = tuple(tuple(r) for r in b_matrix(ctx.N))
    return InvariantTables(ctx, B, tuple(b), tuple(d), z, tuple(xs))


@lru_cache(maxsize=None)
def default_tables(ctx: CycContext) -> InvariantTables:
    return build_tables(ctx)


# -- surgery invariant -----------------------------------------------------------------------

def sigma(A: Sequence[Sequence[int]]) -> int:
    """Number of nonpositive eigenvalues, zero included."""
    _, zero, minus = inertia(A)
    return zero + minus


def sigma_L(tables: InvariantTables, diagram: MorseDiagram, ctx: Optional[CycContext] = None) -> CycNum:
    ctx = ctx or tables.ctx
    m = diagram.trace().count
    total = ctx.zero()
    for ls in itertools.product(range(ctx.N), repeat=m):
        w = ctx.one()
        for l in ls:
            w = w * tables.d[l]
            if not w:
                break
        if w:
            total = total + w * evaluate(cable(diagram, ls), ctx)
    return total


@dataclass(frozen=True)
class SurgeryResult:
    Sigma: CycNum
    sigma: int
    F: CycNum
    linking: LinkingData


def invariant_F(diagram: MorseDiagram, ctx: CycContext, tables: Optional[InvariantTables] = None) -> SurgeryResult:
    tables = tables or default_tables(ctx)
    link = linking_matrix(diagram)
    s = sigma(link.matrix) if link.component_count else 0
    Sig = sigma_L(tables, diagram, ctx)
    assert tables.z, "z must be nonzero"
    return SurgeryResult(Sig, s, Sig * tables.z ** (-s), link)


# -- verification suites -------------------------------------------------------------------

def annulus_operator(k: int, l: int, ctx: CycContext) -> Matrix:
    """Endomorphism of V^{(x)k} given by k strands encircled by a (+1)-framed V^{(x)l} annulus."""
    return evaluate_open(cable(encircled_strands(k, 1), [1] * k + [l]), ctx).matrix


def master_residual(ctx: CycContext, k: int, d: Sequence[CycNum]) -> Matrix:
    acc = twist_on_tensor(k, ctx).scale(-1)
    for l in range(ctx.N):
        if d[l]:
            acc = acc + annulus_operator(k, l, ctx).scale(d[l])
    return acc


def verify_master(ctx: CycContext, k: int, tables: Optional[InvariantTables] = None) -> CheckReport:
    if not 1 <= k <= ctx.N - 1:
        raise ValueError(f"k must lie in 1..{ctx.N - 1}")
    tables = tables or default_tables(ctx)
    R = master_residual(ctx, k, tables.d)
    if R.is_zero():
        return CheckReport(f"master equation k={k}", True)
    return CheckReport(f"master equation k={k}", False, (f"{R.nnz()} nonzero entries",))


def relation_terms(diagram: MorseDiagram, ctx: CycContext, ls: Sequence[int]) -> tuple[CycNum, CycNum]:
    """(evaluate(cable(L, ls)), sum over mu of prod b^{(l_i)}_{mu_i} colored_evaluate(L, mu))."""
    rows = b_rows(max(ls, default=0))
    lhs = evaluate(cable(diagram, ls), ctx)
    rhs = ctx.zero()
    for mus in itertools.product(*(range(l + 1) for l in ls)):
        w = 1
        for l, mu in zip(ls, mus):
            w *= rows.entry(l, mu)
        if w:
            rhs = rhs + colored_evaluate(diagram, ctx, mus) * w
    return lhs, rhs


def verify_relation(diagram: MorseDiagram, ctx: CycContext, tables: Optional[InvariantTables] = None) -> CheckReport:
    """Cable sums against projector-colored sums, termwise and after d-weighting."""
    tables = tables or default_tables(ctx)
    m = diagram.trace().count
    failures = []
    for ls in itertools.product(range(ctx.N), repeat=m):
        lhs, rhs = relation_terms(diagram, ctx, ls)
        if lhs != rhs:
            failures.append(f"l={ls}: {lhs} != {rhs}")
    Sig = sigma_L(tables, diagram, ctx)
    colored = ctx.zero()
    for mus in itertools.product(range(ctx.N), repeat=m):
        w = ctx.one()
        for mu in mus:
            w = w * tables.b[mu]
        if w:
            colored = colored + w * colored_evaluate(diagram, ctx, mus)
    if Sig != colored:
        failures.append(f"Sigma {Sig} != b-weighted colored sum {colored}")
    return CheckReport("lickorish / colored relation", not failures, tuple(failures))


def z_by_evaluator(ctx: CycContext, tables: Optional[InvariantTables] = None) -> CycNum:
    tables = tables or default_tables(ctx)
    return sigma_L(tables, unknot(-1), ctx)
