"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line (collected in the terminal summary).

Tolerances: every check is an exact field identity except |embed(z)| = 1, which
uses an absolute tolerance of 1e-9.  Runtime limits: 5 s (criteria 1, 2) and
120 s (criterion 8), measured with time.perf_counter.
"""

import itertools
import time
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES
from osp_lickorish.cyclotomic import make_context
from osp_lickorish.diagram import add_kink, disjoint_union, empty_link, hopf, parse_mlp, reverse_component, unknot
from osp_lickorish.evaluator import evaluate, projected_evaluate
from osp_lickorish.invariant import (
    b_rows,
    chi_C,
    annulus_operator,
    default_tables,
    invariant_F,
    master_residual,
    verify_kirby_equation,
    verify_relation,
    z_forms,
)
from osp_lickorish.matrix import Matrix, kron_all
from osp_lickorish.rep import (
    EVEN,
    ODD,
    IrrepLabel,
    braid_eigenspace_dims,
    braid_on_VV,
    braid_relation_residual,
    build_irrep,
    cubic_residual,
    decompose_power,
    hopf_residuals,
    relation_residuals,
    ribbon_scalar,
    sd_q,
    signed_multiplicities,
    tensor_power,
)

Z_TOL = 1e-9
FIXTURES = Path(__file__).parent / "fixtures"


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def load(name: str):
    return parse_mlp((FIXTURES / f"{name}.mlp").read_text())


def test_criterion_01_algebra_layer():
    t0 = time.perf_counter()
    bad = []
    for N in (3, 5, 7, 9):
        ctx = make_context(N)
        mods = [(f"V{'+-'[eps]}({lam})", build_irrep(IrrepLabel(lam, eps), ctx)) for lam in range(N) for eps in (EVEN, ODD)]
        mods += [(f"V^{k}", tensor_power(ctx, k)) for k in range(1, 5)]
        for name, R in mods:
            for rel, M in relation_residuals(R).items():
                if not M.is_zero():
                    bad.append(f"N={N} {name} {rel}")
            # the antipode identities only concern single irreps
            if name.startswith("V+") or name.startswith("V-"):
                for rel, M in hopf_residuals(R).items():
                    if not M.is_zero():
                        bad.append(f"N={N} {name} {rel}")
    elapsed = time.perf_counter() - t0
    record(1, "relations, antipode and coproduct on irreps and V^k (k<=4), N in {3,5,7,9}", not bad and elapsed < 5,
           f"{elapsed:.2f}s" + (f"; {bad[:3]}" if bad else ""))


def test_criterion_02_skein_layer():
    t0 = time.perf_counter()
    notes = []
    stated_ok = True
    for N in (3, 5, 7):
        ctx = make_context(N)
        stated = cubic_residual(ctx, +1).is_zero()
        consistent = cubic_residual(ctx, -1).is_zero()
        braid = braid_relation_residual(ctx).is_zero()
        dims = braid_eigenspace_dims(ctx)
        stated_mult = (dims["q"], dims["-q^-1"], dims["q^-2"])
        actual_mult = (dims["q"], dims["-q^-1"], dims["-q^-2"])
        stated_ok &= stated and braid and stated_mult == (5, 3, 1)
        notes.append(f"N={N}: stated cubic {stated}, (R-q)(R+q^-1)(R+q^-2)=0 {consistent}, braid {braid}, "
                     f"dims for (q, -q^-1, q^-2) {stated_mult}, for (q, -q^-1, -q^-2) {actual_mult}")
    elapsed = time.perf_counter() - t0
    record(2, "cubic (R-q)(R+q^-1)(R-q^-2)=0, braid relation, multiplicities (5,3,1), N in {3,5,7}",
           stated_ok and elapsed < 5, f"{elapsed:.2f}s; " + "; ".join(notes))


def test_criterion_03_recursion_vs_decomposition():
    bad = []
    for N in (3, 5, 7):
        ctx = make_context(N)
        rows = b_rows(N - 1)
        for k in range(1, min(5, N - 1) + 1):
            m = signed_multiplicities(tensor_power(ctx, k))
            if [m.get(j, 0) for j in range(k + 1)] != list(rows[k]):
                bad.append(f"N={N} k={k}")
    rows = b_rows(3)
    ok = not bad and rows[2] == (1, -1, 1) and rows[3] == (-1, 3, -2, 1)
    record(3, "signed multiplicities of V^k equal b^(k), k <= min(5, N-1)", ok, ", ".join(bad))


def test_criterion_04_central_element_bridge():
    bad = []
    for N in (3, 5):
        ctx = make_context(N)
        for n in (1, 2):
            if annulus_operator(1, n, ctx).is_scalar() != chi_C(1, n, ctx):
                bad.append(f"N={N} n={n}")
        q = ctx.q
        if chi_C(1, 1, ctx) != q**5 - q**2 + q.inv():
            bad.append(f"N={N} closed form")
    record(4, "chi_C(1,n) equals the encirclement scalar, n in {1,2}, N in {3,5}", not bad, ", ".join(bad))


def test_criterion_05_kirby_system():
    bad = []
    for N in (3, 5, 7, 9):
        ctx = make_context(N)
        rep = verify_kirby_equation(ctx, default_tables(ctx).d)
        if not rep.ok:
            bad.append(f"N={N}: {rep.failures}")
    ctx = make_context(3)
    d = default_tables(ctx).d
    lhs = sum((d[l] * chi_C(1, l, ctx) for l in range(3)), ctx.zero())
    spot = lhs == ctx.q == ribbon_scalar(1, ctx)
    record(5, "sum_l d_l chi_lam(C^(l)) = q^{-lam(lam+1)} for all lam, N in {3,5,7,9}; N=3 lam=1 gives q",
           not bad and spot, ", ".join(bad))


def test_criterion_06_z():
    bad = []
    for N in (3, 5, 7, 9):
        ctx = make_context(N)
        t = default_tables(ctx)
        z1, z2, z3 = z_forms(ctx, t.d, t.b)
        if not z1 == z2 == z3:
            bad.append(f"N={N} forms disagree")
        if abs(abs(z1.embed()) - 1) > Z_TOL:
            bad.append(f"N={N} |z| = {abs(z1.embed())}")
    z3n = default_tables(make_context(3)).z
    ok = not bad and z3n == make_context(3).const(-1)
    record(6, "three z formulas agree, N=3 gives -1, |z| = 1 within 1e-9", ok, "; ".join([f"z(N=3) = {z3n}"] + bad))


def test_criterion_07_master_equation():
    bad = []
    for N in (3, 5):
        ctx = make_context(N)
        for k in (1, 2):
            R = master_residual(ctx, k, default_tables(ctx).d)
            if R.shape != (3**k, 3**k) or not R.is_zero():
                bad.append(f"N={N} k={k}: {R.nnz()} nonzero")
    record(7, "sum_l d_l F(phi^(l)) - F(zeta) = 0 on V^k, k <= 2, N in {3,5}", not bad, ", ".join(bad))


def test_criterion_08_manifold_fixtures():
    t0 = time.perf_counter()
    ctx = make_context(3)
    one = ctx.one()
    g = one + ctx.q * ctx.q * 2
    o_p, o_m, o_0 = load("unknot_plus1"), load("unknot_minus1"), load("unknot_0")
    want3 = [
        ("empty", empty_link(), one),
        ("O+1", o_p, one),
        ("O-1", o_m, one),
        ("O+1 u O-1", disjoint_union(o_p, o_m), one),
        ("Hopf(0,0)", load("hopf_0_0"), one),
        ("O0", o_0, g),
        ("O0 u O+1", disjoint_union(o_0, o_p), g),
    ]
    bad = [name for name, L, v in want3 if invariant_F(L, ctx).F != v]
    ctx5 = make_context(5)
    for name, L in (("empty", empty_link()), ("O+1", o_p), ("O-1", o_m)):
        if invariant_F(L, ctx5).F != ctx5.one():
            bad.append(f"N=5 {name}")
    elapsed = time.perf_counter() - t0
    record(8, "surgery fixtures at N=3 and N=5", not bad and elapsed < 120, "; ".join([f"{elapsed:.2f}s"] + bad))


CORPUS = ["unknot_0", "unknot_plus1", "unknot_minus1", "hopf_0_0", "hopf_1_0", "trefoil", "figure_eight", "torus_2_4", "borromean"]


def test_criterion_09_functor_sanity():
    bad = []
    for N in (3, 5):
        ctx = make_context(N)
        q2 = ctx.monomial(2)
        (odd,) = [s for s in decompose_power(ctx, 2) if s.label == IrrepLabel(1, ODD)]
        Podd = odd.projector()
        values = {}
        for name in CORPUS:
            d = load(name)
            val = values[name] = evaluate(d, ctx)
            m = d.trace().count
            for c in range(1, m + 1):
                if evaluate(reverse_component(d, c), ctx) != val:
                    bad.append(f"N={N} {name} reverse {c}")
                if evaluate(add_kink(d, c, 1), ctx) != q2 * val or evaluate(add_kink(d, c, -1), ctx) * q2 != val:
                    bad.append(f"N={N} {name} kink {c}")
                mult = [1] * m
                mult[c - 1] = 2
                projs = [None] * m
                projs[c - 1] = Podd
                if projected_evaluate(d, ctx, mult, projs) != -val:
                    bad.append(f"N={N} {name} parity {c}")
        for a, b in itertools.combinations(["unknot_0", "hopf_1_0", "trefoil"], 2):
            if evaluate(disjoint_union(load(a), load(b)), ctx) != values[a] * values[b]:
                bad.append(f"N={N} {a} u {b}")
    record(9, "orientation reversal, disjoint union, kink scalars q^{+-2}, parity-flip sign on the corpus", not bad, ", ".join(bad))


def test_criterion_10_lickorish_rt_equivalence():
    ctx = make_context(3)
    reps = [verify_relation(load("unknot_0"), ctx), verify_relation(load("hopf_0_0"), ctx)]
    record(10, "d-weighted cable sum equals b-weighted projector-colored sum, unknot and Hopf, N=3",
           all(r.ok for r in reps), "; ".join(f for r in reps for f in r.failures))
