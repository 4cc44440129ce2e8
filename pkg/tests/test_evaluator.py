import pytest
from hypothesis import given, settings, strategies as st

from osp_lickorish.cyclotomic import make_context
from osp_lickorish.diagram import (
    MorseDiagram,
    add_kink,
    braid_closure,
    cable,
    closure,
    cross,
    cup,
    cap,
    disjoint_union,
    encircled_strands,
    hopf,
    identity_tangle,
    reverse_component,
    unknot,
)
from osp_lickorish.evaluator import (
    EvaluationError,
    colored_evaluate,
    crossing_morphism,
    crossing_variants,
    evaluate,
    evaluate_open,
    projected_evaluate,
    top_projector,
)
from osp_lickorish.matrix import Matrix
from osp_lickorish.rep import (
    V,
    VSTAR,
    IrrepLabel,
    decompose_power,
    is_module_map,
    q_supertrace,
    ribbon_scalar,
    sd_q,
    strand_rep,
    tensor_power,
    twist_on_tensor,
)

from test_diagram import links

TYPES = [(a, b) for a in (V, VSTAR) for b in (V, VSTAR)]


def test_unknot_is_superdimension(ctx):
    assert evaluate(unknot(0), ctx) == sd_q(1, ctx)
    q = ctx.q
    assert evaluate(unknot(0), ctx) * (ctx.one() + q) == q * q + q.inv()


def test_kink_scalars(ctx):
    sd = sd_q(1, ctx)
    assert evaluate(unknot(1), ctx) == ctx.monomial(2) * sd
    assert evaluate(unknot(-1), ctx) == ctx.monomial(-2) * sd


def test_hopf_values_n3(ctx3):
    q = ctx3.q
    # a (+1)-framed annulus around a V strand, closed up: chi_1 * SD(1)
    assert evaluate(hopf(1, 0), ctx3) == -2 * q * q
    assert evaluate(hopf(0, 0), ctx3) == ctx3.const(-2)


@pytest.mark.parametrize("types", TYPES)
def test_variants_are_module_maps(ctx, types):
    c, ci = crossing_variants(ctx)[types]
    src = strand_rep(ctx, types)
    dst = strand_rep(ctx, types[::-1])
    assert is_module_map(src, dst, c.matrix)
    assert ci.matrix @ c.matrix == Matrix.identity(ctx, 9)


@pytest.mark.parametrize("types", TYPES)
def test_reidemeister_two_gates(ctx, types):
    for s in (1, -1):
        first = crossing_morphism(types, s, ctx)
        second = crossing_morphism(types[::-1], -s, ctx)
        assert second.matrix @ first.matrix == Matrix.identity(ctx, 9)


def test_reidemeister_three_open(ctx):
    a = MorseDiagram((cross(1, 1), cross(2, 1), cross(1, 1)), 3, 3)
    b = MorseDiagram((cross(2, 1), cross(1, 1), cross(2, 1)), 3, 3)
    assert evaluate_open(a, ctx).matrix == evaluate_open(b, ctx).matrix


def test_reidemeister_three_mixed(ctx):
    # same link drawn two ways; reversing a component makes the crossings mixed
    a0, b0 = braid_closure([1, 2, 1], 3), braid_closure([2, 1, 2], 3)
    for comp in range(1, a0.trace().count + 1):
        assert evaluate(reverse_component(a0, comp), ctx) == evaluate(reverse_component(b0, comp), ctx)


def test_zigzag(ctx):
    # strand with a right snake: cup to the right, cap on the left
    snake = MorseDiagram((cup(2, "d"), cap(1)), 1, 1)
    assert evaluate_open(snake, ctx).matrix == Matrix.identity(ctx, 3)


def test_identity_tangle(ctx):
    assert evaluate_open(identity_tangle(2), ctx).matrix == Matrix.identity(ctx, 9)


def test_encirclement_scalar(ctx):
    q = ctx.q
    M = evaluate_open(encircled_strands(1, 1), ctx).matrix
    assert M.is_scalar() == q**5 - q**2 + q.inv()


def test_single_strand_twist(ctx):
    got = evaluate_open(add_kink(identity_tangle(1), 1, -1), ctx).matrix
    assert got == twist_on_tensor(1, ctx)
    assert got.is_scalar() == ribbon_scalar(1, ctx)


def test_open_result_is_module_map(ctx):
    e = encircled_strands(2, 1)
    R = tensor_power(ctx, 2)
    assert is_module_map(R, R, evaluate_open(e, ctx).matrix)


def test_open_rejects_downward_output():
    ctx = make_context(3)
    d = MorseDiagram((cup(2, "d"),), 1, 3)
    with pytest.raises(EvaluationError):
        evaluate_open(d, ctx)


def test_closed_needed():
    with pytest.raises(EvaluationError):
        evaluate(identity_tangle(1), make_context(3))


def test_colored_examples(ctx):
    for mu in range(min(ctx.N, 4)):
        assert colored_evaluate(unknot(0), ctx, [mu]) == sd_q(mu, ctx)
        assert colored_evaluate(unknot(1), ctx, [mu]) == ctx.monomial(mu * (mu + 1)) * sd_q(mu, ctx)
    h = hopf(0, 0)
    assert colored_evaluate(h, ctx, [1, 1]) == evaluate(h, ctx)


def test_colored_range_checked(ctx3):
    with pytest.raises(EvaluationError):
        colored_evaluate(unknot(0), ctx3, [3])


def test_top_projector_is_idempotent_module_map(ctx):
    for mu in (2, 3):
        if mu > ctx.N - 1:
            continue
        P = top_projector(ctx, mu)
        assert P @ P == P
        R = tensor_power(ctx, mu)
        assert is_module_map(R, R, P)


def test_parity_flip_sign(ctx):
    # the odd summand V-(1) of V x V colors the unknot with the opposite sign
    (odd,) = [s for s in decompose_power(ctx, 2) if s.label == IrrepLabel(1, 1)]
    assert projected_evaluate(unknot(0), ctx, [2], [odd.projector()]) == -sd_q(1, ctx)


# -- properties on random fixtures -------------------------------------------------

CTX = [make_context(3), make_context(5)]


@settings(max_examples=25)
@given(links(), st.sampled_from(CTX), st.sampled_from([1, -1]), st.data())
def test_kink_multiplies_by_q_squared(d, ctx, sign, data):
    comp = data.draw(st.integers(1, d.trace().count))
    assert evaluate(add_kink(d, comp, sign), ctx) == ctx.monomial(2 * sign) * evaluate(d, ctx)


@settings(max_examples=25)
@given(links(), st.sampled_from(CTX), st.data())
def test_orientation_reversal_invariance(d, ctx, data):
    comp = data.draw(st.integers(1, d.trace().count))
    assert evaluate(reverse_component(d, comp), ctx) == evaluate(d, ctx)


@settings(max_examples=20)
@given(links(), links(), st.sampled_from(CTX))
def test_disjoint_union_multiplicative(a, b, ctx):
    assert evaluate(disjoint_union(a, b), ctx) == evaluate(a, ctx) * evaluate(b, ctx)


@settings(max_examples=20)
@given(links(), st.sampled_from(CTX))
def test_trivial_cable(d, ctx):
    assert evaluate(cable(d, [1] * d.trace().count), ctx) == evaluate(d, ctx)


@st.composite
def open_braids(draw):
    k = draw(st.integers(1, 3))
    gens = list(range(1, k))
    word = draw(st.lists(st.sampled_from(gens), max_size=4)) if gens else []
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=len(word), max_size=len(word)))
    return MorseDiagram(tuple(cross(g, s) for g, s in zip(word, signs)), k, k)


@settings(max_examples=20)
@given(open_braids(), st.sampled_from(CTX))
def test_closure_is_supertrace(t, ctx):
    M = evaluate_open(t, ctx).matrix
    assert evaluate(closure(t), ctx) == q_supertrace(tensor_power(ctx, t.k_in), M)


def test_duality_maps_are_module_maps(ctx):
    from osp_lickorish.rep import duality_morphisms, trivial_rep

    triv = trivial_rep(ctx)
    for name, m in duality_morphisms(ctx).items():
        src = strand_rep(ctx, m.src) if m.src else triv
        dst = strand_rep(ctx, m.dst) if m.dst else triv
        assert is_module_map(src, dst, m.matrix), name
