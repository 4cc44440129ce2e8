"""Exact Lickorish-type 3-manifold invariants from U_q(osp(1|2)) at odd roots of unity."""

from .cyclotomic import CycContext, CycNum, gauss_minus, make_context
from .diagram import (
    MLPParseError,
    MorseDiagram,
    add_kink,
    braid_closure,
    cable,
    disjoint_union,
    hopf,
    linking_matrix,
    parse_mlp,
    reverse_component,
    unknot,
)
from .evaluator import colored_evaluate, crossing_variants, evaluate, evaluate_open
from .invariant import (
    SurgeryResult,
    b_closed_form,
    b_rows,
    build_tables,
    chi_C,
    invariant_F,
    sigma,
    sigma_L,
    solve_d,
    verify_kirby_equation,
    verify_master,
    verify_relation,
    z_value,
)
from .rep import build_irrep, decompose, sd_q, tensor_power, vector_rep

__version__ = "0.1.0"
