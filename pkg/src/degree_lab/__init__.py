"""Simply typed lambda-terms, the non-erasing G-calculus and two decreasing measures.

Typical use::

    from degree_lab import parse, w_measure, t_measure, compare
    m = parse(r"(\\x:0->0. x (x y)) (\\z:0. w)")
    w_measure(m)  # 3
"""

from .errors import *  # noqa: F401,F403
from .generate import GenConfig, generate
from .measure import (
    MeasureContext,
    ame,
    bme,
    eme,
    generalized_turing_measure,
    leftmost_outermost_strategy,
    measure_compare,
    rightmost_highest_strategy,
    t_measure,
    turing_measure,
    turing_measure_prime,
)
from .multiset import (
    EMPTY,
    EQUAL,
    GREATER,
    INCOMPARABLE,
    LESS,
    MeasureComparator,
    Multiset,
    PartialOrdering,
    compare,
    k_times,
    multiset_compare,
    pointwise_compare,
)
from .notation import parse, parse_type, print_term, show
from .properties import PropertyReport, run_properties
from .reduction import (
    ForgetSeq,
    ForgetStep,
    Kind,
    MultiStep,
    ReductionGraph,
    ReductionSeq,
    Step,
    apply_step,
    contract,
    corresponding_step,
    develop,
    enumerate_beta_redexes,
    enumerate_forget_steps,
    enumerate_redexes,
    enumerate_steps_of_degree,
    forgets_to,
    is_normal,
    lift,
    postpone_forget,
    project_seq,
    reduction_graph,
)
from .simplify import simp, simp_trace, simpfull, simpfull_trace, w_measure
from .syntax import (
    O,
    Abs,
    App,
    Arrow,
    Base,
    Bound,
    Term,
    Type,
    Var,
    Wrap,
    arrow,
    height,
    lam,
    maxdeg,
    subst,
    typecheck,
)

__version__ = "0.1.0"
