import pytest
from hypothesis import given

from degree_lab.errors import (
    AnnotationMismatch,
    ArityMismatch,
    DomainMismatch,
    InvalidPosition,
    TypeMismatch,
    UnboundVariable,
    Untypable,
)
from degree_lab.notation import parse
from degree_lab.syntax import (
    HOLE,
    O,
    Abs,
    App,
    Arrow,
    Base,
    Bound,
    Context,
    Judgment,
    Sel,
    Var,
    Wrap,
    arrow,
    attach,
    count_free,
    format_position,
    height,
    instantiate,
    lam,
    maxdeg,
    parse_position,
    position_key,
    shift,
    split_m_abstraction,
    subst,
    subterm_at,
    subterms,
    typecheck,
)

from .strategies import g_terms

I = lam("x", O, Var("x", O))
w, y, z = Var("w", O), Var("y", O), Var("z", O)


def test_base_names_are_nonempty():
    with pytest.raises(ValueError):
        Base("")


def test_height():
    assert height(O) == 0
    assert height(arrow(O, O)) == 1
    assert height(Arrow(arrow(O, O), O)) == 2
    assert height(arrow(O, O, O)) == 2


def test_arrow_is_right_associative():
    assert arrow(O, O, O) == Arrow(O, Arrow(O, O))


def test_typecheck_identity():
    assert typecheck(I) == arrow(O, O)


def test_typecheck_reduction_example():
    x = Var("x", arrow(O, O))
    t = App(
        App(lam("x", arrow(O, O), lam("y", O, Wrap(y, App(x, App(x, z))))), I),
        w,
    )
    assert typecheck(t, {"z": O, "w": O}) == O
    assert typecheck(t) == O


def test_typing_errors():
    with pytest.raises(DomainMismatch):
        typecheck(App(I, lam("y", O, Var("y", O))))
    with pytest.raises(ArityMismatch):
        typecheck(App(y, z))
    with pytest.raises(UnboundVariable):
        typecheck(y, {})
    with pytest.raises(AnnotationMismatch):
        typecheck(y, {"y": arrow(O, O)})
    with pytest.raises(AnnotationMismatch):
        typecheck(App(Var("f", arrow(O, O)), Var("f", O)))
    with pytest.raises(UnboundVariable):
        typecheck(Bound(0, O))


def test_untypable_terms_have_no_type():
    t = App(I, lam("y", O, Var("y", O)))
    assert t.ty is None
    with pytest.raises(Untypable):
        maxdeg(t)


def test_wrapper_discards_memory_type():
    t = Wrap(y, I)
    assert typecheck(t) == O
    with pytest.raises(DomainMismatch):
        typecheck(Wrap(y, App(I, I)))


def test_judgment():
    j = Judgment.derive(App(I, y))
    assert j.type == O and j.env == (("y", O),)
    assert "|-" in str(j)


def test_alpha_equivalence():
    assert lam("a", O, Var("a", O)) == lam("b", O, Var("b", O))
    assert hash(lam("a", O, Var("a", O))) == hash(I)
    assert lam("a", O, y) != lam("a", O, z)
    assert parse(r"\u:0. \v:0. u") != parse(r"\u:0. \v:0. v")


def test_subst_examples():
    x = Var("x", arrow(O, O))
    assert subst(App(x, y), x, I) == App(I, y)
    assert subst(x, x, I) == I
    t = Wrap(lam("y", O, Var("x", O)), Var("x", O))
    assert subst(t, "x", w) == Wrap(lam("y", O, w), w)


def test_subst_avoids_capture():
    t = lam("y", O, App(App(Var("f", arrow(O, O, O)), Var("x", O)), Var("y", O)))
    u = subst(t, "x", y)
    # the free y must not be captured by the binder
    assert u == lam("v", O, App(App(Var("f", arrow(O, O, O)), y), Var("v", O)))


def test_subst_type_mismatch():
    with pytest.raises(TypeMismatch):
        subst(App(Var("f", arrow(O, O)), y), "y", I)


def test_weight():
    s = parse(r"w[z[z][z[z]]][w][\x:0. x]")
    assert s.weight == 6
    assert I.weight == 0
    assert parse("w[w[y]]").weight == 2


def test_maxdeg():
    assert maxdeg(parse(r"(\x:0->0. \y:0. y[x (x z)]) (\x:0. x) w")) == 2
    assert maxdeg(Var("x", O)) == 0
    assert maxdeg(App(I, y)) == 1


def test_split_m_abstraction():
    m = split_m_abstraction(I)
    assert m.binder_type == O and m.body == Bound(0, O) and m.memory == () and m.degree == 1
    u, v = Var("u", O), Var("v", O)
    m = split_m_abstraction(attach(I, [u, v]))
    assert m.memory == (u, v) and m.degree == 1
    assert split_m_abstraction(App(Var("x", arrow(O, O)), y)) is None


def test_attach_puts_first_element_innermost():
    u, v = Var("u", O), Var("v", O)
    assert attach(y, [u, v]) == Wrap(Wrap(y, u), v)


def test_positions():
    t = parse(r"(\x:0. x) y[z]")
    pos = (Sel.APP_ARG, Sel.WRAP_MEM)
    assert subterm_at(t, pos) == z
    assert format_position(pos) == "app.arg/wrap.mem"
    assert parse_position("app.arg/wrap.mem") == pos
    assert parse_position("") == ()
    with pytest.raises(InvalidPosition):
        subterm_at(t, (Sel.ABS_BODY,))
    order = [p for p, _ in subterms(t)]
    assert order == sorted(order, key=position_key)


def test_context_plug_captures():
    t = lam("x", O, App(I, Var("x", O)))
    ctx = Context.of(t, (Sel.ABS_BODY,))
    assert ctx.frame == Abs(O, HOLE)
    assert ctx.plug(Bound(0, O)) == lam("x", O, Var("x", O))


def test_instantiate_and_shift():
    body = App(Bound(0, arrow(O, O)), Bound(1, O))
    assert instantiate(body, I) == App(I, Bound(0, O))
    assert shift(Bound(0, O), 2) == Bound(2, O)
    assert shift(Bound(0, O), 2, cutoff=1) == Bound(0, O)


@given(g_terms())
def test_every_m_abstraction_has_positive_degree(t):
    for _, u in subterms(t):
        m = split_m_abstraction(u)
        if m is not None:
            assert m.degree >= 1


@given(g_terms())
def test_weight_laws(t):
    assert Wrap(t, y).weight == 1 + t.weight
    assert Wrap(t, t).weight == 1 + 2 * t.weight


@given(g_terms(), g_terms())
def test_weight_of_substitution(t, s):
    # abstract one free base variable of t and substitute s for it
    k = count_free(t, "w")
    u = subst(t, "w", s)
    assert u.weight == t.weight + k * s.weight


@given(g_terms())
def test_type_is_unique(t):
    assert typecheck(t) == typecheck(t) == t.ty
