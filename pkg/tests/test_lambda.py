import random

import pytest

from modalkit.lambda_calculus import (
    BOTH,
    COTEMPORAL,
    MJ,
    TEMPORAL,
    Ap,
    Arrow,
    Bang,
    Base,
    Case,
    Equality,
    FlavorGateError,
    FuelExhausted,
    InL,
    InR,
    JLift,
    JT,
    Lam,
    One,
    P0,
    P1,
    Pair,
    Pi,
    Prod,
    Sigma,
    Star,
    Sum,
    SystemFlavor,
    Term,
    TypeCheckError,
    Var,
    Zero,
    alpha_eq,
    equal,
    free_vars,
    reduce,
    reduce_once,
    render_term,
    substitute,
    term_from_json,
    term_to_json,
    ty_from_json,
    ty_to_json,
    typecheck,
)

A, B, C = Base("A"), Base("B"), Base("C")


# --- typing -----------------------------------------------------------------


def test_star_types_one():
    assert typecheck((), Star(), MJ) == One()


def test_internal_identity():
    # y: 1 |- [\a. a](y) : A -> A
    t = Lam("x", "a", A, Var("a"), Var("y"))
    assert typecheck((("y", One()),), t, MJ) == Arrow(A, A)


def test_pi_sigma_flavor_gates():
    t = Pi(Var("z"))
    ctx = (("z", JT(A)),)
    with pytest.raises(FlavorGateError):
        typecheck(ctx, t, MJ)
    assert typecheck(ctx, t, TEMPORAL) == A
    s = Sigma(Var("w"))
    ctx2 = (("w", A),)
    with pytest.raises(FlavorGateError):
        typecheck(ctx2, s, TEMPORAL)
    assert typecheck(ctx2, s, COTEMPORAL) == JT(A)


def test_jlift_body_sealed_context():
    # the body may only use its sealed variable
    t = JLift("x", Var("y"), Var("z"))
    with pytest.raises(TypeCheckError):
        typecheck((("z", JT(A)), ("y", B)), t, MJ)
    ok = JLift("x", Var("x"), Var("z"))
    assert typecheck((("z", JT(A)),), ok, MJ) == JT(A)


def test_lam_body_sealed_context():
    bad = Lam("x", "a", A, Var("y"), Var("y"))
    with pytest.raises(TypeCheckError):
        typecheck((("y", One()),), bad, MJ)


def test_case_typing():
    t = Case("a", "b", Var("a"), Var("b"), Var("e"))
    assert typecheck((("e", Sum(A, A)),), t, MJ) == A
    bad = Case("a", "b", Var("a"), Var("b"), Var("e"))
    with pytest.raises(TypeCheckError):
        typecheck((("e", Sum(A, B)),), bad, MJ)


def test_application_typing():
    ctx = (("f", JT(Arrow(A, B))), ("u", A))
    assert typecheck(ctx, Ap(Var("f"), Var("u")), MJ) == B
    with pytest.raises(TypeCheckError):
        typecheck(ctx, Ap(Var("u"), Var("u")), MJ)


def test_bang_typing():
    ctx = (("z", Zero()),)
    assert typecheck(ctx, Bang(Var("z"), A), MJ) == A
    with pytest.raises(TypeCheckError):
        typecheck((("z", One()),), Bang(Var("z"), A), MJ)


def test_flavor_names():
    assert SystemFlavor.named("mJ") == MJ
    assert SystemFlavor.named("J") == TEMPORAL
    assert SystemFlavor.named("CoJ") == COTEMPORAL
    assert SystemFlavor.named("I") == BOTH
    with pytest.raises(ValueError):
        SystemFlavor.named("nope")


# --- substitution --------------------------------------------------------------


def test_substitute_arg_only():
    t = JLift("x", Var("x"), Var("y"))
    assert substitute(t, "y", Star()) == JLift("x", Var("x"), Star())
    # the sealed variable is not free
    assert substitute(t, "x", Star()) == t


def test_substitute_var():
    assert substitute(Var("x"), "x", Star()) == Star()
    assert substitute(Var("y"), "x", Star()) == Var("y")


def test_substitute_lam_arg_only():
    t = Lam("x", "a", A, Var("a"), Var("y"))
    out = substitute(t, "y", Pair(Star(), Star()))
    assert out.arg == Pair(Star(), Star())
    assert out.body == Var("a")
    assert substitute(t, "a", Star()) == t


def test_substitute_case_capture_avoidance():
    # substituting u := a must rename the branch binder a
    t = Case("a", "b", Pair(Var("a"), Var("u")), Var("b"), Var("e"))
    out = substitute(t, "u", Var("a"))
    assert out.lvar != "a"
    assert out.left == Pair(Var(out.lvar), Var("a"))


def test_free_vars_closures():
    t = JLift("x", Pair(Var("x"), Var("x")), Var("y"))
    assert free_vars(t) == {"y"}
    s = Lam("x", "a", A, Var("a"), Var("w"))
    assert free_vars(s) == {"w"}


# --- reduction --------------------------------------------------------------


def test_beta_projection():
    assert reduce(P0(Pair(Var("a"), Var("b")))) == Var("a")
    assert reduce(P1(Pair(Var("a"), Var("b")))) == Var("b")


def test_beta_case():
    t = Case("a", "b", Pair(Var("a"), Star()), Var("b"), InL(Var("c"), B))
    assert reduce(t) == Pair(Var("c"), Star())
    s = Case("a", "b", Var("a"), Pair(Var("b"), Star()), InR(Var("c"), B))
    assert reduce(s) == Pair(Var("c"), Star())


def test_beta_application():
    # ap([j [\y. y]](x), v) -> v
    lam = Lam("c", "y", A, Var("y"), Var("x"))
    t = Ap(JLift("x", lam, Var("w")), Var("v"))
    assert reduce(t) == Var("v")


def test_beta_application_uses_closed_variable():
    # ap([j [\y. <c, y>]](x), v) -> <x-value, v>
    lam = Lam("c", "y", A, Pair(Var("c"), Var("y")), Var("x"))
    t = Ap(JLift("x", lam, Var("w")), Var("v"))
    assert reduce(t) == Pair(Var("w"), Var("v"))


def test_j_identity():
    assert reduce(JLift("x", Var("x"), Var("w"))) == Var("w")


def test_j_composition():
    # [j p0(x)]([j <y, *>](z)) composes, projects, and unwraps the identity
    inner = JLift("y", Pair(Var("y"), Star()), Var("z"))
    outer = JLift("x", P0(Var("x")), inner)
    assert reduce(outer) == Var("z")


def test_pi_commutes_out():
    # pi([j t](s)) -> t(pi(s))
    t = Pi(JLift("x", Pair(Var("x"), Star()), Var("s")))
    assert reduce(t) == Pair(Pi(Var("s")), Star())


def test_sigma_commutes_in():
    # [j t](sigma(s)) -> sigma(t(s))
    t = JLift("x", Pair(Var("x"), Star()), Sigma(Var("s")))
    assert reduce(t) == Sigma(Pair(Var("s"), Star()))


def test_fuel_exhaustion_reported():
    t = P0(Pair(P0(Pair(Var("a"), Var("b"))), Var("c")))
    with pytest.raises(FuelExhausted):
        reduce(t, fuel=1)
    assert reduce(t, fuel=10) == Var("a")


# --- equality: the displayed rules -------------------------------------------


def _ctx(**kw):
    return tuple(kw.items())


def test_eq_top_eta():
    # t = * for t : 1
    assert equal(P0(Pair(Star(), Var("a"))), Star(), _ctx(a=A)) is Equality.EQUAL
    assert equal(Var("u"), Star(), _ctx(u=One())) is Equality.EQUAL


def test_eq_bot_eta():
    # t(x) = !x for x : 0
    ctx = _ctx(x=Zero())
    assert equal(Bang(Var("x"), A), Bang(Var("x"), A), ctx) is Equality.EQUAL
    # any two terms of equal type collapse under a 0-typed variable
    ctx2 = _ctx(x=Zero(), u=A, v=A)
    assert equal(Var("u"), Var("v"), ctx2) is Equality.EQUAL


def test_eq_projections():
    ctx = _ctx(x=A, y=B)
    assert equal(P0(Pair(Var("x"), Var("y"))), Var("x"), ctx) is Equality.EQUAL
    assert equal(P1(Pair(Var("x"), Var("y"))), Var("y"), ctx) is Equality.EQUAL


def test_eq_pair_eta():
    ctx = _ctx(x=Prod(A, B))
    assert equal(Pair(P0(Var("x")), P1(Var("x"))), Var("x"), ctx) is Equality.EQUAL


def test_eq_case_beta():
    ctx = _ctx(c=A, u=B)
    lhs = Case("a", "b", Pair(Var("a"), Var("u")), Pair(Var("b"), Var("u")), InL(Var("c"), A))
    assert equal(lhs, Pair(Var("c"), Var("u")), ctx) is Equality.EQUAL
    rhs = Case("a", "b", Pair(Var("a"), Var("u")), Pair(Var("b"), Var("u")), InR(Var("c"), A))
    assert equal(rhs, Pair(Var("c"), Var("u")), ctx) is Equality.EQUAL


def test_eq_case_eta():
    # d(a, b; f(l(a)), f(r(b)), e) = f(e) with f = pairing with u
    ctx = _ctx(e=Sum(A, B), u=C)
    lhs = Case(
        "a",
        "b",
        Pair(InL(Var("a"), B), Var("u")),
        Pair(InR(Var("b"), A), Var("u")),
        Var("e"),
    )
    rhs = Pair(Var("e"), Var("u"))
    assert equal(lhs, rhs, ctx) is Equality.EQUAL


def test_eq_arrow_beta():
    # ap([j [\y. t(x, y)]](x), y) = t(x, y)
    ctx = _ctx(w=JT(A), u=B)
    lam = Lam("x", "y", B, Pair(Var("x"), Var("y")), Var("z"))
    lhs = Ap(JLift("z", lam, Var("w")), Var("u"))
    assert equal(lhs, Pair(Var("w"), Var("u")), ctx) is Equality.EQUAL


def test_eq_arrow_eta():
    # [\y. ap([j t(x)], y)](x) = t(x)
    ctx = _ctx(f=Arrow(A, B))
    lhs = Lam("x", "y", A, Ap(JLift("z", Var("z"), Var("x")), Var("y")), Var("f"))
    assert equal(lhs, Var("f"), ctx) is Equality.EQUAL


def test_eq_j_composition():
    # [j t]([j s](z)) = [j t(s)](z)
    ctx = _ctx(z=JT(A))
    lhs = JLift("x", Pair(Var("x"), Star()), JLift("y", Pair(Var("y"), Var("y")), Var("z")))
    rhs = JLift("y", Pair(Pair(Var("y"), Var("y")), Star()), Var("z"))
    assert equal(lhs, rhs, ctx) is Equality.EQUAL


def test_eq_j_identity():
    ctx = _ctx(y=JT(A))
    assert equal(JLift("x", Var("x"), Var("y")), Var("y"), ctx) is Equality.EQUAL


def test_eq_pi_naturality():
    # t(pi(s)) = pi([j t](s)) with t = pairing with *
    ctx = _ctx(s=JT(A))
    lhs = Pair(Pi(Var("s")), Star())
    rhs = Pi(JLift("x", Pair(Var("x"), Star()), Var("s")))
    assert equal(lhs, rhs, ctx, TEMPORAL) is Equality.EQUAL


def test_eq_sigma_naturality():
    # sigma(t(s)) = [j t](sigma(s)) with t = pairing with *
    ctx = _ctx(s=A)
    lhs = Sigma(Pair(Var("s"), Star()))
    rhs = JLift("x", Pair(Var("x"), Star()), Sigma(Var("s")))
    assert equal(lhs, rhs, ctx, COTEMPORAL) is Equality.EQUAL


def test_eq_distinct_injections():
    ctx = _ctx(a=A)
    assert equal(InL(Var("a"), A), InR(Var("a"), A), ctx) is Equality.DISTINCT


def test_eq_distinct_variables():
    ctx = _ctx(a=A, b=A)
    assert equal(Var("a"), Var("b"), ctx) is Equality.DISTINCT


def test_eq_type_mismatch():
    with pytest.raises(TypeCheckError):
        equal(Star(), Var("a"), _ctx(a=A))


def test_eq_unknown_is_honest():
    # two different opaque applications: not provably equal, heads not rigid
    ctx = _ctx(f=JT(Arrow(A, B)), g=JT(Arrow(A, B)), u=A)
    out = equal(Ap(Var("f"), Var("u")), Ap(Var("g"), Var("u")), ctx)
    assert out is Equality.UNKNOWN


# --- subject reduction over random terms -------------------------------------


GEN_CTX = (
    ("va", A),
    ("vb", B),
    ("vja", JT(A)),
    ("vfun", JT(Arrow(A, B))),
    ("vsum", Sum(A, B)),
    ("vpair", Prod(A, B)),
)

_TYPES = [A, B, One(), Prod(A, B), Sum(A, B), JT(A), Arrow(A, B)]


def _minimal(ty) -> Term:
    """A closed-form inhabitant in GEN_CTX, no recursion depth."""
    if isinstance(ty, One):
        return Star()
    if isinstance(ty, Base):
        return Var("va") if ty == A else Var("vb")
    if isinstance(ty, Prod):
        return Pair(_minimal(ty.left), _minimal(ty.right))
    if isinstance(ty, Sum):
        return InL(_minimal(ty.left), ty.right)
    if isinstance(ty, JT):
        return Sigma(_minimal(ty.child))
    if isinstance(ty, Arrow):
        return Lam("mc", "ma", ty.left, Pi(Var("mc")), _minimal(ty.right))
    raise AssertionError(f"no minimal inhabitant of {ty}")


def _wrap_redexes(rng: random.Random, t: Term, ty, rounds: int) -> Term:
    """Stack identity-like redexes of type ty around t."""
    for _ in range(rounds):
        pick = rng.randrange(3)
        if pick == 0:
            t = P0(Pair(t, Star()))
        elif pick == 1:
            t = P1(Pair(Star(), t))
        else:
            t = Case("qa", "qb", Var("qa"), Var("qb"), InL(t, ty))
    return t


def _jlift_body(rng: random.Random, var: str, ty, depth: int) -> Term:
    return _wrap_redexes(rng, Var(var), ty, rng.randint(0, min(depth, 2)))


def _gen_term(rng: random.Random, ty, depth: int) -> Term:
    """A well-typed term of the given type in GEN_CTX, flavor BOTH."""
    if depth <= 0:
        matching = [name for name, t in GEN_CTX if t == ty]
        if matching and rng.random() < 0.8:
            return Var(rng.choice(matching))
        return _minimal(ty)
    options = ["redex", "proj", "pi", "case", "ap"]
    matching = [name for name, t in GEN_CTX if t == ty]
    if matching:
        options += ["var", "var"]
    if isinstance(ty, Prod):
        options.append("pair")
    if isinstance(ty, Sum):
        options += ["inl", "inr"]
    if isinstance(ty, One):
        options.append("star")
    if isinstance(ty, Arrow):
        options.append("lam")
    if isinstance(ty, JT):
        options += ["jlift", "sigma"]
    choice = rng.choice(options)
    if choice == "var":
        return Var(rng.choice(matching))
    if choice == "star":
        return Star()
    if choice == "redex":
        return _wrap_redexes(rng, _gen_term(rng, ty, depth - 1), ty, 1)
    if choice == "pair":
        return Pair(_gen_term(rng, ty.left, depth - 1), _gen_term(rng, ty.right, depth - 1))
    if choice == "inl":
        return InL(_gen_term(rng, ty.left, depth - 1), ty.right)
    if choice == "inr":
        return InR(_gen_term(rng, ty.right, depth - 1), ty.left)
    if choice == "lam":
        # close over a J of the result so the body can always project out
        body = _wrap_redexes(rng, Pi(Var("cx")), ty.right, rng.randint(0, 1))
        if ty.left == ty.right and rng.random() < 0.4:
            body = Var("ax")
        return Lam("cx", "ax", ty.left, body, _gen_term(rng, ty.right, depth - 1))
    if choice == "jlift":
        body = _jlift_body(rng, "bx", ty.child, depth)
        return JLift("bx", body, _gen_term(rng, JT(ty.child), depth - 1))
    if choice == "sigma":
        return Sigma(_gen_term(rng, ty.child, depth - 1))
    if choice == "proj":
        if rng.random() < 0.5:
            return P0(_gen_term(rng, Prod(ty, One()), depth - 1))
        return P1(_gen_term(rng, Prod(One(), ty), depth - 1))
    if choice == "ap":
        return Ap(
            _gen_term(rng, JT(Arrow(A, ty)), depth - 1), _gen_term(rng, A, depth - 1)
        )
    if choice == "pi":
        return Pi(_gen_term(rng, JT(ty), depth - 1))
    if choice == "case":
        scrut = _gen_term(rng, Sum(ty, ty), depth - 1)
        return Case("ca", "cb", Var("ca"), Var("cb"), scrut)
    raise AssertionError(choice)


@pytest.mark.parametrize("seed", [11, 12])
def test_strong_normalization_at_bounded_depth(seed):
    # asserted empirically: every generated well-typed term reaches a
    # normal form well inside the default fuel
    rng = random.Random(seed)
    for _ in range(250):
        t = _gen_term(rng, rng.choice(_TYPES), rng.randint(1, 6))
        out = reduce(t)  # raises FuelExhausted on divergence
        assert reduce_once(out) is None


@pytest.mark.parametrize("seed", [0, 1])
def test_subject_reduction_random(seed):
    rng = random.Random(seed)
    checked = 0
    for _ in range(300):
        ty = rng.choice(_TYPES)
        t = _gen_term(rng, ty, rng.randint(1, 6))
        got = typecheck(GEN_CTX, t, BOTH)
        assert got == ty
        steps = 0
        while steps < 50:
            nxt = reduce_once(t)
            if nxt is None:
                break
            assert typecheck(GEN_CTX, nxt, BOTH) == ty
            t = nxt
            steps += 1
            checked += 1
    assert checked > 50


# --- substitution commutes with typing ---------------------------------------


def test_substitution_typing():
    rng = random.Random(3)
    for _ in range(100):
        t = _gen_term(rng, B, 4)
        s = _gen_term(rng, A, 3)
        ctx_with = GEN_CTX
        assert typecheck(ctx_with, t, BOTH) == B
        out = substitute(t, "va", s)
        assert typecheck(GEN_CTX, out, BOTH) == B


# --- rendering / JSON ---------------------------------------------------------


def test_render_matches_bracket_notation():
    t = Ap(JLift("x", Lam("c", "y", A, Var("y"), Var("x")), Var("w")), Var("v"))
    assert render_term(t) == "ap([j [\\y. y](x)](w), v)"
    lam = Lam("c", "a", A, Var("a"), Var("y"))
    assert render_term(lam) == "[\\a. a](y)"


def test_term_json_roundtrip():
    rng = random.Random(9)
    for _ in range(60):
        t = _gen_term(rng, rng.choice(_TYPES), 5)
        assert term_from_json(term_to_json(t)) == t


def test_ty_json_roundtrip():
    for ty in _TYPES + [Zero(), Arrow(JT(A), Sum(One(), B))]:
        assert ty_from_json(ty_to_json(ty)) == ty
