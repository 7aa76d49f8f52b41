"""Typed terms with a closure-style modality.

Types are built from 0, 1, atomic bases, products, sums, ``J`` and
``->``.  The two binding constructors follow the closure convention:
in ``[j t(x)](y)`` and ``[\\a. t(x, a)](y)`` the body variables are
sealed off and the only free variables of the whole term are those of
the outer argument ``y``.  Typing therefore checks closure bodies in
their own one- or two-variable contexts, never in the ambient one.

``reduce`` normalizes under the computation rules (projections, case
on injections, application of a lifted lambda, closure composition and
identity, and the two modality-commutation rules), with a fuel bound.
``equal`` decides the full equality theory as far as a bounded
bidirectional search over the extensionality rules allows, returning
EQUAL, DISTINCT, or UNKNOWN.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Union

DEFAULT_FUEL = 10_000


class LambdaError(ValueError):
    pass


class TypeCheckError(LambdaError):
    pass


class FlavorGateError(TypeCheckError):
    pass


class FuelExhausted(LambdaError):
    pass


# --- types -------------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Base:
    name: str


@dataclass(frozen=True)
class Prod:
    left: "Ty"
    right: "Ty"


@dataclass(frozen=True)
class Sum:
    left: "Ty"
    right: "Ty"


@dataclass(frozen=True)
class Arrow:
    left: "Ty"
    right: "Ty"


@dataclass(frozen=True)
class JT:
    child: "Ty"


Ty = Union[Zero, One, Base, Prod, Sum, Arrow, JT]


@dataclass(frozen=True)
class SystemFlavor:
    temporal: bool
    cotemporal: bool

    NAMES = {"mJ": (False, False), "J": (True, False), "CoJ": (False, True), "I": (True, True)}

    @staticmethod
    def named(name: str) -> "SystemFlavor":
        try:
            return SystemFlavor(*SystemFlavor.NAMES[name])
        except KeyError:
            raise ValueError(f"unknown flavor {name!r}") from None


MJ = SystemFlavor(False, False)
TEMPORAL = SystemFlavor(True, False)
COTEMPORAL = SystemFlavor(False, True)
BOTH = SystemFlavor(True, True)


# --- terms --------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class P0:
    child: "Term"


@dataclass(frozen=True)
class P1:
    child: "Term"


@dataclass(frozen=True)
class InL:
    child: "Term"
    other: Ty  # right component of the sum


@dataclass(frozen=True)
class InR:
    child: "Term"
    other: Ty  # left component of the sum


@dataclass(frozen=True)
class Case:
    lvar: str
    rvar: str
    left: "Term"
    right: "Term"
    scrutinee: "Term"


@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class Bang:
    child: "Term"
    ty: Ty


@dataclass(frozen=True)
class JLift:
    """[j body(var)](arg); ``var`` is sealed, ``arg`` is the open position."""

    var: str
    body: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    """[\\avar. body(cvar, avar)](arg); cvar carries the J-ed context."""

    cvar: str
    avar: str
    avar_ty: Ty
    body: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Ap:
    fun: "Term"  # of type J(A -> B)
    arg: "Term"


@dataclass(frozen=True)
class Pi:
    child: "Term"


@dataclass(frozen=True)
class Sigma:
    child: "Term"


Term = Union[Var, Pair, P0, P1, InL, InR, Case, Star, Bang, JLift, Lam, Ap, Pi, Sigma]

Context = tuple[tuple[str, Ty], ...]


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, (Star,)):
        return frozenset()
    if isinstance(t, Pair):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, (P0, P1, Pi, Sigma, Bang)):
        return free_vars(t.child)
    if isinstance(t, (InL, InR)):
        return free_vars(t.child)
    if isinstance(t, Case):
        return (
            (free_vars(t.left) - {t.lvar})
            | (free_vars(t.right) - {t.rvar})
            | free_vars(t.scrutinee)
        )
    if isinstance(t, (JLift, Lam)):
        return free_vars(t.arg)
    if isinstance(t, Ap):
        return free_vars(t.fun) | free_vars(t.arg)
    raise TypeError(f"not a term: {t!r}")


def all_names(t: Term) -> frozenset[str]:
    """Every variable name occurring anywhere, bound or free."""
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, Star):
        return frozenset()
    if isinstance(t, Pair):
        return all_names(t.left) | all_names(t.right)
    if isinstance(t, (P0, P1, Pi, Sigma, Bang, InL, InR)):
        return all_names(t.child)
    if isinstance(t, Case):
        return (
            {t.lvar, t.rvar}
            | all_names(t.left)
            | all_names(t.right)
            | all_names(t.scrutinee)
        )
    if isinstance(t, JLift):
        return {t.var} | all_names(t.body) | all_names(t.arg)
    if isinstance(t, Lam):
        return {t.cvar, t.avar} | all_names(t.body) | all_names(t.arg)
    if isinstance(t, Ap):
        return all_names(t.fun) | all_names(t.arg)
    raise TypeError(f"not a term: {t!r}")


def fresh_name(base: str, avoid: frozenset[str]) -> str:
    if base not in avoid:
        return base
    for i in itertools.count(1):
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError


def substitute(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding substitution; closure bodies are never entered."""
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Star):
        return t
    if isinstance(t, Pair):
        return Pair(substitute(t.left, x, s), substitute(t.right, x, s))
    if isinstance(t, P0):
        return P0(substitute(t.child, x, s))
    if isinstance(t, P1):
        return P1(substitute(t.child, x, s))
    if isinstance(t, InL):
        return InL(substitute(t.child, x, s), t.other)
    if isinstance(t, InR):
        return InR(substitute(t.child, x, s), t.other)
    if isinstance(t, Bang):
        return Bang(substitute(t.child, x, s), t.ty)
    if isinstance(t, Pi):
        return Pi(substitute(t.child, x, s))
    if isinstance(t, Sigma):
        return Sigma(substitute(t.child, x, s))
    if isinstance(t, Ap):
        return Ap(substitute(t.fun, x, s), substitute(t.arg, x, s))
    if isinstance(t, JLift):
        return JLift(t.var, t.body, substitute(t.arg, x, s))
    if isinstance(t, Lam):
        return Lam(t.cvar, t.avar, t.avar_ty, t.body, substitute(t.arg, x, s))
    if isinstance(t, Case):
        scrut = substitute(t.scrutinee, x, s)
        lvar, left = t.lvar, t.left
        rvar, right = t.rvar, t.right
        if x != lvar:
            if lvar in free_vars(s) and lvar in free_vars(left):
                lvar = fresh_name(lvar, all_names(left) | all_names(s) | {x})
                left = substitute(left, t.lvar, Var(lvar))
            left = substitute(left, x, s)
        if x != rvar:
            if rvar in free_vars(s) and rvar in free_vars(right):
                rvar = fresh_name(rvar, all_names(right) | all_names(s) | {x})
                right = substitute(right, t.rvar, Var(rvar))
            right = substitute(right, x, s)
        return Case(lvar, rvar, left, right, scrut)
    raise TypeError(f"not a term: {t!r}")


# --- typing --------------------------------------------------------------------


def typecheck(ctx: Context, t: Term, flavor: SystemFlavor = MJ) -> Ty:
    """The unique derivable type, or a TypeCheckError."""
    names = [name for name, _ in ctx]
    if len(set(names)) != len(names):
        raise TypeCheckError("context variables must be distinct")
    return _infer(dict(ctx), t, flavor)


def _infer(env: dict[str, Ty], t: Term, flavor: SystemFlavor) -> Ty:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise TypeCheckError(f"unbound variable {t.name!r}") from None
    if isinstance(t, Star):
        return One()
    if isinstance(t, Pair):
        return Prod(_infer(env, t.left, flavor), _infer(env, t.right, flavor))
    if isinstance(t, (P0, P1)):
        ty = _infer(env, t.child, flavor)
        if not isinstance(ty, Prod):
            raise TypeCheckError(f"projection from non-product {ty}")
        return ty.left if isinstance(t, P0) else ty.right
    if isinstance(t, InL):
        return Sum(_infer(env, t.child, flavor), t.other)
    if isinstance(t, InR):
        return Sum(t.other, _infer(env, t.child, flavor))
    if isinstance(t, Case):
        sty = _infer(env, t.scrutinee, flavor)
        if not isinstance(sty, Sum):
            raise TypeCheckError(f"case scrutinee has non-sum type {sty}")
        lty = _infer({**env, t.lvar: sty.left}, t.left, flavor)
        rty = _infer({**env, t.rvar: sty.right}, t.right, flavor)
        if lty != rty:
            raise TypeCheckError(f"case branches disagree: {lty} vs {rty}")
        return lty
    if isinstance(t, Bang):
        ty = _infer(env, t.child, flavor)
        if not isinstance(ty, Zero):
            raise TypeCheckError(f"! needs an inhabitant of 0, got {ty}")
        return t.ty
    if isinstance(t, JLift):
        aty = _infer(env, t.arg, flavor)
        if not isinstance(aty, JT):
            raise TypeCheckError(f"closure argument must have a J type, got {aty}")
        # the body sees exactly its sealed variable
        bty = _infer({t.var: aty.child}, t.body, flavor)
        return JT(bty)
    if isinstance(t, Lam):
        if t.cvar == t.avar:
            raise TypeCheckError("lambda closure needs two distinct bound names")
        cty = _infer(env, t.arg, flavor)
        bty = _infer({t.cvar: JT(cty), t.avar: t.avar_ty}, t.body, flavor)
        return Arrow(t.avar_ty, bty)
    if isinstance(t, Ap):
        fty = _infer(env, t.fun, flavor)
        if not (isinstance(fty, JT) and isinstance(fty.child, Arrow)):
            raise TypeCheckError(f"application head must have type J(A -> B), got {fty}")
        aty = _infer(env, t.arg, flavor)
        if aty != fty.child.left:
            raise TypeCheckError(
                f"argument type {aty} does not match {fty.child.left}"
            )
        return fty.child.right
    if isinstance(t, Pi):
        if not flavor.temporal:
            raise FlavorGateError("pi needs the temporal flavor")
        ty = _infer(env, t.child, flavor)
        if not isinstance(ty, JT):
            raise TypeCheckError(f"pi needs a J type, got {ty}")
        return ty.child
    if isinstance(t, Sigma):
        if not flavor.cotemporal:
            raise FlavorGateError("sigma needs the cotemporal flavor")
        return JT(_infer(env, t.child, flavor))
    raise TypeCheckError(f"not a term: {t!r}")


# --- reduction -------------------------------------------------------------------


def _freshen_two(body: Term, a: str, b: str, avoid: frozenset[str]) -> tuple[Term, str, str]:
    used = all_names(body) | avoid
    a2 = fresh_name(a, used)
    body = substitute(body, a, Var(a2)) if a2 != a else body
    b2 = fresh_name(b, used | {a2})
    body = substitute(body, b, Var(b2)) if b2 != b else body
    return body, a2, b2


def reduce_once(t: Term) -> Optional[Term]:
    """One leftmost-outermost computation step, or None at normal form."""
    root = _root_step(t)
    if root is not None:
        return root
    for field_, sub in _children(t):
        new = reduce_once(sub)
        if new is not None:
            return _rebuild(t, field_, new)
    return None


def _root_step(t: Term) -> Optional[Term]:
    if isinstance(t, P0) and isinstance(t.child, Pair):
        return t.child.left
    if isinstance(t, P1) and isinstance(t.child, Pair):
        return t.child.right
    if isinstance(t, Case) and isinstance(t.scrutinee, InL):
        return substitute(t.left, t.lvar, t.scrutinee.child)
    if isinstance(t, Case) and isinstance(t.scrutinee, InR):
        return substitute(t.right, t.rvar, t.scrutinee.child)
    if isinstance(t, JLift) and isinstance(t.body, Var) and t.body.name == t.var:
        return t.arg  # [j x](y) = y
    if isinstance(t, JLift) and isinstance(t.arg, JLift):
        # [j t]([j s](z)) = [j t(s)](z)
        inner = t.arg
        avoid = all_names(t.body) | all_names(inner.body) | all_names(inner.arg) | {t.var}
        v = fresh_name(inner.var, avoid)
        s_renamed = substitute(inner.body, inner.var, Var(v)) if v != inner.var else inner.body
        return JLift(v, substitute(t.body, t.var, s_renamed), inner.arg)
    if isinstance(t, JLift) and isinstance(t.arg, Sigma):
        # [j t](sigma(s)) = sigma(t(s))
        return Sigma(substitute(t.body, t.var, t.arg.child))
    if isinstance(t, Pi) and isinstance(t.child, JLift):
        # pi([j t](s)) = t(pi(s))
        lift = t.child
        return substitute(lift.body, lift.var, Pi(lift.arg))
    if isinstance(t, Ap) and isinstance(t.fun, JLift):
        lift = t.fun
        body = lift.body
        if (
            isinstance(body, Lam)
            and isinstance(body.arg, Var)
            and body.arg.name == lift.var
        ):
            # ap([j [\y. b(x, y)]](w), u) = b(w, u)
            inner, cv, av = _freshen_two(
                body.body,
                body.cvar,
                body.avar,
                free_vars(lift.arg) | free_vars(t.arg) | all_names(t),
            )
            return substitute(substitute(inner, cv, lift.arg), av, t.arg)
    return None


def _children(t: Term) -> list[tuple[str, Term]]:
    if isinstance(t, Pair):
        return [("left", t.left), ("right", t.right)]
    if isinstance(t, (P0, P1, Pi, Sigma, Bang)):
        return [("child", t.child)]
    if isinstance(t, (InL, InR)):
        return [("child", t.child)]
    if isinstance(t, Case):
        return [("scrutinee", t.scrutinee), ("left", t.left), ("right", t.right)]
    if isinstance(t, JLift):
        return [("arg", t.arg), ("body", t.body)]
    if isinstance(t, Lam):
        return [("arg", t.arg), ("body", t.body)]
    if isinstance(t, Ap):
        return [("fun", t.fun), ("arg", t.arg)]
    return []


def _rebuild(t: Term, field_: str, new: Term) -> Term:
    import dataclasses

    return dataclasses.replace(t, **{field_: new})


def reduce(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Normal form under the computation rules; FuelExhausted if over budget."""
    for _ in range(fuel):
        new = reduce_once(t)
        if new is None:
            return t
        t = new
    raise FuelExhausted(f"no normal form within {fuel} steps")


# --- alpha equality -----------------------------------------------------------


def alpha_eq(t: Term, s: Term) -> bool:
    return _alpha(t, s, {}, {}, [0])


def _alpha(t, s, envl, envr, counter) -> bool:
    if type(t) is not type(s):
        return False
    if isinstance(t, Var):
        if t.name in envl or s.name in envr:
            i, j = envl.get(t.name), envr.get(s.name)
            return i is not None and i == j
        return t.name == s.name
    if isinstance(t, Star):
        return True
    if isinstance(t, Pair):
        return _alpha(t.left, s.left, envl, envr, counter) and _alpha(
            t.right, s.right, envl, envr, counter
        )
    if isinstance(t, (P0, P1, Pi, Sigma)):
        return _alpha(t.child, s.child, envl, envr, counter)
    if isinstance(t, (InL, InR)):
        return t.other == s.other and _alpha(t.child, s.child, envl, envr, counter)
    if isinstance(t, Bang):
        return t.ty == s.ty and _alpha(t.child, s.child, envl, envr, counter)
    if isinstance(t, Ap):
        return _alpha(t.fun, s.fun, envl, envr, counter) and _alpha(
            t.arg, s.arg, envl, envr, counter
        )
    if isinstance(t, Case):
        if not _alpha(t.scrutinee, s.scrutinee, envl, envr, counter):
            return False
        i = counter[0]
        counter[0] += 1
        if not _alpha(
            t.left, s.left, {**envl, t.lvar: i}, {**envr, s.lvar: i}, counter
        ):
            return False
        j = counter[0]
        counter[0] += 1
        return _alpha(
            t.right, s.right, {**envl, t.rvar: j}, {**envr, s.rvar: j}, counter
        )
    if isinstance(t, JLift):
        if not _alpha(t.arg, s.arg, envl, envr, counter):
            return False
        i = counter[0]
        counter[0] += 1
        return _alpha(t.body, s.body, {t.var: i}, {s.var: i}, counter)
    if isinstance(t, Lam):
        if t.avar_ty != s.avar_ty:
            return False
        if not _alpha(t.arg, s.arg, envl, envr, counter):
            return False
        i, j = counter[0], counter[0] + 1
        counter[0] += 2
        return _alpha(
            t.body,
            s.body,
            {t.cvar: i, t.avar: j},
            {s.cvar: i, s.avar: j},
            counter,
        )
    raise TypeError(f"not a term: {t!r}")


# --- equality decision ----------------------------------------------------------


class Equality(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


def _eta_contract_root(t: Term) -> Iterator[Term]:
    # <p0 m, p1 m> = m
    if (
        isinstance(t, Pair)
        and isinstance(t.left, P0)
        and isinstance(t.right, P1)
        and alpha_eq(t.left.child, t.right.child)
    ):
        yield t.left.child
    # [\y. ap([j b](x), y)](m) = b(m); with b the sealed identity the
    # closure collapses first, leaving ap(x, y) directly
    if (
        isinstance(t, Lam)
        and isinstance(t.body, Ap)
        and isinstance(t.body.arg, Var)
        and t.body.arg.name == t.avar
    ):
        fun = t.body.fun
        if isinstance(fun, Var) and fun.name == t.cvar:
            yield t.arg
        if (
            isinstance(fun, JLift)
            and isinstance(fun.arg, Var)
            and fun.arg.name == t.cvar
            and t.avar not in free_vars(fun.body) - {fun.var}
        ):
            yield substitute(fun.body, fun.var, t.arg)
    # d(a, b; f(l(a)), f(r(b)), e) = f(e)
    if isinstance(t, Case):
        binders_unused = t.lvar not in free_vars(t.left) and t.rvar not in free_vars(
            t.right
        )
        if binders_unused and alpha_eq(t.left, t.right):
            yield t.left
        else:
            hole = fresh_name("hole", all_names(t))
            left = _unplug(t.left, InL, t.lvar, hole)
            right = _unplug(t.right, InR, t.rvar, hole)
            if left is not None and right is not None and alpha_eq(left, right):
                if t.lvar not in free_vars(left) and t.rvar not in free_vars(right):
                    yield substitute(left, hole, t.scrutinee)


def _unplug(t: Term, con: type, var: str, hole: str) -> Optional[Term]:
    """Replace every ``con(Var(var), _)`` injection by the hole; None if absent."""
    found = [False]

    def go(u: Term) -> Term:
        if isinstance(u, con) and u.child == Var(var):
            found[0] = True
            return Var(hole)
        for f, sub in _children(u):
            new = go(sub)
            if new is not sub:
                u = _rebuild(u, f, new)
        return u

    out = go(t)
    return out if found[0] else None


def _eta_variants(t: Term, budget: int) -> list:
    """Terms reachable by eta contractions followed by normalization."""
    seen = [t]
    frontier = [t]
    while frontier and len(seen) < budget:
        u = frontier.pop()
        for v in _all_eta_contractions(u):
            try:
                v = reduce(v, fuel=1000)
            except FuelExhausted:
                continue
            if not any(alpha_eq(v, w) for w in seen):
                seen.append(v)
                frontier.append(v)
    return seen


def _all_eta_contractions(t: Term) -> Iterator[Term]:
    yield from _eta_contract_root(t)
    for f, sub in _children(t):
        for new in _all_eta_contractions(sub):
            yield _rebuild(t, f, new)


_RIGID_HEADS = (InL, InR, Star, Var)


def equal(
    t: Term,
    s: Term,
    ctx: Context = (),
    flavor: SystemFlavor = BOTH,
    fuel: int = DEFAULT_FUEL,
) -> Equality:
    """Tri-state equality under the beta rules plus bounded eta search."""
    ty_t = typecheck(ctx, t, flavor)
    ty_s = typecheck(ctx, s, flavor)
    if ty_t != ty_s:
        raise TypeCheckError(f"terms have different types: {ty_t} vs {ty_s}")
    if isinstance(ty_t, One):
        return Equality.EQUAL  # both equal *
    if any(isinstance(ty, Zero) for _, ty in ctx):
        return Equality.EQUAL  # everything factors through !
    try:
        nt = reduce(t, fuel)
        ns = reduce(s, fuel)
    except FuelExhausted:
        return Equality.UNKNOWN
    if alpha_eq(nt, ns):
        return Equality.EQUAL
    budget = max(4, min(64, fuel // 100))
    left = _eta_variants(nt, budget)
    right = _eta_variants(ns, budget)
    for a in left:
        for b in right:
            if alpha_eq(a, b):
                return Equality.EQUAL
    if type(nt) is not type(ns) and isinstance(nt, _RIGID_HEADS) and isinstance(ns, _RIGID_HEADS):
        return Equality.DISTINCT
    if isinstance(nt, _RIGID_HEADS) and isinstance(ns, _RIGID_HEADS):
        if isinstance(nt, Var) and isinstance(ns, Var) and nt.name != ns.name:
            return Equality.DISTINCT
        if type(nt) is type(ns) and isinstance(nt, (InL, InR)):
            sub = equal(nt.child, ns.child, ctx, flavor, fuel)
            if sub is Equality.DISTINCT:
                return Equality.DISTINCT
    return Equality.UNKNOWN


# --- rendering and JSON -----------------------------------------------------


def render_ty(ty: Ty) -> str:
    if isinstance(ty, Zero):
        return "0"
    if isinstance(ty, One):
        return "1"
    if isinstance(ty, Base):
        return ty.name
    if isinstance(ty, Prod):
        return f"({render_ty(ty.left)} * {render_ty(ty.right)})"
    if isinstance(ty, Sum):
        return f"({render_ty(ty.left)} + {render_ty(ty.right)})"
    if isinstance(ty, Arrow):
        return f"({render_ty(ty.left)} -> {render_ty(ty.right)})"
    if isinstance(ty, JT):
        return f"J {render_ty(ty.child)}"
    raise TypeError(f"not a type: {ty!r}")


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Star):
        return "*"
    if isinstance(t, Pair):
        return f"<{render_term(t.left)}, {render_term(t.right)}>"
    if isinstance(t, P0):
        return f"p0({render_term(t.child)})"
    if isinstance(t, P1):
        return f"p1({render_term(t.child)})"
    if isinstance(t, InL):
        return f"l({render_term(t.child)})"
    if isinstance(t, InR):
        return f"r({render_term(t.child)})"
    if isinstance(t, Case):
        return (
            f"d({t.lvar}, {t.rvar}; {render_term(t.left)}, "
            f"{render_term(t.right)}, {render_term(t.scrutinee)})"
        )
    if isinstance(t, Bang):
        return f"!({render_term(t.child)})"
    if isinstance(t, JLift):
        return f"[j {render_term(t.body)}]({render_term(t.arg)})"
    if isinstance(t, Lam):
        return f"[\\{t.avar}. {render_term(t.body)}]({render_term(t.arg)})"
    if isinstance(t, Ap):
        return f"ap({render_term(t.fun)}, {render_term(t.arg)})"
    if isinstance(t, Pi):
        return f"pi({render_term(t.child)})"
    if isinstance(t, Sigma):
        return f"sigma({render_term(t.child)})"
    raise TypeError(f"not a term: {t!r}")


_TY_TAGS = {"zero": Zero, "one": One}


def ty_to_json(ty: Ty) -> dict:
    if isinstance(ty, Zero):
        return {"con": "zero"}
    if isinstance(ty, One):
        return {"con": "one"}
    if isinstance(ty, Base):
        return {"con": "base", "name": ty.name}
    if isinstance(ty, Prod):
        return {"con": "prod", "children": [ty_to_json(ty.left), ty_to_json(ty.right)]}
    if isinstance(ty, Sum):
        return {"con": "sum", "children": [ty_to_json(ty.left), ty_to_json(ty.right)]}
    if isinstance(ty, Arrow):
        return {"con": "arrow", "children": [ty_to_json(ty.left), ty_to_json(ty.right)]}
    if isinstance(ty, JT):
        return {"con": "j", "children": [ty_to_json(ty.child)]}
    raise TypeError(f"not a type: {ty!r}")


def ty_from_json(doc: dict) -> Ty:
    con = doc["con"]
    if con == "zero":
        return Zero()
    if con == "one":
        return One()
    if con == "base":
        return Base(doc["name"])
    kids = [ty_from_json(d) for d in doc.get("children", [])]
    if con in ("prod", "sum", "arrow"):
        cls = {"prod": Prod, "sum": Sum, "arrow": Arrow}[con]
        return cls(kids[0], kids[1])
    if con == "j":
        return JT(kids[0])
    raise ValueError(f"unknown type constructor {con!r}")


def term_to_json(t: Term) -> dict:
    if isinstance(t, Var):
        return {"con": "var", "var": t.name}
    if isinstance(t, Star):
        return {"con": "star"}
    if isinstance(t, Pair):
        return {"con": "pair", "children": [term_to_json(t.left), term_to_json(t.right)]}
    if isinstance(t, P0):
        return {"con": "p0", "children": [term_to_json(t.child)]}
    if isinstance(t, P1):
        return {"con": "p1", "children": [term_to_json(t.child)]}
    if isinstance(t, InL):
        return {"con": "l", "ty": ty_to_json(t.other), "children": [term_to_json(t.child)]}
    if isinstance(t, InR):
        return {"con": "r", "ty": ty_to_json(t.other), "children": [term_to_json(t.child)]}
    if isinstance(t, Case):
        return {
            "con": "d",
            "var": t.lvar,
            "var2": t.rvar,
            "children": [
                term_to_json(t.left),
                term_to_json(t.right),
                term_to_json(t.scrutinee),
            ],
        }
    if isinstance(t, Bang):
        return {"con": "bang", "ty": ty_to_json(t.ty), "children": [term_to_json(t.child)]}
    if isinstance(t, JLift):
        return {
            "con": "jlift",
            "var": t.var,
            "body": term_to_json(t.body),
            "arg": term_to_json(t.arg),
        }
    if isinstance(t, Lam):
        return {
            "con": "lam",
            "cvar": t.cvar,
            "var": t.avar,
            "ty": ty_to_json(t.avar_ty),
            "body": term_to_json(t.body),
            "arg": term_to_json(t.arg),
        }
    if isinstance(t, Ap):
        return {"con": "ap", "children": [term_to_json(t.fun), term_to_json(t.arg)]}
    if isinstance(t, Pi):
        return {"con": "pi", "children": [term_to_json(t.child)]}
    if isinstance(t, Sigma):
        return {"con": "sigma", "children": [term_to_json(t.child)]}
    raise TypeError(f"not a term: {t!r}")


def term_from_json(doc: dict) -> Term:
    con = doc["con"]
    kids = [term_from_json(d) for d in doc.get("children", [])]
    if con == "var":
        return Var(doc["var"])
    if con == "star":
        return Star()
    if con == "pair":
        return Pair(kids[0], kids[1])
    if con == "p0":
        return P0(kids[0])
    if con == "p1":
        return P1(kids[0])
    if con == "l":
        return InL(kids[0], ty_from_json(doc["ty"]))
    if con == "r":
        return InR(kids[0], ty_from_json(doc["ty"]))
    if con == "d":
        return Case(doc["var"], doc["var2"], kids[0], kids[1], kids[2])
    if con == "bang":
        return Bang(kids[0], ty_from_json(doc["ty"]))
    if con == "jlift":
        return JLift(doc["var"], term_from_json(doc["body"]), term_from_json(doc["arg"]))
    if con == "lam":
        return Lam(
            doc["cvar"],
            doc["var"],
            ty_from_json(doc["ty"]),
            term_from_json(doc["body"]),
            term_from_json(doc["arg"]),
        )
    if con == "ap":
        return Ap(kids[0], kids[1])
    if con == "pi":
        return Pi(kids[0])
    if con == "sigma":
        return Sigma(kids[0])
    raise ValueError(f"unknown term constructor {con!r}")
