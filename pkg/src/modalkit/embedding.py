"""Compiling propositional derivations into their paired J-logic.

Pairings: KPC -> mJ, EKPC -> sCoJ, KTPC -> CoJ, BPC -> J, EBPC -> sI,
IPC -> I.  Structural and conjunction/disjunction steps translate one
to one; each formalized rule expands into a macro built from ArrowE,
ArrowI and the J-image of a conjoined context; the additional rules E,
T and Cur expand through SCoJ, CoJ and J respectively.  The output
derivation always proves the same end sequent and checks in the target
system.
"""
from __future__ import annotations

from functools import reduce

from . import proofs as p
from .proofs import Derivation, EMBED_TARGET
from .syntax import And, Bot, Formula, Imp, J, Top


class EmbeddingError(ValueError):
    pass


def embed_proof(d: Derivation, from_system: str) -> Derivation:
    """Translate an accepted derivation into the paired J-logic system."""
    if from_system not in EMBED_TARGET:
        raise EmbeddingError(f"{from_system!r} is not a propositional system")
    verdict = p.check_nd_subint(d, from_system)
    if not verdict.holds:
        raise EmbeddingError(
            "derivation does not check in "
            + from_system
            + ": "
            + "; ".join(verdict.witness)
        )
    out = _embed(d)
    assert out.sequent == d.sequent
    return out


def _embed(node: Derivation) -> Derivation:
    rule = node.rule
    seq = node.sequent
    kids = [_embed(q) for q in node.premises]
    if rule in ("Identity", "Weaken", "Contract", "Exchange", "Cut", "Bot", "AndI", "AndE", "OrI"):
        return Derivation(rule, seq, tuple(kids))
    if rule == "Top":
        return p.top_leaf(seq.ante)
    if rule == "OrE":
        scrutinee, left, right = kids
        return p.cut(scrutinee, p.or_elim_j(left, right))
    if rule == "ArrowI":
        (body,) = kids
        if seq.ante == ():
            return _arrow_intro_padded(body)
        return _arrow_intro_via_j(body)
    if rule == "AndIF":
        a = seq.succ.left
        left, right = kids
        core = _and_intro_f_core(a, left.sequent.succ.right, right.sequent.succ.right)
        return _plug2(left, right, core)
    if rule == "OrEF":
        left, right = kids
        c = seq.succ.right
        core = _or_elim_f_core(left.sequent.succ.left, right.sequent.succ.left, c)
        return _plug2(left, right, core)
    if rule == "TrF":
        left, right = kids
        core = _tr_f_core(
            left.sequent.succ.left, left.sequent.succ.right, right.sequent.succ.right
        )
        return _plug2(left, right, core)
    if rule == "Cur":
        (body,) = kids
        a = body.sequent.succ
        core = _arrow_intro_via_j(p.weaken(p.identity(a), Top()))
        return p.cut(body, core)
    if rule == "T":
        (body,) = kids
        w = body.sequent.succ  # A /\ (A -> B)
        core = _t_core(w.left, w.right.right)
        return p.cut(body, core)
    if rule == "E":
        (body,) = kids
        return p.cut(body, _e_core())
    raise EmbeddingError(f"no translation for rule {rule!r}")


# --- macro building blocks ---------------------------------------------------


def _modus(a: Formula, b: Formula) -> Derivation:
    """(J(A -> B), A) |- B from two identities."""
    raw = p.arrow_elim_j(p.identity(a), p.identity(J(Imp(a, b))))
    return p.exchange(raw, (1, 0))


def _j_split(x: Formula, y: Formula) -> Derivation:
    """J(X /\\ Y) |- J X /\\ J Y."""
    jx = p.f_rule(p.and_elim(p.identity(And(x, y)), 0))
    jy = p.f_rule(p.and_elim(p.identity(And(x, y)), 1))
    both = p.and_intro(jx, jy)
    return p.contract(both, 1)


def _plug2(left: Derivation, right: Derivation, core: Derivation) -> Derivation:
    """Cut two premises into a two-slot core (X1, X2) |- Y, contexts in order."""
    return p.cut(left, p.cut(right, core))


def _rotate_left(tree: Derivation) -> Derivation:
    n = len(tree.sequent.ante)
    return p.exchange(tree, tuple(range(1, n)) + (0,))


def _fold_j_prefix(tree: Derivation, count: int) -> Derivation:
    """Merge a leading block J x1, ..., J xk of the context into J(x1 /\\ ... )."""
    while count > 1:
        ante = tree.sequent.ante
        jx, jy = ante[0], ante[1]
        x, y = jx.child, jy.child
        both = And(J(x), J(y))
        split = _j_split(x, y)  # J(x /\ y) |- Jx /\ Jy
        t = _rotate_left(tree)  # (Jy, rest, Jx)
        t = p.cut(p.and_elim(p.identity(both), 0), t)  # (JxΛJy, Jy, rest)
        n = len(t.sequent.ante)
        t = p.exchange(t, (0,) + tuple(range(2, n)) + (1,))  # (JxΛJy, rest, Jy)
        t = p.cut(p.and_elim(p.identity(both), 1), t)  # (JxΛJy, JxΛJy, rest)
        t = p.contract(t, 0)
        t = _rotate_left(t)  # (rest, JxΛJy)
        t = p.cut(split, t)  # (J(xΛy), rest)
        tree = t
        count -= 1
    return tree


def _meet(formulas: tuple[Formula, ...]) -> Formula:
    return reduce(And, formulas)


def _project(conj: Formula, path: tuple[int, ...]) -> Derivation:
    """W |- member, following and-eliminations along ``path``."""
    t = p.identity(conj)
    for side in path:
        t = p.and_elim(t, side)
    return t


def _meet_paths(k: int) -> list[tuple[int, ...]]:
    """Elimination paths of each member inside reduce(And, members)."""
    # left fold: ((m0 /\ m1) /\ m2) ...
    paths = []
    for i in range(k):
        path = (0,) * (k - 1 - i) if i == 0 else (0,) * (k - 1 - i) + (1,)
        paths.append(path)
    return paths


def _meet_intro(members: tuple[Formula, ...]) -> Derivation:
    """m0, ..., mk |- m0 /\\ ... /\\ mk (left fold)."""
    t = p.identity(members[0])
    for m in members[1:]:
        t = p.and_intro(t, p.identity(m))
    return t


def _arrow_intro_padded(body: Derivation) -> Derivation:
    """From (A,) |- B build () |- A -> B through the T-padded context."""
    (a,) = body.sequent.ante
    inner = p.cut(p.weaken(p.identity(a), J(Top()), at=0), body)  # (J T, A) |- B
    arrow = p.arrow_intro_j(inner)  # (T,) |- A -> B
    return p.cut(p.top_leaf(()), arrow)


def _arrow_intro_via_j(body: Derivation) -> Derivation:
    """From Gamma + (A,) |- B build Gamma |- A -> B using the J rule."""
    ante = body.sequent.ante
    if len(ante) < 1:
        raise EmbeddingError("nothing to discharge")
    if len(ante) == 1:
        return _arrow_intro_padded(body)
    gamma, a = ante[:-1], ante[-1]
    w = _meet(gamma)
    k = len(gamma)
    paths = _meet_paths(k)
    # rewrite the context (g1, ..., gk, A) into (A, W, ..., W)
    t = body
    for i in range(k):
        t = _rotate_left(t)  # front member to the back
        t = p.cut(_project(w, paths[i]), t)  # replace it by W, now in front
        t = _rotate_left(t)  # W to the back
    while len(t.sequent.ante) > 2:
        t = p.contract(t, 1)
    jw = p.j_rule(p.identity(J(w)))  # (J W,) |- W
    t = p.cut(jw, t)  # (J W, A) |- B
    arrow = p.arrow_intro_j(t)  # (W,) |- A -> B
    return p.cut(_meet_intro(gamma), arrow)


def _formalized_close(u: Derivation, members: tuple[Formula, ...]) -> Derivation:
    """From (J m0, ..., J mk, A) |- B to (m0, ..., mk) |- A -> B."""
    t = _fold_j_prefix(u, len(members))
    t = p.arrow_intro_j(t)
    return p.cut(_meet_intro(members), t)


def _and_intro_f_core(a: Formula, b: Formula, c: Formula) -> Derivation:
    """(A -> B, A -> C) |- A -> (B /\\ C)."""
    u = p.and_intro(_modus(a, b), _modus(a, c))
    # ctx (J(A->B), A, J(A->C), A): reorder and contract the duplicate A
    u = p.exchange(u, (0, 2, 1, 3))
    u = p.contract(u, 2)
    return _formalized_close(u, (Imp(a, b), Imp(a, c)))


def _or_elim_f_core(a: Formula, b: Formula, c: Formula) -> Derivation:
    """(A -> C, B -> C) |- (A \\/ B) -> C."""
    u = p.or_elim_j(_modus(a, c), _modus(b, c))  # (J(A->C), J(B->C), A\/B) |- C
    return _formalized_close(u, (Imp(a, c), Imp(b, c)))


def _tr_f_core(a: Formula, b: Formula, c: Formula) -> Derivation:
    """(A -> B, B -> C) |- A -> C."""
    u = p.cut(_modus(a, b), _modus(b, c))  # (J(A->B), A, J(B->C)) |- C
    u = p.exchange(u, (0, 2, 1))
    return _formalized_close(u, (Imp(a, b), Imp(b, c)))


def _t_core(a: Formula, b: Formula) -> Derivation:
    """(A /\\ (A -> B),) |- B, through CoJ."""
    w = And(a, Imp(a, b))
    base = p.arrow_elim_j(p.identity(a), p.coj_rule(p.identity(Imp(a, b))))
    # ctx (A, A -> B); replace both members by W
    t = p.exchange(base, (1, 0))
    t = p.cut(p.and_elim(p.identity(w), 0), t)  # (W, A -> B)
    t = p.cut(p.and_elim(p.identity(w), 1), t)  # (W, W)
    return p.contract(t, 0)


def _e_core() -> Derivation:
    """(T -> F,) |- F, through SCoJ."""
    base = p.arrow_elim_j(p.top_leaf(()), p.identity(J(Imp(Top(), Bot()))))
    return p.scoj_rule(base)


# --- golden derived-rule corpus ----------------------------------------------


def derived_rule_trees() -> dict[str, tuple[Derivation, str]]:
    """The displayed macro trees, with the weakest system each checks in."""
    from .syntax import Atom

    a, b, c = Atom("p"), Atom("q"), Atom("r")
    return {
        "j-split": (_j_split(a, b), "mJ"),
        "and-intro-f": (_and_intro_f_core(a, b, c), "mJ"),
        "or-elim-f": (_or_elim_f_core(a, b, c), "mJ"),
        "tr-f": (_tr_f_core(a, b, c), "mJ"),
        "arrow-intro-padded": (_arrow_intro_padded(p.identity(a)), "mJ"),
        "cur": (_arrow_intro_via_j(p.weaken(p.identity(a), Top())), "J"),
        "t": (_t_core(a, b), "CoJ"),
        "e": (_e_core(), "sCoJ"),
    }
