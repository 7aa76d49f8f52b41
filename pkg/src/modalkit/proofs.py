"""Derivation checking for eighteen proof systems.

Hilbert systems over the box language: K, D, T, K4, KD4, S4, with line
justifications Taut, AxK, AxD, AxT, Ax4, MP, Nec.  Natural deduction
over the J language: mJ, sCoJ, CoJ, J, sI, I.  Natural deduction over
the propositional language: KPC, EKPC, KTPC, BPC, EBPC, IPC.

Contexts are sequences; Identity, Weakening, Contraction, Exchange and
Cut are explicit rules in both natural-deduction families (Exchange
admits any permutation).  The F rule takes exactly one context formula;
ArrowI takes at most one in the J systems, exactly the discharged
assumption in the propositional systems unless the system has Cur, in
which case the relaxed form with an ambient context is also admitted.

The builder functions at the bottom construct derivations forward,
computing each conclusion; the checkers remain the sole authority on
admissibility.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from . import syntax
from .semantics import Verdict
from .syntax import And, Atom, Bot, Box, Formula, Imp, J, Neg, Or, Sequent, Top

MODAL_SYSTEMS = ("K", "D", "T", "K4", "KD4", "S4")
JLOGIC_SYSTEMS = ("mJ", "sCoJ", "CoJ", "J", "sI", "I")
SUBINT_SYSTEMS = ("KPC", "EKPC", "KTPC", "BPC", "EBPC", "IPC")

EMBED_TARGET = {
    "KPC": "mJ",
    "EKPC": "sCoJ",
    "KTPC": "CoJ",
    "BPC": "J",
    "EBPC": "sI",
    "IPC": "I",
}

JLOGIC_EXTRA_RULES = {
    "mJ": frozenset(),
    "sCoJ": frozenset({"SCoJ"}),
    "CoJ": frozenset({"CoJ"}),
    "J": frozenset({"J"}),
    "sI": frozenset({"SCoJ", "J"}),
    "I": frozenset({"J", "CoJ"}),
}

SUBINT_EXTRA_RULES = {
    "KPC": frozenset(),
    "EKPC": frozenset({"E"}),
    "KTPC": frozenset({"T"}),
    "BPC": frozenset({"Cur"}),
    "EBPC": frozenset({"Cur", "E"}),
    "IPC": frozenset({"Cur", "T"}),
}

CUR_SYSTEMS = frozenset(s for s, extra in SUBINT_EXTRA_RULES.items() if "Cur" in extra)

MODAL_AXIOMS = {
    "K": frozenset({"AxK"}),
    "D": frozenset({"AxK", "AxD"}),
    "T": frozenset({"AxK", "AxT"}),
    "K4": frozenset({"AxK", "Ax4"}),
    "KD4": frozenset({"AxK", "AxD", "Ax4"}),
    "S4": frozenset({"AxK", "AxT", "Ax4"}),
}

# class flags a system's end sequents must hold on (soundness side)
SYSTEM_CLASS_FLAGS: dict[str, frozenset[str]] = {
    "K": frozenset({"boolean"}),
    "D": frozenset({"boolean", "semi_cotemporal"}),
    "T": frozenset({"boolean", "cotemporal"}),
    "K4": frozenset({"boolean", "semi_temporal"}),
    "KD4": frozenset({"boolean", "semi_cotemporal", "semi_temporal"}),
    "S4": frozenset({"boolean", "cotemporal", "semi_temporal"}),
    "mJ": frozenset(),
    "sCoJ": frozenset({"semi_cotemporal"}),
    "CoJ": frozenset({"cotemporal"}),
    "J": frozenset({"temporal"}),
    "sI": frozenset({"semi_cotemporal", "temporal"}),
    "I": frozenset({"temporal", "cotemporal"}),
    "KPC": frozenset(),
    "EKPC": frozenset({"semi_cotemporal"}),
    "KTPC": frozenset({"cotemporal"}),
    "BPC": frozenset({"temporal"}),
    "EBPC": frozenset({"semi_cotemporal", "temporal"}),
    "IPC": frozenset({"temporal", "cotemporal"}),
}

TAUT_ATOM_CAP = 16


class ProofBuildError(ValueError):
    pass


@dataclass(frozen=True)
class Derivation:
    rule: str
    sequent: Sequent
    premises: tuple["Derivation", ...] = ()


@dataclass(frozen=True)
class HilbertLine:
    formula: Formula
    just: str


@dataclass(frozen=True)
class HilbertProof:
    lines: tuple[HilbertLine, ...]

    @property
    def theorem(self) -> Formula:
        return self.lines[-1].formula


# --- Hilbert checking ---------------------------------------------------


def _truth_units(f: Formula, acc: set) -> None:
    if isinstance(f, Atom):
        acc.add(f)
    elif isinstance(f, Box):
        acc.add(f)
    elif isinstance(f, (And, Or, Imp)):
        _truth_units(f.left, acc)
        _truth_units(f.right, acc)
    elif isinstance(f, Neg):
        _truth_units(f.child, acc)


def _truth_value(f: Formula, env: dict) -> bool:
    if isinstance(f, (Atom, Box)):
        return env[f]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return _truth_value(f.left, env) and _truth_value(f.right, env)
    if isinstance(f, Or):
        return _truth_value(f.left, env) or _truth_value(f.right, env)
    if isinstance(f, Imp):
        return (not _truth_value(f.left, env)) or _truth_value(f.right, env)
    if isinstance(f, Neg):
        return not _truth_value(f.child, env)
    raise TypeError(f"not a box-language formula: {f!r}")


def is_opaque_tautology(f: Formula) -> bool:
    """Truth-table tautology with box subformulas treated as atoms."""
    units: set = set()
    _truth_units(f, units)
    units = sorted(units, key=repr)
    if len(units) > TAUT_ATOM_CAP:
        raise ValueError(f"tautology check capped at {TAUT_ATOM_CAP} distinct units")
    for bits in itertools.product((False, True), repeat=len(units)):
        if not _truth_value(f, dict(zip(units, bits))):
            return False
    return True


def _match_axiom(name: str, f: Formula) -> bool:
    if name == "AxK":
        return (
            isinstance(f, Imp)
            and isinstance(f.left, Box)
            and isinstance(f.left.child, Imp)
            and isinstance(f.right, Imp)
            and f.right.left == Box(f.left.child.left)
            and f.right.right == Box(f.left.child.right)
        )
    if name == "AxD":
        return f == Neg(Box(Bot()))
    if name == "AxT":
        return isinstance(f, Imp) and isinstance(f.left, Box) and f.left.child == f.right
    if name == "Ax4":
        return isinstance(f, Imp) and isinstance(f.left, Box) and Box(Box(f.left.child)) == f.right
    raise ValueError(f"unknown axiom {name!r}")


def check_hilbert(proof: HilbertProof, system: str) -> Verdict:
    """Line-by-line validation; the witness lists line-indexed failures."""
    if system not in MODAL_SYSTEMS:
        raise ValueError(f"unknown modal system {system!r}")
    errors: list[str] = []
    if not proof.lines:
        return Verdict(False, witness=("proof has no lines",))
    axioms = MODAL_AXIOMS[system]
    for idx, line in enumerate(proof.lines, start=1):
        f = line.formula
        if not syntax.in_language(f, "modal"):
            errors.append(f"line {idx}: formula outside the box language")
            continue
        parts = line.just.split()
        head = parts[0] if parts else ""
        try:
            if head == "Taut" and len(parts) == 1:
                if not is_opaque_tautology(f):
                    errors.append(f"line {idx}: not a tautology over opaque box units")
            elif head in ("AxK", "AxD", "AxT", "Ax4") and len(parts) == 1:
                if head not in axioms:
                    errors.append(f"line {idx}: axiom {head} is not part of {system}")
                elif not _match_axiom(head, f):
                    errors.append(f"line {idx}: formula does not instantiate {head}")
            elif head == "MP" and len(parts) == 3:
                i, j = int(parts[1]), int(parts[2])
                if not (1 <= i < idx and 1 <= j < idx):
                    errors.append(f"line {idx}: MP references must point at earlier lines")
                else:
                    fi = proof.lines[i - 1].formula
                    fj = proof.lines[j - 1].formula
                    if fi != Imp(fj, f) and fj != Imp(fi, f):
                        errors.append(f"line {idx}: MP does not connect lines {i} and {j}")
            elif head == "Nec" and len(parts) == 2:
                i = int(parts[1])
                if not 1 <= i < idx:
                    errors.append(f"line {idx}: Nec reference must point at an earlier line")
                elif f != Box(proof.lines[i - 1].formula):
                    errors.append(f"line {idx}: formula is not box of line {i}")
            else:
                errors.append(f"line {idx}: malformed justification {line.just!r}")
        except ValueError as exc:
            errors.append(f"line {idx}: {exc}")
    if errors:
        return Verdict(False, witness=tuple(errors))
    return Verdict(True)


# --- natural deduction: shared structural rules ----------------------------


def _is_permutation(a: tuple, b: tuple) -> bool:
    if len(a) != len(b):
        return False
    rest = list(b)
    for x in a:
        try:
            rest.remove(x)
        except ValueError:
            return False
    return True


def _check_structural(node: Derivation) -> Optional[str]:
    """None if handled-and-ok; an error string if handled-and-bad;
    raises KeyError for rules it does not handle."""
    rule = node.rule
    seq = node.sequent
    if rule == "Identity":
        if node.premises:
            return "Identity takes no premises"
        if seq.ante != (seq.succ,):
            return "Identity concludes A |- A"
        return None
    if rule == "Weaken":
        (p,) = _arity(node, 1)
        if p.sequent.succ != seq.succ:
            return "Weakening keeps the succedent"
        if not any(
            seq.ante[:i] + seq.ante[i + 1 :] == p.sequent.ante
            for i in range(len(seq.ante))
        ):
            return "conclusion context must be the premise context plus one formula"
        return None
    if rule == "Contract":
        (p,) = _arity(node, 1)
        if p.sequent.succ != seq.succ:
            return "Contraction keeps the succedent"
        for i in range(len(p.sequent.ante)):
            dropped = p.sequent.ante[i]
            if p.sequent.ante[:i] + p.sequent.ante[i + 1 :] == seq.ante and dropped in seq.ante:
                return None
        return "conclusion must drop one duplicated context formula"
    if rule == "Exchange":
        (p,) = _arity(node, 1)
        if p.sequent.succ != seq.succ:
            return "Exchange keeps the succedent"
        if not _is_permutation(seq.ante, p.sequent.ante):
            return "conclusion context must permute the premise context"
        return None
    if rule == "Cut":
        p0, p1 = _arity(node, 2)
        if not p1.sequent.ante:
            return "the second premise of Cut needs the cut formula last"
        if p1.sequent.ante[-1] != p0.sequent.succ:
            return "cut formula mismatch"
        if seq.ante != p0.sequent.ante + p1.sequent.ante[:-1]:
            return "Cut conclusion context must join the premise contexts"
        if seq.succ != p1.sequent.succ:
            return "Cut keeps the second premise's succedent"
        return None
    raise KeyError(rule)


class _Arity(Exception):
    def __init__(self, msg):
        self.msg = msg


def _arity(node: Derivation, n: int) -> tuple[Derivation, ...]:
    if len(node.premises) != n:
        raise _Arity(f"{node.rule} takes {n} premise(s), got {len(node.premises)}")
    return node.premises


def _check_common_propositional(node: Derivation) -> Optional[str]:
    """Rules with the same shape in both ND families; raises KeyError otherwise."""
    rule = node.rule
    seq = node.sequent
    if rule == "Bot":
        (p,) = _arity(node, 1)
        if p.sequent.succ != Bot():
            return "premise must conclude F"
        if p.sequent.ante != seq.ante:
            return "Bot keeps the context"
        return None
    if rule == "AndI":
        p0, p1 = _arity(node, 2)
        if not isinstance(seq.succ, And):
            return "conclusion must be a conjunction"
        if p0.sequent.succ != seq.succ.left or p1.sequent.succ != seq.succ.right:
            return "premises must prove the two conjuncts in order"
        if seq.ante != p0.sequent.ante + p1.sequent.ante:
            return "AndI joins the premise contexts"
        return None
    if rule == "AndE":
        (p,) = _arity(node, 1)
        if not isinstance(p.sequent.succ, And):
            return "premise must conclude a conjunction"
        if seq.succ not in (p.sequent.succ.left, p.sequent.succ.right):
            return "conclusion must be one conjunct"
        if seq.ante != p.sequent.ante:
            return "AndE keeps the context"
        return None
    if rule == "OrI":
        (p,) = _arity(node, 1)
        if not isinstance(seq.succ, Or):
            return "conclusion must be a disjunction"
        if p.sequent.succ not in (seq.succ.left, seq.succ.right):
            return "premise must prove one disjunct"
        if seq.ante != p.sequent.ante:
            return "OrI keeps the context"
        return None
    raise KeyError(rule)


# --- J-logic natural deduction ----------------------------------------------


def check_nd_j(d: Derivation, system: str) -> Verdict:
    if system not in JLOGIC_SYSTEMS:
        raise ValueError(f"unknown J-logic system {system!r}")
    extra = JLOGIC_EXTRA_RULES[system]
    errors: list[str] = []

    def visit(node: Derivation, path: str) -> None:
        seq = node.sequent
        for g in (*seq.ante, seq.succ):
            if not syntax.in_language(g, "jlang"):
                errors.append(f"node {path}: formula outside the J language")
                return
        try:
            msg = _node_error_j(node, system, extra)
        except _Arity as exc:
            msg = exc.msg
        if msg:
            errors.append(f"node {path}: {msg}")
        for k, p in enumerate(node.premises):
            visit(p, f"{path}.{k}")

    visit(d, "0")
    return Verdict(not errors, witness=tuple(errors) or None)


def _node_error_j(node: Derivation, system: str, extra: frozenset) -> Optional[str]:
    rule = node.rule
    seq = node.sequent
    try:
        return _check_structural(node)
    except KeyError:
        pass
    try:
        return _check_common_propositional(node)
    except KeyError:
        pass
    if rule == "Top":
        if node.premises:
            return "Top takes no premises"
        if seq.succ != Top():
            return "Top concludes T"
        return None
    if rule == "OrE":
        p0, p1 = _arity(node, 2)
        if not seq.ante or not isinstance(seq.ante[-1], Or):
            return "conclusion context must end with the disjunction"
        disj = seq.ante[-1]
        if not p0.sequent.ante or p0.sequent.ante[-1] != disj.left:
            return "first premise context must end with the left disjunct"
        if not p1.sequent.ante or p1.sequent.ante[-1] != disj.right:
            return "second premise context must end with the right disjunct"
        if p0.sequent.succ != seq.succ or p1.sequent.succ != seq.succ:
            return "premises must prove the conclusion's succedent"
        if seq.ante[:-1] != p0.sequent.ante[:-1] + p1.sequent.ante[:-1]:
            return "OrE joins the premise contexts"
        return None
    if rule == "ArrowE":
        p0, p1 = _arity(node, 2)
        if p1.sequent.succ != J(Imp(p0.sequent.succ, seq.succ)):
            return "second premise must conclude J of the implication"
        if seq.ante != p0.sequent.ante + p1.sequent.ante:
            return "ArrowE joins the premise contexts"
        return None
    if rule == "ArrowI":
        (p,) = _arity(node, 1)
        if not isinstance(seq.succ, Imp):
            return "conclusion must be an implication"
        if len(seq.ante) > 1:
            return "ArrowI admits at most one context formula"
        want = tuple(J(g) for g in seq.ante) + (seq.succ.left,)
        if p.sequent.ante != want:
            return "premise context must be J of the context plus the antecedent"
        if p.sequent.succ != seq.succ.right:
            return "premise must prove the consequent"
        return None
    if rule == "F":
        (p,) = _arity(node, 1)
        if len(p.sequent.ante) != 1:
            return "F takes exactly one context formula"
        if seq.ante != tuple(J(g) for g in p.sequent.ante):
            return "F applies J to the context"
        if seq.succ != J(p.sequent.succ):
            return "F applies J to the succedent"
        return None
    if rule == "SCoJ":
        if rule not in extra:
            return f"rule SCoJ is not part of {system}"
        (p,) = _arity(node, 1)
        if p.sequent.succ != Bot() or seq.succ != Bot():
            return "SCoJ works on sequents concluding F"
        if len(seq.ante) != 1 or p.sequent.ante != (J(seq.ante[0]),):
            return "SCoJ strips J from a single context formula"
        return None
    if rule == "CoJ":
        if rule not in extra:
            return f"rule CoJ is not part of {system}"
        (p,) = _arity(node, 1)
        if seq.succ != J(p.sequent.succ):
            return "CoJ applies J to the succedent"
        if seq.ante != p.sequent.ante:
            return "CoJ keeps the context"
        return None
    if rule == "J":
        if rule not in extra:
            return f"rule J is not part of {system}"
        (p,) = _arity(node, 1)
        if p.sequent.succ != J(seq.succ):
            return "J strips J from the succedent"
        if seq.ante != p.sequent.ante:
            return "J keeps the context"
        return None
    return f"unknown rule {rule!r} for J-logic systems"


# --- sub-intuitionistic natural deduction -------------------------------------


def check_nd_subint(d: Derivation, system: str) -> Verdict:
    if system not in SUBINT_SYSTEMS:
        raise ValueError(f"unknown propositional system {system!r}")
    extra = SUBINT_EXTRA_RULES[system]
    errors: list[str] = []

    def visit(node: Derivation, path: str) -> None:
        seq = node.sequent
        for g in (*seq.ante, seq.succ):
            if syntax.language_of(g) != "prop":
                errors.append(f"node {path}: formula outside the propositional language")
                return
        try:
            msg = _node_error_subint(node, system, extra)
        except _Arity as exc:
            msg = exc.msg
        if msg:
            errors.append(f"node {path}: {msg}")
        for k, p in enumerate(node.premises):
            visit(p, f"{path}.{k}")

    visit(d, "0")
    return Verdict(not errors, witness=tuple(errors) or None)


def _node_error_subint(node: Derivation, system: str, extra: frozenset) -> Optional[str]:
    rule = node.rule
    seq = node.sequent
    try:
        return _check_structural(node)
    except KeyError:
        pass
    try:
        return _check_common_propositional(node)
    except KeyError:
        pass
    if rule == "Top":
        (p,) = _arity(node, 1)
        if seq.succ != Top():
            return "Top concludes T"
        if seq.ante != p.sequent.ante:
            return "Top keeps the context"
        return None
    if rule == "OrE":
        p0, p1, p2 = _arity(node, 3)
        if not isinstance(p0.sequent.succ, Or):
            return "first premise must conclude a disjunction"
        disj = p0.sequent.succ
        if not p1.sequent.ante or p1.sequent.ante[-1] != disj.left:
            return "second premise context must end with the left disjunct"
        if not p2.sequent.ante or p2.sequent.ante[-1] != disj.right:
            return "third premise context must end with the right disjunct"
        if p1.sequent.succ != seq.succ or p2.sequent.succ != seq.succ:
            return "branch premises must prove the conclusion"
        want = p0.sequent.ante + p1.sequent.ante[:-1] + p2.sequent.ante[:-1]
        if seq.ante != want:
            return "OrE joins the premise contexts"
        return None
    if rule == "ArrowI":
        (p,) = _arity(node, 1)
        if not isinstance(seq.succ, Imp):
            return "conclusion must be an implication"
        if p.sequent.succ != seq.succ.right:
            return "premise must prove the consequent"
        if seq.ante == () and p.sequent.ante == (seq.succ.left,):
            return None
        if system in CUR_SYSTEMS and p.sequent.ante == seq.ante + (seq.succ.left,):
            return None
        if system in CUR_SYSTEMS:
            return "premise context must be the conclusion context plus the antecedent"
        return "the antecedent must be the only assumption"
    if rule == "AndIF":
        p0, p1 = _arity(node, 2)
        s0, s1 = p0.sequent.succ, p1.sequent.succ
        ok = (
            isinstance(s0, Imp)
            and isinstance(s1, Imp)
            and s0.left == s1.left
            and seq.succ == Imp(s0.left, And(s0.right, s1.right))
        )
        if not ok:
            return "premises A -> B and A -> C must yield A -> B /\\ C"
        if seq.ante != p0.sequent.ante + p1.sequent.ante:
            return "AndIF joins the premise contexts"
        return None
    if rule == "OrEF":
        p0, p1 = _arity(node, 2)
        s0, s1 = p0.sequent.succ, p1.sequent.succ
        ok = (
            isinstance(s0, Imp)
            and isinstance(s1, Imp)
            and s0.right == s1.right
            and seq.succ == Imp(Or(s0.left, s1.left), s0.right)
        )
        if not ok:
            return "premises A -> C and B -> C must yield A \\/ B -> C"
        if seq.ante != p0.sequent.ante + p1.sequent.ante:
            return "OrEF joins the premise contexts"
        return None
    if rule == "TrF":
        p0, p1 = _arity(node, 2)
        s0, s1 = p0.sequent.succ, p1.sequent.succ
        ok = (
            isinstance(s0, Imp)
            and isinstance(s1, Imp)
            and s0.right == s1.left
            and seq.succ == Imp(s0.left, s1.right)
        )
        if not ok:
            return "premises A -> B and B -> C must yield A -> C"
        if seq.ante != p0.sequent.ante + p1.sequent.ante:
            return "TrF joins the premise contexts"
        return None
    if rule == "E":
        if rule not in extra:
            return f"rule E is not part of {system}"
        (p,) = _arity(node, 1)
        if p.sequent.succ != Imp(Top(), Bot()):
            return "premise must conclude T -> F"
        if seq.succ != Bot() or seq.ante != p.sequent.ante:
            return "E concludes F in the same context"
        return None
    if rule == "T":
        if rule not in extra:
            return f"rule T is not part of {system}"
        (p,) = _arity(node, 1)
        s = p.sequent.succ
        ok = (
            isinstance(s, And)
            and isinstance(s.right, Imp)
            and s.right.left == s.left
            and seq.succ == s.right.right
        )
        if not ok:
            return "premise must conclude A /\\ (A -> B) with B the conclusion"
        if seq.ante != p.sequent.ante:
            return "T keeps the context"
        return None
    if rule == "Cur":
        if rule not in extra:
            return f"rule Cur is not part of {system}"
        (p,) = _arity(node, 1)
        if seq.succ != Imp(Top(), p.sequent.succ):
            return "Cur concludes T -> A from A"
        if seq.ante != p.sequent.ante:
            return "Cur keeps the context"
        return None
    return f"unknown rule {rule!r} for propositional systems"


# --- forward builders ----------------------------------------------------------
# Construct derivations whose conclusions are computed from the premises.
# The checkers above stay the independent validator.


def identity(a: Formula) -> Derivation:
    return Derivation("Identity", Sequent((a,), a))


def top_leaf(ante: Iterable[Formula] = ()) -> Derivation:
    return Derivation("Top", Sequent(tuple(ante), Top()))


def top_over(premise: Derivation) -> Derivation:
    return Derivation("Top", Sequent(premise.sequent.ante, Top()), (premise,))


def weaken(premise: Derivation, extra: Formula, at: int | None = None) -> Derivation:
    ante = list(premise.sequent.ante)
    at = len(ante) if at is None else at
    ante.insert(at, extra)
    return Derivation("Weaken", Sequent(tuple(ante), premise.sequent.succ), (premise,))


def contract(premise: Derivation, at: int) -> Derivation:
    ante = premise.sequent.ante
    dropped = ante[at]
    rest = ante[:at] + ante[at + 1 :]
    if dropped not in rest:
        raise ProofBuildError("contraction needs a duplicate")
    return Derivation("Contract", Sequent(rest, premise.sequent.succ), (premise,))


def exchange(premise: Derivation, order: Iterable[int]) -> Derivation:
    ante = premise.sequent.ante
    order = tuple(order)
    if sorted(order) != list(range(len(ante))):
        raise ProofBuildError("exchange order must permute the context")
    new = tuple(ante[i] for i in order)
    return Derivation("Exchange", Sequent(new, premise.sequent.succ), (premise,))


def cut(left: Derivation, right: Derivation) -> Derivation:
    if not right.sequent.ante or right.sequent.ante[-1] != left.sequent.succ:
        raise ProofBuildError("cut formula must be last in the right context")
    ante = left.sequent.ante + right.sequent.ante[:-1]
    return Derivation("Cut", Sequent(ante, right.sequent.succ), (left, right))


def and_intro(left: Derivation, right: Derivation) -> Derivation:
    seq = Sequent(
        left.sequent.ante + right.sequent.ante,
        And(left.sequent.succ, right.sequent.succ),
    )
    return Derivation("AndI", seq, (left, right))


def and_elim(premise: Derivation, side: int) -> Derivation:
    s = premise.sequent.succ
    if not isinstance(s, And):
        raise ProofBuildError("and_elim needs a conjunction")
    succ = s.left if side == 0 else s.right
    return Derivation("AndE", Sequent(premise.sequent.ante, succ), (premise,))


def or_intro(premise: Derivation, other: Formula, side: int) -> Derivation:
    s = premise.sequent.succ
    succ = Or(s, other) if side == 0 else Or(other, s)
    return Derivation("OrI", Sequent(premise.sequent.ante, succ), (premise,))


def bot_elim(premise: Derivation, target: Formula) -> Derivation:
    if premise.sequent.succ != Bot():
        raise ProofBuildError("bot_elim needs a premise concluding F")
    return Derivation("Bot", Sequent(premise.sequent.ante, target), (premise,))


def or_elim_j(left: Derivation, right: Derivation) -> Derivation:
    la, ra = left.sequent.ante, right.sequent.ante
    if not la or not ra:
        raise ProofBuildError("or_elim premises need their disjunct last")
    if left.sequent.succ != right.sequent.succ:
        raise ProofBuildError("or_elim premises must agree on the succedent")
    disj = Or(la[-1], ra[-1])
    seq = Sequent(la[:-1] + ra[:-1] + (disj,), left.sequent.succ)
    return Derivation("OrE", seq, (left, right))


def or_elim_subint(scrutinee: Derivation, left: Derivation, right: Derivation) -> Derivation:
    s = scrutinee.sequent.succ
    if not isinstance(s, Or):
        raise ProofBuildError("scrutinee must conclude a disjunction")
    if left.sequent.succ != right.sequent.succ:
        raise ProofBuildError("branches must agree on the succedent")
    seq = Sequent(
        scrutinee.sequent.ante + left.sequent.ante[:-1] + right.sequent.ante[:-1],
        left.sequent.succ,
    )
    return Derivation("OrE", seq, (scrutinee, left, right))


def arrow_elim_j(arg: Derivation, fun: Derivation) -> Derivation:
    jf = fun.sequent.succ
    if not (isinstance(jf, J) and isinstance(jf.child, Imp)):
        raise ProofBuildError("second premise must conclude J of an implication")
    if jf.child.left != arg.sequent.succ:
        raise ProofBuildError("argument does not match the implication")
    seq = Sequent(arg.sequent.ante + fun.sequent.ante, jf.child.right)
    return Derivation("ArrowE", seq, (arg, fun))


def arrow_intro_j(premise: Derivation) -> Derivation:
    ante = premise.sequent.ante
    if not ante:
        raise ProofBuildError("arrow_intro_j needs the antecedent in the context")
    a = ante[-1]
    if len(ante) == 1:
        ctx: tuple[Formula, ...] = ()
    elif len(ante) == 2 and isinstance(ante[0], J):
        ctx = (ante[0].child,)
    else:
        raise ProofBuildError("premise context must be (J G, A) or (A)")
    seq = Sequent(ctx, Imp(a, premise.sequent.succ))
    return Derivation("ArrowI", seq, (premise,))


def f_rule(premise: Derivation) -> Derivation:
    ante = premise.sequent.ante
    if len(ante) != 1:
        raise ProofBuildError("F takes exactly one context formula")
    seq = Sequent((J(ante[0]),), J(premise.sequent.succ))
    return Derivation("F", seq, (premise,))


def scoj_rule(premise: Derivation) -> Derivation:
    ante = premise.sequent.ante
    if len(ante) != 1 or not isinstance(ante[0], J) or premise.sequent.succ != Bot():
        raise ProofBuildError("SCoJ needs J A |- F")
    return Derivation("SCoJ", Sequent((ante[0].child,), Bot()), (premise,))


def coj_rule(premise: Derivation) -> Derivation:
    seq = Sequent(premise.sequent.ante, J(premise.sequent.succ))
    return Derivation("CoJ", seq, (premise,))


def j_rule(premise: Derivation) -> Derivation:
    s = premise.sequent.succ
    if not isinstance(s, J):
        raise ProofBuildError("J rule needs a succedent of the form J A")
    return Derivation("J", Sequent(premise.sequent.ante, s.child), (premise,))


def arrow_intro_subint(premise: Derivation) -> Derivation:
    ante = premise.sequent.ante
    if len(ante) != 1:
        raise ProofBuildError("restricted arrow introduction discharges the only assumption")
    seq = Sequent((), Imp(ante[0], premise.sequent.succ))
    return Derivation("ArrowI", seq, (premise,))


def arrow_intro_relaxed(premise: Derivation) -> Derivation:
    ante = premise.sequent.ante
    if not ante:
        raise ProofBuildError("relaxed arrow introduction needs an assumption to discharge")
    seq = Sequent(ante[:-1], Imp(ante[-1], premise.sequent.succ))
    return Derivation("ArrowI", seq, (premise,))


def and_intro_f(left: Derivation, right: Derivation) -> Derivation:
    s0, s1 = left.sequent.succ, right.sequent.succ
    if not (isinstance(s0, Imp) and isinstance(s1, Imp) and s0.left == s1.left):
        raise ProofBuildError("AndIF needs premises A -> B and A -> C")
    seq = Sequent(
        left.sequent.ante + right.sequent.ante,
        Imp(s0.left, And(s0.right, s1.right)),
    )
    return Derivation("AndIF", seq, (left, right))


def or_elim_f(left: Derivation, right: Derivation) -> Derivation:
    s0, s1 = left.sequent.succ, right.sequent.succ
    if not (isinstance(s0, Imp) and isinstance(s1, Imp) and s0.right == s1.right):
        raise ProofBuildError("OrEF needs premises A -> C and B -> C")
    seq = Sequent(
        left.sequent.ante + right.sequent.ante,
        Imp(Or(s0.left, s1.left), s0.right),
    )
    return Derivation("OrEF", seq, (left, right))


def tr_f(left: Derivation, right: Derivation) -> Derivation:
    s0, s1 = left.sequent.succ, right.sequent.succ
    if not (isinstance(s0, Imp) and isinstance(s1, Imp) and s0.right == s1.left):
        raise ProofBuildError("TrF needs premises A -> B and B -> C")
    seq = Sequent(left.sequent.ante + right.sequent.ante, Imp(s0.left, s1.right))
    return Derivation("TrF", seq, (left, right))


def e_rule(premise: Derivation) -> Derivation:
    if premise.sequent.succ != Imp(Top(), Bot()):
        raise ProofBuildError("E needs a premise concluding T -> F")
    return Derivation("E", Sequent(premise.sequent.ante, Bot()), (premise,))


def t_rule(premise: Derivation) -> Derivation:
    s = premise.sequent.succ
    ok = isinstance(s, And) and isinstance(s.right, Imp) and s.right.left == s.left
    if not ok:
        raise ProofBuildError("T needs a premise concluding A /\\ (A -> B)")
    return Derivation("T", Sequent(premise.sequent.ante, s.right.right), (premise,))


def cur_rule(premise: Derivation) -> Derivation:
    seq = Sequent(premise.sequent.ante, Imp(Top(), premise.sequent.succ))
    return Derivation("Cur", seq, (premise,))


# --- JSON --------------------------------------------------------------------


def derivation_to_json(d: Derivation) -> dict:
    return {
        "rule": d.rule,
        "sequent": {
            "ante": [syntax.render(g) for g in d.sequent.ante],
            "succ": syntax.render(d.sequent.succ),
        },
        "premises": [derivation_to_json(p) for p in d.premises],
    }


def derivation_from_json(doc: dict, lang: str) -> Derivation:
    seq = doc["sequent"]
    sequent = Sequent(
        tuple(syntax.parse(g, lang) for g in seq.get("ante", [])),
        syntax.parse(seq["succ"], lang),
    )
    premises = tuple(derivation_from_json(p, lang) for p in doc.get("premises", []))
    return Derivation(doc["rule"], sequent, premises)


def nd_language(system: str) -> str:
    if system in JLOGIC_SYSTEMS:
        return "jlang"
    if system in SUBINT_SYSTEMS:
        return "prop"
    raise ValueError(f"{system!r} is not a natural-deduction system")


def proof_to_json(proof, system: str) -> dict:
    if isinstance(proof, HilbertProof):
        return {
            "system": system,
            "lines": [
                {"formula": syntax.render(line.formula), "just": line.just}
                for line in proof.lines
            ],
        }
    return {"system": system, "tree": derivation_to_json(proof)}


def proof_from_json(doc: dict):
    """Returns (proof, system); dispatches on the file shape."""
    system = doc["system"]
    if "lines" in doc:
        if system not in MODAL_SYSTEMS:
            raise ValueError(f"{system!r} is not a Hilbert system")
        lines = tuple(
            HilbertLine(syntax.parse(entry["formula"], "modal"), entry["just"])
            for entry in doc["lines"]
        )
        return HilbertProof(lines), system
    if "tree" in doc:
        return derivation_from_json(doc["tree"], nd_language(system)), system
    raise ValueError("proof document needs either 'lines' or 'tree'")


def check_proof(proof, system: str) -> Verdict:
    if isinstance(proof, HilbertProof):
        return check_hilbert(proof, system)
    if system in JLOGIC_SYSTEMS:
        return check_nd_j(proof, system)
    return check_nd_subint(proof, system)


def end_sequent(proof, system: str) -> Sequent:
    if isinstance(proof, HilbertProof):
        return Sequent((), proof.theorem)
    return proof.sequent
