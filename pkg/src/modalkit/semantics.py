"""Evaluation of formulas over modal spaces and Kripke models.

Two space-side evaluators: the boolean one reads ``->`` classically and
``[]`` as the greatest open whose image sits below the argument; the
weak one reads ``->`` as the adjoint implication and ``J`` as the
operator itself.  The Kripke side forces formulas pointwise: the modal
flavor is classical at each world with successor-quantified ``[]``,
and the sub-intuitionistic flavors quantify ``->`` over successors
(the persistent flavor additionally demands a transitive relation and
up-closed atoms).  Countermodel search enumerates frames by world
count, relation bitmask, and valuation, in that order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from . import syntax
from .syntax import And, Atom, Bot, Box, Formula, Imp, J, Neg, Or, Sequent, Top
from .spaces import (
    ModalSpace,
    apply_j,
    box,
    is_boolean,
    is_transitive,
    mask_of,
    relation_from_code,
    space_from_frame,
    space_from_transitive_frame,
    successor_masks,
    weak_impl,
    worlds_of,
)

FLAVORS = ("modal", "subint-plain", "subint-persistent")

MODAL_LOGICS = ("K", "D", "T", "K4", "KD4", "S4")
JLOGIC_LOGICS = ("mJ", "sCoJ", "CoJ", "J", "sI", "I")
SUBINT_LOGICS = ("KPC", "EKPC", "KTPC", "BPC", "EBPC", "IPC")

# frame conditions keyed by logic; "persistent" switches to up-set spaces
# with up-closed valuations
FRAME_CONDITIONS: dict[str, tuple[str, ...]] = {
    "K": (),
    "D": ("serial",),
    "T": ("reflexive",),
    "K4": ("transitive",),
    "KD4": ("serial", "transitive"),
    "S4": ("reflexive", "transitive"),
    "mJ": (),
    "KPC": (),
    "sCoJ": ("serial",),
    "EKPC": ("serial",),
    "CoJ": ("reflexive",),
    "KTPC": ("reflexive",),
    "J": ("transitive", "persistent"),
    "BPC": ("transitive", "persistent"),
    "sI": ("serial", "transitive", "persistent"),
    "EBPC": ("serial", "transitive", "persistent"),
    "I": ("reflexive", "transitive", "persistent"),
    "IPC": ("reflexive", "transitive", "persistent"),
}

COUNTERMODEL_HARD_CAP = 5


class NonBooleanSpaceError(ValueError):
    pass


class MissingAtomError(ValueError):
    pass


class FlavorError(ValueError):
    pass


class BoundExceededError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: object = None


@dataclass(frozen=True)
class KripkeModel:
    worlds: int
    rel: frozenset[tuple[int, int]]
    atoms: Mapping[str, int]  # atom name -> bitmask of worlds
    flavor: str = "modal"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise FlavorError(f"unknown flavor {self.flavor!r}")
        full = (1 << self.worlds) - 1
        for name, m in self.atoms.items():
            if m & ~full:
                raise ValueError(f"atom {name!r} mentions worlds outside the frame")
        if self.flavor == "subint-persistent":
            if not is_transitive(self.worlds, self.rel):
                raise ValueError("persistent models need a transitive relation")
            succ = successor_masks(self.worlds, self.rel)
            for name, m in self.atoms.items():
                if any(succ[y] & ~m for y in worlds_of(m)):
                    raise ValueError(f"atom {name!r} is not up-closed")

    @property
    def succ(self) -> list[int]:
        return successor_masks(self.worlds, self.rel)


def _valuation_open(space: ModalSpace, valuation: Mapping[str, int], name: str) -> int:
    try:
        v = valuation[name]
    except KeyError:
        raise MissingAtomError(f"no value for atom {name!r}") from None
    if not space.topology.contains(v):
        raise ValueError(f"value of atom {name!r} is not an open of the space")
    return v


def eval_modal(space: ModalSpace, valuation: Mapping[str, int], f: Formula) -> int:
    """Value of a box-language formula on a boolean space."""
    top = space.topology
    if not is_boolean(top):
        raise NonBooleanSpaceError("the classical connectives need a boolean space")
    if not syntax.in_language(f, "modal"):
        raise syntax.LanguageError("eval_modal expects a box-language formula")
    comp = top.complement_table

    def go(g: Formula) -> int:
        if isinstance(g, Atom):
            return _valuation_open(space, valuation, g.name)
        if isinstance(g, Top):
            return top.full
        if isinstance(g, Bot):
            return 0
        if isinstance(g, And):
            return go(g.left) & go(g.right)
        if isinstance(g, Or):
            return go(g.left) | go(g.right)
        if isinstance(g, Imp):
            return comp[go(g.left)] | go(g.right)
        if isinstance(g, Neg):
            return comp[go(g.child)]
        if isinstance(g, Box):
            return box(space, go(g.child))
        raise TypeError(f"not a modal formula: {g!r}")

    return go(f)


def eval_j(space: ModalSpace, valuation: Mapping[str, int], f: Formula) -> int:
    """Value of a J-language formula: ``->`` adjoint, ``J`` the operator."""
    if not syntax.in_language(f, "jlang"):
        raise syntax.LanguageError("eval_j expects a J-language formula")
    top = space.topology

    def go(g: Formula) -> int:
        if isinstance(g, Atom):
            return _valuation_open(space, valuation, g.name)
        if isinstance(g, Top):
            return top.full
        if isinstance(g, Bot):
            return 0
        if isinstance(g, And):
            return go(g.left) & go(g.right)
        if isinstance(g, Or):
            return go(g.left) | go(g.right)
        if isinstance(g, Imp):
            return weak_impl(space, go(g.left), go(g.right))
        if isinstance(g, J):
            return apply_j(space, go(g.child))
        raise TypeError(f"not a J-language formula: {g!r}")

    return go(f)


def sequent_semantics(s: Sequent) -> Optional[str]:
    """"modal" or "j" when the formulas decide it, else None (pure prop)."""
    langs = {syntax.language_of(g) for g in (*s.ante, s.succ)}
    if "modal" in langs and "jlang" in langs:
        raise syntax.LanguageError("sequent mixes box and J formulas")
    if "modal" in langs:
        return "modal"
    if "jlang" in langs:
        return "j"
    return None


def holds_sequent(
    space: ModalSpace,
    valuation: Mapping[str, int],
    s: Sequent,
    semantics: Optional[str] = None,
) -> Verdict:
    """Meet of the antecedent values below the succedent value.

    Pure propositional sequents default to the weak reading; pass
    ``semantics="modal"`` for the classical one.
    """
    inferred = sequent_semantics(s)
    if semantics is None:
        semantics = inferred or "j"
    elif inferred is not None and semantics != inferred:
        raise syntax.LanguageError(
            f"sequent language requires {inferred!r} semantics, got {semantics!r}"
        )
    evaluate = eval_modal if semantics == "modal" else eval_j
    meet = space.topology.full
    for g in s.ante:
        meet &= evaluate(space, valuation, g)
    value = evaluate(space, valuation, s.succ)
    diff = meet & ~value
    if diff == 0:
        return Verdict(True)
    return Verdict(False, witness=worlds_of(diff)[0])


def kripke_force(m: KripkeModel, w: int, f: Formula) -> bool:
    """Pointwise forcing; the flavor fixes the implication clause."""
    if not 0 <= w < m.worlds:
        raise ValueError(f"world {w} outside the frame")
    if m.flavor == "modal":
        if not syntax.in_language(f, "modal"):
            raise FlavorError("modal flavor forces box-language formulas only")
    else:
        if syntax.language_of(f) != "prop":
            raise FlavorError(
                "sub-intuitionistic flavors force propositional formulas only"
            )
    succ = m.succ

    def go(w: int, g: Formula) -> bool:
        if isinstance(g, Atom):
            try:
                return bool(m.atoms[g.name] >> w & 1)
            except KeyError:
                raise MissingAtomError(f"no value for atom {g.name!r}") from None
        if isinstance(g, Top):
            return True
        if isinstance(g, Bot):
            return False
        if isinstance(g, And):
            return go(w, g.left) and go(w, g.right)
        if isinstance(g, Or):
            return go(w, g.left) or go(w, g.right)
        if isinstance(g, Imp):
            if m.flavor == "modal":
                return (not go(w, g.left)) or go(w, g.right)
            return all(
                go(u, g.right) for u in worlds_of(succ[w]) if go(u, g.left)
            )
        if isinstance(g, Neg):
            return not go(w, g.child)
        if isinstance(g, Box):
            return all(go(u, g.child) for u in worlds_of(succ[w]))
        raise TypeError(f"cannot force {g!r}")

    return go(w, f)


def induced_space(m: KripkeModel) -> ModalSpace:
    if m.flavor == "subint-persistent":
        return space_from_transitive_frame(m.worlds, m.rel)
    return space_from_frame(m.worlds, m.rel)


def agreement_check(m: KripkeModel, f: Formula) -> Verdict:
    """Pointwise match between forcing and the induced-space value."""
    space = induced_space(m)
    valuation = dict(m.atoms)
    if m.flavor == "modal":
        value = eval_modal(space, valuation, f)
    else:
        value = eval_j(space, valuation, f)
    for w in range(m.worlds):
        forced = kripke_force(m, w, f)
        if forced != bool(value >> w & 1):
            return Verdict(False, witness=w)
    return Verdict(True)


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    space: ModalSpace
    valuation: dict[str, int] = field(compare=False)
    witness: int = 0


def _relation_satisfies(n: int, succ: list[int], conditions: tuple[str, ...]) -> bool:
    for cond in conditions:
        if cond == "serial" and any(succ[w] == 0 for w in range(n)):
            return False
        if cond == "reflexive" and any(not succ[w] >> w & 1 for w in range(n)):
            return False
        if cond == "transitive":
            for y in range(n):
                reach = 0
                for x in worlds_of(succ[y]):
                    reach |= succ[x]
                if reach & ~succ[y]:
                    return False
    return True


def countermodel(
    s: Sequent, logic: str, max_worlds: int = 4
) -> Optional[Countermodel]:
    """First enumerated refuting model, or None if none within the bound.

    Absence is not a validity proof; callers should report "valid up to
    bound".  Search order: world count, relation bitmask, valuation.
    """
    if logic not in FRAME_CONDITIONS:
        raise ValueError(f"unknown logic {logic!r}")
    if max_worlds > COUNTERMODEL_HARD_CAP:
        raise BoundExceededError(
            f"bound {max_worlds} exceeds hard cap {COUNTERMODEL_HARD_CAP}"
        )
    conditions = FRAME_CONDITIONS[logic]
    persistent = "persistent" in conditions
    frame_conditions = tuple(c for c in conditions if c != "persistent")
    if logic in MODAL_LOGICS:
        required_lang, semantics, flavor = "modal", "modal", "modal"
    elif logic in JLOGIC_LOGICS:
        required_lang, semantics = "jlang", "j"
        flavor = "subint-persistent" if persistent else "subint-plain"
    else:
        required_lang, semantics = "prop", "j"
        flavor = "subint-persistent" if persistent else "subint-plain"
    for g in (*s.ante, s.succ):
        if not syntax.in_language(g, required_lang):
            raise syntax.LanguageError(
                f"logic {logic} works over the {required_lang} language"
            )

    names = sorted(set().union(*(syntax.atoms(g) for g in (*s.ante, s.succ))) or set())
    for n in range(1, max_worlds + 1):
        full_n = (1 << n) - 1
        for code in range(1 << (n * n)):
            succ = [(code >> (y * n)) & full_n for y in range(n)]
            if not _relation_satisfies(n, succ, frame_conditions):
                continue
            rel = relation_from_code(n, code)
            if persistent:
                space = space_from_transitive_frame(n, rel)
                candidates = space.topology.opens
            else:
                space = space_from_frame(n, rel)
                candidates = space.topology.opens  # the full powerset
            for combo in _valuation_product(names, candidates):
                valuation = dict(zip(names, combo))
                verdict = holds_sequent(space, valuation, s, semantics)
                if verdict.holds:
                    continue
                model = KripkeModel(n, rel, valuation, flavor)
                _double_check(model, space, valuation, s, semantics, verdict.witness)
                return Countermodel(model, space, valuation, verdict.witness)
    return None


def _valuation_product(names: list[str], candidates: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    yield from itertools.product(candidates, repeat=len(names))


def _double_check(model, space, valuation, s, semantics, witness):
    again = holds_sequent(space, valuation, s, semantics)
    if again.holds:
        raise AssertionError("countermodel failed its own re-evaluation")
    # the pointwise checker must agree whenever it can read the sequent
    can_force = all(
        (model.flavor == "modal" and syntax.in_language(g, "modal"))
        or (model.flavor != "modal" and syntax.language_of(g) == "prop")
        for g in (*s.ante, s.succ)
    )
    if can_force:
        ok = all(kripke_force(model, witness, g) for g in s.ante) and not kripke_force(
            model, witness, s.succ
        )
        if not ok:
            raise AssertionError("countermodel witness rejected by the pointwise checker")


# --- JSON ----------------------------------------------------------------


def model_to_json(m: KripkeModel) -> dict:
    return {
        "worlds": m.worlds,
        "R": sorted([y, x] for y, x in m.rel),
        "flavor": m.flavor,
        "atoms": {name: worlds_of(mask) for name, mask in sorted(m.atoms.items())},
    }


def model_from_json(doc: dict) -> KripkeModel:
    return KripkeModel(
        worlds=int(doc["worlds"]),
        rel=frozenset((int(y), int(x)) for y, x in doc.get("R", [])),
        atoms={name: mask_of(ws) for name, ws in doc.get("atoms", {}).items()},
        flavor=doc.get("flavor", "modal"),
    )
