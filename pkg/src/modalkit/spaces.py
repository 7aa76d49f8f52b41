"""Finite modal spaces.

A space is a finite topology (opens as bitmasks over worlds ``0..n-1``)
carrying a monotone, join-preserving operator on opens.  The operator is
given either by a relation on worlds (its induced existential image) or
by an explicit table indexed by the canonical opens list.  All opens are
int bitmasks; the canonical order of a topology's opens is ascending
bitmask, which for a powerset is binary-counting order.

Carrier sizes are capped at 16 worlds.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence, Union

MAX_WORLDS = 16
DEFAULT_ENUM_BOUND = 4

CLASS_FLAGS = ("boolean", "semi_cotemporal", "semi_temporal", "temporal", "cotemporal")


class NotOpenError(ValueError):
    pass


class InvalidSpaceError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("invalid space: " + "; ".join(violations))
        self.violations = violations


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(worlds: Iterable[int]) -> int:
    m = 0
    for w in worlds:
        m |= 1 << w
    return m


def worlds_of(mask: int) -> list[int]:
    return [w for w in range(mask.bit_length()) if mask >> w & 1]


def successor_masks(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """succ[y] = bitmask of x with (y, x) in the relation."""
    succ = [0] * n
    for y, x in pairs:
        succ[y] |= 1 << x
    return succ


@dataclass(frozen=True)
class Topology:
    worlds: int
    opens: tuple[int, ...]

    @staticmethod
    def from_opens(worlds: int, opens: Iterable[int]) -> "Topology":
        if worlds > MAX_WORLDS:
            raise ValueError(f"carrier size {worlds} exceeds cap {MAX_WORLDS}")
        return Topology(worlds, tuple(sorted(set(opens))))

    @cached_property
    def _index(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.opens)}

    @property
    def full(self) -> int:
        return full_mask(self.worlds)

    def contains(self, a: int) -> bool:
        return a in self._index

    def index_of(self, a: int) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise NotOpenError(f"{worlds_of(a)} is not an open of this topology") from None

    @cached_property
    def complement_table(self) -> dict[int, int]:
        """open -> its complement open, for the opens that have one."""
        out = {}
        for a in self.opens:
            for b in self.opens:
                if a & b == 0 and a | b == self.full:
                    out[a] = b
                    break
        return out


@lru_cache(maxsize=None)
def powerset_topology(n: int) -> Topology:
    # one shared instance per size so per-topology caches pay off
    if n > MAX_WORLDS:
        raise ValueError(f"carrier size {n} exceeds cap {MAX_WORLDS}")
    return Topology(n, tuple(range(1 << n)))


def upset_topology(n: int, pairs: Iterable[tuple[int, int]]) -> Topology:
    """All subsets closed upward under the relation."""
    return _upset_topology_cached(n, tuple(successor_masks(n, pairs)))


@lru_cache(maxsize=4096)
def _upset_topology_cached(n: int, succ: tuple[int, ...]) -> Topology:
    opens = [
        m
        for m in range(1 << n)
        if all(succ[y] & ~m == 0 for y in worlds_of(m))
    ]
    return Topology(n, tuple(opens))


@dataclass(frozen=True)
class RelationJ:
    pairs: frozenset[tuple[int, int]]

    @staticmethod
    def of(pairs: Iterable[tuple[int, int]]) -> "RelationJ":
        return RelationJ(frozenset((int(y), int(x)) for y, x in pairs))


@dataclass(frozen=True)
class TableJ:
    """images[i] is the image bitmask of the i-th canonical open."""

    images: tuple[int, ...]


JOperator = Union[RelationJ, TableJ]


@dataclass(frozen=True)
class ModalSpace:
    topology: Topology
    j: JOperator

    @cached_property
    def j_images(self) -> tuple[int, ...]:
        """Image bitmask per canonical open (relation form tabulated)."""
        if isinstance(self.j, TableJ):
            return self.j.images
        succ = successor_masks(self.topology.worlds, self.j.pairs)
        out = []
        for a in self.topology.opens:
            m = 0
            for y in worlds_of(a):
                m |= succ[y]
            out.append(m)
        return tuple(out)


def tabulate(space: ModalSpace) -> ModalSpace:
    """The same space with its operator in table form."""
    if isinstance(space.j, TableJ):
        return space
    return ModalSpace(space.topology, TableJ(space.j_images))


def apply_j(space: ModalSpace, a: int) -> int:
    top = space.topology
    if not top.contains(a):
        raise NotOpenError(f"{worlds_of(a)} is not an open of the space")
    return space.j_images[top.index_of(a)]


def validate(space: ModalSpace) -> list[str]:
    """Empty list iff the topology and operator invariants all hold."""
    out: list[str] = []
    top = space.topology
    full = top.full
    opens = top.opens
    if len(set(opens)) != len(opens) or tuple(sorted(opens)) != opens:
        out.append("opens list is not canonically sorted and duplicate-free")
    for a in opens:
        if a & ~full:
            out.append(f"open {worlds_of(a)} mentions worlds outside the carrier")
    if 0 not in opens:
        out.append("empty set is not an open")
    if full not in opens:
        out.append("carrier is not an open")
    closed = set(opens)
    for a, b in itertools.combinations(opens, 2):
        if a | b not in closed:
            out.append(f"not closed under union: {worlds_of(a)} | {worlds_of(b)}")
        if a & b not in closed:
            out.append(f"not closed under intersection: {worlds_of(a)} & {worlds_of(b)}")
    if out:
        return out

    if isinstance(space.j, RelationJ):
        for y, x in space.j.pairs:
            if y >= top.worlds or x >= top.worlds or y < 0 or x < 0:
                out.append(f"relation pair ({y}, {x}) outside the carrier")
        if out:
            return out
    if isinstance(space.j, TableJ) and len(space.j.images) != len(opens):
        out.append(
            f"table has {len(space.j.images)} entries for {len(opens)} opens"
        )
        return out

    images = space.j_images
    for a, ja in zip(opens, images):
        if ja not in closed:
            out.append(f"image of {worlds_of(a)} is {worlds_of(ja)}, not an open")
    if out:
        return out
    if images[top.index_of(0)] != 0:
        out.append(f"empty join not preserved: J(0) = {worlds_of(images[top.index_of(0)])}")
    for a in opens:
        ja = images[top.index_of(a)]
        for b in opens:
            jb = images[top.index_of(b)]
            if a & b == a and ja & jb != ja:
                out.append(
                    f"monotonicity violation: {worlds_of(a)} <= {worlds_of(b)} "
                    f"but J images {worlds_of(ja)} !<= {worlds_of(jb)}"
                )
            u = a | b
            if u in closed and images[top.index_of(u)] != ja | jb:
                out.append(
                    f"join not preserved on {worlds_of(a)} | {worlds_of(b)}"
                )
    return out


def check_valid(space: ModalSpace) -> None:
    violations = validate(space)
    if violations:
        raise InvalidSpaceError(violations)


def weak_impl(space: ModalSpace, a: int, b: int) -> int:
    """Union of all opens d with J(d) & a <= b; the greatest such witness."""
    top = space.topology
    if not top.contains(a):
        raise NotOpenError(f"{worlds_of(a)} is not an open of the space")
    if not top.contains(b):
        raise NotOpenError(f"{worlds_of(b)} is not an open of the space")
    out = 0
    for d, jd in zip(top.opens, space.j_images):
        if jd & a & ~b == 0:
            out |= d
    return out


def box(space: ModalSpace, a: int) -> int:
    return weak_impl(space, space.topology.full, a)


@dataclass(frozen=True)
class SpaceClass:
    boolean: bool
    semi_cotemporal: bool
    semi_temporal: bool
    temporal: bool
    cotemporal: bool

    def flags(self) -> frozenset[str]:
        return frozenset(name for name in CLASS_FLAGS if getattr(self, name))

    def has_all(self, names: Iterable[str]) -> bool:
        return all(getattr(self, name) for name in names)


def is_boolean(topology: Topology) -> bool:
    return len(topology.complement_table) == len(topology.opens)


def classify(space: ModalSpace) -> SpaceClass:
    check_valid(space)
    top = space.topology
    images = space.j_images
    jof = {a: ja for a, ja in zip(top.opens, images)}
    boolean = is_boolean(top)
    semi_cotemporal = all(a == 0 for a, ja in jof.items() if ja == 0)
    semi_temporal = all(jof[ja] & ~ja == 0 for ja in images)
    temporal = all(ja & ~a == 0 for a, ja in jof.items())
    cotemporal = all(a & ~ja == 0 for a, ja in jof.items())
    return SpaceClass(boolean, semi_cotemporal, semi_temporal, temporal, cotemporal)


def space_from_frame(n: int, pairs: Iterable[tuple[int, int]]) -> ModalSpace:
    """Powerset topology with the relation-induced operator."""
    return ModalSpace(powerset_topology(n), RelationJ.of(pairs))


def is_transitive(n: int, pairs: Iterable[tuple[int, int]]) -> bool:
    succ = successor_masks(n, pairs)
    for y in range(n):
        reach = succ[y]
        for x in worlds_of(succ[y]):
            reach |= succ[x]
        if reach & ~succ[y]:
            return False
    return True


def space_from_transitive_frame(n: int, pairs: Iterable[tuple[int, int]]) -> ModalSpace:
    """Up-set topology of a transitive relation, with the induced operator."""
    pairs = list(pairs)
    if not is_transitive(n, pairs):
        raise ValueError("relation is not transitive")
    return ModalSpace(upset_topology(n, pairs), RelationJ.of(pairs))


def pullback_j(f: Sequence[int], space_y: ModalSpace, topology_x: Topology) -> ModalSpace:
    """Transport the operator along a continuous surjection of carriers.

    ``f`` maps worlds of X onto worlds of Y.  The returned space on X
    interprets each open ``u`` as ``preimage(J(f_!(u)))`` where ``f_!``
    sends ``u`` to the least open of Y containing its image.
    """
    ny = space_y.topology.worlds
    nx = topology_x.worlds
    if len(f) != nx:
        raise ValueError(f"map has {len(f)} entries for {nx} worlds")
    if set(f) != set(range(ny)):
        raise ValueError("map is not surjective onto the target carrier")

    def preimage(b: int) -> int:
        return mask_of(x for x in range(nx) if b >> f[x] & 1)

    for b in space_y.topology.opens:
        if not topology_x.contains(preimage(b)):
            raise ValueError(
                f"map is not continuous: preimage of {worlds_of(b)} is not open"
            )

    def shriek(u: int) -> int:
        image = mask_of(f[x] for x in worlds_of(u))
        out = space_y.topology.full
        for w in space_y.topology.opens:
            if image & ~w == 0:
                out &= w
        return out

    images = tuple(
        preimage(apply_j(space_y, shriek(u))) for u in topology_x.opens
    )
    return ModalSpace(topology_x, TableJ(images))


@dataclass(frozen=True)
class CategoryLawReport:
    unit_law: bool
    composition_law: bool
    antitone_monotone: bool
    weakly_closed: bool
    j_top_is_top: bool
    curry: bool
    temporal: bool
    violations: tuple[str, ...]

    @property
    def strong(self) -> bool:
        return self.unit_law and self.composition_law and self.antitone_monotone


def check_category_laws(space: ModalSpace) -> CategoryLawReport:
    """Strong-category inequalities plus the weakly-closed and Curry tests.

    ``weakly_closed`` is the hom-style condition (a <= b iff 1 <= a -> b);
    ``j_top_is_top`` and ``temporal`` are its and the Curry flag's
    space-side characterizations, reported separately for cross-checking.
    """
    check_valid(space)
    top = space.topology
    opens = top.opens
    full = top.full
    wi = {
        (a, b): weak_impl(space, a, b) for a in opens for b in opens
    }
    violations = []
    unit = True
    for a in opens:
        if wi[(a, a)] != full:
            unit = False
            violations.append(f"1 <= (a -> a) fails for a = {worlds_of(a)}")
    comp = True
    for a in opens:
        for b in opens:
            ab = wi[(a, b)]
            for c in opens:
                lhs = ab & wi[(b, c)]
                if lhs & ~wi[(a, c)]:
                    comp = False
                    violations.append(
                        "composition fails for "
                        f"a={worlds_of(a)}, b={worlds_of(b)}, c={worlds_of(c)}"
                    )
    variance = True
    for a in opens:
        for a2 in opens:
            if a & a2 != a:
                continue
            for b in opens:
                if wi[(a2, b)] & ~wi[(a, b)]:
                    variance = False
                    violations.append(
                        f"antitone in first argument fails at a={worlds_of(a)}, "
                        f"a'={worlds_of(a2)}, b={worlds_of(b)}"
                    )
                if wi[(b, a)] & ~wi[(b, a2)]:
                    variance = False
                    violations.append(
                        f"monotone in second argument fails at b={worlds_of(b)}, "
                        f"a={worlds_of(a)}, a'={worlds_of(a2)}"
                    )
    weakly_closed = all(
        (a & ~b == 0) == (wi[(a, b)] == full) for a in opens for b in opens
    )
    j_top = apply_j(space, full) == full
    curry = all(a & ~wi[(full, a)] == 0 for a in opens)
    temporal = classify(space).temporal
    return CategoryLawReport(
        unit_law=unit,
        composition_law=comp,
        antitone_monotone=variance,
        weakly_closed=weakly_closed,
        j_top_is_top=j_top,
        curry=curry,
        temporal=temporal,
        violations=tuple(violations),
    )


def iter_relations(n: int) -> Iterator[frozenset[tuple[int, int]]]:
    """All relations on n worlds in ascending bitmask order (bit y*n+x <-> (y, x))."""
    for code in range(1 << (n * n)):
        yield relation_from_code(n, code)


def relation_from_code(n: int, code: int) -> frozenset[tuple[int, int]]:
    return frozenset(
        (y, x) for y in range(n) for x in range(n) if code >> (y * n + x) & 1
    )


def enumerate_spaces(
    max_worlds: int,
    class_filter: Iterable[str] | None = None,
    kind: str = "boolean-powerset",
    bound: int = DEFAULT_ENUM_BOUND,
) -> Iterator[ModalSpace]:
    """Spaces on exactly ``max_worlds`` worlds, in deterministic order.

    ``boolean-powerset`` runs over every relation on the carrier;
    ``upset-poset`` over every transitive relation, with the up-set
    topology.  The filter keeps spaces whose classification has all the
    named flags.  Relation order is ascending bitmask.
    """
    if max_worlds > bound:
        raise ValueError(f"max_worlds {max_worlds} exceeds bound {bound}")
    if max_worlds < 1:
        raise ValueError("need at least one world")
    if kind not in ("boolean-powerset", "upset-poset"):
        raise ValueError(f"unknown kind {kind!r}")
    wanted = tuple(class_filter) if class_filter else ()
    for name in wanted:
        if name not in CLASS_FLAGS:
            raise ValueError(f"unknown class flag {name!r}")
    n = max_worlds
    for rel in iter_relations(n):
        if kind == "boolean-powerset":
            space = space_from_frame(n, rel)
        else:
            if not is_transitive(n, rel):
                continue
            space = space_from_transitive_frame(n, rel)
        if wanted and not classify(space).has_all(wanted):
            continue
        yield space


def spaces_up_to(
    max_worlds: int,
    class_filter: Iterable[str] | None = None,
    kinds: Iterable[str] = ("boolean-powerset", "upset-poset"),
    bound: int = DEFAULT_ENUM_BOUND,
) -> Iterator[ModalSpace]:
    """Chain enumerate_spaces over sizes 1..max_worlds for each kind."""
    for kind in kinds:
        for n in range(1, max_worlds + 1):
            yield from enumerate_spaces(n, class_filter, kind, bound=bound)


# --- JSON --------------------------------------------------------------------


def space_to_json(space: ModalSpace) -> dict:
    top = space.topology
    doc: dict = {"worlds": top.worlds}
    if top.opens == tuple(range(1 << top.worlds)):
        doc["opens"] = "powerset"
    else:
        doc["opens"] = [worlds_of(a) for a in top.opens]
    if isinstance(space.j, RelationJ):
        doc["J"] = {"relation": sorted([y, x] for y, x in space.j.pairs)}
    else:
        doc["J"] = {
            "table": {
                str(i): top.index_of(img)
                for i, img in enumerate(space.j.images)
            }
        }
    return doc


def space_from_json(doc: dict) -> ModalSpace:
    n = int(doc["worlds"])
    opens_doc = doc["opens"]
    if opens_doc == "powerset":
        top = powerset_topology(n)
    else:
        top = Topology.from_opens(n, (mask_of(ws) for ws in opens_doc))
    jdoc = doc["J"]
    if "relation" in jdoc:
        return ModalSpace(top, RelationJ.of((y, x) for y, x in jdoc["relation"]))
    if "table" in jdoc:
        table = jdoc["table"]
        images = []
        for i in range(len(top.opens)):
            key = str(i) if str(i) in table else i
            if key not in table:
                raise ValueError(f"table is missing an entry for open index {i}")
            images.append(top.opens[int(table[key])])
        return ModalSpace(top, TableJ(tuple(images)))
    raise ValueError("J must carry either a 'relation' or a 'table'")
