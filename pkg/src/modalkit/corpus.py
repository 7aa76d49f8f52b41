"""Golden derivation corpus, rebuilt and rechecked on every run.

Each of the eighteen systems gets at least ten derivations: a shared
base list per family plus the system-specific rules, including the
derived macro trees used by the embedding compiler.
"""
from __future__ import annotations

from . import embedding
from . import proofs as p
from .proofs import Derivation, HilbertLine, HilbertProof
from .syntax import And, Atom, Bot, Imp, J, Or, Top, parse


def _hilbert(*lines: tuple[str, str]) -> HilbertProof:
    return HilbertProof(
        tuple(HilbertLine(parse(f, "modal"), just) for f, just in lines)
    )


def _modal_base() -> list[HilbertProof]:
    return [
        _hilbert(("p -> p", "Taut")),
        _hilbert(("p -> p", "Taut"), ("[] (p -> p)", "Nec 1")),
        _hilbert(("[] (p -> q) -> ([] p -> [] q)", "AxK")),
        _hilbert(("[] p -> [] p", "Taut")),
        _hilbert(
            ("p /\\ q -> p", "Taut"),
            ("[] (p /\\ q -> p)", "Nec 1"),
            ("[] (p /\\ q -> p) -> ([] (p /\\ q) -> [] p)", "AxK"),
            ("[] (p /\\ q) -> [] p", "MP 2 3"),
        ),
        _hilbert(
            ("p /\\ q -> q", "Taut"),
            ("[] (p /\\ q -> q)", "Nec 1"),
            ("[] (p /\\ q -> q) -> ([] (p /\\ q) -> [] q)", "AxK"),
            ("[] (p /\\ q) -> [] q", "MP 2 3"),
        ),
        _hilbert(("p -> (q -> p)", "Taut"), ("[] (p -> (q -> p))", "Nec 1")),
        _hilbert(
            ("[] (p -> q) -> ([] p -> [] q)", "AxK"),
            (
                "([] (p -> q) -> ([] p -> [] q)) -> ([] p /\\ [] (p -> q) -> [] q)",
                "Taut",
            ),
            ("[] p /\\ [] (p -> q) -> [] q", "MP 1 2"),
        ),
        _hilbert(
            ("(p -> q) -> ((q -> r) -> (p -> r))", "Taut"),
            ("[] ((p -> q) -> ((q -> r) -> (p -> r)))", "Nec 1"),
        ),
        _hilbert(("~[] F \\/ [] F", "Taut")),
        _hilbert(("~~[] p -> [] p", "Taut")),
    ]


def _modal_d() -> list[HilbertProof]:
    return [
        _hilbert(("~[] F", "AxD")),
        _hilbert(
            ("~[] F", "AxD"),
            ("~[] F -> ([] F -> F)", "Taut"),
            ("[] F -> F", "MP 1 2"),
        ),
    ]


def _modal_t() -> list[HilbertProof]:
    return [
        _hilbert(("[] p -> p", "AxT")),
        _hilbert(("[] (p /\\ q) -> p /\\ q", "AxT")),
        _hilbert(
            ("[] p -> p", "AxT"),
            ("([] p -> p) -> ([] p -> (q -> p))", "Taut"),
            ("[] p -> (q -> p)", "MP 1 2"),
        ),
    ]


def _modal_4() -> list[HilbertProof]:
    return [
        _hilbert(("[] p -> [] [] p", "Ax4")),
        _hilbert(("[] (p \\/ q) -> [] [] (p \\/ q)", "Ax4")),
    ]


def hilbert_corpus() -> dict[str, list[HilbertProof]]:
    base = _modal_base()
    return {
        "K": base,
        "D": base + _modal_d(),
        "T": base + _modal_t(),
        "K4": base + _modal_4(),
        "KD4": base + _modal_d() + _modal_4(),
        "S4": base + _modal_t() + _modal_4(),
    }


_P, _Q, _R = Atom("p"), Atom("q"), Atom("r")


def _jlogic_base() -> list[Derivation]:
    derived = embedding.derived_rule_trees()
    and_comm = p.contract(
        p.and_intro(
            p.and_elim(p.identity(And(_P, _Q)), 1),
            p.and_elim(p.identity(And(_P, _Q)), 0),
        ),
        0,
    )
    return [
        p.identity(_P),
        p.top_leaf(()),
        p.top_leaf((_P, _Q)),
        and_comm,
        p.or_intro(p.identity(_P), _Q, 0),
        p.bot_elim(p.identity(Bot()), _P),
        derived["arrow-intro-padded"][0],  # |- p -> p via the T-padded context
        p.arrow_elim_j(p.identity(_P), p.identity(J(Imp(_P, _Q)))),
        p.f_rule(p.identity(_P)),
        derived["j-split"][0],  # J(p /\ q) |- J p /\ J q
        derived["and-intro-f"][0],
        derived["or-elim-f"][0],
        derived["tr-f"][0],
        p.or_elim_j(
            p.or_intro(p.identity(_P), _Q, 1),
            p.or_intro(p.identity(_Q), _P, 0),
        ),
        p.weaken(p.identity(_P), _Q),
        p.exchange(p.weaken(p.identity(_P), _Q), (1, 0)),
        p.cut(p.identity(_P), p.or_intro(p.identity(_P), _Q, 0)),
    ]


def _scoj_extra() -> list[Derivation]:
    derived = embedding.derived_rule_trees()
    e_tree = derived["e"][0]  # T -> F |- F through SCoJ
    tf = Imp(Top(), Bot())
    base = p.arrow_elim_j(p.top_leaf(()), p.identity(J(tf)))  # (J(T -> F),) |- F
    first = p.f_rule(p.and_elim(p.identity(And(tf, _Q)), 0))
    chained = p.scoj_rule(p.cut(first, base))  # ((T -> F) /\ q,) |- F
    return [e_tree, chained]


def _coj_extra() -> list[Derivation]:
    derived = embedding.derived_rule_trees()
    return [
        derived["t"][0],  # p /\ (p -> q) |- q through CoJ
        p.coj_rule(p.identity(_P)),
        p.coj_rule(p.and_elim(p.identity(And(_P, _Q)), 0)),
    ]


def _j_extra() -> list[Derivation]:
    derived = embedding.derived_rule_trees()
    return [
        derived["cur"][0],  # p |- T -> p through the J rule
        p.j_rule(p.identity(J(_P))),
        p.j_rule(p.f_rule(p.identity(_P))),
    ]


def jlogic_corpus() -> dict[str, list[Derivation]]:
    base = _jlogic_base()
    return {
        "mJ": base,
        "sCoJ": base + _scoj_extra(),
        "CoJ": base + _coj_extra(),
        "J": base + _j_extra(),
        "sI": base + _scoj_extra() + _j_extra(),
        "I": base + _coj_extra() + _j_extra(),
    }


def _subint_base() -> list[Derivation]:
    and_comm = p.contract(
        p.and_intro(
            p.and_elim(p.identity(And(_P, _Q)), 1),
            p.and_elim(p.identity(And(_P, _Q)), 0),
        ),
        0,
    )
    or_comm = p.or_elim_subint(
        p.identity(Or(_P, _Q)),
        p.or_intro(p.identity(_P), _Q, 1),
        p.or_intro(p.identity(_Q), _P, 0),
    )
    return [
        p.identity(_P),
        p.top_over(p.identity(_P)),
        and_comm,
        p.or_intro(p.identity(_P), _Q, 0),
        p.bot_elim(p.identity(Bot()), _Q),
        p.arrow_intro_subint(p.identity(_P)),  # |- p -> p
        p.arrow_intro_subint(p.and_elim(p.identity(And(_P, _Q)), 0)),  # |- p /\ q -> p
        p.and_intro_f(p.identity(Imp(_P, _Q)), p.identity(Imp(_P, _R))),
        p.or_elim_f(p.identity(Imp(_P, _R)), p.identity(Imp(_Q, _R))),
        p.tr_f(p.identity(Imp(_P, _Q)), p.identity(Imp(_Q, _R))),
        or_comm,
        p.weaken(p.identity(_P), _Q),
        p.exchange(p.weaken(p.identity(_P), _Q), (1, 0)),
        p.contract(p.and_intro(p.identity(_P), p.identity(_P)), 0),
        p.cut(p.identity(_P), p.or_intro(p.identity(_P), _Q, 0)),
    ]


def _remark_weak_k() -> Derivation:
    """C |- D -> C out of Cur and the formalized transitivity."""
    c_cur = p.cur_rule(p.identity(_P))  # p |- T -> p
    d_top = p.arrow_intro_subint(p.top_over(p.identity(_Q)))  # |- q -> T
    return p.tr_f(d_top, c_cur)  # p |- q -> p


def _e_extra() -> list[Derivation]:
    return [
        p.e_rule(p.identity(Imp(Top(), Bot()))),
        p.bot_elim(p.e_rule(p.identity(Imp(Top(), Bot()))), _P),
    ]


def _t_extra() -> list[Derivation]:
    return [
        p.t_rule(p.identity(And(_P, Imp(_P, _Q)))),
        p.t_rule(p.and_intro(p.identity(_P), p.identity(Imp(_P, _Q)))),
    ]


def _cur_extra() -> list[Derivation]:
    all_three = p.and_intro(p.identity(_P), p.and_intro(p.identity(_Q), p.identity(_R)))
    return [
        p.cur_rule(p.identity(_P)),
        _remark_weak_k(),
        p.arrow_intro_relaxed(p.and_intro(p.identity(_P), p.identity(_Q))),
        p.arrow_intro_relaxed(
            p.weaken(p.or_intro(p.identity(_Q), _P, 1), _P, at=0)
        ),
        # two retained context formulas exercise the conjoined discharge
        p.arrow_intro_relaxed(all_three),
    ]


def subint_corpus() -> dict[str, list[Derivation]]:
    base = _subint_base()
    return {
        "KPC": base,
        "EKPC": base + _e_extra(),
        "KTPC": base + _t_extra(),
        "BPC": base + _cur_extra(),
        "EBPC": base + _cur_extra() + _e_extra(),
        "IPC": base + _cur_extra() + _t_extra(),
    }


def full_corpus() -> dict[str, list]:
    out: dict[str, list] = {}
    out.update(hilbert_corpus())
    out.update(jlogic_corpus())
    out.update(subint_corpus())
    return out


def embedding_corpus() -> list[tuple[str, Derivation]]:
    """(source system, derivation) pairs spanning all systems and rules."""
    out = []
    for system, items in subint_corpus().items():
        for d in items:
            out.append((system, d))
    return out
