"""HTTP facade over the workbench; the CLI calls these handlers directly.

Every endpoint is a pure function of its request body.  HTTP 422 marks
malformed or ill-typed input; negative verdicts (a refuted sequent, a
rejected proof, a failed law) are ordinary 200 responses with the
outcome in the body.
"""
from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import embedding, lambda_calculus as lam, proofs, semantics, spaces, syntax

app = FastAPI(
    title="modalkit",
    description="finite modal spaces, weak implication, proof systems, modal lambda calculus",
)


class ParseRequest(BaseModel):
    text: str
    lang: str = "prop"


class ParseResponse(BaseModel):
    ast: dict
    rendered: str


class EvalRequest(BaseModel):
    space: dict
    valuation: dict[str, list[int]]
    formula: Optional[str] = None
    sequent: Optional[str] = None
    lang: str = "jlang"
    semantics: Optional[str] = None


class EvalResponse(BaseModel):
    value: Optional[list[int]] = None
    holds: Optional[bool] = None
    witness: Optional[int] = None


class CheckRequest(BaseModel):
    proof: dict


class CheckResponse(BaseModel):
    ok: bool
    errors: list[str] = Field(default_factory=list)


class CountermodelRequest(BaseModel):
    sequent: str
    logic: str
    max_worlds: int = 4


class CountermodelResponse(BaseModel):
    found: bool
    model: Optional[dict] = None
    witness: Optional[int] = None
    valid_up_to_bound: Optional[int] = None


class TranslateRequest(BaseModel):
    proof: dict


class TranslateResponse(BaseModel):
    proof: dict


class SpaceRequest(BaseModel):
    space: dict


class ClassifyResponse(BaseModel):
    violations: list[str]
    flags: Optional[dict[str, bool]] = None


class LawsResponse(BaseModel):
    strong: bool
    unit_law: bool
    composition_law: bool
    antitone_monotone: bool
    weakly_closed: bool
    j_top_is_top: bool
    curry: bool
    temporal: bool
    violations: list[str]


class TypecheckRequest(BaseModel):
    term: dict
    context: list[tuple[str, dict]] = Field(default_factory=list)
    flavor: str = "mJ"


class TypecheckResponse(BaseModel):
    type: dict
    rendered: str


class NormalizeRequest(BaseModel):
    term: dict
    fuel: Optional[int] = None


class NormalizeResponse(BaseModel):
    term: dict
    rendered: str


class EqualRequest(BaseModel):
    term: dict
    other: dict
    context: list[tuple[str, dict]] = Field(default_factory=list)
    flavor: str = "I"
    fuel: Optional[int] = None


class EqualResponse(BaseModel):
    result: str


class EnumerateRequest(BaseModel):
    max_worlds: int = 2
    kind: str = "boolean-powerset"
    class_filter: list[str] = Field(default_factory=list)


class EnumerateResponse(BaseModel):
    count: int
    spaces: list[dict]


def _bad(exc: Exception) -> HTTPException:
    return HTTPException(status_code=422, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/parse", response_model=ParseResponse)
def parse_formula(req: ParseRequest) -> ParseResponse:
    try:
        f = syntax.parse(req.text, req.lang)
    except ValueError as exc:
        raise _bad(exc)
    return ParseResponse(ast=syntax.formula_to_json(f), rendered=syntax.render(f))


def _load_space(doc: dict) -> spaces.ModalSpace:
    space = spaces.space_from_json(doc)
    violations = spaces.validate(space)
    if violations:
        raise ValueError("invalid space: " + "; ".join(violations))
    return space


@app.post("/eval", response_model=EvalResponse)
def eval_formula(req: EvalRequest) -> EvalResponse:
    try:
        space = _load_space(req.space)
        valuation = {name: spaces.mask_of(ws) for name, ws in req.valuation.items()}
        if (req.formula is None) == (req.sequent is None):
            raise ValueError("provide exactly one of 'formula' or 'sequent'")
        if req.formula is not None:
            f = syntax.parse(req.formula, req.lang)
            if req.semantics == "modal" or (
                req.semantics is None and syntax.language_of(f) == "modal"
            ):
                value = semantics.eval_modal(space, valuation, f)
            else:
                value = semantics.eval_j(space, valuation, f)
            return EvalResponse(value=spaces.worlds_of(value))
        s = syntax.parse_sequent(req.sequent, req.lang)
        verdict = semantics.holds_sequent(space, valuation, s, req.semantics)
        return EvalResponse(holds=verdict.holds, witness=verdict.witness)
    except ValueError as exc:
        raise _bad(exc)


@app.post("/check", response_model=CheckResponse)
def check_proof(req: CheckRequest) -> CheckResponse:
    try:
        proof, system = proofs.proof_from_json(req.proof)
        verdict = proofs.check_proof(proof, system)
    except ValueError as exc:
        raise _bad(exc)
    return CheckResponse(ok=verdict.holds, errors=list(verdict.witness or ()))


@app.post("/countermodel", response_model=CountermodelResponse)
def find_countermodel(req: CountermodelRequest) -> CountermodelResponse:
    try:
        if req.logic in semantics.MODAL_LOGICS:
            lang = "modal"
        elif req.logic in semantics.JLOGIC_LOGICS:
            lang = "jlang"
        elif req.logic in semantics.SUBINT_LOGICS:
            lang = "prop"
        else:
            raise ValueError(f"unknown logic {req.logic!r}")
        s = syntax.parse_sequent(req.sequent, lang)
        result = semantics.countermodel(s, req.logic, req.max_worlds)
    except ValueError as exc:
        raise _bad(exc)
    if result is None:
        return CountermodelResponse(found=False, valid_up_to_bound=req.max_worlds)
    return CountermodelResponse(
        found=True,
        model=semantics.model_to_json(result.model),
        witness=result.witness,
    )


@app.post("/translate", response_model=TranslateResponse)
def translate_proof(req: TranslateRequest) -> TranslateResponse:
    try:
        proof, system = proofs.proof_from_json(req.proof)
        if not isinstance(proof, proofs.Derivation):
            raise ValueError("only natural-deduction proofs translate")
        out = embedding.embed_proof(proof, system)
    except ValueError as exc:
        raise _bad(exc)
    target = proofs.EMBED_TARGET[system]
    return TranslateResponse(proof=proofs.proof_to_json(out, target))


@app.post("/classify", response_model=ClassifyResponse)
def classify_space(req: SpaceRequest) -> ClassifyResponse:
    try:
        space = spaces.space_from_json(req.space)
    except ValueError as exc:
        raise _bad(exc)
    violations = spaces.validate(space)
    if violations:
        return ClassifyResponse(violations=violations)
    cls = spaces.classify(space)
    flags = {name: getattr(cls, name) for name in spaces.CLASS_FLAGS}
    return ClassifyResponse(violations=[], flags=flags)


@app.post("/laws", response_model=LawsResponse)
def category_laws(req: SpaceRequest) -> LawsResponse:
    try:
        space = _load_space(req.space)
        report = spaces.check_category_laws(space)
    except ValueError as exc:
        raise _bad(exc)
    return LawsResponse(
        strong=report.strong,
        unit_law=report.unit_law,
        composition_law=report.composition_law,
        antitone_monotone=report.antitone_monotone,
        weakly_closed=report.weakly_closed,
        j_top_is_top=report.j_top_is_top,
        curry=report.curry,
        temporal=report.temporal,
        violations=list(report.violations),
    )


def _load_context(doc: list[tuple[str, dict]]) -> lam.Context:
    return tuple((name, lam.ty_from_json(ty)) for name, ty in doc)


@app.post("/typecheck", response_model=TypecheckResponse)
def typecheck_term(req: TypecheckRequest) -> TypecheckResponse:
    try:
        term = lam.term_from_json(req.term)
        ctx = _load_context(req.context)
        flavor = lam.SystemFlavor.named(req.flavor)
        ty = lam.typecheck(ctx, term, flavor)
    except ValueError as exc:
        raise _bad(exc)
    return TypecheckResponse(type=lam.ty_to_json(ty), rendered=lam.render_ty(ty))


@app.post("/normalize", response_model=NormalizeResponse)
def normalize_term(req: NormalizeRequest) -> NormalizeResponse:
    try:
        term = lam.term_from_json(req.term)
        out = lam.reduce(term, req.fuel or default_fuel())
    except ValueError as exc:
        raise _bad(exc)
    return NormalizeResponse(term=lam.term_to_json(out), rendered=lam.render_term(out))


@app.post("/equal", response_model=EqualResponse)
def equal_terms(req: EqualRequest) -> EqualResponse:
    try:
        t = lam.term_from_json(req.term)
        s = lam.term_from_json(req.other)
        ctx = _load_context(req.context)
        flavor = lam.SystemFlavor.named(req.flavor)
        out = lam.equal(t, s, ctx, flavor, req.fuel or default_fuel())
    except ValueError as exc:
        raise _bad(exc)
    return EqualResponse(result=out.value)


@app.post("/enumerate", response_model=EnumerateResponse)
def enumerate_spaces(req: EnumerateRequest) -> EnumerateResponse:
    try:
        docs = [
            spaces.space_to_json(spaces.tabulate(space))
            for space in spaces.enumerate_spaces(
                req.max_worlds, req.class_filter or None, req.kind
            )
        ]
    except ValueError as exc:
        raise _bad(exc)
    return EnumerateResponse(count=len(docs), spaces=docs)


def default_fuel() -> int:
    import os

    raw = os.environ.get("MODALKIT_FUEL")
    if raw is None:
        return lam.DEFAULT_FUEL
    try:
        return int(raw)
    except ValueError:
        raise HTTPException(status_code=422, detail="MODALKIT_FUEL must be an integer")
