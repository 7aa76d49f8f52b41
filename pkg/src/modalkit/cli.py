"""Command-line client for the workbench.

Each subcommand builds the corresponding service request and calls the
handler in process, printing the response as JSON.  Exit codes: 0 for
success / holds / accepted, 1 for refuted / rejected (the witness or
reason is in the JSON), 2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from fastapi import HTTPException

from . import service

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _emit(payload: Any) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_parse(args) -> int:
    resp = service.parse_formula(service.ParseRequest(text=args.formula, lang=args.lang))
    _emit(resp.model_dump())
    return EXIT_OK


def _cmd_eval(args) -> int:
    req = service.EvalRequest(
        space=_read_json(args.space),
        valuation=_read_json(args.valuation) if args.valuation else {},
        formula=args.formula,
        sequent=args.sequent,
        lang=args.lang,
        semantics=args.semantics,
    )
    resp = service.eval_formula(req)
    _emit(resp.model_dump(exclude_none=True))
    if resp.holds is False:
        return EXIT_NEGATIVE
    return EXIT_OK


def _cmd_check(args) -> int:
    doc = _read_json(args.proof)
    if args.system:
        doc = dict(doc, system=args.system)
    resp = service.check_proof(service.CheckRequest(proof=doc))
    _emit(resp.model_dump())
    return EXIT_OK if resp.ok else EXIT_NEGATIVE


def _cmd_countermodel(args) -> int:
    req = service.CountermodelRequest(
        sequent=args.sequent, logic=args.logic, max_worlds=args.max_worlds
    )
    resp = service.find_countermodel(req)
    _emit(resp.model_dump(exclude_none=True))
    return EXIT_NEGATIVE if resp.found else EXIT_OK


def _cmd_translate(args) -> int:
    resp = service.translate_proof(
        service.TranslateRequest(proof=_read_json(args.proof))
    )
    _emit(resp.model_dump())
    return EXIT_OK


def _cmd_classify(args) -> int:
    resp = service.classify_space(service.SpaceRequest(space=_read_json(args.space)))
    _emit(resp.model_dump(exclude_none=True))
    return EXIT_OK if not resp.violations else EXIT_NEGATIVE


def _cmd_laws(args) -> int:
    resp = service.category_laws(service.SpaceRequest(space=_read_json(args.space)))
    _emit(resp.model_dump())
    ok = resp.strong and resp.weakly_closed == resp.j_top_is_top and resp.curry == resp.temporal
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_typecheck(args) -> int:
    doc = _read_json(args.term)
    req = service.TypecheckRequest(
        term=doc.get("term", doc),
        context=doc.get("context", []),
        flavor=args.flavor,
    )
    resp = service.typecheck_term(req)
    _emit(resp.model_dump())
    return EXIT_OK


def _cmd_normalize(args) -> int:
    doc = _read_json(args.term)
    req = service.NormalizeRequest(term=doc.get("term", doc), fuel=args.fuel)
    resp = service.normalize_term(req)
    _emit(resp.model_dump())
    return EXIT_OK


def _cmd_equal(args) -> int:
    doc = _read_json(args.terms)
    req = service.EqualRequest(
        term=doc["term"],
        other=doc["other"],
        context=doc.get("context", []),
        flavor=args.flavor,
        fuel=args.fuel,
    )
    resp = service.equal_terms(req)
    _emit(resp.model_dump())
    return EXIT_OK if resp.result == "equal" else EXIT_NEGATIVE


def _cmd_enumerate(args) -> int:
    req = service.EnumerateRequest(
        max_worlds=args.max_worlds,
        kind=args.kind,
        class_filter=args.filter or [],
    )
    resp = service.enumerate_spaces(req)
    _emit(resp.model_dump())
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modalkit",
        description="finite modal spaces, weak implication, proof systems, modal lambda calculus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("parse", help="parse a formula and print its AST")
    q.add_argument("formula")
    q.add_argument("--lang", default="prop", choices=["prop", "jlang", "modal"])
    q.set_defaults(fn=_cmd_parse)

    q = sub.add_parser("eval", help="evaluate a formula or sequent on a space")
    q.add_argument("--space", required=True, help="space JSON file")
    q.add_argument("--valuation", help="valuation JSON file {atom: [worlds]}")
    q.add_argument("--formula")
    q.add_argument("--sequent")
    q.add_argument("--lang", default="jlang", choices=["prop", "jlang", "modal"])
    q.add_argument("--semantics", choices=["modal", "j"])
    q.set_defaults(fn=_cmd_eval)

    q = sub.add_parser("check", help="check a proof file against its system")
    q.add_argument("proof", help="proof JSON file")
    q.add_argument("--system", help="override the file's system field")
    q.set_defaults(fn=_cmd_check)

    q = sub.add_parser("countermodel", help="search for a refuting finite model")
    q.add_argument("sequent", help='e.g. "[] p => [] [] p"')
    q.add_argument("--logic", required=True)
    q.add_argument("--max-worlds", type=int, default=4, dest="max_worlds")
    q.set_defaults(fn=_cmd_countermodel)

    q = sub.add_parser("translate", help="compile a propositional proof into its J-logic")
    q.add_argument("proof", help="proof JSON file")
    q.set_defaults(fn=_cmd_translate)

    q = sub.add_parser("classify", help="validate a space and report its class flags")
    q.add_argument("space", help="space JSON file")
    q.set_defaults(fn=_cmd_classify)

    q = sub.add_parser("laws", help="check the arrow laws on a space")
    q.add_argument("space", help="space JSON file")
    q.set_defaults(fn=_cmd_laws)

    q = sub.add_parser("typecheck", help="type a term")
    q.add_argument("term", help="term JSON file, optionally {term, context}")
    q.add_argument("--flavor", default="mJ", choices=["mJ", "J", "CoJ", "I"])
    q.set_defaults(fn=_cmd_typecheck)

    q = sub.add_parser("normalize", help="reduce a term to normal form")
    q.add_argument("term", help="term JSON file")
    q.add_argument("--fuel", type=int)
    q.set_defaults(fn=_cmd_normalize)

    q = sub.add_parser("equal", help="decide equality of two terms")
    q.add_argument("terms", help="JSON file {term, other, context?}")
    q.add_argument("--flavor", default="I", choices=["mJ", "J", "CoJ", "I"])
    q.add_argument("--fuel", type=int)
    q.set_defaults(fn=_cmd_equal)

    q = sub.add_parser("enumerate", help="list small spaces")
    q.add_argument("--max-worlds", type=int, default=2, dest="max_worlds")
    q.add_argument(
        "--kind", default="boolean-powerset", choices=["boolean-powerset", "upset-poset"]
    )
    q.add_argument("--filter", nargs="*", help="required class flags")
    q.set_defaults(fn=_cmd_enumerate)

    q = sub.add_parser("serve", help="run the HTTP service")
    q.add_argument("--host", default="127.0.0.1")
    q.add_argument("--port", type=int, default=8000)
    q.set_defaults(fn=_cmd_serve)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except HTTPException as exc:
        _emit({"error": exc.detail})
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"error": str(exc)})
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
