"""Command line front end.

Text output uses the canonical renderings of each module; --json wraps the
result in an object {command, inputs, result, citations} with sorted keys,
so identical invocations are byte-identical.  Exit codes: 0 on success,
2 on parse or validation errors, 1 on domain errors such as inadmissible
compositions.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .classifier import EXISTENCE_FACTS, classify
from .dpoint import xi_push
from .errors import DomainError, ExprSyntaxError
from .expr import parse_qclass, parse_sq, parse_wmonomial
from .manifolds import parse_manifold, sw_number
from .qmo import nishida, primitive_submodule, q_coproduct, qmo_basis
from .steenrod import (
    adem_normalize,
    render_w_sum,
    sq_act,
    suspension_chain_check,
    to_w_basis,
    w_poly,
)


def _emit(args, command: str, inputs: dict, result, citations: List[str], text: str) -> int:
    if getattr(args, "json", False):
        payload = {
            "command": command,
            "inputs": inputs,
            "result": result,
            "citations": citations,
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)
    return 0


def _cmd_classify(args) -> int:
    report = classify(args.k)
    d = report.to_dict()
    citations = [
        f"{EXISTENCE_FACTS[key].statement} ({EXISTENCE_FACTS[key].source})"
        for key in report.existence_facts_used
    ]
    lines = [
        f"k = {report.k}  (k mod 4 = {report.residue}, alpha(k+2) = {report.alpha_k_plus_2},"
        f" k+1 power of 2: {'yes' if report.k_plus_1_power_of_2 else 'no'})",
        "candidate basis:",
    ]
    for c in report.candidate.basis:
        lines.append(f"  {c.render()}")
    if report.candidate.excluded is not None:
        lines.append(
            f"excluded candidate: {report.candidate.excluded.render()}"
            f"  (suspends to {report.candidate.suspension_square};"
            " the obstruction chain vanishes)"
        )
    lines.append("pushforward images:")
    for x in report.xi_images:
        lines.append(f"  {x.source} -> {x.image}")
    lines.append(
        f"odd Euler characteristic achievable: {'yes' if report.odd_achievable else 'no'}"
    )
    lines.append(f"forced parity: {report.forced_parity}")
    if report.criterion:
        lines.append(f"criterion: {report.criterion}")
    if citations:
        lines.append("existence facts used:")
        for c in citations:
            lines.append(f"  - {c}")
    for n in report.notes:
        lines.append(f"note: {n}")
    return _emit(args, "classify", {"k": args.k}, d, citations, "\n".join(lines))


def _cmd_primitives(args) -> int:
    dim = args.dim if args.dim is not None else 2 * args.k + 2
    classes = primitive_submodule(args.k, dim)
    renders = [c.render() for c in classes]
    return _emit(
        args,
        "primitives",
        {"k": args.k, "dim": dim},
        renders,
        ["kernel of the reduced coproduct on the monomial basis"],
        "\n".join(renders) if renders else "0",
    )


def _cmd_coproduct(args) -> int:
    cls = parse_qclass(args.expr, expected_k=args.k)
    tens = q_coproduct(cls, reduced=args.reduced)
    text = tens.render()
    return _emit(
        args,
        "coproduct",
        {"k": args.k, "expr": args.expr, "reduced": args.reduced},
        text,
        ["diagonal coproduct with the Thom quotient rule"],
        text,
    )


def _cmd_sqdual(args) -> int:
    cls = parse_qclass(args.expr, expected_k=args.k)
    res = nishida(args.i, cls)
    text = res.render()
    return _emit(
        args,
        "sqdual",
        {"i": args.i, "k": args.k, "expr": args.expr},
        text,
        ["Nishida commutation rule and the dual Cartan formula"],
        text,
    )


def _cmd_xi(args) -> int:
    cls = parse_qclass(args.expr, expected_k=args.k)
    res = xi_push(cls)
    text = res.render()
    return _emit(
        args,
        "xi",
        {"k": args.k, "expr": args.expr},
        text,
        ["double point pushforward on height 2 classes"],
        text,
    )


def _cmd_adem(args) -> int:
    e = parse_sq(args.expr)
    res = adem_normalize(e)
    text = res.render()
    return _emit(
        args,
        "adem",
        {"expr": args.expr},
        text,
        ["Adem relations, admissible basis"],
        text,
    )


def _cmd_sqact(args) -> int:
    powers = parse_wmonomial(args.on)
    p = w_poly(args.vars, powers)
    res = sq_act(args.a, p)
    text = render_w_sum(to_w_basis(res))
    return _emit(
        args,
        "sqact",
        {"a": args.a, "on": args.on, "vars": args.vars},
        text,
        ["splitting principle: total square on elementary symmetric classes"],
        text,
    )


def _cmd_swnumber(args) -> int:
    spec = parse_manifold(args.manifold)
    powers = parse_wmonomial(args.number)
    indices = []
    for i, e in powers:
        indices.extend([i] * e)
    value = sw_number(spec, indices)
    return _emit(
        args,
        "swnumber",
        {"manifold": args.manifold, "number": args.number},
        value,
        ["truncated cohomology ring with the closed-form tangent class"],
        str(value),
    )


def _cmd_lemma55(args) -> int:
    rep = suspension_chain_check(args.r)
    lines = [
        f"r = {rep.r}, k = {rep.k}, variables = {rep.nvars}",
        f"Adem identity Sq^{4 * rep.r + 2} = Sq^2 Sq^{4 * rep.r} + Sq^1 Sq^{4 * rep.r} Sq^1:"
        f" {'ok' if rep.adem_identity_ok else 'FAILED'}",
    ]
    for s in rep.steps:
        lines.append(f"{s.label} = {s.value}  [{'ok' if s.ok else 'FAILED'}]")
    lines.append(f"final value: {rep.final.render()}")
    lines.append(f"chain verified: {'yes' if rep.ok else 'no'}")
    result = {
        "r": rep.r,
        "k": rep.k,
        "adem_identity_ok": rep.adem_identity_ok,
        "steps": [{"label": s.label, "value": s.value, "ok": s.ok} for s in rep.steps],
        "final": rep.final.render(),
        "ok": rep.ok,
    }
    return _emit(
        args,
        "lemma55",
        {"r": args.r},
        result,
        ["Adem relations", "Wu formula", "instability of the unstable action"],
        "\n".join(lines),
    )


def _cmd_basis(args) -> int:
    monomials = qmo_basis(args.k, args.dim)
    if args.height is not None:
        monomials = [m for m in monomials if m.height == args.height]
    renders = [m.render() for m in monomials]
    return _emit(
        args,
        "basis",
        {"k": args.k, "dim": args.dim, "height": args.height},
        renders,
        ["admissible generators with excess above the base dimension"],
        "\n".join(renders) if renders else "(empty)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublepoint",
        description=(
            "Exact mod-2 engine for the double point self-intersection"
            " surfaces of immersions M^(k+2) -> R^(2k+2)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="emit a JSON envelope")
        return p

    p = add("classify", _cmd_classify, "full per-k parity report")
    p.add_argument("--k", type=int, required=True)

    p = add("primitives", _cmd_primitives, "basis of the coproduct-primitive submodule")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dim", type=int, default=None, help="defaults to 2k+2")

    p = add("coproduct", _cmd_coproduct, "Hopf coproduct of an expression")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--reduced", action="store_true")

    p = add("sqdual", _cmd_sqdual, "dual Steenrod operation on an expression")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--expr", required=True)

    p = add("xi", _cmd_xi, "pushforward of a height 2 class to MO(2k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--expr", required=True)

    p = add("adem", _cmd_adem, "normalize a Steenrod composite")
    p.add_argument("--expr", required=True)

    p = add("sqact", _cmd_sqact, "Steenrod square on a w-monomial")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--on", required=True, help="w-monomial, e.g. w1^2*w3")
    p.add_argument("--vars", type=int, required=True)

    p = add("swnumber", _cmd_swnumber, "normal Stiefel-Whitney number")
    p.add_argument("--manifold", required=True, help="RP(4)xRP(2) or Dold(r=2)")
    p.add_argument("--number", required=True, help="component monomial, e.g. w2*w3")

    p = add("lemma55", _cmd_lemma55, "suspension chain check for k = 4r-1")
    p.add_argument("--r", type=int, required=True)

    p = add("basis", _cmd_basis, "monomial basis of H_dim QMO(k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--height", type=int, default=None)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ExprSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
