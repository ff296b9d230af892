"""One-call design adjudication: source text in, verdict out."""

from __future__ import annotations

from svsec.engine.induction import k_induction
from svsec.engine.result import CompileError, Falsified, Proven, Unknown
from svsec.frontend import parse_source
from svsec.frontend.ast import Expr as AstExpr
from svsec.ir import expr as ex
from svsec.ir.elaborate import elaborate
from svsec.props import compile_obligation, parse_property
from svsec.props.obligation import SafetyObligation

DEFAULT_MAX_K = 32
DEFAULT_BUDGET_SECONDS = 60.0


def check_design(source: str, top: str, property_text: str,
                 max_k: int = DEFAULT_MAX_K,
                 budget_seconds: float | None = DEFAULT_BUDGET_SECONDS,
                 simple_path: bool = True):
    """Parse, elaborate, compile the property, and run k-induction.

    Returns Proven | Falsified | Unknown | CompileError.  Falsified
    verdicts carry the source line whose assignment produced the
    violating value.
    """
    unit, diags = parse_source(source)
    if unit is None:
        return CompileError(diagnostics=diags)
    ts, line_map, ediags = elaborate(unit, top)
    if ts is None:
        return CompileError(diagnostics=ediags)
    prop, pdiags = parse_property(property_text, ts)
    if prop is None:
        return CompileError(diagnostics=pdiags)
    obl = compile_obligation(prop, ts)
    verdict = k_induction(obl, max_k=max_k, simple_path=simple_path,
                          budget_seconds=budget_seconds)
    if isinstance(verdict, Falsified):
        sig, line = locate_culprit(obl, line_map, verdict)
        verdict.culprit_signal = sig
        verdict.culprit_line = line
    return verdict


def locate_culprit(obl: SafetyObligation, line_map: dict,
                   verdict: Falsified) -> tuple[str, int]:
    """Find the assignment that produced the violating value.

    The consequent failed at cycle `depth`; the state signals it reads
    took their values at the clock edge entering that cycle, so the
    per-signal line trackers are evaluated in the previous cycle's
    environment.
    """
    consequent = obl.prop.consequent
    names = sorted(_ast_idents(consequent))
    depth = verdict.depth
    candidates = []
    for name in names:
        tracker = line_map.get(name)
        if tracker is None:
            continue
        if isinstance(tracker, int):
            candidates.append((name, tracker))
        elif depth > 0:
            env = verdict.trace.values[depth - 1]
            candidates.append((name, ex.eval_expr(tracker, env)))
    for name, line in candidates:
        if line:
            return name, line
    if candidates:
        return candidates[0]
    return "", 0


def _ast_idents(e: AstExpr, acc: set[str] | None = None) -> set[str]:
    if acc is None:
        acc = set()
    from svsec.frontend import ast
    if isinstance(e, ast.Ident):
        acc.add(e.name)
    elif isinstance(e, ast.Unary):
        _ast_idents(e.operand, acc)
    elif isinstance(e, ast.Binary):
        _ast_idents(e.left, acc)
        _ast_idents(e.right, acc)
    elif isinstance(e, ast.Ternary):
        for sub in (e.cond, e.then, e.other):
            _ast_idents(sub, acc)
    elif isinstance(e, (ast.Index, ast.RangeSelect)):
        _ast_idents(e.base, acc)
    elif isinstance(e, ast.SysCall):
        for a in e.args:
            _ast_idents(a, acc)
    return acc
