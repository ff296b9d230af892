"""AST printer whose output re-parses to a structurally identical tree."""

from __future__ import annotations

from svsec.frontend import ast

_PRECEDENCE = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5,
    "==": 6, "!=": 6,
    "<": 7, "<=": 7, ">": 7, ">=": 7,
    "<<": 8, ">>": 8, ">>>": 8,
    "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10,
}

_BASE_RADIX = {"b": 2, "o": 8, "d": 10, "h": 16}


def format_expr(e: ast.Expr, parent_prec: int = 0) -> str:
    if isinstance(e, ast.Number):
        return format_number(e)
    if isinstance(e, ast.Ident):
        return e.name
    if isinstance(e, ast.Unary):
        return f"{e.op}{format_expr(e.operand, 11)}"
    if isinstance(e, ast.Binary):
        prec = _PRECEDENCE[e.op]
        text = f"{format_expr(e.left, prec)} {e.op} {format_expr(e.right, prec + 1)}"
        return f"({text})" if prec < parent_prec else text
    if isinstance(e, ast.Ternary):
        text = (f"{format_expr(e.cond, 1)} ? {format_expr(e.then)}"
                f" : {format_expr(e.other)}")
        return f"({text})" if parent_prec > 0 else text
    if isinstance(e, ast.Index):
        return f"{format_expr(e.base, 12)}[{format_expr(e.index)}]"
    if isinstance(e, ast.RangeSelect):
        return (f"{format_expr(e.base, 12)}[{format_expr(e.msb)}"
                f":{format_expr(e.lsb)}]")
    if isinstance(e, ast.Concat):
        return "{" + ", ".join(format_expr(p) for p in e.parts) + "}"
    if isinstance(e, ast.Replicate):
        return "{" + format_expr(e.count, 12) + "{" + format_expr(e.value) + "}}"
    if isinstance(e, ast.SysCall):
        if not e.args:
            return e.name
        return e.name + "(" + ", ".join(format_expr(a) for a in e.args) + ")"
    raise TypeError(f"unknown expression node {e!r}")


def format_number(n: ast.Number) -> str:
    if n.base is None:
        return str(n.value)
    if n.base == "":
        return f"'{n.value}"
    radix = _BASE_RADIX[n.base]
    digits = _to_base(n.value, radix)
    size = str(n.width) if n.width is not None else ""
    return f"{size}'{n.base}{digits}"


def _to_base(value: int, radix: int) -> str:
    if value == 0:
        return "0"
    digits = "0123456789abcdef"
    out = []
    while value:
        out.append(digits[value % radix])
        value //= radix
    return "".join(reversed(out))


def _format_lvalue(lv: ast.LValue) -> str:
    text = lv.name
    if lv.index is not None:
        text += f"[{format_expr(lv.index)}]"
    elif lv.msb is not None:
        text += f"[{format_expr(lv.msb)}:{format_expr(lv.lsb)}]"
    return text


def _format_stmt(s: ast.Stmt, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(s, ast.Block):
        lines = [pad + "begin"]
        for sub in s.stmts:
            lines.extend(_format_stmt(sub, indent + 1))
        lines.append(pad + "end")
        return lines
    if isinstance(s, ast.Assign):
        op = "<=" if s.nonblocking else "="
        return [f"{pad}{_format_lvalue(s.target)} {op} {format_expr(s.value)};"]
    if isinstance(s, ast.If):
        lines = [f"{pad}if ({format_expr(s.cond)})"]
        lines.extend(_format_stmt(s.then, indent + 1))
        if s.other is not None:
            lines.append(pad + "else")
            lines.extend(_format_stmt(s.other, indent + 1))
        return lines
    if isinstance(s, ast.Case):
        lines = [f"{pad}{s.kind} ({format_expr(s.subject)})"]
        for item in s.items:
            if item.patterns:
                head = ", ".join(format_expr(p) for p in item.patterns) + ":"
            else:
                head = "default:"
            lines.append("  " * (indent + 1) + head)
            lines.extend(_format_stmt(item.body, indent + 2))
        lines.append(pad + "endcase")
        return lines
    raise TypeError(f"unknown statement node {s!r}")


def _format_port(p: ast.Port) -> str:
    text = f"{p.direction} {p.net_kind}"
    if p.msb is not None:
        text += f" [{format_expr(p.msb)}:{format_expr(p.lsb)}]"
    return f"{text} {p.name}"


def _format_module(m: ast.ModuleDecl) -> list[str]:
    lines = []
    header = f"module {m.name}"
    header_params = [p for p in m.params if not p.local and not _in_body(m, p)]
    if header_params:
        inner = ", ".join(f"parameter {p.name} = {format_expr(p.value)}"
                          for p in header_params)
        header += f" #({inner})"
    if m.ports:
        lines.append(header + " (")
        for i, p in enumerate(m.ports):
            comma = "," if i < len(m.ports) - 1 else ""
            lines.append(f"  {_format_port(p)}{comma}")
        lines.append(");")
    else:
        lines.append(header + ";")

    order = list(m.item_order)
    if not order:
        order = ([("param", i) for i in range(len(m.params)) if m.params[i].local
                  or _in_body(m, m.params[i])]
                 + [("decl", i) for i in range(len(m.decls))]
                 + [("assign", i) for i in range(len(m.assigns))]
                 + [("always", i) for i in range(len(m.always_blocks))]
                 + [("inst", i) for i in range(len(m.instances))])
    for kind, idx in order:
        if kind == "param":
            p = m.params[idx]
            kw = "localparam" if p.local else "parameter"
            lines.append(f"  {kw} {p.name} = {format_expr(p.value)};")
        elif kind == "decl":
            d = m.decls[idx]
            text = f"  {d.net_kind}"
            if d.msb is not None:
                text += f" [{format_expr(d.msb)}:{format_expr(d.lsb)}]"
            text += f" {d.name}"
            if d.unpacked is not None:
                lo, hi = d.unpacked
                text += f" [{format_expr(lo)}:{format_expr(hi)}]"
            lines.append(text + ";")
        elif kind == "assign":
            a = m.assigns[idx]
            lines.append(f"  assign {_format_lvalue(a.target)} = "
                         f"{format_expr(a.value)};")
        elif kind == "always":
            blk = m.always_blocks[idx]
            head = f"  {blk.kind}"
            if blk.sensitivity is not None:
                events = " or ".join(f"{e.edge} {e.signal}" for e in blk.sensitivity)
                head += f" @({events})"
            elif blk.kind == "always":
                head += " @(*)"
            lines.append(head)
            lines.extend(_format_stmt(blk.body, 2))
        elif kind == "inst":
            inst = m.instances[idx]
            text = f"  {inst.module}"
            if inst.param_overrides:
                inner = ", ".join(f".{n}({format_expr(v)})"
                                  for n, v in inst.param_overrides)
                text += f" #({inner})"
            conns = ", ".join(
                f".{c.port}({format_expr(c.expr) if c.expr is not None else ''})"
                for c in inst.conns)
            lines.append(f"{text} {inst.name} ({conns});")
    lines.append("endmodule")
    return lines


def _in_body(m: ast.ModuleDecl, p: ast.ParamDecl) -> bool:
    if not m.item_order:
        return False
    for kind, idx in m.item_order:
        if kind == "param" and m.params[idx] is p:
            return True
    return False


def pretty_print(unit: ast.SourceUnit) -> str:
    chunks = []
    for m in unit.modules:
        chunks.append("\n".join(_format_module(m)))
    return "\n\n".join(chunks) + "\n"
