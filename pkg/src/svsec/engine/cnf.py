"""Tseitin transformation of an AIG cone into CNF, plus DIMACS export."""

from __future__ import annotations

from dataclasses import dataclass, field

from svsec.engine.aig import Aig, FALSE, TRUE


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[tuple[int, ...]]
    # AIG literal -> DIMACS variable, for model read-back
    var_of_node: dict[int, int] = field(default_factory=dict)

    def lit(self, aig_lit: int) -> int:
        """DIMACS literal for an AIG literal (node must be encoded)."""
        v = self.var_of_node[aig_lit >> 1]
        return -v if aig_lit & 1 else v

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        for c in self.clauses:
            lines.append(" ".join(str(x) for x in c) + " 0")
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = 0
    clauses: list[tuple[int, ...]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            num_vars = int(parts[2])
            continue
        lits = [int(x) for x in line.split()]
        assert lits[-1] == 0
        clauses.append(tuple(lits[:-1]))
    return CnfFormula(num_vars=num_vars, clauses=clauses)


def to_cnf(aig: Aig, roots: list[int],
           frozen: list[int] | None = None) -> CnfFormula:
    """Encode the cone of `roots` and assert each root true.

    `frozen` literals get variables even if outside the cone, so
    models always assign them (useful for trace extraction).
    """
    f = CnfFormula(num_vars=0, clauses=[])

    def var(node: int) -> int:
        v = f.var_of_node.get(node)
        if v is None:
            f.num_vars += 1
            v = f.num_vars
            f.var_of_node[node] = v
        return v

    # walk the cone iteratively (deep ANDs would blow the stack)
    seen: set[int] = set()
    stack = [r >> 1 for r in roots] + [x >> 1 for x in (frozen or [])]
    order: list[int] = []
    while stack:
        node = stack.pop()
        if node in seen or node == 0:
            continue
        seen.add(node)
        order.append(node)
        fanin = aig.nodes[node]
        if fanin is not None:
            stack.append(fanin[0] >> 1)
            stack.append(fanin[1] >> 1)

    for node in sorted(order):
        fanin = aig.nodes[node]
        v = var(node)
        if fanin is None:
            continue
        a, b = fanin

        def dlit(aig_lit: int) -> int:
            if aig_lit == TRUE or aig_lit == FALSE:
                # constants are folded away by the AIG; guard anyway
                cv = var(0)
                f.clauses.append((-cv,))
                return -cv if aig_lit == TRUE else cv
            x = var(aig_lit >> 1)
            return -x if aig_lit & 1 else x

        la, lb = dlit(a), dlit(b)
        f.clauses.append((-v, la))
        f.clauses.append((-v, lb))
        f.clauses.append((v, -la, -lb))

    for r in roots:
        if r == TRUE:
            continue
        if r == FALSE:
            f.num_vars += 1
            f.clauses.append((f.num_vars,))
            f.clauses.append((-f.num_vars,))
            continue
        f.clauses.append((f.lit(r),))
    return f
