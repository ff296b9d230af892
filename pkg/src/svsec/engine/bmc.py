"""Bounded model checking over an obligation's augmented system.

The transition relation is unrolled frame by frame into one growing
AIG; each depth gets a fresh CNF for the cone of that frame's `bad`
bit, so the first hit is guaranteed to be at the minimal depth.
"""

from __future__ import annotations

import time

from svsec.engine import sat
from svsec.engine.aig import Aig, Frame, TRUE, FALSE, blast_frame
from svsec.engine.cnf import CnfFormula, to_cnf
from svsec.engine.result import Falsified, NoCexUpTo, Unknown
from svsec.engine.trace import Trace
from svsec.props.obligation import SafetyObligation

DEFAULT_CONFLICT_BUDGET = 400_000


class Unroller:
    """Time-frame expansion with reset-constrained frame 0."""

    def __init__(self, obl: SafetyObligation, free_initial: bool = False):
        self.obl = obl
        self.ts = obl.augmented
        self.aig = Aig()
        self.frames: list[Frame] = []
        self.initial_free: dict[str, tuple[int, ...]] = {}
        env: dict[str, tuple[int, ...]] = {}
        for s in self.ts.states:
            if s.reset is None or free_initial:
                bus = self.aig.bus_input(s.width)
                self.initial_free[s.name] = bus
            else:
                bus = self.aig.bus_const(s.width, s.reset)
            env[s.name] = bus
        self._next_state_env = env

    def extend(self) -> Frame:
        frame, nxt = blast_frame(self.aig, self.ts, self._next_state_env)
        self.frames.append(frame)
        self._next_state_env = nxt
        return frame

    def at_least(self, depth: int) -> None:
        while len(self.frames) <= depth:
            self.extend()

    def bad(self, depth: int) -> int:
        self.at_least(depth)
        return self.frames[depth].bit(self.obl.bad_name)

    def input_lits(self, depth: int) -> list[int]:
        frame = self.frames[depth]
        return [lit for n, _ in self.ts.inputs for lit in frame.bus(n)]

    def extract_trace(self, f: CnfFormula, model: list[int],
                      depth: int) -> Trace:
        def bus_value(bus: tuple[int, ...]) -> int:
            v = 0
            for i, lit in enumerate(bus):
                if lit == TRUE:
                    bit = 1
                elif lit == FALSE:
                    bit = 0
                elif (lit >> 1) in f.var_of_node:
                    bit = model[f.var_of_node[lit >> 1] - 1] ^ (lit & 1)
                else:
                    bit = 0  # unconstrained
                v |= bit << i
            return v

        initial = {s.name: s.reset or 0 for s in self.ts.states}
        for name, bus in self.initial_free.items():
            initial[name] = bus_value(bus)
        inputs = []
        for t in range(depth + 1):
            frame = self.frames[t]
            inputs.append({n: bus_value(frame.bus(n))
                           for n, _ in self.ts.inputs})
        tr = Trace(initial=initial, inputs=inputs)
        tr.replay(self.ts)
        return tr


def bmc(obl: SafetyObligation, max_depth: int,
        conflict_budget: int = DEFAULT_CONFLICT_BUDGET,
        budget_seconds: float | None = None,
        unroller: Unroller | None = None):
    """Search for a violation at depths 0..max_depth, shallowest first."""
    from svsec.props.obligation import evaluate_on_trace

    deadline = None if budget_seconds is None \
        else time.monotonic() + budget_seconds
    un = unroller or Unroller(obl)
    for d in range(max_depth + 1):
        if deadline is not None and time.monotonic() > deadline:
            return Unknown(max_k=d, reason="time budget exceeded")
        bad = un.bad(d)
        if bad == FALSE:
            continue
        frozen = [lit for t in range(d + 1) for lit in un.input_lits(t)]
        frozen += [lit for bus in un.initial_free.values() for lit in bus]
        f = to_cnf(un.aig, [bad], frozen=frozen)
        status, model = sat.solve(f.clauses, f.num_vars,
                                  conflict_budget=conflict_budget)
        if status == sat.UNKNOWN:
            return Unknown(max_k=d, reason="solver conflict budget exceeded")
        if status == sat.SAT:
            tr = un.extract_trace(f, model, d)
            hit = evaluate_on_trace(obl, tr)
            assert hit == d, f"trace replay mismatch: {hit} != {d}"
            return Falsified(trace=tr, depth=d)
    return NoCexUpTo(depth=max_depth)
