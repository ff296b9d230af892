"""k-induction: BMC base case plus an inductive step over free states.

proven(k) means: no violation at depths 0..k (base), and k consecutive
violation-free frames starting anywhere imply a violation-free frame
k+1 (step, shown by unsatisfiability of the negation).  With the
simple-path constraint the step only considers runs of pairwise
distinct states, which makes the method complete for finite systems
given a large enough k.
"""

from __future__ import annotations

import time

from svsec.engine import sat
from svsec.engine.aig import FALSE
from svsec.engine.bmc import DEFAULT_CONFLICT_BUDGET, Unroller, bmc
from svsec.engine.cnf import to_cnf
from svsec.engine.result import Falsified, NoCexUpTo, Proven, Unknown
from svsec.props.obligation import SafetyObligation


def k_induction(obl: SafetyObligation, max_k: int, simple_path: bool = True,
                conflict_budget: int = DEFAULT_CONFLICT_BUDGET,
                budget_seconds: float | None = None):
    deadline = None if budget_seconds is None \
        else time.monotonic() + budget_seconds
    base_un = Unroller(obl)
    step_un = Unroller(obl, free_initial=True)

    for k in range(max_k + 1):
        remaining = None if deadline is None \
            else max(deadline - time.monotonic(), 0.0)
        res = bmc(obl, max_depth=k, conflict_budget=conflict_budget,
                  budget_seconds=remaining, unroller=base_un)
        if isinstance(res, Falsified):
            return res
        if isinstance(res, Unknown):
            return Unknown(max_k=k, reason=res.reason)
        assert isinstance(res, NoCexUpTo)

        if deadline is not None and time.monotonic() > deadline:
            return Unknown(max_k=k, reason="time budget exceeded")
        if _step_holds(obl, step_un, k, simple_path, conflict_budget):
            return Proven(k_used=k)
    return Unknown(max_k=max_k, reason="induction depth exhausted")


def _step_holds(obl: SafetyObligation, un: Unroller, k: int,
                simple_path: bool, conflict_budget: int) -> bool:
    """UNSAT of: frames 0..k-1 good, frame k bad, states distinct."""
    bad_k = un.bad(k)
    if bad_k == FALSE:
        return True
    roots = [bad_k]
    for t in range(k):
        good = un.bad(t) ^ 1
        if good != FALSE:
            roots.append(good)
        elif good == FALSE:
            return True  # a good frame is impossible; vacuously holds
    if simple_path:
        aig = un.aig
        state_names = [s.name for s in un.ts.states]
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                diff = FALSE
                for name in state_names:
                    a = un.frames[i].bus(name)
                    b = un.frames[j].bus(name)
                    diff = aig.lor(diff, aig.bus_eq(a, b) ^ 1)
                roots.append(diff)
    if any(r == FALSE for r in roots):
        return True
    f = to_cnf(un.aig, roots)
    status, _ = sat.solve(f.clauses, f.num_vars,
                          conflict_budget=conflict_budget)
    return status == sat.UNSAT
