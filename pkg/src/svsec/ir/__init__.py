from svsec.ir.expr import BV, Ref, Op, Expr, mask
from svsec.ir.transition import StateVar, TransitionSystem, simulate_step
from svsec.ir.elaborate import elaborate

__all__ = ["BV", "Ref", "Op", "Expr", "mask", "StateVar", "TransitionSystem",
           "simulate_step", "elaborate"]
