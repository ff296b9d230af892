"""Security-focused formal verification of SystemVerilog designs.

Parses a synthesizable SystemVerilog subset, elaborates it to a
word-level transition system, and checks safety properties drawn from
a 30-problem hardware-CWE catalog via SAT-based bounded model checking
and k-induction.  A generation/labeling/metrics pipeline turns LLM
responses into a labeled dataset with Pass@k tables and heatmaps.
"""

__version__ = "0.1.0"
