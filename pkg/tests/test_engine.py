from __future__ import annotations

import json

import pytest

from svsec.check import check_design
from svsec.engine.bmc import Unroller, bmc
from svsec.engine.induction import k_induction
from svsec.engine.oracle import OracleRefused, explicit_state_oracle
from svsec.engine.result import (CompileError, Falsified, NoCexUpTo, Proven,
                                 Unknown)
from svsec.props import compile_obligation, parse_property

from conftest import COUNTER, compile_ts

BY_TWO = """\
module bytwo(
  input logic clk_in,
  input logic rst_n_in,
  output logic [3:0] count_out
);
  always_ff @(posedge clk_in or negedge rst_n_in) begin
    if (!rst_n_in) begin
      count_out <= 4'h0;
    end else begin
      count_out <= count_out + 4'h2;
    end
  end
endmodule
"""


def obligation(source, top, text):
    ts, _ = compile_ts(source, top)
    prop, diags = parse_property(text, ts)
    assert prop is not None, [d.message for d in diags]
    return compile_obligation(prop, ts)


def test_bmc_reports_minimal_depth_and_matches_oracle(counter_ts):
    obl = obligation(COUNTER, "counter",
                     "disable iff (!rst_n_in) count_out != 4'h3")
    res = bmc(obl, max_depth=10)
    assert isinstance(res, Falsified) and res.depth == 3
    oracle = explicit_state_oracle(obl)
    assert oracle.violated and oracle.min_depth == 3


def test_bmc_bound_short_of_the_bug(counter_ts):
    obl = obligation(COUNTER, "counter",
                     "disable iff (!rst_n_in) count_out != 4'h3")
    res = bmc(obl, max_depth=2)
    assert isinstance(res, NoCexUpTo) and res.depth == 2


def test_bmc_trace_is_a_real_execution():
    obl = obligation(COUNTER, "counter",
                     "disable iff (!rst_n_in) count_out != 4'h5")
    res = bmc(obl, max_depth=10)
    assert isinstance(res, Falsified)
    tr = res.trace
    assert tr.depth == res.depth == 5
    # the counter must have been enabled and out of reset every cycle
    assert all(v["rst_n_in"] == 1 and v["en_in"] == 1 for v in tr.inputs[:5])
    doc = json.loads(tr.to_json())
    assert doc["depth"] == 5 and len(doc["cycles"]) == 6


def test_k_induction_proves_invariant():
    obl = obligation(COUNTER, "counter",
                     "disable iff (!rst_n_in) count_out <= 4'hF")
    res = k_induction(obl, max_k=4)
    assert isinstance(res, Proven)


def test_deep_induction_on_unreachable_odd_states():
    # counting by two from zero never hits an odd value, but the odd
    # residue class is an 8-cycle of non-violating free states, so the
    # induction step only closes once k covers that whole cycle.
    obl = obligation(BY_TWO, "bytwo",
                     "disable iff (!rst_n_in) count_out != 4'h9")
    strong = k_induction(obl, max_k=12, simple_path=True)
    assert isinstance(strong, Proven) and strong.k_used == 8
    plain = k_induction(obl, max_k=12, simple_path=False)
    assert isinstance(plain, Proven) and plain.k_used >= strong.k_used
    oracle = explicit_state_oracle(obl)
    assert not oracle.violated


def test_k_induction_finds_bugs_at_minimal_depth():
    obl = obligation(BY_TWO, "bytwo",
                     "disable iff (!rst_n_in) count_out != 4'h8")
    res = k_induction(obl, max_k=12)
    assert isinstance(res, Falsified) and res.depth == 4
    assert explicit_state_oracle(obl).min_depth == 4


def test_time_budget_yields_unknown():
    obl = obligation(COUNTER, "counter",
                     "disable iff (!rst_n_in) count_out <= 4'hF")
    res = k_induction(obl, max_k=32, budget_seconds=0.0)
    assert isinstance(res, Unknown) and "budget" in res.reason


def test_oracle_refuses_oversized_designs(counter_ts):
    obl = obligation(COUNTER, "counter", "count_out <= 4'hF")
    with pytest.raises(OracleRefused):
        explicit_state_oracle(obl, state_bit_cap=2)
    with pytest.raises(OracleRefused):
        explicit_state_oracle(obl, input_bit_cap=1)


def test_free_initial_unroller_relaxes_reset():
    obl = obligation(COUNTER, "counter", "count_out != 4'h7")
    # reset-constrained frame 0 cannot be bad; a free frame 0 can
    assert isinstance(bmc(obl, max_depth=0), NoCexUpTo)
    res = bmc(obl, max_depth=0, unroller=Unroller(obl, free_initial=True))
    assert isinstance(res, Falsified) and res.depth == 0


def test_vcd_export():
    obl = obligation(COUNTER, "counter",
                     "disable iff (!rst_n_in) count_out != 4'h2")
    res = bmc(obl, max_depth=8)
    vcd = res.trace.to_vcd(obl.augmented, module="counter")
    assert "$scope module counter $end" in vcd
    assert "$var wire 4" in vcd and "$enddefinitions $end" in vcd
    assert vcd.count("#") >= 2 * len(res.trace.inputs)


def test_check_design_end_to_end():
    good = check_design(COUNTER, "counter",
                        "disable iff (!rst_n_in) count_out <= 4'hF")
    assert good.status == "proven"

    bad = check_design(COUNTER, "counter",
                       "disable iff (!rst_n_in) count_out != 4'h3")
    assert bad.status == "falsified" and bad.depth == 3
    # both assignments write count_out; the increment on line 12 of the
    # source is the one that produced the violating value
    assert bad.culprit_signal == "count_out" and bad.culprit_line == 12

    assert check_design("module m(", "m", "x == 1").status == "compile_error"
    assert check_design(COUNTER, "counter",
                        "no_such_signal == 1").status == "compile_error"
    assert isinstance(check_design(COUNTER, "wrong_top", "count_out == 0"),
                      CompileError)
