from __future__ import annotations

from hypothesis import given, settings, strategies as st

from svsec.ir import StateVar, elaborate, simulate_step
from svsec.ir.expr import eval_expr
from svsec.ir.transition import compile_stepper
from svsec.frontend import parse_source

from conftest import COUNTER, compile_ts

RAM = """\
module ram2(
  input logic clk_in,
  input logic rst_n_in,
  input logic we_in,
  input logic [1:0] addr_in,
  input logic [7:0] wdata_in,
  output logic [7:0] rdata_out
);
  logic [7:0] mem_q [3:0];

  always_ff @(posedge clk_in or negedge rst_n_in) begin
    if (!rst_n_in) begin
      mem_q[0] <= 8'h00;
      mem_q[1] <= 8'h00;
      mem_q[2] <= 8'h00;
      mem_q[3] <= 8'h00;
    end else if (we_in) begin
      mem_q[addr_in] <= wdata_in;
    end
  end

  assign rdata_out = mem_q[addr_in];
endmodule
"""

PAIR = """\
module inv(input logic a_in, output logic y_out);
  assign y_out = !a_in;
endmodule

module top(
  input logic clk_in,
  input logic rst_n_in,
  input logic d_in,
  output logic q_out
);
  logic w;

  inv u0(.a_in(d_in), .y_out(w));

  always_ff @(posedge clk_in or negedge rst_n_in) begin
    if (!rst_n_in) begin
      q_out <= 1'b0;
    end else begin
      q_out <= w;
    end
  end
endmodule
"""


def test_counter_shape(counter_ts):
    assert [n for n, _ in counter_ts.inputs] == ["rst_n_in", "en_in"]
    assert counter_ts.clock == "clk_in"
    (cnt,) = counter_ts.states
    assert cnt == StateVar("count_out", 4, 0)
    assert counter_ts.state_bits() == 4 and counter_ts.input_bits() == 2


def test_counter_semantics(counter_ts):
    state = {"count_out": 0}
    # hold reset: stays at zero even with enable high
    state, outs = simulate_step(counter_ts, state,
                                {"rst_n_in": 0, "en_in": 1})
    assert state["count_out"] == 0 and outs["count_out"] == 0
    # count up while enabled, hold while disabled, wrap at 16
    for expect in (1, 2, 3):
        state, _ = simulate_step(counter_ts, state,
                                 {"rst_n_in": 1, "en_in": 1})
        assert state["count_out"] == expect
    state, _ = simulate_step(counter_ts, state, {"rst_n_in": 1, "en_in": 0})
    assert state["count_out"] == 3
    state = {"count_out": 15}
    state, _ = simulate_step(counter_ts, state, {"rst_n_in": 1, "en_in": 1})
    assert state["count_out"] == 0


def test_line_map_points_at_the_taken_assignment():
    unit, _ = parse_source(COUNTER)
    ts, line_map, _ = elaborate(unit, "counter")
    expr = line_map["count_out"]
    # line 10 is the reset assignment, line 12 the increment
    assert eval_expr(expr, {"rst_n_in": 0, "en_in": 1, "count_out": 5}) == 10
    assert eval_expr(expr, {"rst_n_in": 1, "en_in": 1, "count_out": 5}) == 12
    assert eval_expr(expr, {"rst_n_in": 1, "en_in": 0, "count_out": 5}) == 0


def test_unpacked_array_becomes_per_word_state():
    ts, _ = compile_ts(RAM, "ram2")
    names = sorted(s.name for s in ts.states)
    assert names == ["mem_q[0]", "mem_q[1]", "mem_q[2]", "mem_q[3]"]
    assert all(s.width == 8 and s.reset == 0 for s in ts.states)

    state = {n: 0 for n in names}
    state, _ = simulate_step(ts, state, {"rst_n_in": 1, "we_in": 1,
                                         "addr_in": 2, "wdata_in": 0xAB})
    assert state["mem_q[2]"] == 0xAB
    assert state["mem_q[0]"] == 0
    _, outs = simulate_step(ts, state, {"rst_n_in": 1, "we_in": 0,
                                        "addr_in": 2, "wdata_in": 0})
    assert outs["rdata_out"] == 0xAB


def test_instance_flattening():
    ts, _ = compile_ts(PAIR, "top")
    state = {s.name: 0 for s in ts.states}
    state, _ = simulate_step(ts, state, {"rst_n_in": 1, "d_in": 0})
    assert state[ts.states[0].name] == 1  # q <= !d
    state, _ = simulate_step(ts, state, {"rst_n_in": 1, "d_in": 1})
    assert state[ts.states[0].name] == 0


def test_missing_top_module_is_a_diagnostic():
    unit, _ = parse_source(COUNTER)
    ts, _, diags = elaborate(unit, "nonexistent")
    assert ts is None and diags


def test_value_range_checks(counter_ts):
    import pytest

    with pytest.raises(ValueError):
        simulate_step(counter_ts, {"count_out": 16},
                      {"rst_n_in": 1, "en_in": 0})
    with pytest.raises(ValueError):
        simulate_step(counter_ts, {"count_out": 0},
                      {"rst_n_in": 2, "en_in": 0})


@settings(deadline=None, max_examples=60)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1),
                          st.integers(0, 3), st.integers(0, 255)),
                min_size=1, max_size=20))
def test_compiled_stepper_matches_interpreter(stimuli):
    ts, _ = compile_ts(RAM, "ram2")
    step = compile_stepper(ts)
    state = {s.name: 0 for s in ts.states}
    fast_state = tuple(0 for _ in ts.states)
    for rst, we, addr, data in stimuli:
        ins = {"rst_n_in": rst, "we_in": we, "addr_in": addr,
               "wdata_in": data}
        state, outs = simulate_step(ts, state, ins)
        fast_state, env = step(fast_state, tuple(ins[n] for n, _ in ts.inputs))
        assert fast_state == tuple(state[s.name] for s in ts.states)
        for n in ts.outputs:
            assert env[n] == outs[n]
