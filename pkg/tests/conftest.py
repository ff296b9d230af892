from __future__ import annotations

import pytest

from svsec.frontend import parse_source
from svsec.ir.elaborate import elaborate

COUNTER = """\
module counter(
  input logic clk_in,
  input logic rst_n_in,
  input logic en_in,
  output logic [3:0] count_out
);

  always_ff @(posedge clk_in or negedge rst_n_in) begin
    if (!rst_n_in) begin
      count_out <= 4'h0;
    end else if (en_in) begin
      count_out <= count_out + 4'h1;
    end
  end
endmodule
"""


def compile_ts(source: str, top: str):
    unit, diags = parse_source(source)
    assert unit is not None, [d.message for d in diags]
    ts, line_map, ediags = elaborate(unit, top)
    assert ts is not None, [d.message for d in ediags]
    return ts, line_map


@pytest.fixture
def counter_ts():
    ts, _ = compile_ts(COUNTER, "counter")
    return ts
