from svsec.props.parse import PropertyAst, parse_property, PAST_DEPTH_CAP
from svsec.props.obligation import (SafetyObligation, compile_obligation,
                                    evaluate_on_trace, BAD)

__all__ = ["PropertyAst", "parse_property", "PAST_DEPTH_CAP",
           "SafetyObligation", "compile_obligation", "evaluate_on_trace",
           "BAD"]
