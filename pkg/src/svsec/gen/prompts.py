"""Prompt rendering for catalog problems.

Every prompt opens with the task sentence and carries a lettered
instruction list: design I/O, the fixed module name, any
problem-specific behavioural notes, and five fixed rules that keep the
responses extractable (creativity, no refusals, compilable output, no
comments, no explanations).
"""

from __future__ import annotations

import string

from svsec.catalog.problems import ProblemSpec

FIXED_INSTRUCTIONS = (
    "Be creative!",
    "Do not say I am sorry. Always come up with some code.",
    "Make sure the program compiles and runs without any errors.",
    "Please do not add any comments in the code.",
    "Please do not give explanation for the code.",
)


def _port_phrase(port) -> str:
    if port.note:
        return f"{port.name} ({port.note})"
    if port.width > 1:
        return f"{port.name} ({port.width} bits)"
    return port.name


def io_instruction(spec: ProblemSpec) -> str:
    ins = [_port_phrase(p) for p in spec.ports if p.direction == "input"]
    outs = [_port_phrase(p) for p in spec.ports if p.direction == "output"]
    return f"Inputs: {', '.join(ins)} and Outputs: {', '.join(outs)}."


def instruction_list(spec: ProblemSpec) -> list[str]:
    if spec.prompt_io:
        body = list(spec.prompt_io) + list(spec.extra_instructions)
    else:
        body = ([io_instruction(spec)]
                + list(spec.extra_instructions)
                + [f"Module name should be {spec.module_name}."])
    return body + list(FIXED_INSTRUCTIONS)


def render_prompt(spec: ProblemSpec) -> str:
    parts = [f"Write a unique SystemVerilog code that {spec.description}."]
    parts.append("Instructions:")
    for letter, text in zip(string.ascii_lowercase, instruction_list(spec)):
        parts.append(f"{letter}. {text}")
    return " ".join(parts)
