from __future__ import annotations

import json
from collections import Counter

import pytest
import requests

from svsec.catalog import list_problems
from svsec.gen import StubProvider, generate_batch
from svsec.gen.extract import extract_code
from svsec.gen.prompts import FIXED_INSTRUCTIONS, render_prompt
from svsec.gen.provider import (ProviderConfig, ProviderError,
                                load_providers, request_completion)
from svsec.gen.stub import DEFAULT_MIX, KINDS, STUB_PROVIDERS


def spec_for(cwe, difficulty):
    (spec,) = list_problems(cwe=cwe, difficulty=difficulty)
    return spec


# ------------------------------------------------------------- prompts

PROMPT_REGISTER_INTERFACE = (
    "Write a unique SystemVerilog code that creates a register interface "
    "from address space 0x0 to 0x01 for its configuration registers, with "
    "the last one treated as reserved register (i.e. 0x01). Instructions: "
    "a. Inputs: clk_in, rst_n_in, rw_in (0 read, 1 write), data_in (8 "
    "bits), addr_in (8 bits) and Outputs: data_out (8 bits). b. Read and "
    "write operations always happen one clock cycle after the rw_in input "
    "changes. c. Module name should be register_interface. d. Be creative! "
    "e. Do not say I am sorry. Always come up with some code. f. Make sure "
    "the program compiles and runs without any errors. g. Please do not "
    "add any comments in the code. h. Please do not give explanation for "
    "the code."
)

def test_single_module_prompt_renders_exactly():
    assert render_prompt(spec_for(1209, "basic")) == PROMPT_REGISTER_INTERFACE


def test_multi_module_prompt_structure():
    prompt = render_prompt(spec_for(1276, "advanced"))
    assert prompt.startswith("Write a unique SystemVerilog code that "
                             "creates two modules: soc and periph_fifo. "
                             "Instructions: a. For the module soc: "
                             "Inputs are clk_in, rst_n_in, rw_in "
                             "(0 for read, 1 for write), id_in (8 bits), "
                             "data_in (8 bits)")
    assert "b. For the module periph_fifo:" in prompt
    assert "c. The module periph_fifo is instantiated in soc" in prompt
    assert "Clock and reset of both modules are also connected." in prompt
    assert "FIFO of depth 8" in prompt
    assert "only for id_in equal to 0x3, 0x4 and 0x7" in prompt
    # the fixed tail picks up after the problem-specific letters a-e
    assert "f. Be creative! g. Do not say I am sorry." in prompt
    assert prompt.endswith("j. Please do not give explanation for the code.")
    # multi-module prompts carry no single-module-name instruction
    assert "Module name should be" not in prompt


def test_every_prompt_carries_the_fixed_instructions():
    for spec in list_problems():
        prompt = render_prompt(spec)
        for inst in FIXED_INSTRUCTIONS:
            assert inst in prompt, spec.problem_id
        if not spec.prompt_io:
            assert f"Module name should be {spec.module_name}." in prompt
        # lettered list stays within a..z
        assert len(prompt.split(" Instructions: ")[1]) > 0


# ---------------------------------------------------------------- stub

def test_stub_counts_follow_the_mix_exactly():
    stub = StubProvider(seed=0, n=20)
    assert stub.counts() == (6, 10, 3, 1)
    assert StubProvider(n=10).counts() == (3, 5, 2, 0)
    for n in (1, 7, 13, 20, 33):
        assert sum(StubProvider(n=n).counts()) == n
    with pytest.raises(ValueError):
        StubProvider(mix=(0.5, 0.5, 0.5, 0.0))


def test_stub_plans_are_deterministic_and_distinct():
    stub = StubProvider(seed=1, n=20)
    p1 = stub.plan("stub-a", "cwe1209_basic")
    assert p1 == StubProvider(seed=1, n=20).plan("stub-a", "cwe1209_basic")
    assert Counter(p1) == dict(zip(KINDS, (6, 10, 3, 1)))
    # different providers / problems / seeds shuffle differently
    assert p1 != stub.plan("stub-b", "cwe1209_basic") or \
        p1 != stub.plan("stub-a", "cwe1223_basic")
    assert StubProvider(seed=2, n=20).plan("stub-a", "cwe1209_basic") != p1


def test_stub_outputs_by_kind():
    stub = StubProvider(seed=0, n=20)
    spec = spec_for(1234, "basic")
    plan = stub.plan("stub-a", spec.problem_id)
    for i, kind in enumerate(plan):
        raw = stub.complete("stub-a", spec, i)
        if kind == "refusal":
            assert "I am sorry" in raw and "module" not in raw
        elif kind == "broken":
            assert "endmodule" not in raw
        else:
            assert "```systemverilog" in raw and "endmodule" in raw


# ------------------------------------------------------------- extract

def test_extract_prefers_fenced_blocks():
    raw = ("Here you go:\n```systemverilog\nmodule m(); endmodule\n```\n"
           "And prose mentioning module soup endmodule after.")
    assert extract_code(raw) == "module m(); endmodule\n"


def test_extract_falls_back_to_module_spans():
    raw = "Sure. module a(); endmodule then module b(); endmodule done"
    out = extract_code(raw)
    assert out.count("module") == 4  # two module/endmodule pairs
    assert out.startswith("module a")


def test_extract_refusals_and_noise_yield_none():
    assert extract_code("I am sorry, I cannot help with that.") is None
    assert extract_code("") is None
    assert extract_code("```python\nprint('hi')\n```") is None


def test_extract_is_idempotent_on_catalog_designs():
    from svsec.catalog.problems import design_text

    for spec in list_problems()[:6]:
        src = design_text(spec.correct_file)
        assert extract_code(src) == src


# ------------------------------------------------------------ provider

class FakeResponse:
    def __init__(self, status_code, content=None):
        self.status_code = status_code
        self._content = content

    def json(self):
        if self._content is None:
            raise ValueError("no body")
        return {"choices": [{"message": {"content": self._content}}]}


def make_cfg(**kw):
    kw.setdefault("provider_id", "test")
    kw.setdefault("endpoint", "https://example.invalid/v1/chat")
    kw.setdefault("model", "m")
    kw.setdefault("backoff_base_seconds", 0.01)
    return ProviderConfig(**kw)


def test_retry_then_success():
    calls = []

    def transport(url, json, headers, timeout):
        calls.append(json)
        if len(calls) < 3:
            return FakeResponse(503)
        return FakeResponse(200, "module m(); endmodule")

    naps = []
    out = request_completion(make_cfg(max_attempts=3), "prompt",
                             transport=transport, sleep=naps.append)
    assert out == "module m(); endmodule"
    assert len(calls) == 3
    assert naps == [0.01, 0.02]  # exponential backoff


def test_retries_exhausted():
    def transport(url, json, headers, timeout):
        raise requests.ConnectionError("nope")

    with pytest.raises(ProviderError, match="retries exhausted"):
        request_completion(make_cfg(max_attempts=2), "p",
                           transport=transport, sleep=lambda s: None)


def test_non_retryable_error_fails_fast():
    calls = []

    def transport(url, json, headers, timeout):
        calls.append(1)
        return FakeResponse(401)

    with pytest.raises(ProviderError, match="http 401"):
        request_completion(make_cfg(max_attempts=5), "p",
                           transport=transport, sleep=lambda s: None)
    assert len(calls) == 1


def test_auth_token_goes_to_header_only(monkeypatch):
    monkeypatch.setenv("TEST_PROVIDER_KEY", "s3cr3t-token")
    seen = {}

    def transport(url, json, headers, timeout):
        seen["headers"] = headers
        seen["body"] = json
        return FakeResponse(200, "ok module m(); endmodule")

    cfg = make_cfg(auth_env="TEST_PROVIDER_KEY")
    request_completion(cfg, "prompt", transport=transport)
    assert seen["headers"]["Authorization"] == "Bearer s3cr3t-token"
    assert "s3cr3t-token" not in json.dumps(seen["body"])


def test_load_providers(tmp_path):
    cfg = tmp_path / "providers.yaml"
    cfg.write_text(
        "providers:\n"
        "  - id: alpha\n"
        "    endpoint: https://example.invalid/a\n"
        "    model: alpha-large\n"
        "    temperature: 0.7\n"
        "    auth_env: ALPHA_KEY\n"
        "  - id: beta\n"
        "    endpoint: https://example.invalid/b\n"
        "    model: beta-base\n")
    out = load_providers(str(cfg))
    assert [p.provider_id for p in out] == ["alpha", "beta"]
    assert out[0].temperature == 0.7 and out[0].auth_env == "ALPHA_KEY"
    assert out[1].temperature == 1.0


# --------------------------------------------------------------- batch

def test_generate_batch_counts_and_cache(tmp_path):
    specs = list_problems(difficulty="basic")[:2]
    stub = StubProvider(seed=0, n=3)
    gens = generate_batch(specs, None, 3, tmp_path, stub=stub, workers=2)
    assert len(gens) == len(STUB_PROVIDERS) * len(specs) * 3
    assert not any(g.from_cache for g in gens)
    # rerun resumes entirely from cache, byte-identical raws
    again = generate_batch(specs, None, 3, tmp_path, stub=stub, workers=2)
    assert all(g.from_cache for g in again)
    assert [(g.provider_id, g.problem_id, g.regen_index, g.raw)
            for g in sorted(gens, key=lambda g: (g.provider_id,
                                                 g.problem_id,
                                                 g.regen_index))] == \
           [(g.provider_id, g.problem_id, g.regen_index, g.raw)
            for g in sorted(again, key=lambda g: (g.provider_id,
                                                  g.problem_id,
                                                  g.regen_index))]


def test_generate_batch_records_failures_without_aborting(tmp_path):
    calls = []

    def transport(url, json, headers, timeout):
        calls.append(url)
        if len(calls) % 2:
            return FakeResponse(400)
        return FakeResponse(200, "module m(); endmodule")

    specs = list_problems(difficulty="basic")[:1]
    providers = [make_cfg(provider_id="only", max_attempts=1)]
    gens = generate_batch(specs, providers, 4, tmp_path, workers=1,
                          transport=transport)
    assert len(gens) == 4
    assert sum(1 for g in gens if not g.ok) == 2
    assert all(g.source is None for g in gens if not g.ok)


def test_cache_resume_skips_provider_calls(tmp_path):
    counter = {"calls": 0}

    def transport(url, json, headers, timeout):
        counter["calls"] += 1
        return FakeResponse(200, "module m(); endmodule")

    specs = list_problems(difficulty="basic")[:1]
    providers = [make_cfg(provider_id="only")]
    generate_batch(specs, providers, 3, tmp_path, workers=1,
                   transport=transport)
    assert counter["calls"] == 3
    generate_batch(specs, providers, 3, tmp_path, workers=1,
                   transport=transport)
    assert counter["calls"] == 3  # untouched on resume


def test_no_secrets_in_cache_files(tmp_path, monkeypatch):
    monkeypatch.setenv("TEST_PROVIDER_KEY", "hunter2-secret")

    def transport(url, json, headers, timeout):
        return FakeResponse(200, "module m(); endmodule")

    specs = list_problems(difficulty="basic")[:1]
    providers = [make_cfg(provider_id="only", auth_env="TEST_PROVIDER_KEY")]
    generate_batch(specs, providers, 2, tmp_path, workers=1,
                   transport=transport)
    for path in tmp_path.rglob("*.json"):
        assert "hunter2-secret" not in path.read_text(encoding="utf-8")
