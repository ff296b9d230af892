from __future__ import annotations

import string

from hypothesis import given, strategies as st

from svsec.frontend import KEYWORDS, TokenKind, tokenize


def kinds(src):
    toks, _ = tokenize(src)
    return [(t.kind, t.text) for t in toks]


def test_identifiers_and_keywords():
    assert kinds("module foo") == [(TokenKind.KEYWORD, "module"),
                                   (TokenKind.IDENT, "foo")]
    assert all(kind is TokenKind.KEYWORD
               for kind, _ in kinds(" ".join(sorted(KEYWORDS))))


def test_sized_and_unsized_literals():
    toks, diags = tokenize("4'hA 8'b0101 'h1 '0 12 3'd7")
    assert not diags
    assert [t.text for t in toks] == ["4'hA", "8'b0101", "'h1", "'0", "12",
                                      "3'd7"]


def test_comments_and_whitespace_produce_no_tokens():
    toks, diags = tokenize("// line comment\n/* block\ncomment */  \t\n")
    assert toks == [] and not diags


def test_stray_quote_after_literal_is_an_error():
    # 'h0' — the trailing quote starts a literal with no digits
    toks, diags = tokenize("addr == 'h0' && rw")
    assert diags, "stray quote must produce a diagnostic"


def test_operators_longest_match():
    assert [text for _, text in kinds("a |-> b |=> c <= d == e")] \
        == ["a", "|->", "b", "|=>", "c", "<=", "d", "==", "e"]


def test_line_and_column_tracking():
    toks, _ = tokenize("a\n  bb\n")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert (toks[1].line, toks[1].col) == (2, 3)


@given(st.text(alphabet=string.printable, max_size=200))
def test_tokenize_is_total(src):
    # Any input yields a token stream plus diagnostics, never a crash.
    toks, diags = tokenize(src)
    assert isinstance(toks, list) and isinstance(diags, list)


@given(st.lists(st.sampled_from(sorted(KEYWORDS) + ["x", "y12", "_z"]),
                max_size=30))
def test_word_stream_round_trips(words):
    toks, diags = tokenize(" ".join(words))
    assert not diags
    assert [t.text for t in toks] == words
