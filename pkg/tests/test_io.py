from __future__ import annotations

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpxprobe.mpxio import ParseError, parse_multiplex, parse_multiplex_with_stats, write_multiplex

from conftest import random_multiplex

TOY1_TEXT = "a,b,L1\nb,c,L1\nb,c,L2\nc,d,L2"


def test_bare_edge_list_parses_to_toy1(toy1):
    assert parse_multiplex(TOY1_TEXT) == toy1


def test_parse_accepts_bytes_and_streams(toy1):
    assert parse_multiplex(TOY1_TEXT.encode()) == toy1
    assert parse_multiplex(io.BytesIO(TOY1_TEXT.encode())) == toy1
    assert parse_multiplex(io.StringIO(TOY1_TEXT)) == toy1


def test_declarations_only_gives_isolates():
    net = parse_multiplex("#LAYERS\nL1\nL2\n#ACTORS\nx\ny\n#EDGES\n")
    assert net.layers == ("L1", "L2")
    assert net.actors == frozenset({"x", "y"})
    assert all(not es for es in net.edges.values())


def test_crlf_comments_and_blank_lines(toy1):
    text = "# a file\r\n\r\n#LAYERS\r\nL1\r\nL2\r\n#EDGES\r\na,b,L1 # trailing note\r\nb,c,L1\r\nb,c,L2\r\nc,d,L2\r\n"
    assert parse_multiplex(text) == toy1


def test_layer_declaration_order_is_kept():
    net = parse_multiplex("#LAYERS\nZ\nA\n#EDGES\nx,y,A\nx,y,Z")
    assert net.layers == ("Z", "A")


def test_malformed_line_reports_number():
    with pytest.raises(ParseError, match="line 3"):
        parse_multiplex("a,b,L1\nb,c,L1\nnot-an-edge-line\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_multiplex("#LAYERS\nbad,label\n")


def test_duplicates_collapsed_and_self_loops_skipped():
    net, stats = parse_multiplex_with_stats("a,b,L1\nb,a,L1\nc,c,L1\n")
    assert net.edges["L1"] == frozenset({("a", "b")})
    assert stats.duplicate_edges_collapsed == 1
    assert stats.self_loops_skipped == 1
    assert "c" in net.actors


def test_strict_mode_requires_declarations():
    text = "#LAYERS\nL1\n#ACTORS\na\nb\n#EDGES\na,b,L1\n"
    assert parse_multiplex(text, strict=True).edges["L1"] == frozenset({("a", "b")})
    with pytest.raises(ParseError, match="undeclared layer"):
        parse_multiplex("#EDGES\na,b,L1\n", strict=True)
    with pytest.raises(ParseError, match="undeclared actor"):
        parse_multiplex("#LAYERS\nL1\n#EDGES\na,b,L1\n", strict=True)


def test_write_is_deterministic(toy1):
    assert write_multiplex(toy1) == write_multiplex(toy1)
    assert write_multiplex(toy1).endswith(b"\n")


def test_write_parse_fixpoint(toy1):
    once = write_multiplex(toy1)
    assert write_multiplex(parse_multiplex(once)) == once


def test_isolated_actor_survives_round_trip():
    net = parse_multiplex("#LAYERS\nL1\n#ACTORS\nd\n#EDGES\na,b,L1\n")
    again = parse_multiplex(write_multiplex(net))
    assert "d" in again.actors
    assert again == net


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=40, deadline=None)
def test_round_trip_random_networks(seed):
    rng = np.random.default_rng(seed)
    net = random_multiplex(rng, max_actors=20, max_layers=4)
    assert parse_multiplex(write_multiplex(net)) == net


def test_edge_order_insensitive_layer_order_sensitive():
    a = parse_multiplex("#LAYERS\nL1\nL2\n#EDGES\na,b,L1\nc,d,L1\n")
    b = parse_multiplex("#LAYERS\nL1\nL2\n#EDGES\nc,d,L1\na,b,L1\n")
    assert a == b
    c = parse_multiplex("#LAYERS\nL2\nL1\n#EDGES\na,b,L1\nc,d,L1\n")
    assert a != c
