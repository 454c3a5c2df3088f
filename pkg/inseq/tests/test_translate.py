import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.c_core import c_behavior_at, c_left, c_right, exits
from algebra.cg_core import cg_behavior_at, cg_left, cg_right
from algebra.errors import BadBound, BadK, GotoExceedsK, KTooSmall
from algebra.pga_core import pga_behavior
from algebra.thread_core import bisimilar
from algebra.translate import (
    ROUTES,
    c2cg,
    c2cg_hom,
    c2cg_positional,
    c2pga,
    cg2c,
    cg2c_hom,
    eliminate_backward,
    max_goto_label,
    pga2c,
    program_length,
    resolve_k,
    route_report,
    run_route,
    to_program,
)
from models.instructions import BasicInstr, TestInstr
from models.thread import ThreadSpec
from tests.strategies import c_inseqs, cg_inseqs, pga_terms
from utils.parser import parse_c, parse_cg, parse_pga, parse_spec
from utils.samples import GENERATORS


class TestEliminateBackward:
    def test_blocks(self):
        assert str(eliminate_backward(parse_c("\\a"))) == "/a;\\#4;#"
        assert str(eliminate_backward(parse_c("!"))) == "!;#;#"
        assert str(eliminate_backward(parse_c("-\\b"))) == "-/b;\\#4;\\#8"
        assert str(eliminate_backward(parse_c("/#2"))) == "/#6;#;#"

    def test_to_program(self):
        assert str(to_program(parse_c("/a"), 2)) == "/#3;#;#;/a;#;#;\\#3"

    def test_to_program_bound(self):
        with pytest.raises(BadBound):
            to_program(parse_c("/a"), 1)
        with pytest.raises(BadBound):
            to_program(parse_c("/#5"), 3)


class TestPga:
    def test_c2pga_halt(self):
        term = c2pga(parse_c("!"))
        assert term.prefix == ()
        assert len(term.loop) == 9
        assert pga_behavior(term) == ThreadSpec.halt()

    def test_c2pga_loop(self):
        expected = parse_spec("P0 = a . P1 ; P1 = a ? P2 : P0 ; P2 = S")
        assert bisimilar(pga_behavior(c2pga(parse_c("/a;+/a;!;\\#3"))), expected)

    def test_c2pga_abort(self):
        assert pga_behavior(c2pga(parse_c("#"))) == ThreadSpec.dead()

    def test_pga2c(self):
        assert str(pga2c(parse_pga("a;(b)^w"))) == "/a;/b;\\#1;\\#1"
        assert str(pga2c(parse_pga("#0"))) == "#"
        assert str(pga2c(parse_pga("(a;+b;c)^w"))) == "/a;+/b;/c;\\#3;\\#3"


class TestC2Cg:
    def test_c2cg(self):
        assert cg_left(c2cg(parse_c("/#1;!"))) == ThreadSpec.halt()
        Y = c2cg(parse_c("\\#2;-\\c"))
        assert cg_left(Y) == ThreadSpec.dead()
        assert bisimilar(cg_right(Y), parse_spec("P0 = c . P1 ; P1 = D"))

    def test_block_sizes(self):
        assert len(c2cg(parse_c("!"))) == 5
        assert len(c2cg_positional(parse_c("/a"), 2)) == 6
        assert len(c2cg_positional(parse_c("+/a"), 3)) == 7

    def test_positional_labels(self):
        assert str(c2cg_positional(parse_c("/#2"), 2)) == "/G1;\\L1;/L1;/G0;\\G1"

    def test_positional_preconditions(self):
        with pytest.raises(BadK):
            c2cg_positional(parse_c("!"), 1)
        with pytest.raises(KTooSmall):
            c2cg_positional(parse_c("/#4"), 3)

    def test_hom_size(self):
        assert len(c2cg_hom(parse_c("/#2;!"), 2)) == 28

    def test_hom_preconditions(self):
        with pytest.raises(KTooSmall):
            c2cg_hom(parse_c("\\#3"), 2)
        with pytest.raises(BadK):
            c2cg_hom(parse_c("!"), 1)


class TestCg2C:
    def test_cg2c(self, goto_program):
        assert str(cg2c(goto_program)) == "/b;/#2;/a;/#1;!"

    def test_orphans_jump_out_of_range(self):
        assert str(cg2c(parse_cg("/L0;\\G0;/G0;\\L0"))) == "/#1;\\#2;/#2;\\#1"

    def test_highway(self):
        assert str(cg2c_hom(parse_cg("/G0"), 0)) == "/#4;/#4;/#8;\\#5;/#5"

    def test_highway_size(self, goto_program):
        for k in (0, 1, 2, 3):
            assert len(cg2c_hom(goto_program, k)) == (2 * k + 5) * len(goto_program)

    def test_highway_preconditions(self):
        assert max_goto_label(parse_cg("/G3;\\G1")) == 3
        with pytest.raises(GotoExceedsK):
            cg2c_hom(parse_cg("/G3"), 2)
        with pytest.raises(BadK):
            cg2c_hom(parse_cg("/a"), -1)


class TestRoutes:
    def test_report_factor(self):
        X = parse_c("/#2;!")
        Y = run_route("c2cg-hom", X, 2)
        report = route_report("c2cg-hom", X, Y, 2)
        assert report.factor == 14
        assert report.output_length == 28

    def test_report_without_factor(self):
        X = parse_c("!")
        report = route_report("c2pga", X, run_route("c2pga", X))
        assert report.factor is None
        assert report.output_length == 9

    def test_resolve_k(self):
        assert resolve_k("cg2c", parse_cg("/G5"), None, 2) is None
        assert resolve_k("cg2c-hom", parse_cg("/G5"), None, 2) == 5
        assert resolve_k("c2cg-hom", parse_c("/#1"), None, 3) == 3
        assert resolve_k("c2cg-hom", parse_c("/#4"), None, 2) == 4
        assert resolve_k("c2cg-hom", parse_c("/#4"), 7, 2) == 7

    def test_checked_pga2c(self):
        term = parse_pga("-c;#4;(a;#5;c)^w")
        assert run_route("pga2c", term, check=True) == pga2c(term)

    def test_program_length(self):
        assert program_length(parse_pga("a;(b;c)^w")) == 3
        assert program_length(parse_c("/a;!")) == 2


@pytest.mark.parametrize("name", sorted(ROUTES))
def test_route_identity_on_random_inputs(name):
    route = ROUTES[name]
    rng = random.Random(name)
    for _ in range(40):
        X = GENERATORS[route.source](rng, 6)
        k = resolve_k(name, X, None, 2)
        Y = run_route(name, X, k)
        assert route.check(X, Y, k), f"{name} on {X}"
        report = route_report(name, X, Y, k)
        assert report.output_length == program_length(Y)


@settings(max_examples=100, deadline=None)
@given(c_inseqs())
def test_eliminate_backward_is_forward_and_uniform(X):
    Y = eliminate_backward(X)
    assert all(u.forward for u in Y.instrs if isinstance(u, (BasicInstr, TestInstr)))
    for i in range(1, len(X) + 1):
        assert bisimilar(c_behavior_at(X, i), c_behavior_at(Y, 3 * (i - 1) + 1))


@settings(max_examples=100, deadline=None)
@given(c_inseqs())
def test_to_program_has_no_exits(X):
    Y = to_program(X, max(2, max((u.counter for u in X.instrs if u.kind == "jump"), default=0)))
    assert exits(Y) == set()
    assert bisimilar(c_left(X), c_left(Y))
    assert bisimilar(c_right(X), c_right(Y))


@settings(max_examples=100, deadline=None)
@given(c_inseqs(), c_inseqs())
def test_homomorphisms(X, Y):
    assert eliminate_backward(X + Y) == eliminate_backward(X) + eliminate_backward(Y)
    assert c2cg_hom(X + Y, 6) == c2cg_hom(X, 6) + c2cg_hom(Y, 6)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_c2cg_hom_is_uniform_at_both_ends(k, data):
    X = data.draw(c_inseqs(max_length=6, max_counter=k))
    Y = c2cg_hom(X, k)
    b = 4 * k + 6
    assert len(Y) == b * len(X)
    for i in range(1, len(X) + 1):
        expected = c_behavior_at(X, i)
        assert bisimilar(expected, cg_behavior_at(Y, b * (i - 1) + 1))
        assert bisimilar(expected, cg_behavior_at(Y, b * i))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([0, 1, 2, 3]), st.data())
def test_cg2c_hom_is_uniform(k, data):
    X = data.draw(cg_inseqs(max_length=6, max_label=k))
    Y = cg2c_hom(X, k)
    b = 2 * k + 5
    assert len(Y) == b * len(X)
    for i in range(1, len(X) + 1):
        assert bisimilar(cg_behavior_at(X, i), c_behavior_at(Y, b * (i - 1) + 1))


@settings(max_examples=100, deadline=None)
@given(cg_inseqs(), cg_inseqs())
def test_highway_is_a_homomorphism(X, Y):
    assert cg2c_hom(X + Y, 3) == cg2c_hom(X, 3) + cg2c_hom(Y, 3)


@settings(max_examples=100, deadline=None)
@given(c_inseqs())
def test_pga_round_trip(X):
    assert bisimilar(c_left(pga2c(c2pga(X))), c_left(X))


@settings(max_examples=100, deadline=None)
@given(pga_terms())
def test_pga2c_preserves_behavior(term):
    assert bisimilar(pga_behavior(term), c_left(pga2c(term)))


@settings(max_examples=100, deadline=None)
@given(cg_inseqs())
def test_cg2c_is_pointwise(X):
    Y = cg2c(X)
    for i in range(0, len(X) + 2):
        assert bisimilar(cg_behavior_at(X, i), c_behavior_at(Y, i))
