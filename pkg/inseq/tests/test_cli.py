import json
import logging
import re

import pytest

from algebra.c_core import c_left
from algebra.expressiveness import gen_a_plus_n_thread
from algebra.thread_core import action_power, bisimilar
from app import cli
from models.counter_set import CounterClass
from models.thread import ThreadSpec
from routes.validate import check_case
from utils.parser import parse_c, parse_spec


@pytest.fixture
def invoke(runner, settings, mocker):
    mocker.patch("app.Settings", return_value=settings)

    def _invoke(*args):
        return runner.invoke(cli, list(args))

    return _invoke


class TestBehave:
    def test_c(self, invoke, write):
        result = invoke("behave", "c", write("/a"))
        assert result.exit_code == 0
        assert result.output.strip() == "P0 = a . P1 ; P1 = D"

    def test_label_ping_pong(self, invoke, write):
        result = invoke("behave", "cg", write("/L1;\\L2"))
        assert result.output.strip() == "P0 = D"

    def test_pga(self, invoke, write):
        result = invoke("behave", "pga", write("(#3;a;b)^w"))
        assert result.output.strip() == "P0 = D"

    def test_from_right(self, invoke, write):
        path = write("/#3;\\#1;!;\\#2;#;+\\a")
        assert invoke("behave", "c", path).output.strip() == "P0 = D"
        assert invoke("behave", "c", path, "--from", "right").output.strip() == "P0 = a . P1 ; P1 = D"

    def test_bad_start(self, invoke, write):
        result = invoke("behave", "c", write("/a"), "--from", "middle")
        assert result.exit_code == 2

    def test_parse_error(self, invoke, write):
        result = invoke("behave", "c", write("/a;\n/q?"))
        assert result.exit_code == 2
        assert "line 2, column 1" in result.output

    def test_relative_gotos(self, invoke, write):
        result = invoke("behave", "cg-rel", write("/G3;/L3;/a;/b"), "--k", "7")
        assert result.output.strip() == "P0 = b . P1 ; P1 = D"


class TestEquiv:
    def test_equivalent(self, invoke, write):
        result = invoke("equiv", write("P0 = a . P0"), write("/a;\\#1"), "--second-kind", "c")
        assert result.exit_code == 0
        assert result.output.strip() == "EQUIVALENT"

    def test_not_equivalent(self, invoke, write):
        result = invoke("equiv", write("!"), write("#"), "--first-kind", "c", "--second-kind", "c")
        assert result.exit_code == 1
        assert result.output.strip() == "NOT EQUIVALENT after (no actions)"

    def test_identical_files(self, invoke, write):
        path = write("+/a;\\#1;!")
        assert invoke("equiv", path, path, "--first-kind", "c", "--second-kind", "c").exit_code == 0

    def test_translation_keeps_behavior(self, invoke, write):
        translated = invoke("translate", write("/a"), "--route", "c2cg").output
        result = invoke("equiv", write("/a"), write(translated), "--first-kind", "c", "--second-kind", "cg")
        assert result.output.strip() == "EQUIVALENT"

    def test_trace(self, invoke, write):
        result = invoke("equiv", write("P0 = a . P1 ; P1 = S"), write("P0 = a ? P1 : P2 ; P1 = S ; P2 = D"))
        assert result.exit_code == 1
        assert result.output.strip() == "NOT EQUIVALENT after a=false"


class TestTranslate:
    def test_program(self, invoke, write):
        result = invoke("translate", write("/G1;/L1"), "--route", "cg2c")
        assert result.exit_code == 0
        assert result.output.strip() == "/#1;/#1"

    def test_report_as_json(self, invoke, write):
        result = invoke("translate", write("/a;!"), "--route", "c2cg-hom", "--report", "--json")
        assert result.exit_code == 0
        program, report = result.output.split("\n", 1)
        assert len(program.split(";")) == 28
        report = json.loads(report)
        assert report["factor"] == 14
        assert report["k"] == 2
        assert report["output_length"] == 28

    def test_report_as_text(self, invoke, write):
        result = invoke("translate", write("!"), "--route", "c2pga", "--report")
        assert "output_length: 9" in result.output
        assert "factor" not in result.output

    def test_k_too_small(self, invoke, write):
        result = invoke("translate", write("/#4"), "--route", "c2cg-hom", "--k", "2")
        assert result.exit_code == 3
        assert "KTooSmall" in result.output

    def test_unknown_route(self, invoke, write):
        assert invoke("translate", write("/a"), "--route", "c2x").exit_code == 2


class TestAnalyze:
    PROGRAM = "/b;/G0;/a;/L0;!"

    def test_text(self, invoke, write):
        result = invoke("analyze", "cg", write(self.PROGRAM))
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert "length: 5" in lines
        assert "reachable from 1: 1 2 4 5" in lines
        assert "unreachable: 3" in lines
        assert "lnf: yes" in lines
        assert "behavior: P0 = b . P1 ; P1 = S" in lines

    def test_json(self, invoke, write):
        result = invoke("analyze", "cg", write(self.PROGRAM), "--json")
        report = json.loads(result.output)
        assert report["unreachable"] == [3]
        assert report["exits"] == []
        assert report["orphaned"] == []
        assert report["labels"]["classes"] == [[2, 4]]

    def test_c_has_no_label_fields(self, invoke, write):
        report = json.loads(invoke("analyze", "c", write("/#2;/a;!"), "--json").output)
        assert report["reachable"] == [1, 3]
        assert report["labels"] is None


class TestLabels:
    def test_lnf(self, invoke, write):
        result = invoke("lnf", write("/G7;/a;/L7;/b;/G7;/c;/L7"))
        assert result.output.strip() == "/G1;/a;/L1;/b;/G2;/c;/L2"

    def test_free(self, invoke, write):
        result = invoke("free", write("/G0"), "0", "1", "2")
        assert result.output.strip() == "/G3"

    def test_rel(self, invoke, write):
        result = invoke("rel", write("/a;\\G1"), "--k", "3")
        assert len(result.output.strip().split(";")) == 2 * 18

    def test_rel_bad_k(self, invoke, write):
        assert invoke("rel", write("/a"), "--k", "1").exit_code == 3


class TestConstruct:
    def test_connect(self, invoke, write):
        spec = "P0 = a ? P1 : P0 ; P1 = S"
        result = invoke("construct", write(spec), "--fwd", "every 2 from 4 offset 0", "--bwd", "every 2 from 1 offset 1")
        assert result.exit_code == 0
        assert bisimilar(c_left(parse_c(result.output)), parse_spec(spec))

    def test_logs_the_counters_used(self, invoke, write, caplog):
        caplog.set_level(logging.INFO, logger="routes.construct")
        spec = "P0 = a ? P1 : P0 ; P1 = S"
        invoke("construct", write(spec), "--fwd", "every 2 from 4 offset 0", "--bwd", "every 2 from 1 offset 1")
        message = next(r.getMessage() for r in caplog.records if "forward counters" in r.getMessage())
        forward, backward = re.findall(r"\[([\d, ]*)\]", message)
        assert all(int(k) % 2 == 0 for k in forward.split(",") if k.strip())
        assert all(int(k) % 2 == 1 for k in backward.split(",") if k.strip())

    def test_forward_only_rejects_loops(self, invoke, write):
        result = invoke("construct", write("P0 = a . P0"), "--method", "forward-only")
        assert result.exit_code == 3

    def test_bad_counter_set(self, invoke, write):
        result = invoke("construct", write("P0 = S"), "--fwd", "every 0")
        assert result.exit_code == 2


class TestGen:
    def test_a_plus_n(self, invoke):
        result = invoke("gen", "a-plus-n", "2")
        assert result.exit_code == 0
        assert bisimilar(parse_spec(result.output), gen_a_plus_n_thread("a", 2))

    def test_c_tree(self, invoke):
        result = invoke("gen", "c-tree", "1")
        assert bisimilar(c_left(parse_c(result.output)), action_power("a", 1, ThreadSpec.dead()))

    def test_trees_use_one_action(self, invoke):
        assert invoke("gen", "cg-tree", "2", "--action", "b").exit_code == 2

    def test_n_is_positive(self, invoke):
        assert invoke("gen", "one-dir", "0").exit_code == 2


class TestValidate:
    def test_passes(self, invoke):
        result = invoke("validate", "c2pga", "--count", "5", "--workers", "2")
        assert result.exit_code == 0
        assert result.output.strip() == "c2pga: 5/5 passed (seed 0)"

    def test_json(self, invoke):
        result = invoke("validate", "cg2c", "--count", "4", "--seed", "7", "--json")
        summary = json.loads(result.output)
        assert summary["seed"] == 7
        assert summary["failed"] == 0
        assert summary["counterexamples"] == []

    def test_failures_exit_one(self, invoke, mocker):
        broken = mocker.Mock(check=lambda X, Y, k: False, source="c", correspondence="|X| = |Y|")
        mocker.patch("routes.validate.ROUTES", {"c2pga": broken})
        result = invoke("validate", "c2pga", "--count", "2")
        assert result.exit_code == 1
        assert "0/2 passed" in result.output

    def test_crashing_case_is_a_counterexample(self, invoke, mocker):
        mocker.patch("routes.validate.run_route", side_effect=AssertionError("stage changed behavior"))
        result = invoke("validate", "c2pga", "--count", "3")
        assert result.exit_code == 1
        assert "0/3 passed" in result.output
        assert "AssertionError: stage changed behavior" in result.output


def test_check_case_records_invalid_models(mocker):
    def invalid(*args, **kwargs):
        return CounterClass(modulus=2, residue=3)

    mocker.patch("routes.validate.run_route", side_effect=invalid)
    counterexample = check_case("cg2c", 0, 0, 4, 2)
    assert counterexample is not None
    assert counterexample.output is None
    assert counterexample.reason.startswith("ValidationError")
