"""
Tests for the problem-file parser, report rendering and the command-line app
"""

import json
from io import StringIO
from pathlib import Path

import pytest
from app import CoprimeApp
from cli.commands import CommandOptions, execute_command
from cli.lexer import tokenize
from cli.parser import build_module, parse_problem, render_problem
from cli.render import render_json, render_text
from utils.exceptions import LexicalError, SemanticError, SyntacticError

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run_app(*argv):
    """Run the app in-process; returns (exit code, stdout, stderr)"""
    out, err = StringIO(), StringIO()
    code = CoprimeApp(stdout=out, stderr=err).run([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


def problem_path(name):
    return PROBLEMS / name


class TestLexer:
    """Test tokenization"""

    def test_positions_are_one_based(self):
        """Test one-based token positions"""
        lines = tokenize("ring Z\n\n  module M = coker [[12]]  # comment\n")
        assert len(lines) == 2
        module = lines[1][0]
        assert (module.kind, module.line, module.column) == ("name", 3, 3)
        assert any(t.kind == "int" and t.value == 12 for t in lines[1])

    def test_bad_character(self):
        """Test lexical error location"""
        with pytest.raises(LexicalError) as exc:
            tokenize("ring Z\nmodule M = coker [[1 @ 2]]")
        assert (exc.value.line, exc.value.column) == (2, 22)


class TestParser:
    """Test problem parsing and its diagnostics"""

    def test_integer_problem(self):
        """Test an integer problem"""
        problem = parse_problem("ring Z\nmodule M = coker [[12]]\norder = (2), (3)\n")
        assert problem.ring.describe() == "Z"
        assert problem.module_decl().payload == ((12,),)
        assert [str(p) for p in problem.orders[0]] == ["(2)", "(3)"]

    def test_polynomial_entries(self):
        """Test polynomial matrix entries"""
        problem = parse_problem("ring GF(5)[x]\nmodule M = coker [[x^2 + 4*x]]\n")
        entry = problem.module_decl().payload[0][0]
        assert entry.format() == "x^2 + 4*x"

    def test_non_prime_modulus(self):
        """Test rejection of GF(4)"""
        with pytest.raises(SemanticError) as exc:
            parse_problem("ring GF(4)[x]\nmodule M = coker [[x]]\n")
        assert (exc.value.line, exc.value.column) == (1, 6)

    def test_unknown_variable(self):
        """Test an unknown variable"""
        with pytest.raises(SemanticError) as exc:
            parse_problem("ring Z\nmodule M = coker [[x]]\n")
        assert "unknown variable 'x'" in exc.value.message
        assert (exc.value.line, exc.value.column) == (2, 20)

    def test_non_monomial_generator(self):
        """Test a non-monomial generator"""
        with pytest.raises(SemanticError) as exc:
            parse_problem("ring Q[x,y] monomial\nmodule M = cyclic (x + y)\n")
        assert "non-monomial generator" in exc.value.message
        assert exc.value.line == 2

    def test_ring_must_come_first(self):
        """Test that the ring declaration comes first"""
        with pytest.raises(SemanticError):
            parse_problem("module M = coker [[2]]\nring Z\n")

    def test_missing_ring(self):
        """Test a missing ring declaration"""
        with pytest.raises(SyntacticError):
            parse_problem("# nothing here\n")

    def test_trailing_tokens(self):
        """Test trailing tokens"""
        with pytest.raises(SyntacticError):
            parse_problem("ring Z extra\n")

    def test_duplicate_name(self):
        """Test a duplicate name"""
        with pytest.raises(SemanticError) as exc:
            parse_problem("ring Z\nmodule M = coker [[2]]\nsubmodule M = span [[2]]\n")
        assert exc.value.line == 3

    def test_unresolved_chain_name(self):
        """Test an unresolved chain name"""
        with pytest.raises(SemanticError):
            parse_problem("ring Z\nmodule M = coker [[12]]\nchain = M, N\n")

    def test_module_kind_must_fit_ring(self):
        """Test module kind against ring kind"""
        with pytest.raises(SemanticError):
            parse_problem("ring Z\nmodule M = cyclic (x)\n")

    def test_cofinite_declaration(self):
        """Test a cofinite declaration"""
        problem = parse_problem("ring Z\nmodule M = cofinite scales (1) from 3 below 10 except (5)\n")
        module = build_module(problem, problem.module_decl())
        assert sorted(module.support.finite) == [3, 7]

    @pytest.mark.parametrize("path", sorted(PROBLEMS.glob("*.cpf")), ids=lambda p: p.name)
    def test_render_round_trip(self, path):
        """Test parse and render round trip over the bundled problems"""
        problem = parse_problem(path.read_text(encoding="utf-8"))
        assert parse_problem(render_problem(problem)) == problem


class TestRender:
    """Test report rendering"""

    def test_json_is_canonical(self):
        """Test canonical JSON"""
        assert render_json({'b': 1, 'a': [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'

    def test_text(self):
        """Test text rendering"""
        report = {'b': [1, 2], 'a': 1, 'c': {'d': True, 'e': None}}
        assert render_text(report) == "a: 1\nb: [1, 2]\nc:\n  d: yes\n  e: -\n"


class TestCommands:
    """Test command dispatch without the argument parser"""

    def test_envelope(self):
        """Test the report envelope keys"""
        problem = parse_problem(problem_path("z12.cpf").read_text(encoding="utf-8"))
        result = execute_command(problem, "ass")
        assert result.exit_code == 0
        assert result.payload['command'] == "ass"
        assert result.payload['ring'] == "Z"
        assert result.payload['result'] == {'ass': [['2'], ['3']]}
        assert set(result.payload) == {'schema_version', 'tool_version', 'command', 'ring', 'module', 'result'}

    def test_order_option_overrides_file(self):
        """Test that --order overrides the file order"""
        problem = parse_problem(problem_path("z12.cpf").read_text(encoding="utf-8"))
        result = execute_command(problem, "filt", CommandOptions(order="(3), (2)"))
        assert result.payload['result']['filtration']['order'] == [['3'], ['2']]


class TestApp:
    """End-to-end runs with exit codes"""

    def test_filtration(self):
        """Test the filt command"""
        code, out, _ = run_app("filt", problem_path("z12.cpf"), "--json")
        assert code == 0
        report = json.loads(out)
        assert report['result']['verification']['passed'] is True
        assert report['result']['filtration']['order'] == [['2'], ['3']]

    def test_json_is_deterministic(self):
        """Test that JSON output is deterministic"""
        first = run_app("verify", problem_path("z6.cpf"), "--json")
        second = run_app("verify", problem_path("z6.cpf"), "--json")
        assert first == second
        assert first[0] == 0

    def test_hand_written_chain(self):
        """Test verify on a hand-written chain"""
        code, out, _ = run_app("verify", problem_path("z12_chain.cpf"), "--json")
        assert code == 0
        assert json.loads(out)['result']['chain'] == ["M", "N"]

    def test_equivalence(self):
        """Test the equiv command"""
        code, out, _ = run_app("equiv", problem_path("z12.cpf"), "--json")
        assert code == 0
        assert json.loads(out)['result']['equivalence']['verdict'] == "equivalent"

    def test_swap(self):
        """Test the swap command"""
        code, out, _ = run_app("swap", problem_path("z6.cpf"), "--json")
        assert code == 0
        assert json.loads(out)['result']['after']['order'] == [['3'], ['2']]

    def test_swap_of_comparable_primes(self):
        """Test that swapping comparable primes exits with 2"""
        code, _, err = run_app("swap", problem_path("z_plus_z2.cpf"), "--json")
        assert code == 2
        assert json.loads(err)['error']['error_type'] == "SwapNotApplicableError"

    def test_extensions_of_cross(self):
        """Test extensions on k[x,y]/(xy)"""
        code, out, _ = run_app("extensions", problem_path("xy.cpf"), "--json")
        assert code == 0
        assert json.loads(out)['result']['survey']['hypothesis'] == "not satisfied"

    def test_decompose_refuses_cross(self):
        """Test that decompose refuses k[x,y]/(xy)"""
        code, out, err = run_app("decompose", problem_path("xy.cpf"), "--json")
        assert code == 3
        assert out == ""
        error = json.loads(err)['error']
        assert error['error_type'] == "ClosuresIntersectError"
        assert error['details']['witness'] == "1 ∉ (x, y)"

    def test_decompose_z30(self):
        """Test decompose on Z/30"""
        code, out, _ = run_app("decompose", problem_path("z30.cpf"), "--json")
        assert code == 0
        assert len(json.loads(out)['result']['decomposition']['components']) == 3

    def test_zero_module_has_no_primes(self):
        """Test ass on the zero module"""
        code, out, _ = run_app("ass", problem_path("zero.cpf"), "--json")
        assert code == 0
        assert json.loads(out)['result']['ass'] == []

    def test_oracle(self):
        """Test the oracle command"""
        code, out, _ = run_app("oracle", problem_path("gf5.cpf"), "--json")
        assert code == 0
        assert json.loads(out)['result']['agree'] is True

    def test_oracle_skips_infinite_module(self):
        """Test that the oracle skips an infinite module"""
        code, out, _ = run_app("oracle", problem_path("xy.cpf"), "--json")
        assert code == 0
        assert json.loads(out)['result']['oracle'] is None

    def test_omega_canonical(self):
        """Test the canonical omega chain"""
        code, out, _ = run_app("omega", problem_path("omega.cpf"), "--json")
        assert code == 0
        assert len(json.loads(out)['result']['terms']) == 5

    def test_omega_alternative_fails(self):
        """Test that the alternative omega chain fails verification"""
        code, out, _ = run_app("omega", problem_path("omega_alternative.cpf"), "--json")
        assert code == 3
        assert json.loads(out)['result']['verification']['passed'] is False

    def test_omega_finite_cross_check(self):
        """Test the cross-backend check on a finite support"""
        code, out, _ = run_app("omega", problem_path("omega_finite.cpf"), "--json")
        assert code == 0
        assert json.loads(out)['result']['cross_check'] is True

    def test_cofinite_module_rejects_filt(self):
        """Test that filt refuses a cofinite module"""
        code, _, err = run_app("filt", problem_path("omega.cpf"))
        assert code == 2
        assert json.loads(err)['error']['error_type'] == "UnsupportedBackendError"

    def test_parse_error(self, tmp_path):
        """Test exit code for a parse error"""
        bad = tmp_path / "bad.cpf"
        bad.write_text("ring GF(4)[x]\nmodule M = coker [[x]]\n", encoding="utf-8")
        code, out, err = run_app("ass", bad)
        assert code == 1
        assert out == ""
        error = json.loads(err)['error']
        assert error['details']['line'] == 1
        assert error['exit_code'] == 1

    def test_missing_file(self, tmp_path):
        """Test exit code for a missing file"""
        code, _, err = run_app("ass", tmp_path / "absent.cpf")
        assert code == 2
        assert json.loads(err)['error']['error_type'] == "FileNotFoundError"

    def test_text_output(self):
        """Test plain text output"""
        code, out, _ = run_app("ass", problem_path("z12.cpf"))
        assert code == 0
        assert "command: ass" in out
