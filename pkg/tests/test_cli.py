import io
import subprocess
import sys

import pytest
from hypothesis import given, settings

from strategies import webs
from webcat.basis import equal
from webcat.cli import TermSyntaxError, main, parse_term, print_term, run
from webcat.web_terms import antenna, cap, cup, ident, tensor, then, to_oriented


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_straightening_term():
    m = parse_term("(cup * id(1)) ; (id(1) * cap)")
    assert m == then(tensor(cup(), ident(1)), tensor(ident(1), cap()))


def test_parse_scaled_antenna():
    m = parse_term("1/2 : split(1,1) ; cap")
    assert equal(m, antenna())


def test_boundary_error_names_both_words():
    with pytest.raises(TermSyntaxError) as err:
        parse_term("split(1,2) ; merge(2,1)")
    assert "(1,2)" in str(err.value) and "(2,1)" in str(err.value)
    assert err.value.line == 1


def test_syntax_error_position():
    with pytest.raises(TermSyntaxError) as err:
        parse_term("split(1,1) ;\n  (cap")
    assert (err.value.line, err.value.column) == (2, 7)


@pytest.mark.parametrize("source", ["split(1)", "frob(1,1)", "cap cup", "2 cap", "split(1,", "tagin"])
def test_malformed_terms(source):
    with pytest.raises(TermSyntaxError):
        parse_term(source)


def test_precedence_tensor_binds_tighter():
    assert parse_term("cup ; cap * id(0)") == then(cup(), cap())
    assert parse_term("id(1) * cup ; cap * id(1)") == then(tensor(ident(1), cup()), tensor(cap(), ident(1)))


def test_sums_and_negative_scalars():
    m = parse_term("x(1,1) + -1 : id(1) * id(1)")
    assert m.dom == (1, 1) and len(m.terms) == 2


def test_oriented_and_brauer_flavors():
    m = parse_term("lcup(1) ; uid(1) * tagout", "oriented")
    assert (m.dom, m.cod) == ((), (1, 1))
    assert parse_term("did(2)", "oriented").dom == (-2,)
    b = parse_term("x(1,1) ; x(1,1)", "brauer")
    assert b.flavor == "brauer"
    with pytest.raises(TermSyntaxError):
        parse_term("split(1,1)", "brauer")


@settings(max_examples=40)
@given(webs(max_layers=3, max_label=3))
def test_print_parse_round_trip(m):
    text = print_term(m)
    back = parse_term(text)
    assert back == m
    assert print_term(back) == text


@settings(max_examples=20)
@given(webs(max_layers=2, max_label=2))
def test_round_trip_oriented(m):
    o = to_oriented(m)
    assert parse_term(print_term(o), "oriented") == o


def test_dim_command():
    assert call("dim", "--dom", "1,1", "--cod", "1,1") == (0, "3\n", "")


def test_check_brauer_command():
    code, out, _ = call("check", "--suite", "brauer", "--max-label", "1")
    assert code == 0
    assert out.startswith("PASS ")


def test_equal_double_crossing():
    code, out, _ = call("equal", "--flavor", "pweb", "--lhs", "x(1,1);x(1,1)", "--rhs", "id(1)*id(1)")
    assert code == 0 and out.startswith("equal")


def test_not_equal_exit_code():
    code, out, _ = call("equal", "--lhs", "x(1,1)", "--rhs", "id(1)*id(1)")
    assert code == 1 and out.startswith("not equal")


def test_eval_dump():
    code, out, _ = call("eval", "--term", "cap", "--n", "1")
    assert code == 0
    assert out.splitlines()[0] == "dom=(1,1) cod=() n=1 parity=1"


def test_basis_lists_four_matrices():
    code, out, _ = call("basis", "--dom", "1,1", "--cod", "1,1")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    for line in lines:
        assert all(f"{k}=[" in line for k in "ABCD")


def test_decompose_lines():
    code, out, _ = call("decompose", "--term", "id(1)")
    assert (code, out) == (0, "0: 1\n")


def test_equivariance_command():
    code, out, _ = call("equivariance", "--term", "split(1,1)", "--n", "2")
    assert code == 0 and out.startswith("equivariant")


@pytest.mark.parametrize(
    "argv",
    [
        ("frobnicate",),
        ("dim", "--dom", "1,a", "--cod", "1"),
        ("check", "--suite", "pweb", "--max-label", "0"),
        ("eval", "--term", "split(1,2) ; merge(2,1)"),
        ("equal", "--lhs", "id(1)", "--rhs", "id(2)"),
        ("eval", "--term", "cap", "--n", "0"),
    ],
)
def test_usage_errors_exit_64(argv):
    code, _, err = call(*argv)
    assert code == 64
    assert err.startswith("error:")


def test_dimension_cap_message(monkeypatch):
    monkeypatch.setenv("WEBCAT_MAX_DIM", "10")
    code, _, err = call("eval", "--term", "id(3)", "--n", "3")
    assert code == 65 and "WEBCAT_MAX_DIM" in err


def test_output_is_identical_across_runs_and_workers():
    a = call("check", "--suite", "pweb", "--max-label", "1", "--max-rung", "1", "--verbose")
    b = call("check", "--suite", "pweb", "--max-label", "1", "--max-rung", "1", "--verbose", "--workers", "2")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "webcat", "dim", "--dom", "2", "--cod", "1,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2\n"


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "webcat" in capsys.readouterr().out
