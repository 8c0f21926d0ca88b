"""Expression language round trips, config parsing, CLI exit codes."""

import textwrap
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgam import dsl
from amalgam.boundary import Cylinder
from amalgam.cli import main
from amalgam.config import ConfigError, default_config, parse_config
from amalgam.dsl import (
    Adjoint, BracketAtom, CylinderAtom, DslError, Power, Product, UnitAtom,
    WordAtom,
)
from amalgam.words import ReducedWord, ball

CFG = default_config()


# -- expression language -----------------------------------------------------------

ROUND_TRIP_CORPUS = [
    "a",
    "e",
    "a'",
    "a b' a",
    "O(e)",
    "O(a b a)",
    "~a",
    "~~b",
    "a^3",
    "b^-2",
    "(a b)^2",
    "~(a b')",
    "(a^2)^3",
    "(~a)^-1",
    "e[x0,x1]",
    "A[e]{1,2}",
    "B[u]{2,1}",
    "B[u^-3]{1,3}",
    "A[e[x2,x3]]{2,2}",
    "A[d[x4]]{1,1}",
    "(A[e]{1,2} B[u]{2,1})^2",
    "~B[u^2]{3,1} A[e]{1,3}",
]


@pytest.mark.parametrize("text", ROUND_TRIP_CORPUS)
def test_round_trip_corpus(text):
    expr = dsl.parse(text, CFG)
    rendered = dsl.render(expr)
    assert dsl.parse(rendered, CFG) == expr
    # rendering is a fixed point after one pass
    assert dsl.render(dsl.parse(rendered, CFG)) == rendered


def _letter_atoms():
    alphabet = CFG.alphabet
    atoms = [WordAtom(ReducedWord.identity(alphabet))]
    for letter in alphabet.letters():
        atoms.append(WordAtom(ReducedWord.from_letters(alphabet, (letter,))))
    return atoms


_POINTS = st.sampled_from(CFG.base.points[:4])
_CORES = st.one_of(
    st.just(("one",)),
    st.integers(-3, 3).map(lambda n: ("shift", n)),
    st.builds(lambda x: ("diag", x), _POINTS),
    st.builds(lambda x, y: ("unit", x, y), _POINTS, _POINTS),
)
_ATOMS = st.one_of(
    st.sampled_from(_letter_atoms()),
    st.sampled_from([CylinderAtom(Cylinder(w)) for w in ball(CFG.alphabet, 2)]),
    st.builds(UnitAtom, _POINTS, _POINTS),
    st.builds(BracketAtom, st.sampled_from(("A", "B")), _CORES,
              st.integers(1, 3), st.integers(1, 3)),
)


def _extend(children):
    # the parser flattens bare products, so products never nest directly
    flat = children.filter(lambda node: not isinstance(node, Product))
    return st.one_of(
        st.builds(Adjoint, children),
        st.builds(Power, children, st.integers(-3, 3)),
        st.lists(flat, min_size=2, max_size=3).map(
            lambda factors: Product(tuple(factors))),
    )


EXPRS = st.recursive(_ATOMS, _extend, max_leaves=8)


@settings(max_examples=200, deadline=None)
@given(EXPRS)
def test_round_trip_generated(expr):
    assert dsl.parse(dsl.render(expr), CFG) == expr


@settings(max_examples=100, deadline=None)
@given(EXPRS)
def test_machine_text_has_no_spaces(expr):
    assert " " not in dsl.machine_text(expr)


def test_parse_errors_carry_positions():
    with pytest.raises(DslError, match="line 1, column 3"):
        dsl.parse("a q", CFG)
    with pytest.raises(DslError, match="trailing input"):
        dsl.parse("a )", CFG)
    with pytest.raises(DslError, match="slot indices"):
        dsl.parse("A[e]{0,1}", CFG)
    with pytest.raises(DslError, match="bracket core"):
        dsl.parse("A[q]{1,1}", CFG)
    with pytest.raises(DslError, match="mixes"):
        dsl.domain(dsl.parse("a A[e]{1,1}", CFG))


def test_word_value_folds_products():
    expr = dsl.parse("a b (a b)^-1", CFG)
    assert dsl.word_value(expr, CFG).is_identity()
    expr = dsl.parse("~(a b)", CFG)
    assert dsl.word_value(expr, CFG) == \
        ReducedWord.parse(CFG.alphabet, "b' a'")


# -- configuration -----------------------------------------------------------------

CUSTOM = """\
[alphabet]
block1 = a c
block2 = b

[base]
points = p q r s
classes = {p q}

[state]
weights = 1/2 1/6 1/6 1/6

[alpha]
cycles = (p q r s)

[limits]
depth = 5
k = 2
"""


def test_parse_config_custom():
    cfg = parse_config(CUSTOM)
    assert cfg.alphabet.names == ("a", "c", "b")
    assert cfg.alphabet.block_sizes() == (2, 1)
    assert cfg.base.points == ("p", "q", "r", "s")
    assert cfg.base.weight("p") == Fraction(1, 2)
    assert cfg.alpha.mapping["p"] == "q" and cfg.alpha.order() == 4
    assert cfg.plain_classes == (("p", "q"),)
    assert (cfg.depth, cfg.k) == (5, 2)
    # unspecified limits keep their defaults
    assert (cfg.n_max, cfg.kappa_max, cfg.max_len) == (2, 4, 4)


def test_default_config_is_consistent():
    cfg = default_config()
    assert cfg.alphabet.names == ("a", "b")
    assert len(cfg.base.points) == 11
    assert cfg.alpha.order() == 11
    assert sum(cfg.base.weight(p) for p in cfg.base.points) == 1


@pytest.mark.parametrize("text,match", [
    ("[bogus]\nx = 1\n", "unknown section"),
    ("[limits]\nk = 1\n", "at least 2"),
    ("[limits]\nwidth = 3\n", "unknown limit"),
    ("[limits]\ndepth = soon\n", "must be an integer"),
    ("[base]\npoints = p p\n", "distinct"),
    ("[base]\npoints = p q\nclasses = {p z}\n", "not in the base"),
    ("[base]\npoints = p q\n[alpha]\ncycles = (p z)\n", "not in the base"),
    ("[base]\npoints = p q\nclasses = {p q} junk\n", "unparsed text"),
    ("[base]\npoints = p q\n[state]\nweights = 1/2\n", "one weight per"),
    ("stray line\n", "line 1"),
])
def test_parse_config_rejects(text, match):
    with pytest.raises(ConfigError, match=match):
        parse_config(text)


# -- command line ------------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_measure_frozen(capsys):
    code, out, _ = run(capsys, "--format", "machine", "measure", "O(a b)")
    assert code == 0
    assert out.strip() == \
        "record=measure cylinder=O(a.b) value=1/12 refinement=1/12 ok=yes"


def test_series_frozen(capsys):
    code, out, _ = run(capsys, "--format", "machine", "series", "1", "2")
    assert code == 0
    assert "partial=17/18" in out and "tail=1/18" in out and "ok=yes" in out


def test_moment_frozen(capsys):
    code, out, _ = run(capsys, "--format", "machine", "moment",
                       "(A[e]{1,2} B[u]{2,1})^2")
    assert code == 0
    assert out.strip() == "record=moment expr=(A[e]{1,2}.B[u]{2,1})^2 value=0"


def test_moment_identity_word(capsys):
    code, out, _ = run(capsys, "--format", "machine", "moment", "a a'")
    assert code == 0
    assert out.strip() == "record=moment expr=a.a' value=1*O(e)"


def test_rn_frozen(capsys):
    code, out, _ = run(capsys, "--format", "machine", "rn", "a", "O(b a' b)")
    assert code == 0
    assert "exponent=-1" in out and "ratio=1/3" in out and "ok=yes" in out


def test_oracle_agrees(capsys):
    code, out, _ = run(capsys, "--format", "machine", "oracle", "O(a) a b a'")
    assert code == 0
    assert "ok=yes" in out


def test_haar_pass_and_fail(capsys):
    code, out, _ = run(capsys, "--format", "machine", "haar", "a b", "3")
    assert code == 0 and "failed_exponents=none" in out
    code, out, _ = run(capsys, "--format", "machine", "haar", "O(a)", "1")
    assert code == 1
    assert "unitary=no" in out and "ok=no" in out


def test_freeness_boundary(capsys):
    code, out, _ = run(capsys, "--format", "machine", "--max-len", "3",
                       "freeness", "boundary")
    assert code == 0
    assert "violations=0" in out


def test_join_and_ergodic(capsys):
    code, out, _ = run(capsys, "--format", "machine", "join")
    assert code == 0 and "ergodic=yes" in out
    code, out, _ = run(capsys, "--format", "machine", "ergodic")
    assert code == 0
    assert "class_count=1" in out and "class_masses=1" in out


def test_error_exits_with_two(capsys, tmp_path):
    assert run(capsys, "measure", "O(a q)")[0] == 2
    assert run(capsys, "moment", "a A[e]{1,2}")[0] == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("[limits]\nbogus = 3\n")
    assert run(capsys, "--config", str(bad), "join")[0] == 2
    assert run(capsys, "--config", str(tmp_path / "missing.cfg"), "join")[0] == 2


def test_custom_config_changes_alphabet(capsys, tmp_path):
    path = tmp_path / "three.cfg"
    path.write_text(CUSTOM)
    code, out, _ = run(capsys, "--config", str(path), "--format", "machine",
                       "measure", "O(a b)")
    assert code == 0
    # three generators: 1/6 for the first letter, 1/5 per further letter
    assert "value=1/30" in out


def test_human_format_shape(capsys):
    code, out, _ = run(capsys, "measure", "O(a b)")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "measure"
    assert all(line.startswith("  ") and " = " in line for line in lines[1:])


def test_machine_lines_are_flat_records(capsys):
    probes = [
        ["--format", "machine", "measure", "O(a b a)"],
        ["--format", "machine", "series", "2", "3"],
        ["--format", "machine", "moment", "~(a b)^2"],
        ["--format", "machine", "join"],
    ]
    for argv in probes:
        code = main(argv)
        out = capsys.readouterr().out
        assert code == 0
        for line in out.strip().splitlines():
            pieces = line.split(" ")
            assert pieces[0].startswith("record=")
            for piece in pieces:
                key, sep, value = piece.partition("=")
                assert sep == "=" and key and value


def test_suite67_light(capsys):
    code, out, _ = run(capsys, "--format", "machine", "--max-len", "2",
                       "suite67")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("record=suite67")
    assert "failed=0" in lines[-1] and "ok=yes" in lines[-1]
    names = {line.split(" ", 1)[0] for line in lines}
    assert "record=oracle_agreement" in names
    assert "record=corner_freeness" in names
