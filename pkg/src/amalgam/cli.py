"""Command-line front end.

One command per invocation; structured reports in a human or a machine
rendering (one record per line, key=value pairs, rationals as p/q). The
exit status is nonzero exactly when some asserted check fails.
"""

import argparse
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from . import dsl
from .boundary import (
    Cylinder, act, complement_decomposition, complement_series,
    complement_series_tail, cylinder_measure, refine, rn_exponent, rn_ratio,
    splice,
)
from .config import ConfigError, default_config, load_config
from .engine import CylFn, MAmbient, freeness_check, haar_check
from .fmalg import is_ergodic, join, modular_scale
from .matrix import (
    bracket_law_report, covariance_report, family_freeness_report,
    moment_vanishing_report, reduction_identities_report,
)
from .scalars import QC
from .words import ReducedWord, ball, sphere

PHASE_TOLERANCE = 1e-12


@dataclass
class Record:
    name: str
    fields: list
    ok: object = None  # True/False for asserted checks, None for plain facts


# -- value rendering (machine-safe: no spaces inside values) --------------------

def _word_text(word):
    return word.render().replace(" ", ".")


def _frac(value):
    return str(Fraction(value))


def _scalar(value):
    if isinstance(value, QC):
        if value.im == 0:
            return _frac(value.re)
        if value.re == 0:
            return "%si" % _frac(value.im)
        return "%s%+si" % (_frac(value.re), Fraction(value.im))
    return str(value)


def _point(p):
    if isinstance(p, tuple):
        return "%s:%s" % (p[0], p[1])
    return str(p)


def _cylfn_text(fn):
    if fn.is_zero():
        return "0"
    bits = []
    for word in sorted(fn.terms, key=lambda w: w.sort_key()):
        bits.append("%s*O(%s)" % (_scalar(fn.terms[word]), _word_text(word)))
    return "+".join(bits)


def _fm_text(x):
    if x.is_zero():
        return "0"
    bits = []
    for (p, q) in sorted(x.coeffs, key=lambda pair: (str(pair[0]), str(pair[1]))):
        bits.append("%s*e[%s,%s]" % (_scalar(x.coeffs[(p, q)]),
                                     _point(p), _point(q)))
    return "+".join(bits)


def _value_text(value):
    if isinstance(value, CylFn):
        return _cylfn_text(value)
    if hasattr(value, "coeffs"):
        return _fm_text(value)
    return _scalar(value)


def _yes(flag):
    return "yes" if flag else "no"


def _classes_text(relation):
    return "+".join(
        "{%s}" % ".".join(_point(p) for p in cls)
        for cls in sorted(relation.classes(), key=lambda c: str(c)))


# -- report emission --------------------------------------------------------------

def emit(records, fmt, out=None):
    out = sys.stdout if out is None else out
    for record in records:
        fields = list(record.fields)
        if record.ok is not None:
            fields.append(("ok", _yes(record.ok)))
        if fmt == "machine":
            bits = ["record=%s" % record.name]
            bits += ["%s=%s" % (key, value) for key, value in fields]
            print(" ".join(bits), file=out)
        else:
            print(record.name, file=out)
            for key, value in fields:
                print("  %s = %s" % (key, value), file=out)


# -- individual commands -----------------------------------------------------------

def cmd_measure(args, config):
    expr = dsl.parse(" ".join(args.expr), config)
    cyl = dsl.cylinder_value(expr)
    value = cylinder_measure(cyl)
    pieces = refine(cyl, cyl.depth() + 1)
    refined = sum((cylinder_measure(c) for c in pieces), Fraction(0))
    return [Record("measure", [
        ("cylinder", dsl.machine_text(expr)),
        ("value", _frac(value)),
        ("refinement", _frac(refined)),
    ], ok=(refined == value))]


def cmd_rn(args, config):
    gamma = dsl.word_value(dsl.parse(args.word, config), config)
    cyl = dsl.cylinder_value(dsl.parse(args.cylinder, config))
    exponent = rn_exponent(gamma, cyl)
    ratio = rn_ratio(gamma, cyl)
    moved = act(gamma, cyl)
    exact = moved.measure() == ratio * cylinder_measure(cyl)
    return [Record("rn", [
        ("word", _word_text(gamma)),
        ("cylinder", "O(%s)" % _word_text(cyl.prefix)),
        ("exponent", str(exponent)),
        ("ratio", _frac(ratio)),
    ], ok=exact)]


def cmd_series(args, config):
    alphabet = config.alphabet
    block = args.block
    if block not in (1, 2):
        raise ValueError("block must be 1 or 2")
    partial = complement_series(alphabet, block, args.terms)
    tail = complement_series_tail(alphabet, block, args.terms)
    ok = partial + tail == 1
    if args.terms <= 6:
        decomposition = complement_decomposition(alphabet, block, args.terms)
        ok = ok and decomposition.measure() == partial
    return [Record("series", [
        ("block", str(block)),
        ("terms", str(args.terms)),
        ("partial", _frac(partial)),
        ("tail", _frac(tail)),
    ], ok=ok)]


def _context_for(expr, config):
    kind = dsl.domain(expr)
    if kind == "boundary":
        return kind, dsl.BoundaryContext(config.boundary_product())
    return kind, dsl.CornerContext(config.corner_model())


def cmd_moment(args, config):
    expr = dsl.parse(" ".join(args.expr), config)
    _, context = _context_for(expr, config)
    value = context.expect(dsl.evaluate(expr, context))
    return [Record("moment", [
        ("expr", dsl.machine_text(expr)),
        ("value", _value_text(value)),
    ])]


def cmd_oracle(args, config):
    expr = dsl.parse(" ".join(args.expr), config)
    if dsl.domain(expr) != "boundary":
        raise ValueError("the oracle command needs a boundary expression")
    engine_ctx = dsl.BoundaryContext(config.boundary_product())
    oracle_ctx = dsl.CrossedContext(config.alphabet, config.depth)
    engine_value = engine_ctx.expect(dsl.evaluate(expr, engine_ctx))
    oracle_value = oracle_ctx.expect(dsl.evaluate(expr, oracle_ctx))
    return [Record("oracle", [
        ("expr", dsl.machine_text(expr)),
        ("engine", _value_text(engine_value)),
        ("oracle", _value_text(oracle_value)),
    ], ok=(engine_value == oracle_value))]


def cmd_haar(args, config):
    expr = dsl.parse(" ".join(args.expr), config)
    kind, context = _context_for(expr, config)
    element = dsl.evaluate(expr, context)
    if kind == "boundary":
        ambient = MAmbient(context.product)
        unit = None
    else:
        ambient = MAmbient(context.model.product)
        unit = context.model.corner_identity()
    report = haar_check(ambient, element, args.kmax, unit=unit)
    return [Record("haar", [
        ("expr", dsl.machine_text(expr)),
        ("kmax", str(args.kmax)),
        ("unitary", _yes(report.unitary_ok)),
        ("failed_exponents", ",".join(map(str, report.failed_exponents)) or "none"),
    ], ok=report.passed)]


def _boundary_generators(config, budget=None):
    product = config.boundary_product(budget)
    alphabet = config.alphabet
    gens = []
    for block, tag in ((1, "A"), (2, "B")):
        letter = alphabet.letters(block)[0]
        word = ReducedWord.from_letters(alphabet, (letter,))
        gens.append((tag, product.face(tag).unitary(word)))
    other = ReducedWord.from_letters(alphabet, (alphabet.letters(2)[0],))
    fn = CylFn.indicator(Cylinder(other))
    face_a = product.face("A")
    first = ReducedWord.from_letters(alphabet, (alphabet.letters(1)[0],))
    gens.append(("A", face_a.element({first: fn})))
    gens.append(("B", product.face("B").element(
        {ReducedWord.identity(alphabet): fn})))
    return product, gens


def cmd_freeness(args, config):
    if args.suite == "boundary":
        product, gens = _boundary_generators(config)
        families = [[product.embed(tag, x)] for tag, x in gens]
        report = freeness_check(MAmbient(product), families, config.max_len)
        return [Record("freeness", [
            ("suite", "boundary"),
            ("max_len", str(config.max_len)),
            ("words", str(report.words_checked)),
            ("violations", str(len(report.violations))),
        ], ok=report.passed)]
    if args.suite == "corner":
        model = config.corner_model()
        i_values = tuple(i for i in (2, 3) if i <= config.k)
        report = family_freeness_report(
            model, max_len=config.max_len, n_limit=config.n_max,
            i_values=i_values, kappas=(1,))
        return [Record("freeness", [
            ("suite", "corner"),
            ("fixture", report.fixture.replace(" ", ",")),
            ("max_len", str(config.max_len)),
            ("families", str(report.families)),
            ("words", str(report.words_checked)),
            ("shape_checks", str(report.shape_checks)),
            ("violations", str(len(report.violations))),
        ], ok=report.passed)]
    raise ValueError("unknown suite %r (use boundary or corner)" % args.suite)


def cmd_join(args, config):
    rel_a = config.plain_relation()
    rel_b = config.alpha.orbit_relation()
    joined = join(rel_a, rel_b)
    contains = rel_a.pairs <= joined.pairs and rel_b.pairs <= joined.pairs
    stable = join(joined, rel_a).pairs == joined.pairs
    return [Record("join", [
        ("classes_a", _classes_text(rel_a)),
        ("classes_b", _classes_text(rel_b)),
        ("classes", _classes_text(joined)),
        ("ergodic", _yes(is_ergodic(joined))),
    ], ok=(contains and stable))]


def cmd_ergodic(args, config):
    joined = join(config.plain_relation(), config.alpha.orbit_relation())
    masses = []
    for cls in sorted(joined.classes(), key=lambda c: str(c)):
        mass = sum((config.base.weight(p) for p in cls), Fraction(0))
        masses.append(_frac(mass))
    return [Record("ergodic", [
        ("ergodic", _yes(is_ergodic(joined))),
        ("class_count", str(len(joined.classes()))),
        ("class_masses", ",".join(masses)),
    ])]


# -- the combined verification suite ------------------------------------------------

def cmd_suite67(args, config):
    records = []

    def add(name, ok, **fields):
        records.append(Record(
            name, [(k, str(v)) for k, v in fields.items()], ok=ok))

    alphabet = config.alphabet
    n = alphabet.size

    depth = min(config.depth, 4)
    ok = True
    count = 0
    for length in range(1, depth + 1):
        for prefix in sphere(alphabet, length):
            cyl = Cylinder(prefix)
            want = Fraction(1, 2 * n) * Fraction(1, 2 * n - 1) ** (length - 1)
            pieces = refine(cyl, min(length + 1, depth))
            refined = sum((cylinder_measure(c) for c in pieces), Fraction(0))
            ok = ok and cylinder_measure(cyl) == want == refined
            count += 1
    add("measure_exactness", ok, depth=depth, cylinders=count)

    ok = True
    frozen = []
    for block in (1, 2):
        for terms in range(1, 7):
            partial = complement_series(alphabet, block, terms)
            tail = complement_series_tail(alphabet, block, terms)
            ok = ok and partial + tail == 1
            ok = ok and complement_decomposition(
                alphabet, block, terms).measure() == partial
    if alphabet.block_sizes() == (1, 1):
        frozen = [complement_series(alphabet, 1, 1),
                  complement_series(alphabet, 1, 2)]
        ok = ok and frozen == [Fraction(5, 6), Fraction(17, 18)]
    add("series_closure", ok, terms=6,
        frozen=",".join(_frac(f) for f in frozen) or "n/a")

    ok = True
    count = 0
    for block in (1, 2):
        other = 2 if block == 1 else 1
        gammas = [w for w in ball(alphabet, 3)
                  if w.block_membership() in (block, "identity")]
        heads = [w for w in sphere(alphabet, 1)
                 if w.block_membership() == other]
        for gamma in gammas:
            for head in heads:
                for tail_word in ball(alphabet, 2):
                    prefix = head * tail_word
                    if len(prefix) != len(head) + len(tail_word):
                        continue
                    cyl = Cylinder(prefix)
                    spliced = splice(block, gamma, cyl)
                    lhs = cylinder_measure(spliced)
                    rhs = Fraction(1, 2 * n - 1) ** len(gamma) * \
                        cylinder_measure(cyl)
                    ok = ok and lhs == rhs
                    count += 1
    add("splice_factorization", ok, pairs=count)

    ok = True
    exponents = set()
    lam = Fraction(1, 2 * n - 1)
    for gamma in ball(alphabet, 2):
        if gamma.is_identity():
            continue
        for prefix in sphere(alphabet, 4):
            cyl = Cylinder(prefix)
            k = rn_exponent(gamma, cyl)
            exponents.add(k)
            ok = ok and rn_ratio(gamma, cyl) == lam ** (-k)
            ok = ok and act(gamma, cyl).measure() == \
                rn_ratio(gamma, cyl) * cylinder_measure(cyl)
    for gamma in sphere(alphabet, 1):
        for delta in sphere(alphabet, 1):
            for prefix in sphere(alphabet, 4):
                cyl = Cylinder(prefix)
                lhs = rn_exponent(gamma * delta, cyl)
                rhs = rn_exponent(delta, cyl) + \
                    rn_exponent(gamma, Cylinder(delta * prefix))
                ok = ok and lhs == rhs
    ok = ok and {1, -1} <= exponents
    add("ratio_powers", ok,
        exponents=",".join(map(str, sorted(exponents))))

    product, gens = _boundary_generators(config, budget=max(config.depth, 10))
    ok = True
    words = [[g] for g in gens]
    for length in (2, 3):
        words += [[gens[i] for i in combo]
                  for combo in iproduct(range(len(gens)), repeat=length)]
    for word in words:
        if product.expectation(word) != product.oracle_expectation(word):
            ok = False
    add("oracle_agreement", ok, words=len(words))

    model = config.corner_model()
    order = model.face_b.alpha.order()
    kappa_limit = min(config.kappa_max, order - 1)
    i_values = tuple(i for i in (2, 3) if i <= config.k)
    report = moment_vanishing_report(
        model, n_limit=min(config.n_max, order - 1),
        i_values=i_values, kappa_limit=kappa_limit)
    add("corner_moments", report.passed, checked=report.checked,
        fixture=report.fixture.replace(" ", ","))

    max_len = config.max_len
    while max_len > 1 and max_len * config.n_max >= order:
        max_len -= 1
    report = family_freeness_report(model, max_len=max_len,
                                    n_limit=config.n_max,
                                    i_values=i_values, kappas=(1,))
    add("corner_freeness", report.passed, max_len=max_len,
        words=report.words_checked, shapes=report.shape_checks,
        violations=len(report.violations))

    k_values = tuple(sorted({2, config.k}))
    report = covariance_report(config.base, config.alpha,
                               config.plain_relation(), k_values=k_values,
                               n_limit=config.n_max, i_values=i_values)
    add("covariance", report.passed, checked=report.checked)

    report = reduction_identities_report(
        config.base, config.alpha, config.plain_relation(),
        k_values=k_values, n_limit=min(config.n_max, 2))
    add("reduction_identities", report.passed, checked=report.checked)

    report = bracket_law_report(model, k_values=k_values)
    add("bracket_laws", report.passed, checked=report.checked)

    failed = sum(1 for r in records if r.ok is False)
    records.append(Record("suite67", [
        ("checks", str(len(records))),
        ("failed", str(failed)),
    ], ok=(failed == 0)))
    return records


COMMANDS = {
    "measure": cmd_measure,
    "rn": cmd_rn,
    "series": cmd_series,
    "moment": cmd_moment,
    "oracle": cmd_oracle,
    "haar": cmd_haar,
    "freeness": cmd_freeness,
    "join": cmd_join,
    "ergodic": cmd_ergodic,
    "suite67": cmd_suite67,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="amalgam",
        description="Exact checks for a two-face amalgamated free product "
                    "and its corner amplification.")
    parser.add_argument("--config", help="path to a run configuration file")
    parser.add_argument("--format", choices=("human", "machine"),
                        default="human")
    parser.add_argument("--max-len", type=int, dest="max_len",
                        help="override the word-length window")
    parser.add_argument("--depth", type=int,
                        help="override the boundary depth budget")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="exact cylinder measure")
    p.add_argument("expr", nargs="+")
    p = sub.add_parser("rn", help="translate derivative on a cylinder")
    p.add_argument("word")
    p.add_argument("cylinder")
    p = sub.add_parser("series", help="complement decomposition series")
    p.add_argument("block", type=int)
    p.add_argument("terms", type=int)
    p = sub.add_parser("moment", help="expectation of an expression")
    p.add_argument("expr", nargs="+")
    p = sub.add_parser("oracle", help="expectation via both routes")
    p.add_argument("expr", nargs="+")
    p = sub.add_parser("haar", help="moment vanishing up to a window")
    p.add_argument("expr", nargs="+")
    p.add_argument("kmax", type=int)
    p = sub.add_parser("freeness", help="alternating-word freeness sweep")
    p.add_argument("suite", choices=("boundary", "corner"))
    sub.add_parser("join", help="join of the two base relations")
    sub.add_parser("ergodic", help="ergodicity of the joined relation")
    sub.add_parser("suite67", help="run the full verification battery")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else default_config()
        if args.max_len is not None:
            config.max_len = args.max_len
        if args.depth is not None:
            config.depth = args.depth
        random.seed(args.seed)
        records = COMMANDS[args.command](args, config)
    except (ConfigError, dsl.DslError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, AssertionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    emit(records, args.format)
    return 0 if all(record.ok is not False for record in records) else 1


if __name__ == "__main__":
    sys.exit(main())
