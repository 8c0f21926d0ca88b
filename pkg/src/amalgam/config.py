"""Flat line-oriented run configuration.

Sections in square brackets, `key = value` lines, `#` comments. The
[alphabet] section names the two generator blocks, [base]/[state]/[alpha]
describe the finite base with its state weights and shift, and [limits]
holds depth budgets and exponent windows.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .engine import CrossedFace, FMFace, FreeProduct
from .fmalg import FiniteBase, FiniteRelation
from .matrix import CornerModel, Permutation
from .words import Alphabet

# stacked shift exponents in freeness sweeps reach max_len * n_max, so the
# default base is large enough to keep that below one shift period
DEFAULT_CONFIG = """\
[alphabet]
block1 = a
block2 = b

[base]
points = x0 x1 x2 x3 x4 x5 x6 x7 x8 x9 x10
classes = {x0 x1} {x2 x3}

[alpha]
cycles = (x0 x1 x2 x3 x4 x5 x6 x7 x8 x9 x10)

[limits]
depth = 8
k = 3
n_max = 2
kappa_max = 4
max_len = 4
"""


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    alphabet: Alphabet
    base: FiniteBase
    alpha: Permutation
    plain_classes: tuple
    depth: int = 8
    k: int = 3
    n_max: int = 2
    kappa_max: int = 4
    max_len: int = 4

    def __post_init__(self):
        if self.k < 2:
            raise ConfigError("k must be at least 2")
        if min(self.depth, self.n_max, self.kappa_max, self.max_len) < 1:
            raise ConfigError("limits must be positive")

    def plain_relation(self):
        return FiniteRelation.from_classes(self.base, self.plain_classes)

    def boundary_product(self, budget=None):
        budget = self.depth if budget is None else budget
        return FreeProduct(CrossedFace("A", self.alphabet, 1, budget),
                           CrossedFace("B", self.alphabet, 2, budget))

    def corner_model(self, k=None):
        k = self.k if k is None else k
        return CornerModel(self.base, self.alpha, self.plain_relation(), k)

    def fm_faces(self):
        return (FMFace("A", self.plain_relation()),
                FMFace("B", self.alpha.orbit_relation()))


def default_config():
    return parse_config(DEFAULT_CONFIG)


def load_config(path):
    with open(path, encoding="utf-8") as handle:
        return parse_config(handle.read())


def parse_config(text):
    sections = _split_sections(text)
    unknown = set(sections) - {"alphabet", "base", "state", "alpha", "limits"}
    if unknown:
        raise ConfigError("unknown section(s): %s" % ", ".join(sorted(unknown)))

    alphabet_spec = sections.get("alphabet", {})
    block1 = tuple(alphabet_spec.get("block1", "a").split())
    block2 = tuple(alphabet_spec.get("block2", "b").split())
    try:
        alphabet = Alphabet(block1 + block2, len(block1))
    except AssertionError as exc:
        raise ConfigError("bad alphabet: %s" % exc) from exc

    base_spec = sections.get("base", {})
    default_points = " ".join("x%d" % i for i in range(11))
    points = tuple(base_spec.get("points", default_points).split())
    if len(set(points)) != len(points) or not points:
        raise ConfigError("base points must be distinct and nonempty")

    state_spec = sections.get("state", {})
    if "weights" in state_spec:
        try:
            weights = tuple(Fraction(w) for w in state_spec["weights"].split())
        except ValueError as exc:
            raise ConfigError("bad weight: %s" % exc) from exc
        if len(weights) != len(points):
            raise ConfigError("need one weight per base point")
        try:
            base = FiniteBase(points, weights)
        except AssertionError as exc:
            raise ConfigError("bad state: %s" % exc) from exc
    else:
        base = FiniteBase.uniform(points)

    alpha_spec = sections.get("alpha", {})
    if "cycles" in alpha_spec:
        cycles = _parse_groups(alpha_spec["cycles"], "(", ")")
        for cycle in cycles:
            for x in cycle:
                if x not in points:
                    raise ConfigError("cycle point %s is not in the base" % x)
        try:
            alpha = Permutation.from_cycles(base, cycles)
        except AssertionError as exc:
            raise ConfigError("bad cycles: %s" % exc) from exc
    else:
        alpha = Permutation.from_cycles(base, (points,))

    classes = _parse_groups(base_spec.get("classes", ""), "{", "}")
    for cls in classes:
        for x in cls:
            if x not in points:
                raise ConfigError("class point %s is not in the base" % x)

    limit_spec = sections.get("limits", {})
    limits = {}
    for key in ("depth", "k", "n_max", "kappa_max", "max_len"):
        if key in limit_spec:
            try:
                limits[key] = int(limit_spec[key])
            except ValueError as exc:
                raise ConfigError("limit %s must be an integer" % key) from exc
    extra = set(limit_spec) - {"depth", "k", "n_max", "kappa_max", "max_len"}
    if extra:
        raise ConfigError("unknown limit(s): %s" % ", ".join(sorted(extra)))

    return RunConfig(alphabet=alphabet, base=base, alpha=alpha,
                     plain_classes=classes, **limits)


def _split_sections(text):
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, {})
            continue
        if current is None or "=" not in line:
            raise ConfigError(
                "line %d: expected `key = value` inside a section" % lineno)
        key, value = line.split("=", 1)
        sections[current][key.strip()] = value.strip()
    return sections


def _parse_groups(text, open_char, close_char):
    text = text.strip()
    if not text:
        return ()
    pattern = re.escape(open_char) + r"([^" + re.escape(close_char) + r"]*)" \
        + re.escape(close_char)
    groups = re.findall(pattern, text)
    leftover = re.sub(pattern, "", text).strip()
    if leftover:
        raise ConfigError("unparsed text in group list: %r" % leftover)
    return tuple(tuple(group.split()) for group in groups if group.split())
