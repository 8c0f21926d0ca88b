"""Symbolic two-face free product over a shared commutative base.

Two faces (operator algebras A and B with a common diagonal D and
expectations onto it) generate a product algebra in which alternating words
of expectation-zero letters have zero expectation.  Elements are kept in a
normal form d + sum of alternating centered words; multiplication merges
letters at the seams and re-centers, which strictly shrinks words, so all
computations terminate and stay exact.

Two face backends exist: finite measured-relation algebras (fmalg) and
one-block crossed products of the boundary action (boundary).  The crossed
product of the full group doubles as an independent oracle for the
recursively computed expectation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .boundary import Cylinder, act
from .fmalg import FMElement, FiniteRelation
from .scalars import QC, conj as scalar_conj, is_zero as scalar_is_zero
from .words import ReducedWord


class DepthBudgetExceeded(RuntimeError):
    """A cylinder-function operation needed more depth than allowed."""


# ---------------------------------------------------------------------------
# cylinder step functions: the diagonal of the boundary backend

class CylFn:
    """Finite combination of cylinder indicators in canonical disjoint form.

    Canonical form: supports are pairwise non-nested and no complete family
    of sibling cylinders carries a common coefficient (it would merge into
    the parent).  This makes equality and zero-testing plain dict equality.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms):
        self.alphabet = alphabet
        self.terms = _canonical(alphabet, terms)

    @staticmethod
    def zero(alphabet):
        return CylFn(alphabet, {})

    @staticmethod
    def one(alphabet):
        return CylFn(alphabet, {ReducedWord.identity(alphabet): QC(1)})

    @staticmethod
    def indicator(c: Cylinder):
        return CylFn(c.alphabet, {c.prefix: QC(1)})

    def depth(self):
        return max((len(w) for w in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        assert self.alphabet == other.alphabet
        out = dict(self.terms)
        for w, v in other.terms.items():
            out[w] = out.get(w, QC(0)) + v
        return CylFn(self.alphabet, out)

    def __neg__(self):
        return CylFn(self.alphabet, {w: -v for w, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Pointwise product; supports pair off only when nested."""
        assert self.alphabet == other.alphabet
        out = {}
        for w1, v1 in self.terms.items():
            for w2, v2 in other.terms.items():
                if w1.starts_with(w2) or w2.starts_with(w1):
                    key = w1 if len(w1) >= len(w2) else w2
                    out[key] = out.get(key, QC(0)) + v1 * v2
        return CylFn(self.alphabet, out)

    def scale(self, scalar):
        scalar = QC.coerce(scalar)
        return CylFn(self.alphabet, {w: scalar * v for w, v in self.terms.items()})

    def adjoint(self):
        return CylFn(self.alphabet, {w: scalar_conj(v) for w, v in self.terms.items()})

    def translate(self, gamma: ReducedWord):
        """The function composed with translation by gamma inverse."""
        out = {}
        for w, v in self.terms.items():
            for piece in act(gamma, Cylinder(w)):
                out[piece.prefix] = out.get(piece.prefix, QC(0)) + v
        return CylFn(self.alphabet, out)

    def support_projection(self):
        return CylFn(self.alphabet, {w: QC(1) for w in self.terms})

    def value_at(self, word: ReducedWord):
        """Value on any point extending the given word; word must be deep."""
        assert len(word) >= self.depth()
        for w, v in self.terms.items():
            if word.starts_with(w):
                return v
        return QC(0)

    def expectation(self):
        # already diagonal; present so D elements share the face interface
        return self

    def __eq__(self, other):
        if not isinstance(other, CylFn):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"{v!r} O({w})" for w, v in
                sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0].sort_key()))]
        return " + ".join(bits)


def _canonical(alphabet, terms):
    """Push coefficients down a prefix trie, then merge complete siblings."""
    root = [QC(0), {}]
    for word, value in terms.items():
        node = root
        for letter in word.letters:
            node = node[1].setdefault(letter, [QC(0), {}])
        node[0] = node[0] + value

    def walk(node, last_letter):
        value, children = node
        if not children:
            return {(): value} if not scalar_is_zero(value) else {}
        exts = [a for a in alphabet.letters()
                if last_letter is None or not last_letter.cancels(a)]
        submaps = []
        for a in exts:
            child = children.get(a, [QC(0), {}])
            submaps.append((a, walk([child[0] + value, child[1]], a)))
        first = submaps[0][1]
        if len(first) <= 1 and all(m == first for _, m in submaps):
            return dict(first)  # all siblings constant and equal: merge up
        out = {}
        for a, sub in submaps:
            for suffix, v in sub.items():
                out[(a,) + suffix] = v
        return out

    flat = walk(root, None)
    return {ReducedWord(alphabet, suffix): v for suffix, v in flat.items()}


def cylfn_gap(u: CylFn, v: CylFn) -> float:
    """Sup-norm distance, for floating tolerance comparisons."""
    diff = u - v
    return max((abs(complex(c)) for c in diff.terms.values()), default=0.0)


# ---------------------------------------------------------------------------
# crossed product of the boundary action (full group or one block)

class CrossedElement:
    """Finite sum of (cylinder function) x (group unitary) terms."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms):
        self.alphabet = alphabet
        self.terms = terms  # ReducedWord -> CylFn

    def coefficient(self, word):
        return self.terms.get(word, CylFn.zero(self.alphabet))

    def __eq__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w.sort_key())):
            bits.append(f"({self.terms[w]!r})u[{w}]")
        return " + ".join(bits)


class CrossedFace:
    """Crossed product face; block None means the full group (oracle side)."""

    def __init__(self, tag, alphabet, block=None, budget=6):
        assert block in (None, 1, 2)
        self.tag = tag
        self.alphabet = alphabet
        self.block = block
        self.budget = budget

    def _admit(self, word):
        if self.block is not None and word.block_membership() not in ("identity", self.block):
            raise ValueError(f"word {word} is not in block {self.block}")

    def _guard(self, fn):
        if fn.depth() > self.budget:
            raise DepthBudgetExceeded(
                f"cylinder depth {fn.depth()} exceeds budget {self.budget}")
        return fn

    def element(self, terms):
        clean = {}
        for word, fn in terms.items():
            self._admit(word)
            self._guard(fn)
            if not fn.is_zero():
                clean[word] = fn
        return CrossedElement(self.alphabet, clean)

    def unitary(self, word):
        return self.element({word: CylFn.one(self.alphabet)})

    def one(self):
        return self.unitary(ReducedWord.identity(self.alphabet))

    def zero(self):
        return CrossedElement(self.alphabet, {})

    def embed_d(self, fn: CylFn):
        return self.element({ReducedWord.identity(self.alphabet): fn})

    def expect(self, x: CrossedElement) -> CylFn:
        return x.coefficient(ReducedWord.identity(self.alphabet))

    def mul(self, x, y):
        out = {}
        for g, f in x.terms.items():
            for h, k in y.terms.items():
                word = g * h
                self._admit(word)
                fn = f * self._guard(k.translate(g))
                if not fn.is_zero():
                    out[word] = out.get(word, CylFn.zero(self.alphabet)) + fn
        return self.element(out)

    def add(self, x, y):
        out = dict(x.terms)
        for w, fn in y.terms.items():
            out[w] = out.get(w, CylFn.zero(self.alphabet)) + fn
        return self.element(out)

    def neg(self, x):
        return CrossedElement(self.alphabet, {w: -fn for w, fn in x.terms.items()})

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def adjoint(self, x):
        out = {}
        for g, f in x.terms.items():
            out[g.inverse()] = self._guard(f.adjoint().translate(g.inverse()))
        return self.element(out)

    def is_zero(self, x):
        return not x.terms

    def equal(self, x, y):
        return x == y

    def right_support(self, x) -> CylFn:
        """Smallest diagonal projection q with x q = x."""
        supp = CylFn.zero(self.alphabet)
        for g, f in x.terms.items():
            supp = supp + f.support_projection().translate(g.inverse())
        return CylFn(self.alphabet, {w: QC(1) for w in supp.terms})

    def d_one(self):
        return CylFn.one(self.alphabet)


# ---------------------------------------------------------------------------
# finite measured-relation face

_DIAG_CACHE = {}


def _diagonal_relation(base):
    if base not in _DIAG_CACHE:
        _DIAG_CACHE[base] = FiniteRelation.diagonal(base)
    return _DIAG_CACHE[base]


class FMFace:
    """Face backed by a finite measured-relation algebra."""

    def __init__(self, tag, relation: FiniteRelation):
        self.tag = tag
        self.relation = relation
        self.drel = _diagonal_relation(relation.base)

    def element(self, coeffs):
        return FMElement(self.relation, coeffs)

    def unit(self, x, y):
        return FMElement.unit(self.relation, x, y)

    def one(self):
        return FMElement.one(self.relation)

    def zero(self):
        return FMElement.zero(self.relation)

    def embed_d(self, d: FMElement):
        return d.cast(self.relation)

    def expect(self, x: FMElement) -> FMElement:
        return x.expectation().cast(self.drel)

    def mul(self, x, y):
        return x * y

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def adjoint(self, x):
        return x.adjoint()

    def is_zero(self, x):
        return x.is_zero()

    def equal(self, x, y):
        return x == y

    def right_support(self, x) -> FMElement:
        return x.right_support().cast(self.drel)

    def d_one(self):
        return FMElement.one(self.drel)


# ---------------------------------------------------------------------------
# the free product

class CenteredLetter:
    """Face element with zero expectation, tagged by its face."""

    __slots__ = ("tag", "value")

    def __init__(self, tag, value):
        self.tag = tag
        self.value = value

    def __eq__(self, other):
        if not isinstance(other, CenteredLetter):
            return NotImplemented
        return self.tag == other.tag and self.value == other.value

    def __repr__(self):
        return f"[{self.tag}:{self.value!r}]"


@dataclass(frozen=True)
class MWord:
    """Alternating product of centered letters; coefficients are absorbed."""

    letters: tuple

    def __post_init__(self):
        assert self.letters, "empty word is the scalar part"
        for a, b in zip(self.letters, self.letters[1:]):
            assert a.tag != b.tag, "word is not alternating"

    def __len__(self):
        return len(self.letters)


class MElement:
    """Normal form: diagonal part plus a sum of alternating centered words."""

    __slots__ = ("product", "d_part", "words")

    def __init__(self, product, d_part, words):
        self.product = product
        self.d_part = d_part
        self.words = tuple(words)

    def expectation(self):
        return self.d_part

    def is_pure_d(self):
        return not self.words

    def __add__(self, other):
        assert other.product is self.product
        return MElement(self.product, self.d_part + other.d_part,
                        self.words + other.words)

    def __neg__(self):
        product = self.product
        negged = []
        for word in self.words:
            first = word.letters[0]
            face = product.face(first.tag)
            negged.append(MWord((CenteredLetter(first.tag, face.neg(first.value)),)
                                + word.letters[1:]))
        return MElement(product, -self.d_part, negged)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        assert other.product is self.product
        return self.product.multiply(self, other)

    def adjoint(self):
        product = self.product
        words = []
        for word in self.words:
            letters = tuple(
                CenteredLetter(a.tag, product.face(a.tag).adjoint(a.value))
                for a in reversed(word.letters))
            words.append(MWord(letters))
        return MElement(product, self.d_part.adjoint(), words)

    def __eq__(self, other):
        """Structural equality of normal forms (sufficient, not necessary)."""
        if not isinstance(other, MElement):
            return NotImplemented
        if self.d_part != other.d_part:
            return False
        key = lambda w: (len(w), repr(w.letters))
        return sorted(self.words, key=key) == sorted(other.words, key=key)

    def __repr__(self):
        bits = [repr(self.d_part)] if not self.d_part.is_zero() else []
        bits += ["*".join(repr(a) for a in w.letters) for w in self.words]
        return " + ".join(bits) if bits else "0"


class FreeProduct:
    """Two faces over one diagonal; elements are MElements."""

    def __init__(self, face_a, face_b):
        if face_a.tag == face_b.tag:
            raise ValueError("faces need distinct tags")
        fm = isinstance(face_a, FMFace), isinstance(face_b, FMFace)
        if fm == (True, True):
            if face_a.relation.base != face_b.relation.base:
                raise ValueError("faces must share the base")
        elif fm == (False, False):
            if face_a.alphabet != face_b.alphabet or face_a.budget != face_b.budget:
                raise ValueError("faces must share alphabet and depth budget")
            if {face_a.block, face_b.block} != {1, 2}:
                raise ValueError("boundary faces must cover blocks 1 and 2")
        else:
            raise ValueError("mixed face backends are not supported")
        self.faces = {face_a.tag: face_a, face_b.tag: face_b}
        self.tags = (face_a.tag, face_b.tag)
        self.is_boundary = not fm[0]

    def face(self, tag):
        return self.faces[tag]

    def d_one(self):
        return self.faces[self.tags[0]].d_one()

    def d_zero(self):
        one = self.d_one()
        return one - one

    def one(self):
        return MElement(self, self.d_one(), ())

    def zero(self):
        return MElement(self, self.d_zero(), ())

    def from_d(self, d):
        return MElement(self, d, ())

    def embed(self, tag, x) -> MElement:
        """A raw face element as an MElement: expectation plus centered rest."""
        face = self.faces[tag]
        d = face.expect(x)
        centered = face.sub(x, face.embed_d(d))
        words = () if face.is_zero(centered) else \
            (MWord((CenteredLetter(tag, centered),)),)
        return MElement(self, d, words)

    def letters_product(self, letters) -> MElement:
        """Fold a (tag, element) sequence into the product algebra."""
        out = self.one()
        for tag, x in letters:
            out = out * (self.from_d(x) if tag == "D" else self.embed(tag, x))
        return out

    # -- multiplication -----------------------------------------------------

    def multiply(self, x: MElement, y: MElement) -> MElement:
        d_total = x.d_part * y.d_part
        words = []
        for w in x.words:
            scaled = self._word_times_d(w, y.d_part, left=False)
            if scaled is not None:
                words.append(scaled)
        for v in y.words:
            scaled = self._word_times_d(v, x.d_part, left=True)
            if scaled is not None:
                words.append(scaled)
        for w in x.words:
            for v in y.words:
                d_part, extra = self._word_mul(w.letters, v.letters)
                d_total = d_total + d_part
                words.extend(extra)
        return MElement(self, d_total, words)

    def _word_times_d(self, word: MWord, d, left: bool):
        """Absorb a diagonal factor into the outer letter; None when zero."""
        if d.is_zero():
            return None
        index = 0 if left else -1
        letter = word.letters[index]
        face = self.faces[letter.tag]
        embedded = face.embed_d(d)
        value = face.mul(embedded, letter.value) if left else \
            face.mul(letter.value, embedded)
        if face.is_zero(value):
            return None
        replaced = CenteredLetter(letter.tag, value)
        if left:
            return MWord((replaced,) + word.letters[1:])
        return MWord(word.letters[:-1] + (replaced,))

    def _word_mul(self, left: tuple, right: tuple):
        """Product of two alternating centered words: (diagonal, [MWord])."""
        if not left and not right:
            return self.d_one(), []
        if not left:
            return self.d_zero(), [MWord(right)]
        if not right:
            return self.d_zero(), [MWord(left)]
        a, b = left[-1], right[0]
        if a.tag != b.tag:
            # no merge; tighten the seam with the left support projection
            face_b = self.faces[b.tag]
            support = self.faces[a.tag].right_support(a.value)
            tightened = face_b.mul(face_b.embed_d(support), b.value)
            if face_b.is_zero(tightened):
                return self.d_zero(), []
            seamed = (CenteredLetter(b.tag, tightened),) + right[1:]
            return self.d_zero(), [MWord(left + seamed)]
        face = self.faces[a.tag]
        merged = face.mul(a.value, b.value)
        d = face.expect(merged)
        centered = face.sub(merged, face.embed_d(d))
        d_total, words = self.d_zero(), []
        if not face.is_zero(centered):
            mid = CenteredLetter(a.tag, centered)
            words.append(MWord(left[:-1] + (mid,) + right[1:]))
        if not d.is_zero():
            lrest, rrest = left[:-1], right[1:]
            if lrest and rrest:
                nxt = rrest[0]
                nface = self.faces[nxt.tag]
                absorbed = nface.mul(nface.embed_d(d), nxt.value)
                if not nface.is_zero(absorbed):
                    sub_d, sub_words = self._word_mul(
                        lrest, (CenteredLetter(nxt.tag, absorbed),) + rrest[1:])
                    d_total = d_total + sub_d
                    words.extend(sub_words)
            elif lrest:
                scaled = self._word_times_d(MWord(lrest), d, left=False)
                if scaled is not None:
                    words.append(scaled)
            elif rrest:
                scaled = self._word_times_d(MWord(rrest), d, left=True)
                if scaled is not None:
                    words.append(scaled)
            else:
                d_total = d_total + d
        return d_total, words

    # -- expectation of raw letter sequences ---------------------------------

    def expectation(self, letters):
        """Expectation of a product of raw face elements.

        Independent of the MElement normal form: merges same-face
        neighbours, then expands letters into centered + diagonal parts.
        The all-centered alternating term vanishes; every other term drops
        at least two letters, so the recursion terminates.
        """
        seq = []
        for tag, x in letters:
            if tag == "D":
                tag = self.tags[0]
                x = self.faces[tag].embed_d(x)
            seq.append((tag, x))
        return self._expect(self._merge_neighbours(seq), 0)

    def _merge_neighbours(self, seq):
        out = []
        for tag, x in seq:
            if out and out[-1][0] == tag:
                face = self.faces[tag]
                out[-1] = (tag, face.mul(out[-1][1], x))
            else:
                out.append((tag, x))
        return out

    def _expect(self, seq, known_centered):
        m = len(seq)
        if m == 0:
            return self.d_one()
        if m == 1:
            if known_centered >= 1:
                return self.d_zero()
            tag, x = seq[0]
            return self.faces[tag].expect(x)
        if known_centered >= m:
            return self.d_zero()
        assert known_centered < m, "letter count must shrink"
        total = self.d_zero()
        centered_prefix = list(seq[:known_centered])
        for i in range(known_centered, m):
            tag_i, x_i = seq[i]
            face_i = self.faces[tag_i]
            d_i = face_i.expect(x_i)
            if not d_i.is_zero() and i < m - 1:
                tag_n, x_n = seq[i + 1]
                face_n = self.faces[tag_n]
                absorbed = face_n.mul(face_n.embed_d(d_i), x_n)
                if not face_n.is_zero(absorbed):
                    if i == 0:
                        rest = [(tag_n, absorbed)] + list(seq[i + 2:])
                        total = total + self._expect(rest, 0)
                    else:
                        tag_l, x_l = centered_prefix[i - 1]
                        assert tag_l == tag_n  # two faces alternate
                        merged = face_n.mul(x_l, absorbed)
                        if not face_n.is_zero(merged):
                            rest = centered_prefix[:i - 1] + \
                                [(tag_n, merged)] + list(seq[i + 2:])
                            total = total + self._expect(rest, i - 1)
            # the i == m-1 diagonal branch is a centered alternating word
            # times a diagonal on the right: its expectation vanishes
            centered = face_i.sub(x_i, face_i.embed_d(d_i))
            if face_i.is_zero(centered):
                return total  # later branches all contain this zero letter
            centered_prefix.append((tag_i, centered))
        return total

    def oracle_expectation(self, letters) -> CylFn:
        """Direct crossed-product computation; boundary backend only."""
        if not self.is_boundary:
            raise ValueError("the oracle needs the boundary backend")
        some_face = self.faces[self.tags[0]]
        full = CrossedFace("M", some_face.alphabet, None, some_face.budget)
        out = full.one()
        for tag, x in letters:
            if tag == "D":
                x = full.embed_d(x)
            out = full.mul(out, CrossedElement(x.alphabet, dict(x.terms)))
        return full.expect(out)

    # -- semantic equality up to padded moments ------------------------------

    def weak_equal(self, x: MElement, y: MElement, pads) -> bool:
        """Moment test E(a (x-y) b) = 0 over the given padding elements."""
        z = x - y
        pads = [self.one()] + list(pads)
        for a in pads:
            for b in pads:
                if not (a * z * b).d_part.is_zero():
                    return False
        return True


# ---------------------------------------------------------------------------
# checks shared by all backends

@dataclass
class FreenessViolation:
    family_path: tuple
    elements: tuple
    value: object

    def __repr__(self):
        return f"families {self.family_path}: E = {self.value!r}"


@dataclass
class FreenessReport:
    max_len: int
    words_checked: int = 0
    violations: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self):
        return not self.violations


def freeness_check(ambient, families, max_len, note="") -> FreenessReport:
    """Test that alternating centered words across families have zero
    expectation, for every word of length 2..max_len with letters drawn
    from the given family generator lists.
    """
    centered = [[ambient.center(x) for x in fam] for fam in families]
    report = FreenessReport(max_len=max_len, note=note)

    def extend(path, value):
        length = len(path)
        if length >= 2:
            report.words_checked += 1
            got = ambient.expect(value)
            if not got.is_zero():
                report.violations.append(
                    FreenessViolation(tuple(p for p, _ in path),
                                      tuple(x for _, x in path), got))
        if length == max_len:
            return
        last = path[-1][0] if path else None
        for f_index, fam in enumerate(centered):
            if f_index == last:
                continue
            for e_index, x in enumerate(fam):
                nxt = x if value is None else ambient.mul(value, x)
                extend(path + [(f_index, e_index)], nxt)

    extend([], None)
    return report


@dataclass
class HaarReport:
    max_k: int
    unitary_ok: bool
    failed_exponents: list = field(default_factory=list)

    @property
    def passed(self):
        return self.unitary_ok and not self.failed_exponents


def haar_check(ambient, u, max_k, unit=None) -> HaarReport:
    """Unitarity against the given unit, then vanishing of all moments
    u^k for 0 < |k| <= max_k.
    """
    unit = ambient.one() if unit is None else unit
    u_star = ambient.adjoint(u)
    unitary_ok = ambient.equal(ambient.mul(u, u_star), unit) and \
        ambient.equal(ambient.mul(u_star, u), unit)
    report = HaarReport(max_k=max_k, unitary_ok=unitary_ok)
    for base, sign in ((u, 1), (u_star, -1)):
        power = base
        for k in range(1, max_k + 1):
            if not ambient.expect(power).is_zero():
                report.failed_exponents.append(sign * k)
            if k < max_k:
                power = ambient.mul(power, base)
    report.failed_exponents.sort()
    return report


# ambient adapters ----------------------------------------------------------

class FMAmbient:
    """One finite measured-relation algebra as a freeness/haar ambient."""

    def __init__(self, relation):
        self.face = FMFace("M", relation)

    def one(self):
        return self.face.one()

    def mul(self, x, y):
        return x * y

    def adjoint(self, x):
        return x.adjoint()

    def expect(self, x):
        return self.face.expect(x)

    def center(self, x):
        return x - self.face.embed_d(self.face.expect(x))

    def equal(self, x, y):
        return x == y


class CrossedAmbient:
    """The full-group crossed product as a freeness/haar ambient."""

    def __init__(self, alphabet, budget=6):
        self.face = CrossedFace("M", alphabet, None, budget)

    def one(self):
        return self.face.one()

    def mul(self, x, y):
        return self.face.mul(x, y)

    def adjoint(self, x):
        return self.face.adjoint(x)

    def expect(self, x):
        return self.face.expect(x)

    def center(self, x):
        return self.face.sub(x, self.face.embed_d(self.face.expect(x)))

    def equal(self, x, y):
        return x == y


class MAmbient:
    """The free product itself as a freeness/haar ambient for MElements."""

    def __init__(self, product: FreeProduct):
        self.product = product

    def one(self):
        return self.product.one()

    def mul(self, x, y):
        return x * y

    def adjoint(self, x):
        return x.adjoint()

    def expect(self, x):
        return x.d_part

    def center(self, x):
        return x - self.product.from_d(x.d_part)

    def equal(self, x, y):
        return x == y
