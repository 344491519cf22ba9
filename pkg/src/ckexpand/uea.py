"""Universal-enveloping-algebra arithmetic.

Elements are finite Scalar-weighted sums of PBW monomials over a Lie
algebra's generators in the fixed global order.  Products are computed
by rewriting words: each adjacent out-of-order pair X_a X_b (a > b) is
replaced by X_b X_a + [X_a, X_b], which strictly lowers (degree,
inversion count) and therefore terminates in the PBW normal form.

Also provides the quadratic Casimir elements of the kinematical family,
centrality testing, and exact reduction modulo relations that equate a
central element with a scalar eigenvalue (the algebraic stand-in for
fixing an irreducible representation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .liealg import LieAlgebra
from .poly import Scalar, as_scalar, parse_scalar, _tokenize, _Parser

__all__ = [
    "UEAElement",
    "CentralRelation",
    "CentralReducer",
    "MixedAlgebraError",
    "UnsupportedAlgebraError",
    "BoundExceededError",
    "pbw_normalize",
    "uea_mul",
    "uea_commutator",
    "casimir",
    "is_central",
    "standard_relations",
    "central_reduce",
    "parse_element",
]


class MixedAlgebraError(ValueError):
    """Operands belong to different algebras."""


class UnsupportedAlgebraError(ValueError):
    """No Casimir elements are defined for this algebra."""


class BoundExceededError(ValueError):
    """The requested cofactor degree bound is inconsistent with the input."""


def _mono_key(exps):
    return (sum(exps), exps)


class UEAElement:
    """A normal-ordered element of the universal enveloping algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms=None):
        self.algebra = algebra
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, algebra) -> "UEAElement":
        return cls(algebra)

    @classmethod
    def one(cls, algebra) -> "UEAElement":
        return cls(algebra, {(0,) * algebra.dim: Scalar.one()})

    @classmethod
    def generator(cls, algebra, label: str) -> "UEAElement":
        exps = [0] * algebra.dim
        exps[algebra.index(label)] = 1
        return cls(algebra, {tuple(exps): Scalar.one()})

    @classmethod
    def monomial(cls, algebra, powers: dict, coeff=1) -> "UEAElement":
        """Element coeff * prod(label**power); factors must be normal-ordered
        anyway since a PBW monomial is given by its exponents."""
        exps = [0] * algebra.dim
        for label, power in powers.items():
            exps[algebra.index(label)] = power
        coeff = as_scalar(coeff)
        if coeff.is_zero:
            return cls(algebra)
        return cls(algebra, {tuple(exps): coeff})

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), Scalar.zero())

    def support_generators(self):
        """Labels of generators actually appearing."""
        used = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(self.algebra.generators[i])
        return tuple(sorted(used))

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise MixedAlgebraError(
                f"elements of {self.algebra.name!r} and {other.algebra.name!r}"
            )

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps, Scalar.zero()) + coeff
            if acc.is_zero:
                terms.pop(exps, None)
            else:
                terms[exps] = acc
        return UEAElement(self.algebra, terms)

    def __neg__(self):
        return UEAElement(
            self.algebra, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff) -> "UEAElement":
        coeff = as_scalar(coeff)
        if coeff.is_zero:
            return UEAElement(self.algebra)
        return UEAElement(
            self.algebra, {e: c * coeff for e, c in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return uea_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def commutator(self, other) -> "UEAElement":
        return uea_commutator(self, other)

    def __eq__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        if self.algebra.generators != other.algebra.generators:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def substitute(self, mapping) -> "UEAElement":
        terms = {}
        for exps, coeff in self.terms.items():
            val = coeff.substitute(mapping)
            if not val.is_zero:
                terms[exps] = val
        return UEAElement(self.algebra, terms)

    def rebase(self, algebra: LieAlgebra) -> "UEAElement":
        """Reinterpret over another algebra with the same generator list."""
        if algebra.generators != self.algebra.generators:
            raise MixedAlgebraError("generator lists differ, cannot rebase")
        return UEAElement(algebra, dict(self.terms))

    # -- textual format ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=_mono_key, reverse=True):
            coeff = self.terms[exps]
            mono = " ".join(
                lab if e == 1 else f"{lab}^{e}"
                for lab, e in zip(self.algebra.generators, exps)
                if e
            ) or "1"
            cstr = str(coeff)
            if cstr.startswith("-") and " " not in cstr and "/" not in cstr:
                sign, cstr = "-", cstr[1:]
            elif cstr.startswith("-"):
                sign, cstr = "-", str(-coeff)
            else:
                sign = "+"
            if " " in cstr:
                cstr = f"({cstr})"
            body = f"{cstr} * {mono}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"UEAElement({self.algebra.name}: {self})"


def pbw_normalize(algebra: LieAlgebra, word, coeff=1) -> UEAElement:
    """Normal-order a word of generator indices with a Scalar weight."""
    coeff = as_scalar(coeff)
    result: dict = {}
    stack = [(tuple(word), coeff)]
    while stack:
        w, c = stack.pop()
        if c.is_zero:
            continue
        pos = -1
        for p in range(len(w) - 1):
            if w[p] > w[p + 1]:
                pos = p
                break
        if pos < 0:
            exps = [0] * algebra.dim
            for idx in w:
                exps[idx] += 1
            key = tuple(exps)
            acc = result.get(key, Scalar.zero()) + c
            if acc.is_zero:
                result.pop(key, None)
            else:
                result[key] = acc
            continue
        a, b = w[pos], w[pos + 1]
        stack.append((w[:pos] + (b, a) + w[pos + 2 :], c))
        for n, bc in algebra.bracket(a, b).items():
            stack.append((w[:pos] + (n,) + w[pos + 2 :], c * bc))
    return UEAElement(algebra, result)


def _word_of(exps):
    word = []
    for idx, e in enumerate(exps):
        word.extend([idx] * e)
    return tuple(word)


def uea_mul(a: UEAElement, b: UEAElement) -> UEAElement:
    a._check(b)
    total = UEAElement(a.algebra)
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            total = total + pbw_normalize(
                a.algebra, _word_of(ea) + _word_of(eb), ca * cb
            )
    return total


def uea_commutator(a: UEAElement, b: UEAElement) -> UEAElement:
    return uea_mul(a, b) - uea_mul(b, a)


# -- Casimir elements ----------------------------------------------------------


def _require_commuting(g: LieAlgebra, pairs):
    # guards the ordering-free entry of the Casimir expressions
    for x, y in pairs:
        if g.bracket_labels(x, y):
            raise UnsupportedAlgebraError(
                f"[{x},{y}] != 0 in {g.name}: Casimir entry would be ambiguous"
            )


def casimir(g: LieAlgebra, index: int) -> UEAElement:
    """The quadratic invariants of the kinematical family.

    For the centrally extended Galilei algebra the product m*Xi takes
    over the role of w2*H: the invariants are P^2 + 2m*Xi*H and
    -P1*K2 + P2*K1 + m*Xi*J (the unextended expressions are not central
    once the extension is switched on).
    """
    family = g.meta.get("family")
    if family == "ck":
        w1, w2 = g.meta["w1"], g.meta["w2"]
        extension = Scalar.zero()
    elif family == "ext-galilei":
        w1 = w2 = Scalar.zero()
        extension = g.meta["m"]
    else:
        raise UnsupportedAlgebraError(f"no Casimirs defined for {g.name!r}")
    if index == 1:
        _require_commuting(g, [("H", "Xi")] if not extension.is_zero else [])
        parts = [
            UEAElement.monomial(g, {"H": 2}, w2),
            UEAElement.monomial(g, {"P1": 2}),
            UEAElement.monomial(g, {"P2": 2}),
            UEAElement.monomial(g, {"K1": 2}, w1),
            UEAElement.monomial(g, {"K2": 2}, w1),
            UEAElement.monomial(g, {"J": 2}, w1 * w2),
        ]
        if not extension.is_zero:
            parts.append(
                UEAElement.monomial(g, {"H": 1, "Xi": 1}, 2 * extension)
            )
    elif index == 2:
        _require_commuting(g, [("H", "J"), ("P1", "K2"), ("P2", "K1")])
        parts = [
            UEAElement.monomial(g, {"H": 1, "J": 1}, w2),
            UEAElement.monomial(g, {"P1": 1, "K2": 1}, -1),
            UEAElement.monomial(g, {"P2": 1, "K1": 1}),
        ]
        if not extension.is_zero:
            parts.append(
                UEAElement.monomial(g, {"J": 1, "Xi": 1}, extension)
            )
    else:
        raise ValueError("Casimir index must be 1 or 2")
    total = UEAElement(g)
    for part in parts:
        total = total + part
    return total


def is_central(x: UEAElement):
    """(True, None) or (False, (offending label, residual))."""
    g = x.algebra
    for label in g.generators:
        residual = uea_commutator(x, UEAElement.generator(g, label))
        if not residual.is_zero:
            return False, (label, residual)
    return True, None


# -- central relations and reduction -------------------------------------------


@dataclass(frozen=True)
class CentralRelation:
    """A verified-central element identified with a scalar eigenvalue."""

    label: str
    element: UEAElement
    scalar: Scalar


def standard_relations(g: LieAlgebra) -> list:
    """Casimir eigenvalue relations (plus m*Xi for the central extension)."""
    relations = [
        CentralRelation("C1", casimir(g, 1), Scalar.symbol("c1")),
        CentralRelation("C2", casimir(g, 2), Scalar.symbol("c2")),
    ]
    family = g.meta.get("family")
    central = g.meta.get("central")
    if family == "ext-galilei" or central:
        m = g.meta.get("m", Scalar.symbol("m"))
        relations.append(
            CentralRelation(
                "mXi",
                UEAElement.monomial(g, {"Xi": 1}, m),
                as_scalar(m) * Scalar.symbol("xi"),
            )
        )
    return relations


class _Span:
    """Exact row-echelon span of UEA term vectors with combination tracking."""

    def __init__(self):
        self.rows: dict = {}  # leading exps -> (terms, rep)

    def reduce(self, terms):
        terms = dict(terms)
        combo: dict = {}
        while True:
            hits = [m for m in terms if m in self.rows]
            if not hits:
                return terms, combo
            m = max(hits, key=_mono_key)
            row_terms, rep = self.rows[m]
            factor = terms[m] / row_terms[m]
            for exps, coeff in row_terms.items():
                acc = terms.get(exps, Scalar.zero()) - factor * coeff
                if acc.is_zero:
                    terms.pop(exps, None)
                else:
                    terms[exps] = acc
            for tag, c in rep.items():
                acc = combo.get(tag, Scalar.zero()) + factor * c
                if acc.is_zero:
                    combo.pop(tag, None)
                else:
                    combo[tag] = acc

    def add(self, terms, tag):
        residual, combo = self.reduce(terms)
        if not residual:
            return
        rep = {tag: Scalar.one()}
        for t, c in combo.items():
            acc = rep.get(t, Scalar.zero()) - c
            if acc.is_zero:
                rep.pop(t, None)
            else:
                rep[t] = acc
        lead = max(residual, key=_mono_key)
        self.rows[lead] = (residual, rep)


class CentralReducer:
    """Reusable reduction modulo <element_i - scalar_i> up to a degree bound.

    The span of {(element_i - scalar_i) * monomial : deg(monomial) <= bound}
    is echelonized once; reductions then subtract the exact best combination.
    """

    def __init__(self, algebra: LieAlgebra, relations, bound: int):
        self.algebra = algebra
        self.relations = list(relations)
        self.bound = bound
        self.span = _Span()
        one = UEAElement.one(algebra)
        for rel in self.relations:
            if rel.element.algebra is not algebra:
                raise MixedAlgebraError("relation element from another algebra")
            base = rel.element - one.scale(rel.scalar)
            for deg in range(bound + 1):
                for word in itertools.combinations_with_replacement(
                    range(algebra.dim), deg
                ):
                    exps = [0] * algebra.dim
                    for idx in word:
                        exps[idx] += 1
                    cofactor = UEAElement(
                        algebra, {tuple(exps): Scalar.one()}
                    )
                    vec = uea_mul(base, cofactor)
                    self.span.add(vec.terms, (rel.label, tuple(exps)))

    def reduce(self, x: UEAElement):
        if x.degree() - 2 > self.bound:
            raise BoundExceededError(
                f"degree {x.degree()} input needs bound >= {x.degree() - 2}, "
                f"got {self.bound}"
            )
        residual, combo = self.span.reduce(x.terms)
        remainder = UEAElement(self.algebra, residual)
        witness = sorted(
            ((label, exps, coeff) for (label, exps), coeff in combo.items()),
            key=lambda item: (item[0], _mono_key(item[1])),
        )
        return remainder, witness


def central_reduce(x: UEAElement, relations, bound=None):
    """Remainder of x modulo the central-relation ideal, with a witness.

    The witness lists (relation label, cofactor exponents, coefficient)
    triples such that x = remainder + sum coeff * (element - scalar) * cofactor.
    """
    if bound is None:
        min_deg = min((rel.element.degree() for rel in relations), default=2)
        bound = max(0, x.degree() - min_deg)
    elif bound < x.degree() - 2:
        raise BoundExceededError(
            f"bound {bound} inconsistent with input degree {x.degree()}"
        )
    reducer = CentralReducer(x.algebra, relations, bound)
    return reducer.reduce(x)


# -- parsing the textual element format ----------------------------------------


def parse_element(algebra: LieAlgebra, text: str) -> UEAElement:
    """Parse the 'coeff * H^a P1^b ...' sum-of-terms format."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty element string")
    # split at top-level +/- signs
    terms = []
    depth = 0
    current: list = []
    sign = 1
    for tok in tokens:
        if tok == ("op", "("):
            depth += 1
        elif tok == ("op", ")"):
            depth -= 1
        if depth == 0 and tok in (("op", "+"), ("op", "-")) and current:
            terms.append((sign, current))
            sign = 1 if tok == ("op", "+") else -1
            current = []
            continue
        if depth == 0 and tok == ("op", "-") and not current:
            sign = -sign
            continue
        if depth == 0 and tok == ("op", "+") and not current:
            continue
        current.append(tok)
    if current:
        terms.append((sign, current))
    labels = set(algebra.generators)
    total = UEAElement(algebra)
    for sign, toks in terms:
        # consume generator power groups from the right
        exps = [0] * algebra.dim
        end = len(toks)
        while end:
            if (
                end >= 3
                and toks[end - 3][0] == "sym"
                and toks[end - 3][1] in labels
                and toks[end - 2] == ("op", "^")
                and toks[end - 1][0] == "int"
            ):
                exps[algebra.index(toks[end - 3][1])] += toks[end - 1][1]
                end -= 3
            elif end >= 1 and toks[end - 1][0] == "sym" and toks[end - 1][1] in labels:
                exps[algebra.index(toks[end - 1][1])] += 1
                end -= 1
            else:
                break
        coeff_toks = toks[:end]
        if sum(exps) == 0:
            # allow an explicit unit monomial "coeff * 1"
            if (
                len(coeff_toks) >= 2
                and coeff_toks[-1] == ("int", 1)
                and coeff_toks[-2] == ("op", "*")
            ):
                coeff_toks = coeff_toks[:-2]
        elif coeff_toks and coeff_toks[-1] == ("op", "*"):
            coeff_toks = coeff_toks[:-1]
        if coeff_toks:
            parser = _Parser(coeff_toks)
            coeff = parser.expr()
            if parser.peek() is not None:
                raise ValueError(f"bad term in element string: {text!r}")
        else:
            coeff = Scalar.one()
        total = total + UEAElement(algebra, {tuple(exps): coeff * sign})
    return total
