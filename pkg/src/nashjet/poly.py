"""Exact sparse multivariate polynomials over Q.

Polynomials are immutable maps ``exponent tuple -> coefficient``.  Coefficients
are ``int`` or :class:`fractions.Fraction`; integers stay integers through
ring operations, which keeps the integral fast paths (minors, Groebner
reductions) free of ``Fraction`` overhead.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

Coefficient = Union[int, Fraction]

ALIASES = ("x", "y", "z", "u", "v")


def _clean(c) -> Coefficient:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, (int, Fraction)):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class MultiIndex(tuple):
    """Exponent vector in N^s.

    Tuple ordering is kept for sorting; the componentwise partial order is
    exposed through :meth:`leq`.  ``+`` and ``-`` act componentwise.
    """

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if not exps:
            raise ValueError("a multi-index needs at least one component")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @classmethod
    def zero(cls, s: int) -> MultiIndex:
        return cls((0,) * s)

    @classmethod
    def unit(cls, i: int, s: int) -> MultiIndex:
        return cls(1 if j == i else 0 for j in range(s))

    def norm(self) -> int:
        return sum(self)

    def factorial(self) -> int:
        return math.prod(math.factorial(e) for e in self)

    def leq(self, other: Sequence[int]) -> bool:
        _check_len(self, other)
        return all(a <= b for a, b in zip(self, other))

    def __add__(self, other):
        _check_len(self, other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _check_len(self, other)
        if not all(b <= a for a, b in zip(self, other)):
            raise ValueError(f"{tuple(other)} is not <= {tuple(self)} componentwise")
        return MultiIndex(a - b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"MultiIndex({tuple(self)})"


def _check_len(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ValueError(f"multi-index length mismatch: {len(a)} vs {len(b)}")


def multi_indices(s: int, degree: int) -> list[MultiIndex]:
    """All multi-indices of length ``s`` and norm ``degree`` in canonical order."""
    out = []
    for combo in combinations_with_replacement(range(s), degree):
        e = [0] * s
        for i in combo:
            e[i] += 1
        out.append(MultiIndex(e))
    # combinations_with_replacement yields x1^d first, which is the grevlex
    # descending order within a single degree
    out.sort(key=lambda m: revlex_key(m), reverse=True)
    return out


def multi_indices_between(s: int, lo: int, hi: int) -> list[MultiIndex]:
    """Multi-indices with ``lo <= |m| <= hi``: graded ascending, grevlex descending within a degree."""
    out: list[MultiIndex] = []
    for d in range(lo, hi + 1):
        out.extend(multi_indices(s, d))
    return out


def revlex_key(m: Sequence[int]) -> tuple[int, ...]:
    # larger key = larger monomial among equal degrees
    return tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights ``w`` with the functional ``deg_w(x^a) = a . w``."""

    weights: tuple[int, ...]

    def __init__(self, weights: Iterable[int]):
        ws = tuple(int(w) for w in weights)
        if not ws:
            raise ValueError("empty weight vector")
        if any(w < 1 for w in ws):
            raise ValueError(f"weights must be positive integers, got {ws}")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def standard(cls, s: int) -> WeightSystem:
        return cls((1,) * s)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[int]:
        return iter(self.weights)

    def __getitem__(self, i: int) -> int:
        return self.weights[i]

    def degree(self, m: Sequence[int]) -> int:
        return sum(a * w for a, w in zip(m, self.weights))

    def key(self, m: Sequence[int]) -> tuple:
        """Sort key for the weighted-degree-then-reverse-lex order."""
        return _order_key(self.weights, tuple(m))


@lru_cache(maxsize=1 << 20)
def _order_key(weights: tuple[int, ...], m: tuple[int, ...]) -> tuple:
    return (sum(a * w for a, w in zip(m, weights)), tuple(-e for e in reversed(m)))


class WeightedDegree(NamedTuple):
    degree: int
    homogeneous: bool


class Polynomial:
    """Sparse polynomial in ``nvars`` variables with exact rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], Coefficient] | None = None):
        if nvars < 1:
            raise ValueError("polynomials need at least one variable")
        self.nvars = nvars
        clean: dict[tuple[int, ...], Coefficient] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nvars:
                    raise ValueError(f"exponent {m} does not have length {nvars}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = _clean(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Polynomial:
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c: Coefficient, nvars: int) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Coefficient = 1) -> Polynomial:
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, i: int, nvars: int) -> Polynomial:
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        return cls._raw(nvars, {tuple(MultiIndex.unit(i, nvars)): 1})

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> Polynomial:
        return parse_polynomial(text, nvars)

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Coefficient]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, m: Sequence[int]) -> Coefficient:
        return self._terms.get(tuple(m), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def total_degree(self) -> int | None:
        if not self._terms:
            return None
        return max(sum(m) for m in self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"ambient dimension mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _clean(v)
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c: Coefficient) -> Polynomial:
        c = _clean(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: _clean(v * c) for m, v in self._terms.items()})

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.nvars, mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, c) -> Polynomial:
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(c))
        return NotImplemented

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, m: Sequence[int], c: Coefficient = 1) -> Polynomial:
        return Polynomial._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(k, m)): _clean(v * c) for k, v in self._terms.items()},
        )

    # -- normalisation ------------------------------------------------------
    def leading_term(self, key=None) -> tuple[tuple[int, ...], Coefficient]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        key = key or WeightSystem.standard(self.nvars).key
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        if all(isinstance(c, int) for c in self._terms.values()):
            return Fraction(reduce(math.gcd, self._terms.values()))
        coeffs = [Fraction(c) for c in self._terms.values()]
        num = reduce(math.gcd, (c.numerator for c in coeffs))
        den = reduce(math.lcm, (c.denominator for c in coeffs))
        return Fraction(num, den)

    def primitive(self, key=None) -> Polynomial:
        """Content 1, positive leading coefficient under ``key`` (default grevlex)."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_term(key)[1] < 0:
            c = -c
        if c.denominator == 1 and all(isinstance(v, int) for v in self._terms.values()):
            k = c.numerator
            return Polynomial._raw(self.nvars, {m: v // k for m, v in self._terms.items()})
        inv = 1 / c
        return Polynomial._raw(self.nvars, {m: _clean(v * inv) for m, v in self._terms.items()})

    def monic(self, key=None) -> Polynomial:
        return self / self.leading_term(key)[1]

    # -- text ---------------------------------------------------------------
    def sorted_terms(self, weights: WeightSystem | None = None):
        key = (weights or WeightSystem.standard(self.nvars)).key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def to_str(self, weights: WeightSystem | None = None) -> str:
        if not self._terms:
            return "0"
        names = variable_names(self.nvars)
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms(weights)):
            sign = "-" if c < 0 else "+"
            a = abs(Fraction(c))
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if a != 1 or not factors:
                factors.insert(0, str(a))
            body = "*".join(factors)
            if k == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.to_str()!r})"


def mul_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                del out[m]
    return {m: _clean(c) for m, c in out.items()}


def variable_names(s: int) -> list[str]:
    if s <= len(ALIASES):
        return list(ALIASES[:s])
    return [f"x{i + 1}" for i in range(s)]


# -- derivatives and weights -------------------------------------------------

def _as_poly(f: Polynomial) -> Polynomial:
    if not isinstance(f, Polynomial):
        raise TypeError(f"expected a Polynomial, got {type(f).__name__}")
    return f


def hasse_derivative(f: Polynomial, gamma: Sequence[int]) -> Polynomial:
    """The scaled derivative ``(1/gamma!) d^gamma f``.

    A term ``c x^a`` maps to ``c * prod C(a_i, gamma_i) x^(a - gamma)`` and
    vanishes when ``a_i < gamma_i`` for some ``i``.  Integral inputs stay
    integral.
    """
    f = _as_poly(f)
    gamma = tuple(gamma)
    if len(gamma) != f.nvars:
        raise ValueError(f"multi-index of length {len(gamma)} for a polynomial in {f.nvars} variables")
    if any(g < 0 for g in gamma):
        raise ValueError(f"negative order in {gamma}")
    out = {}
    for m, c in f.items():
        if any(a < g for a, g in zip(m, gamma)):
            continue
        k = 1
        for a, g in zip(m, gamma):
            k *= math.comb(a, g)
        out[tuple(a - g for a, g in zip(m, gamma))] = c * k
    return Polynomial._raw(f.nvars, out)


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """Ordinary first partial with respect to the variable of index ``i`` (0-based)."""
    f = _as_poly(f)
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    return hasse_derivative(f, MultiIndex.unit(i, f.nvars))


def gradient(f: Polynomial) -> list[Polynomial]:
    return [partial_derivative(f, i) for i in range(f.nvars)]


def weighted_degree(f: Polynomial, w: WeightSystem) -> WeightedDegree | None:
    """Weighted degree of ``f``, or ``None`` for the zero polynomial.

    For non-homogeneous input the maximum term degree is returned with
    ``homogeneous=False``.
    """
    if len(w) != f.nvars:
        raise ValueError(f"{len(w)} weights for a polynomial in {f.nvars} variables")
    if f.is_zero():
        return None
    degs = {w.degree(m) for m in f.monomials()}
    return WeightedDegree(max(degs), len(degs) == 1)


def is_weighted_homogeneous(f: Polynomial, w: WeightSystem) -> bool:
    """Zero counts as homogeneous (of every degree)."""
    wd = weighted_degree(f, w)
    return wd is None or wd.homogeneous


def euler_apply(f: Polynomial, w: WeightSystem) -> Polynomial:
    """``sum_i w_i x_i df/dx_i``; equals ``d f`` iff f is homogeneous of degree d."""
    if len(w) != f.nvars:
        raise ValueError(f"{len(w)} weights for a polynomial in {f.nvars} variables")
    return Polynomial._raw(
        f.nvars,
        {m: _clean(c * w.degree(m)) for m, c in f.items() if w.degree(m)},
    )


# -- parser ------------------------------------------------------------------

class ParseError(ValueError):
    """Malformed polynomial text; ``str()`` shows the input with a caret."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(.))")


class _Parser:
    def __init__(self, text: str, nvars: int | None):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            mt = _TOKEN.match(text, pos)
            if mt is None or mt.end() == pos and pos >= len(text):
                break
            if mt.group(1):
                self.tokens.append(("num", mt.group(1), mt.start(1)))
            elif mt.group(2):
                self.tokens.append(("var", mt.group(2), mt.start(2)))
            elif mt.group(3):
                self.tokens.append(("op", mt.group(3), mt.start(3)))
            else:
                break
            pos = mt.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0
        self.nvars = nvars
        self.uses_alias = False
        self.uses_indexed = False
        self.max_index = -1
        self.var_terms: list[tuple[int, int]] = []  # (index, pos)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    # the tree is built over a symbolic variable count, resolved at the end
    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        tree = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] in ("var", "num") or tok[1] == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {tok[1]!r}")
        return tree

    def expr(self):
        terms = [self.term()]
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            t = self.term()
            terms.append(("neg", t) if op == "-" else t)
        return ("sum", terms)

    def term(self):
        factors = [self.unary()]
        while self.peek() == ("op", "*", self.peek()[2]):
            self.take()
            factors.append(self.unary())
        return ("prod", factors)

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return ("neg", inner) if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.error("expected a non-negative integer exponent after '^'")
            self.take()
            return ("pow", base, int(tok[1]))
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            num = int(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den_tok = self.peek()
                if den_tok[0] != "num":
                    self.error("expected an integer denominator after '/'")
                self.take()
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", self.text, den_tok[2])
                return ("const", Fraction(num, den))
            return ("const", num)
        if kind == "var":
            return ("var", self.variable_index(val, pos))
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", self.text, pos)
        raise ParseError(f"unexpected {val!r}", self.text, pos)

    def variable_index(self, name: str, pos: int) -> int:
        if name in ALIASES:
            self.uses_alias = True
            idx = ALIASES.index(name)
        else:
            mt = re.fullmatch(r"x([1-9]\d*)", name)
            if not mt:
                raise ParseError(f"unknown variable {name!r}", self.text, pos)
            self.uses_indexed = True
            idx = int(mt.group(1)) - 1
        if self.uses_alias and self.uses_indexed:
            raise ParseError("cannot mix aliases (x,y,z,u,v) with indexed variables x1..xs", self.text, pos)
        self.var_terms.append((idx, pos))
        self.max_index = max(self.max_index, idx)
        return idx

    def resolve_nvars(self) -> int:
        needed = self.max_index + 1
        if self.nvars is None:
            return max(needed, 1)
        if self.uses_alias and self.nvars > len(ALIASES):
            raise ParseError(f"aliases are only allowed for at most {len(ALIASES)} variables", self.text, 0)
        for idx, pos in self.var_terms:
            if idx >= self.nvars:
                raise ParseError(f"variable index {idx + 1} exceeds the {self.nvars} declared variables", self.text, pos)
        return self.nvars


def _evaluate(node, s: int) -> Polynomial:
    kind = node[0]
    if kind == "const":
        return Polynomial.constant(node[1], s)
    if kind == "var":
        return Polynomial.variable(node[1], s)
    if kind == "neg":
        return -_evaluate(node[1], s)
    if kind == "pow":
        return _evaluate(node[1], s) ** node[2]
    if kind == "sum":
        out = Polynomial.zero(s)
        for t in node[1]:
            out = out + _evaluate(t, s)
        return out
    if kind == "prod":
        out = Polynomial.constant(1, s)
        for t in node[1]:
            out = out * _evaluate(t, s)
        return out
    raise AssertionError(kind)


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse ``x^3 + y^3``, ``1/2*x1^2*x2`` and the like.

    Variables are ``x1..xs`` or, for ``s <= 5``, the aliases ``x,y,z,u,v``.
    ``nvars`` fixes the ambient dimension; otherwise it is inferred from the
    highest variable present.
    """
    p = _Parser(text, nvars)
    tree = p.parse()
    return _evaluate(tree, p.resolve_nvars())
