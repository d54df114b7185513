"""Exact scalars.

Classical scalars are rational functions in the weight coordinates
lambda_1..lambda_r.  Quantum scalars are rational functions in v = q^(1/D)
and u_i = q^(lambda_i/D), so every q-power that occurs is an integer power
of v times a monomial in the u_i.

A second copy of the weight variables (printed mu) is available for
computations that need two independent dynamical parameters.
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import ZZ
from sympy.polys.fields import field as _sympy_field

CLASSICAL = "classical"
QUANTUM = "quantum"
MODES = (CLASSICAL, QUANTUM)

Number = Union[int, Fraction]


class ScalarError(Exception):
    pass


class ZeroDenominator(ScalarError, ZeroDivisionError):
    pass


class PoleAtPoint(ScalarError):
    pass


class NonIntegralExponent(ScalarError):
    pass


class ParseError(ScalarError, ValueError):
    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


@functools.lru_cache(maxsize=None)
def scalar_field(mode: str = CLASSICAL, rank: int = 1, D: int = 1, nsets: int = 1,
                 dvals: Tuple[int, ...] = (1,)) -> "ScalarField":
    """Shared field instance; scalars from equal parameters are interoperable."""
    return ScalarField(mode, rank, D, nsets, dvals)


class ScalarField:
    """Context for one family of scalars."""

    def __init__(self, mode: str, rank: int, D: int, nsets: int, dvals: Tuple[int, ...]):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if rank < 1 or nsets < 1 or D < 1:
            raise ValueError("rank, nsets and D must be positive")
        self.mode = mode
        self.rank = rank
        self.D = D
        self.nsets = nsets
        self.dvals = tuple(sorted(set(dvals) | {1}))
        letters = "lm" if mode == CLASSICAL else "uw"
        names: List[str] = [] if mode == CLASSICAL else ["v"]
        for s in range(nsets):
            names += [f"{letters[s]}{i + 1}" for i in range(rank)]
        self._K, *gens = _sympy_field(",".join(names), ZZ)
        self.ring = self._K.ring
        self._offset = 0 if mode == CLASSICAL else 1
        self.ngens = len(names)
        self.zero = Scalar(self, self._K.zero)
        self.one = Scalar(self, self._K.one)

    def __repr__(self) -> str:
        return f"ScalarField({self.mode}, rank={self.rank}, D={self.D}, nsets={self.nsets})"

    # construction

    def __call__(self, x: Union["Scalar", Number]) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field is not self:
                raise ValueError("scalar belongs to a different field")
            return x
        if isinstance(x, Fraction):
            return Scalar(self, self._K(x.numerator) / self._K(x.denominator))
        if isinstance(x, int):
            return Scalar(self, self._K(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    def var_index(self, i: int, s: int = 0) -> int:
        if not (0 <= i < self.rank and 0 <= s < self.nsets):
            raise IndexError("weight variable out of range")
        return self._offset + s * self.rank + i

    def lam(self, i: int = 0, s: int = 0) -> "Scalar":
        """The weight coordinate lambda_{i+1} (classical only)."""
        if self.mode != CLASSICAL:
            raise ScalarError("lambda is not a quantum scalar; use qpow")
        return Scalar(self, self._K.gens[self.var_index(i, s)])

    def affine(self, const: Number = 0, coeffs: Sequence[Number] = (), s: int = 0) -> "Scalar":
        """const + sum coeffs_i lambda_i (classical)."""
        out = self(Fraction(const))
        for i, c in enumerate(coeffs):
            if c:
                out = out + self.lam(i, s) * self(Fraction(c))
        return out

    def qpow(self, const: Number = 0, coeffs: Sequence[Number] = (), s: int = 0) -> "Scalar":
        """q^(const + sum coeffs_i lambda_i) (quantum)."""
        if self.mode != QUANTUM:
            raise ScalarError("q-powers need quantum mode")
        exps = [0] * self.ngens
        exps[0] = _integral(Fraction(const) * self.D)
        for i, c in enumerate(coeffs):
            exps[self.var_index(i, s)] = _integral(Fraction(c) * self.D)
        return self._monomial(exps)

    @property
    def q(self) -> "Scalar":
        return self.qpow(1)

    def qint(self, const: Number = 0, coeffs: Sequence[Number] = (), d: int = 1, s: int = 0) -> "Scalar":
        """Quantum integer [x]_d with x = const + sum coeffs_i lambda_i and q_d = q^d.

        In classical mode this is the q = 1 value x itself.
        """
        if self.mode == CLASSICAL:
            return self.affine(const, coeffs, s)
        x_const = Fraction(const)
        x_coeffs = [Fraction(c) for c in coeffs]
        if x_const == 0 and not any(x_coeffs):
            return self.zero
        top = self.qpow(d * x_const, [d * c for c in x_coeffs], s)
        bot = self.qpow(d * x_const * -1, [-d * c for c in x_coeffs], s)
        return (top - bot) / (self.qpow(d) - self.qpow(-d))

    def quantum_integer(self, c: int, root: Optional[int] = None, symbolic: bool = False,
                        d: int = 1) -> "Scalar":
        """[c]_d, or [lambda_root + c]_d when symbolic."""
        if symbolic:
            if root is None:
                raise ValueError("symbolic quantum integer needs a root index")
            coeffs = [0] * self.rank
            coeffs[root] = 1
            return self.qint(c, coeffs, d)
        return self.qint(c, (), d)

    def qfactorial(self, n: int, d: int = 1) -> "Scalar":
        out = self.one
        for k in range(1, n + 1):
            out = out * self.qint(k, (), d)
        return out

    def qbinomial(self, n: int, k: int, d: int = 1) -> "Scalar":
        if k < 0 or k > n:
            return self.zero
        return self.qfactorial(n, d) / (self.qfactorial(k, d) * self.qfactorial(n - k, d))

    def _monomial(self, exps: Sequence[int]) -> "Scalar":
        pos = tuple(max(e, 0) for e in exps)
        neg = tuple(max(-e, 0) for e in exps)
        num = self.ring.from_dict({pos: 1})
        den = self.ring.from_dict({neg: 1})
        return Scalar(self, self._K.raw_new(num, den))

    def _laurent(self, terms: Dict[Tuple[int, ...], int]) -> "Scalar":
        terms = {m: c for m, c in terms.items() if c}
        if not terms:
            return self.zero
        low = [min(0, min(m[k] for m in terms)) for k in range(self.ngens)]
        num = self.ring.from_dict({tuple(e - l for e, l in zip(m, low)): c for m, c in terms.items()})
        den = self.ring.from_dict({tuple(-l for l in low): 1})
        return Scalar(self, self._K.new(num, den))

    def normalize(self, num_terms: Dict[Tuple[int, ...], Number],
                  den_terms: Dict[Tuple[int, ...], Number]) -> "Scalar":
        """Canonical scalar from an unreduced quotient of Laurent polynomials.

        Terms map exponent vectors over the generators (v, u_1, ... in quantum
        mode; lambda_1, ... in classical mode) to rational coefficients.
        """
        den = self._rational_laurent(den_terms)
        if den.is_zero:
            raise ZeroDenominator("denominator is the zero polynomial")
        return self._rational_laurent(num_terms) / den

    def _rational_laurent(self, terms: Dict[Tuple[int, ...], Number]) -> "Scalar":
        out = self.zero
        for m, c in terms.items():
            if len(m) != self.ngens:
                raise ValueError("exponent vector has wrong length")
            if self.mode == CLASSICAL and any(e < 0 for e in m):
                raise ValueError("classical scalars have no negative exponents")
            out = out + self._monomial(m) * self(Fraction(c))
        return out

    # substitutions

    def shift(self, x: "Scalar", mu: Sequence[int], s: int = 0) -> "Scalar":
        """lambda -> lambda - mu in the weight variables of set s."""
        if not any(mu):
            return x
        A = [[int(i == j) for j in range(self.rank)] for i in range(self.rank)]
        return self.subst_affine(x, A, [-m for m in mu], s)

    def subst_affine(self, x: "Scalar", A: Sequence[Sequence[int]], b: Sequence[Number],
                     s: int = 0) -> "Scalar":
        """lambda_i -> sum_j A_ij lambda_j + b_i in set s (field homomorphism)."""
        r = self.rank
        if self.mode == CLASSICAL:
            images = []
            for i in range(r):
                img = self._K.ring.zero
                for j in range(r):
                    if A[i][j]:
                        img = img + A[i][j] * self._K.ring.gens[self.var_index(j, s)]
                bi = Fraction(b[i])
                if bi.denominator != 1:
                    raise NonIntegralExponent("classical shifts must be integral")
                img = img + int(bi)
                images.append((self._K.ring.gens[self.var_index(i, s)], img))
            num = x.value.numer.compose(images)
            den = x.value.denom.compose(images)
            return Scalar(self, self._K.new(num, den))
        images = {}
        for i in range(r):
            e = [0] * self.ngens
            for j in range(r):
                e[self.var_index(j, s)] += A[i][j]
            e[0] += _integral(Fraction(b[i]))
            images[self.var_index(i, s)] = e
        return self._monomial_map(x, images)

    def _monomial_map(self, x: "Scalar", images: Dict[int, List[int]]) -> "Scalar":
        def image(p) -> "Scalar":
            terms: Dict[Tuple[int, ...], int] = {}
            for m, c in p.terms():
                e = [0] * self.ngens
                for k, ek in enumerate(m):
                    if not ek:
                        continue
                    if k in images:
                        for t, it in enumerate(images[k]):
                            e[t] += ek * it
                    else:
                        e[k] += ek
                key = tuple(e)
                terms[key] = terms.get(key, 0) + int(c)
            return self._laurent(terms)

        return image(x.value.numer) / image(x.value.denom)

    def embed(self, x: "Scalar", target: "ScalarField", s: int) -> "Scalar":
        """Rename weight set 0 of x to weight set s of target."""
        if target.mode != self.mode or target.rank != self.rank:
            raise ValueError("incompatible fields")
        idx = list(range(self.ngens))
        for i in range(self.rank):
            idx[self.var_index(i, 0)] = target.var_index(i, s)
        if self.mode == QUANTUM:
            idx[0] = 0

        def move(p):
            out = {}
            for m, c in p.terms():
                e = [0] * target.ngens
                for k, ek in enumerate(m):
                    e[idx[k]] += ek
                out[tuple(e)] = c
            return target.ring.from_dict(out)

        return Scalar(target, target._K.raw_new(move(x.value.numer), move(x.value.denom)))

    # evaluation

    def evaluate(self, x: "Scalar", point: Sequence[Number], q: Optional[Union[Number, float]] = None,
                 point2: Sequence[Number] = ()):
        """Exact value at rational weights (and q in quantum mode)."""
        values = list(point) + list(point2)
        if len(values) != self.rank * self.nsets:
            raise ValueError("point has wrong dimension")
        values = [Fraction(p) for p in values]
        if self.mode == QUANTUM and q is None:
            raise ValueError("quantum evaluation needs a value of q")

        def ev(p):
            total = 0
            for m, c in p.terms():
                if self.mode == CLASSICAL:
                    t = Fraction(int(c))
                    for k, e in enumerate(m):
                        if e:
                            t *= values[k] ** e
                else:
                    expo = Fraction(m[0])
                    for k in range(1, self.ngens):
                        expo += m[k] * values[k - 1]
                    expo /= self.D
                    if expo.denominator != 1:
                        raise NonIntegralExponent(f"q-exponent {expo} is not an integer")
                    base = Fraction(q) if isinstance(q, (int, Fraction)) else q
                    t = int(c) * base ** int(expo)
                total += t
            return total

        den = ev(x.value.denom)
        if den == 0:
            raise PoleAtPoint("denominator vanishes at the point")
        return ev(x.value.numer) / den

    # text

    def parse(self, text: str) -> "Scalar":
        from .exprio import parse_scalar

        return parse_scalar(self, text)

    def format(self, x: "Scalar", style: str = "plain") -> str:
        from .exprio import format_scalar

        return format_scalar(x, style)

    def random(self, rng: random.Random, complexity: int = 3) -> "Scalar":
        """A random scalar built from the generators (test helper)."""
        out = self(rng.randint(-3, 3))
        for _ in range(complexity):
            i = rng.randrange(self.rank)
            s = rng.randrange(self.nsets)
            c = rng.randint(-3, 3)
            coeffs = [0] * self.rank
            coeffs[i] = 1
            if self.mode == CLASSICAL:
                atom = self.affine(c, coeffs, s)
            else:
                kind = rng.randrange(3)
                if kind == 0:
                    atom = self.qint(c, coeffs, rng.choice(self.dvals), s)
                elif kind == 1:
                    atom = self.qpow(Fraction(c, self.D), [Fraction(rng.randint(-2, 2), self.D) if k == i else 0
                                                          for k in range(self.rank)], s)
                else:
                    atom = self.qint(rng.randint(1, 3))
            op = rng.randrange(4)
            if op == 0:
                out = out + atom
            elif op == 1:
                out = out * atom
            elif op == 2 and not atom.is_zero:
                out = out / atom
            else:
                out = out - atom * self(rng.randint(1, 3))
        return out


def _integral(x: Fraction) -> int:
    if x.denominator != 1:
        raise NonIntegralExponent(f"exponent {x} is not integral after clearing D")
    return int(x)


class Scalar:
    """Immutable element of a ScalarField in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field: ScalarField, value):
        self.field = field
        self.value = value

    def _coerce(self, other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.value - o.value)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, o.value - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.value * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDenominator("division by zero scalar")
        return Scalar(self.field, self.value / o.value)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_zero:
                raise ZeroDenominator("zero to a negative power")
            return Scalar(self.field, self.value ** n)
        return Scalar(self.field, self.value ** n)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (Scalar, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return not self.is_zero

    @property
    def is_zero(self) -> bool:
        return not self.value.numer

    @property
    def numer(self):
        return self.value.numer

    @property
    def denom(self):
        return self.value.denom

    @property
    def is_constant(self) -> bool:
        """True when no weight variable occurs."""
        f = self.field
        ks = [f.var_index(i, s) for s in range(f.nsets) for i in range(f.rank)]
        for p in (self.value.numer, self.value.denom):
            for m in p.monoms():
                if any(m[k] for k in ks):
                    return False
        return True

    def shift(self, mu: Sequence[int], s: int = 0) -> "Scalar":
        return self.field.shift(self, mu, s)

    def subst_affine(self, A, b, s: int = 0) -> "Scalar":
        return self.field.subst_affine(self, A, b, s)

    def evaluate(self, point, q=None, point2=()):
        return self.field.evaluate(self, point, q, point2)

    def format(self, style: str = "plain") -> str:
        return self.field.format(self, style)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Scalar({self.format()!r})"


def shift_substitute(s: Scalar, mu: Sequence[int]) -> Scalar:
    return s.field.shift(s, mu)


def evaluate_numeric(s: Scalar, point: Sequence[Number], q=None):
    return s.field.evaluate(s, point, q)


def parse_expr(text: str, field: ScalarField) -> Scalar:
    return field.parse(text)


def print_expr(s: Scalar, style: str = "plain") -> str:
    return s.format(style)
