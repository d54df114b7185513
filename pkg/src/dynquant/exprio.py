"""Parser and printer for scalar expressions.

Grammar (plain style)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := primary ('^' exponent)?
    exponent:= ('+' | '-') exponent | primary ('^' exponent)?
    primary := INT | VAR | 'q' | 'qint' '(' expr (',' expr)? ')' | '(' expr ')'

VAR is λ, λ1.. (ASCII l, l1..) for the first weight set and μ, μ1..
(ASCII m, m1..) for the second.  Exponents of q and arguments of qint are
affine forms in the weight variables with rational coefficients; all other
exponents are integers.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .scalars import CLASSICAL, ParseError, Scalar, ScalarError, ScalarField

_OPS = set("+-*/^(),")
_PRIMARY = ("integer", "variable", "q", "qint", "(")
_SET_LETTERS = {"λ": 0, "l": 0, "μ": 1, "m": 1}


# tokens

@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks: List[_Tok] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
        elif ch in _OPS:
            toks.append(_Tok("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i, _PRIMARY)
    toks.append(_Tok("end", "", n))
    return toks


# syntax tree

@dataclass
class _Node:
    op: str
    pos: int
    args: tuple = ()
    value: object = None


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def take(self) -> _Tok:
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.take()
        raise ParseError(f"unexpected {self.tok.text or 'end of input'!r}", self.tok.pos, (text,))

    def is_op(self, *texts: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in texts

    def parse(self) -> _Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos,
                             ("+", "-", "*", "/", "^", "end of input"))
        return node

    def expr(self) -> _Node:
        node = self.term()
        while self.is_op("+", "-"):
            t = self.take()
            node = _Node("add" if t.text == "+" else "sub", t.pos, (node, self.term()))
        return node

    def term(self) -> _Node:
        node = self.unary()
        while self.is_op("*", "/"):
            t = self.take()
            node = _Node("mul" if t.text == "*" else "div", t.pos, (node, self.unary()))
        return node

    def unary(self) -> _Node:
        if self.is_op("-", "+"):
            t = self.take()
            inner = self.unary()
            return _Node("neg", t.pos, (inner,)) if t.text == "-" else inner
        return self.power()

    def power(self) -> _Node:
        base = self.primary()
        if self.is_op("^"):
            t = self.take()
            return _Node("pow", t.pos, (base, self.exponent()))
        return base

    def exponent(self) -> _Node:
        if self.is_op("-", "+"):
            t = self.take()
            inner = self.exponent()
            return _Node("neg", t.pos, (inner,)) if t.text == "-" else inner
        return self.power()

    def primary(self) -> _Node:
        t = self.tok
        if t.kind == "int":
            self.take()
            return _Node("num", t.pos, value=int(t.text))
        if t.kind == "op" and t.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "name":
            self.take()
            if t.text == "q":
                return _Node("q", t.pos)
            if t.text == "qint":
                self.expect("(")
                arg = self.expr()
                d = None
                if self.is_op(","):
                    self.take()
                    d = self.expr()
                self.expect(")")
                return _Node("qint", t.pos, (arg, d))
            var = _variable(t.text)
            if var is None:
                raise ParseError(f"unknown name {t.text!r}", t.pos, _PRIMARY)
            return _Node("var", t.pos, value=var)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, _PRIMARY)


def _variable(name: str) -> Optional[Tuple[int, Optional[int]]]:
    head, tail = name[0], name[1:]
    if head not in _SET_LETTERS:
        return None
    if tail == "":
        return (_SET_LETTERS[head], None)
    if tail.isdigit() and int(tail) >= 1:
        return (_SET_LETTERS[head], int(tail) - 1)
    return None


# affine forms

@dataclass
class _Affine:
    const: Fraction = Fraction(0)
    coeffs: Dict[Tuple[int, int], Fraction] = dc_field(default_factory=dict)

    def is_const(self) -> bool:
        return not any(self.coeffs.values())

    def scaled(self, c: Fraction) -> "_Affine":
        return _Affine(self.const * c, {k: v * c for k, v in self.coeffs.items()})

    def plus(self, other: "_Affine", sign: int = 1) -> "_Affine":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + sign * v
        return _Affine(self.const + sign * other.const, out)


def _resolve_var(F: ScalarField, node: _Node) -> Tuple[int, int]:
    s, i = node.value
    if s >= F.nsets:
        raise ParseError("second weight set not available here", node.pos, ("λ",))
    if i is None:
        if F.rank != 1:
            raise ParseError("indexed variable required for rank > 1", node.pos,
                             tuple(f"λ{k + 1}" for k in range(F.rank)))
        i = 0
    if i >= F.rank:
        raise ParseError("variable index exceeds rank", node.pos,
                         tuple(f"λ{k + 1}" for k in range(F.rank)))
    return s, i


def _eval_affine(F: ScalarField, node: _Node) -> _Affine:
    op = node.op
    if op == "num":
        return _Affine(Fraction(node.value))
    if op == "var":
        return _Affine(Fraction(0), {_resolve_var(F, node): Fraction(1)})
    if op == "neg":
        return _eval_affine(F, node.args[0]).scaled(Fraction(-1))
    if op in ("add", "sub"):
        a, b = (_eval_affine(F, x) for x in node.args)
        return a.plus(b, 1 if op == "add" else -1)
    if op == "mul":
        a, b = (_eval_affine(F, x) for x in node.args)
        if a.is_const():
            return b.scaled(a.const)
        if b.is_const():
            return a.scaled(b.const)
        raise ParseError("affine form expected (product of two variables)", node.pos, ("integer",))
    if op == "div":
        a, b = (_eval_affine(F, x) for x in node.args)
        if not b.is_const() or b.const == 0:
            raise ParseError("division by a nonzero constant expected", node.pos, ("integer",))
        return a.scaled(1 / b.const)
    if op == "pow":
        a, b = (_eval_affine(F, x) for x in node.args)
        if a.is_const() and b.is_const() and b.const.denominator == 1:
            if a.const == 0 and b.const < 0:
                raise ParseError("zero to a negative power", node.pos)
            return _Affine(a.const ** int(b.const))
        raise ParseError("affine form expected", node.pos, ("integer",))
    raise ParseError(f"{op} is not allowed in an affine form", node.pos, ("integer", "variable", "("))


def _integer_exponent(F: ScalarField, node: _Node) -> int:
    a = _eval_affine(F, node)
    if not a.is_const() or a.const.denominator != 1:
        raise ParseError("integer exponent expected", node.pos, ("integer",))
    return int(a.const)


def _split_sets(F: ScalarField, a: _Affine) -> List[List[Fraction]]:
    out = [[Fraction(0)] * F.rank for _ in range(F.nsets)]
    for (s, i), c in a.coeffs.items():
        out[s][i] += c
    return out


def _eval_scalar(F: ScalarField, node: _Node) -> Scalar:
    op = node.op
    try:
        if op == "num":
            return F(node.value)
        if op == "var":
            if F.mode != CLASSICAL:
                raise ParseError("weight variables only occur inside q^(...) or qint(...) in quantum mode",
                                 node.pos, ("q", "qint", "integer", "("))
            s, i = _resolve_var(F, node)
            return F.lam(i, s)
        if op == "q":
            if F.mode == CLASSICAL:
                raise ParseError("q is not available in classical mode", node.pos,
                                 ("integer", "variable", "("))
            return F.q
        if op == "qint":
            arg = _eval_affine(F, node.args[0])
            d = 1 if node.args[1] is None else _integer_exponent(F, node.args[1])
            if d < 1:
                raise ParseError("qint root length must be positive", node.args[1].pos, ("integer",))
            parts = _split_sets(F, arg)
            used = [s for s in range(F.nsets) if any(parts[s])]
            if len(used) > 1:
                raise ParseError("qint argument mixes weight sets", node.pos)
            s = used[0] if used else 0
            return F.qint(arg.const, parts[s], d, s)
        if op == "neg":
            return -_eval_scalar(F, node.args[0])
        if op in ("add", "sub", "mul", "div"):
            a = _eval_scalar(F, node.args[0])
            b = _eval_scalar(F, node.args[1])
            if op == "add":
                return a + b
            if op == "sub":
                return a - b
            if op == "mul":
                return a * b
            if b.is_zero:
                raise ParseError("division by zero", node.pos)
            return a / b
        if op == "pow":
            base, ex = node.args
            if base.op == "q":
                if F.mode == CLASSICAL:
                    raise ParseError("q is not available in classical mode", base.pos,
                                     ("integer", "variable", "("))
                a = _eval_affine(F, ex)
                out = F.qpow(a.const)
                for s, coeffs in enumerate(_split_sets(F, a)):
                    if any(coeffs):
                        out = out * F.qpow(0, coeffs, s)
                return out
            n = _integer_exponent(F, ex)
            b = _eval_scalar(F, base)
            if b.is_zero and n < 0:
                raise ParseError("zero to a negative power", node.pos)
            return b ** n
    except ParseError:
        raise
    except ScalarError as exc:
        raise ParseError(str(exc), node.pos) from exc
    raise ParseError(f"unexpected node {op}", node.pos)


def parse_scalar(F: ScalarField, text: str) -> Scalar:
    return _eval_scalar(F, _Parser(text).parse())


# printing

def _var_name(F: ScalarField, s: int, i: int, style: str) -> str:
    if style == "latex":
        base = r"\lambda" if s == 0 else r"\mu"
        return base if F.rank == 1 else f"{base}_{{{i + 1}}}"
    base = "λ" if s == 0 else "μ"
    return base if F.rank == 1 else f"{base}{i + 1}"


def _frac_str(c: Fraction, style: str) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    if style == "latex":
        return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"
    return f"{c.numerator}/{c.denominator}"


def _join_terms(terms: List[Tuple[int, str]]) -> str:
    """terms: (sign, magnitude string); magnitude '' means 1."""
    out = ""
    for k, (sign, mag) in enumerate(terms):
        if k == 0:
            out = ("-" if sign < 0 else "") + mag
        else:
            out += ("-" if sign < 0 else "+") + mag
    return out


def _mono_str(parts: List[Tuple[str, int]], style: str) -> str:
    out = []
    for name, e in parts:
        if e == 1:
            out.append(name)
        elif style == "latex":
            out.append(f"{name}^{{{e}}}")
        else:
            out.append(f"{name}^{e}")
    return ("" if style == "latex" else "*").join(out)


def _classical_poly(F: ScalarField, p, style: str) -> Tuple[str, int]:
    """String of a polynomial and its number of terms."""
    terms = []
    for m, c in p.terms():
        parts = []
        for s in range(F.nsets):
            for i in range(F.rank):
                e = m[F.var_index(i, s)]
                if e:
                    parts.append((_var_name(F, s, i, style), e))
        c = int(c)
        mono = _mono_str(parts, style)
        if not mono:
            mag = str(abs(c))
        elif abs(c) == 1:
            mag = mono
        else:
            mag = f"{abs(c)}{'' if style == 'latex' else '*'}{mono}"
        terms.append((1 if c > 0 else -1, mag))
    return _join_terms(terms), len(terms)


def _wrap(s: str, style: str) -> str:
    return rf"\left({s}\right)" if style == "latex" else f"({s})"


def _factor_items(F: ScalarField, factors, style: str, polystr) -> List[str]:
    items = []
    for f, e in factors:
        text, nterms = polystr(F, f, style)
        single = nterms == 1 and not any(ch in text for ch in "*+-") and not text.startswith("\\frac")
        base = text if single else _wrap(text, style)
        if e != 1:
            base = f"{base}^{{{e}}}" if style == "latex" else f"{base}^{e}"
        items.append((base, single and e == 1, text, nterms))
    return items


def _assemble(sign: int, num_items: List[str], den_items: List[str], style: str,
              bare_num: Optional[str] = None) -> str:
    mul = " " if style == "latex" else "*"
    num = bare_num if bare_num is not None else (mul.join(num_items) if num_items else "1")
    if not den_items:
        out = num
    elif style == "latex":
        out = rf"\frac{{{num}}}{{{mul.join(den_items)}}}"
    elif len(den_items) == 1:
        out = f"{num}/{den_items[0]}"
    else:
        out = f"{num}/({mul.join(den_items)})"
    return ("-" if sign < 0 else "") + out


def _format_classical(x: Scalar, style: str) -> str:
    F = x.field
    num, den = x.numer, x.denom
    if not num:
        return "0"
    cn, nf = num.factor_list()
    cd, df = den.factor_list()
    cn, cd = int(cn), int(cd)
    if cd < 0:
        cn, cd = -cn, -cd
    sign = -1 if cn < 0 else 1
    cn = abs(cn)
    nf = sorted(nf, key=lambda fe: (str(fe[0]), fe[1]))
    df = sorted(df, key=lambda fe: (str(fe[0]), fe[1]))
    n_items = _factor_items(F, nf, style, _classical_poly)
    d_items = _factor_items(F, df, style, _classical_poly)
    num_strs = ([str(cn)] if cn != 1 or not n_items else []) + [it[0] for it in n_items]
    den_strs = ([str(cd)] if cd != 1 else []) + [it[0] for it in d_items]
    bare = None
    if sign > 0 and cn == 1 and not den_strs and len(n_items) == 1 and nf[0][1] == 1:
        bare = n_items[0][2]
    return _assemble(sign, num_strs, den_strs, style, bare)


# quantum printing

def _q_exponent_str(F: ScalarField, expo: List[Fraction], style: str) -> Tuple[str, bool]:
    """Affine exponent text; second value says whether it is a plain positive integer."""
    terms = []
    for s in range(F.nsets):
        for i in range(F.rank):
            c = expo[1 + s * F.rank + i]
            if c:
                name = _var_name(F, s, i, style)
                a = abs(c)
                if a == 1:
                    mag = name
                elif style == "latex":
                    mag = f"{_frac_str(a, style)}{name}"
                else:
                    mag = f"{_frac_str(a, style)}*{name}"
                terms.append((1 if c > 0 else -1, mag))
    c0 = expo[0]
    if c0:
        terms.append((1 if c0 > 0 else -1, _frac_str(abs(c0), style)))
    text = _join_terms(terms)
    plain_int = len(terms) == 1 and c0 > 0 and c0.denominator == 1
    return text, plain_int


def _q_power_str(F: ScalarField, expo: List[Fraction], style: str) -> str:
    text, plain_int = _q_exponent_str(F, expo, style)
    if text == "1":
        return "q"
    if style == "latex":
        return f"q^{{{text}}}"
    return f"q^{text}" if plain_int else f"q^({text})"


def _laurent_str(F: ScalarField, terms: List[Tuple[Tuple[int, ...], int]], style: str) -> str:
    out = []
    for m, c in terms:
        expo = [Fraction(e, F.D) for e in m]
        c = int(c)
        if not any(expo):
            mag = str(abs(c))
        else:
            qs = _q_power_str(F, expo, style)
            mag = qs if abs(c) == 1 else f"{abs(c)}{' ' if style == 'latex' else '*'}{qs}"
        out.append((1 if c > 0 else -1, mag))
    return _join_terms(out)


@functools.lru_cache(maxsize=None)
def _qint_candidates(F: ScalarField):
    """Symbolic quantum integers tried when factoring output."""
    cands = []
    vecs = []
    for mask in range(1, 2 ** F.rank):
        vecs.append(tuple(1 if mask >> i & 1 else 0 for i in range(F.rank)))
    vecs.sort(key=lambda v: (sum(v), tuple(-x for x in v)))
    for s in range(F.nsets):
        for vec in vecs:
            for d in F.dvals:
                for c in range(-10, 11):
                    x = F.qint(c, vec, d, s)
                    P = x.numer
                    cands.append(((s, vec, d, c), P, x))
    return cands


def _probe_point(F: ScalarField) -> List[int]:
    primes = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    return [primes[k % len(primes)] + 10 * (k // len(primes)) for k in range(F.ngens)]


def _int_eval(p, point: List[int]) -> int:
    total = 0
    for m, c in p.terms():
        t = int(c)
        for k, e in enumerate(m):
            if e:
                t *= point[k] ** e
        total += t
    return total


def _divides(P, p, Pval: int, pval: int) -> bool:
    if Pval != 0 and pval % Pval != 0:
        return False
    for k in range(len(P.ring.gens)):
        if P.degree(k) > p.degree(k):
            return False
    _, r = p.div(P)
    return not r


def _monomial_content(p) -> Tuple[int, ...]:
    ms = p.monoms()
    return tuple(min(m[k] for m in ms) for k in range(len(ms[0])))


def _format_quantum(x: Scalar, style: str) -> str:
    F = x.field
    if x.is_zero:
        return "0"
    point = _probe_point(F)
    rem = x
    exps: Dict[tuple, int] = {}
    order = []
    for key, P, qi in _qint_candidates(F):
        Pval = _int_eval(P, point)
        while True:
            num = rem.numer
            if num.is_ground:
                break
            if _divides(P, num, Pval, _int_eval(num, point)):
                rem = rem / qi
                exps[key] = exps.get(key, 0) + 1
                if key not in order:
                    order.append(key)
            else:
                break
        while True:
            den = rem.denom
            if den.is_ground:
                break
            if _divides(P, den, Pval, _int_eval(den, point)):
                rem = rem * qi
                exps[key] = exps.get(key, 0) - 1
                if key not in order:
                    order.append(key)
            else:
                break
    num, den = rem.numer, rem.denom
    mn, md = _monomial_content(num), _monomial_content(den)
    shift = [a - b for a, b in zip(mn, md)]
    num_red = {tuple(e - a for e, a in zip(m, mn)): int(c) for m, c in num.terms()}
    den_red = {tuple(e - a for e, a in zip(m, md)): int(c) for m, c in den.terms()}
    cn = math.gcd(*num_red.values())
    cd = math.gcd(*den_red.values())
    lead_den = den.LC
    if int(lead_den) < 0:
        cd = -cd
    num_terms = sorted(((m, c // cn) for m, c in num_red.items()), reverse=True)
    den_terms = sorted(((m, c // cd) for m, c in den_red.items()), reverse=True)
    sign = 1
    if num_terms[0][1] < 0:
        sign = -1
        num_terms = [(m, -c) for m, c in num_terms]
    const = Fraction(cn, cd)
    if const < 0:
        sign, const = -sign, -const
    num_items: List[str] = []
    den_items: List[str] = []
    if const.numerator != 1:
        num_items.append(str(const.numerator))
    if const.denominator != 1:
        den_items.append(str(const.denominator))
    den_is_one = len(den_terms) == 1 and not any(den_terms[0][0])
    expo = [Fraction(e, F.D) for e in shift]
    mul = " " if style == "latex" else "*"
    if den_is_one and len(num_terms) > 1:
        merged = [(tuple(e + s for e, s in zip(m, shift)), c) for m, c in num_terms]
        poly = _laurent_str(F, merged, style)
        qints = [k for k in order if exps.get(k, 0) > 0]
        if not qints and not num_items and not den_items and not any(exps.get(k, 0) < 0 for k in order):
            if sign < 0:
                return "-" + _wrap(poly, style)
            return poly
        num_items.append(_wrap(poly, style))
    else:
        if any(expo):
            num_items.append(_q_power_str(F, expo, style))
        if len(num_terms) > 1 or any(num_terms[0][0]):
            num_items.append(_poly_item(F, num_terms, style))
    for key in sorted(order, key=lambda k: order.index(k)):
        e = exps[key]
        if e == 0:
            continue
        item = _qint_str(F, key, style)
        if abs(e) != 1:
            item = f"{item}^{{{abs(e)}}}" if style == "latex" else f"{item}^{abs(e)}"
        (num_items if e > 0 else den_items).append(item)
    if not den_is_one:
        den_items.append(_poly_item(F, den_terms, style))
    return _assemble(sign, num_items, den_items, style)


def _poly_item(F: ScalarField, terms, style: str) -> str:
    text = _laurent_str(F, terms, style)
    if len(terms) == 1 and not text.startswith("-") and "*" not in text:
        return text
    return _wrap(text, style)


def _qint_str(F: ScalarField, key, style: str) -> str:
    s, vec, d, c = key
    expo = [Fraction(0)] * F.ngens
    for i, a in enumerate(vec):
        expo[1 + s * F.rank + i] = Fraction(a)
    expo[0] = Fraction(c)
    text, _ = _q_exponent_str(F, expo, style)
    if style == "latex":
        return f"[{text}]" + (f"_{{{d}}}" if d != 1 else "")
    return f"qint({text})" if d == 1 else f"qint({text},{d})"


def format_scalar(x: Scalar, style: str = "plain") -> str:
    if style not in ("plain", "latex"):
        raise ValueError(f"unknown style {style!r}")
    if x.field.mode == CLASSICAL:
        return _format_classical(x, style)
    return _format_quantum(x, style)
