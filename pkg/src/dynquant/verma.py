"""Height-truncated universal Verma module, highest-weight lifts, extremal
projector and the Harish-Chandra map.

Basis vectors are F-words: the tuple (j1, ..., jk) stands for
F_{j1} ... F_{jk} x with x the generic highest-weight vector of weight λ.
Words are reduced modulo the Serre relations by graded linear algebra.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .linalg import RationalMatrix, Vector, solve_linear, vec_add, vec_iadd, vec_scale
from .repn import Module, Representation, TensorModule, h_scalar, trivial_rep
from .rootdata import RootDatum
from .scalars import CLASSICAL, QUANTUM, Scalar

Word = Tuple[int, ...]


class TruncationOverflow(ArithmeticError):
    pass


class TruncationTooShallow(ArithmeticError):
    pass


class NotCentral(ValueError):
    pass


# algebra words

@dataclass(frozen=True)
class AlgebraWord:
    """Formal combination of generator words; letters act right to left.

    Letters: ("E", i), ("F", i), ("H", i), ("K", mu), ("Kinv", mu).
    """

    terms: Tuple[Tuple[Scalar, Tuple[Tuple, ...]], ...]

    @classmethod
    def word(cls, field, *letters) -> "AlgebraWord":
        return cls(((field.one, tuple(letters)),))

    def __add__(self, other: "AlgebraWord") -> "AlgebraWord":
        return AlgebraWord(self.terms + other.terms)

    def __mul__(self, other: "AlgebraWord") -> "AlgebraWord":
        return AlgebraWord(tuple((a * b, u + w) for a, u in self.terms for b, w in other.terms))

    def scale(self, c: Scalar) -> "AlgebraWord":
        return AlgebraWord(tuple((a * c, u) for a, u in self.terms))

    def max_letters(self, kind: str) -> int:
        return max((sum(1 for l in w if l[0] == kind) for _, w in self.terms), default=0)


def act_word(z: AlgebraWord, module: Module, vec: Vector) -> Vector:
    out: Vector = {}
    for c, letters in z.terms:
        v = dict(vec)
        for letter in reversed(letters):
            v = module.act_letter(letter, v)
            if not v:
                break
        vec_iadd(out, v, c)
    return out


def sl2_casimir(field) -> AlgebraWord:
    """Classical ef + fe + h^2/2."""
    E, F, H = ("E", 0), ("F", 0), ("H", 0)
    return AlgebraWord(((field.one, (E, F)), (field.one, (F, E)), (field(Fraction(1, 2)), (H, H))))


# Serre relators in the F generators

def _serre_relators(datum: RootDatum, mode: str, field) -> List[Tuple[Tuple[int, ...], Dict[Word, Scalar]]]:
    out = []
    for i in range(datum.rank):
        for j in range(datum.rank):
            if i == j:
                continue
            n = 1 - datum.cartan[i][j]
            rel: Dict[Word, Scalar] = {}
            for k in range(n + 1):
                c = field.qbinomial(n, k, datum.d[i]) if mode == QUANTUM else field(comb(n, k))
                w = (i,) * (n - k) + (j,) + (i,) * k
                rel[w] = rel.get(w, field.zero) + c * (-1) ** k
            beta = [0] * datum.rank
            beta[i] += n
            beta[j] += 1
            out.append((tuple(beta), rel))
    return out


class TruncatedVerma(Module):
    """Universal Verma module truncated at height N."""

    def __init__(self, datum: RootDatum, mode: str, N: int):
        if N < 0:
            raise ValueError("height bound must be nonnegative")
        self.datum = datum
        self.mode = mode
        self.N = N
        self.field = datum.field(mode)
        r = datum.rank
        words_by_beta: Dict[Tuple[int, ...], List[Word]] = {}
        for h in range(N + 1):
            for w in itertools.product(range(r), repeat=h):
                words_by_beta.setdefault(self._beta(w), []).append(w)
        self._words = words_by_beta
        self._reduce: Dict[Word, Vector] = {}
        self.basis_by_beta: Dict[Tuple[int, ...], List[Word]] = {}
        relators = _serre_relators(datum, mode, self.field)
        for beta in sorted(words_by_beta, key=lambda b: (sum(b), b)):
            self._echelon(beta, relators)
        self.basis: List[Word] = [w for beta in sorted(self.basis_by_beta, key=lambda b: (sum(b), b))
                                  for w in self.basis_by_beta[beta]]
        self._e_cache: Dict[Tuple[int, Word], Vector] = {}

    def __repr__(self) -> str:
        return f"TruncatedVerma({self.datum.name}, {self.mode}, N={self.N}, dim={len(self.basis)})"

    def _beta(self, w: Word) -> Tuple[int, ...]:
        b = [0] * self.datum.rank
        for j in w:
            b[j] += 1
        return tuple(b)

    def _echelon(self, beta, relators) -> None:
        F = self.field
        rows: List[Dict[Word, Scalar]] = []
        for gamma, rel in relators:
            rest = tuple(x - y for x, y in zip(beta, gamma))
            if any(x < 0 for x in rest):
                continue
            for (b1, left) in self._split_beta(rest):
                for u in self._words.get(left, []):
                    for u2 in self._words.get(b1, []):
                        row: Dict[Word, Scalar] = {}
                        for w, c in rel.items():
                            key = u + w + u2
                            row[key] = row.get(key, F.zero) + c
                        rows.append({k: v for k, v in row.items() if not v.is_zero})
        # reduced row echelon form, pivot = largest word
        pivots: Dict[Word, Dict[Word, Scalar]] = {}
        for row in rows:
            for p, prow in pivots.items():
                if p in row:
                    row = vec_add(row, prow, -row[p])
            if not row:
                continue
            p = max(row)
            row = vec_scale(row, F.one / row[p])
            for q in list(pivots):
                if p in pivots[q]:
                    pivots[q] = vec_add(pivots[q], row, -pivots[q][p])
            pivots[p] = row
        basis = [w for w in self._words[beta] if w not in pivots]
        self.basis_by_beta[beta] = basis
        for w in basis:
            self._reduce[w] = {w: F.one}
        for p, row in pivots.items():
            self._reduce[p] = {w: -c for w, c in row.items() if w != p}

    @staticmethod
    def _split_beta(beta):
        ranges = [range(x + 1) for x in beta]
        for b1 in itertools.product(*ranges):
            yield b1, tuple(x - y for x, y in zip(beta, b1))

    def dimension(self, beta: Sequence[int]) -> int:
        return len(self.basis_by_beta.get(tuple(beta), []))

    def weight(self, key: Word) -> Tuple[int, Tuple[int, ...]]:
        return (1, tuple(-x for x in self.datum.from_alpha(self._beta(key))))

    def height(self, key: Word) -> int:
        return len(key)

    def reduce(self, w: Word) -> Vector:
        if len(w) > self.N:
            raise TruncationOverflow(f"word of height {len(w)} exceeds bound {self.N}")
        return self._reduce[w]

    def act(self, gen: str, i: int, vec: Vector) -> Vector:
        out: Vector = {}
        if gen == "F":
            for w, c in vec.items():
                vec_iadd(out, self.reduce((i,) + w), c)
        else:
            for w, c in vec.items():
                vec_iadd(out, self._e_word(i, w), c)
        return out

    def _e_word(self, i: int, w: Word) -> Vector:
        key = (i, w)
        if key in self._e_cache:
            return self._e_cache[key]
        if not w:
            out: Vector = {}
        else:
            j, rest = w[0], w[1:]
            out = {}
            for b, c in self._e_word(i, rest).items():
                vec_iadd(out, self.reduce((j,) + b), c)
            if i == j:
                h = h_scalar(self.datum, self.field, i, self.weight(rest))
                vec_iadd(out, self.reduce(rest), h)
        self._e_cache[key] = out
        return out


def truncated_verma(datum: RootDatum, mode: str, N: int) -> TruncatedVerma:
    return _verma_cached(datum, mode, N)


@functools.lru_cache(maxsize=64)
def _verma_cached(datum: RootDatum, mode: str, N: int) -> TruncatedVerma:
    return TruncatedVerma(datum, mode, N)


# highest-weight lifts

def _nonneg_alpha(datum: RootDatum, mu: Sequence[int]) -> Optional[Tuple[int, ...]]:
    c = datum.to_alpha(mu)
    if any(x.denominator != 1 or x < 0 for x in c):
        return None
    return tuple(int(x) for x in c)


def required_height(V: Representation) -> int:
    """Largest height difference between weights of V."""
    best = 0
    for a in V.weights:
        for b in V.weights:
            c = _nonneg_alpha(V.datum, tuple(x - y for x, y in zip(a, b)))
            if c is not None:
                best = max(best, sum(c))
    return best


@dataclass
class HWSpace:
    """Highest-weight vectors, one per basis vector of V."""

    V: Representation
    M: TruncatedVerma
    ambient: TensorModule
    vectors: List[Vector]
    order: str = "VM"

    def leading_matrix(self) -> RationalMatrix:
        F = self.V.field
        cols = []
        for v in self.vectors:
            col = {}
            for key, x in v.items():
                vi, w = (key if self.order == "VM" else (key[1], key[0]))
                if w == ():
                    col[vi] = x
            cols.append(col)
        return RationalMatrix.from_columns(F, self.V.labels, self.V.labels, cols)


def hw_lift(V: Representation, M: TruncatedVerma, v: int, order: str = "VM", opposite: bool = False,
            ambient: Optional[TensorModule] = None) -> Vector:
    """Highest-weight vector in V ⊗ M (order "VM") or M ⊗ V (order "MV") with leading term v ⊗ x."""
    datum = V.datum
    F = V.field
    T = ambient or (TensorModule(V, M, opposite) if order == "VM" else TensorModule(M, V, opposite))

    def key(i, w):
        return (i, w) if order == "VM" else (w, i)

    unknowns = []
    for i, wi in enumerate(V.weights):
        c = _nonneg_alpha(datum, tuple(x - y for x, y in zip(wi, V.weights[v])))
        if c is None or not any(c):
            continue
        if sum(c) > M.N:
            raise TruncationTooShallow(f"height {sum(c)} needed, bound is {M.N}")
        for w in M.basis_by_beta.get(c, []):
            unknowns.append(key(i, w))
    lead = {key(v, ()): F.one}
    if not unknowns:
        for j in range(datum.rank):
            if T.act("E", j, lead):
                raise TruncationTooShallow("leading vector is not highest weight and has no corrections")
        return lead
    eq_rows: Dict[Hashable, Dict[Hashable, Scalar]] = {}
    rhs: Dict[Hashable, Scalar] = {}
    for j in range(datum.rank):
        for (k, x) in T.act("E", j, lead).items():
            rhs[(j, k)] = rhs.get((j, k), F.zero) - x
        for u in unknowns:
            for k, x in T.act("E", j, {u: F.one}).items():
                eq_rows.setdefault((j, k), {})[u] = x
    keys = sorted(set(eq_rows) | set(rhs), key=repr)
    sol, rank = solve_linear(F, [eq_rows.get(k, {}) for k in keys], [rhs.get(k, F.zero) for k in keys], unknowns)
    if sol is None or rank != len(unknowns):
        raise TruncationTooShallow("highest-weight lift is not unique at this truncation")
    out = dict(lead)
    for u, x in sol.items():
        if not x.is_zero:
            out[u] = x
    return out


def highest_weight_space(V: Representation, M: Optional[TruncatedVerma] = None, order: str = "VM",
                         opposite: bool = False) -> HWSpace:
    if M is None:
        M = truncated_verma(V.datum, V.mode, required_height(V))
    if M.datum != V.datum or M.mode != V.mode:
        raise ValueError("V and M must share root datum and mode")
    T = TensorModule(V, M, opposite) if order == "VM" else TensorModule(M, V, opposite)
    vecs = [hw_lift(V, M, v, order, opposite, T) for v in range(V.dim)]
    return HWSpace(V, M, T, vecs, order)


# extremal projector

def _root_triples(datum: RootDatum, field) -> List[Tuple[Tuple[int, ...], AlgebraWord, AlgebraWord, int]]:
    """Positive roots with (e_gamma, f_gamma, <rho, gamma^vee>) in a normal ordering.

    Supported: rank one, and type A2 with ordering alpha1, alpha1+alpha2, alpha2.
    """
    one = field.one
    if datum.rank == 1:
        return [((1,), AlgebraWord.word(field, ("E", 0)), AlgebraWord.word(field, ("F", 0)), 1)]
    if datum.name == "A2":
        e1, e2 = AlgebraWord.word(field, ("E", 0)), AlgebraWord.word(field, ("E", 1))
        f1, f2 = AlgebraWord.word(field, ("F", 0)), AlgebraWord.word(field, ("F", 1))
        e12 = e1 * e2 + (e2 * e1).scale(-one)
        f21 = f2 * f1 + (f1 * f2).scale(-one)
        return [((1, 0), e1, f1, 1), ((1, 1), e12, f21, 2), ((0, 1), e2, f2, 1)]
    raise NotImplementedError(f"extremal projector product formula not available for {datum.name}")


def _coroot_value(datum: RootDatum, gamma: Tuple[int, ...], wt: Tuple[int, Tuple[int, ...]], field):
    """<wt, gamma^vee> as a Scalar; gamma in simple-root coordinates (simply laced)."""
    c, mu = wt
    coeffs = [c * g for g in gamma]
    const = sum(g * m for g, m in zip(gamma, mu))
    return const, coeffs


def _weight_components(module: Module, vec: Vector) -> Dict[Tuple, Vector]:
    out: Dict[Tuple, Vector] = {}
    for k, x in vec.items():
        out.setdefault(module.weight(k), {})[k] = x
    return out


def rank_one_projector(module: Module, gamma, e_word: AlgebraWord, f_word: AlgebraWord, rho_shift: int,
                       vec: Vector) -> Vector:
    """sum_n (-1)^n/[n]! f^n e^n m / prod_{j=1}^n [<wt m, gamma^vee> + rho_shift + j]."""
    F = module.field
    datum = module.datum
    out: Vector = {}
    for wt, comp in _weight_components(module, vec).items():
        const, coeffs = _coroot_value(datum, gamma, wt, F)
        vec_iadd(out, comp)
        e_pow = comp
        g = F.one
        n = 0
        while True:
            e_pow = act_word(e_word, module, e_pow)
            if not e_pow:
                break
            n += 1
            g = g * F.qint(const + rho_shift + n, coeffs)
            term = e_pow
            for _ in range(n):
                term = act_word(f_word, module, term)
            coeff = F((-1) ** n) / (F.qfactorial(n) * g)
            vec_iadd(out, term, coeff)
    return out


def extremal_projector(module: Module, vec: Vector) -> Vector:
    """Ordered product of rank-one projectors (rightmost factor acts first)."""
    triples = _root_triples(module.datum, module.field)
    out = vec
    for gamma, e_w, f_w, shift in reversed(triples):
        out = rank_one_projector(module, gamma, e_w, f_w, shift, out)
    return out


def complete_weight_spaces(V: Representation, M: TruncatedVerma, order: str = "VM") -> Dict[Tuple, List[Hashable]]:
    """Weight spaces of V ⊗ M whose every basis vector lies inside the truncation."""
    datum = V.datum
    spaces: Dict[Tuple, List[Hashable]] = {}
    for i, wi in enumerate(V.weights):
        for w in M.basis:
            wt = (1, tuple(a - b for a, b in zip(wi, datum.from_alpha(M._beta(w)))))
            spaces.setdefault(wt, []).append((i, w) if order == "VM" else (w, i))
    complete = {}
    for wt, keys in spaces.items():
        ok = True
        for wi in V.weights:
            c = _nonneg_alpha(datum, tuple(a - b for a, b in zip(wi, wt[1])))
            if c is not None and sum(c) > M.N:
                ok = False
                break
        if ok:
            complete[wt] = keys
    return complete


@dataclass
class ProjectorReport:
    checks: List[Tuple[str, bool, str]] = dc_field(default_factory=list)
    method: str = "product"

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "method": self.method,
                "checks": [{"check": n, "ok": ok, "detail": d} for n, ok, d in self.checks]}


def verify_projector(V: Representation, M: TruncatedVerma) -> ProjectorReport:
    """Defining properties of P on every complete weight space of V ⊗ M."""
    T = TensorModule(V, M)
    F = V.field
    hw = highest_weight_space(V, M)
    report = ProjectorReport()
    spaces = complete_weight_spaces(V, M)
    for wt, keys in sorted(spaces.items(), key=lambda kv: repr(kv[0])):
        images = {k: extremal_projector(T, {k: F.one}) for k in keys}
        tag = f"weight {wt}"
        idem = all(extremal_projector(T, images[k]) == images[k] for k in keys)
        report.checks.append((f"P^2=P at {tag}", idem, ""))
        kills_e = all(not T.act("E", j, images[k]) for k in keys for j in range(V.datum.rank))
        report.checks.append((f"E P=0 at {tag}", kills_e, ""))
        # F-images are killed
        above_ok = True
        for j in range(V.datum.rank):
            alpha = V.datum.simple_roots[j]
            up = (1, tuple(a + b for a, b in zip(wt[1], alpha)))
            for k in spaces.get(up, []):
                y = T.act("F", j, {k: F.one})
                if extremal_projector(T, y):
                    above_ok = False
        report.checks.append((f"P F=0 at {tag}", above_ok, ""))
        # highest-weight vectors are fixed and match the lifts
        for v, vw in enumerate(V.weights):
            if (1, vw) != wt:
                continue
            lift = hw.vectors[v]
            fixed = extremal_projector(T, lift) == lift
            report.checks.append((f"P fixes lift of {V.labels[v]}", fixed, ""))
            img = images[(v, ())]
            lead = img.get((v, ()))
            match = lead is not None and vec_scale(img, F.one / lead) == lift
            report.checks.append((f"P image of {V.labels[v]}⊗x equals lift", match, ""))
    return report


# Harish-Chandra map

def harish_chandra(z: AlgebraWord, datum: RootDatum, mode: str = CLASSICAL, N: int = 3) -> Scalar:
    """Scalar by which z acts on x, after checking it acts by the same scalar up to height N."""
    extra = z.max_letters("F")
    M = truncated_verma(datum, mode, N + extra)
    F = M.field
    zx = act_word(z, M, {(): F.one})
    if set(zx) - {()}:
        raise NotCentral("z does not preserve the highest-weight line")
    hc = zx.get((), F.zero)
    for w in M.basis:
        if len(w) > N:
            continue
        got = act_word(z, M, {w: F.one})
        if got != ({w: hc} if not hc.is_zero else {}):
            raise NotCentral(f"z does not act by hc(z) on F-word {w}")
    return hc
