"""Finite-dimensional weight representations and module actions.

Coproduct (quantum)::

    Δ(E_i) = E_i ⊗ 1 + K_i ⊗ E_i
    Δ(F_i) = F_i ⊗ K_i^{-1} + 1 ⊗ F_i
    Δ(K_μ) = K_μ ⊗ K_μ

with antipode S(E_i) = -K_i^{-1} E_i, S(F_i) = -F_i K_i, S(K_μ) = K_μ^{-1}.
The opposite tensor product M ⊗̄ N lets h act by h_(2) ⊗ h_(1).
Classical mode uses the primitive coproduct.

Every module exposes ``weight(key) -> (c, mu)`` meaning the weight
c*λ + mu, and ``act(gen, i, vec)`` for gen in {"E", "F"}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .linalg import RationalMatrix, Vector, vec_iadd, vec_scale
from .rootdata import RootDatum, UnsupportedType, Weight, build_root_datum
from .scalars import CLASSICAL, QUANTUM, Scalar, ScalarField

COPRODUCT = "Δ(E)=E⊗1+K⊗E, Δ(F)=F⊗K^-1+1⊗F, Δ(K)=K⊗K"


class ModeMismatch(ValueError):
    pass


def k_scalar(datum: RootDatum, field: ScalarField, mu: Sequence, wt: Tuple[int, Sequence], s: int = 0) -> Scalar:
    """Eigenvalue of K_mu on a vector of weight c*λ + nu."""
    c, nu = wt
    const = datum.pairing(mu, nu)
    if c == 0:
        return field.qpow(const)
    coeffs = [c * datum.pairing(mu, tuple(int(i == j) for j in range(datum.rank))) for i in range(datum.rank)]
    return field.qpow(const, coeffs, s)


def h_scalar(datum: RootDatum, field: ScalarField, i: int, wt: Tuple[int, Sequence], s: int = 0) -> Scalar:
    """Classical <wt, alpha_i^vee>, quantum [<wt, alpha_i^vee>]_{d_i}."""
    c, nu = wt
    coeffs = [0] * datum.rank
    coeffs[i] = c
    return field.qint(nu[i], coeffs, datum.d[i], s)


class Module:
    """Common interface for weight modules over U(g) or U_q(g)."""

    datum: RootDatum
    mode: str
    field: ScalarField

    def weight(self, key: Hashable) -> Tuple[int, Weight]:
        raise NotImplementedError

    def act(self, gen: str, i: int, vec: Vector) -> Vector:
        raise NotImplementedError

    def act_K(self, mu: Sequence[int], vec: Vector, sign: int = 1) -> Vector:
        """K_mu^{sign}; classical mode returns the vector unchanged."""
        if self.mode == CLASSICAL:
            return dict(vec)
        out = {}
        for k, x in vec.items():
            kk = k_scalar(self.datum, self.field, mu, self.weight(k))
            out[k] = x * kk if sign > 0 else x / kk
        return out

    def act_H(self, i: int, vec: Vector) -> Vector:
        """Classical h_i, quantum [h_i] = (K_i - K_i^{-1})/(q_i - q_i^{-1})."""
        return {k: x * h_scalar(self.datum, self.field, i, self.weight(k)) for k, x in vec.items()}

    def act_letter(self, letter: Tuple, vec: Vector) -> Vector:
        """letter: ("E", i), ("F", i), ("H", i), ("K", mu) or ("Kinv", mu)."""
        kind = letter[0]
        if kind in ("E", "F"):
            return self.act(kind, letter[1], vec)
        if kind == "H":
            return self.act_H(letter[1], vec)
        if kind == "K":
            return self.act_K(letter[1], vec, 1)
        if kind == "Kinv":
            return self.act_K(letter[1], vec, -1)
        raise ValueError(f"unknown generator {letter!r}")


class Representation(Module):
    """Finite-dimensional representation given by generator matrices."""

    def __init__(self, datum: RootDatum, mode: str, labels: Sequence[str], weights: Sequence[Weight],
                 E: Sequence[Dict[Tuple[int, int], Scalar]], F: Sequence[Dict[Tuple[int, int], Scalar]],
                 name: str = "rep"):
        self.datum = datum
        self.mode = mode
        self.field = datum.field(mode)
        self.labels = tuple(labels)
        self.weights = tuple(tuple(w) for w in weights)
        self.E = tuple({k: self.field(x) for k, x in m.items() if x != 0} for m in E)
        self.F = tuple({k: self.field(x) for k, x in m.items() if x != 0} for m in F)
        self.name = name
        if len(self.E) != datum.rank or len(self.F) != datum.rank:
            raise ValueError("one E and one F matrix per simple root expected")
        self._cols = {}
        for gen, mats in (("E", self.E), ("F", self.F)):
            for i, m in enumerate(mats):
                cols: Dict[int, Dict[int, Scalar]] = {}
                for (r, c), x in m.items():
                    cols.setdefault(c, {})[r] = x
                self._cols[(gen, i)] = cols

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Representation({self.name}, {self.datum.name}, {self.mode}, dim={self.dim})"

    def weight(self, key: int) -> Tuple[int, Weight]:
        return (0, self.weights[key])

    def act(self, gen: str, i: int, vec: Vector) -> Vector:
        cols = self._cols[(gen, i)]
        out: Vector = {}
        for c, x in vec.items():
            for r, y in cols.get(c, {}).items():
                vec_iadd(out, {r: x * y})
        return out

    def matrix(self, gen: str, i: int) -> RationalMatrix:
        """Matrix of a generator letter (see Module.act_letter)."""
        if gen == "E":
            return RationalMatrix(self.field, self.labels, self.labels, self.E[i])
        if gen == "F":
            return RationalMatrix(self.field, self.labels, self.labels, self.F[i])
        cols = [self.act_letter((gen, i), {j: self.field.one}) for j in range(self.dim)]
        return RationalMatrix.from_columns(self.field, self.labels, self.labels, cols)

    def identity(self) -> RationalMatrix:
        return RationalMatrix.identity(self.field, self.labels)

    def weight_matrix_of(self, fn: Callable[[Weight], Scalar]) -> RationalMatrix:
        return RationalMatrix(self.field, self.labels, self.labels,
                              {(k, k): fn(w) for k, w in enumerate(self.weights)})

    def with_matrices(self, E=None, F=None, name=None) -> "Representation":
        return Representation(self.datum, self.mode, self.labels, self.weights,
                              E if E is not None else self.E, F if F is not None else self.F,
                              name or self.name)


# constructors

def _sl2_datum(datum: Optional[RootDatum]) -> RootDatum:
    datum = datum or build_root_datum("A1")
    if datum.rank != 1:
        raise UnsupportedType("sl2 irreps need a rank-one datum")
    return datum


def sl2_irrep(dim: int, mode: str = CLASSICAL, datum: Optional[RootDatum] = None) -> Representation:
    """Irreducible sl2 module of the given dimension; F acts by ones on the weight basis."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    datum = _sl2_datum(datum)
    n = dim - 1
    F = datum.field(mode)
    if dim == 1:
        labels = ["1"]
    elif dim == 2:
        labels = ["v+", "v-"]
    else:
        labels = [f"v({n - 2 * k})" for k in range(dim)]
    weights = [(n - 2 * k,) for k in range(dim)]
    f_mat = {(k + 1, k): F.one for k in range(n)}
    e_mat = {(k, k + 1): F.qint(k + 1) * F.qint(n - k) for k in range(n)}
    return Representation(datum, mode, labels, weights, [e_mat], [f_mat], name=f"irrep({dim})")


def trivial_rep(datum: RootDatum, mode: str = CLASSICAL) -> Representation:
    return Representation(datum, mode, ["1"], [(0,) * datum.rank], [{}] * datum.rank, [{}] * datum.rank,
                          name="trivial")


def standard_rep(datum: RootDatum, mode: str = CLASSICAL) -> Representation:
    """Vector representation of sl_{n+1}."""
    if not (datum.name.startswith("A") and datum.name[1:].isdigit()):
        raise UnsupportedType("vector representation only for type A")
    n = datum.rank
    if n == 1:
        rep = sl2_irrep(2, mode, datum)
        return rep.with_matrices(name="vector")
    weights = []
    for k in range(n + 1):
        w = [0] * n
        if k < n:
            w[k] += 1
        if k > 0:
            w[k - 1] -= 1
        weights.append(tuple(w))
    F = datum.field(mode)
    E = [{(i, i + 1): F.one} for i in range(n)]
    Fm = [{(i + 1, i): F.one} for i in range(n)]
    return Representation(datum, mode, [f"e{k + 1}" for k in range(n + 1)], weights, E, Fm, name="vector")


class TensorModule(Module):
    """A ⊗ B (or A ⊗̄ B when opposite) with keys (a, b)."""

    def __init__(self, A: Module, B: Module, opposite: bool = False):
        if A.datum != B.datum or A.mode != B.mode:
            raise ModeMismatch("tensor factors must share root datum and mode")
        self.A, self.B = A, B
        self.datum, self.mode = A.datum, A.mode
        self.field = A.field if A.field.nsets >= B.field.nsets else B.field
        self.opposite = opposite

    def weight(self, key) -> Tuple[int, Weight]:
        ca, wa = self.A.weight(key[0])
        cb, wb = self.B.weight(key[1])
        return (ca + cb, tuple(x + y for x, y in zip(wa, wb)))

    def _split(self, vec: Vector, left: bool) -> Dict[Hashable, Vector]:
        """Group by the other factor's key."""
        groups: Dict[Hashable, Vector] = {}
        for (a, b), x in vec.items():
            if left:
                groups.setdefault(b, {})[a] = x
            else:
                groups.setdefault(a, {})[b] = x
        return groups

    def _on_left(self, fn, vec: Vector) -> Vector:
        out: Vector = {}
        for b, va in self._split(vec, True).items():
            for a, x in fn(va).items():
                vec_iadd(out, {(a, b): x})
        return out

    def _on_right(self, fn, vec: Vector) -> Vector:
        out: Vector = {}
        for a, vb in self._split(vec, False).items():
            for b, x in fn(vb).items():
                vec_iadd(out, {(a, b): x})
        return out

    def act(self, gen: str, i: int, vec: Vector) -> Vector:
        A, B = self.A, self.B
        alpha = self.datum.simple_roots[i]
        g = lambda M: (lambda v: M.act(gen, i, v))
        if self.mode == CLASSICAL:
            out = self._on_left(g(A), vec)
            vec_iadd(out, self._on_right(g(B), vec))
            return out
        Kl = lambda M, s: (lambda v: M.act_K(alpha, v, s))
        if not self.opposite:
            if gen == "E":
                # E ⊗ 1 + K ⊗ E
                out = self._on_left(g(A), vec)
                vec_iadd(out, self._on_right(g(B), self._on_left(Kl(A, 1), vec)))
            else:
                # F ⊗ K^{-1} + 1 ⊗ F
                out = self._on_left(g(A), self._on_right(Kl(B, -1), vec))
                vec_iadd(out, self._on_right(g(B), vec))
            return out
        if gen == "E":
            # 1 ⊗ E + E ⊗ K
            out = self._on_right(g(B), vec)
            vec_iadd(out, self._on_left(g(A), self._on_right(Kl(B, 1), vec)))
        else:
            # K^{-1} ⊗ F + F ⊗ 1
            out = self._on_right(g(B), self._on_left(Kl(A, -1), vec))
            vec_iadd(out, self._on_left(g(A), vec))
        return out

    def embed_left(self, vec_a: Vector, b_key) -> Vector:
        return {(a, b_key): x for a, x in vec_a.items()}


def tensor(V: Representation, W: Representation, opposite: bool = False) -> Representation:
    """V ⊗ W with lexicographic pair basis."""
    if V.datum != W.datum:
        raise ModeMismatch("tensor factors must share a root datum")
    if V.mode != W.mode:
        raise ModeMismatch("tensor factors must share a mode")
    T = TensorModule(V, W, opposite)
    keys = [(a, b) for a in range(V.dim) for b in range(W.dim)]
    index = {k: n for n, k in enumerate(keys)}
    labels = [_tensor_label(V.labels[a], W.labels[b]) for a, b in keys]
    weights = [T.weight(k)[1] for k in keys]
    mats = {}
    for gen in ("E", "F"):
        mats[gen] = []
        for i in range(V.datum.rank):
            m = {}
            for k in keys:
                for r, x in T.act(gen, i, {k: V.field.one}).items():
                    m[(index[r], index[k])] = x
            mats[gen].append(m)
    name = f"tensor({V.name},{W.name})" if not opposite else f"otensor({V.name},{W.name})"
    rep = Representation(V.datum, V.mode, labels, weights, mats["E"], mats["F"], name=name)
    rep.factors = (V, W)
    return rep


def _tensor_label(a: str, b: str) -> str:
    def wrap(s):
        return f"({s})" if "⊗" in s else s

    return f"{wrap(a)}⊗{wrap(b)}"


def dual(V: Representation) -> Representation:
    """Left dual with action (h f)(v) = f(S(h) v); basis reversed so weights descend."""
    n = V.dim
    F = V.field
    rev = list(range(n - 1, -1, -1))
    pos = {old: new for new, old in enumerate(rev)}
    labels = [V.labels[k] + "*" for k in rev]
    weights = [tuple(-x for x in V.weights[k]) for k in rev]
    E_new, F_new = [], []
    for i in range(V.datum.rank):
        alpha = V.datum.simple_roots[i]
        e, f = {}, {}
        for (r, c), x in V.E[i].items():
            # S(E) = -K^{-1} E: <f_c', S(E) v_c> ... transpose; K^{-1} evaluated on the target weight
            coeff = -x
            if V.mode == QUANTUM:
                coeff = coeff / k_scalar(V.datum, F, alpha, (0, V.weights[r]))
            e[(pos[c], pos[r])] = coeff
        for (r, c), x in V.F[i].items():
            # S(F) = -F K: K evaluated on the source weight
            coeff = -x
            if V.mode == QUANTUM:
                coeff = coeff * k_scalar(V.datum, F, alpha, (0, V.weights[c]))
            f[(pos[c], pos[r])] = coeff
        E_new.append(e)
        F_new.append(f)
    return Representation(V.datum, V.mode, labels, weights, E_new, F_new, name=f"dual({V.name})")


def double_dual_twist(V: Representation) -> RationalMatrix:
    """Isomorphism V -> V** (as bases are identified): K_{2ρ}^{-1} on the quantum side, identity classically."""
    D = dual(dual(V))
    rho2 = tuple(-2 for _ in range(V.datum.rank))
    if V.mode == CLASSICAL:
        return RationalMatrix.identity(V.field, D.labels)
    return RationalMatrix(V.field, D.labels, V.labels,
                          {(k, k): k_scalar(V.datum, V.field, rho2, (0, w)) for k, w in enumerate(V.weights)})


# relations

@dataclass
class RelationReport:
    checks: List[Tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> List[Tuple[str, bool, str]]:
        return [c for c in self.checks if not c[1]]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [{"relation": n, "ok": ok, "detail": d} for n, ok, d in self.checks]}


def _mat_power(M: RationalMatrix, k: int) -> RationalMatrix:
    out = RationalMatrix.identity(M.field, M.rows)
    for _ in range(k):
        out = out @ M
    return out


def check_relations(V: Representation) -> RelationReport:
    R = V.datum
    F = V.field
    checks: List[Tuple[str, bool, str]] = []
    for i in range(R.rank):
        alpha = R.simple_roots[i]
        for gen, sign in (("E", 1), ("F", -1)):
            bad = [(r, c) for (r, c) in (V.E[i] if gen == "E" else V.F[i])
                   if V.weights[r] != tuple(x + sign * a for x, a in zip(V.weights[c], alpha))]
            checks.append((f"{gen}{i + 1} weight", not bad, f"entries {bad}" if bad else ""))
    for i in range(R.rank):
        for j in range(R.rank):
            Ei, Fj = V.matrix("E", i), V.matrix("F", j)
            lhs = Ei @ Fj - Fj @ Ei
            rhs = V.matrix("H", i) if i == j else RationalMatrix.zeros(F, V.labels, V.labels)
            diff = lhs.first_difference(rhs)
            checks.append((f"[E{i + 1},F{j + 1}]", diff is None,
                           "" if diff is None else f"entry {diff}: {lhs[diff]} vs {rhs[diff]}"))
    for i in range(R.rank):
        for j in range(R.rank):
            if i == j:
                continue
            n = 1 - R.cartan[i][j]
            for gen in ("E", "F"):
                Xi, Xj = V.matrix(gen, i), V.matrix(gen, j)
                total = RationalMatrix.zeros(F, V.labels, V.labels)
                for k in range(n + 1):
                    c = F.qbinomial(n, k, R.d[i]) if V.mode == QUANTUM else F(_binom(n, k))
                    term = _mat_power(Xi, n - k) @ Xj @ _mat_power(Xi, k)
                    total = total + term.scale(c * (-1) ** k)
                ok = not total.entries
                checks.append((f"Serre {gen}{i + 1}{gen}{j + 1}", ok, "" if ok else "nonzero combination"))
    return RelationReport(checks)


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


# rep spec strings

def parse_rep_spec(text: str, datum: RootDatum, mode: str) -> Representation:
    """irrep(n) (dimension n, sl2), vector, trivial, tensor(a,b), dual(a)."""
    text = text.strip()
    if text == "vector":
        return standard_rep(datum, mode)
    if text == "trivial":
        return trivial_rep(datum, mode)
    head, _, rest = text.partition("(")
    if not rest.endswith(")"):
        raise ValueError(f"bad representation spec {text!r}")
    args = split_top_level(rest[:-1])
    head = head.strip()
    if head == "irrep" and len(args) == 1:
        return sl2_irrep(int(args[0]), mode, datum)
    if head == "tensor" and len(args) == 2:
        return tensor(parse_rep_spec(args[0], datum, mode), parse_rep_spec(args[1], datum, mode))
    if head == "dual" and len(args) == 1:
        return dual(parse_rep_spec(args[0], datum, mode))
    raise ValueError(f"bad representation spec {text!r}")


def split_top_level(text: str) -> List[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    if cur.strip():
        out.append(cur.strip())
    return out
