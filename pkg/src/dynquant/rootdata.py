"""Root data, Weyl group words and the dot action."""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .scalars import CLASSICAL, Scalar, ScalarField, scalar_field

Weight = Tuple[int, ...]


class UnsupportedType(ValueError):
    pass


class NotReduced(ValueError):
    pass


_CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    # alpha_1 long, alpha_2 short
    "B2": ((2, -1), (-2, 2)),
    # alpha_1 short, alpha_2 long
    "G2": ((2, -3), (-1, 2)),
}
_SYMMETRIZERS = {"A1": (1,), "A2": (1, 1), "B2": (2, 1), "G2": (1, 3)}


def _matrix_inverse(A: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


@dataclass(frozen=True)
class WeylWord:
    """Word s_{i1} s_{i2} ... in 1-based simple reflection indices."""

    letters: Tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "WeylWord":
        text = text.strip()
        if text in ("", "e", "ε"):
            return cls(())
        parts = text.replace(",", " ").split()
        if len(parts) == 1:
            parts = list(parts[0])
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad Weyl word {text!r}") from exc

    def __str__(self) -> str:
        return "".join(str(i) for i in self.letters) if self.letters else "e"

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "WeylWord") -> "WeylWord":
        return WeylWord(self.letters + other.letters)


class RootDatum:
    """Finite type root datum with weights in fundamental-weight coordinates."""

    def __init__(self, name: str, cartan: Sequence[Sequence[int]], d: Sequence[int]):
        self.name = name
        self.rank = len(cartan)
        self.cartan = tuple(tuple(r) for r in cartan)
        self.d = tuple(d)
        r = self.rank
        A = self.cartan
        for i in range(r):
            for j in range(r):
                if self.d[i] * A[i][j] != self.d[j] * A[j][i]:
                    raise UnsupportedType(f"{name}: symmetrizers do not symmetrize the Cartan matrix")
        # alpha_i in fundamental-weight coordinates is column i of A
        self.simple_roots: Tuple[Weight, ...] = tuple(tuple(A[j][i] for j in range(r)) for i in range(r))
        self.rho: Weight = tuple(1 for _ in range(r))
        inv_t = _matrix_inverse([[A[j][i] for j in range(r)] for i in range(r)])
        # (w_i, w_j) = (A^T)^{-1}_{ji} d_i
        self.fund_form = tuple(tuple(inv_t[j][i] * self.d[i] for j in range(r)) for i in range(r))
        self.root_form = tuple(tuple(Fraction(self.d[i] * A[i][j]) for j in range(r)) for i in range(r))
        self.D = 1
        for row in self.fund_form:
            for x in row:
                self.D = lcm(self.D, x.denominator)
        self.coxeter = tuple(tuple(1 if i == j else _coxeter_entry(A[i][j] * A[j][i]) for j in range(r))
                             for i in range(r))
        self._alpha_coords = inv_t  # weight -> alpha coordinates via (A^T)^{-1}

    def __repr__(self) -> str:
        return f"RootDatum({self.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootDatum) and (self.cartan, self.d) == (other.cartan, other.d)

    def __hash__(self) -> int:
        return hash((self.cartan, self.d))

    # fields

    def field(self, mode: str, nsets: int = 1) -> ScalarField:
        if mode == CLASSICAL:
            return scalar_field(CLASSICAL, self.rank, 1, nsets, (1,))
        return scalar_field(mode, self.rank, self.D, nsets, tuple(sorted(set(self.d))))

    # forms

    def pairing(self, mu: Sequence, nu: Sequence) -> Fraction:
        """(mu, nu) for weights in fundamental-weight coordinates."""
        r = self.rank
        return sum((Fraction(mu[i]) * Fraction(nu[j]) * self.fund_form[i][j]
                    for i in range(r) for j in range(r)), Fraction(0))

    def coroot_pairing(self, mu: Sequence, i: int):
        """<mu, alpha_i^vee> (0-based i)."""
        return mu[i]

    def to_alpha(self, mu: Sequence) -> Tuple[Fraction, ...]:
        r = self.rank
        return tuple(sum(Fraction(mu[k]) * self._alpha_coords[i][k] for k in range(r)) for i in range(r))

    def from_alpha(self, c: Sequence[int]) -> Weight:
        r = self.rank
        return tuple(sum(c[k] * self.simple_roots[k][i] for k in range(r)) for i in range(r))

    def height(self, mu: Sequence) -> Fraction:
        return sum(self.to_alpha(mu), Fraction(0))

    # roots

    @functools.cached_property
    def positive_roots(self) -> Tuple[Tuple[int, ...], ...]:
        """Positive roots in simple-root coordinates, sorted by height then lexicographically."""
        r = self.rank
        seen = set()
        queue = deque(tuple(int(i == j) for j in range(r)) for i in range(r))
        while queue:
            b = queue.popleft()
            if b in seen:
                continue
            seen.add(b)
            for i in range(r):
                pair = sum(b[j] * self.cartan[i][j] for j in range(r))
                c = list(b)
                c[i] -= pair
                c = tuple(c)
                if all(x >= 0 for x in c) and any(c) and c not in seen:
                    queue.append(c)
        return tuple(sorted(seen, key=lambda b: (sum(b), tuple(-x for x in b))))

    def is_root_or_zero(self, mu: Sequence[int]) -> bool:
        """mu in weight coordinates."""
        if not any(mu):
            return True
        c = self.to_alpha(mu)
        if any(x.denominator != 1 for x in c):
            return False
        c = tuple(int(x) for x in c)
        neg = tuple(-x for x in c)
        roots = set(self.positive_roots)
        return c in roots or neg in roots

    # Weyl group

    def reflect(self, i: int, mu: Sequence) -> tuple:
        """s_i(mu), i 0-based."""
        a = self.simple_roots[i]
        m = mu[i]
        return tuple(x - m * y for x, y in zip(mu, a))

    def act(self, w: WeylWord, mu: Sequence) -> tuple:
        out = tuple(mu)
        for i in reversed(w.letters):
            out = self.reflect(i - 1, out)
        return out

    def dot(self, w: WeylWord, mu: Sequence) -> tuple:
        shifted = tuple(x + 1 for x in mu)
        return tuple(x - 1 for x in self.act(w, shifted))

    def linear_part(self, w: WeylWord) -> Tuple[Tuple[int, ...], ...]:
        """Matrix M with w(mu)_i = sum_j M_ij mu_j."""
        r = self.rank
        cols = [self.act(w, tuple(int(i == j) for i in range(r))) for j in range(r)]
        return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))

    def dot_affine(self, w: WeylWord) -> Tuple[Tuple[Tuple[int, ...], ...], Weight]:
        """(A, b) with w.lambda = A lambda + b."""
        return self.linear_part(w), tuple(self.dot(w, (0,) * self.rank))

    def dot_action(self, w: WeylWord, lam):
        """Dot action on a weight; Scalar entries are handled componentwise."""
        A, b = self.dot_affine(w)
        r = self.rank
        return tuple(sum((A[i][j] * lam[j] for j in range(r)), 0) + b[i] for i in range(r))

    def dot_substitute(self, w: WeylWord, x: Scalar, s: int = 0) -> Scalar:
        """x(lambda) -> x(w.lambda)."""
        A, b = self.dot_affine(w)
        return x.field.subst_affine(x, A, b, s)

    def element_key(self, w: WeylWord) -> Tuple:
        """Faithful invariant of the group element: image of rho + small generic weight."""
        return self.act(w, tuple(Fraction(1) + Fraction(1, 7 + k) for k in range(self.rank)))

    @functools.cached_property
    def _elements(self) -> Dict[Tuple, WeylWord]:
        """BFS over the Cayley graph; values are lexicographically least reduced words."""
        if self.rank > 4:
            raise UnsupportedType("Weyl group enumeration limited to rank <= 4")
        start = WeylWord(())
        found = {self.element_key(start): start}
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(1, self.rank + 1):
                    u = w + WeylWord((i,))
                    k = self.element_key(u)
                    if k not in found:
                        found[k] = u
                        nxt.append(u)
            frontier = sorted(nxt, key=lambda w: w.letters)
        return found

    def length(self, w: WeylWord) -> int:
        return len(self._elements[self.element_key(w)])

    def is_reduced(self, w: WeylWord) -> bool:
        return self.length(w) == len(w)

    def normal_form(self, w: WeylWord) -> WeylWord:
        """Lexicographically least reduced word for the element."""
        return min(self.reduced_words(w), key=lambda u: u.letters)

    def longest_element(self) -> WeylWord:
        return min((u for u in self._elements.values() if len(u) == max(len(x) for x in self._elements.values())),
                   key=lambda u: u.letters)

    def reduced_words(self, w: WeylWord) -> FrozenSet[WeylWord]:
        target = self.element_key(w)
        n = self.length(w)
        out = set()

        def grow(prefix: Tuple[int, ...]):
            if len(prefix) == n:
                if self.element_key(WeylWord(prefix)) == target:
                    out.add(WeylWord(prefix))
                return
            for i in range(1, self.rank + 1):
                p = prefix + (i,)
                if self.length(WeylWord(p)) == len(p):
                    # p must be a prefix of a reduced word for w: l(p^{-1} w) = n - len(p)
                    inv = WeylWord(tuple(reversed(p)))
                    if self.length(inv + w) == n - len(p):
                        grow(p)

        grow(())
        return frozenset(out)

    def braid_equivalent(self, w1: WeylWord, w2: WeylWord) -> bool:
        """Search over braid moves between reduced words."""
        for w in (w1, w2):
            if not self.is_reduced(w):
                raise NotReduced(f"{w} is not reduced")
        if len(w1) != len(w2):
            return False
        seen = {w1.letters}
        queue = deque([w1.letters])
        while queue:
            cur = queue.popleft()
            if cur == w2.letters:
                return True
            for nb in self._braid_moves(cur):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return False

    def _braid_moves(self, word: Tuple[int, ...]):
        n = len(word)
        for i in range(1, self.rank + 1):
            for j in range(1, self.rank + 1):
                if i == j:
                    continue
                m = self.coxeter[i - 1][j - 1]
                left = tuple(i if k % 2 == 0 else j for k in range(m))
                right = tuple(j if k % 2 == 0 else i for k in range(m))
                for start in range(n - m + 1):
                    if word[start:start + m] == left:
                        yield word[:start] + right + word[start + m:]

    # Kostant partition function (oracle for Verma weight spaces)

    def kostant_count(self, beta: Sequence[int]) -> int:
        """Number of multisets of positive roots summing to beta (simple-root coordinates)."""
        roots = self.positive_roots

        @functools.lru_cache(maxsize=None)
        def count(b: Tuple[int, ...], k: int) -> int:
            if not any(b):
                return 1
            if k == len(roots):
                return 0
            total = count(b, k + 1)
            r = roots[k]
            c = tuple(x - y for x, y in zip(b, r))
            while all(x >= 0 for x in c):
                total += count(c, k + 1)
                c = tuple(x - y for x, y in zip(c, r))
            return total

        return count(tuple(beta), 0)


def _coxeter_entry(p: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[p]


@functools.lru_cache(maxsize=None)
def build_root_datum(type_name: str) -> RootDatum:
    """A1, A2, B2, G2, or An (n <= 4) for vector-representation data."""
    name = type_name.strip().upper()
    if name in _CARTAN:
        return RootDatum(name, _CARTAN[name], _SYMMETRIZERS[name])
    if name.startswith("A") and name[1:].isdigit():
        n = int(name[1:])
        if 1 <= n <= 4:
            cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
            return RootDatum(name, cartan, [1] * n)
    raise UnsupportedType(f"unsupported root datum type {type_name!r}")


def pairing(datum: RootDatum, mu: Sequence, nu: Sequence) -> Fraction:
    return datum.pairing(mu, nu)


def dot_action(datum: RootDatum, w: WeylWord, lam):
    return datum.dot_action(w, lam)


def reduced_words(datum: RootDatum, w: WeylWord) -> FrozenSet[WeylWord]:
    return datum.reduced_words(w)


def braid_equivalent(datum: RootDatum, w1: WeylWord, w2: WeylWord) -> bool:
    return datum.braid_equivalent(w1, w2)
