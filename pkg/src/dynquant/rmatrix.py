"""Braidings, dynamical R-matrices and Yang-Baxter checks.

The quantum braiding on sl2 modules is σ = Θ ∘ Π ∘ τ with Π the factor
q^{-(wt1, wt2)} and Θ = Σ c_n F^n ⊗ E^n.  The constants c_n are not entered
by hand: they are solved from the requirement that σ be a module map.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .fusion import FusionFamily, embed3, fusion_matrix, swap_matrix, tensor_labels, tensor_weights
from .linalg import RationalMatrix, ShapeMismatch, solve_linear
from .repn import Representation, sl2_irrep, tensor
from .reports import CheckReport
from .scalars import CLASSICAL, QUANTUM, Scalar, ScalarField


class UnsupportedRank(NotImplementedError):
    pass


class NotModuleMap(ArithmeticError):
    pass


@dataclass
class BraidingData:
    V: Representation
    W: Representation
    matrix: RationalMatrix
    theta: Sequence[Scalar] = ()

    def inverse(self) -> RationalMatrix:
        return self.matrix.inverse()


def _power(M: RationalMatrix, n: int) -> RationalMatrix:
    out = RationalMatrix.identity(M.field, M.rows)
    for _ in range(n):
        out = out @ M
    return out


def _pi_matrix(W: Representation, V: Representation) -> RationalMatrix:
    """Π on W ⊗ V: multiply w ⊗ v by q^{-(wt w, wt v)}."""
    F = W.field
    datum = W.datum
    ent = {}
    for idx, (a, b) in enumerate((a, b) for a in W.weights for b in V.weights):
        ent[(idx, idx)] = F.qpow(-datum.pairing(a, b))
    labels = tensor_labels(W, V)
    return RationalMatrix(F, labels, labels, ent)


def _theta_matrix(W: Representation, V: Representation, coeffs: Sequence[Scalar]) -> RationalMatrix:
    FW, EV = W.matrix("F", 0), V.matrix("E", 0)
    out = None
    for n, c in enumerate(coeffs):
        term = _power(FW, n).kron(_power(EV, n)).scale(c)
        out = term if out is None else out + term
    return out


def _is_module_map(S: RationalMatrix, X: Representation, Y: Representation) -> Optional[str]:
    """S: X → Y commutes with all generators; returns the failing generator or None."""
    for gen in ("E", "F"):
        for i in range(X.datum.rank):
            if S @ X.matrix(gen, i) != Y.matrix(gen, i) @ S:
                return f"{gen}{i + 1}"
    if any(X.weights[j] != Y.weights[i] for (i, j) in S.entries):
        return "weight"
    return None


_THETA: Dict[int, List[Scalar]] = {}


def theta_coefficients(field: ScalarField, n_max: int) -> List[Scalar]:
    """c_0..c_{n_max} of the sl2 quasi R-matrix, solved degree by degree."""
    key = id(field)
    coeffs = _THETA.setdefault(key, [field.one])
    while len(coeffs) <= n_max:
        n = len(coeffs)
        V = sl2_irrep(n + 1, QUANTUM)
        known = _theta_matrix(V, V, coeffs) @ _pi_matrix(V, V) @ swap_matrix(V, V)
        new = _theta_matrix(V, V, [field.zero] * n + [field.one]) @ _pi_matrix(V, V) @ swap_matrix(V, V)
        VV = tensor(V, V)
        eqs, rhs = [], []
        for gen in ("E", "F"):
            X = VV.matrix(gen, 0)
            base = known @ X - X @ known
            lin = new @ X - X @ new
            for pos in set(base.entries) | set(lin.entries):
                eqs.append({"c": lin[pos]})
                rhs.append(-base[pos])
        sol, rank = solve_linear(field, eqs, rhs, ["c"])
        if sol is None or rank != 1:
            raise NotModuleMap(f"no unique quasi R-matrix coefficient in degree {n}")
        coeffs.append(sol["c"])
    return coeffs[: n_max + 1]


def braiding(V: Representation, W: Representation, verify: bool = True) -> BraidingData:
    """σ_{V,W}: V ⊗ W → W ⊗ V."""
    tau = swap_matrix(V, W)
    if V.mode == CLASSICAL:
        return BraidingData(V, W, tau)
    if V.datum.rank != 1:
        raise UnsupportedRank("quantum braiding is implemented for sl2 only")
    n_max = min(V.dim, W.dim) - 1
    coeffs = theta_coefficients(V.field, n_max)
    sigma = _theta_matrix(W, V, coeffs) @ _pi_matrix(W, V) @ tau
    sigma = RationalMatrix(sigma.field, tensor_labels(W, V), tensor_labels(V, W), sigma.entries)
    if verify:
        bad = _is_module_map(sigma, tensor(V, W), tensor(W, V))
        if bad:
            raise NotModuleMap(f"braiding fails to commute with {bad}")
    return BraidingData(V, W, sigma, tuple(coeffs))


def braid_relation_check(V: Representation, W: Representation, U: Representation) -> CheckReport:
    """(σ_{W,U} ⊗ 1)(1 ⊗ σ_{V,U})(σ_{V,W} ⊗ 1) = (1 ⊗ σ_{V,W})(σ_{V,U} ⊗ 1)(1 ⊗ σ_{W,U})."""
    report = CheckReport(f"braid relation ({V.name}, {W.name}, {U.name})")

    def left(s, A, B, C):
        return s.kron(RationalMatrix.identity(C.field, C.labels))

    def right(s, A, B, C):
        return RationalMatrix.identity(A.field, A.labels).kron(s)

    sVW, sVU, sWU = (braiding(*p).matrix for p in ((V, W), (V, U), (W, U)))
    lhs = left(sWU, W, U, V) @ right(sVU, W, V, U) @ left(sVW, V, W, U)
    rhs = right(sVW, U, V, W) @ left(sVU, V, U, W) @ right(sWU, V, W, U)
    report.compare("braid relation", _relabel(lhs, rhs), rhs)
    return report


def _relabel(X: RationalMatrix, like: RationalMatrix) -> RationalMatrix:
    return RationalMatrix(X.field, like.rows, like.cols, X.entries)


# dynamical R-matrices

VARIANTS = ("definition", "flip")


def dynamical_R(V: Representation, W: Representation, family: FusionFamily = fusion_matrix,
                variant: str = "flip") -> RationalMatrix:
    """R_{V,W}(λ) = σ^{-1} J_{W,V}(λ)^{-1} σ J_{V,W}(λ) ("definition") or τ ∘ (...) ("flip")."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    sigma = braiding(V, W).matrix
    rcheck = family(W, V).inverse() @ sigma @ family(V, W)
    left = sigma.inverse() if variant == "definition" else swap_matrix(W, V)
    R = left @ rcheck
    return RationalMatrix(R.field, tensor_labels(V, W), tensor_labels(V, W), R.entries)


def dybe_check(V: Representation, W: Representation, U: Representation, family: FusionFamily = fusion_matrix,
               variant: str = "flip", form: str = "prop", R_fn=None) -> CheckReport:
    """Dynamical Yang-Baxter equation on V ⊗ W ⊗ U with slot-wise shifts.

    form "prop":  R23(λ) R13(λ-h2) R12(λ) = R12(λ-h3) R13(λ) R23(λ-h1)
    form "intro": R12(λ-h3) R13(λ) R23(λ-h1) = R23(λ) R13(λ-h2) R12(λ)
    """
    report = CheckReport(f"DYBE[{form}, {variant}] ({V.name}, {W.name}, {U.name})")
    reps = (V, W, U)
    R_fn = R_fn or (lambda A, B: dynamical_R(A, B, family, variant))
    R12, R13, R23 = R_fn(V, W), R_fn(V, U), R_fn(W, U)
    for name, R, A, B in (("R12", R12, V, W), ("R13", R13, V, U), ("R23", R23, W, U)):
        wts = tensor_weights(A, B)
        report.add(f"{name} zero weight", all(wts[i] == wts[j] for (i, j) in R.entries))
    a = embed3(R23, reps, (1, 2))
    b = embed3(R13, reps, (0, 2), shift_slot=1)
    c = embed3(R12, reps, (0, 1))
    d = embed3(R12, reps, (0, 1), shift_slot=2)
    e = embed3(R13, reps, (0, 2))
    f = embed3(R23, reps, (1, 2), shift_slot=0)
    if form == "prop":
        report.compare("dynamical Yang-Baxter", a @ b @ c, d @ e @ f)
    elif form == "intro":
        report.compare("dynamical Yang-Baxter", d @ e @ f, a @ b @ c)
    else:
        raise ValueError(f"unknown form {form!r}")
    return report


def constant_ybe_frt_check(R: RationalMatrix, n: Optional[int] = None, frt: bool = False) -> CheckReport:
    """R12 R13 R23 = R23 R13 R12 for a constant R on V ⊗ V with dim V = n.

    With frt=True also emits the FRT relation R12 T1 T2 = T2 T1 R12 for a
    matrix T of free noncommuting symbols t_ij, as a list of strings.
    """
    N = R.shape[0]
    if R.shape[0] != R.shape[1]:
        raise ShapeMismatch("R must be square")
    n = n or int(round(N ** 0.5))
    if n * n != N:
        raise ShapeMismatch(f"R of size {N} is not an endomorphism of V ⊗ V")
    report = CheckReport("constant Yang-Baxter")
    F = R.field
    I = RationalMatrix.identity(F, [str(i) for i in range(n)])
    R0 = RationalMatrix(F, [str(i) for i in range(N)], [str(i) for i in range(N)], R.entries)
    R12 = R0.kron(I)
    R23 = I.kron(R0)
    P23 = _perm23(F, n)
    R13 = P23 @ R12 @ P23
    report.compare("Yang-Baxter", R12 @ R13 @ R23, R23 @ R13 @ R12)
    if frt:
        report.relations = frt_relations(R0, n)
    return report


def _perm23(F: ScalarField, n: int) -> RationalMatrix:
    labels = [str(i) for i in range(n ** 3)]
    ent = {((a * n + c) * n + b, (a * n + b) * n + c): F.one for a in range(n) for b in range(n) for c in range(n)}
    return RationalMatrix(F, labels, labels, ent)


def frt_relations(R: RationalMatrix, n: int) -> List[str]:
    """Entries of R12 T1 T2 - T2 T1 R12 with T1 T2 = t_ij t_kl (formal)."""
    out = []
    for i in range(n):
        for k in range(n):
            for j in range(n):
                for l in range(n):
                    lhs = [f"({R[(i * n + k, a * n + c)]})*t{a + 1}{j + 1}*t{c + 1}{l + 1}"
                           for a in range(n) for c in range(n) if not R[(i * n + k, a * n + c)].is_zero]
                    rhs = [f"t{k + 1}{c + 1}*t{i + 1}{a + 1}*({R[(a * n + c, j * n + l)]})"
                           for a in range(n) for c in range(n) if not R[(a * n + c, j * n + l)].is_zero]
                    out.append(" + ".join(lhs or ["0"]) + " = " + " + ".join(rhs or ["0"]))
    return out


def random_matrix(F: ScalarField, n: int, seed: int = 0) -> RationalMatrix:
    rng = random.Random(seed)
    labels = [str(i) for i in range(n)]
    return RationalMatrix(F, labels, labels, {(i, j): F(rng.randint(-5, 5)) for i in range(n) for j in range(n)})
