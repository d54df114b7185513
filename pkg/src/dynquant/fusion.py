"""Fusion matrices J_{V,W}(λ) and the shifted cocycle / gauge apparatus.

Two independent constructions are provided:

* fusion_matrix: lift each v to a highest-weight vector of V ⊗ M(λ),
  J(v ⊗ w) = Σ v_i ⊗ a_i(λ - wt v) w, where the F-word a_i acts on w through
  the coproduct of W ⊗ M and only the component on the highest-weight line
  of M is kept.
* fusion_via_intertwiners: compose the intertwiners M(λ) → M ⊗ W and
  M → M ⊗ V (opposite coproduct in the quantum case) and read off the
  coefficient of the highest-weight vector.

Matrices act on column vectors; tensor bases are in lexicographic order.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .linalg import NotInvertible, RationalMatrix, Vector, vec_iadd
from .repn import Representation, TensorModule, _tensor_label, tensor, trivial_rep
from .reports import CheckReport
from .scalars import QUANTUM, Scalar
from .verma import TruncatedVerma, hw_lift, required_height, truncated_verma

__all__ = [
    "RationalMatrix", "NotInvertible", "NotZeroWeight", "fusion_matrix", "fusion_via_intertwiners",
    "swap_matrix", "conjugate_by_swap", "embed3", "shifted_cocycle_check", "gauge_transform",
    "weight_gauge", "check_fusion_structure", "tensor_labels", "tensor_weights",
]

FusionFamily = Callable[[Representation, Representation], RationalMatrix]


class NotZeroWeight(ValueError):
    pass


def tensor_labels(V: Representation, W: Representation) -> List[str]:
    return [_tensor_label(a, b) for a in V.labels for b in W.labels]


def tensor_weights(V: Representation, W: Representation) -> List[Tuple[int, ...]]:
    return [tuple(x + y for x, y in zip(a, b)) for a in V.weights for b in W.weights]


def _apply_fword(T: TensorModule, word: Tuple[int, ...], vec: Vector) -> Vector:
    for j in reversed(word):
        vec = T.act("F", j, vec)
        if not vec:
            break
    return vec


def _verma_for(V: Representation, W: Representation, M: Optional[TruncatedVerma]) -> TruncatedVerma:
    if V.datum != W.datum or V.mode != W.mode:
        raise ValueError("representations must share root datum and mode")
    if M is not None:
        return M
    return truncated_verma(V.datum, V.mode, max(required_height(V), required_height(W), 0))


def fusion_matrix(V: Representation, W: Representation, M: Optional[TruncatedVerma] = None) -> RationalMatrix:
    """J_{V,W}(λ) by highest-weight lifts in V ⊗ M."""
    M = _verma_for(V, W, M)
    F = V.field
    T = TensorModule(W, M)
    dW = W.dim
    top_cache: Dict[Tuple[Tuple[int, ...], int], Vector] = {}

    def top(word: Tuple[int, ...], k: int) -> Vector:
        key = (word, k)
        if key not in top_cache:
            img = _apply_fword(T, word, {(k, ()): F.one})
            top_cache[key] = {kk: x for (kk, w), x in img.items() if w == ()}
        return top_cache[key]

    entries: Dict[Tuple[int, int], Scalar] = {}
    for j in range(V.dim):
        lift = hw_lift(V, M, j)
        for k in range(dW):
            col = j * dW + k
            shift_c = V.weights[j]
            shift_t = tuple(a + b for a, b in zip(V.weights[j], W.weights[k]))
            out: Vector = {}
            for (i, word), c in lift.items():
                cs = F.shift(c, shift_c)
                for kk, t in top(word, k).items():
                    vec_iadd(out, {i * dW + kk: cs * F.shift(t, shift_t)})
            for row, x in out.items():
                entries[(row, col)] = x
    labels = tensor_labels(V, W)
    return RationalMatrix(F, labels, labels, entries)


def fusion_via_intertwiners(V: Representation, W: Representation,
                            M: Optional[TruncatedVerma] = None) -> RationalMatrix:
    """J^{EV}_{V,W}(λ): coefficient of the highest-weight vector in (Φ^a ⊗ 1) Φ^b."""
    if M is None:
        _verma_for(V, W, None)
        M = truncated_verma(V.datum, V.mode, required_height(V) + required_height(W))
    F = V.field
    opp = V.mode == QUANTUM
    TV = TensorModule(M, V, opp)
    TW = TensorModule(M, W, opp)
    dW = W.dim
    lifts_V = [hw_lift(V, M, a, order="MV", opposite=opp, ambient=TV) for a in range(V.dim)]
    entries: Dict[Tuple[int, int], Scalar] = {}
    for b in range(dW):
        phi_b = hw_lift(W, M, b, order="MV", opposite=opp, ambient=TW)
        for a in range(V.dim):
            shift_top = tuple(x + y for x, y in zip(V.weights[a], W.weights[b]))
            out: Vector = {}
            for (word, k), c in phi_b.items():
                cs = F.shift(c, W.weights[b])
                img = _apply_fword(TV, word, lifts_V[a])
                for (w, i), t in img.items():
                    if w == ():
                        vec_iadd(out, {i * dW + k: cs * F.shift(t, shift_top)})
            for row, x in out.items():
                entries[(row, a * dW + b)] = x
    labels = tensor_labels(V, W)
    return RationalMatrix(F, labels, labels, entries)


def swap_matrix(V: Representation, W: Representation) -> RationalMatrix:
    """τ: V ⊗ W → W ⊗ V."""
    dV, dW = V.dim, W.dim
    ent = {(k * dV + i, i * dW + k): V.field.one for i in range(dV) for k in range(dW)}
    return RationalMatrix(V.field, tensor_labels(W, V), tensor_labels(V, W), ent)


def conjugate_by_swap(X: RationalMatrix, V: Representation, W: Representation) -> RationalMatrix:
    """τ X τ for X on W ⊗ V, giving a matrix on V ⊗ W."""
    return swap_matrix(W, V) @ X @ swap_matrix(V, W)


def embed3(op: RationalMatrix, reps: Sequence[Representation], slots: Tuple[int, int],
           shift_slot: Optional[int] = None) -> RationalMatrix:
    """op acting on two of three tensor slots, optionally evaluated at λ - h^{(shift_slot)}.

    op is indexed by the lexicographic basis of the two chosen slots in
    increasing slot order.
    """
    dims = [R.dim for R in reps]
    p, r = slots
    F = reps[0].field
    by_col: Dict[int, List[Tuple[int, Scalar]]] = {}
    for (i, j), x in op.entries.items():
        by_col.setdefault(j, []).append((i, x))

    def index(t):
        return (t[0] * dims[1] + t[1]) * dims[2] + t[2]

    ent = {}
    for a in range(dims[0]):
        for b in range(dims[1]):
            for c in range(dims[2]):
                t = (a, b, c)
                sub_col = t[p] * dims[r] + t[r]
                mu = reps[shift_slot].weights[t[shift_slot]] if shift_slot is not None else None
                for sub_row, x in by_col.get(sub_col, ()):
                    u = list(t)
                    u[p], u[r] = divmod(sub_row, dims[r])
                    ent[(index(u), index(t))] = F.shift(x, mu) if mu is not None else x
    labels = [_tensor_label(_tensor_label(x, y), z) for x in reps[0].labels
              for y in reps[1].labels for z in reps[2].labels]
    return RationalMatrix(F, labels, labels, ent)


def _zero_weight_ok(X: RationalMatrix, weights: Sequence) -> bool:
    return all(weights[i] == weights[j] for (i, j) in X.entries)


def check_fusion_structure(J: RationalMatrix, V: Representation, W: Representation,
                           report: Optional[CheckReport] = None) -> CheckReport:
    """Zero weight and unipotent triangularity in the first-factor weight."""
    report = report or CheckReport(f"structure of J({V.name},{W.name})")
    wts = tensor_weights(V, W)
    report.add("zero weight", _zero_weight_ok(J, wts))
    datum = V.datum
    dW = W.dim
    tri = True
    for (row, col), x in J.entries.items():
        i, j = row // dW, col // dW
        if row == col:
            tri &= x == 1
            continue
        diff = datum.to_alpha(tuple(a - b for a, b in zip(V.weights[i], V.weights[j])))
        if not (all(c >= 0 for c in diff) and any(c > 0 for c in diff)):
            tri = False
    report.add("unipotent triangularity", tri)
    return report


def shifted_cocycle_check(V: Representation, W: Representation, U: Representation,
                          family: FusionFamily = fusion_matrix) -> CheckReport:
    """J_{V⊗W,U}(λ) J_{V,W}(λ)_{12} = J_{V,W⊗U}(λ) J_{W,U}(λ - h^{(1)})_{23}."""
    report = CheckReport(f"shifted cocycle ({V.name}, {W.name}, {U.name})")
    reps = (V, W, U)
    VW, WU = tensor(V, W), tensor(W, U)
    J12 = family(V, W)
    J23 = family(W, U)
    lhs = family(VW, U) @ embed3(J12, reps, (0, 1))
    rhs = family(V, WU) @ embed3(J23, reps, (1, 2), shift_slot=0)
    lhs = RationalMatrix(lhs.field, rhs.rows, rhs.cols, lhs.entries)
    report.compare("cocycle identity", lhs, rhs)
    for name, X, A, B in (("J(V,W)", J12, V, W), ("J(W,U)", J23, W, U)):
        report.add(f"{name} zero weight", _zero_weight_ok(X, tensor_weights(A, B)))
    triv = trivial_rep(V.datum, V.mode)
    for R in (V, W, U):
        report.add(f"normalization J({R.name},trivial)", family(R, triv).is_identity())
        report.add(f"normalization J(trivial,{R.name})", family(triv, R).is_identity())
    return report


# gauge transformations

GaugeFamily = Callable[[Representation], RationalMatrix]


def weight_gauge(g: Callable[[object, Tuple[int, ...]], Scalar]) -> GaugeFamily:
    """Gauge acting on each weight-μ vector by the scalar g(field, μ), a function of λ."""

    def family(R: Representation) -> RationalMatrix:
        ent = {(i, i): g(R.field, tuple(R.weights[i])) for i in range(R.dim)}
        return RationalMatrix(R.field, R.labels, R.labels, ent)

    return family


def _check_gauge(G: RationalMatrix, R: Representation) -> None:
    if not _zero_weight_ok(G, R.weights):
        raise NotZeroWeight(f"gauge on {R.name} mixes weight spaces")


def gauge_transform(family: FusionFamily, G: GaugeFamily) -> FusionFamily:
    """J^G(λ) = G_{V⊗W}(λ) J(λ) G_W(λ - h^{(1)})^{-1} G_V(λ)^{-1}."""
    def new_family(V: Representation, W: Representation) -> RationalMatrix:
        triv = trivial_rep(V.datum, V.mode)
        if not G(triv).is_identity():
            raise ValueError("gauge is not normalized on the trivial representation")
        GV, GW, GVW = G(V), G(W), G(tensor(V, W))
        for X, R in ((GV, V), (GW, W)):
            _check_gauge(X, R)
        IV = RationalMatrix.identity(V.field, V.labels)
        IW = RationalMatrix.identity(W.field, W.labels)
        GW_inv = GW.inverse()
        second = RationalMatrix(V.field, tensor_labels(V, W), tensor_labels(V, W), {
            (i * W.dim + a, i * W.dim + b): V.field.shift(x, V.weights[i])
            for i in range(V.dim) for (a, b), x in GW_inv.entries.items()})
        first = GV.inverse().kron(IW)
        J = family(V, W)
        out = GVW @ J @ second @ first
        return RationalMatrix(out.field, J.rows, J.cols, out.entries)

    return new_family
