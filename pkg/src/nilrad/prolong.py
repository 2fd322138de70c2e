"""Tanaka prolongation of 2-step graded algebras by exact nullspaces.

The degree-k layer g_k (k >= 0) consists of pairs of maps
u1 : V -> g_{k-1}, u2 : Z -> g_{k-2} (with g_{-1} = V, g_{-2} = Z)
subject to the Leibniz condition u([x,y]) = [u(x), y] + [x, u(y)] over
all pairs of negative-degree basis elements, where the bracket of a
previously computed layer element with a negative element is its stored
action.  Each degree is therefore one exact integer kernel computation;
basis elements come back as primitive integer matrices and are verified
against every assembled equation.

Degree 0 fits the same scheme with u1 = A in End(V), u2 = B in End(Z),
giving the full graded derivation algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import Matrix, nullspace_int_rows
from .nilalg import TwoStepAlgebra


class ProlongationResourceError(RuntimeError):
    """Raised when a requested degree exceeds the configured size guard."""


@dataclass(frozen=True)
class ProlongationLayer:
    """Basis of g_k as coordinate blocks over the previous layers."""

    degree: int
    dim_prev1: int     # dim g_{k-1}, the codomain of the V block
    dim_prev2: int     # dim g_{k-2}, the codomain of the Z block
    basis: Tuple[Tuple[Matrix, Matrix], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class ProlongationResult:
    algebra: TwoStepAlgebra
    layers: Tuple[ProlongationLayer, ...]
    verdict: str                      # "trivial_at_degree_1" | "nontrivial_finite"
    last_nonzero: Optional[int]       # | "nontrivial_up_to_cutoff"

    def dims(self) -> List[int]:
        return [layer.dim for layer in self.layers]


def _layer_dim(alg: TwoStepAlgebra, layers: Sequence[ProlongationLayer],
               j: int) -> int:
    if j == -1:
        return alg.dim_v
    if j == -2:
        return alg.dim_z
    if j < -2:
        return 0
    return layers[j].dim


def _action_matrices(alg: TwoStepAlgebra, layers: Sequence[ProlongationLayer],
                     j: int) -> Tuple[Optional[List[List[List[Fraction]]]],
                                      Optional[List[List[List[Fraction]]]]]:
    """Per-direction action of g_j: (V directions, Z directions).

    av[i][t][b] is the g_{j-1} coordinate t of [b-th basis element, e_i];
    az[a][t][b] the g_{j-2} coordinate t of the bracket with z_a.
    """
    nv, nz = alg.dim_v, alg.dim_z
    if j < -2:
        return None, None
    if j == -2:
        return None, None          # Z brackets to zero against everything
    if j == -1:
        av = [[[alg.bracket_basis(b, i)[t] for b in range(nv)] for t in range(nz)]
              for i in range(nv)]
        return av, None             # [V, Z] = 0
    layer = layers[j]
    d = layer.dim
    d1, d2 = layer.dim_prev1, layer.dim_prev2
    av = [[[layer.basis[b][0][t, i] for b in range(d)] for t in range(d1)]
          for i in range(nv)]
    az = [[[layer.basis[b][1][t, a] for b in range(d)] for t in range(d2)]
          for a in range(nz)]
    return av, az


def compute_layer(alg: TwoStepAlgebra, k: int,
                  layers: Sequence[ProlongationLayer],
                  max_unknowns: int = 20000,
                  max_entries: int = 10**8) -> ProlongationLayer:
    """g_k as one exact kernel computation (k >= 0, layers = g_0..g_{k-1})."""
    if k < 0:
        raise ValueError("layers are computed for degree >= 0")
    if len(layers) != k:
        raise ValueError(f"need previous layers g_0..g_{k-1}, got {len(layers)}")
    nv, nz = alg.dim_v, alg.dim_z
    d1 = _layer_dim(alg, layers, k - 1)
    d2 = _layer_dim(alg, layers, k - 2)
    d3 = _layer_dim(alg, layers, k - 3)
    d4 = _layer_dim(alg, layers, k - 4)
    unknowns = nv * d1 + nz * d2
    if unknowns == 0:
        return ProlongationLayer(k, d1, d2, ())
    equations = (nv * (nv - 1) // 2) * d2 + nv * nz * d3 + (nz * (nz - 1) // 2) * d4
    if unknowns > max_unknowns or unknowns * max(equations, 1) > max_entries:
        raise ProlongationResourceError(
            f"degree {k}: {unknowns} unknowns x {equations} equations "
            f"exceeds the resource guard")
    av1, az1 = _action_matrices(alg, layers, k - 1)
    av2, az2 = _action_matrices(alg, layers, k - 2)
    off2 = nv * d1       # U2 coordinates start here
    rows: List[Dict[int, Fraction]] = []

    # pairs in V x V: u2([x_i, x_j]) = [u1(x_i), x_j] - [u1(x_j), x_i]
    for i in range(nv):
        for j in range(i + 1, nv):
            cij = alg.bracket_basis(i, j)
            for t in range(d2):
                row: Dict[int, Fraction] = {}
                for a in range(nz):
                    if cij[a]:
                        _add(row, off2 + t * nz + a, cij[a])
                if av1 is not None:
                    col_j, col_i = av1[j], av1[i]
                    for b in range(d1):
                        if col_j[t][b]:
                            _add(row, b * nv + i, -col_j[t][b])
                        if col_i[t][b]:
                            _add(row, b * nv + j, col_i[t][b])
                if row:
                    rows.append(row)

    # mixed pairs: [u1(x_i), z_a] = [u2(z_a), x_i]
    if d3:
        for i in range(nv):
            for a in range(nz):
                for t in range(d3):
                    row = {}
                    if az1 is not None:
                        for b in range(d1):
                            if az1[a][t][b]:
                                _add(row, b * nv + i, az1[a][t][b])
                    if av2 is not None:
                        for s in range(d2):
                            if av2[i][t][s]:
                                _add(row, off2 + s * nz + a, -av2[i][t][s])
                    if row:
                        rows.append(row)

    # pairs in Z x Z: [u2(z_a), z_b] = [u2(z_b), z_a]
    if d4 and az2 is not None:
        for a in range(nz):
            for b in range(a + 1, nz):
                for t in range(d4):
                    row = {}
                    for s in range(d2):
                        if az2[b][t][s]:
                            _add(row, off2 + s * nz + a, az2[b][t][s])
                        if az2[a][t][s]:
                            _add(row, off2 + s * nz + b, -az2[a][t][s])
                    if row:
                        rows.append(row)

    int_rows = _clear_denominators(rows, unknowns)
    kernel = nullspace_int_rows(int_rows, unknowns)
    basis = []
    for vec in kernel:
        m1 = Matrix.from_rows([[vec[b * nv + i] for i in range(nv)]
                               for b in range(d1)]) if d1 else Matrix.zeros(0, nv)
        m2 = Matrix.from_rows([[vec[off2 + s * nz + a] for a in range(nz)]
                               for s in range(d2)]) if d2 else Matrix.zeros(0, nz)
        basis.append((m1, m2))
    return ProlongationLayer(k, d1, d2, tuple(basis))


def _add(row: Dict[int, Fraction], col: int, val: Fraction) -> None:
    cur = row.get(col)
    new = val if cur is None else cur + val
    if new:
        row[col] = new
    elif cur is not None:
        del row[col]


def _clear_denominators(rows: List[Dict[int, Fraction]], width: int) -> List[List[int]]:
    out = []
    for row in rows:
        lcm = 1
        for v in row.values():
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        dense = [0] * width
        for c, v in row.items():
            dense[c] = int(v * lcm)
        out.append(dense)
    return out


def g0(alg: TwoStepAlgebra, **guard) -> ProlongationLayer:
    """Graded derivations (A, B) with B[x, y] = [Ax, y] + [x, Ay]."""
    if not alg.is_fundamental():
        raise ValueError("prolongation requires a fundamental algebra")
    return compute_layer(alg, 0, [], **guard)


def g_k(alg: TwoStepAlgebra, k: int, previous: Sequence[ProlongationLayer],
        **guard) -> ProlongationLayer:
    """Degree-k layer from the previously computed g_0 .. g_{k-1}."""
    return compute_layer(alg, k, previous, **guard)


def verify_layer(alg: TwoStepAlgebra, layers: Sequence[ProlongationLayer],
                 k: int) -> bool:
    """Re-verify the Leibniz identity for every basis element of g_k.

    Evaluates u([x,y]) and [u(x), y] + [x, u(y)] through the stored
    action maps on all basis pairs of the negative part (V x V, mixed,
    and Z x Z), exactly.
    """
    layer = layers[k]
    nv, nz = alg.dim_v, alg.dim_z
    d2 = layer.dim_prev2

    def act_v(coords: Sequence[Fraction], j: int, i: int) -> List[Fraction]:
        av, _ = _action_matrices(alg, layers, j)
        if av is None:
            return []
        return [sum((coords[b] * av[i][t][b] for b in range(len(coords))), Fraction(0))
                for t in range(len(av[i]))]

    def act_z(coords: Sequence[Fraction], j: int, a: int) -> List[Fraction]:
        _, az = _action_matrices(alg, layers, j)
        if az is None:
            return []
        return [sum((coords[b] * az[a][t][b] for b in range(len(coords))), Fraction(0))
                for t in range(len(az[a]))]

    for (m1, m2) in layer.basis:
        for i in range(nv):
            for j in range(i + 1, nv):
                cij = alg.bracket_basis(i, j)
                lhs = [sum((m2[t, a] * cij[a] for a in range(nz)), Fraction(0))
                       for t in range(d2)]
                u_xi = [m1[t, i] for t in range(layer.dim_prev1)]
                u_xj = [m1[t, j] for t in range(layer.dim_prev1)]
                rhs1 = act_v(u_xi, k - 1, j)
                rhs2 = act_v(u_xj, k - 1, i)
                if not rhs1:
                    rhs1 = [Fraction(0)] * d2
                if not rhs2:
                    rhs2 = [Fraction(0)] * d2
                if any(l - (r1 - r2) for l, r1, r2 in zip(lhs, rhs1, rhs2)):
                    return False
        d3 = _layer_dim(alg, layers, k - 3)
        if d3:
            for i in range(nv):
                for a in range(nz):
                    u_xi = [m1[t, i] for t in range(layer.dim_prev1)]
                    u_za = [m2[t, a] for t in range(layer.dim_prev2)]
                    lhs = act_z(u_xi, k - 1, a) or [Fraction(0)] * d3
                    rhs = act_v(u_za, k - 2, i) or [Fraction(0)] * d3
                    if any(l - r for l, r in zip(lhs, rhs)):
                        return False
        d4 = _layer_dim(alg, layers, k - 4)
        if d4:
            for a in range(nz):
                for b in range(a + 1, nz):
                    u_za = [m2[t, a] for t in range(layer.dim_prev2)]
                    u_zb = [m2[t, b] for t in range(layer.dim_prev2)]
                    lhs = act_z(u_za, k - 2, b) or [Fraction(0)] * d4
                    rhs = act_z(u_zb, k - 2, a) or [Fraction(0)] * d4
                    if any(l - r for l, r in zip(lhs, rhs)):
                        return False
    return True


def prolong(alg: TwoStepAlgebra, max_degree: int, stop_when_zero: bool = True,
            max_unknowns: int = 20000, max_entries: int = 10**8
            ) -> ProlongationResult:
    """Layers g_0 .. g_max_degree with the finite/infinite-type verdict.

    The verdict is trivial_at_degree_1 when g_1 = 0, nontrivial_finite
    (with the last nonzero degree) when a later layer vanishes, and
    nontrivial_up_to_cutoff otherwise.  Once a layer vanishes all later
    ones do (transitivity over a fundamental base), which is asserted
    when they are requested with stop_when_zero=False.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    guard = {"max_unknowns": max_unknowns, "max_entries": max_entries}
    layers = [g0(alg, **guard)]
    zero_seen = False
    for k in range(1, max_degree + 1):
        layer = compute_layer(alg, k, layers, **guard)
        if zero_seen:
            assert layer.dim == 0, "prolongation transitivity violated"
        layers.append(layer)
        if layer.dim == 0:
            zero_seen = True
            if stop_when_zero:
                break
    dims = [layer.dim for layer in layers]
    if len(dims) > 1 and dims[1] == 0:
        verdict, last = "trivial_at_degree_1", 0 if dims[0] else None
    elif 0 in dims[1:]:
        nonzero = [k for k, d in enumerate(dims) if d > 0]
        verdict, last = "nontrivial_finite", max(nonzero)
    else:
        verdict, last = "nontrivial_up_to_cutoff", None
    return ProlongationResult(alg, tuple(layers), verdict, last)
