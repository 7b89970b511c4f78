"""Metric and symplectic structure on twisted Lie algebras.

Covers twist-invariant pseudo-Riemannian metrics, the twisted Koszul
formula producing the unique torsion-matching metric-compatible
product, the two-cocycle test for symplectic forms, and the
left-symmetric product a symplectic form induces on an involutive
algebra:

    omega(a(u,v), phi(w)) = -omega(phi(v), [u, w]).

Nondegeneracy is always decided by exact determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DegenerateFormError,
    InvalidStructureError,
    NonInvolutiveTwistError,
    SingularTwistError,
)
from .linalg import (
    Matrix,
    Tensor3,
    basis_vec,
    determinant,
    matrix_inverse,
    solve_linear,
)
from .structures import Violation, check_antisymmetry, commutator_bracket


@dataclass(frozen=True)
class MetricForm:
    """Symmetric nondegenerate Gram matrix of an inner product."""

    gram: Matrix

    def __post_init__(self):
        if not self.gram.is_symmetric:
            raise InvalidStructureError("metric Gram matrix must be symmetric")
        if determinant(self.gram) == 0:
            raise DegenerateFormError("metric Gram matrix is degenerate")

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def inner(self, u, v):
        """<u, v> via the Gram matrix."""
        return sum(
            (a * b for a, b in zip(self.gram.apply(v), u) if a and b), Fraction(0)
        )


@dataclass(frozen=True)
class SymplecticForm:
    """Antisymmetric nondegenerate matrix omega[i][j] = omega(e_i, e_j)."""

    omega: Matrix

    def __post_init__(self):
        if not self.omega.is_antisymmetric:
            raise InvalidStructureError("symplectic matrix must be antisymmetric")
        if determinant(self.omega) == 0:
            raise DegenerateFormError("symplectic matrix is degenerate")

    @property
    def dim(self) -> int:
        return self.omega.nrows

    def value(self, u, v):
        return sum(
            (a * b for a, b in zip(u, self.omega.apply(v)) if a and b), Fraction(0)
        )


def check_pseudo_riemannian(g: MetricForm, phi: Matrix):
    """Twist invariance <phi u, phi v> = <u, v> on all basis pairs."""
    n = g.dim
    lhs_m = phi.transpose() @ g.gram @ phi
    for i in range(n):
        for j in range(i, n):
            if lhs_m[i, j] != g.gram[i, j]:
                return Violation(
                    "pseudo-riemannian",
                    (i + 1, j + 1),
                    (lhs_m[i, j],),
                    (g.gram[i, j],),
                )
    return True


def check_phi_selfadjoint(g: MetricForm, phi: Matrix):
    """<phi u, v> = <u, phi v>, i.e. gram.phi = phi^T.gram.

    Only stated for involutive twists; a non-involutive twist is an error.
    """
    if phi @ phi != Matrix.identity(phi.nrows):
        raise NonInvolutiveTwistError("selfadjointness test requires phi^2 = Id")
    lhs = g.gram @ phi
    rhs = phi.transpose() @ g.gram
    n = g.dim
    for i in range(n):
        for j in range(n):
            if lhs[i, j] != rhs[i, j]:
                return Violation(
                    "phi-selfadjoint", (i + 1, j + 1), (lhs[i, j],), (rhs[i, j],)
                )
    return True


@dataclass(frozen=True)
class LeviCivitaProduct:
    """Product from the twisted Koszul formula; torsion and compatibility verified."""

    product: Tensor3


def _koszul_rhs(c: Tensor3, phi: Matrix, g: MetricForm, i: int, j: int) -> tuple:
    """Right side of the Koszul identity for the pair (e_i, e_j), k-th entry

    <[e_i,e_j], phi e_k> + <[e_k,e_j], phi e_i> + <[e_k,e_i], phi e_j>.
    """
    n = c.dim
    ei = basis_vec(n, i)
    ej = basis_vec(n, j)
    br_ij = c.basis_product(i, j)
    out = []
    for k in range(n):
        ek = basis_vec(n, k)
        r = g.inner(br_ij, phi.apply(ek))
        r += g.inner(c.basis_product(k, j), phi.apply(ei))
        r += g.inner(c.basis_product(k, i), phi.apply(ej))
        out.append(r)
    return tuple(out)


def levi_civita_product(c: Tensor3, phi: Matrix, g: MetricForm) -> LeviCivitaProduct:
    """Unique product with 2<P(u,v), phi(w)> given by the twisted Koszul formula.

    Solved column-wise: for fixed (i, j) the unknown P(e_i, e_j) satisfies
    (gram.phi)^T x = rhs/2, one shared inverse for all n^2 pairs.
    """
    n = c.dim
    if determinant(phi) == 0:
        raise SingularTwistError("Koszul construction needs an invertible twist")
    half = Fraction(1, 2)
    coeff_inv = matrix_inverse((g.gram @ phi).transpose())
    planes = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rhs = tuple(half * r for r in _koszul_rhs(c, phi, g, i, j))
            x = coeff_inv.apply(rhs)
            for k in range(n):
                planes[k][i][j] = x[k]
    product = Tensor3(planes)
    torsion = check_torsion(product, c)
    if not torsion:
        raise InvalidStructureError(
            "Koszul output fails the torsion identity; input is not a "
            "twist-invariant metric over this bracket",
            torsion,
        )
    compat = check_metric_compatibility(product, g, phi)
    if not compat:
        raise InvalidStructureError(
            "Koszul output fails metric compatibility", compat
        )
    return LeviCivitaProduct(product)


def levi_civita_by_pair_solves(c: Tensor3, phi: Matrix, g: MetricForm) -> Tensor3:
    """Independent oracle: one exact linear solve per basis pair.

    Assembles the n x n system 2<x, phi(e_k)> = rhs_k row by row and calls
    the generic solver, never sharing a factorization.  Raises if any
    pair system is singular or inconsistent.
    """
    n = c.dim
    rows = []
    for k in range(n):
        pk = phi.column(k)
        rows.append([2 * g.inner(basis_vec(n, m), pk) for m in range(n)])
    system = Matrix(rows)
    planes = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sol = solve_linear(system, _koszul_rhs(c, phi, g, i, j))
            if not sol:
                raise SingularTwistError(
                    f"Koszul system for pair ({i + 1}, {j + 1}) is {sol.status}"
                )
            for k in range(n):
                planes[k][i][j] = sol.x[k]
    return Tensor3(planes)


def check_torsion(p: Tensor3, c: Tensor3):
    """commutator of the product equals the bracket."""
    comm = commutator_bracket(p)
    n = p.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = comm.basis_product(i, j)
            rhs = c.basis_product(i, j)
            if lhs != rhs:
                return Violation("torsion", (i + 1, j + 1), lhs, rhs)
    return True


def check_metric_compatibility(p: Tensor3, g: MetricForm, phi: Matrix):
    """<P(u,v), phi(w)> = -<phi(v), P(u,w)> on all basis triples."""
    n = p.dim
    phi_cols = [phi.column(k) for k in range(n)]
    for i in range(n):
        for j in range(n):
            pij = p.basis_product(i, j)
            for k in range(n):
                lhs = g.inner(pij, phi_cols[k])
                rhs = -g.inner(phi_cols[j], p.basis_product(i, k))
                if lhs != rhs:
                    return Violation(
                        "metric-compatibility", (i + 1, j + 1, k + 1), (lhs,), (rhs,)
                    )
    return True


def check_symplectic(omega: SymplecticForm, c: Tensor3, phi: Matrix):
    """Two-cocycle condition plus twist invariance.

    omega([u,v], phi w) + omega([w,u], phi v) + omega([v,w], phi u) = 0
    and omega(phi u, phi v) = omega(u, v).
    """
    anti = check_antisymmetry(c)
    if not anti:
        raise InvalidStructureError("bracket is not antisymmetric", anti)
    if determinant(phi) == 0:
        raise SingularTwistError("symplectic structures require a regular twist")
    n = c.dim
    inv = phi.transpose() @ omega.omega @ phi
    for i in range(n):
        for j in range(i + 1, n):
            if inv[i, j] != omega.omega[i, j]:
                return Violation(
                    "symplectic-invariance",
                    (i + 1, j + 1),
                    (inv[i, j],),
                    (omega.omega[i, j],),
                )
    for i, j, k in combinations(range(n), 3):
        total = omega.value(c.basis_product(i, j), phi.column(k))
        total += omega.value(c.basis_product(k, i), phi.column(j))
        total += omega.value(c.basis_product(j, k), phi.column(i))
        if total != 0:
            return Violation(
                "symplectic-cocycle", (i + 1, j + 1, k + 1), (total,), (Fraction(0),)
            )
    return True


def symplectic_left_symmetric(omega: SymplecticForm, c: Tensor3, phi: Matrix) -> Tensor3:
    """Left-symmetric product induced by a symplectic two-cocycle.

    The unique a with omega(a(e_i, e_j), phi(e_k)) = -omega(phi(e_j), [e_i, e_k])
    for all k; requires an involutive twist.  The output has commutator
    equal to the bracket.
    """
    n = c.dim
    if phi @ phi != Matrix.identity(n):
        raise NonInvolutiveTwistError(
            "the symplectic left-symmetric product needs phi^2 = Id"
        )
    cocycle = check_symplectic(omega, c, phi)
    if not cocycle:
        raise InvalidStructureError(
            "form is not a symplectic two-cocycle for this bracket", cocycle
        )
    # row k of the coefficient matrix: x -> omega(x, phi e_k)
    rows = []
    for k in range(n):
        pk = phi.column(k)
        rows.append([omega.value(basis_vec(n, m), pk) for m in range(n)])
    coeff_inv = matrix_inverse(Matrix(rows))
    planes = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            pj = phi.column(j)
            rhs = tuple(
                -omega.value(pj, c.basis_product(i, k)) for k in range(n)
            )
            x = coeff_inv.apply(rhs)
            for k in range(n):
                planes[k][i][j] = x[k]
    return Tensor3(planes)


def musical_flat(g: MetricForm, u) -> tuple:
    """Coordinates of <u, .> in the dual basis: gram @ u."""
    return g.gram.apply(u)


def musical_sharp(g: MetricForm, alpha) -> tuple:
    """Inverse of flat: the vector whose pairing with everything matches alpha."""
    return matrix_inverse(g.gram).apply(alpha)


def koszul_residual(
    p: Tensor3, c: Tensor3, phi: Matrix, g: MetricForm, i: int, j: int, k: int
) -> object:
    """2<P(e_i,e_j), phi e_k> minus the Koszul right side, 0-based indices.

    Zero on every triple exactly when P is the Koszul product; used to
    spot-check uniqueness by perturbing single structure constants.
    """
    lhs = 2 * g.inner(p.basis_product(i, j), phi.column(k))
    return lhs - _koszul_rhs(c, phi, g, i, j)[k]
