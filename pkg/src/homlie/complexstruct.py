"""Almost complex, Hermitian and Kahler structure on twisted Lie algebras.

An almost complex structure on an involutive algebra is a J with
J^2 = -Id commuting with the twist phi.  Integrability is measured by
the Nijenhuis torsion of the composite G = phi o J,

    N(u,v) = [Gu, Gv] - G[Gu, v] - G[u, Gv] - [u, v],

and is equivalent to either eigenspace of G inside the complexified
algebra being closed under the bracket and the twist.  All complexified
computation runs over GaussianRational scalars; nothing here ever needs
real closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidStructureError,
    NonInvolutiveTwistError,
    OddDimensionError,
)
from .linalg import (
    GaussianRational,
    Matrix,
    Tensor3,
    basis_vec,
    conj_vec,
    independent_subset,
    to_gaussian_vec,
    vec_sub,
)
from .metric import MetricForm, SymplecticForm, check_pseudo_riemannian
from .structures import Violation, check_subalgebra


def check_almost_complex(j: Matrix, phi: Matrix):
    """J^2 = -Id and J.phi = phi.J over an involutive twist.

    Odd dimension is rejected outright: det(J)^2 = det(-Id) = (-1)^n
    has no solution for odd n.
    """
    n = j.nrows
    if n % 2 == 1:
        raise OddDimensionError(
            "no almost complex structure in odd dimension: det(J)^2 = (-1)^n"
        )
    if phi @ phi != Matrix.identity(n):
        raise NonInvolutiveTwistError("almost complex structures need phi^2 = Id")
    jj = j @ j
    minus_id = -Matrix.identity(n)
    for i in range(n):
        for k in range(n):
            if jj[i, k] != minus_id[i, k]:
                return Violation(
                    "almost-complex-square", (i + 1, k + 1), (jj[i, k],), (minus_id[i, k],)
                )
    lhs = phi @ j
    rhs = j @ phi
    for i in range(n):
        for k in range(n):
            if lhs[i, k] != rhs[i, k]:
                return Violation(
                    "almost-complex-commute", (i + 1, k + 1), (lhs[i, k],), (rhs[i, k],)
                )
    return True


@dataclass(frozen=True)
class ComplexStructureCandidate:
    """A J verified against its ambient twist: square -Id, twist-commuting."""

    j: Matrix
    twist: Matrix

    def __post_init__(self):
        result = check_almost_complex(self.j, self.twist)
        if not result:
            raise InvalidStructureError(result.describe(), result)

    @property
    def composite(self) -> Matrix:
        """The map phi o J whose torsion decides integrability."""
        return self.twist @ self.j


@dataclass(frozen=True)
class NijenhuisTensor:
    """Torsion of phi o J, antisymmetric in its two arguments."""

    tensor: Tensor3

    def is_zero(self) -> bool:
        return self.tensor.is_zero()


def _require_almost_complex(c: Tensor3, phi: Matrix, j: Matrix):
    result = check_almost_complex(j, phi)
    if not result:
        raise InvalidStructureError("J is not an almost complex structure", result)
    if c.dim != j.nrows:
        raise InvalidStructureError("bracket and J dimensions differ")


def nijenhuis_tensor(c: Tensor3, phi: Matrix, j: Matrix) -> NijenhuisTensor:
    """N(e_i, e_j) for all basis pairs, packed as a rank-3 tensor."""
    _require_almost_complex(c, phi, j)
    g = phi @ j
    n = c.dim
    planes = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    gcols = [g.column(i) for i in range(n)]
    for a in range(n):
        for b in range(n):
            ea, eb = basis_vec(n, a), basis_vec(n, b)
            val = c.apply(gcols[a], gcols[b])
            val = vec_sub(val, g.apply(c.apply(gcols[a], eb)))
            val = vec_sub(val, g.apply(c.apply(ea, gcols[b])))
            val = vec_sub(val, c.basis_product(a, b))
            for k in range(n):
                planes[k][a][b] = val[k]
    return NijenhuisTensor(Tensor3(planes))


def check_hermitian_compatibility(j: Matrix, g: MetricForm, phi: Matrix):
    """<(phi J)u, (phi J)v> = <u, v> on all basis pairs.

    Preconditions (almost complex J, twist-invariant metric) are
    re-checked and raised as errors, matching how the verdict is used.
    """
    ac = check_almost_complex(j, phi)
    if not ac:
        raise InvalidStructureError("J is not an almost complex structure", ac)
    pr = check_pseudo_riemannian(g, phi)
    if not pr:
        raise InvalidStructureError("metric is not twist invariant", pr)
    pj = phi @ j
    pulled = pj.transpose() @ g.gram @ pj
    n = g.dim
    for i in range(n):
        for k in range(i, n):
            if pulled[i, k] != g.gram[i, k]:
                return Violation(
                    "hermitian", (i + 1, k + 1), (pulled[i, k],), (g.gram[i, k],)
                )
    return True


@dataclass(frozen=True)
class ComplexSplit:
    """Eigenbasis of phi o J acting on the complexification.

    ``basis10`` spans the +i eigenspace as {u - i (phi J) u} vectors,
    ``basis01`` the -i eigenspace; conjugation carries one onto the other.
    """

    basis10: tuple
    basis01: tuple
    dim: int

    @property
    def rank(self) -> int:
        return len(self.basis10)


def projector_10(phi: Matrix, j: Matrix) -> Matrix:
    """pi = (Id - i (phi J)) / 2 over Gaussian rationals."""
    n = phi.nrows
    pj = phi @ j
    half = Fraction(1, 2)
    return Matrix(
        [
            [
                GaussianRational(half if a == b else 0, -half * pj[a, b])
                for b in range(n)
            ]
            for a in range(n)
        ]
    )


def projector_01(phi: Matrix, j: Matrix) -> Matrix:
    n = phi.nrows
    pj = phi @ j
    half = Fraction(1, 2)
    return Matrix(
        [
            [
                GaussianRational(half if a == b else 0, half * pj[a, b])
                for b in range(n)
            ]
            for a in range(n)
        ]
    )


def complexify_and_split(c: Tensor3, phi: Matrix, j: Matrix) -> ComplexSplit:
    """Reduce the candidate vectors e_k - i (phi J) e_k to an eigenbasis.

    Deterministic first-nonzero pivoting keeps the earliest independent
    candidates, so the output basis is reproducible.
    """
    _require_almost_complex(c, phi, j)
    n = c.dim
    pj = phi @ j
    candidates = []
    for k in range(n):
        w = pj.column(k)
        candidates.append(
            tuple(
                GaussianRational(1 if m == k else 0, -w[m]) for m in range(n)
            )
        )
    basis10 = tuple(independent_subset(candidates))
    basis01 = tuple(conj_vec(v) for v in basis10)
    return ComplexSplit(basis10=basis10, basis01=basis01, dim=n)


@dataclass(frozen=True)
class IntegrabilityReport:
    """Three equivalent integrability verdicts, which must agree."""

    subalgebra_10: bool
    subalgebra_01: bool
    nijenhuis_zero: bool

    @property
    def consistent(self) -> bool:
        return self.subalgebra_10 == self.subalgebra_01 == self.nijenhuis_zero

    @property
    def integrable(self) -> bool:
        return self.nijenhuis_zero


def check_integrability_equivalence(
    c: Tensor3, phi: Matrix, j: Matrix
) -> IntegrabilityReport:
    """Eigenspace closure versus vanishing torsion, computed independently."""
    split = complexify_and_split(c, phi, j)
    phi_c = phi.to_gaussian()
    sub10 = check_subalgebra(c, phi_c, [to_gaussian_vec(v) for v in split.basis10])
    sub01 = check_subalgebra(c, phi_c, [to_gaussian_vec(v) for v in split.basis01])
    nz = nijenhuis_tensor(c, phi, j).is_zero()
    return IntegrabilityReport(
        subalgebra_10=bool(sub10), subalgebra_01=bool(sub01), nijenhuis_zero=nz
    )


def check_kahler(p: Tensor3, phi: Matrix, j: Matrix):
    """Left multiplication by every basis vector commutes with phi o J.

    ``p`` must already be the metric product of the structure under test
    (torsion and compatibility verified by the caller); this check then
    decides invariance.
    """
    ac = check_almost_complex(j, phi)
    if not ac:
        raise InvalidStructureError("J is not an almost complex structure", ac)
    pj = phi @ j
    n = p.dim
    for i in range(n):
        left = p.left_mult_basis(i)
        lhs = left @ pj
        rhs = pj @ left
        for a in range(n):
            for b in range(n):
                if lhs[a, b] != rhs[a, b]:
                    return Violation(
                        "kahler-invariance",
                        (i + 1, a + 1, b + 1),
                        (lhs[a, b],),
                        (rhs[a, b],),
                    )
    return True


def induced_symplectic(g: MetricForm, phi: Matrix, j: Matrix) -> SymplecticForm:
    """The two-form Omega(u, v) = <(phi J) u, v> of a Hermitian pair.

    Entrywise Omega[i][j] = <(phi J) e_i, e_j>; antisymmetry and
    nondegeneracy are enforced by the SymplecticForm constructor.
    """
    herm = check_hermitian_compatibility(j, g, phi)
    if not herm:
        raise InvalidStructureError("pair is not Hermitian-compatible", herm)
    pj = phi @ j
    n = g.dim
    rows = [
        [g.inner(pj.column(i), basis_vec(n, k)) for k in range(n)]
        for i in range(n)
    ]
    return SymplecticForm(Matrix(rows))
