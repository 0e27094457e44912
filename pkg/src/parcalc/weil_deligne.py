"""Weil-Deligne representations and their cohomology.

A representation is given by matrices (Phi, N, gamma) with Phi*N*Phi^-1 = N/q,
N nilpotent and gamma of finite order generating the inertia image.  Its
cohomology is computed by the three-term complex

    M^I --(Phi - 1, N)--> M^I + M^I --(N, 1 - q*Phi)--> M^I

in degrees 0, 1, 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import Complex, cohomology
from .laurent import (
    FgModule,
    FieldRing,
    Matrix,
    Ring,
    identity,
    is_zero_matrix,
    mat_eq,
    mat_mul,
    smith_normal_form,
    transpose,
    zeros,
)


class WDRepError(ValueError):
    pass


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[x - y for x, y in zip(a, b)] for a, b in zip(A, B)]


def mat_pow(ring: Ring, A: Matrix, k: int) -> Matrix:
    out = identity(ring, len(A))
    for _ in range(k):
        out = mat_mul(ring, out, A)
    return out


def mat_inverse(ring: Ring, A: Matrix) -> Matrix:
    """Inverse over K or K[T, 1/T]; raises if A is not invertible over the base."""
    n = len(A)
    if n == 0:
        return []
    snf = smith_normal_form(ring, A)
    if snf.rank != n:
        raise WDRepError("matrix is singular")
    Dinv = zeros(ring, n, n)
    for i in range(n):
        d = snf.D[i][i]
        if not ring.is_unit(d):
            raise WDRepError("matrix is not invertible over the base ring")
        Dinv[i][i] = ring.unit_inverse(d)
    return mat_mul(ring, mat_mul(ring, snf.V, Dinv), snf.U)


def nullspace(ring: FieldRing, A: Matrix, ncols: int) -> Matrix:
    """Basis of {x : A x = 0} as columns of the returned ncols x k matrix (field base)."""
    rows = [list(r) for r in A]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ring.zero() for _ in range(ncols)]
        v[fcol] = ring.one()
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol]
        basis.append(v)
    return transpose(basis, ncols) if basis else [[] for _ in range(ncols)]


def solve_columns(ring: FieldRing, B: Matrix, Y: Matrix) -> Matrix:
    """X with B X = Y for B of full column rank (raises if no solution)."""
    n, k = len(B), (len(B[0]) if B else 0)
    m = len(Y[0]) if Y else 0
    aug = [list(B[i]) + list(Y[i]) for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if not aug[i][c].is_zero()), None)
        if p is None:
            raise WDRepError("basis is not of full column rank")
        aug[r], aug[p] = aug[p], aug[r]
        inv = aug[r][c].inv()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if any(not x.is_zero() for x in aug[i][k:]):
            raise WDRepError("subspace is not stable")
    return [aug[i][k:k + m] for i in range(k)]


@dataclass
class WDRep:
    ring: Ring
    dim: int
    frobenius: Matrix
    nilpotent: Matrix
    inertia: tuple[int, Matrix] | None = None  # (order m, generator gamma)

    def __post_init__(self):
        ring = self.ring
        self.frobenius = [[ring.coerce(x) for x in row] for row in self.frobenius]
        self.nilpotent = [[ring.coerce(x) for x in row] for row in self.nilpotent]
        if self.inertia is not None:
            m, g = self.inertia
            self.inertia = (int(m), [[ring.coerce(x) for x in row] for row in g])
        self.validate()

    @property
    def q(self) -> int:
        return self.ring.ctx.q

    def validate(self) -> None:
        ring, d = self.ring, self.dim
        for name, M in (("frobenius", self.frobenius), ("nilpotent", self.nilpotent)):
            if len(M) != d or any(len(r) != d for r in M):
                raise WDRepError(f"{name} must be {d}x{d}")
        Phi, N = self.frobenius, self.nilpotent
        mat_inverse(ring, Phi)
        if not is_zero_matrix(mat_pow(ring, N, d)):
            raise WDRepError("nilpotent: N^dim != 0, N is not nilpotent")
        lhs = mat_mul(ring, Phi, N)
        rhs = [[x * self.q for x in row] for row in lhs]
        if not mat_eq(mat_mul(ring, N, Phi), rhs):
            raise WDRepError("relation Phi N Phi^-1 = q^-1 N fails")
        if self.inertia is not None:
            m, g = self.inertia
            if len(g) != d or any(len(r) != d for r in g):
                raise WDRepError(f"inertia generator must be {d}x{d}")
            if m < 1 or not mat_eq(mat_pow(ring, g, m), identity(ring, d)):
                raise WDRepError(f"inertia: gamma^{m} != 1")
            if not mat_eq(mat_mul(ring, g, N), mat_mul(ring, N, g)):
                raise WDRepError("inertia: gamma does not commute with N")
            conj = mat_mul(ring, Phi, g)
            gp = identity(ring, d)
            for _ in range(m):
                if mat_eq(conj, mat_mul(ring, gp, Phi)):
                    break
                gp = mat_mul(ring, gp, g)
            else:
                raise WDRepError("inertia: Phi gamma Phi^-1 is not a power of gamma")


def trivial_character(ring: Ring) -> WDRep:
    return WDRep(ring, 1, [[ring.one()]], [[ring.zero()]])


def cyclotomic_character(ring: Ring) -> WDRep:
    return WDRep(ring, 1, [[ring.one() * ring.ctx.q_power(-1)]], [[ring.zero()]])


def steinberg(ring: Ring, alpha=1) -> WDRep:
    """Phi = diag(alpha, alpha/q), N = E_21."""
    a = ring.coerce(alpha)
    return WDRep(ring, 2, [[a, ring.zero()], [ring.zero(), a * ring.ctx.q_power(-1)]],
                 [[ring.zero(), ring.zero()], [ring.one(), ring.zero()]])


def inertia_invariants(rep: WDRep) -> tuple[Matrix, Matrix, Matrix]:
    """(basis B as columns, Phi|, N|) on the inertia-fixed subspace."""
    ring = rep.ring
    if rep.inertia is None:
        I = identity(ring, rep.dim)
        return I, rep.frobenius, rep.nilpotent
    if not isinstance(ring, FieldRing):
        raise WDRepError("nontrivial inertia is supported over the field base only")
    g = rep.inertia[1]
    B = nullspace(ring, mat_sub(g, identity(ring, rep.dim)), rep.dim)
    k = len(B[0]) if B and B[0] else 0
    if k == 0:
        return [[] for _ in range(rep.dim)], [], []
    Phi = solve_columns(ring, B, mat_mul(ring, rep.frobenius, B))
    N = solve_columns(ring, B, mat_mul(ring, rep.nilpotent, B))
    return B, Phi, N


def wd_complex(rep: WDRep) -> Complex:
    ring = rep.ring
    _, Phi, N = inertia_invariants(rep)
    r = len(Phi)
    if r == 0:
        return Complex(ring, {})
    q = rep.q
    I = identity(ring, r)
    d0 = mat_sub(Phi, I) + [list(row) for row in N]
    one_minus_qphi = [[I[i][j] - Phi[i][j] * q for j in range(r)] for i in range(r)]
    d1 = [list(N[i]) + list(one_minus_qphi[i]) for i in range(r)]
    try:
        return Complex(ring, {0: r, 1: 2 * r, 2: r}, {0: d0, 1: d1})
    except ValueError as exc:
        raise WDRepError(f"relation Phi N Phi^-1 = q^-1 N violated: {exc}") from exc


@dataclass(frozen=True)
class HVector:
    h: tuple

    def __getitem__(self, i):
        return self.h[i]

    def __iter__(self):
        return iter(self.h)

    def dims(self) -> tuple:
        return tuple(x if isinstance(x, int) else x.free_rank for x in self.h)


def wd_cohomology(rep: WDRep) -> HVector:
    H = cohomology(wd_complex(rep))
    field = isinstance(rep.ring, FieldRing)
    for i in H.degrees():
        if i not in (0, 1, 2):
            raise WDRepError(f"cohomology in degree {i}")
    if field:
        return HVector(tuple(H.groups.get(i, 0) for i in range(3)))
    return HVector(tuple(H.groups.get(i, FgModule(0, ())) for i in range(3)))


def tate_dual_rep(rep: WDRep) -> WDRep:
    """M^v(1): Phi -> q^-1 (Phi^-1)^t, N -> -N^t, gamma -> (gamma^-1)^t."""
    ring = rep.ring
    qinv = ring.ctx.q_power(-1)
    Phi = transpose(mat_inverse(ring, rep.frobenius))
    Phi = [[x * qinv for x in row] for row in Phi]
    N = [[-x for x in row] for row in transpose(rep.nilpotent)]
    inertia = None
    if rep.inertia is not None:
        m, g = rep.inertia
        inertia = (m, transpose(mat_inverse(ring, g)))
    return WDRep(ring, rep.dim, Phi, N, inertia)


def conjugate(rep: WDRep, P: Matrix) -> WDRep:
    """Change of basis: X -> P X P^-1 for Phi, N and gamma."""
    ring = rep.ring
    Pi = mat_inverse(ring, P)

    def c(A):
        return mat_mul(ring, mat_mul(ring, P, A), Pi)

    inertia = None if rep.inertia is None else (rep.inertia[0], c(rep.inertia[1]))
    return WDRep(ring, rep.dim, c(rep.frobenius), c(rep.nilpotent), inertia)


def _random_unimodular(ring: Ring, rng, n: int) -> Matrix:
    L, U = identity(ring, n), identity(ring, n)
    for i in range(n):
        for j in range(i):
            L[i][j] = ring.coerce(rng.randint(-2, 2))
            U[j][i] = ring.coerce(rng.randint(-2, 2))
    return mat_mul(ring, L, U)


def random_wdrep(ring: Ring, rng, max_dim: int = 4) -> WDRep:
    """Direct sum of random blocks, conjugated by a random unimodular matrix.

    A block of length k has N e_i = e_{i+1} and Phi e_i = alpha q^-i e_i; a block
    with N = 0 may carry a Jordan-type Frobenius.  alpha is drawn so that the
    trivial and cyclotomic eigenvalues occur often.
    """
    ctx = ring.ctx
    dim = rng.randint(1, max_dim)
    Phi, N = zeros(ring, dim, dim), zeros(ring, dim, dim)
    pos = 0
    while pos < dim:
        k = rng.randint(1, dim - pos)
        alpha = rng.choice([ctx.one(), ctx.q_power(-1), ctx.q_power(1), ctx.q_power(-2),
                            ctx.scalar(Fraction(rng.randint(1, 7), rng.randint(1, 7)))])
        alpha = alpha * rng.choice([1, 1, -1])
        jordan = k > 1 and rng.random() < 0.3
        for i in range(k):
            if jordan:
                Phi[pos + i][pos + i] = ring.coerce(alpha)
                if i + 1 < k:
                    Phi[pos + i + 1][pos + i] = ring.coerce(alpha)
            else:
                Phi[pos + i][pos + i] = ring.coerce(alpha * ctx.q_power(-i))
                if i + 1 < k:
                    N[pos + i + 1][pos + i] = ring.one()
        pos += k
    base = WDRep(ring, dim, Phi, N)
    return conjugate(base, _random_unimodular(ring, rng, dim))


def euler_char(rep: WDRep) -> int:
    h = wd_cohomology(rep).dims()
    return h[0] - h[1] + h[2]


__all__ = [
    "HVector", "WDRep", "WDRepError", "conjugate", "cyclotomic_character", "euler_char",
    "inertia_invariants", "mat_inverse", "nullspace", "random_wdrep", "steinberg",
    "tate_dual_rep", "trivial_character", "wd_cohomology", "wd_complex",
]
