"""Linear connection on the central-coefficient derivation module.

Connection coefficients form a grid of central algebra elements indexed
by three generator slots.  Covariant derivatives follow the coefficient
display: a Gamma contraction plus the first argument acting on the
second argument's coefficients.  Curvature is computed two independent
ways, as a commutator of covariant derivatives and through the component
formula, and the module's central check is that both agree on every
basis triple.
"""

from fractions import Fraction

from nctangent.algebras import AlgebraError, noncentral_witness
from nctangent.scalars import (
    Scalar,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    zero_vec,
)
from nctangent.tangent import LocalDerivation, bracket

MINUS_ONE = Scalar(-1)


class InvalidConnection(AlgebraError):
    """Coefficient grid breaks centrality or anti-hermiticity."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConnectionCoefficients:
    """Gamma grid over an action assignment; entry(mu, nu, lam) is the
    coefficient of the lam-th generator in the derivative of slot nu
    along slot mu."""

    __slots__ = ("assignment", "grid")

    def __init__(self, assignment, grid, check=True):
        n = assignment.d + 1
        grid = tuple(
            tuple(tuple(tuple(entry) for entry in row) for row in plane)
            for plane in grid
        )
        if len(grid) != n or any(
            len(plane) != n or any(len(row) != n for row in plane)
            for plane in grid
        ):
            raise ValueError("grid must be (d+1) cubed")
        dim = assignment.algebra.dim
        for plane in grid:
            for row in plane:
                for entry in row:
                    if len(entry) != dim:
                        raise ValueError("entry of the wrong dimension")
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "grid", grid)
        if check:
            bad = coefficient_failures(self)
            if bad:
                raise InvalidConnection(
                    "coefficient grid fails the %s condition" % bad[0][0],
                    witness=bad[0],
                )

    def __setattr__(self, *a):
        raise AttributeError("ConnectionCoefficients is immutable")

    @classmethod
    def zero(cls, assignment):
        n = assignment.d + 1
        z = zero_vec(assignment.algebra.dim)
        return cls(assignment, [[[z] * n] * n] * n)

    @classmethod
    def constant(cls, assignment, value, check=True):
        """Every entry the same scalar multiple of the unit."""
        n = assignment.d + 1
        e = vec_scale(Scalar.promote(value), assignment.algebra.unit)
        return cls(assignment, [[[e] * n] * n] * n, check=check)

    def entry(self, mu, nu, lam):
        return self.grid[mu][nu][lam]


def coefficient_failures(gamma):
    """Centrality and anti-hermiticity violations as (kind, index)."""
    A = gamma.assignment.algebra
    n = gamma.assignment.d + 1
    failures = []
    for mu in range(n):
        for nu in range(n):
            for lam in range(n):
                e = gamma.entry(mu, nu, lam)
                if noncentral_witness(A, e) is not None:
                    failures.append(("central", (mu, nu, lam)))
                if not vec_is_zero(vec_add(A.involute(e), e)):
                    failures.append(("hermiticity", (mu, nu, lam)))
    return failures


def generator_derivation(assign, mu):
    """The mu-th basis derivation: unit coefficient in one slot."""
    A = assign.algebra
    coeffs = [
        A.unit if nu == mu else zero_vec(A.dim) for nu in range(assign.d + 1)
    ]
    return LocalDerivation(assign, coeffs)


def nabla(gamma, X, Y):
    """Covariant derivative of Y along X: the Gamma contraction of the
    coefficient products plus X's coefficients times the generator
    actions on Y's coefficients."""
    assign = gamma.assignment
    if X.assignment is not assign or Y.assignment is not assign:
        raise AlgebraError("derivations live over a different assignment")
    A = assign.algebra
    n = assign.d + 1
    out = []
    for lam in range(n):
        total = zero_vec(A.dim)
        for mu in range(n):
            for nu in range(n):
                prod = A.multiply(X.coefficients[mu], Y.coefficients[nu])
                total = vec_add(
                    total, A.multiply(prod, gamma.entry(mu, nu, lam))
                )
        for mu in range(n):
            total = vec_add(
                total,
                A.multiply(
                    X.coefficients[mu],
                    assign.operators[mu].apply(Y.coefficients[lam]),
                ),
            )
        out.append(total)
    # valid inputs give central output; unchecked negative-control grids
    # must still flow through
    return LocalDerivation(assign, out, check=False)


def star_derivation(X):
    """Involution on derivations: negated involutes of the coefficients."""
    A = X.assignment.algebra
    coeffs = [
        vec_scale(MINUS_ONE, A.involute(c)) for c in X.coefficients
    ]
    return LocalDerivation(X.assignment, coeffs, check=False)


def _coeffs_equal(X, Y):
    return X.coefficients == Y.coefficients


def _scale_coeffs(X, z, side):
    A = X.assignment.algebra
    if side == "left":
        coeffs = [A.multiply(z, c) for c in X.coefficients]
    else:
        coeffs = [A.multiply(c, z) for c in X.coefficients]
    return LocalDerivation(X.assignment, coeffs, check=False)


def verify_connection_axioms(gamma, samples):
    """Leibniz and linearity in both module actions plus hermiticity,
    over samples of (X, Y, central element); failures carry the axiom
    name and the sample index."""
    assign = gamma.assignment
    A = assign.algebra
    failures = []
    for idx, (X, Y, z) in enumerate(samples):
        z = tuple(z)
        base = nabla(gamma, X, Y)
        xz = X.apply(z)
        # Leibniz in the second argument, both sides
        left = nabla(gamma, X, _scale_coeffs(Y, z, "left"))
        want = [
            vec_add(A.multiply(z, c), A.multiply(xz, yc))
            for c, yc in zip(base.coefficients, Y.coefficients)
        ]
        if list(left.coefficients) != want:
            failures.append(("leibniz-left", idx))
        right = nabla(gamma, X, _scale_coeffs(Y, z, "right"))
        want = [
            vec_add(A.multiply(c, z), A.multiply(yc, xz))
            for c, yc in zip(base.coefficients, Y.coefficients)
        ]
        if list(right.coefficients) != want:
            failures.append(("leibniz-right", idx))
        # linearity in the first argument, both sides
        scaled = nabla(gamma, _scale_coeffs(X, z, "left"), Y)
        want = [A.multiply(z, c) for c in base.coefficients]
        if list(scaled.coefficients) != want:
            failures.append(("linearity-left", idx))
        scaled = nabla(gamma, _scale_coeffs(X, z, "right"), Y)
        want = [A.multiply(c, z) for c in base.coefficients]
        if list(scaled.coefficients) != want:
            failures.append(("linearity-right", idx))
        # hermiticity
        lhs = star_derivation(base)
        rhs = nabla(gamma, star_derivation(X), star_derivation(Y))
        if not _coeffs_equal(lhs, rhs):
            failures.append(("hermiticity", idx))
    return failures


def structure_scalar(kappa, mu, nu, lam):
    """Structure constant of the deformed translation bracket."""
    inv = Fraction(1) / Fraction(kappa)
    total = Scalar(0)
    if mu == 0 and nu == lam:
        total = total + Scalar(0, inv)
    if nu == 0 and mu == lam:
        total = total - Scalar(0, inv)
    return total


class CurvatureTensor:
    """Grid entry(mu, nu, lam, tau): the tau-component of the curvature
    applied to the (mu, nu, lam) basis triple."""

    __slots__ = ("assignment", "grid")

    def __init__(self, assignment, grid):
        n = assignment.d + 1
        grid = tuple(
            tuple(
                tuple(tuple(tuple(e) for e in row) for row in plane)
                for plane in cube
            )
            for cube in grid
        )
        for mu in range(n):
            for nu in range(n):
                for lam in range(n):
                    for tau in range(n):
                        flipped = vec_scale(MINUS_ONE, grid[nu][mu][lam][tau])
                        if grid[mu][nu][lam][tau] != flipped:
                            raise AlgebraError(
                                "curvature grid is not antisymmetric at "
                                "%s" % ((mu, nu, lam, tau),)
                            )
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "grid", grid)

    def __setattr__(self, *a):
        raise AttributeError("CurvatureTensor is immutable")

    def entry(self, mu, nu, lam, tau):
        return self.grid[mu][nu][lam][tau]

    def is_zero(self):
        return all(
            vec_is_zero(e)
            for cube in self.grid
            for plane in cube
            for row in plane
            for e in row
        )


def curvature_components(gamma):
    """Component formula: generator derivatives of Gamma, the quadratic
    Gamma contraction, and the structure-constant term."""
    assign = gamma.assignment
    A = assign.algebra
    n = assign.d + 1
    grid = []
    for mu in range(n):
        cube = []
        for nu in range(n):
            plane = []
            for lam in range(n):
                row = []
                for tau in range(n):
                    total = vec_sub(
                        assign.operators[mu].apply(gamma.entry(nu, lam, tau)),
                        assign.operators[nu].apply(gamma.entry(mu, lam, tau)),
                    )
                    for sigma in range(n):
                        total = vec_add(
                            total,
                            A.multiply(
                                gamma.entry(nu, lam, sigma),
                                gamma.entry(mu, sigma, tau),
                            ),
                        )
                        total = vec_sub(
                            total,
                            A.multiply(
                                gamma.entry(mu, lam, sigma),
                                gamma.entry(nu, sigma, tau),
                            ),
                        )
                        c = structure_scalar(assign.kappa, mu, nu, sigma)
                        if not c.is_zero():
                            total = vec_sub(
                                total,
                                vec_scale(c, gamma.entry(sigma, lam, tau)),
                            )
                    row.append(total)
                plane.append(row)
            cube.append(plane)
        grid.append(cube)
    return CurvatureTensor(assign, grid)


def curvature_operator(gamma, X, Y, Z):
    """Commutator of covariant derivatives minus the derivative along
    the bracket."""
    first = nabla(gamma, X, nabla(gamma, Y, Z))
    second = nabla(gamma, Y, nabla(gamma, X, Z))
    third = nabla(gamma, bracket(X, Y), Z)
    coeffs = [
        vec_sub(vec_sub(a, b), c)
        for a, b, c in zip(
            first.coefficients, second.coefficients, third.coefficients
        )
    ]
    return LocalDerivation(gamma.assignment, coeffs, check=False)


def curvature_cross_check(gamma):
    """Basis triples where the operator curvature disagrees with the
    component formula; empty means the two routes coincide."""
    assign = gamma.assignment
    n = assign.d + 1
    tensor = curvature_components(gamma)
    failures = []
    basis = [generator_derivation(assign, mu) for mu in range(n)]
    for mu in range(n):
        for nu in range(n):
            for lam in range(n):
                op = curvature_operator(gamma, basis[mu], basis[nu], basis[lam])
                want = [
                    tensor.entry(mu, nu, lam, tau) for tau in range(n)
                ]
                if list(op.coefficients) != want:
                    failures.append((mu, nu, lam))
    return failures


def random_antihermitian_central(A, rng, span=3):
    """Seeded anti-hermitian element of the center: imaginary rational
    combinations of hermitized center basis vectors."""
    from nctangent.algebras import center

    out = zero_vec(A.dim)
    for c in center(A).basis:
        h = vec_add(c, A.involute(c))
        if vec_is_zero(h):
            # anti-hermitian basis vector: i times it is hermitian
            h = vec_scale(Scalar(0, 1), c)
        t = Fraction(rng.randint(-span, span))
        out = vec_add(out, vec_scale(Scalar(0, t), h))
    return out


def random_connection(assign, rng, span=3):
    """Seeded valid connection: every entry an independent draw of an
    anti-hermitian central element."""
    n = assign.d + 1
    A = assign.algebra
    grid = [
        [
            [random_antihermitian_central(A, rng, span) for _ in range(n)]
            for _ in range(n)
        ]
        for _ in range(n)
    ]
    return ConnectionCoefficients(assign, grid)
