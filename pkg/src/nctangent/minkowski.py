"""Symbolic kernel for the deformed Minkowski coordinate algebra.

Elements are finite linear combinations of normal-ordered monomials

    p_1^b1 ... p_d^bd p_0^n        (all spatial factors left of p_0)

over Q(i), with the single nontrivial relation  p_0 p_j - p_j p_0 =
(i/kappa) p_j.  The star product rewrites words into normal order one
commutation step at a time.  A second, independent closed-form route
(`integral_star_oracle`) evaluates the same product through the shift
picture: multiplying by a spatial monomial of total degree b displaces
p_0 by i*b/kappa under every crossing, which resums into a binomial
formula.  The two routes share no code and cross-check each other.

The Hopf structure has primitive coproducts, counit zero on generators,
and antipode -p on generators extended as an antihomomorphism.

`act_poincare` realizes the deformed symmetry generators as exact
operators on the polynomial reading of elements: derivative, coordinate
multiplication, and imaginary shift of the p_0 variable.  The boost
operator composes all three.  `module_law_sides` builds both sides of
the compatibility law between the action and the star product using the
deformed coproducts.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from nctangent.scalars import ONE, Scalar, ZERO

# numeric totally antisymmetric symbol on indices 1..3, eps[1][2][3] = +1
EPS3 = {}
for _a, _b, _c, _s in [
    (1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1),
    (3, 2, 1, -1), (1, 3, 2, -1), (2, 1, 3, -1),
]:
    EPS3[(_a, _b, _c)] = _s


def epsilon3(a, b, c):
    return EPS3.get((a, b, c), 0)


def _kappa_of(value):
    k = Fraction(value)
    if k <= 0:
        raise ValueError("the deformation parameter must be a positive rational")
    return k


class PBWElement:
    """Linear combination of normal-ordered monomials; immutable."""

    __slots__ = ("d", "kappa", "terms")

    def __init__(self, d, kappa, terms):
        kappa = _kappa_of(kappa)
        clean = {}
        for key, coeff in terms.items():
            beta, n = key
            beta = tuple(int(b) for b in beta)
            if len(beta) != d or any(b < 0 for b in beta) or n < 0:
                raise ValueError("bad monomial key %r" % (key,))
            coeff = Scalar.promote(coeff)
            if coeff:
                k = (beta, int(n))
                clean[k] = clean.get(k, ZERO) + coeff
        clean = {k: c for k, c in clean.items() if c}
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("PBWElement is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, d, kappa):
        return cls(d, kappa, {})

    @classmethod
    def one(cls, d, kappa):
        return cls.monomial(d, kappa, (0,) * d, 0)

    @classmethod
    def monomial(cls, d, kappa, beta, n, coeff=ONE):
        return cls(d, kappa, {(tuple(beta), n): coeff})

    @classmethod
    def generator(cls, d, kappa, mu):
        """p_mu; index 0 is the timelike coordinate, 1..d are spatial."""
        if mu == 0:
            return cls.monomial(d, kappa, (0,) * d, 1)
        if not 1 <= mu <= d:
            raise ValueError("generator index out of range")
        beta = tuple(1 if j == mu - 1 else 0 for j in range(d))
        return cls.monomial(d, kappa, beta, 0)

    # -- linear structure -------------------------------------------------

    def _compat(self, other):
        if self.d != other.d or self.kappa != other.kappa:
            raise ValueError("mixing elements of different spaces")

    def __add__(self, other):
        self._compat(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return PBWElement(self.d, self.kappa, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(Scalar(-1))

    def scale(self, c):
        c = Scalar.promote(c)
        return PBWElement(self.d, self.kappa, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return (
            self.d == other.d
            and self.kappa == other.kappa
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.d, self.kappa, tuple(sorted(self.terms.items(), key=repr))))

    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(n + sum(beta) for beta, n in self.terms)

    def coefficient(self, beta, n):
        return self.terms.get((tuple(beta), n), ZERO)

    def constant_term(self):
        return self.terms.get(((0,) * self.d, 0), ZERO)

    def __repr__(self):
        return "PBWElement(%s)" % self

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (beta, n), c in sorted(self.terms.items()):
            factors = []
            for j, b in enumerate(beta):
                if b == 1:
                    factors.append("p%d" % (j + 1))
                elif b > 1:
                    factors.append("p%d^%d" % (j + 1, b))
            if n == 1:
                factors.append("p0")
            elif n > 1:
                factors.append("p0^%d" % n)
            mono = " ".join(factors) if factors else "1"
            bits.append("(%s) %s" % (c, mono))
        return "  +  ".join(bits)

    # -- the star product -------------------------------------------------

    def star(self, other):
        """Product by stepwise normal-ordering."""
        self._compat(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                f = c1 * c2
                for key, c in self._star_monomials(k1, k2).items():
                    out[key] = out.get(key, ZERO) + f * c
        return PBWElement(self.d, self.kappa, out)

    def _star_monomials(self, k1, k2):
        gamma, n = k1
        beta, m = k2
        acc = {(gamma, n): ONE}
        for j, b in enumerate(beta):
            for _ in range(b):
                acc = self._right_mul_spatial(acc, j)
        if m:
            acc = {(bt, k + m): c for (bt, k), c in acc.items()}
        return acc

    def _right_mul_spatial(self, acc, j):
        """Multiply a normal-form combination by p_{j+1} on the right.

        p_0^k p_j is rewritten by applying p_0 p_j = p_j p_0 +
        (i/kappa) p_j one commutation at a time.
        """
        ik = Scalar(0, Fraction(1, 1) / self.kappa)
        out = {}
        for (beta, k), c in acc.items():
            # X_t holds p_0^t p_j in normal order, built up step by step
            x = {0: ONE}
            for _ in range(k):
                nxt = {}
                for t, ct in x.items():
                    nxt[t + 1] = nxt.get(t + 1, ZERO) + ct
                    nxt[t] = nxt.get(t, ZERO) + ik * ct
                x = nxt
            beta2 = tuple(b + 1 if idx == j else b for idx, b in enumerate(beta))
            for t, ct in x.items():
                key = (beta2, t)
                out[key] = out.get(key, ZERO) + c * ct
        return {k: c for k, c in out.items() if c}

    def dagger(self):
        """The involution fixing every generator.

        Antilinear and product-reversing: a normal-ordered word maps to
        the reversed word with conjugated coefficient, then renormal
        orders.
        """
        out = PBWElement.zero(self.d, self.kappa)
        for (beta, n), c in self.terms.items():
            rev = PBWElement.monomial(self.d, self.kappa, (0,) * self.d, n).star(
                PBWElement.monomial(self.d, self.kappa, beta, 0)
            )
            out = out + rev.scale(c.conjugate())
        return out


def star_multiply(f, g):
    return f.star(g)


def integral_star_oracle(f, g):
    """Closed-form product on the polynomial class; independent of the
    rewriting route.

    Pairing a p_0^n factor against a spatial monomial of total degree b
    shifts its argument; expanding the shift binomially and evaluating
    the derivative tower of the resulting exponential at the origin
    leaves sum_k C(n,k) (i b / kappa)^k p_0^(n-k) in front of the merged
    spatial part.
    """
    f._compat(g)
    out = {}
    for (gamma, n), c1 in f.terms.items():
        for (beta, m), c2 in g.terms.items():
            b_total = sum(beta)
            merged = tuple(a + b for a, b in zip(gamma, beta))
            base = c1 * c2
            shift = Scalar(0, Fraction(b_total) / f.kappa)
            power = ONE
            for k in range(n + 1):
                coeff = base * Scalar(comb(n, k)) * power
                key = (merged, n - k + m)
                out[key] = out.get(key, ZERO) + coeff
                power = power * shift
    return PBWElement(f.d, f.kappa, out)


# ---------------------------------------------------------------------------
# tensor square and the Hopf maps


class TensorElement:
    """Element of the tensor square, a finite map (key, key) -> Scalar."""

    __slots__ = ("d", "kappa", "terms")

    def __init__(self, d, kappa, terms):
        kappa = _kappa_of(kappa)
        clean = {}
        for (k1, k2), coeff in terms.items():
            coeff = Scalar.promote(coeff)
            if coeff:
                kk = ((tuple(k1[0]), k1[1]), (tuple(k2[0]), k2[1]))
                clean[kk] = clean.get(kk, ZERO) + coeff
        clean = {k: c for k, c in clean.items() if c}
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("TensorElement is immutable")

    def _compat(self, other):
        if self.d != other.d or self.kappa != other.kappa:
            raise ValueError("mixing tensors of different spaces")

    def __add__(self, other):
        self._compat(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return TensorElement(self.d, self.kappa, terms)

    def __sub__(self, other):
        return self + other.scale(Scalar(-1))

    def scale(self, c):
        c = Scalar.promote(c)
        return TensorElement(
            self.d, self.kappa, {k: c * v for k, v in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.d == other.d
            and self.kappa == other.kappa
            and self.terms == other.terms
        )

    def multiply(self, other):
        """Componentwise star product of the two tensor factors."""
        self._compat(other)
        probe = PBWElement.zero(self.d, self.kappa)
        out = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), e in other.terms.items():
                f = c * e
                left = probe._star_monomials(a1, b1)
                right = probe._star_monomials(a2, b2)
                for kl, cl in left.items():
                    for kr, cr in right.items():
                        key = (kl, kr)
                        out[key] = out.get(key, ZERO) + f * cl * cr
        return TensorElement(self.d, self.kappa, out)

    def slot_counit(self, slot):
        """Apply the counit in one tensor slot, returning a PBWElement."""
        out = {}
        for (k1, k2), c in self.terms.items():
            keep, kill = (k1, k2) if slot == 1 else (k2, k1)
            if kill[1] == 0 and not any(kill[0]):
                out[keep] = out.get(keep, ZERO) + c
        return PBWElement(self.d, self.kappa, out)


def coproduct(f):
    """Algebra map determined by primitive values on generators."""
    d, kappa = f.d, f.kappa
    unit_key = ((0,) * d, 0)
    out = TensorElement(d, kappa, {})
    for (beta, n), c in f.terms.items():
        acc = TensorElement(d, kappa, {(unit_key, unit_key): ONE})
        word = []
        for j, b in enumerate(beta):
            word.extend([j + 1] * b)
        word.extend([0] * n)
        for mu in word:
            gen = PBWElement.generator(d, kappa, mu)
            gkey = next(iter(gen.terms))
            prim = TensorElement(
                d, kappa, {(gkey, unit_key): ONE, (unit_key, gkey): ONE}
            )
            acc = acc.multiply(prim)
        out = out + acc.scale(c)
    return out


def counit(f):
    return f.constant_term()


def antipode(f):
    """Antihomomorphism with S(p_mu) = -p_mu on generators.

    A normal word of total degree g maps to (-1)^g times the reversed
    word, which the star product renormal orders.
    """
    d, kappa = f.d, f.kappa
    out = PBWElement.zero(d, kappa)
    for (beta, n), c in f.terms.items():
        sign = Scalar((-1) ** (n + sum(beta)))
        rev = PBWElement.monomial(d, kappa, (0,) * d, n).star(
            PBWElement.monomial(d, kappa, beta, 0)
        )
        out = out + rev.scale(sign * c)
    return out


def monomials_up_to(d, max_degree):
    """All normal-ordered monomial keys of total degree <= max_degree."""
    keys = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            for n in range(remaining + 1):
                keys.append((tuple(prefix), n))
            return
        for b in range(remaining + 1):
            rec(prefix + [b], remaining - b, slots - 1)

    rec([], max_degree, d)
    return sorted(keys)


def hopf_axiom_check(d, kappa, max_degree):
    """Exhaustive coassociativity, counit and antipode sweep.

    Returns a list of (axiom_name, monomial_key) failures; empty means
    every identity holds on all monomials up to the degree bound.
    """
    failures = []
    kappa = Fraction(kappa)
    one = PBWElement.one(d, kappa)
    for key in monomials_up_to(d, max_degree):
        f = PBWElement.monomial(d, kappa, key[0], key[1])
        delta = coproduct(f)
        left = {}
        right = {}
        for (k1, k2), c in delta.terms.items():
            inner = coproduct(PBWElement.monomial(d, kappa, k1[0], k1[1]))
            for (a, b), e in inner.terms.items():
                tk = (a, b, k2)
                left[tk] = left.get(tk, ZERO) + c * e
            inner2 = coproduct(PBWElement.monomial(d, kappa, k2[0], k2[1]))
            for (a, b), e in inner2.terms.items():
                tk = (k1, a, b)
                right[tk] = right.get(tk, ZERO) + c * e
        left = {k: c for k, c in left.items() if c}
        right = {k: c for k, c in right.items() if c}
        if left != right:
            failures.append(("coassociativity", key))
        if delta.slot_counit(1) != f or delta.slot_counit(2) != f:
            failures.append(("counit", key))
        eps_f = counit(f)
        target = one.scale(eps_f)
        for slot in (1, 2):
            total = PBWElement.zero(d, kappa)
            for (k1, k2), c in delta.terms.items():
                a = PBWElement.monomial(d, kappa, k1[0], k1[1])
                b = PBWElement.monomial(d, kappa, k2[0], k2[1])
                if slot == 1:
                    prod = antipode(a).star(b)
                else:
                    prod = a.star(antipode(b))
                total = total + prod.scale(c)
            if total != target:
                failures.append(("antipode slot %d" % slot, key))
    return failures


# ---------------------------------------------------------------------------
# the deformed symmetry action


class PoincareGenerator:
    """Tagged symmetry generator.

    Tags: "P0" (time translation), "P" (space translation, index),
    "E" (the group-like exponential of the time translation),
    "M" (rotation, index), "N" (boost, index), "X0"/"X" (the dual
    one-form basis labels realized as operators).  Rotations and boosts
    need d = 3.
    """

    __slots__ = ("tag", "index")

    TAGS = ("P0", "P", "E", "M", "N", "X0", "X")

    def __init__(self, tag, index=None):
        if tag not in self.TAGS:
            raise ValueError("unknown generator tag %r" % tag)
        if tag in ("P", "M", "N", "X") and index is None:
            raise ValueError("generator %s needs an index" % tag)
        if tag in ("P0", "E", "X0"):
            index = None
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "index", index)

    def __setattr__(self, *a):
        raise AttributeError("PoincareGenerator is immutable")

    def __repr__(self):
        if self.index is None:
            return "PoincareGenerator(%s)" % self.tag
        return "PoincareGenerator(%s%d)" % (self.tag, self.index)

    def __eq__(self, other):
        if not isinstance(other, PoincareGenerator):
            return NotImplemented
        return (self.tag, self.index) == (other.tag, other.index)

    def __hash__(self):
        return hash((self.tag, self.index))


def _partial(f, mu):
    """Formal partial derivative in the commutative polynomial reading."""
    out = {}
    for (beta, n), c in f.terms.items():
        if mu == 0:
            if n:
                key = (beta, n - 1)
                out[key] = out.get(key, ZERO) + c * Scalar(n)
        else:
            j = mu - 1
            if beta[j]:
                beta2 = tuple(b - 1 if idx == j else b for idx, b in enumerate(beta))
                key = (beta2, n)
                out[key] = out.get(key, ZERO) + c * Scalar(beta[j])
    return PBWElement(f.d, f.kappa, out)


def _mult(f, mu):
    """Multiplication by the coordinate p_mu in the polynomial reading."""
    out = {}
    for (beta, n), c in f.terms.items():
        if mu == 0:
            key = (beta, n + 1)
        else:
            j = mu - 1
            key = (
                tuple(b + 1 if idx == j else b for idx, b in enumerate(beta)),
                n,
            )
        out[key] = out.get(key, ZERO) + c
    return PBWElement(f.d, f.kappa, out)


def _shift(f, steps=1):
    """Exact substitution p_0 -> p_0 + steps * i/kappa."""
    s = Scalar(0, Fraction(steps) / f.kappa)
    out = {}
    for (beta, n), c in f.terms.items():
        power = ONE
        for k in range(n + 1):
            key = (beta, n - k)
            out[key] = out.get(key, ZERO) + c * Scalar(comb(n, k)) * power
            power = power * s
    return PBWElement(f.d, f.kappa, out)


def _require_d3(gen, f):
    if f.d != 3:
        raise ValueError("%s is only defined for three spatial dimensions" % (gen,))


def act_poincare(gen, f):
    """Apply a symmetry generator to an element.

    Translations act by -i times the matching derivative, the group-like
    generator by the imaginary shift of the timelike variable, rotations
    by the usual angular combination, and boosts by the deformed
    combination of shift, Laplacian, and mixed second derivatives.
    """
    tag = gen.tag
    if tag == "P0":
        return _partial(f, 0).scale(Scalar(0, -1))
    if tag == "P" or tag == "X":
        if not 1 <= gen.index <= f.d:
            raise ValueError("spatial index out of range")
        return _partial(f, gen.index).scale(Scalar(0, -1))
    if tag == "E":
        return _shift(f, 1)
    if tag == "X0":
        return (f - _shift(f, 1)).scale(Scalar(f.kappa))
    if tag == "M":
        _require_d3(gen, f)
        out = PBWElement.zero(f.d, f.kappa)
        for k in range(1, 4):
            for l in range(1, 4):
                s = epsilon3(gen.index, k, l)
                if s:
                    out = out + _mult(_partial(f, l), k).scale(Scalar(0, -s))
        return out
    if tag == "N":
        _require_d3(gen, f)
        j = gen.index
        kappa = f.kappa
        # kappa/2 (1 - shift^2) plus 1/(2 kappa) Laplacian, then p_j
        inner = (f - _shift(f, 2)).scale(Scalar(Fraction(kappa) / 2))
        lap = PBWElement.zero(f.d, f.kappa)
        for l in range(1, 4):
            lap = lap + _partial(_partial(f, l), l)
        inner = inner + lap.scale(Scalar(Fraction(1, 2) / kappa))
        out = _mult(inner, j)
        out = out + _mult(_partial(f, j), 0).scale(Scalar(0, 1))
        mixed = PBWElement.zero(f.d, f.kappa)
        for k in range(1, 4):
            mixed = mixed + _mult(_partial(_partial(f, j), k), k)
        out = out - mixed.scale(Scalar(Fraction(1, 1) / kappa))
        return out
    raise ValueError("unsupported generator %r" % (gen,))


def pairing(gen, f):
    """Duality pairing: act, then evaluate at the origin."""
    if gen.tag not in ("P0", "P", "E", "X0", "X"):
        raise ValueError("pairing is defined for translations, the group-like "
                         "generator, and the dual basis labels")
    return act_poincare(gen, f).constant_term()


def module_law_sides(gen, f, g):
    """Both sides of the action-product compatibility law.

    The right side uses the deformed coproducts: time translations and
    rotations are primitive, space translations and boosts twist by the
    group-like factor, and boosts pick up an extra cross term mixing
    translations with rotations.
    """
    lhs = act_poincare(gen, f.star(g))
    tag = gen.tag
    if tag == "P0":
        rhs = act_poincare(gen, f).star(g) + f.star(act_poincare(gen, g))
    elif tag == "P":
        E = PoincareGenerator("E")
        rhs = act_poincare(gen, f).star(g) + act_poincare(E, f).star(
            act_poincare(gen, g)
        )
    elif tag == "E":
        rhs = act_poincare(gen, f).star(act_poincare(gen, g))
    elif tag == "M":
        rhs = act_poincare(gen, f).star(g) + f.star(act_poincare(gen, g))
    elif tag == "N":
        E = PoincareGenerator("E")
        rhs = act_poincare(gen, f).star(g) + act_poincare(E, f).star(
            act_poincare(gen, g)
        )
        j = gen.index
        cross = PBWElement.zero(f.d, f.kappa)
        for k in range(1, 4):
            for l in range(1, 4):
                s = epsilon3(j, k, l)
                if s:
                    Pk = PoincareGenerator("P", k)
                    Ml = PoincareGenerator("M", l)
                    cross = cross + act_poincare(Pk, f).star(
                        act_poincare(Ml, g)
                    ).scale(Scalar(s))
        rhs = rhs - cross.scale(Scalar(Fraction(1, 1) / f.kappa))
    else:
        raise ValueError("no coproduct registered for %r" % (gen,))
    return lhs, rhs


def random_element(rng, d, kappa, max_degree, max_terms=3):
    """Deterministic pseudo-random element for seeded property sweeps."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        total = rng.randint(0, max_degree)
        beta = [0] * d
        n = 0
        for _ in range(total):
            slot = rng.randrange(d + 1)
            if slot == d:
                n += 1
            else:
                beta[slot] += 1
        num = rng.randint(-4, 4)
        den = rng.randint(1, 3)
        imn = rng.randint(-4, 4)
        terms[(tuple(beta), n)] = Scalar(Fraction(num, den), Fraction(imn, den))
    return PBWElement(d, kappa, terms)
