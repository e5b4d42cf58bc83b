"""Number fields F = Q[x]/(f) with exact ring arithmetic and numeric embeddings.

Elements are stored by their rational coordinates in the power basis of a
root theta of the monic defining polynomial f.  Traces and the trace Gram
matrix are computed exactly (via power sums of the roots, never floats), so
the discriminant of the given order is an exact integer.  Embeddings are
refined numerically to a configurable precision and kept both as mpmath
values and as machine complex numbers for the lattice code.

All constructed objects are immutable after ``build_field`` returns and are
safe for unrestricted concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import sympy

from . import exactlinalg as xl

DEFAULT_PREC_BITS = 64


class FieldError(ValueError):
    """Invalid defining data for a number field."""


@dataclass(frozen=True)
class FieldElement:
    """Element of a number field, exact rational coords in the power basis."""

    nf: "NumberField"
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.nf.degree:
            raise FieldError("coordinate vector has wrong length")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.nf, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.nf, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.nf, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            self._check(other)
            return self.nf._multiply(self, other)
        return FieldElement(self.nf, tuple(a * Fraction(other) for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.nf is self.nf
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((id(self.nf), self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero element of a number field")
        m = self.nf._mul_matrix(self)
        one = [Fraction(1)] + [Fraction(0)] * (self.nf.degree - 1)
        return FieldElement(self.nf, tuple(xl.solve(m, one)))

    def trace(self) -> Fraction:
        """Exact trace Tr_{F/Q} via precomputed power sums of the roots."""
        return sum(
            (c * self.nf._power_sums[k] for k, c in enumerate(self.coords)),
            Fraction(0),
        )

    def embed(self, idx: int) -> complex:
        """Value of the element under the idx-th embedding (machine precision)."""
        root = self.nf.embeddings[idx]
        acc = 0j
        for c in reversed(self.coords):
            acc = acc * root + float(c)
        return acc

    def embed_mp(self, idx: int) -> mpmath.mpc:
        """High-precision value under the idx-th embedding."""
        root = self.nf._embeddings_mp[idx]
        acc = mpmath.mpf(0)
        for c in reversed(self.coords):
            acc = acc * root + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def _check(self, other):
        if other.nf is not self.nf:
            raise FieldError("elements of different fields")

    def __repr__(self):
        terms = [f"{c}*t^{k}" if k else f"{c}" for k, c in enumerate(self.coords) if c]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class NumberField:
    """A number field with a chosen order, embeddings and trace data.

    ``integral_basis`` holds the basis elements of the order; the matrix
    whose columns are their power-basis coordinates is kept alongside its
    inverse for exact coordinate changes.
    """

    defining_poly: tuple[int, ...]  # constant term first, monic
    degree: int
    integral_basis: tuple[FieldElement, ...] = field(repr=False)
    basis_matrix: tuple[tuple[Fraction, ...], ...] = field(repr=False)  # columns = basis
    basis_matrix_inv: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    trace_gram_matrix: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    discriminant: int
    signature: tuple[int, int]
    embeddings: tuple[complex, ...] = field(repr=False)
    conj_index: tuple[int, ...] = field(repr=False)
    prec_bits: int
    power_basis_order: bool  # True when the order is Z[theta], maximality unverified
    _power_sums: tuple[Fraction, ...] = field(repr=False)
    _reduction_rows: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    # -- construction helpers -------------------------------------------------

    def element(self, coords: Sequence) -> FieldElement:
        return FieldElement(self, tuple(Fraction(c) for c in coords))

    def zero(self) -> FieldElement:
        return self.element([0] * self.degree)

    def one(self) -> FieldElement:
        return self.element([1] + [0] * (self.degree - 1))

    def theta(self) -> FieldElement:
        if self.degree == 1:
            # theta is a rational root; express it in the 1-dim power basis
            return self.element([Fraction(-self.defining_poly[0], self.defining_poly[1])])
        return self.element([0, 1] + [0] * (self.degree - 2))

    @property
    def r1(self) -> int:
        return self.signature[0]

    @property
    def r2(self) -> int:
        return self.signature[1]

    def from_integral_coords(self, coords: Sequence) -> FieldElement:
        """Element with the given exact coordinates in the integral basis."""
        cs = [Fraction(c) for c in coords]
        acc = self.zero()
        for c, b in zip(cs, self.integral_basis):
            if c:
                acc = acc + c * b
        return acc

    def to_integral_coords(self, x: FieldElement) -> list[Fraction]:
        return xl.mat_vec([list(r) for r in self.basis_matrix_inv], list(x.coords))

    # -- exact arithmetic internals -------------------------------------------

    def _multiply(self, a: FieldElement, b: FieldElement) -> FieldElement:
        r = self.degree
        prod = [Fraction(0)] * (2 * r - 1)
        for i, ai in enumerate(a.coords):
            if ai:
                for j, bj in enumerate(b.coords):
                    if bj:
                        prod[i + j] += ai * bj
        out = list(prod[:r])
        for k in range(r, 2 * r - 1):
            ck = prod[k]
            if ck:
                red = self._reduction_rows[k - r]
                for j in range(r):
                    out[j] += ck * red[j]
        return FieldElement(self, tuple(out))

    def _mul_matrix(self, a: FieldElement) -> xl.Matrix:
        """Matrix of multiplication by ``a`` in the power basis."""
        cols = []
        basis_el = self.one()
        theta = self.theta()
        for _ in range(self.degree):
            cols.append(list((a * basis_el).coords))
            basis_el = basis_el * theta
        return xl.transpose(cols)

    def __repr__(self):
        poly = " + ".join(
            f"{c}*x^{k}" if k else f"{c}" for k, c in enumerate(self.defining_poly) if c
        )
        return f"NumberField({poly}, disc={self.discriminant}, sig={self.signature})"


def _power_sums(coeffs: Sequence[int], upto: int) -> list[Fraction]:
    """Power sums p_k = sum(root^k) of a monic polynomial, Newton's identities."""
    r = len(coeffs) - 1
    a = [Fraction(c) for c in coeffs]  # a[j] multiplies x^j, a[r] == 1
    p = [Fraction(r)]
    for k in range(1, upto + 1):
        if k <= r:
            s = -k * a[r - k]
            for i in range(1, k):
                s -= a[r - i] * p[k - i]
        else:
            s = Fraction(0)
            for i in range(1, r + 1):
                s -= a[r - i] * p[k - i]
        p.append(s)
    return p


def _reduction_rows(coeffs: Sequence[int], r: int) -> list[list[Fraction]]:
    """Power-basis coordinates of theta^k for k = r .. 2r-2."""
    rows = []
    prev = [Fraction(-c) for c in coeffs[:r]]  # theta^r = -(a_0 + ... + a_{r-1} theta^{r-1})
    rows.append(prev)
    for _ in range(r + 1, 2 * r - 1):
        shifted = [Fraction(0)] + prev[:-1]
        top = prev[-1]
        if top:
            shifted = [s + top * (-Fraction(c)) for s, c in zip(shifted, coeffs[:r])]
        rows.append(shifted)
        prev = shifted
    return rows


def _compute_embeddings(coeffs: Sequence[int], prec_bits: int):
    """Roots of f ordered deterministically: real ascending, then conjugate
    pairs by (Re, Im) with the positive-imaginary root first.

    The number of real roots is established exactly via Sturm sequences
    (sympy), so the real/complex split never depends on a float threshold.
    Each root is Newton-refined and certified by a residual bound.
    """
    r = len(coeffs) - 1
    x = sympy.symbols("x")
    poly = sympy.Poly([Fraction(c) for c in reversed(coeffs)], x, domain="QQ")
    n_real = len(poly.real_roots())

    dps = max(30, int(prec_bits * 0.35) + 25)
    with mpmath.workdps(dps):
        mp_coeffs = [mpmath.mpf(int(c)) for c in reversed(coeffs)]
        roots = mpmath.polyroots(mp_coeffs, maxsteps=200, extraprec=prec_bits)

        def f_val(z):
            acc = mpmath.mpf(0)
            for c in mp_coeffs:
                acc = acc * z + c
            return acc

        def fp_val(z):
            acc = mpmath.mpf(0)
            deg = len(mp_coeffs) - 1
            for k, c in enumerate(mp_coeffs[:-1]):
                acc = acc * z + c * (deg - k)
            return acc

        refined = []
        for z in roots:
            for _ in range(3):
                fz = f_val(z)
                fpz = fp_val(z)
                if abs(fpz) > 0:
                    z = z - fz / fpz
            refined.append(z)

        # residual certification: |f(root)| below a precision-dependent bound
        height = max(abs(int(c)) for c in coeffs)
        for z in refined:
            scale = height * (1 + abs(z)) ** r
            residual = abs(f_val(z))
            if residual > mpmath.mpf(2) ** (-prec_bits) * scale:
                raise FieldError(
                    f"embedding residual {residual} exceeds certified bound at precision {prec_bits}"
                )

        # classify: the n_real roots with smallest |Im| are the real ones
        order = sorted(range(len(refined)), key=lambda i: abs(mpmath.im(refined[i])))
        real_idx = set(order[:n_real])
        reals = sorted(
            (mpmath.mpf(mpmath.re(refined[i])) for i in real_idx), key=lambda v: float(v)
        )
        complexes = [refined[i] for i in range(len(refined)) if i not in real_idx]
        pos = sorted(
            (z for z in complexes if mpmath.im(z) > 0),
            key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))),
        )
        if 2 * len(pos) != len(complexes):
            raise FieldError("complex roots do not split into conjugate pairs")

        embeddings_mp: list = list(reals)
        conj_index = list(range(len(reals)))
        for z in pos:
            i = len(embeddings_mp)
            embeddings_mp.append(z)
            embeddings_mp.append(mpmath.conj(z))
            conj_index.extend([i + 1, i])
        embeddings = tuple(complex(z) for z in embeddings_mp)
    return embeddings, embeddings_mp, tuple(conj_index), (n_real, len(pos))


def build_field(
    poly: Sequence[int],
    integral_basis: Sequence[Sequence] | None = None,
    prec_bits: int = DEFAULT_PREC_BITS,
) -> NumberField:
    """Construct a number field from a monic integral polynomial.

    ``poly`` lists coefficients constant term first.  When ``integral_basis``
    is omitted the power basis Z[theta] is used and the resulting order may be
    non-maximal (flagged on the field).  A supplied basis is given row-wise,
    each row the power-basis coordinates of one basis element; it must contain
    Z[theta] and have exact integral trace pairings.
    """
    coeffs = [int(c) for c in poly]
    if len(coeffs) < 2:
        raise FieldError("defining polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise FieldError("defining polynomial must be monic")
    r = len(coeffs) - 1

    x = sympy.symbols("x")
    spoly = sympy.Poly(list(reversed(coeffs)), x, domain="QQ")
    if r > 1 and not spoly.is_irreducible:
        raise FieldError("defining polynomial is reducible over Q")

    power_sums = tuple(_power_sums(coeffs, max(2 * r - 2, 1)))
    reduction = tuple(tuple(row) for row in _reduction_rows(coeffs, r)) if r > 1 else ()

    embeddings, embeddings_mp, conj_index, signature = _compute_embeddings(coeffs, prec_bits)
    if signature[0] + 2 * signature[1] != r:
        raise FieldError("signature does not match the degree")

    # bootstrap a field with the power basis so elements can be formed
    proto = NumberField(
        defining_poly=tuple(coeffs),
        degree=r,
        integral_basis=(),
        basis_matrix=(),
        basis_matrix_inv=(),
        trace_gram_matrix=(),
        discriminant=0,
        signature=signature,
        embeddings=embeddings,
        conj_index=conj_index,
        prec_bits=prec_bits,
        power_basis_order=integral_basis is None,
        _power_sums=power_sums,
        _reduction_rows=reduction,
    )
    object.__setattr__(proto, "_embeddings_mp", embeddings_mp)

    if integral_basis is None:
        basis_cols = xl.identity(r)
        basis_rows = xl.identity(r)
    else:
        basis_rows = [[Fraction(c) for c in row] for row in integral_basis]
        if len(basis_rows) != r or any(len(row) != r for row in basis_rows):
            raise FieldError("integral basis must be an r x r matrix")
        basis_cols = xl.transpose(basis_rows)

    try:
        basis_cols_inv = xl.inverse(basis_cols)
    except ZeroDivisionError:
        raise FieldError("integral basis vectors are linearly dependent") from None

    # the basis must contain Z[theta]: power-basis vectors must have integer
    # coordinates in the supplied basis
    if integral_basis is not None and not xl.is_integral(basis_cols_inv):
        raise FieldError("supplied basis does not contain Z[theta]")

    basis_elements = tuple(FieldElement(proto, tuple(row)) for row in basis_rows)

    gram = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            tij = (basis_elements[i] * basis_elements[j]).trace()
            gram[i][j] = tij
            gram[j][i] = tij
    if integral_basis is not None and not all(
        x.denominator == 1 for row in gram for x in row
    ):
        raise FieldError("supplied basis has non-integral trace pairings")

    disc = xl.det(gram)
    if disc.denominator != 1:
        raise FieldError("discriminant of the given order is not an integer")
    if disc == 0:
        raise FieldError("degenerate trace form")

    nf = NumberField(
        defining_poly=tuple(coeffs),
        degree=r,
        integral_basis=basis_elements,
        basis_matrix=tuple(tuple(row) for row in basis_cols),
        basis_matrix_inv=tuple(tuple(row) for row in basis_cols_inv),
        trace_gram_matrix=tuple(tuple(row) for row in gram),
        discriminant=int(disc),
        signature=signature,
        embeddings=embeddings,
        conj_index=conj_index,
        prec_bits=prec_bits,
        power_basis_order=integral_basis is None,
        _power_sums=power_sums,
        _reduction_rows=reduction,
    )
    object.__setattr__(nf, "_embeddings_mp", embeddings_mp)
    # re-home the basis elements on the final field object
    object.__setattr__(nf, "integral_basis", tuple(FieldElement(nf, b.coords) for b in basis_elements))
    return nf


def trace_gram(nf: NumberField) -> list[list[Fraction]]:
    """Exact matrix of trace pairings on the integral basis; det equals disc."""
    return [list(row) for row in nf.trace_gram_matrix]


def duality_gap_constant(n: int, nf: NumberField) -> float:
    """Duality-gap constant: (1/r)log|disc| + (3/2)log N + (5/2)log r - (r2/r)log pi."""
    import math

    if n < 1:
        raise ValueError("rank must be at least 1")
    r = nf.degree
    return (
        math.log(abs(nf.discriminant)) / r
        + 1.5 * math.log(n)
        + 2.5 * math.log(r)
        - nf.r2 / r * math.log(math.pi)
    )
