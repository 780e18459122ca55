"""
Exact arithmetic over Q(i, sqrt 2) and dense exact matrices.

A scalar is stored as four rationals (a, b, c, d) standing for
a + b*i + c*sqrt2 + d*i*sqrt2.  Matrices keep one integer numerator
array per basis element of the field (1, i, sqrt2, i*sqrt2) over a
shared positive denominator, so the common all-rational case costs a
single integer matmul.  Kernels and ranks use fraction-free
Gauss-Jordan elimination.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Scalar", "ExactMatrix", "LabelError", "I", "SQRT2",
    "scalar_mul", "kron", "kernel_basis", "kernel_matrix", "rank",
    "rref", "solve", "block_matrix", "as_scalar",
]


class LabelError(ValueError):
    """Raised when matrices with incompatible space labels are combined."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Scalar):
        if not x.is_rational():
            raise TypeError(f"{x!r} is not rational")
        return x.a
    return Fraction(x)


class Scalar:
    """Element a + b i + c sqrt2 + d i sqrt2 of Q(i, sqrt 2)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "c", _frac(c))
        object.__setattr__(self, "d", _frac(d))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        o = as_scalar(other)
        return Scalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if isinstance(other, (ExactMatrix, np.ndarray)):
            return NotImplemented
        o = as_scalar(other)
        a1, b1, c1, d1 = self.coords
        a2, b2, c2, d2 = o.coords
        # i^2 = -1, sqrt2^2 = 2, (i sqrt2)^2 = -2
        a = a1 * a2 - b1 * b2 + 2 * c1 * c2 - 2 * d1 * d2
        b = a1 * b2 + b1 * a2 + 2 * c1 * d2 + 2 * d1 * c2
        c = a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2
        d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return Scalar(a, b, c, d)

    __rmul__ = __mul__

    def conj(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.c, -self.d)

    def sqrt2_conj(self) -> "Scalar":
        """Galois automorphism sqrt2 -> -sqrt2."""
        return Scalar(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        # x * sigma(x) lies in Q(i); then use the complex conjugate.
        s = self.sqrt2_conj()
        q = self * s
        assert q.c == 0 and q.d == 0
        norm = q.a * q.a + q.b * q.b
        return s * Scalar(q.a / norm, -q.b / norm)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1)
        for _ in range(k):
            out = out * self
        return out

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def is_real(self) -> bool:
        return not (self.b or self.d)

    def sign(self) -> int:
        """Sign of a real element a + c sqrt2, decided exactly."""
        if not self.is_real():
            raise ValueError(f"{self!r} is not real")
        a, c = self.a, self.c
        if c == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (c > 0) - (c < 0)
        if (a > 0) == (c > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with 2 c^2
        if a * a > 2 * c * c:
            return 1 if a > 0 else -1
        return 1 if c > 0 else -1

    def is_positive(self) -> bool:
        return self.is_real() and self.sign() > 0

    def to_fraction(self) -> Fraction:
        return _frac(self)

    def __eq__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash(self.coords)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        terms = []
        for value, unit in zip(self.coords, ("", "i", "√2", "i√2")):
            if value == 0:
                continue
            if unit and abs(value) == 1:
                mag = unit
            elif unit:
                mag = f"{abs(value)}{unit}" if value.denominator == 1 else f"({abs(value)}){unit}"
            else:
                mag = str(abs(value))
            sign = "-" if value < 0 else "+"
            terms.append((sign, mag))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {m}" for s, m in terms[1:])


I = Scalar(0, 1)
SQRT2 = Scalar(0, 0, 1)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    if isinstance(x, np.integer):
        return Scalar(int(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as a scalar")


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    return as_scalar(x) * as_scalar(y)


# ---------------------------------------------------------------------------
# matrices

# product of field basis elements: k*l = sign * factor * basis[m]
_BASIS_PRODUCT = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
    (2, 2): (0, 2), (2, 3): (1, 2),
    (3, 3): (0, -2),
}
for (_k, _l), _v in list(_BASIS_PRODUCT.items()):
    _BASIS_PRODUCT[(_l, _k)] = _v


def _int_array(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def _default_label(k: int) -> str:
    return f"F^{k}"


class ExactMatrix:
    """Dense matrix over Q(i, sqrt2) between two labelled spaces.

    ``cod`` labels the row space (codomain) and ``dom`` the column space.
    Composition ``A @ B`` requires ``A.dom == B.cod``.
    """

    __slots__ = ("shape", "parts", "den", "dom", "cod")

    def __init__(self, parts: dict, den: int, shape: tuple[int, int],
                 dom: str | None = None, cod: str | None = None,
                 normalize: bool = True):
        self.shape = (int(shape[0]), int(shape[1]))
        self.dom = dom if dom is not None else _default_label(self.shape[1])
        self.cod = cod if cod is not None else _default_label(self.shape[0])
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.parts = {k: v for k, v in parts.items() if v.size and v.any()}
        self.den = int(den)
        if normalize:
            self._normalize()

    def _normalize(self):
        if not self.parts:
            self.den = 1
            return
        if self.den == 1:
            return
        g = self.den
        for arr in self.parts.values():
            g = math.gcd(g, *arr.flat)
            if g == 1:
                return
        self.parts = {k: v // g for k, v in self.parts.items()}
        self.den //= g

    # constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], dom=None, cod=None, shape=None):
        rows = [list(r) for r in rows]
        if shape is None:
            m = len(rows)
            k = len(rows[0]) if m else 0
        else:
            m, k = shape
        entries = [[as_scalar(x) for x in r] for r in rows]
        den = 1
        for r in entries:
            for x in r:
                for v in x.coords:
                    den = den * v.denominator // math.gcd(den, v.denominator)
        parts = {q: _int_array((m, k)) for q in range(4)}
        for i, r in enumerate(entries):
            if len(r) != k:
                raise ValueError("ragged rows")
            for j, x in enumerate(r):
                for q, v in enumerate(x.coords):
                    if v:
                        parts[q][i, j] = v.numerator * (den // v.denominator)
        return cls(parts, den, (m, k), dom, cod)

    @classmethod
    def from_int(cls, arr, den: int = 1, dom=None, cod=None, part: int = 0):
        arr = np.asarray(arr, dtype=object)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        out = _int_array(arr.shape)
        out[...] = arr
        return cls({part: out}, den, arr.shape, dom, cod)

    @classmethod
    def zeros(cls, m: int, k: int, cod=None, dom=None):
        return cls({}, 1, (m, k), dom, cod)

    @classmethod
    def identity(cls, k: int, label=None):
        arr = _int_array((k, k))
        for j in range(k):
            arr[j, j] = 1
        return cls({0: arr}, 1, (k, k), label, label)

    @classmethod
    def column(cls, entries: Sequence, cod=None):
        return cls.from_rows([[x] for x in entries], dom="F^1", cod=cod,
                             shape=(len(entries), 1))

    # basic properties ---------------------------------------------------

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def is_rational(self) -> bool:
        return set(self.parts) <= {0}

    def is_zero(self) -> bool:
        return not self.parts

    def _part(self, q: int) -> np.ndarray:
        arr = self.parts.get(q)
        return arr if arr is not None else _int_array(self.shape)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        vals = [Fraction(int(self.parts[q][i, j]), self.den) if q in self.parts else 0
                for q in range(4)]
        return Scalar(*vals)

    def entries(self) -> list[list[Scalar]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def col(self, j: int) -> "ExactMatrix":
        parts = {q: v[:, j:j + 1].copy() for q, v in self.parts.items()}
        return ExactMatrix(parts, self.den, (self.rows, 1), "F^1", self.cod)

    def select_rows(self, idx: Sequence[int], cod=None) -> "ExactMatrix":
        idx = list(idx)
        parts = {q: v[idx, :].copy() for q, v in self.parts.items()}
        return ExactMatrix(parts, self.den, (len(idx), self.cols), self.dom, cod)

    def select_cols(self, idx: Sequence[int], dom=None) -> "ExactMatrix":
        idx = list(idx)
        parts = {q: v[:, idx].copy() for q, v in self.parts.items()}
        return ExactMatrix(parts, self.den, (self.rows, len(idx)), dom, self.cod)

    def relabel(self, dom=None, cod=None) -> "ExactMatrix":
        return ExactMatrix(dict(self.parts), self.den, self.shape,
                           self.dom if dom is None else dom,
                           self.cod if cod is None else cod, normalize=False)

    def rational_numerators(self) -> tuple[np.ndarray, int]:
        if not self.is_rational():
            raise ValueError("matrix has irrational entries")
        return self._part(0), self.den

    # arithmetic ---------------------------------------------------------

    def _check_same_space(self, other: "ExactMatrix", op: str):
        if self.shape != other.shape:
            raise ValueError(f"{op}: shape mismatch {self.shape} vs {other.shape}")
        if self.dom != other.dom or self.cod != other.cod:
            raise LabelError(f"{op}: {self.cod}<-{self.dom} vs {other.cod}<-{other.dom}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_space(other, "add")
        den = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        parts = {}
        for q in set(self.parts) | set(other.parts):
            acc = None
            if q in self.parts:
                acc = self.parts[q] * fa
            if q in other.parts:
                acc = other.parts[q] * fb if acc is None else acc + other.parts[q] * fb
            parts[q] = acc
        return ExactMatrix(parts, den, self.shape, self.dom, self.cod)

    def __neg__(self):
        return ExactMatrix({q: -v for q, v in self.parts.items()}, self.den,
                           self.shape, self.dom, self.cod, normalize=False)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, x) -> "ExactMatrix":
        s = as_scalar(x)
        if s.is_zero() or self.is_zero():
            return ExactMatrix.zeros(self.rows, self.cols, self.cod, self.dom)
        den = 1
        for v in s.coords:
            den = den * v.denominator // math.gcd(den, v.denominator)
        coeff = {q: v.numerator * (den // v.denominator)
                 for q, v in enumerate(s.coords) if v}
        parts: dict[int, np.ndarray] = {}
        for q, arr in self.parts.items():
            for l, c in coeff.items():
                m, f = _BASIS_PRODUCT[(q, l)]
                term = arr * (c * f)
                parts[m] = term if m not in parts else parts[m] + term
        return ExactMatrix(parts, self.den * den, self.shape, self.dom, self.cod)

    def __mul__(self, x):
        if isinstance(x, ExactMatrix):
            return NotImplemented
        return self.scale(x)

    __rmul__ = __mul__

    def __truediv__(self, x):
        return self.scale(as_scalar(x).inverse())

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.dom != other.cod:
            raise LabelError(f"cannot compose {self.cod}<-{self.dom} with {other.cod}<-{other.dom}")
        if self.cols != other.rows:
            raise ValueError(f"inner dimension mismatch {self.shape} @ {other.shape}")
        shape = (self.rows, other.cols)
        parts: dict[int, np.ndarray] = {}
        if self.cols:
            for q, a in self.parts.items():
                for l, b in other.parts.items():
                    m, f = _BASIS_PRODUCT[(q, l)]
                    term = a.dot(b)
                    if f != 1:
                        term = term * f
                    parts[m] = term if m not in parts else parts[m] + term
        return ExactMatrix(parts, self.den * other.den, shape, other.dom, self.cod)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self - other.relabel(self.dom, self.cod)).is_zero()

    __hash__ = None

    def equals(self, other: "ExactMatrix") -> bool:
        """Equality including labels."""
        return self.dom == other.dom and self.cod == other.cod and self == other

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix({q: v.T.copy() for q, v in self.parts.items()}, self.den,
                           (self.cols, self.rows), self.cod, self.dom, normalize=False)

    @property
    def T(self):
        return self.transpose()

    def conj(self) -> "ExactMatrix":
        parts = {q: (-v if q in (1, 3) else v) for q, v in self.parts.items()}
        return ExactMatrix(parts, self.den, self.shape, self.dom, self.cod, normalize=False)

    def adjoint(self) -> "ExactMatrix":
        """Conjugate transpose (with respect to the standard hermitian forms)."""
        return self.conj().transpose()

    @property
    def H(self):
        return self.adjoint()

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        vals = [Fraction(int(sum(self.parts[q].diagonal())) if q in self.parts else 0, self.den)
                for q in range(4)]
        return Scalar(*vals)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return self == ExactMatrix.identity(self.rows).relabel(self.dom, self.cod)

    def is_scalar_multiple_of_identity(self) -> Scalar | None:
        if self.rows != self.cols:
            return None
        if self.rows == 0:
            return Scalar(0)
        c = self[0, 0]
        if self == ExactMatrix.identity(self.rows).relabel(self.dom, self.cod).scale(c):
            return c
        return None

    def first_difference(self, other: "ExactMatrix"):
        """(i, j, self_ij, other_ij) at the first differing entry, or None."""
        diff = self - other.relabel(self.dom, self.cod)
        if diff.is_zero():
            return None
        mask = np.zeros(self.shape, dtype=bool)
        for arr in diff.parts.values():
            mask |= arr != 0
        i, j = map(int, np.argwhere(mask)[0])
        return i, j, self[i, j], other[i, j]

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        return kron(self, other)

    def hstack(self, other: "ExactMatrix", dom=None) -> "ExactMatrix":
        if self.cod != other.cod:
            raise LabelError("hstack with different codomains")
        return block_matrix([[self, other]], doms=None, cods=None, dom=dom, cod=self.cod)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, {self.cod} <- {self.dom})"

    def pretty(self) -> str:
        cells = [[str(x) for x in row] for row in self.entries()]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product; row index (i, k) -> i*b.rows + k."""
    shape = (a.rows * b.rows, a.cols * b.cols)
    parts: dict[int, np.ndarray] = {}
    for q, x in a.parts.items():
        for l, y in b.parts.items():
            m, f = _BASIS_PRODUCT[(q, l)]
            term = np.kron(x, y)
            if f != 1:
                term = term * f
            parts[m] = term if m not in parts else parts[m] + term
    return ExactMatrix(parts, a.den * b.den, shape, _tensor_label(a.dom, b.dom), _tensor_label(a.cod, b.cod))


def _tensor_label(x: str, y: str) -> str:
    if x == "F^1":
        return y
    if y == "F^1":
        return x
    return f"{x}⊗{y}"


def block_matrix(blocks: Sequence[Sequence[ExactMatrix | None]], doms=None, cods=None,
                 dom=None, cod=None, row_dims=None, col_dims=None) -> ExactMatrix:
    """Assemble a block matrix; ``None`` entries are zero blocks.

    Block sizes are read from the non-None blocks unless given explicitly.
    """
    nr, nc = len(blocks), len(blocks[0])
    rdims = list(row_dims) if row_dims is not None else [None] * nr
    cdims = list(col_dims) if col_dims is not None else [None] * nc
    for i, row in enumerate(blocks):
        for j, blk in enumerate(row):
            if blk is None:
                continue
            if rdims[i] is None:
                rdims[i] = blk.rows
            if cdims[j] is None:
                cdims[j] = blk.cols
            if (rdims[i], cdims[j]) != blk.shape:
                raise ValueError(f"block ({i},{j}) has shape {blk.shape}")
            if doms is not None and blk.dom != doms[j]:
                raise LabelError(f"block ({i},{j}) domain {blk.dom} != {doms[j]}")
            if cods is not None and blk.cod != cods[i]:
                raise LabelError(f"block ({i},{j}) codomain {blk.cod} != {cods[i]}")
    if None in rdims or None in cdims:
        raise ValueError("cannot infer block sizes")
    den = 1
    for row in blocks:
        for blk in row:
            if blk is not None:
                den = den * blk.den // math.gcd(den, blk.den)
    shape = (sum(rdims), sum(cdims))
    parts: dict[int, np.ndarray] = {}
    r0 = 0
    for i, row in enumerate(blocks):
        c0 = 0
        for j, blk in enumerate(row):
            if blk is not None:
                f = den // blk.den
                for q, arr in blk.parts.items():
                    if q not in parts:
                        parts[q] = _int_array(shape)
                    parts[q][r0:r0 + rdims[i], c0:c0 + cdims[j]] = arr * f
            c0 += cdims[j]
        r0 += rdims[i]
    return ExactMatrix(parts, den, shape, dom, cod)


# ---------------------------------------------------------------------------
# fraction-free elimination

def _ring_array(m: ExactMatrix) -> tuple[np.ndarray, bool]:
    """Entries scaled by the denominator, as ints (rational) or Scalars."""
    if m.is_rational():
        return m._part(0).copy(), True
    out = np.empty(m.shape, dtype=object)
    p = [m._part(q) for q in range(4)]
    for i in range(m.rows):
        for j in range(m.cols):
            out[i, j] = Scalar(int(p[0][i, j]), int(p[1][i, j]), int(p[2][i, j]), int(p[3][i, j]))
    return out, False


def _ff_gauss_jordan(arr: np.ndarray, integral: bool):
    """Fraction-free Gauss-Jordan elimination.

    Returns (reduced array, pivot columns, final pivot value).  Every pivot
    entry of the result equals the final pivot value; each division by the
    previous pivot is exact and is asserted to be so on the integer path.
    """
    m, n = arr.shape
    M = arr
    prev = 1 if integral else Scalar(1)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = M[r:, c]
        nz = np.flatnonzero([bool(x) for x in col])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        piv = M[r, c]
        pivot_row = M[r].copy()
        num = piv * M - np.outer(M[:, c], pivot_row)
        if integral:
            q = num // prev
            if (num - q * prev).any():
                raise ArithmeticError("inexact fraction-free division")
            M = q
        else:
            inv = prev.inverse()
            M = num * inv
        M[r] = pivot_row
        pivots.append(c)
        prev = piv
        r += 1
    return M, pivots, prev


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form (pivots normalised to 1) and pivot columns."""
    arr, integral = _ring_array(m)
    red, pivots, d = _ff_gauss_jordan(arr, integral)
    red = red[:len(pivots)]
    if integral:
        out = ExactMatrix.from_int(red, den=1).scale(Fraction(1, d)) if pivots else \
            ExactMatrix.zeros(0, m.cols)
    else:
        inv = d.inverse()
        out = ExactMatrix.from_rows([[x * inv for x in row] for row in red],
                                    shape=(len(pivots), m.cols))
    return out.relabel(dom=m.dom, cod=f"rref({m.cod})"), pivots


def rank(m: ExactMatrix) -> int:
    arr, integral = _ring_array(m)
    _, pivots, _ = _ff_gauss_jordan(arr, integral)
    return len(pivots)


def kernel_matrix(m: ExactMatrix, dom: str | None = None) -> tuple[ExactMatrix, list[int]]:
    """Kernel basis as matrix columns plus the free columns.

    Column ``k`` has entry 1 at free column ``free[k]`` and 0 at the other
    free columns, so the rows at ``free`` form an identity block.
    """
    arr, integral = _ring_array(m)
    red, pivots, d = _ff_gauss_jordan(arr, integral)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    label = dom if dom is not None else f"ker({m.cod}<-{m.dom})"
    if not free:
        return ExactMatrix.zeros(m.cols, 0, cod=m.dom, dom=label), free
    if integral:
        K = _int_array((m.cols, len(free)))
        for k, f in enumerate(free):
            K[f, k] = d
            for row, pc in enumerate(pivots):
                K[pc, k] = -red[row, f]
        sign = -1 if d < 0 else 1
        return ExactMatrix({0: K * sign}, abs(d), (m.cols, len(free)), label, m.dom), free
    inv = d.inverse()
    rows = [[Scalar(0)] * len(free) for _ in range(m.cols)]
    for k, f in enumerate(free):
        rows[f][k] = Scalar(1)
        for row, pc in enumerate(pivots):
            rows[pc][k] = -red[row, f] * inv
    return ExactMatrix.from_rows(rows, dom=label, cod=m.dom, shape=(m.cols, len(free))), free


def kernel_basis(m: ExactMatrix) -> list[ExactMatrix]:
    """Kernel basis of ``m`` as a list of column vectors."""
    K, _ = kernel_matrix(m)
    return [K.col(j) for j in range(K.cols)]


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """A particular solution X of a @ X = b (free variables zero), or None."""
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    aug = block_matrix([[a.relabel(dom="A", cod="R"), b.relabel(dom="B", cod="R")]])
    red, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        return None
    rows = [[Scalar(0)] * b.cols for _ in range(a.cols)]
    for row, pc in enumerate(pivots):
        for j in range(b.cols):
            rows[pc][j] = red[row, a.cols + j]
    return ExactMatrix.from_rows(rows, dom=b.dom, cod=a.dom, shape=(a.cols, b.cols))


def vector(entries: Iterable, cod=None) -> ExactMatrix:
    return ExactMatrix.column(list(entries), cod=cod)
