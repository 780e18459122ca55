"""
Coefficient algebra of the matrix Weitzenböck formula.

Operator slots are symbols only.  The 6x6 system is indexed by
(E-row, H-row) with the H index running fastest, which is the numpy
convention for kron(W_E(s), W_H(r)).

Right-hand slots, in order:
    -1/2 (D++)* D++,  1/2 D+- D-+,  1/2 D-+ D+-,  -1/2 (D--)* D--,  -(T+)* T+,  (T-)* T-
Left-hand slots, in order:
    -∇*∇,  κ/4 r(r+2)/(n+2),  κ/4 s(2n-s+2)/(n(n+2)),  C,  L,  0
All κ-dependent values are returned as the coefficient of κ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .scalars import SQRT2, ExactMatrix, Scalar, kron, rank, solve
from .rep_spaces import W_34, W_H

F = Fraction

RHS_SLOTS = ("-1/2 (D++)*D++", "1/2 D+-D-+", "1/2 D-+D+-", "-1/2 (D--)*D--", "-(T+)*T+", "(T-)*T-")
LHS_SLOTS = ("-∇*∇", "κ-term H", "κ-term E", "C", "L", "0")
NORM_SLOTS = ("|D++ψ|²", "|D-+ψ|²", "|D+-ψ|²", "|D--ψ|²", "|T+ψ|²", "|T-ψ|²")

# (slot operator ψ, ψ) = NORM_DICTIONARY[j] * |norm slot j|²
NORM_DICTIONARY = (F(-1, 2), F(1, 2), F(1, 2), F(-1, 2), F(-1), F(1))


def W_E(n: int, s: int) -> ExactMatrix:
    a = n - s + 1
    b = 2 * n - s + 3
    return ExactMatrix.from_rows([
        [F(1, s + 1), F(-(n - s + 2), a * b), 1],
        [F(-s, s + 1), F((n - s + 2) * (2 * n - s + 2), a * b), 1],
        [F(-(n + 1) * s, n * (s + 1)), F(-(n + 1) * (n - s) * (2 * n - s + 2), n * a * b), F(n - s, n)],
    ])


def W_twist_displayed(n: int, r: int, s: int) -> ExactMatrix:
    q1 = F(2 * n - s + 4, 2 * n - s + 3)
    q2 = F(2 * n - s + 2, 2 * n - s + 3)
    h = F(r, r + 1)
    k = F(r * (r + 2), r + 1)
    return ExactMatrix.from_rows([
        [q1, -h * q1, 1, -h],
        [r * q1, k * q1, r, k],
        [-q2, h * q2, 1, -h],
        [-r * q2, -k * q2, r, k],
    ])


@dataclass
class WeitzenbockMatrices:
    n: int
    r: int
    s: int
    WH: ExactMatrix
    WE: ExactMatrix
    Wtwist: ExactMatrix

    @property
    def full(self) -> ExactMatrix:
        """The 6x6 matrix with (E, H) slot order."""
        return kron(self.WE, self.WH)


def build_weitzenbock(n: int, r: int, s: int) -> WeitzenbockMatrices:
    if n < 1 or r < 0 or not 0 <= s <= n:
        raise ValueError(f"(n, r, s) = ({n}, {r}, {s}) out of range")
    return WeitzenbockMatrices(n, r, s, W_H(r), W_E(n, s), W_twist_displayed(n, r, s))


def lhs_kappa_coefficients(n: int, r: int, s: int) -> tuple[Fraction, Fraction]:
    """Coefficients of κ in the two curvature slots of the left-hand side."""
    return F(r * (r + 2), 4 * (n + 2)), F(s * (2 * n - s + 2), 4 * n * (n + 2))


def _row(M: ExactMatrix, i: int) -> list[Fraction]:
    return [M[i, j].to_fraction() for j in range(M.cols)]


# ---------------------------------------------------------------------------
# the key norm identity

@dataclass
class MinIdentity:
    n: int
    r: int
    ok: bool
    u: list | None
    coefficients: list | None
    kappa_coefficient: Fraction | None
    targets: list
    target_kappa: Fraction
    dictionary: tuple = NORM_DICTIONARY
    passing_dictionaries: list = field(default_factory=list)


def min_identity_targets(n: int, r: int) -> tuple[list[Fraction], Fraction]:
    """Norm coefficients in slot order (D++, D-+, D+-, D--, T+, T-) and the κ/4 coefficient."""
    c = [F(-(r + 1), n - r + 1), F(r + 2), F((r + 2) * (n + r + 2), n + r + 3), F(0), F(-2 * (r + 1)), F(0)]
    return c, F((r + 2) * (n + r + 2), n + 2)


def _solve_min(n: int, r: int, dictionary) -> tuple[list | None, list | None, Fraction | None]:
    s = n - r
    M = build_weitzenbock(n, r, s).full
    targets, kappa_target = min_identity_targets(n, r)
    kh, ke = lhs_kappa_coefficients(n, r, s)
    # unknowns u2, u3, u6 (index 1, 2, 5); u1 = u4 = u5 = 0
    free = (1, 2, 5)
    rows = []
    rhs = []
    for j in range(6):
        rows.append([M[i, j].to_fraction() * dictionary[j] for i in free])
        rhs.append([targets[j]])
    # κ/4 coefficient: 4 (u2 kh + u3 ke) = target
    rows.append([4 * kh, 4 * ke, F(0)])
    rhs.append([kappa_target])
    A = ExactMatrix.from_rows(rows)
    b = ExactMatrix.from_rows(rhs)
    x = solve(A, b)
    if x is None:
        return None, None, None
    u = [F(0)] * 6
    for k, i in enumerate(free):
        u[i] = x[k, 0].to_fraction()
    # recompute independently from u
    coeffs = []
    for j in range(6):
        coeffs.append(sum(u[i] * M[i, j].to_fraction() for i in range(6)) * dictionary[j])
    kappa = 4 * (u[1] * kh + u[2] * ke)
    return u, coeffs, kappa


def derive_min_identity(n: int, r: int, scan_dictionaries: bool = False) -> MinIdentity:
    """Find the row vector u turning the matrix formula into the key norm identity."""
    if not 1 <= r <= n - 1:
        raise ValueError(f"need 1 <= r <= n-1, got r={r}, n={n}")
    targets, kappa_target = min_identity_targets(n, r)
    u, coeffs, kappa = _solve_min(n, r, NORM_DICTIONARY)
    ok = u is not None and coeffs == targets and kappa == kappa_target
    out = MinIdentity(n, r, ok, u, coeffs, kappa, targets, kappa_target)
    if scan_dictionaries:
        for signs in product((1, -1), repeat=6):
            d = tuple(sg * abs(x) for sg, x in zip(signs, NORM_DICTIONARY))
            uu, cc, kk = _solve_min(n, r, d)
            if uu is not None and cc == targets and kk == kappa_target:
                out.passing_dictionaries.append(d)
    return out


# ---------------------------------------------------------------------------
# the limiting system at r = 1, s = n - 1

@dataclass
class LimitingSystem:
    n: int
    ok: bool
    matrix: ExactMatrix
    lhs: list
    D_minus_minus: Fraction | None   # coefficient of κ in (D--)* D-- ψ1
    T_minus: Fraction | None         # coefficient of κ in (T-)* T- ψ1
    expected: tuple


def limiting_system_matrix(n: int) -> ExactMatrix:
    """Rows 2, 3, 6 and columns 2, 4, 6 of the 6x6 matrix at r = 1, s = n - 1."""
    M = build_weitzenbock(n, 1, n - 1).full
    return M.select_rows([1, 2, 5]).select_cols([1, 3, 5])


def solve_limiting_system(n: int) -> LimitingSystem:
    if n < 2:
        raise ValueError("n must be >= 2")
    M = build_weitzenbock(n, 1, n - 1).full
    kh, ke = lhs_kappa_coefficients(n, 1, n - 1)
    lhs = [kh, ke, F(0)]
    known = F(1, 2) * F(n + 3, 4 * (n + 2))   # slot 2: 1/2 D+-D-+ ψ1
    rows = [1, 2, 5]
    A = ExactMatrix.from_rows([[M[i, 3].to_fraction(), M[i, 5].to_fraction()] for i in rows])
    b = ExactMatrix.from_rows([[lhs[k] - M[i, 1].to_fraction() * known] for k, i in enumerate(rows)])
    x = solve(A, b)
    expected = (F((n + 4) * (n - 1), 2 * n * (n + 2)), F(0))
    if x is None:
        return LimitingSystem(n, False, limiting_system_matrix(n), lhs, None, None, expected)
    dmm = -2 * x[0, 0].to_fraction()      # slot 4 is -1/2 (D--)*D--
    tm = x[1, 0].to_fraction()
    ok = rank(A) == 2 and (dmm, tm) == expected
    return LimitingSystem(n, ok, limiting_system_matrix(n), lhs, dmm, tm, expected)


@dataclass
class PsiMinusRow:
    n: int
    ok: bool
    lhs_kappa: Fraction
    coeff_DppDpp: Fraction
    coeff_DmpDpm: Fraction
    residual_kappa: Fraction


def solve_psi_minus_row(n: int) -> PsiMinusRow:
    """Third row at r = 0, s = n - 2 with the known value of (D++)*D++ ψ- and T+ψ- = 0."""
    if n < 2:
        raise ValueError("n must be >= 2")
    s = n - 2
    M = build_weitzenbock(n, 0, s).full
    row = _row(M, 2)
    lhs = lhs_kappa_coefficients(n, 0, s)[1]
    c1 = row[0] * F(-1, 2)            # coefficient of (D++)* D++
    c3 = row[2] * F(1, 2)             # coefficient of D-+ D+-
    dpp = F((n + 4) * (n - 1), 2 * n * (n + 2))
    residual = lhs - c1 * dpp
    ok = (c1 == F(n - 2, 2 * (n - 1)) and c3 == F(2 * (n + 4), 3 * (n + 5))
          and lhs == F((n + 4) * (n - 2), 4 * n * (n + 2)) and residual == 0 and c3 > 0
          and all(row[j] == 0 for j in (1, 3, 5)))
    return PsiMinusRow(n, ok, lhs, c1, c3, residual)


# ---------------------------------------------------------------------------
# twistor matrix and the corollary

@dataclass
class TwistorCheck:
    n: int
    r: int
    s: int
    ok: bool
    trivial: bool
    kron_matches: bool = True
    corollary: tuple = ()
    second_identity: tuple = ()


def W_twist_kron(n: int, r: int, s: int) -> ExactMatrix:
    return kron(W_34(n, s), W_H(r))


def check_twistor_corollary(n: int, r: int, s: int) -> TwistorCheck:
    """Row 1 of the twistor matrix gives the corollary; row 4 is a second zero identity."""
    if s == 1:
        return TwistorCheck(n, r, s, True, True)
    if not 2 <= s <= n or r < 0:
        raise ValueError(f"(n, r, s) = ({n}, {r}, {s}) out of range")
    W = W_twist_displayed(n, r, s)
    kron_ok = W == W_twist_kron(n, r, s)
    q = F(2 * n - s + 4, 2 * n - s + 3)
    h = F(r, r + 1)
    inv_root2 = SQRT2 * F(1, 2)
    # slot vector (T-D+-/√2, T+D--/√2, θ-T+, θ+T-)
    row1 = [W[0, j] for j in range(4)]
    coeffs = (row1[0] * inv_root2, row1[1] * inv_root2, row1[2], row1[3])
    expected = (inv_root2 * q, -inv_root2 * q * h, Scalar(1), Scalar(-h))
    row4 = tuple(W[3, j] * (inv_root2 if j < 2 else 1) for j in range(4))
    ok = kron_ok and tuple(coeffs) == expected
    return TwistorCheck(n, r, s, ok, False, kron_ok, tuple(coeffs), row4)
