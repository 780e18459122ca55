"""
Partial Clifford multiplications on Sym^r H ⊗ Λ^s_∘ E, a calibrated real
frame of H ⊗ E, the number-operator sums and the right inverses ι.

Fibre coordinates are H-major: index (a, k) -> a * dim Λ^s_∘ + k.
Tangent vectors live in H ⊗ E with index (alpha, i) -> alpha * 2n + i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from .scalars import I, SQRT2, ExactMatrix, Scalar, block_matrix, kron, _int_array
from .rep_spaces import (CheckResult, build_E, build_H, contract_circ_unit, derivation_on_prim,
                         derivation_on_sym, dim_prim, dim_sym, prim_contract, prim_embedding,
                         prim_label, sym2_action_E, sym2_action_H, sym_contract_circ,
                         sym_gram, sym_label, sym_mul_unit, wedge_circ_unit)

F = Fraction

KINDS = ("+-", "-+", "++", "--")
SHIFT = {"+-": (1, -1), "-+": (-1, 1), "++": (1, 1), "--": (-1, -1)}


def fiber_label(n: int, r: int, s: int) -> str:
    return f"S(n={n};r={r},s={s})"


def fiber_dim(n: int, r: int, s: int) -> int:
    return dim_sym(r) * dim_prim(n, s)


def spinor_rank(n: int, r: int) -> int:
    """rank S_r = (r+1)(C(2n, n-r) - C(2n, n-r-2))."""
    def c(k):
        return comb(2 * n, k) if 0 <= k <= 2 * n else 0
    return (r + 1) * (c(n - r) - c(n - r - 2))


def tangent_label(n: int) -> str:
    return f"H⊗E{n}"


def _admissible(n: int, r: int, s: int) -> bool:
    return r >= 0 and 0 <= s <= n


def _fiber_op(n: int, sym_op: ExactMatrix, prim_op: ExactMatrix, r: int, s: int, r2: int, s2: int) -> ExactMatrix:
    return kron(sym_op, prim_op).relabel(dom=fiber_label(n, r, s), cod=fiber_label(n, r2, s2))


@lru_cache(maxsize=None)
def mu_unit(kind: str, n: int, r: int, s: int, alpha: int, i: int) -> ExactMatrix:
    """μ^kind(h_alpha ⊗ e_i) on the fibre (r, s)."""
    if kind not in SHIFT:
        raise ValueError(f"unknown Clifford kind {kind!r}")
    if not _admissible(n, r, s):
        raise ValueError(f"inadmissible source fibre (r={r}, s={s}) for n={n}")
    E, H = build_E(n), build_H()
    dr, ds = SHIFT[kind]
    h_part = sym_mul_unit(r, alpha) if dr > 0 else sym_contract_circ(r, H.sharp(H.unit(alpha)))
    e_part = wedge_circ_unit(n, s, i) if ds > 0 else prim_contract(n, s, E.sharp(E.unit(i)))
    return _fiber_op(n, h_part, e_part, r, s, r + dr, s + ds).scale(SQRT2)


def build_mu(kind: str, X: ExactMatrix, n: int, r: int, s: int) -> ExactMatrix:
    """μ^kind(X) on Sym^r H ⊗ Λ^s_∘ E for X in H ⊗ E (complex linear in X)."""
    dr, ds = SHIFT[kind]
    out = ExactMatrix.zeros(fiber_dim(n, r + dr, s + ds), fiber_dim(n, r, s),
                            fiber_label(n, r + dr, s + ds), fiber_label(n, r, s))
    d = 2 * n
    for a in range(2):
        for i in range(d):
            c = X[a * d + i, 0]
            if c:
                out = out + mu_unit(kind, n, r, s, a, i).scale(c)
    return out


def mu_total(kind: str, n: int, r: int, s: int) -> ExactMatrix:
    """The contraction TM ⊗ S(r,s) -> S(r',s'), X ⊗ ψ -> μ(X) ψ."""
    d = 2 * n
    blocks = [mu_unit(kind, n, r, s, a, i).relabel("x", "y") for a in range(2) for i in range(d)]
    dr, ds = SHIFT[kind]
    return block_matrix([blocks], row_dims=[fiber_dim(n, r + dr, s + ds)],
                        col_dims=[fiber_dim(n, r, s)] * (2 * d),
                        dom=f"{tangent_label(n)}⊗{fiber_label(n, r, s)}",
                        cod=fiber_label(n, r + dr, s + ds))


# ---------------------------------------------------------------------------
# tangent vectors, metric and frame

def tangent_vector(n: int, coeffs) -> ExactMatrix:
    return ExactMatrix.column(list(coeffs), cod=tangent_label(n))


def tangent_unit(n: int, alpha: int, i: int) -> ExactMatrix:
    col = _int_array((4 * n, 1))
    col[alpha * 2 * n + i, 0] = 1
    return ExactMatrix({0: col}, 1, (4 * n, 1), "F^1", tangent_label(n))


def simple_tangent(n: int, h: ExactMatrix, e: ExactMatrix) -> ExactMatrix:
    return kron(h, e).relabel(cod=tangent_label(n))


@lru_cache(maxsize=None)
def metric(n: int) -> ExactMatrix:
    """g^C = sigma_H ⊗ sigma_E as a symmetric bilinear form on H ⊗ E."""
    E, H = build_E(n), build_H()
    return kron(H.sigma, E.sigma).relabel(tangent_label(n), tangent_label(n))


def g(n: int, X: ExactMatrix, Y: ExactMatrix) -> Scalar:
    return (X.T.relabel(dom=tangent_label(n), cod="F^1") @ metric(n) @ Y)[0, 0]


@lru_cache(maxsize=None)
def real_structure(n: int) -> ExactMatrix:
    E, H = build_E(n), build_H()
    return kron(H.Jmat, E.Jmat).relabel(tangent_label(n), tangent_label(n))


def conj_tangent(n: int, X: ExactMatrix) -> ExactMatrix:
    """The conjugate X-bar = (J ⊗ J) X."""
    return real_structure(n) @ X.conj()


@dataclass(frozen=True)
class TangentFrame:
    n: int
    vectors: tuple
    sign: int
    completeness: tuple = field(repr=False, default=())

    def __len__(self):
        return len(self.vectors)


@lru_cache(maxsize=None)
def completeness_pairs(n: int) -> tuple:
    """sum_{alpha,i} (h_alpha ⊗ e_i) ⊗ (dh_alpha^b ⊗ de_i^b) as ((alpha,i), (beta,j), coeff)."""
    E, H = build_E(n), build_H()
    out = []
    for a in range(2):
        hb = H.flat(H.dual_unit(a))
        for i in range(2 * n):
            eb = E.flat(E.dual_unit(i))
            for b in range(2):
                for j in range(2 * n):
                    c = hb[b, 0] * eb[j, 0]
                    if c:
                        out.append(((a, i), (b, j), c))
    return tuple(out)


def _explicit_frame(n: int) -> tuple:
    """X = (u + Ju)/sqrt2 and X' = i(u - Ju)/sqrt2 for u = h_1 ⊗ e_i."""
    E, H = build_E(n), build_H()
    half_root = SQRT2 * F(1, 2)
    vecs = []
    for i in range(2 * n):
        u = simple_tangent(n, H.unit(0), E.unit(i))
        Ju = conj_tangent(n, u)
        vecs.append((u + Ju).scale(half_root))
        vecs.append((u - Ju).scale(I * half_root))
    return tuple(vecs)


def frame_tensor(vectors) -> ExactMatrix:
    acc = None
    for X in vectors:
        t = X @ X.T.relabel(dom=X.cod, cod="F^1")
        acc = t if acc is None else acc + t
    return acc


def completeness_tensor(n: int, sign: int = 1) -> ExactMatrix:
    rows = [[0] * (4 * n) for _ in range(4 * n)]
    for (a, i), (b, j), c in completeness_pairs(n):
        rows[a * 2 * n + i][b * 2 * n + j] = c * sign
    return ExactMatrix.from_rows(rows, dom=tangent_label(n), cod=tangent_label(n))


def frame_sum(n: int, A: str, B: str, r: int, s: int, sign: int = 1) -> ExactMatrix:
    """sum_a μ^A(X_a) μ^B(X_a) on the fibre (r, s), via the completeness tensor."""
    drB, dsB = SHIFT[B]
    drA, dsA = SHIFT[A]
    mid = (r + drB, s + dsB)
    tgt = (mid[0] + drA, mid[1] + dsA)
    out = ExactMatrix.zeros(fiber_dim(n, *tgt), fiber_dim(n, r, s), fiber_label(n, *tgt), fiber_label(n, r, s))
    if not _admissible(n, *mid):
        return out
    for (a, i), (b, j), c in completeness_pairs(n):
        out = out + (mu_unit(A, n, mid[0], mid[1], a, i) @ mu_unit(B, n, r, s, b, j)).scale(c * sign)
    return out


def frame_sum_explicit(n: int, A: str, B: str, r: int, s: int, vectors) -> ExactMatrix:
    """The same sum evaluated on an explicit list of frame vectors."""
    drB, dsB = SHIFT[B]
    mid = (r + drB, s + dsB)
    acc = None
    for X in vectors:
        t = build_mu(A, X, n, *mid) @ build_mu(B, X, n, r, s)
        acc = t if acc is None else acc + t
    return acc


def summe_constants(n: int, r: int, s: int) -> dict:
    """The four scalars of the number-operator sums."""
    q = F((2 * n - s + 2) * (n - s), n - s + 1)
    hr = F(r + 2, r + 1)
    return {("++", "--"): F(2 * s), ("+-", "-+"): -2 * q,
            ("-+", "+-"): -2 * s * hr, ("--", "++"): 2 * q * hr}


def _calibrate(n: int) -> int:
    """Pick the sign of the completeness tensor so that sum μ^+_+ μ^-_- = 2s."""
    r, s = 1, 1
    for sign in (1, -1):
        lhs = frame_sum(n, "++", "--", r, s, sign)
        if lhs.is_scalar_multiple_of_identity() == Scalar(2 * s):
            return sign
    raise ArithmeticError("no sign of the completeness tensor calibrates the frame")


@lru_cache(maxsize=None)
def build_frame(n: int) -> TangentFrame:
    """A real orthonormal frame of H ⊗ E calibrated against the number-operator sums."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sign = _calibrate(n)
    vecs = _explicit_frame(n)
    T = frame_tensor(vecs)
    if T != completeness_tensor(n, sign):
        raise ArithmeticError("explicit frame does not reproduce the calibrated completeness tensor")
    return TangentFrame(n, vecs, sign, completeness_pairs(n))


def check_frame(n: int) -> CheckResult:
    fr = build_frame(n)
    res = CheckResult(f"frame(n={n})", True)
    R = real_structure(n)
    for a, X in enumerate(fr.vectors):
        res.record(f"(J⊗J) X_{a} = X_{a}", R @ X.conj(), X)
        for b, Y in enumerate(fr.vectors):
            val = g(n, X, Y)
            if val != (1 if a == b else 0):
                res.ok = False
                res.failures.append({"identity": "g(X_a, X_b) = δ_ab", "a": a, "b": b, "value": str(val)})
    res.details["sign"] = fr.sign
    res.details["size"] = len(fr)
    return res


# ---------------------------------------------------------------------------
# checks

def check_summe(n: int, r: int, s: int, explicit: bool = False) -> CheckResult:
    """The four number-operator sums and the vanishing of the mixed ones.

    At r = 0 the two sums that start with h^# contr_∘ vanish because that
    operator kills Sym^0 H; they are compared with 0 there.
    """
    if not _admissible(n, r, s):
        raise ValueError(f"inadmissible fibre (r={r}, s={s}) for n={n}")
    fr = build_frame(n)
    res = CheckResult(f"summe(n={n},r={r},s={s})", True)
    consts = summe_constants(n, r, s)
    Id = ExactMatrix.identity(fiber_dim(n, r, s), fiber_label(n, r, s))
    for A, B in product(KINDS, KINDS):
        lhs = frame_sum(n, A, B, r, s, fr.sign)
        if explicit and _admissible(n, r + SHIFT[B][0], s + SHIFT[B][1]):
            alt = frame_sum_explicit(n, A, B, r, s, fr.vectors)
            if alt is not None:
                res.record(f"frame independence μ^{A} μ^{B}", alt, lhs)
        if (A, B) in consts:
            c = consts[(A, B)]
            if r == 0 and B in ("--", "-+"):
                res.details[f"{A}{B}"] = "0 (degenerate at r=0)"
                c = 0
            else:
                res.details[f"{A}{B}"] = str(c)
            res.record(f"sum μ^{A} μ^{B} = {c}", lhs, Id.scale(c))
        else:
            res.record(f"sum μ^{A} μ^{B} = 0", lhs, lhs.scale(0))
    return res


IOTA_SPEC = {
    # kind: (mu used inside, mu it inverts, source fibre, coefficient)
    "-+": ("-+", "+-", lambda n, r: (r + 1, n - r - 1), lambda n, r: F(-(r + 2), 2 * (n + r + 3) * (r + 1))),
    "+-": ("+-", "-+", lambda n, r: (r - 1, n - r + 1), lambda n, r: F(-r, 2 * (n - r + 1) * (r + 1))),
    "--": ("--", "++", lambda n, r: (r + 1, n - r + 1), lambda n, r: F(1, 2 * (n - r + 1))),
    "++": ("++", "--", lambda n, r: (r - 1, n - r - 1), lambda n, r: F(r * (r + 2), 2 * (n + r + 3) * (r + 1) ** 2)),
}


def iota_range(kind: str, n: int) -> list[int]:
    rs = []
    for r in range(0, n + 1):
        src = IOTA_SPEC[kind][2](n, r)
        if _admissible(n, *src) and _admissible(n, r, n - r):
            rs.append(r)
    return rs


def build_iota(kind: str, n: int, r: int, coeff=None, sign: int | None = None) -> ExactMatrix:
    """ι^kind : source -> TM ⊗ S_r, φ -> c sum_a X_a ⊗ μ(X_a) φ."""
    inner, _, src_of, coeff_of = IOTA_SPEC[kind]
    src = src_of(n, r)
    c = coeff_of(n, r) if coeff is None else coeff
    sign = build_frame(n).sign if sign is None else sign
    d = 2 * n
    tgt = (r, n - r)
    blocks = []
    for a in range(2):
        for i in range(d):
            blk = ExactMatrix.zeros(fiber_dim(n, *tgt), fiber_dim(n, *src), "y", "x")
            for (a1, i1), (b, j), cc in completeness_pairs(n):
                if (a1, i1) == (a, i):
                    blk = blk + mu_unit(inner, n, src[0], src[1], b, j).relabel("x", "y").scale(cc * sign)
            blocks.append([blk])
    out = block_matrix(blocks, row_dims=[fiber_dim(n, *tgt)] * (2 * d), col_dims=[fiber_dim(n, *src)],
                       dom=fiber_label(n, *src), cod=f"{tangent_label(n)}⊗{fiber_label(n, *tgt)}")
    return out.scale(c)


def check_iota(kind: str, n: int, r: int) -> CheckResult:
    _, outer, src_of, _ = IOTA_SPEC[kind]
    res = CheckResult(f"iota^{kind}(n={n},r={r})", True)
    src = src_of(n, r)
    if not (_admissible(n, *src) and _admissible(n, r, n - r)):
        res.skip(f"μ^{outer} ∘ ι^{kind} = id", f"source fibre {src} is zero")
        return res
    iota = build_iota(kind, n, r)
    M = mu_total(outer, n, r, n - r)
    res.record(f"μ^{outer} ∘ ι^{kind} = id", M @ iota,
               ExactMatrix.identity(fiber_dim(n, *src), fiber_label(n, *src)))
    return res


# ---------------------------------------------------------------------------
# hermitian products, Clifford relation and adjointness

@lru_cache(maxsize=None)
def fiber_gram(n: int, r: int, s: int) -> ExactMatrix:
    """Gram matrix of the induced hermitian product on Sym^r H ⊗ Λ^s_∘ E."""
    B = prim_embedding(n, s)
    Gp = B.adjoint().relabel(cod=prim_label(n, s)) @ B
    return kron(sym_gram(r), Gp).relabel(fiber_label(n, r, s), fiber_label(n, r, s))


def hermitian(n: int, r: int, s: int, x: ExactMatrix, y: ExactMatrix) -> Scalar:
    """(x, y), linear in x."""
    return (y.adjoint().relabel(dom=fiber_label(n, r, s)) @ fiber_gram(n, r, s) @ x)[0, 0]


def spinor_mu(n: int, X: ExactMatrix) -> ExactMatrix:
    """Full Clifford multiplication μ(X) = μ^+_- + μ^-_+ on ⊕_r S_r."""
    dims = [fiber_dim(n, r, n - r) for r in range(n + 1)]
    blocks = [[None] * (n + 1) for _ in range(n + 1)]
    for r in range(n + 1):
        s = n - r
        if r + 1 <= n:
            blocks[r + 1][r] = build_mu("+-", X, n, r, s).relabel("x", "y")
        if r - 1 >= 0:
            blocks[r - 1][r] = build_mu("-+", X, n, r, s).relabel("x", "y")
    for r in range(n + 1):
        if blocks[r][r] is None:
            blocks[r][r] = ExactMatrix.zeros(dims[r], dims[r], "y", "x")
    return block_matrix(blocks, row_dims=dims, col_dims=dims, dom=f"S(n={n})", cod=f"S(n={n})")


def check_clifford_relation(n: int, vectors=None) -> CheckResult:
    fr = build_frame(n)
    vectors = fr.vectors if vectors is None else vectors
    res = CheckResult(f"clifford relation(n={n})", True)
    mus = [spinor_mu(n, X) for X in vectors]
    Id = ExactMatrix.identity(mus[0].rows, f"S(n={n})")
    for a, X in enumerate(vectors):
        for b in range(a, len(vectors)):
            lhs = mus[a] @ mus[b] + mus[b] @ mus[a]
            res.record(f"μ(X_{a})μ(X_{b}) + μ(X_{b})μ(X_{a}) = -2g", lhs, Id.scale(-2 * g(n, X, vectors[b])))
    return res


def check_adjointness(n: int, r: int, s: int, vectors=None) -> CheckResult:
    """(μ^-_+(X)ψ, φ) = -(ψ, μ^+_-(X̄)φ) and (μ^+_+(X)ψ, φ) = (ψ, μ^-_-(X̄)φ)."""
    res = CheckResult(f"adjointness(n={n},r={r},s={s})", True)
    if vectors is None:
        vectors = [tangent_unit(n, a, i) for a in range(2) for i in range(2 * n)]
    for X in vectors:
        Xb = conj_tangent(n, X)
        if r >= 1 and s + 1 <= n:
            lhs = fiber_gram(n, r - 1, s + 1) @ build_mu("-+", X, n, r, s)
            rhs = build_mu("+-", Xb, n, r - 1, s + 1).adjoint() @ fiber_gram(n, r, s)
            res.record("G μ^-_+(X) = -μ^+_-(X̄)^† G", lhs, rhs.scale(-1))
        if s + 1 <= n:
            lhs = fiber_gram(n, r + 1, s + 1) @ build_mu("++", X, n, r, s)
            rhs = build_mu("--", Xb, n, r + 1, s + 1).adjoint() @ fiber_gram(n, r, s)
            res.record("G μ^+_+(X) = μ^-_-(X̄)^† G", lhs, rhs)
    return res


# ---------------------------------------------------------------------------
# curvature actions on fibres and the wedge identities

def RE_fiber(n: int, r: int, s: int, X: tuple, Y: tuple) -> ExactMatrix:
    """R^E_{X,Y} for X = h_a ⊗ e_i, Y = h_b ⊗ e_j given as index pairs."""
    E, H = build_E(n), build_H()
    (a, i), (b, j) = X, Y
    c = H.form(H.unit(a), H.unit(b))
    A = sym2_action_E(n, E.unit(i), E.unit(j))
    Is = ExactMatrix.identity(dim_sym(r), sym_label(r))
    return _fiber_op(n, Is, derivation_on_prim(n, s, A), r, s, r, s).scale(c)


def RH_fiber(n: int, r: int, s: int, X: tuple, Y: tuple) -> ExactMatrix:
    E, H = build_E(n), build_H()
    (a, i), (b, j) = X, Y
    c = E.form(E.unit(i), E.unit(j))
    A = sym2_action_H(H.unit(a), H.unit(b))
    Ip = ExactMatrix.identity(dim_prim(n, s), prim_label(n, s))
    return _fiber_op(n, derivation_on_sym(r, A), Ip, r, s, r, s).scale(c)


def wedge_pair(n: int, A: str, B: str, r: int, s: int, X: tuple, Y: tuple) -> ExactMatrix:
    """(μ^A ∧ μ^B)_{X,Y} = μ^A_X μ^B_Y - μ^A_Y μ^B_X on the fibre (r, s)."""
    dr, ds = SHIFT[B]
    m = (r + dr, s + ds)
    return mu_unit(A, n, *m, *X) @ mu_unit(B, n, r, s, *Y) - mu_unit(A, n, *m, *Y) @ mu_unit(B, n, r, s, *X)


def check_wedge_identities(n: int) -> CheckResult:
    if n < 2:
        raise ValueError("wedge identities need n >= 2")
    res = CheckResult(f"wedge identities(n={n})", True)
    idx = [(a, i) for a in range(2) for i in range(2 * n)]
    for X in idx:
        for Y in idx:
            w = wedge_pair(n, "--", "+-", 0, n, X, Y)
            res.record(f"(μ^-_-∧μ^+_-)_{X,Y} = 0", w, w.scale(0))
            w = wedge_pair(n, "-+", "++", 0, n - 2, X, Y)
            res.record(f"(μ^-_+∧μ^+_+)_{X,Y} = 0", w, w.scale(0))
            res.record(f"(μ^-_+∧μ^+_-)_{X,Y} = 2R^E", wedge_pair(n, "-+", "+-", 0, n, X, Y),
                       RE_fiber(n, 0, n, X, Y).scale(2))
            res.record(f"(μ^-_-∧μ^+_+)_{X,Y} = -4/3 R^E", wedge_pair(n, "--", "++", 0, n - 2, X, Y),
                       RE_fiber(n, 0, n - 2, X, Y).scale(F(-4, 3)))
            lhs = wedge_pair(n, "+-", "-+", 1, n - 1, X, Y) - \
                wedge_pair(n, "++", "--", 1, n - 1, X, Y).scale(F(3, 2))
            rhs = (RH_fiber(n, 1, n - 1, X, Y) + RE_fiber(n, 1, n - 1, X, Y)).scale(2)
            res.record(f"(μ^+_-∧μ^-_+ - 3/2 μ^+_+∧μ^-_-)_{X,Y} = 2(R^H+R^E)", lhs, rhs)
    return res


# ---------------------------------------------------------------------------
# dimension bookkeeping

def check_dimensions(n: int) -> CheckResult:
    """Spinor ranks add up to 2^{2n}; primitive dimensions match kernel ranks of Λ."""
    res = CheckResult(f"dimensions(n={n})", True)
    ranks = [spinor_rank(n, r) for r in range(n + 1)]
    res.details["ranks"] = ranks
    res.details["sum"] = sum(ranks)
    if sum(ranks) != 4 ** n:
        res.ok = False
        res.failures.append({"identity": "sum rank S_r = 2^(2n)", "lhs": sum(ranks), "rhs": 4 ** n})
    for r in range(n + 1):
        if fiber_dim(n, r, n - r) != ranks[r]:
            res.ok = False
            res.failures.append({"identity": f"dim Sym^{r}H⊗Λ^{n - r}_∘E = rank S_{r}",
                                 "lhs": fiber_dim(n, r, n - r), "rhs": ranks[r]})
    for s in range(n + 1):
        formula = comb(2 * n, s) - (comb(2 * n, s - 2) if s >= 2 else 0)
        kern = prim_embedding(n, s).cols
        if not formula == kern == dim_prim(n, s):
            res.ok = False
            res.failures.append({"identity": f"dim Λ^{s}_∘ = C(2n,s) - C(2n,s-2)",
                                 "formula": formula, "kernel": kern})
    return res
