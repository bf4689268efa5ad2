"""Compact displacement-generator representation of structured matrices.

A Toeplitz-like core C is stored as a generator pair (G, H) of width
alpha with

    C - Z C Z^T = G H^T,          Z = down-shift (ones on the subdiagonal).

The displacement map is a bijection, and the core is recovered as

    C = sum_j L(g_j) U(h_j)

with L(g) lower-triangular Toeplitz (first column g) and U(h)
upper-triangular Toeplitz (first row h).  Each core matvec therefore
costs two convolutions per generator column.  A general matrix is stored
as A = P + J Q with two cores and J the index reversal; Toeplitz matrices
have Q = 0, Hankel matrices have P = 0.
"""

from __future__ import annotations

import numpy as np

from .counting import MultCounter
from .errors import (BadLengthError, CompressionFailedError,
                     CornerMismatchError, DimensionMismatchError,
                     FieldMismatchError, LengthMismatchError, TooLargeError)
from .field import PrimeField, derive_seed
from .linalg import independent_rows, rank_factor, solve_square

RECONSTRUCT_GUARD = 4096

KIND_TOEPLITZ = "toeplitz-like"
KIND_HANKEL = "hankel-like"
KIND_TH = "toeplitz+hankel-like"


def _down(field: PrimeField, v: np.ndarray) -> np.ndarray:
    out = field.zeros(len(v))
    out[1:] = v[:-1]
    return out


def _down_block(field: PrimeField, V: np.ndarray) -> np.ndarray:
    out = field.zeros(V.shape)
    out[1:, :] = V[:-1, :]
    return out


def _up_block(field: PrimeField, V: np.ndarray) -> np.ndarray:
    out = field.zeros(V.shape)
    out[:-1, :] = V[1:, :]
    return out


class ToeplitzCore:
    """Matrix defined by generators of the down-shift Stein displacement."""

    __slots__ = ("field", "n", "G", "H")

    def __init__(self, field: PrimeField, n: int, G, H):
        if n < 1:
            raise DimensionMismatchError("dimension must be at least 1")
        G = np.asarray(G)
        H = np.asarray(H)
        if G.ndim != 2 or H.ndim != 2:
            raise DimensionMismatchError("generators must be n x alpha arrays")
        if G.shape[0] != n or H.shape[0] != n:
            raise DimensionMismatchError("generator columns must have length n")
        if G.shape[1] != H.shape[1]:
            raise DimensionMismatchError("G and H must have equal width")
        self.field = field
        self.n = n
        self.G = field.asmat(G) if G.size else field.zeros((n, G.shape[1]))
        self.H = field.asmat(H) if H.size else field.zeros((n, H.shape[1]))

    @classmethod
    def zero(cls, field: PrimeField, n: int) -> "ToeplitzCore":
        return cls(field, n, field.zeros((n, 0)), field.zeros((n, 0)))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "ToeplitzCore":
        e1 = field.unit_vector(n, 0)
        return cls(field, n, e1.reshape(n, 1), e1.reshape(n, 1))

    @property
    def width(self) -> int:
        return self.G.shape[1]

    def __repr__(self) -> str:
        return f"ToeplitzCore(n={self.n}, width={self.width}, p={self.field.p})"

    def matvec(self, v: np.ndarray, counter: MultCounter | None = None) -> np.ndarray:
        """C v via two triangular-Toeplitz products per generator column."""
        n = self.n
        if len(v) != n:
            raise LengthMismatchError(f"vector length {len(v)} != {n}")
        field = self.field
        out = field.zeros(n)
        for j in range(self.width):
            # U(h) v is a correlation: coefficient n-1-i of h(x) * rev(v)(x)
            c = field.conv(self.H[:, j], v[::-1], counter)
            u = c[n - 1::-1][:n]
            d = field.conv(self.G[:, j], u, counter)
            out = (out + d[:n]) % field.p
        return out

    def matvec_t(self, v: np.ndarray, counter: MultCounter | None = None) -> np.ndarray:
        """C^T v; the transpose core swaps the generator roles."""
        return self.swapped().matvec(v, counter)

    def matvec_block(self, V: np.ndarray,
                     counter: MultCounter | None = None) -> np.ndarray:
        """C V for an n x k block, charged as k independent matvecs.

        On the NTT path all transforms of one stage run as a single
        batched pass; the result is identical to the column loop.
        """
        field = self.field
        n = self.n
        if V.shape[0] != n:
            raise LengthMismatchError(f"block rows {V.shape[0]} != {n}")
        w = self.width
        k = V.shape[1]
        if w == 0 or k == 0:
            return field.zeros((n, k))
        if counter is not None:
            counter.add(w * k * 2 * field.conv_charge(n, n))
        if n == 1 or not field._ntt_ok(2 * n - 1):
            out = field.zeros((n, k))
            for c in range(k):
                out[:, c] = self.matvec(V[:, c], None)
            return out
        size = 1 << (2 * n - 2).bit_length()
        p = field.p
        vpad = np.zeros((k, size), dtype=np.int64)
        vpad[:, :n] = V[::-1, :].T
        fv = field.ntt_many(vpad, False)
        hpad = np.zeros((w, size), dtype=np.int64)
        hpad[:, :n] = self.H.T
        fh = field.ntt_many(hpad, False)
        mid = field.ntt_many((fh[:, None, :] * fv[None, :, :] % p)
                             .reshape(w * k, size), True)
        # U(h_j) v = correlation coefficients n-1 .. 0
        upad = np.zeros((w * k, size), dtype=np.int64)
        upad[:, :n] = mid[:, n - 1::-1]
        fu = field.ntt_many(upad, False).reshape(w, k, size)
        gpad = np.zeros((w, size), dtype=np.int64)
        gpad[:, :n] = self.G.T
        fg = field.ntt_many(gpad, False)
        acc = (fg[:, None, :] * fu % p).sum(axis=0) % p
        res = field.ntt_many(acc, True)[:, :n]
        return res.T.copy()

    def matvec_t_block(self, V: np.ndarray,
                       counter: MultCounter | None = None) -> np.ndarray:
        return self.swapped().matvec_block(V, counter)

    def swapped(self) -> "ToeplitzCore":
        """Transpose: displacement of C^T is (G H^T)^T = H G^T."""
        return ToeplitzCore(self.field, self.n, self.H, self.G)

    def compressed(self, counter: MultCounter | None = None) -> "ToeplitzCore":
        G, H = compress_pair(self.field, self.G, self.H, counter)
        return ToeplitzCore(self.field, self.n, G, H)

    def dense(self, counter: MultCounter | None = None) -> np.ndarray:
        """Materialize sum_j L(g_j) U(h_j); cost O(n^2 alpha)."""
        n = self.n
        if n > RECONSTRUCT_GUARD:
            raise TooLargeError(f"refusing to materialize n={n} > {RECONSTRUCT_GUARD}")
        field = self.field
        idx = np.subtract.outer(np.arange(n), np.arange(n))
        lower = idx >= 0
        upper = idx <= 0
        pos = np.clip(idx, 0, n - 1)
        neg = np.clip(-idx, 0, n - 1)
        acc = field.zeros((n, n))
        for j in range(self.width):
            L = np.where(lower, self.G[:, j][pos], 0)
            U = np.where(upper, self.H[:, j][neg], 0)
            acc = (acc + field.matmul(L, U, counter)) % field.p
        return acc


def compress_pair(field: PrimeField, G: np.ndarray, H: np.ndarray,
                  counter: MultCounter | None = None):
    """Equivalent generator pair of width exactly rank(G H^T).

    Rank-factor G, fold the coefficient matrix into H, then repeat on the
    new H; two echelon passes of cost O(n alpha^2).
    """
    if G.shape[1] == 0 or H.shape[1] == 0:
        n = G.shape[0]
        return field.zeros((n, 0)), field.zeros((n, 0))
    CG, RG = rank_factor(field, G, counter)          # G = CG @ RG
    H1 = field.matmul(H, RG.T, counter)              # G H^T = CG @ H1^T
    if CG.shape[1] == 0:
        n = G.shape[0]
        return field.zeros((n, 0)), field.zeros((n, 0))
    CH, RH = rank_factor(field, H1, counter)         # H1 = CH @ RH
    G2 = field.matmul(CG, RH.T, counter)
    return G2, CH


def core_multiply(A: ToeplitzCore, B: ToeplitzCore,
                  counter: MultCounter | None = None) -> ToeplitzCore:
    """Core of the product A B.

    Uses the product rule for the down-shift displacement:
        D(AB) = D(A) B + Z A Z^T D(B) - (Z A e_n)(e_n^T B Z^T),
    so the new generators are
        G = [G_A | Z A Z^T G_B | -Z A e_n],
        H = [B^T H_A | H_B | Z B^T e_n],
    compressed afterwards; the true width is at most a_A + a_B + 1.
    """
    if A.n != B.n:
        raise DimensionMismatchError("core dimensions differ")
    if A.field != B.field:
        raise FieldMismatchError("cores over different fields")
    field = A.field
    n = A.n
    if A.width == 0 or B.width == 0:
        return ToeplitzCore.zero(field, n)
    en = field.unit_vector(n, n - 1)
    mid = _down_block(field, A.matvec_block(_up_block(field, B.G), counter))
    last_g = (-_down(field, A.matvec(en, counter)) % field.p).reshape(n, 1)
    G = np.concatenate([A.G, mid, last_g], axis=1)
    bth = B.matvec_t_block(A.H, counter)
    last_h = _down(field, B.matvec_t(en, counter)).reshape(n, 1)
    H = np.concatenate([bth, B.H, last_h], axis=1)
    return ToeplitzCore(field, n, *compress_pair(field, G, H, counter))


def flip_conjugate(core: ToeplitzCore,
                   counter: MultCounter | None = None) -> ToeplitzCore:
    """Core of J C J, using D_down(J C J) = J D_up(C) J.

    A rank factorization of D_up(C) = C - Z^T C Z is recovered by applying
    it to width+4 random vectors, extracting a column basis, solving for
    the right factor on independent rows, and verifying the factorization
    on two fresh random vectors.  Sampling seeds derive from the generator
    content, so the result is a pure function of the core.
    """
    field = core.field
    n = core.n
    if core.width == 0:
        return ToeplitzCore.zero(field, n)

    def up_disp_apply_block(X):
        # (C - Z^T C Z) X
        Y = core.matvec_block(X, counter)
        Y2 = core.matvec_block(_down_block(field, X), counter)
        return (Y - _up_block(field, Y2)) % field.p

    for attempt in range(3):
        seed = derive_seed("flip_conjugate", attempt, core.n, core.G, core.H)
        rng = field.rng(seed)
        X = field.rand_mat(rng, (n, core.width + 4))
        Y = up_disp_apply_block(X)
        basis, _ = rank_factor(field, Y, counter)
        r = basis.shape[1]
        if r == 0:
            continue
        rows = independent_rows(field, basis, counter)
        E1 = field.zeros((n, r))
        E2 = field.zeros((n, r))
        for k, i in enumerate(rows):
            E1[i, k] = 1
            if i < n - 1:
                E2[i + 1, k] = 1
        M1 = core.matvec_t_block(E1, counter)
        M2 = core.matvec_t_block(E2, counter)
        D = ((M1 - _up_block(field, M2)) % field.p).T.copy()
        Wt = solve_square(field, basis[rows, :], D, counter)   # basis @ Wt = D_up(C)
        X2 = field.rand_mat(rng, (n, 2))
        lhs = field.matmul(basis, field.matmul(Wt, X2, counter), counter)
        ok = np.array_equal(lhs, up_disp_apply_block(X2))
        if ok:
            G = basis[::-1, :].copy()
            H = Wt.T[::-1, :].copy()
            return ToeplitzCore(field, n, *compress_pair(field, G, H, counter))
    raise CompressionFailedError("randomized displacement factorization failed 3 times")


def _core_concat(field: PrimeField, n: int, cores,
                 counter: MultCounter | None = None) -> ToeplitzCore:
    live = [c for c in cores if c.width > 0]
    if not live:
        return ToeplitzCore.zero(field, n)
    G = np.concatenate([c.G for c in live], axis=1)
    H = np.concatenate([c.H for c in live], axis=1)
    return ToeplitzCore(field, n, *compress_pair(field, G, H, counter))


class THMatrix:
    """Structured matrix A = P + J Q with Toeplitz-like cores P, Q."""

    __slots__ = ("field", "n", "P", "Q")

    def __init__(self, field: PrimeField, P: ToeplitzCore, Q: ToeplitzCore):
        if P.n != Q.n:
            raise DimensionMismatchError("core dimensions differ")
        if P.field != field or Q.field != field:
            raise FieldMismatchError("cores over a different field")
        self.field = field
        self.n = P.n
        self.P = P
        self.Q = Q

    @classmethod
    def zero(cls, field: PrimeField, n: int) -> "THMatrix":
        z = ToeplitzCore.zero(field, n)
        return cls(field, z, z)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "THMatrix":
        return cls(field, ToeplitzCore.identity(field, n),
                   ToeplitzCore.zero(field, n))

    @property
    def alpha(self) -> int:
        return self.P.width + self.Q.width

    @property
    def kind(self) -> str:
        if self.Q.width == 0:
            return KIND_TOEPLITZ
        if self.P.width == 0:
            return KIND_HANKEL
        return KIND_TH

    def __repr__(self) -> str:
        return (f"THMatrix(n={self.n}, alphaT={self.P.width}, "
                f"alphaH={self.Q.width}, p={self.field.p})")

    def _check(self, other: "THMatrix") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"dimensions {self.n} and {other.n} differ")
        if self.field != other.field:
            raise FieldMismatchError("matrices over different fields")

    # -- linear maps ----------------------------------------------------------

    def matvec(self, v, counter: MultCounter | None = None) -> np.ndarray:
        """A v = P v + reverse(Q v); cost O(alpha M(n))."""
        v = self.field.asvec(v)
        if len(v) != self.n:
            raise LengthMismatchError(f"vector length {len(v)} != {self.n}")
        out = self.P.matvec(v, counter)
        if self.Q.width:
            out = (out + self.Q.matvec(v, counter)[::-1]) % self.field.p
        return out

    def matvec_t(self, v, counter: MultCounter | None = None) -> np.ndarray:
        """A^T v = P^T v + Q^T (J v)."""
        v = self.field.asvec(v)
        if len(v) != self.n:
            raise LengthMismatchError(f"vector length {len(v)} != {self.n}")
        out = self.P.matvec_t(v, counter)
        if self.Q.width:
            out = (out + self.Q.matvec_t(v[::-1], counter)) % self.field.p
        return out

    def matvec_block(self, V: np.ndarray,
                     counter: MultCounter | None = None) -> np.ndarray:
        out = self.P.matvec_block(V, counter)
        if self.Q.width:
            out = (out + self.Q.matvec_block(V, counter)[::-1, :]) % self.field.p
        return out

    def matvec_t_block(self, V: np.ndarray,
                       counter: MultCounter | None = None) -> np.ndarray:
        out = self.P.matvec_t_block(V, counter)
        if self.Q.width:
            out = (out + self.Q.matvec_t_block(V[::-1, :].copy(), counter)) % self.field.p
        return out

    # -- algebra ---------------------------------------------------------------

    def add(self, other: "THMatrix", counter: MultCounter | None = None) -> "THMatrix":
        self._check(other)
        return THMatrix(self.field,
                        _core_concat(self.field, self.n, [self.P, other.P], counter),
                        _core_concat(self.field, self.n, [self.Q, other.Q], counter))

    def neg(self) -> "THMatrix":
        f = self.field
        m = f.p - 1
        return THMatrix(f,
                        ToeplitzCore(f, self.n, self.P.G, self.P.H * m % f.p),
                        ToeplitzCore(f, self.n, self.Q.G, self.Q.H * m % f.p))

    def multiply(self, other: "THMatrix",
                 counter: MultCounter | None = None) -> "THMatrix":
        """Product via (P_A + J Q_A)(P_B + J Q_B):

        P = P_A P_B + (J Q_A J) Q_B,   Q = Q_A P_B + (J P_A J) Q_B.
        """
        self._check(other)
        field = self.field
        n = self.n
        p_terms = []
        q_terms = []
        if self.P.width and other.P.width:
            p_terms.append(core_multiply(self.P, other.P, counter))
        if self.Q.width and other.Q.width:
            p_terms.append(core_multiply(flip_conjugate(self.Q, counter),
                                         other.Q, counter))
        if self.Q.width and other.P.width:
            q_terms.append(core_multiply(self.Q, other.P, counter))
        if self.P.width and other.Q.width:
            q_terms.append(core_multiply(flip_conjugate(self.P, counter),
                                         other.Q, counter))
        return THMatrix(field,
                        _core_concat(field, n, p_terms, counter),
                        _core_concat(field, n, q_terms, counter))

    def power(self, k: int, counter: MultCounter | None = None) -> "THMatrix":
        """A**k by square-and-multiply, compressing after every step."""
        if k < 1:
            raise ValueError("exponent must be positive")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result.multiply(base, counter)
            k >>= 1
            if k:
                base = base.multiply(base, counter)
        return result

    def transpose(self, counter: MultCounter | None = None) -> "THMatrix":
        """(P + J Q)^T = P^T + J (J Q^T J)."""
        Pt = self.P.swapped()
        if self.Q.width:
            Qt = flip_conjugate(self.Q.swapped(), counter)
        else:
            Qt = ToeplitzCore.zero(self.field, self.n)
        return THMatrix(self.field, Pt, Qt)

    def trace(self, counter: MultCounter | None = None) -> int:
        """Exact trace in O(alpha M(n)).

        tr L(g)U(h) = sum_d (n-d) g_d h_d; for the J part the diagonal of
        J L(g)U(h) picks the coefficients n-1-2i of g(x) h(x).
        """
        field = self.field
        n = self.n
        p = field.p
        total = 0
        if self.P.width:
            weights = field.asvec(np.arange(n, 0, -1))
            for j in range(self.P.width):
                gh = field.vmul(self.P.G[:, j], self.P.H[:, j], counter)
                total = (total + field.dot(weights, gh, counter)) % p
        for j in range(self.Q.width):
            c = field.conv(self.Q.G[:, j], self.Q.H[:, j], counter)
            picks = c[n - 1::-2]
            total = (total + int(np.sum(picks) % p)) % p
        return total

    def reconstruct(self, counter: MultCounter | None = None) -> np.ndarray:
        """Dense P + J Q; the O(n^2 alpha) testing backbone."""
        if self.n > RECONSTRUCT_GUARD:
            raise TooLargeError(f"refusing to materialize n={self.n}")
        dense = self.P.dense(counter)
        if self.Q.width:
            dense = (dense + self.Q.dense(counter)[::-1, :]) % self.field.p
        return dense

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.neg())

    def __mul__(self, other):
        return self.multiply(other)

    def __pow__(self, k):
        return self.power(k)

    def __neg__(self):
        return self.neg()


# -- constructors ---------------------------------------------------------------


def from_toeplitz(field: PrimeField, col, row) -> THMatrix:
    """Toeplitz matrix T[i,j] = col[i-j] (i>=j) / row[j-i] (j>i).

    D(T) is supported on the first row and column, giving generators
    G = [e_1 | col - col_0 e_1], H = [row | e_1], width <= 2.
    """
    field_col = field.asvec(col)
    field_row = field.asvec(row)
    n = len(field_col)
    if len(field_row) != n:
        raise DimensionMismatchError("column and row lengths differ")
    if n < 1:
        raise DimensionMismatchError("dimension must be at least 1")
    if field_col[0] != field_row[0]:
        raise CornerMismatchError("col[0] and row[0] disagree")
    e1 = field.unit_vector(n, 0)
    c2 = field_col.copy()
    c2[0] = 0
    G = np.stack([e1, c2], axis=1)
    H = np.stack([field_row, e1], axis=1)
    core = ToeplitzCore(field, n, G, H).compressed()
    return THMatrix(field, core, ToeplitzCore.zero(field, n))


def from_hankel(field: PrimeField, antidiag_values) -> THMatrix:
    """Hankel matrix H[i,j] = v[i+j] from its 2n-1 antidiagonal values.

    Stored as J T with T = J H Toeplitz, i.e. a Q-only matrix.
    """
    v = field.asvec(antidiag_values)
    if len(v) % 2 == 0 or len(v) < 1:
        raise BadLengthError(f"need 2n-1 antidiagonal values, got {len(v)}")
    n = (len(v) + 1) // 2
    col = v[:n][::-1]
    row = v[n - 1:]
    t = from_toeplitz(field, col, row)
    return THMatrix(field, ToeplitzCore.zero(field, n), t.P)


def random_structured(field: PrimeField, n: int, alpha_t: int, alpha_h: int,
                      seed: int) -> THMatrix:
    """Uniform random generators, drawn in the order G_P, H_P, G_Q, H_Q."""
    if n < 1:
        raise DimensionMismatchError("dimension must be at least 1")
    if alpha_t < 0 or alpha_h < 0:
        raise ValueError("generator widths must be nonnegative")
    rng = field.rng(seed)
    gp = field.rand_mat(rng, (n, alpha_t))
    hp = field.rand_mat(rng, (n, alpha_t))
    gq = field.rand_mat(rng, (n, alpha_h))
    hq = field.rand_mat(rng, (n, alpha_h))
    return THMatrix(field, ToeplitzCore(field, n, gp, hp),
                    ToeplitzCore(field, n, gq, hq))
