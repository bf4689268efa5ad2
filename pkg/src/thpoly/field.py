"""Prime fields with canonical residues and vectorized exact arithmetic.

Residues are plain integers in [0, p).  Bulk data lives in numpy arrays:
int64 when p < 2**31 (so a product of two residues fits 62 bits), dtype
object with Python ints otherwise.  Convolutions go through an iterative
radix-2 NTT when the modulus supports one and through Kronecker
substitution (binary segmentation into one big-integer product) otherwise;
both paths are exact and return identical residues.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .counting import MultCounter, pow_cost
from .errors import DivisionByZeroError, NotPrimeError, TooLargeError

MAX_MODULUS = 1 << 62

# Residue products must stay below 2**62 for the int64 fast paths.
_INT64_LIMIT = 1 << 31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit input."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = _v2(d)
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def derive_seed(*parts) -> int:
    """Stable 64-bit sub-seed from a tuple of ints/strings/arrays."""
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        if isinstance(part, bytes):
            h.update(part)
        elif isinstance(part, str):
            h.update(part.encode())
        elif isinstance(part, (int, np.integer)):
            h.update(int(part).to_bytes(16, "little", signed=True))
        elif isinstance(part, np.ndarray):
            h.update(str(part.shape).encode())
            if part.dtype == object:
                h.update(repr(part.tolist()).encode())
            else:
                h.update(np.ascontiguousarray(part).tobytes())
        else:
            raise TypeError(f"cannot hash {type(part)!r} into a seed")
    return int.from_bytes(h.digest(), "little")


class PrimeField:
    """Arithmetic context modulo a word-sized prime.

    Immutable after construction apart from an internal cache of NTT
    tables (write-once, derived data only, so concurrent use is safe).
    """

    __slots__ = ("p", "two_adicity", "ntt_capable", "ntt_root", "dtype",
                 "_inv_cost", "_ntt_tables")

    def __init__(self, p: int):
        p = int(p)
        if p <= 2 or p >= MAX_MODULUS:
            raise TooLargeError(f"modulus {p} outside the supported range (2, 2**62)")
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        self.p = p
        self.two_adicity = _v2(p - 1)
        self.ntt_capable = self.two_adicity >= 20
        self.ntt_root = self._find_root() if self.ntt_capable else None
        self.dtype = np.int64 if p < _INT64_LIMIT else object
        self._inv_cost = pow_cost(p - 2)
        self._ntt_tables = {}

    def _find_root(self) -> int:
        # w = g**((p-1)/2**t) has order exactly 2**t iff w**(2**(t-1)) == -1,
        # i.e. iff g is a quadratic nonresidue; one exists below any prime.
        t = self.two_adicity
        for g in range(2, 1 << 20):
            w = pow(g, (self.p - 1) >> t, self.p)
            if pow(w, 1 << (t - 1), self.p) == self.p - 1:
                return w
        raise AssertionError("no quadratic nonresidue found; modulus not prime?")

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    # -- scalar arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int, counter: MultCounter | None = None) -> int:
        if counter is not None:
            counter.add(1)
        return a * b % self.p

    def inv(self, a: int, counter: MultCounter | None = None) -> int:
        if a % self.p == 0:
            raise DivisionByZeroError("inverse of zero")
        if counter is not None:
            counter.add(self._inv_cost)
        return pow(a, self.p - 2, self.p)

    def pow(self, a: int, e: int, counter: MultCounter | None = None) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        if counter is not None:
            counter.add(pow_cost(e))
        return pow(a, e, self.p)

    def batch_inv(self, values, counter: MultCounter | None = None) -> list[int]:
        """Elementwise inverses: one inversion plus 3(len-1) products."""
        vals = [int(v) % self.p for v in values]
        for i, v in enumerate(vals):
            if v == 0:
                raise DivisionByZeroError(f"zero entry at index {i}")
        n = len(vals)
        if n == 0:
            return []
        if counter is not None:
            counter.add(self._inv_cost + 3 * (n - 1))
        prefix = vals[:]
        for i in range(1, n):
            prefix[i] = prefix[i - 1] * vals[i] % self.p
        acc = pow(prefix[-1], self.p - 2, self.p)
        out = [0] * n
        for i in range(n - 1, 0, -1):
            out[i] = acc * prefix[i - 1] % self.p
            acc = acc * vals[i] % self.p
        out[0] = acc
        return out

    # -- array plumbing ---------------------------------------------------

    def asvec(self, data) -> np.ndarray:
        if self.dtype is object:
            return np.array([int(x) % self.p for x in data], dtype=object)
        a = np.asarray(data, dtype=np.int64)
        return np.mod(a, self.p)

    def asmat(self, data) -> np.ndarray:
        if self.dtype is object:
            return np.array([[int(x) % self.p for x in row] for row in data],
                            dtype=object)
        a = np.asarray(data, dtype=np.int64)
        return np.mod(a, self.p)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def unit_vector(self, n: int, i: int) -> np.ndarray:
        e = self.zeros(n)
        e[i] = 1
        return e

    def rng(self, seed: int) -> np.random.Generator:
        return np.random.default_rng(seed)

    def rand_vec(self, rng: np.random.Generator, n: int) -> np.ndarray:
        v = rng.integers(0, self.p, size=n, dtype=np.int64)
        return v if self.dtype is np.int64 else v.astype(object)

    def rand_mat(self, rng: np.random.Generator, shape) -> np.ndarray:
        m = rng.integers(0, self.p, size=shape, dtype=np.int64)
        return m if self.dtype is np.int64 else m.astype(object)

    # -- vectorized arithmetic ---------------------------------------------

    def vmul(self, a, b, counter: MultCounter | None = None) -> np.ndarray:
        out = a * b % self.p
        if counter is not None:
            counter.add(out.size)
        return out

    def submul(self, y, f, x, counter: MultCounter | None = None) -> np.ndarray:
        """y - f*x elementwise (one product per entry of x)."""
        if counter is not None:
            counter.add(np.size(x))
        return (y - f * x) % self.p

    def dot(self, a, b, counter: MultCounter | None = None) -> int:
        if counter is not None:
            counter.add(len(a))
        if len(a) == 0:
            return 0
        # reduce each product before summing so int64 sums cannot overflow
        return int(((a * b) % self.p).sum() % self.p)

    def matmul(self, A, B, counter: MultCounter | None = None) -> np.ndarray:
        """Exact (a x k)(k x b) product."""
        k = A.shape[1]
        if counter is not None:
            counter.add(A.shape[0] * k * B.shape[1])
        if k == 0:
            return self.zeros((A.shape[0], B.shape[1]))
        p = self.p
        if self.dtype is object:
            return A.dot(B) % p
        if k * (p - 1) * (p - 1) < (1 << 63):
            return A @ B % p
        # split one operand in 16-bit halves: sums stay below 2**63
        hi = B >> 16
        lo = B & 0xFFFF
        return (((A @ hi % p) << 16) + (A @ lo % p)) % p

    def matvec_dense(self, A, v, counter: MultCounter | None = None) -> np.ndarray:
        return self.matmul(A, v.reshape(-1, 1), counter).reshape(-1)

    # -- convolution --------------------------------------------------------

    def _ntt_ok(self, out_len: int) -> bool:
        if not self.ntt_capable or self.p >= _INT64_LIMIT:
            return False
        size = 1 << max(0, out_len - 1).bit_length()
        return size <= (1 << self.two_adicity)

    def conv_charge(self, la: int, lb: int) -> int:
        """Canonical multiplication count of one convolution (both paths)."""
        if la == 0 or lb == 0:
            return 0
        out_len = la + lb - 1
        if self._ntt_ok(out_len):
            size = 1 << max(0, out_len - 1).bit_length()
            lg = size.bit_length() - 1
            return 3 * (size // 2) * lg + 2 * size
        return la * lb

    def conv(self, a, b, counter: MultCounter | None = None,
             method: str = "auto") -> np.ndarray:
        """Full product of coefficient vectors, length len(a)+len(b)-1."""
        la, lb = len(a), len(b)
        if la == 0 or lb == 0:
            return self.zeros(0)
        out_len = la + lb - 1
        if method == "auto":
            method = "ntt" if self._ntt_ok(out_len) else "basic"
        if method == "ntt":
            if not self._ntt_ok(out_len):
                raise ValueError("NTT path unavailable for this modulus/size")
            return self._conv_ntt(a, b, out_len, counter)
        if method != "basic":
            raise ValueError(f"unknown convolution method {method!r}")
        if counter is not None:
            counter.add(la * lb)
        if self.dtype is not object and min(la, lb) * (self.p - 1) ** 2 < (1 << 63):
            return np.convolve(a, b) % self.p
        return self._conv_kronecker(a, b, out_len)

    def _conv_ntt(self, a, b, out_len, counter) -> np.ndarray:
        size = 1 << max(0, out_len - 1).bit_length()
        if counter is not None:
            lg = size.bit_length() - 1
            counter.add(3 * (size // 2) * lg + 2 * size)
        fa = self._ntt(self._pad(a, size), inverse=False)
        fb = self._ntt(self._pad(b, size), inverse=False)
        prod = fa * fb % self.p
        return self._ntt(prod, inverse=True)[:out_len]

    def _conv_kronecker(self, a, b, out_len) -> np.ndarray:
        # pack each polynomial into one integer at a digit width large
        # enough that product coefficients never carry across digits
        bound = min(len(a), len(b)) * (self.p - 1) ** 2
        w = (bound.bit_length() + 7) // 8
        ia = int.from_bytes(b"".join(int(x).to_bytes(w, "little") for x in a), "little")
        ib = int.from_bytes(b"".join(int(x).to_bytes(w, "little") for x in b), "little")
        raw = (ia * ib).to_bytes(w * (len(a) + len(b)), "little")
        coeffs = [int.from_bytes(raw[i * w:(i + 1) * w], "little") % self.p
                  for i in range(out_len)]
        return self.asvec(coeffs)

    def _pad(self, a, size) -> np.ndarray:
        out = np.zeros(size, dtype=np.int64)
        out[:len(a)] = a
        return out

    # -- number-theoretic transform -----------------------------------------

    def _tables_for(self, size: int):
        cached = self._ntt_tables.get(size)
        if cached is not None:
            return cached
        p = self.p
        lg = size.bit_length() - 1
        root = pow(self.ntt_root, 1 << (self.two_adicity - lg), p)
        rev = np.zeros(size, dtype=np.int64)
        for i in range(1, size):
            rev[i] = (rev[i >> 1] >> 1) | ((i & 1) << (lg - 1))
        fwd, bwd = [], []
        for stage in range(1, lg + 1):
            half = 1 << (stage - 1)
            w = pow(root, size >> stage, p)
            tw = [1] * half
            for j in range(1, half):
                tw[j] = tw[j - 1] * w % p
            winv = pow(w, p - 2, p)
            ti = [1] * half
            for j in range(1, half):
                ti[j] = ti[j - 1] * winv % p
            fwd.append(np.asarray(tw, dtype=np.int64))
            bwd.append(np.asarray(ti, dtype=np.int64))
        n_inv = pow(size, p - 2, p)
        tables = (rev, fwd, bwd, n_inv)
        self._ntt_tables[size] = tables
        return tables

    def _ntt(self, a: np.ndarray, inverse: bool) -> np.ndarray:
        return self.ntt_many(a.reshape(1, -1), inverse)[0]

    def ntt_many(self, a: np.ndarray, inverse: bool) -> np.ndarray:
        """Transform each row of a (batch, size) int64 array in one pass."""
        batch, size = a.shape
        if size == 1:
            return a.copy()
        rev, fwd, bwd, n_inv = self._tables_for(size)
        p = self.p
        x = a[:, rev]
        stages = bwd if inverse else fwd
        for tw in stages:
            half = len(tw)
            x = x.reshape(batch, -1, 2 * half)
            lo = x[:, :, :half]
            hi = x[:, :, half:] * tw % p
            x = np.concatenate(((lo + hi) % p, (lo - hi) % p), axis=2)
        x = x.reshape(batch, size)
        if inverse:
            x = x * n_inv % p
        return x
