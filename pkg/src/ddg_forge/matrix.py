"""Dense exact-integer matrices.

``IntMatrix`` keeps its entries in a read-only numpy array.  Arithmetic stays
in int64 when an a-priori bound shows no intermediate can overflow and falls
back to Python integers (object dtype) otherwise, so results are always exact.
"""
from __future__ import annotations

from functools import cache
from math import comb, isqrt
from pathlib import Path

import numpy as np

from .errors import InputError
from .field import is_prime

_INT64_SAFE = 2**62
MAX_CHARPOLY_ORDER = 512
_CRT_PRIME_BITS = 25


class NotSquare(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class MatrixTooLarge(InputError):
    pass


class MatrixFormatError(InputError):
    pass


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(x)) for x in arr.flat)
    return int(np.abs(arr).max())


def _normalise(arr: np.ndarray) -> np.ndarray:
    """Store as int64 when every entry fits, object otherwise."""
    if arr.dtype == object:
        if _max_abs(arr) < _INT64_SAFE:
            arr = arr.astype(np.int64)
    elif arr.dtype != np.int64:
        if arr.dtype.kind not in "iub":
            raise InputError(f"non-integer dtype {arr.dtype}")
        arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


class IntMatrix:
    __slots__ = ("_a",)

    def __init__(self, data):
        if isinstance(data, IntMatrix):
            self._a = data._a
            return
        if isinstance(data, np.ndarray):
            arr = data.copy()
        else:
            rows = [list(r) for r in data]
            width = len(rows[0]) if rows else 0
            if any(len(r) != width for r in rows):
                raise InputError("ragged rows")
            for r in rows:
                for x in r:
                    if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
                        raise InputError(f"non-integer entry {x!r}")
            big = any(abs(int(x)) >= _INT64_SAFE for r in rows for x in r)
            arr = np.array(
                [[int(x) for x in r] for r in rows],
                dtype=object if big else np.int64,
            ).reshape(len(rows), width)
        if arr.ndim != 2:
            raise InputError("matrix must be two-dimensional")
        self._a = _normalise(arr)

    # -- construction -----------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def ones(cls, r: int, c: int | None = None) -> IntMatrix:
        return cls(np.ones((r, r if c is None else c), dtype=np.int64))

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> IntMatrix:
        return cls(np.zeros((r, r if c is None else c), dtype=np.int64))

    @classmethod
    def block(cls, blocks) -> IntMatrix:
        """Assemble from a nested list of IntMatrix blocks."""
        arrs = [[IntMatrix(b)._a for b in row] for row in blocks]
        obj = any(a.dtype == object for row in arrs for a in row)
        if obj:
            arrs = [[a.astype(object) for a in row] for row in arrs]
        try:
            return cls(np.block(arrs))
        except ValueError as exc:
            raise DimensionMismatch(str(exc)) from None

    # -- views --------------------------------------------------------------------
    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def __getitem__(self, idx):
        out = self._a[idx]
        if isinstance(out, np.ndarray):
            return IntMatrix(out) if out.ndim == 2 else [int(x) for x in out]
        return int(out)

    def max_abs(self) -> int:
        return _max_abs(self._a)

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._a == other._a))

    __hash__ = None

    # -- arithmetic ----------------------------------------------------------------
    def _binary(self, other, op, bound):
        a, b = self._a, other._a
        if a.shape != b.shape:
            raise DimensionMismatch(f"{a.shape} vs {b.shape}")
        if a.dtype == object or b.dtype == object or bound >= _INT64_SAFE:
            a, b = a.astype(object), b.astype(object)
        return IntMatrix(op(a, b))

    def __add__(self, other):
        return self._binary(other, np.add, self.max_abs() + other.max_abs())

    def __sub__(self, other):
        return self._binary(other, np.subtract, self.max_abs() + other.max_abs())

    def __neg__(self):
        return IntMatrix(-self._a)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        scalar = int(scalar)
        a = self._a
        if a.dtype == object or abs(scalar) * self.max_abs() >= _INT64_SAFE:
            a = a.astype(object)
        return IntMatrix(a * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        a, b = self._a, other._a
        if a.shape[1] != b.shape[0]:
            raise DimensionMismatch(f"{a.shape} @ {b.shape}")
        bound = self.max_abs() * other.max_abs() * max(a.shape[1], 1)
        if a.dtype == object or b.dtype == object or bound >= _INT64_SAFE:
            return IntMatrix(a.astype(object) @ b.astype(object))
        return IntMatrix(a @ b)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self._a.T)

    def abs(self) -> IntMatrix:
        return IntMatrix(np.abs(self._a))

    def half(self) -> IntMatrix:
        """Exact division by two; raises if any entry is odd."""
        if np.any(self._a % 2 != 0):
            i, j = np.argwhere(self._a % 2 != 0)[0]
            raise InputError("matrix has an odd entry", witness=(int(i), int(j)))
        return IntMatrix(self._a // 2)

    def is_symmetric(self) -> bool:
        return self.is_square and bool(np.all(self._a == self._a.T))

    def diagonal(self) -> list[int]:
        return [int(x) for x in np.diagonal(self._a)]

    def row_sums(self) -> list[int]:
        return [int(x) for x in self._a.sum(axis=1)]

    def permute(self, order) -> IntMatrix:
        """Simultaneous row/column relabelling: new[i, j] = old[order[i], order[j]]."""
        idx = np.asarray(order, dtype=np.int64)
        return IntMatrix(self._a[np.ix_(idx, idx)])

    def submatrix(self, rows, cols) -> IntMatrix:
        return IntMatrix(self._a[np.ix_(np.asarray(rows), np.asarray(cols))])


def kronecker(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Block (i, j) of the result is a[i, j] * b."""
    x, y = a.array, b.array
    if x.dtype == object or y.dtype == object or a.max_abs() * b.max_abs() >= _INT64_SAFE:
        x, y = x.astype(object), y.astype(object)
    return IntMatrix(np.kron(x, y))


def detect_alpha_beta(m: IntMatrix):
    """Return ``(alpha, beta)`` with ``m == alpha*I + beta*J`` or None."""
    if not m.is_square:
        raise NotSquare(f"shape {m.shape}")
    n = m.rows
    if n == 0:
        return None
    arr = m.array
    if n == 1:
        # every split works; report beta = 0
        return int(arr[0, 0]), 0
    beta = int(arr[0, 1])
    alpha = int(arr[0, 0]) - beta
    expected = np.full((n, n), beta, dtype=arr.dtype)
    np.fill_diagonal(expected, alpha + beta)
    if np.all(arr == expected):
        return alpha, beta
    return None


def mod2_congruent(a: IntMatrix, b: IntMatrix) -> bool:
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    return bool(np.all((a.array - b.array) % 2 == 0))


# -- characteristic polynomial ------------------------------------------------------

@cache
def _crt_primes(count: int) -> tuple[int, ...]:
    out = []
    n = 2**_CRT_PRIME_BITS - 1
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


def _coefficient_bound(m: IntMatrix) -> int:
    """Bound on |coefficients| of det(xI - m).

    The coefficient of x^(n-k) is a signed sum of the C(n,k) principal k-minors,
    each bounded (Hadamard) by the product of the k largest row norms.
    """
    arr = m.array
    sq = sorted((sum(int(x) * int(x) for x in row) for row in arr), reverse=True)
    norms = [isqrt(s) + (0 if isqrt(s) ** 2 == s else 1) for s in sq]
    n = len(norms)
    best, prod = 1, 1
    for k in range(1, n + 1):
        prod *= norms[k - 1]
        best = max(best, comb(n, k) * prod)
    return best


def _charpoly_mod(arr: np.ndarray, p: int) -> list[int]:
    """det(xI - M) mod p via reduction to upper Hessenberg form.

    Leading coefficient first.  Entries stay below p < 2^25, so every numpy
    product-sum (at most n * p^2) fits in int64.
    """
    n = arr.shape[0]
    H = np.array(arr % p, dtype=np.int64)
    for j in range(n - 2):
        col = H[j + 1 :, j]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        r = j + 1 + int(nz[0])
        if r != j + 1:
            H[[r, j + 1], :] = H[[j + 1, r], :]
            H[:, [r, j + 1]] = H[:, [j + 1, r]]
        inv = pow(int(H[j + 1, j]), p - 2, p)
        u = H[j + 2 :, j] * inv % p
        if not u.any():
            continue
        H[j + 2 :, :] = (H[j + 2 :, :] - (u[:, None] * H[j + 1, :][None, :]) % p) % p
        H[:, j + 1] = (H[:, j + 1] + (H[:, j + 2 :] @ u) % p) % p
    # polys[k] = charpoly of leading k x k block, little-endian, length n + 1
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    prods = np.zeros(n, dtype=np.int64)  # prods[i] = prod_{l=i+1}^{k} H[l, l-1]
    for k in range(1, n + 1):
        kk = k - 1
        prev = polys[k - 1]
        nxt = np.zeros(n + 1, dtype=np.int64)
        nxt[1:] = prev[:-1]
        nxt = (nxt - H[kk, kk] * prev) % p
        if kk >= 1:
            sub = H[kk, kk - 1]
            prods[:kk] = prods[:kk] * sub % p
            prods[kk - 1] = sub
            w = H[:kk, kk] * prods[:kk] % p
            nxt = (nxt - (w @ polys[:kk]) % p) % p
        polys[k] = nxt
    return [int(x) for x in polys[n][::-1]]


def char_poly(m: IntMatrix) -> list[int]:
    """Exact coefficients of det(xI - m), leading coefficient first.

    Computed modulo enough 25-bit primes to exceed twice a Hadamard-type
    coefficient bound, then lifted by Chinese remaindering.
    """
    if not m.is_square:
        raise NotSquare(f"shape {m.shape}")
    n = m.rows
    if n > MAX_CHARPOLY_ORDER:
        raise MatrixTooLarge(f"order {n} exceeds {MAX_CHARPOLY_ORDER}")
    if n == 0:
        return [1]
    bound = 2 * _coefficient_bound(m) + 1
    count, modulus = 0, 1
    while modulus <= bound:
        count += 1
        modulus *= _crt_primes(count)[-1]
    primes = _crt_primes(count)
    residues = [_charpoly_mod(m.array, p) for p in primes]
    coeffs = []
    for column in zip(*residues):
        x, mod = 0, 1
        for r, p in zip(column, primes):
            t = (r - x) * pow(mod, -1, p) % p
            x += mod * t
            mod *= p
        if x > mod // 2:
            x -= mod
        coeffs.append(x)
    return coeffs


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def format_poly(coeffs: list[int], var: str = "x") -> str:
    n = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        e = n - i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + (var if e == 1 else f"{var}^{e}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# -- text format ---------------------------------------------------------------------

def format_matrix(m: IntMatrix, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{m.rows} {m.cols}")
    lines.extend(" ".join(str(int(x)) for x in row) for row in m.array)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> IntMatrix:
    if not text.endswith("\n"):
        raise MatrixFormatError("missing trailing newline")
    lines = text.splitlines()
    pos = 0
    while pos < len(lines) and lines[pos].startswith("#"):
        pos += 1
    if pos >= len(lines):
        raise MatrixFormatError("missing header line")
    try:
        rows, cols = (int(x) for x in lines[pos].split())
    except ValueError:
        raise MatrixFormatError(f"bad header {lines[pos]!r}") from None
    body = lines[pos + 1 : pos + 1 + rows]
    if len(body) != rows:
        raise MatrixFormatError(f"expected {rows} rows, found {len(body)}")
    data = []
    for i, line in enumerate(body):
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise MatrixFormatError(f"non-integer entry in row {i}") from None
        if len(row) != cols:
            raise MatrixFormatError(f"row {i} has {len(row)} entries, expected {cols}")
        data.append(row)
    extra = [line for line in lines[pos + 1 + rows :] if line.strip()]
    if extra:
        raise MatrixFormatError(f"unexpected content after row {rows - 1}: {extra[0]!r}")
    if rows == 0:
        return IntMatrix(np.zeros((0, cols), dtype=np.int64))
    return IntMatrix(data)


def read_matrix(path) -> IntMatrix:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, m: IntMatrix, comments=()) -> None:
    Path(path).write_text(format_matrix(m, comments))
