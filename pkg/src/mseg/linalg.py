"""Exact rank computation and deterministic coefficient sampling.

Two rank routines back every condition check:

* :func:`rank_mod_p` -- row echelon over a prime field.  The inner loop is
  the package's hot kernel; a compiled extension is used when available and
  the modulus fits in 62 bits, with a pure-Python fallback selected at
  import time (``KERNEL`` says which one is active).
* :func:`rank_exact` -- fraction-free (division-minimizing) elimination over
  arbitrary-precision integers, used to certify witnesses exactly.

Coefficient sampling is a fixed, documented 64-bit mixing generator
(splitmix64 finalizer chain) so verdicts reproduce across platforms:

    h = mix(seed); h = mix(h ^ trial); h = mix(h ^ stream)
    value(key) = 1 + fold(h, key parts) reduced into [1, p-1]

where ``mix`` is splitmix64 (add golden gamma, xor-shift-multiply twice,
final xor-shift) and the reduction rejects the bias range so values are
exactly uniform over [1, p-1].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

import os

if os.environ.get("MSEG_FORCE_PY_KERNEL"):  # pragma: no cover
    from . import _modrank_py as _kernel

    KERNEL = "python"
else:
    try:  # pragma: no cover - exercised only when the extension is missing
        from . import _modrank as _kernel

        KERNEL = "compiled"
    except ImportError:  # pragma: no cover
        from . import _modrank_py as _kernel

        KERNEL = "python"

from . import _modrank_py

MERSENNE61 = (1 << 61) - 1
_MASK64 = (1 << 64) - 1
_KERNEL_LIMIT = 1 << 62


@dataclass(frozen=True)
class IntMatrix:
    """A dense integer matrix, row-major, arbitrary-precision entries."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        data = [list(r) for r in rows]
        n = len(data)
        k = len(data[0]) if data else 0
        if any(len(r) != k for r in data):
            raise ValueError("ragged rows")
        return cls(n, k, tuple(v for r in data for v in r))

    def at(self, r: int, c: int) -> int:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> Tuple[int, ...]:
        return self.entries[r * self.cols : (r + 1) * self.cols]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.at(r, c) for c in range(self.cols) for r in range(self.rows)),
        )

    def submatrix(self, row_idx: List[int], col_idx: List[int]) -> "IntMatrix":
        return IntMatrix(
            len(row_idx),
            len(col_idx),
            tuple(self.at(r, c) for r in row_idx for c in col_idx),
        )


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the listed bases decide all n < 3.3e24.
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=64)
def _checked_prime(p: int) -> int:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class RankConfig:
    """Parameters of the randomized full-rank protocol."""

    prime: int = MERSENNE61
    trials: int = 8
    seed: int = 0
    certify: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 2 <= self.prime < (1 << 64):
            raise ValueError("prime must fit in 64 bits")
        _checked_prime(self.prime)


def rank_mod_p(a: IntMatrix, p: int) -> int:
    """Rank of the matrix over the field with p elements."""
    _checked_prime(p)
    if a.rows == 0 or a.cols == 0:
        return 0
    reduced = [v % p for v in a.entries]
    if p < _KERNEL_LIMIT:
        return _kernel.rank_mod(reduced, a.rows, a.cols, p)
    return _modrank_py.rank_mod(reduced, a.rows, a.cols, p)


def rank_exact(a: IntMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination.

    Intermediate entries stay (signed) minors of the input, so division by
    the previous pivot is exact and growth stays polynomial in bit size.
    """
    rows, cols = a.rows, a.cols
    if rows == 0 or cols == 0:
        return 0
    m = [list(a.row(r)) for r in range(rows)]
    prev = 1
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = None
        for r in range(rank, rows):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        mr = m[rank]
        pivot = mr[c]
        for r in range(rank + 1, rows):
            mrow = m[r]
            f = mrow[c]
            if f:
                for j in range(c + 1, cols):
                    mrow[j] = (pivot * mrow[j] - f * mr[j]) // prev
            else:
                for j in range(c + 1, cols):
                    mrow[j] = (pivot * mrow[j]) // prev
            mrow[c] = 0
        prev = pivot
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# deterministic sampling
# ---------------------------------------------------------------------------


def _mix64(x: int) -> int:
    # splitmix64: golden-gamma increment then the xor-multiply finalizer.
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix_stream(*parts: int) -> int:
    """Fold integers into one 64-bit state; the package-wide derivation."""
    h = 0
    for part in parts:
        h = _mix64(h ^ (part & _MASK64))
    return h


def sample_coeffs(
    keys: Iterable[Tuple[int, ...]],
    p: int,
    seed: int,
    trial: int,
    stream: int = 0,
) -> Dict[Tuple[int, ...], int]:
    """Deterministic nonzero field values, one per key.

    Identical (seed, trial, stream) reproduce the same map; ``stream``
    separates coefficient vectors sampled within one trial (two sides of a
    pair condition draw from streams 0 and 1).
    """
    _checked_prime(p)
    base = mix_stream(seed, trial, stream)
    span = p - 1
    limit = (_MASK64 + 1) - ((_MASK64 + 1) % span) if span else 0
    out: Dict[Tuple[int, ...], int] = {}
    for key in sorted(keys):
        h = base
        for part in key:
            h = _mix64(h ^ (part & _MASK64))
        while h >= limit:  # reject the biased tail so values are uniform
            h = _mix64(h)
        out[key] = 1 + h % span
    return out
