"""Pure-Python row-echelon rank over a prime field.

Fallback for the compiled kernel; same contract, any prime size.
"""

from __future__ import annotations


def rank_mod(entries, rows: int, cols: int, p: int) -> int:
    """Rank of a rows x cols matrix over GF(p).

    ``entries`` is row-major with values already reduced into [0, p).
    """
    if rows == 0 or cols == 0:
        return 0
    m = [list(entries[r * cols : (r + 1) * cols]) for r in range(rows)]
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
        inv = pow(mr[c], p - 2, p)
        for r in range(rank + 1, rows):
            mrow = m[r]
            f = mrow[c]
            if f:
                g = (f * inv) % p
                for j in range(c, cols):
                    mrow[j] = (mrow[j] - g * mr[j]) % p
        rank += 1
    return rank
