"""Independent cross-check for the graded dimensions.

Deliberately dumb: enumerate every monomial of each degree, span the
relation multiples, row reduce a dense matrix, count.  No normal-form
memoization, no box shortcut, and the monomials are ordered by the
REVERSED exponent tuple so that any hidden dependence of the main
engine on its own monomial order would show up as a dimension
mismatch.  Keep it slow and obvious.
"""

from __future__ import annotations

import itertools

from .cohomology import ReducedPresentation
from .f2linalg import F2Matrix, rank


def _monomials(m: int, d: int) -> list[tuple[int, ...]]:
    """Degree-d exponent tuples, sorted by reversed tuple."""
    out = set()
    for combo in itertools.combinations_with_replacement(range(m), d):
        e = [0] * m
        for j in combo:
            e[j] += 1
        out.add(tuple(e))
    return sorted(out, key=lambda t: t[::-1])


def brute_force_graded_dims(
    red: ReducedPresentation, top: int
) -> tuple[int, ...]:
    """dim of each graded piece of Z2[y]/I for degrees 0..top."""
    m = red.num_vars
    dims = []
    for d in range(top + 1):
        monos = _monomials(m, d)
        index = {t: i for i, t in enumerate(monos)}
        rows = []
        for g in red.generators:
            gl = sorted(g)
            dg = sum(gl[0])
            if dg > d:
                continue
            for mu in _monomials(m, d - dg):
                bits = 0
                for t in gl:
                    prod = tuple(a + b for a, b in zip(mu, t))
                    bits ^= 1 << index[prod]
                if bits:
                    rows.append(bits)
        if rows:
            r = rank(F2Matrix.from_row_bits(rows, len(monos)))
        else:
            r = 0
        dims.append(len(monos) - r)
    return tuple(dims)
