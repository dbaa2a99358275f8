"""Synthetic spectral-sequence terms loaded from JSON.

Lets the duality checkers run on hypothetical page data (any field,
including the rationals) without a backing complex.  Format:

    { "field_char": 0 | prime,
      "n": int, "window": int,
      "dims": {"k,l": int},
      "differentials": {"r": {"k,l": [[entry]]}},
      "products": {"(k,l)x(k',l')": [[[entry]]]} }   (optional)

A differential matrix at (k, l) maps that cell to (k+r, l-r+1), shaped
(target dim) x (source dim).  A product table entry T[i][j] is the
coefficient vector of basis_i * basis_j in the target cell's basis.
Entries are integers, or strings parsed as exact fractions when the
field characteristic is 0.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

import numpy as np

from .linalg import is_prime, rank_mod


def _parse_entry(x, char: int):
    if char == 0:
        return Fraction(x) if isinstance(x, str) else Fraction(int(x))
    return int(x) % char


def _parse_matrix(rows, char: int):
    return [[_parse_entry(x, char) for x in row] for row in rows]


def fraction_rank(rows: list[list[Fraction]]) -> int:
    """Exact Gaussian elimination over the rationals."""
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return 0
    m, n = len(mat), len(mat[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def matrix_rank_over(rows, char: int) -> int:
    if not rows or not rows[0]:
        return 0
    if char == 0:
        return fraction_rank(rows)
    return rank_mod(np.array([[int(x) % char for x in r] for r in rows], dtype=np.int64), char)


_CELL_RE = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*$")
_PROD_RE = re.compile(r"^\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*x\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$")


class SyntheticTerm:
    """One page term of a synthetic spectral sequence."""

    def __init__(self, r: int, n: int, window: int, char: int, dims, diffs, products):
        self.r = r
        self.n = n
        self.field_char = char
        self.trusted_k = window
        self._dims = dims
        self._diffs = diffs
        self._products = products
        self.has_products = bool(products)

    def dim(self, k: int, l: int) -> int:
        if l < 0 or l > self.n or k < 0:
            return 0
        return self._dims.get((k, l), 0)

    def d_rank(self, k: int, l: int) -> int:
        mat = self._diffs.get((k, l))
        if mat is None:
            return 0
        return matrix_rank_over(mat, self.field_char)

    def d_is_zero(self, k: int, l: int) -> bool:
        return self.d_rank(k, l) == 0

    def pairing_matrix(self, k: int, l: int, k2: int, l2: int):
        """Pairing into the (necessarily 1-dim) target; None if unavailable."""
        if self.dim(k + k2, l + l2) != 1:
            return None
        table = self._products.get(((k, l), (k2, l2)))
        if table is None:
            return None
        return [[entry[0] for entry in row] for row in table]


class SyntheticPage:
    """A collection of synthetic terms indexed by page number."""

    def __init__(self, n: int, window: int, char: int, terms: dict[int, SyntheticTerm]):
        self.n = n
        self.window = window
        self.field_char = char
        self.terms = terms

    def term(self, r: int) -> SyntheticTerm:
        return self.terms[r]

    @property
    def page_numbers(self) -> list[int]:
        return sorted(self.terms)


def load_synthetic_page(text: str) -> SyntheticPage:
    data = json.loads(text)
    char = int(data["field_char"])
    if char != 0 and not is_prime(char):
        raise ValueError(f"field characteristic {char} is neither 0 nor prime")
    n = int(data["n"])
    window = int(data["window"])

    dims: dict[tuple[int, int], int] = {}
    for key, value in data.get("dims", {}).items():
        m = _CELL_RE.match(key)
        if not m:
            raise ValueError(f"bad cell key {key!r}")
        dims[(int(m.group(1)), int(m.group(2)))] = int(value)

    products: dict = {}
    for key, table in data.get("products", {}).items():
        m = _PROD_RE.match(key)
        if not m:
            raise ValueError(f"bad product key {key!r}")
        cells = ((int(m.group(1)), int(m.group(2))), (int(m.group(3)), int(m.group(4))))
        products[cells] = [
            [[_parse_entry(x, char) for x in entry] for entry in row] for row in table
        ]

    diff_spec = data.get("differentials", {})
    rs = sorted(int(r) for r in diff_spec) or [2]
    terms = {}
    for r in rs:
        diffs = {}
        for key, mat in diff_spec.get(str(r), {}).items():
            m = _CELL_RE.match(key)
            if not m:
                raise ValueError(f"bad cell key {key!r}")
            diffs[(int(m.group(1)), int(m.group(2)))] = _parse_matrix(mat, char)
        terms[r] = SyntheticTerm(r, n, window, char, dims, diffs, products)
    return SyntheticPage(n, window, char, terms)
