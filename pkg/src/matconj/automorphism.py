"""Queryable representations of linear maps on the n x n matrix algebra.

An :class:`AutomorphismOracle` wraps a candidate algebra automorphism phi in
one of three backings:

* ``conjugation_by(B)``: phi(X) = B X B^-1 for a fixed invertible B;
* ``from_table(images)``: the images phi(E_{i,j}) of all n^2 matrix units,
  extended linearly to arbitrary inputs;
* ``from_generator_pair(H, G)``: only the two images the recovery procedure
  actually consumes: H for the corner unit E_{n,1} and G for the shift matrix.

Every ``apply`` resolved through the oracle bumps a thread-safe query counter,
which is what makes the "two queries suffice" contract mechanically checkable.
``validate`` decides whether a fully specified map really is a unital algebra
automorphism; it is O(n^6) scalar work and entirely optional, since the recovery
itself never needs it.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionMismatch, FieldMismatch, UnsupportedQuery
from .field import FieldSpec
from .matrix import Matrix, elementary_matrix, outer_product, shift_matrix


@dataclass
class ValidationReport:
    """Per-axiom outcome of checking a map against the automorphism axioms.

    ``linear_ok`` is structural for table-backed maps (the table *defines* a
    linear map) and is reported true.  ``first_violation`` names the first
    witness found, or None.
    """

    linear_ok: bool
    unital_ok: bool
    multiplicative_ok: bool
    bijective_ok: bool
    first_violation: str | None = None

    @property
    def is_automorphism(self) -> bool:
        return (
            self.linear_ok
            and self.unital_ok
            and self.multiplicative_ok
            and self.bijective_ok
        )


@dataclass(frozen=True)
class _Conjugation:
    matrix: Matrix
    inverse: Matrix


@dataclass(frozen=True)
class _Table:
    images: Mapping[tuple[int, int], Matrix]


@dataclass(frozen=True)
class _Pair:
    corner_image: Matrix  # image of E_{n,1}
    shift_image: Matrix  # image of the shift matrix


class AutomorphismOracle:
    """A candidate automorphism of the n x n matrix algebra, with query counting."""

    def __init__(self, spec: FieldSpec, n: int, backing) -> None:
        self.spec = spec
        self.n = n
        self._backing = backing
        self._query_count = 0
        self._lock = threading.Lock()

    # -- constructors ------------------------------------------------------

    @classmethod
    def conjugation_by(cls, b: Matrix) -> "AutomorphismOracle":
        """The inner map X -> B X B^-1; raises SingularMatrix if B is not invertible."""
        if not b.is_square:
            raise DimensionMismatch("conjugation needs a square matrix")
        return cls(b.spec, b.rows, _Conjugation(b, b.inverse()))

    @classmethod
    def from_table(
        cls, spec: FieldSpec, n: int, images: Mapping[tuple[int, int], Matrix]
    ) -> "AutomorphismOracle":
        """A map given by the images of all n^2 matrix units, keyed by 1-based (i, j)."""
        if n < 1:
            raise DimensionMismatch("dimension must be positive")
        table = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                try:
                    img = images[(i, j)]
                except KeyError:
                    raise DimensionMismatch(f"missing image for basis pair ({i},{j})")
                if img.spec != spec:
                    raise FieldMismatch(f"image for ({i},{j}) over the wrong field")
                if (img.rows, img.cols) != (n, n):
                    raise DimensionMismatch(
                        f"image for ({i},{j}) is {img.rows}x{img.cols}, expected {n}x{n}"
                    )
                table[(i, j)] = img
        return cls(spec, n, _Table(table))

    @classmethod
    def from_generator_pair(cls, h: Matrix, g: Matrix) -> "AutomorphismOracle":
        """A map known only through the two images the recovery consumes."""
        if not h.is_square or (g.rows, g.cols) != (h.rows, h.cols):
            raise DimensionMismatch("generator images must be square and equal-sized")
        if g.spec != h.spec:
            raise FieldMismatch("generator images over different fields")
        return cls(h.spec, h.rows, _Pair(h, g))

    # -- bookkeeping -------------------------------------------------------

    @property
    def query_count(self) -> int:
        return self._query_count

    @property
    def backing_kind(self) -> str:
        if isinstance(self._backing, _Conjugation):
            return "conjugation"
        if isinstance(self._backing, _Table):
            return "full_table"
        return "generator_pair"

    def _count_query(self) -> None:
        with self._lock:
            self._query_count += 1

    # -- evaluation --------------------------------------------------------

    def apply(self, x: Matrix) -> Matrix:
        """Evaluate the map on x; every resolved call costs one oracle query.

        Generator-pair backings answer only the corner unit, the shift matrix
        and the identity; anything else raises UnsupportedQuery.
        """
        if x.spec != self.spec:
            raise FieldMismatch("query over the wrong field")
        if (x.rows, x.cols) != (self.n, self.n):
            raise DimensionMismatch(f"query must be {self.n}x{self.n}")
        backing = self._backing
        if isinstance(backing, _Conjugation):
            result = backing.matrix @ (x @ backing.inverse)
        elif isinstance(backing, _Table):
            result = self._apply_table(backing.images, x)
        else:
            result = self._apply_pair(backing, x)
        self._count_query()
        return result

    def _apply_table(self, images, x: Matrix) -> Matrix:
        n = self.n
        spec = self.spec
        zero = spec.zero_value
        acc = [zero] * (n * n)
        xdata = x._data
        for idx in range(n * n):
            c = xdata[idx]
            if not c:
                continue
            i, j = divmod(idx, n)
            img = images[(i + 1, j + 1)]._data
            for t in range(n * n):
                v = img[t]
                if v:
                    acc[t] += c * v
        if spec.is_prime_field:
            p = spec.modulus
            acc = [v % p for v in acc]
        return Matrix._raw_new(spec, n, n, tuple(acc))

    def _apply_pair(self, backing: _Pair, x: Matrix) -> Matrix:
        n = self.n
        if x == elementary_matrix(self.spec, n, n, 1):
            return backing.corner_image
        if x == shift_matrix(self.spec, n):
            return backing.shift_image
        if x == Matrix.identity(self.spec, n):
            return Matrix.identity(self.spec, n)
        raise UnsupportedQuery(
            "generator-pair backing answers only the corner unit, the shift matrix, "
            "and the identity"
        )

    def query_generators(self) -> tuple[Matrix, Matrix]:
        """The two images (H, G) the recovery needs: exactly 2 oracle queries.

        For n = 1 the shift matrix is the zero matrix, so G is the zero matrix
        by linearity; the query is still counted for uniformity.
        """
        h = self.apply(elementary_matrix(self.spec, self.n, self.n, 1))
        g = self.apply(shift_matrix(self.spec, self.n))
        return h, g

    # -- tabulation and validation ----------------------------------------

    def to_full_table(self) -> "AutomorphismOracle":
        """Expand this oracle into a fresh full-table oracle (no queries counted).

        Conjugation backings tabulate B E_{i,j} B^-1 directly.  Generator-pair
        backings tabulate G^{n-i} H G^{j-1}, i.e. the only table compatible
        with multiplicativity; the result is a genuine automorphism table only
        if (H, G) really came from one, so callers should validate afterwards.
        """
        backing = self._backing
        if isinstance(backing, _Table):
            raise UnsupportedQuery("oracle already carries a full table")
        if isinstance(backing, _Conjugation):
            images = self._conjugation_images(backing)
        else:
            images = self._pair_images(backing)
        return AutomorphismOracle.from_table(self.spec, self.n, images)

    def _conjugation_images(self, backing: _Conjugation) -> dict:
        n = self.n
        images = {}
        for i in range(1, n + 1):
            col = backing.matrix.column(i)
            for j in range(1, n + 1):
                images[(i, j)] = outer_product(col, backing.inverse.row_vector(j))
        return images

    def _pair_images(self, backing: _Pair) -> dict:
        n = self.n
        h, g = backing.corner_image, backing.shift_image
        lefts = [None] * (n + 1)  # lefts[i] = G^{n-i} H
        lefts[n] = h
        for i in range(n - 1, 0, -1):
            lefts[i] = g @ lefts[i + 1]
        rights = [Matrix.identity(self.spec, n)]  # rights[j-1] = G^{j-1}
        for _ in range(n - 1):
            rights.append(rights[-1] @ g)
        images = {}
        for i in range(1, n + 1):
            images[(i, 1)] = lefts[i]
            for j in range(2, n + 1):
                images[(i, j)] = lefts[i] @ rights[j - 1]
        return images

    def _images_for_validation(self):
        backing = self._backing
        if isinstance(backing, _Table):
            return backing.images
        if isinstance(backing, _Conjugation):
            return self._conjugation_images(backing)
        raise UnsupportedQuery(
            "a generator pair carries too little information to validate"
        )

    def validate(self) -> ValidationReport:
        """Check the automorphism axioms at matrix-unit granularity.

        Unitality: the images of the diagonal units must sum to the identity.
        Multiplicativity: phi(E_{i,j}) phi(E_{k,l}) must equal phi(E_{i,l})
        when j = k and vanish otherwise, for all n^4 basis pairs.
        Bijectivity: the n^2 x n^2 matrix whose columns are the vectorized
        images must have full rank.  Failures are reported, never thrown.
        """
        images = self._images_for_validation()
        n = self.n
        spec = self.spec
        first_violation = None

        total = Matrix.zero(spec, n, n)
        for i in range(1, n + 1):
            total = total + images[(i, i)]
        unital_ok = total == Matrix.identity(spec, n)
        if not unital_ok:
            first_violation = "sum of diagonal-unit images is not the identity"

        multiplicative_ok = True
        zero = Matrix.zero(spec, n, n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                left = images[(i, j)]
                for k in range(1, n + 1):
                    expected_nonzero = j == k
                    for l in range(1, n + 1):
                        prod = left @ images[(k, l)]
                        expected = images[(i, l)] if expected_nonzero else zero
                        if prod != expected:
                            multiplicative_ok = False
                            if first_violation is None:
                                first_violation = (
                                    f"image({i},{j}) * image({k},{l}) is not "
                                    f"{'image(%d,%d)' % (i, l) if expected_nonzero else 'zero'}"
                                )
                            break
                    if not multiplicative_ok:
                        break
                if not multiplicative_ok:
                    break
            if not multiplicative_ok:
                break

        nn = n * n
        big = []
        for r in range(nn):
            row = []
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    row.append(images[(i, j)]._data[r])
            big.extend(row)
        bijective_ok = Matrix._raw_new(spec, nn, nn, tuple(big)).rank() == nn
        if not bijective_ok and first_violation is None:
            first_violation = "vectorized map is rank-deficient"

        return ValidationReport(
            linear_ok=True,
            unital_ok=unital_ok,
            multiplicative_ok=multiplicative_ok,
            bijective_ok=bijective_ok,
            first_violation=first_violation,
        )
