"""Lie algebra cohomology of the completely solvable modification.

The algebra is the real line acting on an abelian n-dimensional ideal,
so its Chevalley-Eilenberg complex is a mapping cone: writing a total
form as ``x + y ^ a`` with ``x``, ``y`` supported on the fiber dual
basis and ``a`` the dual of the acting line,

    d(x + y ^ a) = -A(x) ^ a,

where ``A`` is the derivation extension of the modified dual action.
Consequently ``H^k = ker(A_k) (+) coker(A_{k-1}) ^ a`` and the square of
d vanishes for structural reasons.

The degree-k slice splits by total real weight (the modified action is
real-diagonal plus a weight-preserving shift).  On a slice of nonzero
weight -- decided exactly, including symbolic weights -- the action is
invertible, so only zero-weight slices contribute kernels or cokernels,
and there the matrices are rational.  No division by a symbolic
quantity ever happens.

Sign convention: d(xi)(X, Y) = -xi([X, Y]); representatives depend on it
but dimensions do not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantViolation
from .exterior import (
    Multivector,
    coordinate_vector,
    derivation_apply,
    from_coordinates,
    monomials,
)
from .linalg import echelon_basis, map_kernel, rref
from .scalars import ScalarLC
from .spectral import AlmostAbelianSpec, modified_matrix, real_trace


@dataclass
class CEElement:
    """Total form ``fiber + base ^ a`` of degree ``fiber.degree``."""

    fiber: Multivector
    base: Multivector | None = None  # degree fiber.degree - 1; None means zero

    def __post_init__(self):
        if self.base is not None and self.base.degree != self.fiber.degree - 1:
            raise ValueError("base part must have degree one below the fiber part")

    @property
    def degree(self) -> int:
        return self.fiber.degree

    def is_zero(self) -> bool:
        return self.fiber.is_zero() and (self.base is None or self.base.is_zero())

    def __eq__(self, other):
        if not isinstance(other, CEElement):
            return NotImplemented
        if self.fiber != other.fiber:
            return False
        a = self.base if self.base is not None else Multivector.zero(self.fiber.n, 0)
        b = other.base if other.base is not None else Multivector.zero(other.fiber.n, 0)
        return a.terms == b.terms

    def __str__(self):
        parts = []
        if not self.fiber.is_zero():
            parts.append(str(self.fiber))
        if self.base is not None and not self.base.is_zero():
            parts.append(f"({self.base}) ^ a{self.fiber.n + 1}")
        return " + ".join(parts) if parts else "0"


def ce_differential(spec: AlmostAbelianSpec, elt: CEElement) -> CEElement:
    """Differential of the mapping-cone complex; the base part always dies."""
    action = modified_matrix(spec)
    image = derivation_apply(action, elt.fiber)
    return CEElement(Multivector.zero(spec.n, elt.degree + 1), -image)


@dataclass
class CohomologySlice:
    degree: int
    betti: int
    kernel_reps: list[Multivector]
    coker_reps: list[Multivector]  # base parts; each stands for rep ^ a

    def representative_elements(self, n: int) -> list[CEElement]:
        out = [CEElement(rep) for rep in self.kernel_reps]
        for rep in self.coker_reps:
            out.append(CEElement(Multivector.zero(n, rep.degree + 1), rep))
        return out


def _weight_groups(spec: AlmostAbelianSpec, k: int):
    """Degree-k monomials grouped by total real weight, in first-seen order."""
    groups: dict[ScalarLC, list] = {}
    for key in monomials(spec.n, k):
        w = ScalarLC(0)
        for i in key:
            w = w + spec.coordinate_re(i)
        groups.setdefault(w, []).append(key)
    return groups


def _degree_data(spec: AlmostAbelianSpec, k: int):
    """Kernel vectors and image rows of the modified action on the degree-k slice.

    Returns (kernel multivectors, image echelon rows over the full
    monomial list, pivot monomial set).  Nonzero-weight groups are
    invertible, so they contribute no kernel and all of their monomials
    become image pivots.
    """
    action = modified_matrix(spec)
    keys = monomials(spec.n, k)
    positions = {key: i for i, key in enumerate(keys)}
    kernel_vectors: list[Multivector] = []
    pivot_monos: set = set()
    image_rows_full: list = []
    for weight, group in _weight_groups(spec, k).items():
        if not weight.is_zero():
            pivot_monos.update(group)
            continue
        group_pos = {key: i for i, key in enumerate(group)}
        rows = []
        for key in group:
            image = derivation_apply(action, Multivector.monomial(spec.n, key))
            for mono in image.terms:
                if mono not in group_pos:
                    raise InternalInvariantViolation(
                        f"action left its weight slice: {key} -> {mono}"
                    )
            rows.append(coordinate_vector(image, group))
        for vec in map_kernel(rows):
            kernel_vectors.append(from_coordinates(spec.n, k, group, vec))
        reduced, pivots = rref(rows)
        for row, p in zip(reduced, pivots):
            pivot_monos.add(group[p])
            full = [Fraction(0)] * len(keys)
            for c, val in enumerate(row):
                full[positions[group[c]]] = val
            image_rows_full.append(full)
    kernel_rows = echelon_basis([coordinate_vector(v, keys) for v in kernel_vectors])
    kernel_reps = [from_coordinates(spec.n, k, keys, row) for row in kernel_rows]
    return kernel_reps, image_rows_full, pivot_monos


def cohomology(spec: AlmostAbelianSpec, k: int) -> CohomologySlice:
    """Degree-k cohomology: kernel representatives plus cokernel monomials."""
    modified_matrix(spec)  # surface the hypothesis error before any work
    if k < 0 or k > spec.n + 1:
        return CohomologySlice(k, 0, [], [])
    kernel_reps: list[Multivector] = []
    if k <= spec.n:
        kernel_reps, _, _ = _degree_data(spec, k)
    coker_reps: list[Multivector] = []
    if 1 <= k <= spec.n + 1:
        _, _, pivots = _degree_data(spec, k - 1)
        for key in monomials(spec.n, k - 1):
            if key not in pivots:
                coker_reps.append(Multivector.monomial(spec.n, key))
    return CohomologySlice(k, len(kernel_reps) + len(coker_reps), kernel_reps, coker_reps)


def betti_numbers(spec: AlmostAbelianSpec) -> list[int]:
    """Betti numbers of the total space, degrees 0..n+1."""
    return [cohomology(spec, k).betti for k in range(spec.n + 2)]


def trace_is_zero(spec: AlmostAbelianSpec) -> bool:
    """Unimodularity indicator: the twist action must be traceless."""
    return real_trace(spec).is_zero()
