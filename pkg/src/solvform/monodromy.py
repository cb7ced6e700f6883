"""The largest submodule of the fiber cohomology with unipotent monodromy.

On an almost abelian quotient the monodromy on the fiber cohomology is
the exterior extension of the dual twist action, so a complexified
degree-k monomial lies in the submodule exactly when the semisimple part
fixes it, i.e. when its weight sum is a resonance: zero real part, zero
symbolic imaginary part, integer resonant imaginary part.

Two routes are provided.  :func:`nilpotent_submodule` enumerates
resonant weight sums and realifies conjugate pairs of complex monomials
into rational vectors.  :func:`nilpotent_submodule_oracle` ignores
weights entirely: it builds the monodromy as the exterior power of the
exponential of the shift part (exact because the shift is nilpotent) and
iterates exact kernels of (monodromy - identity); it is available only
when the semisimple part is trivial, which is exactly when that matrix
is rational.  The two routes must agree as subspaces wherever the oracle
applies.
"""

from __future__ import annotations

from itertools import combinations

from .errors import InternalInvariantViolation, OracleUnavailable
from .exterior import (
    Multivector,
    algebra_map_apply,
    coordinate_vector,
    exp_nilpotent,
    from_coordinates,
    monomials,
    primitive_part,
)
from .linalg import echelon_basis, map_kernel, matrix_mul, rank
from .spectral import AlmostAbelianSpec, Weight, generator_weights, nilpotent_log


def resonance_test(w: Weight) -> bool:
    """True when the semisimple monodromy part fixes a weight-w vector."""
    return w.re.is_zero() and w.im_symbolic.is_zero() and w.im_resonant.denominator == 1


def resonant_monomials(spec: AlmostAbelianSpec, k: int) -> list[tuple[int, ...]]:
    """Slot tuples of the degree-k complex monomials with resonant weight sum."""
    slots = {s.slot: s for s in generator_weights(spec)}
    kept = []
    for combo in combinations(range(1, spec.n + 1), k):
        total = Weight.zero()
        for i in combo:
            total = total + slots[i].weight
        if resonance_test(total):
            kept.append(combo)
    return kept


def _expand_complex_monomial(spec, slots, combo) -> tuple[Multivector, Multivector]:
    """Real and imaginary parts of the wedge of complex slot generators."""
    re = Multivector.unit(spec.n)
    im = Multivector.zero(spec.n, 0)
    for i in combo:
        s = slots[i]
        re, im = (
            re.wedge(s.real_part) - im.wedge(s.imag_part),
            re.wedge(s.imag_part) + im.wedge(s.real_part),
        )
    return re, im


def nilpotent_submodule(spec: AlmostAbelianSpec, k: int) -> list[Multivector]:
    """Echelon basis of the degree-k slice of the unipotent-monodromy submodule.

    Complex monomials with resonant weight sum are realified in conjugate
    pairs (real and imaginary part, both rational after expansion); a
    self-conjugate monomial contributes its single nonzero part.  The
    result is the reduced echelon basis with respect to the lexicographic
    monomial order, so it is canonical.
    """
    if not 0 <= k <= spec.n:
        return []
    if k == 0:
        return [Multivector.unit(spec.n)]
    slots = {s.slot: s for s in generator_weights(spec)}
    kept = resonant_monomials(spec, k)
    kept_set = set(kept)
    reps: list[Multivector] = []
    seen: set = set()
    for combo in kept:
        if combo in seen:
            continue
        conj = tuple(sorted(slots[i].conj for i in combo))
        if conj not in kept_set:
            raise InternalInvariantViolation(
                f"resonant monomial {combo} has non-resonant conjugate {conj}"
            )
        re, im = _expand_complex_monomial(spec, slots, combo)
        if conj == combo:
            # conjugation fixes the monomial up to sign, so exactly one
            # of the two parts can survive
            if re.is_zero() == im.is_zero():
                raise InternalInvariantViolation(
                    f"self-conjugate monomial {combo} did not expand to a single real part"
                )
            reps.append(primitive_part(im if re.is_zero() else re))
            seen.add(combo)
        else:
            reps.append(primitive_part(re))
            reps.append(primitive_part(im))
            seen.add(combo)
            seen.add(conj)
    if len(reps) != len(kept):
        raise InternalInvariantViolation(
            f"realification bookkeeping broke: {len(reps)} real vectors from {len(kept)} monomials"
        )
    keys = monomials(spec.n, k)
    rows = [coordinate_vector(rep, keys) for rep in reps]
    basis_rows = echelon_basis(rows)
    if len(basis_rows) != len(reps):
        raise InternalInvariantViolation("realified representatives are linearly dependent")
    return [from_coordinates(spec.n, k, keys, row) for row in basis_rows]


def submodule_profile(spec: AlmostAbelianSpec, k_max=None) -> dict[int, list[Multivector]]:
    """Bases for all degrees ``0..k_max`` (default: the fiber dimension)."""
    top = spec.n if k_max is None else min(k_max, spec.n)
    return {k: nilpotent_submodule(spec, k) for k in range(top + 1)}


def oracle_applicable(spec: AlmostAbelianSpec) -> bool:
    return all(
        b.re.is_zero() and b.im_symbolic.is_zero() and b.im_resonant.denominator == 1
        for b in spec.blocks
    )


def nilpotent_submodule_oracle(spec: AlmostAbelianSpec, k: int) -> list[Multivector]:
    """Brute-force alternative: stabilized kernel of powers of (monodromy - id).

    Requires every eigenvalue to have zero real part and a full-turn
    rotation, so the monodromy equals the exterior power of the rational
    unipotent matrix exp(shift); rescaling the lattice generator away
    does not change which vectors a unipotent map eventually annihilates.
    """
    if not oracle_applicable(spec):
        raise OracleUnavailable("oracle unavailable for this spectrum")
    if not 0 <= k <= spec.n:
        return []
    if k == 0:
        return [Multivector.unit(spec.n)]
    phi_one = exp_nilpotent(nilpotent_log(spec))
    keys = monomials(spec.n, k)
    rows = []
    for pos, key in enumerate(keys):
        image = algebra_map_apply(phi_one, Multivector.monomial(spec.n, key))
        row = coordinate_vector(image, keys)
        row[pos] -= 1
        rows.append(row)
    power = rows
    kernel = map_kernel(power)
    while True:
        power = matrix_mul(power, rows)
        bigger = map_kernel(power)
        if len(bigger) == len(kernel):
            break
        kernel = bigger
    basis_rows = echelon_basis(kernel)
    return [from_coordinates(spec.n, k, keys, row) for row in basis_rows]


def spans_match(a: list[Multivector], b: list[Multivector]) -> bool:
    """Subspace equality via canonical echelon coordinates."""
    if not a and not b:
        return True
    if bool(a) != bool(b):
        return False
    n, deg = a[0].n, a[0].degree
    keys = monomials(n, deg)
    rows_a = echelon_basis([coordinate_vector(x, keys) for x in a])
    rows_b = echelon_basis([coordinate_vector(x, keys) for x in b])
    return rows_a == rows_b


def in_submodule_span(basis: list[Multivector], x: Multivector) -> bool:
    if x.is_zero():
        return True
    if not basis:
        return False
    keys = monomials(x.n, x.degree)
    rows = [coordinate_vector(v, keys) for v in basis]
    target = coordinate_vector(x, keys)
    return rank(rows) == rank(rows + [target])
