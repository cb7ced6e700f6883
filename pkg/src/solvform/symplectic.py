"""Invariant symplectic forms built from a closed 2-form and a 1-form.

On a total space of even dimension 2N (fiber dimension 2N-1) the ansatz
is ``omega = F + eta ^ a``, with ``F`` a degree-2 and ``eta`` a degree-1
representative of the invariant subalgebra and ``a`` dual to the acting
line.  Then ``omega^N = N * F^(N-1) ^ eta ^ a`` -- the pure fiber term
``F^N`` dies for degree reasons -- so nondegeneracy is the nonvanishing
of the top coefficient of ``F^(N-1) ^ eta``, and closedness reduces to
the shift action annihilating ``F`` (its diagonal weight contribution is
zero on invariant representatives).

The search parameterizes ``F`` over the kernel of the shift action on
invariant 2-forms and ``eta`` over invariant 1-forms.  The pairing is a
polynomial with per-variable degree at most N-1 (resp. 1), so it is
identically zero iff it vanishes on the integer grid {0..N-1} x {0,1}
per variable; grid evaluation with early exit decides nondegeneracy
exactly and deterministically.  A negative answer refutes only forms of
this invariant type, nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cohomology import CEElement, ce_differential
from .errors import InputError
from .exterior import (
    Multivector,
    coordinate_vector,
    derivation_apply,
    from_coordinates,
    monomials,
    top_coefficient,
    wedge_power,
)
from .linalg import echelon_basis, map_kernel
from .monodromy import nilpotent_submodule
from .scalars import ScalarLC
from .spectral import AlmostAbelianSpec, nilpotent_log


@dataclass
class CoSymplecticPair:
    two_form: Multivector
    one_form: Multivector


@dataclass
class SymplecticWitness:
    pair: CoSymplecticPair
    omega: Multivector  # degree-2 form on the total space
    pairing: ScalarLC  # top coefficient of F^(N-1) ^ eta on the fiber
    omega_top: ScalarLC  # top coefficient of omega^N on the total space


def closed_two_classes(spec: AlmostAbelianSpec) -> list[Multivector]:
    """Invariant 2-form representatives annihilated by the shift action."""
    basis = nilpotent_submodule(spec, 2)
    if not basis:
        return []
    ntl = nilpotent_log(spec)
    keys = monomials(spec.n, 2)
    rows = [coordinate_vector(derivation_apply(ntl, u), keys) for u in basis]
    combos = map_kernel(rows)
    vectors = []
    for combo in combos:
        acc = [Fraction(0)] * len(keys)
        for c, u in zip(combo, basis):
            if c != 0:
                vec = coordinate_vector(u, keys)
                acc = [a + c * b for a, b in zip(acc, vec)]
        vectors.append(acc)
    return [from_coordinates(spec.n, 2, keys, row) for row in echelon_basis(vectors)]


def assemble_omega(spec: AlmostAbelianSpec, pair: CoSymplecticPair) -> Multivector:
    """Total-space 2-form F + eta ^ a over n+1 coordinates."""
    total = spec.n + 1
    omega = pair.two_form.extend_ambient(total)
    alpha = Multivector.basis_one_form(total, total)
    return omega + pair.one_form.extend_ambient(total).wedge(alpha)


def _half_dim(spec: AlmostAbelianSpec) -> int:
    total = spec.n + 1
    if total % 2:
        raise InputError(f"symplectic undefined: total dimension {total} is odd")
    return total // 2


def find_symplectic(spec: AlmostAbelianSpec, candidate: CoSymplecticPair | None = None):
    """Search the grid for a nondegenerate pair; None when none of this type exists.

    A supplied candidate is verified instead of searching.  Every
    returned witness carries exact certificates and passes
    :func:`verify_symplectic` by construction.
    """
    half = _half_dim(spec)
    if candidate is not None:
        if not _pair_is_admissible(spec, candidate):
            return None
        witness = _witness_from_pair(spec, half, candidate)
        if witness is None:
            return None
        ok, _ = verify_symplectic(spec, witness)
        return witness if ok else None
    f_basis = closed_two_classes(spec)
    e_basis = nilpotent_submodule(spec, 1)
    if not e_basis:
        return None
    for f_point in product(range(half), repeat=len(f_basis)):
        two_form = Multivector.zero(spec.n, 2)
        for c, u in zip(f_point, f_basis):
            if c:
                two_form = two_form + u.scaled(c)
        f_power = wedge_power(two_form, half - 1)
        if f_power.is_zero():
            continue
        for e_point in product(range(2), repeat=len(e_basis)):
            one_form = Multivector.zero(spec.n, 1)
            for c, u in zip(e_point, e_basis):
                if c:
                    one_form = one_form + u.scaled(c)
            pairing = top_coefficient(f_power.wedge(one_form))
            if not pairing.is_zero():
                witness = _witness_from_pair(
                    spec, half, CoSymplecticPair(two_form, one_form)
                )
                assert witness is not None
                return witness
    return None


def _pair_is_admissible(spec: AlmostAbelianSpec, pair: CoSymplecticPair) -> bool:
    """Membership checks for supplied candidates: invariant classes, closed 2-form."""
    from .monodromy import in_submodule_span

    return (
        in_submodule_span(nilpotent_submodule(spec, 2), pair.two_form)
        and in_submodule_span(nilpotent_submodule(spec, 1), pair.one_form)
        and derivation_apply(nilpotent_log(spec), pair.two_form).is_zero()
    )


def _witness_from_pair(spec, half, pair: CoSymplecticPair):
    f_power = wedge_power(pair.two_form, half - 1)
    pairing = top_coefficient(f_power.wedge(pair.one_form))
    if pairing.is_zero():
        return None
    omega = assemble_omega(spec, pair)
    omega_top = top_coefficient(wedge_power(omega, half))
    return SymplecticWitness(pair, omega, pairing, omega_top)


def verify_symplectic(spec: AlmostAbelianSpec, witness: SymplecticWitness):
    """Recheck a witness independently of how it was found.

    Certificates: closedness in the modified Lie algebra complex (via the
    full modified action, not the shift kernel used by the search), the
    fiber pairing, the top power of omega recomputed on the total space,
    and the expansion identity omega^N = N * pairing.
    """
    half = _half_dim(spec)
    pair = witness.pair
    differential = ce_differential(spec, CEElement(pair.two_form, pair.one_form))
    closed = differential.is_zero()
    pairing = top_coefficient(wedge_power(pair.two_form, half - 1).wedge(pair.one_form))
    omega_top = top_coefficient(wedge_power(assemble_omega(spec, pair), half))
    fiber_top_power = wedge_power(pair.two_form, half)  # zero for degree reasons
    certificates = {
        "ce_closed": closed,
        "pairing": str(pairing),
        "omega_top": str(omega_top),
        "fiber_power_vanishes": fiber_top_power.is_zero(),
        "expansion_identity": omega_top == pairing * half,
        "omega_matches_pair": assemble_omega(spec, pair) == witness.omega,
    }
    ok = (
        closed
        and not pairing.is_zero()
        and not omega_top.is_zero()
        and certificates["expansion_identity"]
        and certificates["omega_matches_pair"]
        and pairing == witness.pairing
        and omega_top == witness.omega_top
    )
    return ok, certificates
