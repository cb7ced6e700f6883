"""Problem instances: block normal form of the twist action plus resonance data.

An instance describes a semidirect product of the real line with an
n-dimensional abelian algebra.  The acting derivation is given in real
block normal form: real Jordan blocks (eigenvalue ``re``, shift above
the diagonal) and complex blocks (real normal form of ``re + i*beta``
repeated ``size`` times, occupying two real coordinates per cell).

Imaginary parts are recorded in units of one full turn of the lattice
generator, split into a rational part ``im_resonant`` and a symbolic
part ``im_symbolic``; with that normalization the monodromy fixes a
generator exactly when ``re`` and ``im_symbolic`` vanish and
``im_resonant`` is an integer, so the fixed-point test is integer
arithmetic.

Shift convention: when the twist maps the (j+1)-th block coordinate to
the j-th, the induced map on the dual basis sends ``a_j`` to ``a_(j+1)``
and the last dual coordinate of the block to zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisError, SchemaError
from .exterior import LinearEndo, Multivector
from .scalars import ScalarLC, parse_rational, parse_scalar

_TOP_FIELDS = {"n", "symbols", "lattice_label", "blocks"}
_BLOCK_FIELDS = {"kind", "size", "re", "im_resonant", "im_symbolic"}


@dataclass(frozen=True)
class Weight:
    """Eigenvalue datum of a dual generator (or a sum of them)."""

    re: ScalarLC
    im_resonant: Fraction
    im_symbolic: ScalarLC

    @classmethod
    def zero(cls) -> Weight:
        return cls(ScalarLC(0), Fraction(0), ScalarLC(0))

    def __add__(self, other: Weight) -> Weight:
        return Weight(
            self.re + other.re,
            self.im_resonant + other.im_resonant,
            self.im_symbolic + other.im_symbolic,
        )

    def conjugate(self) -> Weight:
        return Weight(self.re, -self.im_resonant, -self.im_symbolic)


@dataclass(frozen=True)
class Block:
    kind: str  # "real" | "complex"
    size: int
    re: ScalarLC
    im_resonant: Fraction = Fraction(0)
    im_symbolic: ScalarLC = ScalarLC(0)

    @property
    def real_dim(self) -> int:
        return self.size if self.kind == "real" else 2 * self.size


@dataclass(frozen=True)
class AlmostAbelianSpec:
    n: int
    blocks: tuple[Block, ...]
    lattice_label: str = ""
    symbols: tuple[str, ...] = ()

    @property
    def total_dim(self) -> int:
        return self.n + 1

    def block_starts(self) -> list[int]:
        """First coordinate index (1-based) of each block."""
        starts, at = [], 1
        for block in self.blocks:
            starts.append(at)
            at += block.real_dim
        return starts

    def coordinate_re(self, i: int) -> ScalarLC:
        """Real eigenvalue part attached to coordinate ``i``."""
        for block, start in zip(self.blocks, self.block_starts()):
            if start <= i < start + block.real_dim:
                return block.re
        raise ValueError(f"coordinate {i} out of range 1..{self.n}")


@dataclass(frozen=True)
class SlotWeight:
    """One complexified dual generator: weight, conjugate partner, real expansion."""

    slot: int
    weight: Weight
    conj: int
    real_part: Multivector
    imag_part: Multivector


def parse_spec(text: str) -> AlmostAbelianSpec:
    """Parse and validate a JSON instance document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("input document must be a JSON object")
    unknown = set(doc) - _TOP_FIELDS
    if unknown:
        raise SchemaError(f"unknown field(s) {sorted(unknown)} in input document")

    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("field 'n' must be a positive integer")
    symbols = doc.get("symbols", [])
    if not isinstance(symbols, list) or not all(isinstance(s, str) for s in symbols):
        raise SchemaError("field 'symbols' must be a list of names")
    if len(set(symbols)) != len(symbols):
        raise SchemaError("field 'symbols' contains duplicates")
    lattice_label = doc.get("lattice_label", "")
    if not isinstance(lattice_label, str):
        raise SchemaError("field 'lattice_label' must be a string")
    raw_blocks = doc.get("blocks")
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise SchemaError("field 'blocks' must be a nonempty list")

    blocks = []
    for pos, raw in enumerate(raw_blocks):
        where = f"blocks[{pos}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{where} must be an object")
        unknown = set(raw) - _BLOCK_FIELDS
        if unknown:
            raise SchemaError(f"unknown field(s) {sorted(unknown)} in {where}")
        kind = raw.get("kind")
        if kind not in ("real", "complex"):
            raise SchemaError(f"{where}.kind must be 'real' or 'complex'")
        size = raw.get("size")
        if not isinstance(size, int) or size < 1:
            raise SchemaError(f"{where}.size must be a positive integer")
        try:
            re = parse_scalar(raw.get("re", "0"), symbols)
        except ValueError as exc:
            raise SchemaError(f"{where}.re: {exc}") from exc
        try:
            im_resonant = parse_rational(raw.get("im_resonant", "0"))
        except ValueError as exc:
            raise SchemaError(f"{where}.im_resonant: {exc}") from exc
        try:
            im_symbolic = parse_scalar(raw.get("im_symbolic", "0"), symbols)
        except ValueError as exc:
            raise SchemaError(f"{where}.im_symbolic: {exc}") from exc
        if im_symbolic.const != 0:
            raise SchemaError(f"{where}.im_symbolic must have zero rational part")
        if kind == "real" and (im_resonant != 0 or not im_symbolic.is_zero()):
            raise SchemaError(f"{where}: a real block cannot carry imaginary parts")
        blocks.append(Block(kind, size, re, im_resonant, im_symbolic))

    covered = sum(b.real_dim for b in blocks)
    if covered != n:
        raise SchemaError(f"blocks cover dimension {covered} but n = {n}")
    return AlmostAbelianSpec(n, tuple(blocks), lattice_label, tuple(symbols))


def load_spec(path) -> AlmostAbelianSpec:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_spec(handle.read())


def emit_spec(spec: AlmostAbelianSpec) -> str:
    """Canonical JSON form; ``parse_spec(emit_spec(s)) == s``."""
    doc = {
        "n": spec.n,
        "symbols": list(spec.symbols),
        "lattice_label": spec.lattice_label,
        "blocks": [
            {
                "kind": b.kind,
                "size": b.size,
                "re": str(b.re),
                "im_resonant": str(b.im_resonant),
                "im_symbolic": str(b.im_symbolic),
            }
            for b in spec.blocks
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1)


def generator_weights(spec: AlmostAbelianSpec) -> list[SlotWeight]:
    """Complexified dual generators with weights and conjugation pairing.

    A real-block coordinate is its own complexification.  A complex cell
    occupying real coordinates (p, p+1) yields the pair
    ``z = a_p - i*a_(p+1)`` (weight ``re + i*im``) in slot p and its
    conjugate in slot p+1.
    """
    out: list[SlotWeight] = []
    n = spec.n
    for block, start in zip(spec.blocks, spec.block_starts()):
        if block.kind == "real":
            w = Weight(block.re, Fraction(0), ScalarLC(0))
            for i in range(start, start + block.size):
                out.append(
                    SlotWeight(i, w, i, Multivector.basis_one_form(n, i), Multivector.zero(n, 1))
                )
        else:
            w = Weight(block.re, block.im_resonant, block.im_symbolic)
            for cell in range(block.size):
                p = start + 2 * cell
                re_part = Multivector.basis_one_form(n, p)
                im_part = Multivector.basis_one_form(n, p + 1)
                out.append(SlotWeight(p, w, p + 1, re_part, -im_part))
                out.append(SlotWeight(p + 1, w.conjugate(), p, re_part, im_part))
    return out


def real_trace(spec: AlmostAbelianSpec) -> ScalarLC:
    """Sum of the real eigenvalue parts over all n coordinates."""
    total = ScalarLC(0)
    for i in range(1, spec.n + 1):
        total = total + spec.coordinate_re(i)
    return total


def modification_hypothesis_holds(spec: AlmostAbelianSpec) -> bool:
    """Every rotation block is an integer resonance with no symbolic part."""
    return all(
        b.kind == "real" or (b.im_symbolic.is_zero() and b.im_resonant.denominator == 1)
        for b in spec.blocks
    )


def nilpotent_log(spec: AlmostAbelianSpec) -> LinearEndo:
    """Dual action of the nilpotent (shift) part of the twist derivation."""
    n = spec.n
    images = [Multivector.zero(n, 1) for _ in range(n)]
    for block, start in zip(spec.blocks, spec.block_starts()):
        if block.kind == "real":
            for j in range(block.size - 1):
                images[start + j - 1] = Multivector.basis_one_form(n, start + j + 1)
        else:
            for cell in range(block.size - 1):
                p = start + 2 * cell
                images[p - 1] = Multivector.basis_one_form(n, p + 2)
                images[p] = Multivector.basis_one_form(n, p + 3)
    return LinearEndo(n, images)


def modified_matrix(spec: AlmostAbelianSpec) -> LinearEndo:
    """Dual action of the completely solvable replacement of the derivation.

    Real blocks are kept; complex blocks must be integer resonances with
    no symbolic imaginary part, and are replaced by their real scalar
    part (plus the paired shift), dropping the rotations.
    """
    for pos, block in enumerate(spec.blocks):
        if block.kind != "complex":
            continue
        if not block.im_symbolic.is_zero() or block.im_resonant.denominator != 1:
            raise HypothesisError(
                "modification hypothesis not satisfied: "
                f"blocks[{pos}] has non-integer or symbolic imaginary resonance"
            )
    n = spec.n
    shift = nilpotent_log(spec)
    images = []
    for i in range(1, n + 1):
        images.append(Multivector.basis_one_form(n, i).scaled(spec.coordinate_re(i)) + shift.image_of(i))
    return LinearEndo(n, images)
