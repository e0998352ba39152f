"""Closed-form presentations and structures built on the tensor square.

For a group G the group nu(G) is generated by two commuting copies of G
subject to the crossed conjugation relations between them; the subgroup
generated by the cross commutators is the non-abelian tensor square
G (x) G, the quotient by the diagonal elements g (x) g is the exterior
square, and the kernel of the commutator map out of the exterior square
is the Schur multiplier.

For the metacyclic groups in scope (odd m) everything is explicit: the
tensor square is abelian on the four generators u, v, w, z subject to
the integer relation matrix of :func:`tensor_relation_rows`, nu(G) has
the fixed 43-relator presentation of :func:`nu_presentation`, the
exterior square is cyclic of order gcd(m, E, s) with
E = 1 + r + ... + r**(n-1), and the Schur multiplier is the cyclic
quotient of that by t = m / gcd(m, r - 1).

Relator words are tuples of (generator_index, exponent) pairs; factors
with exponent 0 are dropped from the word but the relator count of a
schema never changes.  E is kept as an exact integer in words and rows;
reducing it would not change any row lattice but the exact value is
what the group words carry, and it keeps every relator non-empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import numth
from .abgrp import AbelianStructure, quotient_structure
from .errors import FormulaInconsistencyError, TensqError, ValidationError
from .metagrp import DerivedInvariants, GroupParams, derived_invariants

Word = tuple[tuple[int, int], ...]

NU_GENERATORS = ("x1", "y1", "x2", "y2", "u", "v", "w", "z")
TENSOR_GENERATORS = ("u", "v", "w", "z")


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator names plus relator words."""

    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]


@dataclass(frozen=True)
class TensorDescriptor:
    """Exponent table of the tensor-square relation matrix.

    e_u, e_v, e_w, e_z are the generator order exponents; s, n and
    big_e = 1 + r + ... + r**(n-1) appear in the cross relations.
    """

    e_u: int
    e_v: int
    e_w: int
    e_z: int
    s: int
    n: int
    big_e: int


@dataclass(frozen=True)
class SectionReport:
    """The abelian sections attached to one parameter tuple."""

    tensor: AbelianStructure
    exterior: AbelianStructure
    schur: AbelianStructure
    delta_order: int
    nu_order_predicted: int


def _word(*factors: tuple[int, int]) -> Word:
    return tuple((g, e) for g, e in factors if e)


def _comm(i: int, j: int) -> Word:
    # [g_i, g_j] = g_i^-1 g_j^-1 g_i g_j
    return ((i, -1), (j, -1), (i, 1), (j, 1))


def _cyclic(order: int) -> AbelianStructure:
    if order < 1:
        raise TensqError(f"cyclic group of order {order} requested")
    return AbelianStructure(() if order == 1 else (order,))


def tensor_descriptor(params: GroupParams, inv: DerivedInvariants | None = None) -> TensorDescriptor:
    """Exponents of the tensor-square relations for one tuple.

    Geometric sums are reduced modulo the gcd of the remaining terms of
    their gcd chain, so nothing grows beyond machine-friendly size;
    big_e alone is exact.
    """
    if inv is None:
        inv = derived_invariants(params)
    m, n, r, s = params.m, params.n, params.r, params.s
    sk = s * inv.k
    part_u = gcd(m, sk)
    e_u = gcd(part_u, numth.geom_sum_mod(r, inv.o_b, part_u))
    e_v = gcd(m, r - 1)
    e_w = n * gcd(inv.k, r - 1)
    part_z = gcd(inv.oprime_a, inv.oprime_b, sk)
    e_z = gcd(part_z, numth.geom_sum_mod(r, inv.oprime_b, part_z))
    return TensorDescriptor(
        e_u=e_u,
        e_v=e_v,
        e_w=e_w,
        e_z=e_z,
        s=s,
        n=n,
        big_e=numth.geom_sum(r, n),
    )


def tensor_relation_rows(desc: TensorDescriptor) -> list[list[int]]:
    """Integer relation matrix of G (x) G on the columns u, v, w, z.

    Four order rows, then the cross relations u^s = w^n = (u^-1 z)^s
    and u^E = v^s = (u^-1 z)^E written additively, two rows per chained
    equality.
    """
    s, n, big_e = desc.s, desc.n, desc.big_e
    return [
        [desc.e_u, 0, 0, 0],
        [0, desc.e_v, 0, 0],
        [0, 0, desc.e_w, 0],
        [0, 0, 0, desc.e_z],
        [s, 0, -n, 0],
        [s, 0, n, -s],
        [big_e, -s, 0, 0],
        [big_e, s, 0, -big_e],
    ]


def tensor_structure(params: GroupParams, inv: DerivedInvariants | None = None) -> tuple[TensorDescriptor, AbelianStructure]:
    """Exponent table and canonical invariant factors of G (x) G."""
    desc = tensor_descriptor(params, inv)
    structure, _ = quotient_structure(tensor_relation_rows(desc), len(TENSOR_GENERATORS))
    return desc, structure


def exterior_order(params: GroupParams) -> int:
    """Order of the exterior square: gcd(m, 1 + r + ... + r**(n-1), s)."""
    partial = gcd(params.m, params.s)
    return gcd(partial, numth.geom_sum_mod(params.r, params.n, partial))


def exterior_and_schur(params: GroupParams, inv: DerivedInvariants | None = None) -> SectionReport:
    """Tensor, exterior and multiplier structures with order identities.

    The multiplier order is |exterior| / t with t = m / gcd(m, r - 1);
    that quotient is exact for every tuple in scope, but both divisions
    here are still guarded so a bad closed form fails loudly instead of
    returning a wrong report.
    """
    if inv is None:
        inv = derived_invariants(params)
    _, tensor = tensor_structure(params, inv)
    ext = exterior_order(params)
    where = f"(m, n, r, s) = ({params.m}, {params.n}, {params.r}, {params.s})"
    if ext % inv.t_derived:
        raise FormulaInconsistencyError(
            f"exterior order {ext} not divisible by t = {inv.t_derived} for {where}"
        )
    if tensor.order % ext:
        raise FormulaInconsistencyError(
            f"tensor order {tensor.order} not divisible by exterior order {ext} for {where}"
        )
    return SectionReport(
        tensor=tensor,
        exterior=_cyclic(ext),
        schur=_cyclic(ext // inv.t_derived),
        delta_order=tensor.order // ext,
        nu_order_predicted=params.order**2 * tensor.order,
    )


def upsilon_order_bounds(params: GroupParams, inv: DerivedInvariants | None = None) -> dict[str, int]:
    """Proved order bounds for the four tensor-square generators."""
    desc = tensor_descriptor(params, inv)
    return {"u": desc.e_u, "v": desc.e_v, "w": desc.e_w, "z": desc.e_z}


def nu_presentation(params: GroupParams, inv: DerivedInvariants | None = None) -> Presentation:
    """The fixed 43-relator presentation of nu(G) on eight generators.

    Generator order is x1, y1, x2, y2, u, v, w, z where x/y are the two
    commuting copies of a/b, u = [x1, y2], v = [x1, x2], w = [y1, y2]
    and [y1, x2] = u^-1 z.  The relator schema never changes shape;
    only the integer exponents depend on (m, n, r, s).
    """
    desc = tensor_descriptor(params, inv)
    m, n, r, s = params.m, params.n, params.r, params.s
    big_e = desc.big_e
    x1, y1, x2, y2, u, v, w, z = range(8)
    relators = [
        _word((x1, m)),
        _word((x2, m)),
        _word((y1, n), (x1, -s)),
        _word((y2, n), (x2, -s)),
        _word(*_comm(x1, y1), (x1, -(r - 1))),
        _word(*_comm(x2, y2), (x2, -(r - 1))),
        _word(*_comm(x1, y2), (u, -1)),
        _word(*_comm(x1, x2), (v, -1)),
        _word(*_comm(y1, y2), (w, -1)),
        _word(*_comm(y1, x2), (z, -1), (u, 1)),
        _word((v, desc.e_v)),
        _word((w, desc.e_w)),
        _word((u, desc.e_u)),
        _word((z, desc.e_z)),
        _word((u, s), (w, -n)),
        _word((w, n), (u, s), (z, -s)),
        _word((v, s), (u, -big_e)),
        _word((v, s), (u, big_e), (z, -big_e)),
        _word(*_comm(u, x1)),
        _word(*_comm(u, x2)),
        _word((y1, -1), (u, 1), (y1, 1), (u, -r)),
        _word((y2, -1), (u, 1), (y2, 1), (u, -r)),
    ]
    for c in (v, w, z):
        for g in range(8):
            if g != c:
                relators.append(_word(*_comm(c, g)))
    for rel in relators:
        if not rel:
            raise TensqError("relator collapsed to the empty word")
    return Presentation(
        name=f"nu(g({m},{n};{r},{s}))",
        generators=NU_GENERATORS,
        relators=tuple(relators),
    )


def tensor_presentation(params: GroupParams, inv: DerivedInvariants | None = None) -> Presentation:
    """Abelian presentation of G (x) G on the generators u, v, w, z."""
    desc = tensor_descriptor(params, inv)
    n, s, big_e = desc.n, desc.s, desc.big_e
    u, v, w, z = range(4)
    relators = [
        _word((u, desc.e_u)),
        _word((v, desc.e_v)),
        _word((w, desc.e_w)),
        _word((z, desc.e_z)),
        _word((u, s), (w, -n)),
        _word((w, n), (u, s), (z, -s)),
        _word((u, big_e), (v, -s)),
        _word((v, s), (u, big_e), (z, -big_e)),
        _word(*_comm(u, v)),
        _word(*_comm(u, w)),
        _word(*_comm(u, z)),
        _word(*_comm(v, w)),
        _word(*_comm(v, z)),
        _word(*_comm(w, z)),
    ]
    for rel in relators:
        if not rel:
            raise TensqError("relator collapsed to the empty word")
    return Presentation(
        name=f"g({params.m},{params.n};{params.r},{params.s}) tensor square",
        generators=TENSOR_GENERATORS,
        relators=tuple(relators),
    )


def split_specialization(params: GroupParams) -> SectionReport:
    """Cross-check for the split family r = m - 1, s = 0, n even.

    Here the closed forms collapse to textbook values: the tensor
    square is C_gcd(m,n) x C_lcm(m,n), the exterior square is C_m and
    the multiplier is trivial.  The general-path report is computed and
    compared against those values; any disagreement raises.
    """
    m, n, r, s = params.m, params.n, params.r, params.s
    problems = []
    if r != m - 1:
        problems.append(f"split specialization needs r = m - 1, got r = {r}")
    if s != 0:
        problems.append(f"split specialization needs s = 0, got s = {s}")
    if n % 2:
        problems.append(f"split specialization needs even n, got n = {n}")
    if problems:
        raise ValidationError(problems)
    report = exterior_and_schur(params)
    d = gcd(m, n)
    expected_tensor = AbelianStructure(tuple(f for f in (d, m * n // d) if f > 1))
    mismatches = []
    if report.tensor != expected_tensor:
        mismatches.append(f"tensor {report.tensor} != split form {expected_tensor}")
    if report.exterior != _cyclic(m):
        mismatches.append(f"exterior {report.exterior} != split form C{m}")
    if report.schur != _cyclic(1):
        mismatches.append(f"multiplier {report.schur} != trivial split form")
    if mismatches:
        raise FormulaInconsistencyError("; ".join(mismatches))
    return report


def presentation_to_text(pres: Presentation) -> str:
    """Serialize to the line-oriented text format.

    Header line, then the generator list, then one relator per line with
    every factor written name^exponent and factors joined by " * ".
    """
    lines = ["tensq-pres v1", "gens: " + " ".join(pres.generators)]
    for rel in pres.relators:
        if not rel:
            raise TensqError("cannot serialize an empty relator")
        lines.append(" * ".join(f"{pres.generators[g]}^{e}" for g, e in rel))
    return "\n".join(lines) + "\n"


def presentation_to_gap(pres: Presentation) -> str:
    """Serialize to a GAP input fragment defining G := F / rels."""
    gens = ", ".join(f'"{g}"' for g in pres.generators)
    body = []
    for rel in pres.relators:
        if not rel:
            raise TensqError("cannot serialize an empty relator")
        body.append(
            "  "
            + "*".join(
                pres.generators[g] if e == 1 else f"{pres.generators[g]}^{e}"
                for g, e in rel
            )
        )
    lines = [
        f"F := FreeGroup( {gens} );;",
        "AssignGeneratorVariables( F );;",
        "rels := [",
        ",\n".join(body),
        "];;",
        "G := F / rels;;",
    ]
    return "\n".join(lines) + "\n"
