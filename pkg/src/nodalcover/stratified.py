"""Frobenius-divided twist data: constant sequences and their morphisms.

A representation yields the constant sequence whose every layer is the same
twist datum; the base-relative Frobenius fixes the coefficient ring, which
is what makes the literal constancy correct.  Morphism computations depend
on the transport mode: base-relative transport is the identity (so chains
are plain twisted morphisms over K), while field-relative transport raises
entries to the p-th power, pinning eventually-constant chains down to the
prime field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .descent import MeromorphicCocycle, datum_from_rep, hom_cocycle
from .errors import ModeMismatch
from .field import FunctionField, MatrixK
from .groups import product_subgroup
from .reps import ContinuousRep, rep_tensor

S_RELATIVE = "S"
K_RELATIVE = "K"


@dataclass(frozen=True)
class FDividedDatum:
    """Constant sequence of twist data plus a Frobenius transport mode."""

    generator: MeromorphicCocycle
    mode: str = S_RELATIVE
    depth: int = 5

    def __post_init__(self):
        if self.mode not in (S_RELATIVE, K_RELATIVE):
            raise ModeMismatch(f"unknown transport mode {self.mode!r}")

    def layer(self, i: int) -> MeromorphicCocycle:
        if i < 0:
            raise ValueError("layers are indexed by nonnegative integers")
        return self.generator

    @property
    def rank(self) -> int:
        return self.generator.rank

    @property
    def field(self) -> FunctionField:
        return self.generator.field


def fdiv_from_rep(rep: ContinuousRep, mode: str = S_RELATIVE,
                  depth: int = 5) -> FDividedDatum:
    return FDividedDatum(datum_from_rep(rep), mode, depth)


def frobenius_transport(M: MatrixK, mode: str) -> MatrixK:
    """Transport of a constant matrix across one Frobenius layer."""
    if mode == S_RELATIVE:
        return M
    if mode == K_RELATIVE:
        return M.frobenius()
    raise ModeMismatch(f"unknown transport mode {mode!r}")


@dataclass(frozen=True)
class FdivHomBasis:
    mode: str
    depth: int
    scalar_field: str
    basis: tuple[MatrixK, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def hom_fdiv(d1: FDividedDatum, d2: FDividedDatum, max_len: int = 4) -> FdivHomBasis:
    """Morphisms of constant sequences compatible with the transport.

    Base-relative mode: chains are constant over K, so the answer is the
    twisted-morphism space itself.  Field-relative mode: a chain that is
    eventually constant must consist of one Frobenius-fixed morphism (the
    entries solve x = x^p along the chain), an F_p-vector space computed
    exactly from the echelonized morphism basis.
    """
    if d1.mode != d2.mode:
        raise ModeMismatch("cannot mix transport modes")
    if d1.generator.scope != d2.generator.scope:
        raise ModeMismatch("twist data over different deck scopes")
    basis = hom_cocycle(d1.generator, d2.generator, max_len=max_len)
    if d1.mode == S_RELATIVE:
        return FdivHomBasis(S_RELATIVE, d1.depth, "K", tuple(basis))
    field = d1.field
    if field.p is None:
        raise ModeMismatch("field-relative transport needs prime characteristic")
    if not basis:
        return FdivHomBasis(K_RELATIVE, d1.depth, f"F_{field.p}", ())
    fixed = _frobenius_fixed_combinations(field, basis)
    return FdivHomBasis(K_RELATIVE, d1.depth, f"F_{field.p}", tuple(fixed))


def _frobenius_fixed_combinations(field: FunctionField,
                                  basis: list[MatrixK]) -> list[MatrixK]:
    """All f = sum c_j B_j with entrywise f^p = f.

    The reduced basis has unit pivots, so the pivot coordinates force every
    coefficient into the prime field; what remains is the mod-p linear system
    sum c_j (B_j^p - B_j) = 0, assembled by clearing denominators entrywise.
    """
    p = field.p
    diffs = [B.frobenius() - B for B in basis]
    m = len(basis)
    rows: list[list[int]] = []
    shape = (basis[0].rows, basis[0].cols)
    for i in range(shape[0]):
        for j in range(shape[1]):
            entries = [D.entries[i][j] for D in diffs]
            if all(e.is_zero() for e in entries):
                continue
            common = field.one()
            for e in entries:
                if not e.is_zero():
                    common = common * field.rf(e.den)
            polys = []
            max_deg = 0
            for e in entries:
                cleared = e * common
                if cleared.den != (field.cone(),):
                    raise ModeMismatch("denominator clearing failed")
                polys.append(cleared.num)
                max_deg = max(max_deg, len(cleared.num))
            for k in range(max_deg):
                row = [int(poly[k]) if k < len(poly) else 0 for poly in polys]
                if any(row):
                    rows.append(row)
    kernel = _mod_p_kernel(p, rows, m)
    out = []
    for coeffs in kernel:
        acc = None
        for c, B in zip(coeffs, basis):
            if c == 0:
                continue
            term = B.scale(field.from_int(c))
            acc = term if acc is None else acc + term
        if acc is not None:
            out.append(acc)
    return out


def _mod_p_kernel(p: int, rows: list[list[int]], nvars: int) -> list[tuple[int, ...]]:
    """Reduced kernel basis of an integer matrix modulo p."""
    a = [[x % p for x in row] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(nvars):
        piv = next((r for r in range(rank, len(a)) if a[r][col] % p), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [0] * nvars
        vec[fcol] = 1
        for r, col in enumerate(pivots):
            vec[col] = (-a[r][fcol]) % p
        basis.append(tuple(vec))
    return basis


@dataclass(frozen=True)
class TensorCertificate:
    generators_checked: int
    passed: bool


def tensor_fdiv(d1: FDividedDatum, d2: FDividedDatum) -> tuple[FDividedDatum, TensorCertificate]:
    """Layerwise Kronecker product, certified against the tensor of the
    underlying representations on every generator."""
    if d1.mode != d2.mode:
        raise ModeMismatch("cannot mix transport modes")
    r1, r2 = d1.generator.rep, d2.generator.rep
    tensor_rep = rep_tensor(r1, r2)
    out = FDividedDatum(MeromorphicCocycle(tensor_rep, d1.generator.scope),
                        d1.mode, max(d1.depth, d2.depth))
    checked = 0
    sig = tensor_rep.sig
    r = sig.r
    for i in range(r):
        lhs = out.generator.letter_twist((i, 1))
        rhs = d1.generator.letter_twist((i, 1)).kron(d2.generator.letter_twist((i, 1)))
        if lhs != rhs:
            return out, TensorCertificate(checked, False)
        checked += 1
    for j in range(sig.num_factors):
        G, H = r1.factor_groups[j], r2.factor_groups[j]
        pairs = tuple(zip(G.generators, H.generators))
        _, elems = product_subgroup(G, H, pairs)
        refined = sig.factor(j)
        for idx, (g, h) in enumerate(elems):
            lhs = out.generator.letter_twist((r + j, idx)) if idx != refined.identity \
                else out.generator.rep.identity_matrix()
            m1 = d1.generator.rep.factor_homs[j][G.inverse[g]]
            m2 = d2.generator.rep.factor_homs[j][H.inverse[h]]
            if lhs != m1.kron(m2):
                return out, TensorCertificate(checked, False)
            checked += 1
    return out, TensorCertificate(checked, True)
