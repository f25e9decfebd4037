"""Constant-coefficient descent twists and their integral models.

A deck transformation is right concatenation by a group word u; the stored
assignment twists through the inversion convention, H(u) = rho(u)^{-1}, so
that the composition law reads H(v) H(u) = H(u v): an anti-homomorphism in
the word, which is exactly the cocycle condition once pullback acts
trivially on constant matrices.  The identity word maps to the identity
matrix.  Scopes distinguish data over the whole deck group from data over
the kernel of the direct-product quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covering import ComponentIndex, component_action
from .errors import (
    CocycleViolation,
    EquivarianceViolation,
    KernelNotTrivial,
    ScopeMismatch,
    SignatureMismatch,
    TransportConflict,
)
from .field import INFINITY, FunctionField, LatticeK, MatrixK, lattice_hermite
from .groups import (
    FiniteGroup,
    FPSignature,
    FPWord,
    _alpha_tuple,
    _concat,
    _inv_letters,
    iter_words_raw,
)
from .reps import ContinuousRep, solve_intertwining

FULL = "full"
KERNEL = "kernel"


@dataclass(frozen=True)
class MeromorphicCocycle:
    """Twist data attached to a representation, over the chosen deck scope."""

    rep: ContinuousRep
    scope: str = FULL

    def __post_init__(self):
        object.__setattr__(self, "_letter_cache", {})
        object.__setattr__(self, "_sig_cache", self.rep.sig)

    @property
    def sig(self) -> FPSignature:
        return self._sig_cache

    @property
    def field(self) -> FunctionField:
        return self.rep.field

    @property
    def rank(self) -> int:
        return self.rep.rank

    def twist(self, w: FPWord) -> MatrixK:
        """H(w) = rho(w)^{-1}: the matrix glued along the deck word w."""
        return self.rep.eval(w.inv())

    def letter_twist(self, letter: tuple[int, int]) -> MatrixK:
        cached = self._letter_cache.get(letter)
        if cached is not None:
            return cached
        fid, v = letter
        r = self.sig.r
        if fid < r:
            out = self.rep.z_images[fid] ** (-v)
        else:
            G = self.sig.factor(fid - r)
            out = self.rep.factor_homs[fid - r][G.inverse[v]]
        self._letter_cache[letter] = out
        return out

    def twist_map(self, max_len: int, kernel_only: bool = False) -> dict:
        """Twists of every enumerated word, built one letter at a time."""
        ident = self.sig.identity_tuple()
        start = self.rep.identity_matrix()

        def step(carry, letter):
            return self.letter_twist(letter) * carry

        out = {}
        for letters, al, carry in iter_words_raw(
                self.sig, max_len, carry_init=start, carry_step=step,
                sorted_grades=False):
            if kernel_only and al != ident:
                continue
            out[letters] = carry
        return out

    def restricted(self) -> "MeromorphicCocycle":
        return MeromorphicCocycle(self.rep, KERNEL)


class CorruptedCocycle:
    """Test double: a cocycle with the twist overridden on one word."""

    def __init__(self, base: MeromorphicCocycle, word: FPWord, matrix: MatrixK):
        self.base = base
        self.override_word = word
        self.override_matrix = matrix
        self.scope = base.scope
        self.rep = base.rep

    @property
    def sig(self):
        return self.base.sig

    @property
    def field(self):
        return self.base.field

    @property
    def rank(self):
        return self.base.rank

    def twist(self, w: FPWord) -> MatrixK:
        if w.letters == self.override_word.letters:
            return self.override_matrix
        return self.base.twist(w)

    def twist_map(self, max_len: int, kernel_only: bool = False) -> dict:
        out = self.base.twist_map(max_len, kernel_only)
        if self.override_word.letters in out:
            out[self.override_word.letters] = self.override_matrix
        return out


def datum_from_rep(rep: ContinuousRep) -> MeromorphicCocycle:
    """Twist datum over the full deck group derived from a representation."""
    return MeromorphicCocycle(rep, FULL)


# ---------------------------------------------------------------------------
# cocycle verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CocycleCertificate:
    scope: str
    max_len: int
    strategy: str
    pairs_checked: int
    identity_ok: bool
    passed: bool
    witness: tuple[str, str] | None


def check_cocycle(c, max_len: int, pair_budget: int = 1_000_000,
                  strict: bool = False) -> CocycleCertificate:
    """Verify H(v) H(u) = H(u v) over enumerated word pairs.

    All pairs are checked when the square of the word count fits the budget;
    otherwise every pair whose summed generator length stays within max_len.
    The certificate records the bound and strategy, and carries the first
    counterexample on failure.
    """
    sig = c.sig
    kernel_only = c.scope == KERNEL
    identity_ok = c.twist(FPWord(sig, ())).is_identity()
    ident = sig.identity_tuple()
    r = sig.r
    total = sum(1 for letters, al, _ in iter_words_raw(sig, max_len, sorted_grades=False)
                if not kernel_only or al == ident)
    all_pairs = total * total <= pair_budget
    # products of two words within the bound stay within twice the bound
    full_range = c.twist_map(2 * max_len if all_pairs else max_len, kernel_only)
    words_by_len: dict[int, list] = {}
    for letters in full_range:
        glen = sum(abs(v) if fid < r else 1 for fid, v in letters)
        if glen <= max_len:
            words_by_len.setdefault(glen, []).append(letters)
    words = [w for ln in sorted(words_by_len) for w in words_by_len[ln]]
    witness = None
    pairs = 0
    if all_pairs:
        strategy = "all-pairs"
        candidates = ((u, v) for u in words for v in words)
    else:
        strategy = "length-sum-bounded"

        def gen():
            for lu in sorted(words_by_len):
                for lv in sorted(words_by_len):
                    if lu + lv > max_len:
                        break
                    for u in words_by_len[lu]:
                        for v in words_by_len[lv]:
                            yield (u, v)
        candidates = gen()
    passed = identity_ok
    for u, v in candidates:
        uv = _concat(sig, u, v)
        if kernel_only and _alpha_tuple(sig, uv) != ident:
            continue
        huv = full_range.get(uv)
        if huv is None:
            continue
        pairs += 1
        if full_range[v] * full_range[u] != huv:
            passed = False
            witness = (str(FPWord(sig, u)), str(FPWord(sig, v)))
            break
    cert = CocycleCertificate(c.scope, max_len, strategy, pairs, identity_ok,
                              passed, witness)
    if strict and not passed:
        raise CocycleViolation("cocycle law failed", witness=witness)
    return cert


def hom_cocycle(c1, c2, max_len: int = 4) -> list[MatrixK]:
    """Basis of twisted morphisms: f with twist2(w) f = f twist1(w).

    Over the full deck group the conditions for the generator words suffice
    (both sides are anti-homomorphisms); over the kernel scope the system is
    assembled from all enumerated kernel words up to the bound.
    """
    if c1.scope != c2.scope:
        raise ScopeMismatch("twist data over different deck scopes")
    if c1.field != c2.field:
        raise ScopeMismatch("twist data over different coefficient fields")
    sig = c1.sig
    if sig != c2.sig:
        raise ScopeMismatch("twist data over different signatures")
    pairs: list[tuple[MatrixK, MatrixK]] = []
    if c1.scope == FULL:
        r = sig.r
        letters = [(i, 1) for i in range(r)]
        for j in range(sig.num_factors):
            G = sig.factor(j)
            letters.extend((r + j, g) for g in G.generators if g != G.identity)
        for letter in letters:
            w = FPWord(sig, (letter,))
            pairs.append((c1.twist(w), c2.twist(w)))
    else:
        m1 = c1.twist_map(max_len, kernel_only=True)
        m2 = c2.twist_map(max_len, kernel_only=True)
        for letters in m1:
            if letters:
                pairs.append((m1[letters], m2[letters]))
    return solve_intertwining(c1.field, c1.rank, c2.rank, pairs)


# ---------------------------------------------------------------------------
# integral models by transport along the free action
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeAssignment:
    """Lattice at each enumerated component, transported from one standard
    lattice per component orbit along the free kernel action."""

    cocycle: MeromorphicCocycle
    max_len: int
    orbit_reps: tuple[ComponentIndex, ...]
    components: tuple[ComponentIndex, ...]

    def transport_word(self, c: ComponentIndex) -> FPWord:
        """The unique kernel word carrying the orbit representative to c."""
        sig = self.cocycle.sig
        al = _alpha_tuple(sig, c.rep.letters)
        key = al[:c.j] + al[c.j + 1:]
        rep0 = None
        for c0 in self.orbit_reps:
            if c0.j != c.j:
                continue
            al0 = _alpha_tuple(sig, c0.rep.letters)
            if al0[:c.j] + al0[c.j + 1:] == key:
                rep0 = (c0, al0)
                break
        if rep0 is None:
            raise TransportConflict("component lies outside the enumerated orbits")
        c0, al0 = rep0
        G = sig.factor(c.j)
        g = G.table[al0[c.j]][G.inverse[al[c.j]]]
        letters = _concat(sig, _concat(
            sig, _inv_letters(sig, c0.rep.letters),
            ((sig.r + c.j, g),) if g != G.identity else ()), c.rep.letters)
        w = FPWord(sig, letters)
        if _alpha_tuple(sig, letters) != sig.identity_tuple():
            raise TransportConflict("transport word escaped the kernel")
        return w

    def lattice_of(self, c: ComponentIndex) -> LatticeK:
        return lattice_hermite(self.cocycle.twist(self.transport_word(c)))

    def integral_twist(self, w: FPWord, c: ComponentIndex) -> MatrixK:
        """Basis change B(c w)^{-1} H(w) B(c); integral with integral inverse."""
        src = self.lattice_of(c).basis
        dst = self.lattice_of(component_action(w, c)).basis
        return dst.inverse() * self.cocycle.twist(w) * src


def is_integral_matrix(M: MatrixK) -> bool:
    return all(e.valuation() >= 0 for row in M.entries for e in row)


def is_unimodular_matrix(M: MatrixK) -> bool:
    return is_integral_matrix(M) and M.det().valuation() == 0


def integralize(c: MeromorphicCocycle, max_len: int = 4,
                verify_words_len: int | None = None) -> LatticeAssignment:
    """Pick the standard lattice on one representative per component orbit and
    transport it along the kernel action; freeness makes this conflict-free.

    The returned assignment is verified: transporting by any enumerated kernel
    word maps each orbit representative's lattice onto the lattice stored at
    the moved component, through an integral matrix with integral inverse.
    """
    if c.scope != KERNEL:
        raise ScopeMismatch("integral transport works over the kernel scope")
    sig = c.sig
    ident = sig.identity_tuple()
    comps: list[ComponentIndex] = []
    orbit_reps: dict[tuple, ComponentIndex] = {}
    for letters, al, _ in iter_words_raw(sig, max_len):
        for j in range(sig.num_factors):
            if letters and letters[0][0] == sig.r + j:
                continue
            ci = ComponentIndex(j, FPWord(sig, letters))
            comps.append(ci)
            key = (j, al[:j] + al[j + 1:])
            orbit_reps.setdefault(key, ci)
    assignment = LatticeAssignment(c, max_len, tuple(orbit_reps.values()),
                                   tuple(comps))
    bound = verify_words_len if verify_words_len is not None else min(max_len, 3)
    kernel_words = [FPWord(sig, letters)
                    for letters, al, _ in iter_words_raw(sig, bound, sorted_grades=False)
                    if letters and al == ident]
    for c0 in assignment.orbit_reps:
        base = assignment.lattice_of(c0)
        for w in kernel_words:
            moved = component_action(w, c0)
            k = assignment.integral_twist(w, c0)
            if not is_unimodular_matrix(k):
                raise TransportConflict(
                    f"transport by {w} from {c0} is not an integral isomorphism")
            if lattice_hermite(c.twist(w) * base.basis) != assignment.lattice_of(moved):
                raise TransportConflict(
                    f"transported lattice disagrees at {moved}")
    return assignment


def det_valuation_conserved(assignment: LatticeAssignment, w: FPWord,
                            c: ComponentIndex) -> bool:
    """v(det H(w)) equals the diagonal-exponent shift between the lattices at
    c and at c w."""
    dv = assignment.cocycle.twist(w).det().valuation()
    if dv == INFINITY:
        return False
    before = sum(assignment.lattice_of(c).diagonal_exponents)
    after = sum(assignment.lattice_of(component_action(w, c)).diagonal_exponents)
    return int(dv) == after - before


# ---------------------------------------------------------------------------
# conjugation equivariance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivarianceCertificate:
    word: str
    max_len: int
    words_checked: int
    witness: MatrixK
    passed: bool


def conj_equivariance_check(c, g: FPWord, max_len: int = 4) -> EquivarianceCertificate:
    """The conjugated assignment u -> H(g^{-1} u g) is again a kernel cocycle,
    intertwined with the original by H(g): checked as the matrix identity
    H(g^{-1} u g) H(g) = H(g) H(u) over enumerated kernel words."""
    sig = c.sig
    ident = sig.identity_tuple()
    hg = c.twist(g)
    g_letters = g.letters
    g_inv = _inv_letters(sig, g_letters)
    checked = 0
    for letters, al, _ in iter_words_raw(sig, max_len, sorted_grades=False):
        if al != ident:
            continue
        conj = _concat(sig, _concat(sig, g_inv, letters), g_letters)
        lhs = c.twist(FPWord(sig, conj)) * hg
        rhs = hg * c.twist(FPWord(sig, letters))
        if lhs != rhs:
            raise EquivarianceViolation(
                f"conjugation square failed at u={FPWord(sig, letters)}, g={g}")
        checked += 1
    return EquivarianceCertificate(str(g), max_len, checked, hg, True)


# ---------------------------------------------------------------------------
# finite quotients of the twist data
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteCocycle:
    """Twist data indexed by a finite group, with the same anti-composition
    law as the word-indexed data it came from."""

    group: FiniteGroup
    field: FunctionField
    rank: int
    mats: tuple[MatrixK, ...]
    words_checked: int = 0
    max_len: int = 0

    def check_law(self) -> bool:
        G = self.group
        if not self.mats[G.identity].is_identity():
            return False
        for a in range(G.order):
            for b in range(G.order):
                if self.mats[b] * self.mats[a] != self.mats[G.table[a][b]]:
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, FiniteCocycle) and self.group.table == other.group.table
                and self.mats == other.mats)


def descend_inflation(c, fq, max_len: int = 6) -> FiniteCocycle:
    """Collapse an inflated datum to its finite quotient: H must be constant
    on every fiber of the quotient map, with fibers over the identity acting
    trivially; every enumerated word is checked, which more than covers the
    two-preimage sampling the construction requires."""
    sig = c.sig
    if fq.sig != sig:
        raise SignatureMismatch("quotient data does not match the twist datum")
    G = fq.group
    start = (G.identity, c.rep.identity_matrix())
    slots: list[MatrixK | None] = [None] * G.order
    checked = 0

    # thread the quotient image and the twist together: the twist composes
    # on the left (anti-law), the quotient image on the right.
    def step(carry, letter):
        qv, mat = carry
        return (G.table[qv][fq.q_letter(letter)], c.letter_twist(letter) * mat)

    for letters, _, (qv, mat) in iter_words_raw(
            sig, max_len, carry_init=start, carry_step=step, sorted_grades=False):
        checked += 1
        if slots[qv] is None:
            slots[qv] = mat
        elif slots[qv] != mat:
            raise KernelNotTrivial(
                f"twist is not constant on the fiber over element {G.labels[qv]}: "
                "the datum does not arise by inflation")
    missing = [G.labels[i] for i, m in enumerate(slots) if m is None]
    if missing:
        raise KernelNotTrivial(
            f"enumeration bound too small: no preimage found for {missing}")
    if not slots[G.identity].is_identity():
        raise KernelNotTrivial("kernel words do not act trivially")
    fin = FiniteCocycle(G, c.field, c.rank, tuple(slots), checked, max_len)
    if not fin.check_law():
        raise KernelNotTrivial("collapsed data violates the finite composition law")
    return fin
