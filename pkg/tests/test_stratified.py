"""Divided sequences: constancy, transport modes, morphism chains, tensor."""

import pytest

from nodalcover.descent import datum_from_rep, hom_cocycle
from nodalcover.errors import ModeMismatch
from nodalcover.field import MatrixK
from nodalcover.groups import FPWord, cyclic_group
from nodalcover.reps import ContinuousRep, trivial_rep
from nodalcover.stratified import (
    K_RELATIVE,
    S_RELATIVE,
    fdiv_from_rep,
    frobenius_transport,
    hom_fdiv,
    tensor_fdiv,
)

from helpers import F3, QQ, rank1_rep, rank2_rep, sig_with_pres

Z2 = cyclic_group(2)


def unit_datum(mode=S_RELATIVE, depth=5):
    sig, pres = sig_with_pres(1, (Z2,))
    return fdiv_from_rep(trivial_rep(pres, F3, (Z2,)), mode, depth)


# -- constancy ------------------------------------------------------------------

def test_layers_are_literally_constant():
    d = fdiv_from_rep(rank2_rep())
    assert d.layer(0) is d.layer(1) is d.layer(7)
    with pytest.raises(ValueError):
        d.layer(-1)


def test_trivial_rep_gives_unit_datum():
    d = unit_datum()
    assert d.rank == 1
    assert d.generator.twist(FPWord(d.generator.sig, ())).is_identity()


# -- transport ---------------------------------------------------------------------

def test_transport_modes_on_identity():
    I = MatrixK.identity(F3, 2)
    assert frobenius_transport(I, S_RELATIVE) == I
    assert frobenius_transport(I, K_RELATIVE) == I


def test_transport_k_mode_is_entrywise_power():
    M = MatrixK.from_rows(F3, [["t"]])
    assert frobenius_transport(M, K_RELATIVE) == MatrixK.from_rows(F3, [["t^3"]])
    assert frobenius_transport(M, S_RELATIVE) == M


def test_transport_multiplicative():
    A = MatrixK.from_rows(F3, [["t", "1"], ["0", "1"]])
    B = MatrixK.from_rows(F3, [["1", "t^2"], ["2", "1"]])
    for mode in (S_RELATIVE, K_RELATIVE):
        assert frobenius_transport(A * B, mode) == \
            frobenius_transport(A, mode) * frobenius_transport(B, mode)


def test_unknown_mode_rejected():
    with pytest.raises(ModeMismatch):
        fdiv_from_rep(rank1_rep(), "X")
    with pytest.raises(ModeMismatch):
        frobenius_transport(MatrixK.identity(F3, 1), "X")


# -- morphism chains -----------------------------------------------------------------

def test_s_relative_homs_equal_plain_twisted_homs():
    for rep in (rank1_rep(), rank2_rep()):
        d = fdiv_from_rep(rep, S_RELATIVE)
        hb = hom_fdiv(d, d)
        assert hb.scalar_field == "K"
        assert hb.dimension == len(hom_cocycle(datum_from_rep(rep), datum_from_rep(rep)))


def test_k_relative_unit_end_is_prime_field():
    for depth in range(1, 6):
        hb = hom_fdiv(unit_datum(K_RELATIVE, depth), unit_datum(K_RELATIVE, depth))
        assert hb.dimension == 1
        assert hb.scalar_field == "F_3"
        entry = hb.basis[0].entries[0][0]
        assert entry.den == (1,) and len(entry.num) <= 1  # a constant


def test_k_relative_solutions_are_frobenius_fixed_intertwiners():
    rep = rank2_rep()
    d = fdiv_from_rep(rep, K_RELATIVE)
    hb = hom_fdiv(d, d)
    gens = [datum_from_rep(rep).letter_twist((0, 1)),
            datum_from_rep(rep).letter_twist((1, 1))]
    for f in hb.basis:
        assert f.frobenius() == f
        for A in gens:
            assert A * f == f * A


def test_k_relative_distinct_rank_one_data_have_no_homs():
    sig, pres = sig_with_pres(1, (Z2,))
    one = MatrixK.identity(F3, 1)
    a = ContinuousRep.build(pres, F3, [MatrixK.from_rows(F3, [["t"]])], (Z2,),
                            ((one, one),))
    b = ContinuousRep.build(pres, F3, [MatrixK.from_rows(F3, [["t + 1"]])], (Z2,),
                            ((one, one),))
    hb = hom_fdiv(fdiv_from_rep(a, K_RELATIVE), fdiv_from_rep(b, K_RELATIVE))
    assert hb.dimension == 0


def test_mode_mismatch_rejected():
    with pytest.raises(ModeMismatch):
        hom_fdiv(unit_datum(S_RELATIVE), unit_datum(K_RELATIVE))


def test_qq_mode_k_relative_rejected():
    sig, pres = sig_with_pres(1, (Z2,))
    unit_qq = fdiv_from_rep(trivial_rep(pres, QQ, (Z2,)), K_RELATIVE)
    with pytest.raises(ModeMismatch):
        hom_fdiv(unit_qq, unit_qq)


# -- tensor ---------------------------------------------------------------------------

def test_tensor_with_unit():
    d = fdiv_from_rep(rank2_rep())
    u = fdiv_from_rep(trivial_rep(rank2_rep().presentation, F3, (Z2,)))
    out, cert = tensor_fdiv(d, u)
    assert cert.passed
    assert out.rank == 2


def test_tensor_ranks_multiply_and_certificate():
    d1 = fdiv_from_rep(rank2_rep())
    d2 = fdiv_from_rep(rank1_rep())
    out, cert = tensor_fdiv(d1, d2)
    assert out.rank == 2
    assert cert.passed and cert.generators_checked >= 2


def test_tensor_associative_rank():
    d1 = fdiv_from_rep(rank1_rep())
    a, _ = tensor_fdiv(*[d1, d1])
    b, _ = tensor_fdiv(a, d1)
    c, _ = tensor_fdiv(d1, a)
    assert b.rank == c.rank == 1
    # rank-one data multiply commutatively: the twists agree on generators
    assert b.generator.letter_twist((0, 1)) == c.generator.letter_twist((0, 1))
