import itertools

import numpy as np
import pytest

from symfactor.errors import InvalidBlock, InvalidSpec, NotApplicable, NotJordanBlock
from symfactor.generate import pair_chain_spec
from symfactor.linalg import Inertia, general_eigenvalues, inertia, symmetry_defect
from symfactor.spectrum import (
    ComplexBlock,
    RealBlock,
    SpectrumSpec,
    assemble,
    exchange_inertia,
    exchange_matrix,
    jordan_block_complex,
    jordan_block_real,
    jsym_inertia_real_spectrum,
    symmetric_block_factors,
)

A, B, C, D = 1.0, 2.0, -0.5, 1.5


def pair_chain_matrices():
    J = np.array(
        [
            [C, -D, 0, 0, 0, 0],
            [D, C, 0, 0, 0, 0],
            [0, 0, A, -B, 1, 0],
            [0, 0, B, A, 0, 1],
            [0, 0, 0, 0, A, -B],
            [0, 0, 0, 0, B, A],
        ]
    )
    Y = np.zeros((6, 6))
    Y[:2, :2] = [[0, 1], [1, 0]]
    Y[2:, 2:] = np.fliplr(np.eye(4))
    Jsym = np.array(
        [
            [D, C, 0, 0, 0, 0],
            [C, -D, 0, 0, 0, 0],
            [0, 0, 0, 0, B, A],
            [0, 0, 0, 0, A, -B],
            [0, 0, B, A, 0, 1],
            [0, 0, A, -B, 1, 0],
        ]
    )
    return J, Y, Jsym


class TestBlocks:
    @pytest.mark.parametrize(
        "lam, ell, expected",
        [
            (5, 1, [[5]]),
            (2, 3, [[2, 1, 0], [0, 2, 1], [0, 0, 2]]),
            (-1, 2, [[-1, 1], [0, -1]]),
        ],
    )
    def test_real(self, lam, ell, expected):
        assert np.array_equal(jordan_block_real(lam, ell), expected)

    def test_complex(self):
        assert np.array_equal(jordan_block_complex(C, D, 1), [[C, -D], [D, C]])
        assert np.array_equal(
            jordan_block_complex(A, B, 2),
            [[A, -B, 1, 0], [B, A, 0, 1], [0, 0, A, -B], [0, 0, B, A]],
        )
        assert np.array_equal(jordan_block_complex(0, 1, 1), [[0, -1], [1, 0]])

    @pytest.mark.parametrize("call", [lambda: jordan_block_real(1.0, 0), lambda: jordan_block_complex(1.0, 0.0, 1),
                                      lambda: jordan_block_complex(1.0, -1.0, 2), lambda: jordan_block_complex(1, 1, 0)])
    def test_invalid(self, call):
        with pytest.raises(InvalidBlock):
            call()


class TestExchange:
    def test_small(self):
        assert np.array_equal(exchange_matrix(1), [[1]])
        assert np.array_equal(exchange_matrix(2), [[0, 1], [1, 0]])
        assert np.array_equal(exchange_matrix(4), np.fliplr(np.eye(4)))

    @pytest.mark.parametrize("k, expected", [(1, (1, 0, 0)), (3, (2, 1, 0)), (4, (2, 2, 0))])
    def test_inertia_examples(self, k, expected):
        assert exchange_inertia(k) == expected

    @pytest.mark.parametrize("k", range(1, 13))
    def test_inertia_formula_vs_numeric(self, k):
        E = exchange_matrix(k)
        assert exchange_inertia(k) == inertia(E)
        assert np.array_equal(E @ E, np.eye(k))


class TestBlockFactors:
    def test_real(self):
        lam = 3.0
        Y, Js = symmetric_block_factors(jordan_block_real(lam, 2))
        assert np.array_equal(Y, [[0, 1], [1, 0]])
        assert np.array_equal(Js, [[0, lam], [lam, 1]])

    def test_complex_single(self):
        Y, Js = symmetric_block_factors(jordan_block_complex(A, B, 1))
        assert np.array_equal(Y, [[0, 1], [1, 0]])
        assert np.array_equal(Js, [[B, A], [A, -B]])

    def test_complex_chain(self):
        Y, Js = symmetric_block_factors(jordan_block_complex(A, B, 2))
        assert np.array_equal(Y, np.fliplr(np.eye(4)))
        assert np.array_equal(Js, [[0, 0, B, A], [0, 0, A, -B], [B, A, 0, 1], [A, -B, 1, 0]])
        assert np.array_equal(Y @ Js, jordan_block_complex(A, B, 2))

    def test_rejects_non_persymmetric(self):
        with pytest.raises(NotJordanBlock):
            symmetric_block_factors(np.array([[1.0, 2.0], [0.0, 3.0]]))


class TestSpec:
    def test_dimension(self):
        spec = SpectrumSpec.from_lists(real=[(2.0, 3), (-1.0, 1)], complex=[(0.0, 1.0, 2)])
        assert spec.m == 8
        assert not spec.is_real
        assert len(spec.real_blocks) == 2 and len(spec.complex_blocks) == 1

    @pytest.mark.parametrize(
        "blocks",
        [(), (RealBlock(0.0),), (RealBlock(1.0, 0),), (ComplexBlock(1.0, 0.0),), (RealBlock(np.nan),)],
    )
    def test_invalid(self, blocks):
        with pytest.raises(InvalidSpec):
            SpectrumSpec(blocks)

    def test_eigenvalues(self):
        e = pair_chain_spec(A, B, C, D).eigenvalues()
        assert e.s == 0 and e.m == 6
        assert e.complex_pairs == ((C, D), (A, B), (A, B))


class TestAssemble:
    def test_pair_chain(self):
        asm = assemble(pair_chain_spec(A, B, C, D))
        J, Y, Jsym = pair_chain_matrices()
        assert np.array_equal(asm.J, J)
        assert np.array_equal(asm.Y, Y)
        assert np.array_equal(asm.Jsym, Jsym)
        assert asm.inertia_Y == (3, 3, 0)
        assert asm.inertia_Jsym == (3, 3, 0)

    def test_all_simple(self):
        lam = [3.0, -1.0, 2.0]
        asm = assemble(SpectrumSpec.from_lists(real=[(x, 1) for x in lam]))
        assert np.array_equal(asm.J, np.diag(lam))
        assert np.array_equal(asm.Y, np.eye(3))
        assert np.array_equal(asm.Jsym, asm.J)

    @pytest.mark.parametrize("m", [2, 4, 6, 8])
    def test_single_chain(self, m):
        asm = assemble(SpectrumSpec((RealBlock(2.0, m),)))
        assert asm.inertia_Y == (m // 2, m // 2, 0)

    def test_properties_exhaustive(self):
        # every block layout up to m = 6 with small integer parameters
        shapes = [RealBlock(2.0, 1), RealBlock(-3.0, 2), RealBlock(1.0, 3), ComplexBlock(1.0, 2.0, 1),
                  ComplexBlock(-2.0, 1.0, 2)]
        for r in range(1, 4):
            for combo in itertools.product(shapes, repeat=r):
                spec = SpectrumSpec(combo)
                if spec.m > 12:
                    continue
                asm = assemble(spec)
                assert np.array_equal(asm.Y @ asm.Jsym, asm.J)
                assert symmetry_defect(asm.Y) == 0.0
                assert symmetry_defect(asm.Jsym) == 0.0
                assert inertia(asm.Y) == asm.inertia_Y
                assert inertia(asm.Jsym) == asm.inertia_Jsym
                if spec.is_real:
                    assert jsym_inertia_real_spectrum(spec) == inertia(asm.Jsym)

    def test_eigenvalues_reproduced(self):
        spec = SpectrumSpec((RealBlock(2.0, 3), ComplexBlock(0.5, 1.5, 2), RealBlock(-1.0, 1)))
        got = np.sort_complex(general_eigenvalues(assemble(spec).J).values())
        ref = np.sort_complex(spec.eigenvalues().values())
        assert np.allclose(got, ref, atol=1e-6)


class TestJsymInertia:
    @pytest.mark.parametrize(
        "blocks, expected",
        [
            ([(2.0, 3)], (2, 1, 0)),
            ([(-2.0, 3)], (1, 2, 0)),
            ([(5.0, 1), (-5.0, 1)], (1, 1, 0)),
        ],
    )
    def test_examples(self, blocks, expected):
        assert jsym_inertia_real_spectrum(SpectrumSpec.from_lists(real=blocks)) == Inertia(*expected)

    def test_complex_rejected(self):
        with pytest.raises(NotApplicable):
            jsym_inertia_real_spectrum(SpectrumSpec((ComplexBlock(0.0, 1.0),)))
