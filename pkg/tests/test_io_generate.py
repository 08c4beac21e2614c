import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symfactor.errors import InvalidSpec, ParseError
from symfactor.generate import ENSEMBLES, generate, random_similarity, random_spectrum
from symfactor.linalg import general_eigenvalues
from symfactor.matrixio import parse_matrix, read_matrix, read_spec, render_matrix, spec_from_dict, spec_to_dict
from symfactor.spectrum import ComplexBlock, RealBlock, SpectrumSpec, assemble

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_matrix_round_trip_bitwise(r, c, data):
    vals = data.draw(st.lists(finite, min_size=r * c, max_size=r * c))
    a = np.array(vals).reshape(r, c)
    b = parse_matrix(render_matrix(a))
    assert a.tobytes() == b.tobytes()


def test_render_format():
    assert render_matrix([[1.0, -0.5], [0.1, 3.0]]) == "2 2\n1 -0.5\n0.10000000000000001 3\n"


@pytest.mark.parametrize(
    "text",
    ["", "2\n1 2\n", "2 2\n1 2\n", "1 2\n1 x\n", "1 1\nnan\n", "1 1\ninf\n", "a b\n1\n", "1 2\n1 2 3\n"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        read_matrix(tmp_path / "nope.txt")


class TestSpecJson:
    def test_round_trip(self):
        spec = SpectrumSpec((RealBlock(2.0, 3), ComplexBlock(1.0, 2.0, 2), RealBlock(-1.5)))
        d = spec_to_dict(spec)
        assert d["schema"] == "v1" and d["m"] == 8
        assert spec_from_dict(json.loads(json.dumps(d))) == spec

    def test_split_form(self):
        spec = spec_from_dict({"real_blocks": [{"lambda": 2.0, "ell": 2}], "complex_blocks": [{"a": 0, "b": 1}]})
        assert spec == SpectrumSpec((RealBlock(2.0, 2), ComplexBlock(0.0, 1.0, 1)))

    @pytest.mark.parametrize(
        "data",
        [
            [],
            {"schema": "v2", "blocks": []},
            {"blocks": [{"kind": "odd"}]},
            {"blocks": [{"kind": "real"}]},
            {"blocks": [{"kind": "real", "lambda": "2"}]},
            {"blocks": [{"kind": "real", "lambda": 2, "ell": 1.5}]},
        ],
    )
    def test_parse_errors(self, data):
        with pytest.raises(ParseError):
            spec_from_dict(data)

    @pytest.mark.parametrize(
        "data",
        [
            {"blocks": []},
            {"blocks": [{"kind": "real", "lambda": 0.0}]},
            {"blocks": [{"kind": "complex", "a": 1.0, "b": -1.0}]},
            {"m": 3, "blocks": [{"kind": "real", "lambda": 1.0}]},
        ],
    )
    def test_invalid_spec(self, data):
        with pytest.raises(InvalidSpec):
            spec_from_dict(data)

    def test_bad_json(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text("{")
        with pytest.raises(ParseError):
            read_spec(p)


class TestGenerate:
    @pytest.mark.parametrize("kind", ENSEMBLES)
    def test_deterministic(self, kind):
        m = 6 if kind == "pair-chain" else 4
        a, b = generate(kind, m, 7), generate(kind, m, 7)
        assert a.B.tobytes() == b.B.tobytes() and a.spec == b.spec

    def test_all_complex(self):
        g = generate("all-complex", 4, 7)
        assert g.spec.eigenvalues().s == 0
        assert general_eigenvalues(g.B).s == 0

    def test_single_chain(self):
        g = generate("example2", 4)
        assert g.spec == SpectrumSpec((RealBlock(2.0, 4),))

    def test_pair_chain(self):
        g = generate("pair-chain", 6)
        assert np.array_equal(g.B, assemble(g.spec).J)
        assert [b.ell for b in g.spec.blocks] == [1, 2]

    @pytest.mark.parametrize(
        "kind, m, kw",
        [("all-complex", 3, {}), ("mixed", 2, {}), ("mixed", 4, {"n_pairs": 3}), ("all-real", 3, {"n_neg": 4}),
         ("nope", 3, {}), ("pair-chain", 4, {}), ("defective", 1, {})],
    )
    def test_inconsistent(self, kind, m, kw):
        with pytest.raises(InvalidSpec):
            generate(kind, m, 0, **kw)

    def test_counts(self):
        for seed in range(30):
            g = generate("mixed", 7, seed, n_pairs=2, n_neg=1)
            e = general_eigenvalues(g.B)
            assert len(e.complex_pairs) == 2
            assert sum(x < 0 for x in e.real) == 1 and e.s == 3

    def test_defective_has_chain(self):
        for seed in range(30):
            g = generate("defective", 2 + seed % 7, seed)
            assert max(b.ell for b in g.spec.blocks) >= 2
            assert g.spec.m == g.B.shape[0]
            assert general_eigenvalues(g.B).s == g.spec.eigenvalues().s

    def test_similarity_conditioning(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            assert np.linalg.cond(random_similarity(6, rng)) <= 4.0 + 1e-9

    def test_spectrum_gaps(self):
        spec = random_spectrum(np.random.default_rng(1), 2, 3, 3)
        reals = sorted(b.lam for b in spec.real_blocks)
        assert spec.m == 10 and len(reals) == 6
        assert all(0.5 <= abs(x) <= 2.0 for x in reals)
