"""Family constructions, named graphs, extraction, and closed-form quotients."""

from fractions import Fraction

import pytest

from qbounds.families import (
    FamilyParams,
    UnsupportedRegimeError,
    extract_h,
    family_char_poly,
    family_quotient,
    family_spectrum_fillers,
    make_family,
    make_named,
)
from qbounds.graphs import Graph, degree_sequence, is_bipartite, is_connected, upper_triangle_pairs
from qbounds.linalg import char_poly_exact, eval_poly
from qbounds.partitions import (
    EQUITABLE,
    DegenerateCaseError,
    VertexPartition,
    classify_partition,
    quotient,
    quotient_spectrum,
)
from qbounds.spectra import MatrixKind, PreconditionError, spectrum_of


def canonical_partition(params):
    p, r, s = params.p, params.r, params.s
    blocks = [(0,), (1,)]
    start = 2
    for size in (p, r, s):
        if size:
            blocks.append(tuple(range(start, start + size)))
        start += size
    return VertexPartition(params.n, blocks)


def regime_grid(limit=4):
    for adjacent in (False, True):
        for p in range(0, limit + 1):
            for r in range(1, limit + 1):
                for s in range(0, min(r, limit) + 1):
                    params = FamilyParams(p, r, s, adjacent)
                    try:
                        family_quotient(params)
                    except UnsupportedRegimeError:
                        continue
                    yield params


class TestFamilyParams:
    def test_normalization(self):
        with pytest.raises(PreconditionError):
            FamilyParams(1, 0, 2, False)

    def test_negative(self):
        with pytest.raises(PreconditionError):
            FamilyParams(-1, 0, 0, True)

    def test_n_and_label(self):
        params = FamilyParams(1, 2, 1, False)
        assert params.n == 6
        assert params.label == "H(1,2,1)"
        assert FamilyParams(0, 3, 2, True).label == "G(0,3,2)"


class TestMakeFamily:
    def test_h100_is_p3(self):
        g = make_family(FamilyParams(1, 0, 0, False))
        assert g == Graph(3, [(0, 2), (1, 2)])

    def test_g100_is_k3(self):
        g = make_family(FamilyParams(1, 0, 0, True))
        assert g == Graph(3, [(0, 1), (0, 2), (1, 2)])

    def test_hp00_is_complete_bipartite(self):
        for p in (1, 2, 4):
            g = make_family(FamilyParams(p, 0, 0, False))
            assert g.edge_count == 2 * p
            assert is_bipartite(g)
            want = tuple(sorted([p, p] + [2] * p, reverse=True))
            assert degree_sequence(g).values == want

    def test_h110_is_path4(self):
        g = make_family(FamilyParams(1, 1, 0, False))
        assert sorted(g.degrees) == [1, 1, 2, 2]
        assert is_connected(g) and g.edge_count == 3

    def test_g110_is_paw(self):
        g = make_family(FamilyParams(1, 1, 0, True))
        assert sorted(g.degrees) == [1, 2, 2, 3]
        assert g.edge_count == 4

    def test_degrees_match_parameters(self):
        for params in regime_grid(3):
            g = make_family(params)
            bump = 1 if params.adjacent else 0
            assert g.degrees[0] == params.p + params.r + bump
            assert g.degrees[1] == params.p + params.s + bump

    def test_h_family_bipartite(self):
        for params in regime_grid(3):
            if not params.adjacent:
                assert is_bipartite(make_family(params))

    def test_h000_degenerate(self):
        with pytest.raises(DegenerateCaseError):
            make_family(FamilyParams(0, 0, 0, False))

    def test_g000_is_k2(self):
        assert make_family(FamilyParams(0, 0, 0, True)) == Graph(2, [(0, 1)])


class TestMakeNamed:
    def test_star(self):
        assert degree_sequence(make_named("star", 4)).values == (3, 1, 1, 1)

    def test_star_plus_edge(self):
        g = make_named("star_plus_edge", 5)
        assert degree_sequence(g).values == (4, 2, 2, 1, 1)

    def test_complete_split(self):
        g = make_named("complete_split", 2)
        assert g.n == 4 and g.edge_count == 5

    def test_complete_bipartite(self):
        g = make_named("complete_bipartite", 2, 3)
        assert g.n == 5 and g.edge_count == 6
        assert is_bipartite(g)

    def test_path_cycle_complete(self):
        assert make_named("path", 4).edge_count == 3
        assert make_named("cycle", 5).edge_count == 5
        assert make_named("complete", 4).edge_count == 6

    def test_union_with_isolated(self):
        g = make_named("union_with_isolated", make_named("complete", 3), 2)
        assert g.n == 5 and g.edge_count == 3
        assert not is_connected(g)

    def test_bad_name(self):
        with pytest.raises(ValueError):
            make_named("mystery", 3)

    def test_bad_sizes(self):
        with pytest.raises(PreconditionError):
            make_named("cycle", 2)
        with pytest.raises(PreconditionError):
            make_named("star_plus_edge", 2)
        with pytest.raises(PreconditionError):
            make_named("complete_split", 0)


class TestExtractH:
    def test_k3(self):
        h, params = extract_h(make_named("complete", 3))
        assert params == FamilyParams(1, 0, 0, True)
        assert h.edge_count == 3

    def test_star(self):
        for n in (4, 6):
            h, params = extract_h(make_named("star", n))
            assert params == FamilyParams(0, n - 2, 0, True)
            assert h.n == n

    def test_c5(self):
        h, params = extract_h(make_named("cycle", 5))
        assert params.n <= 5
        dh = degree_sequence(h)
        assert dh.d1 + dh.d2 == 4

    def test_preserves_top_degrees_n5(self):
        pairs = upper_triangle_pairs(5)
        for mask in range(1 << len(pairs)):
            g = Graph(5, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            if not is_connected(g):
                continue
            ds = degree_sequence(g)
            h, params = extract_h(g)
            dh = degree_sequence(h)
            assert dh.d1 + dh.d2 == ds.d1 + ds.d2, g.sorted_edges

    def test_too_small(self):
        with pytest.raises(PreconditionError):
            extract_h(make_named("complete", 2))


class TestFamilyQuotient:
    def test_h111(self):
        m = family_quotient(FamilyParams(1, 1, 1, False))
        assert [[int(x) for x in row] for row in m.entries] == [
            [2, 0, 1, 1, 0],
            [0, 2, 1, 0, 1],
            [1, 1, 2, 0, 0],
            [1, 0, 0, 1, 0],
            [0, 1, 0, 0, 1],
        ]

    def test_g011(self):
        m = family_quotient(FamilyParams(0, 1, 1, True))
        assert [[int(x) for x in row] for row in m.entries] == [
            [2, 1, 1, 0],
            [1, 2, 0, 1],
            [1, 0, 1, 0],
            [0, 1, 0, 1],
        ]

    def test_h110(self):
        m = family_quotient(FamilyParams(1, 1, 0, False))
        assert [[int(x) for x in row] for row in m.entries] == [
            [2, 0, 1, 1],
            [0, 1, 1, 0],
            [1, 1, 2, 0],
            [1, 0, 0, 1],
        ]

    def test_unsupported_regimes(self):
        for params in [
            FamilyParams(2, 0, 0, True),   # adjacent, no printed matrix
            FamilyParams(0, 2, 1, False),  # non-adjacent needs p >= 1
            FamilyParams(0, 0, 0, True),
            FamilyParams(3, 0, 0, False),  # r = 0 outside both H regimes
        ]:
            with pytest.raises(UnsupportedRegimeError):
                family_quotient(params)

    def test_matches_partition_quotient(self):
        for params in regime_grid(3):
            g = make_family(params)
            part = canonical_partition(params)
            assert classify_partition(g, part) == EQUITABLE
            qm = quotient(g, MatrixKind.SignlessLaplacian, part)
            assert qm.b.entries == family_quotient(params).entries


class TestFamilyCharPoly:
    def test_transcription_identity_grid(self):
        for params in regime_grid(6):
            f = family_char_poly(params)
            assert f.coeffs == char_poly_exact(family_quotient(params)).coeffs, params

    def test_g5_constant_term(self):
        for p in (1, 2, 5):
            f = family_char_poly(FamilyParams(p, 2, 1, True))
            assert f.coeffs[0] == -4 * p

    def test_g4_divisible_by_x(self):
        f = family_char_poly(FamilyParams(0, 3, 2, True))
        assert f.coeffs[0] == 0
        assert eval_poly(f, 0) == 0

    def test_h4_example_value(self):
        # s=0 family at x = d2 = p: value is r * p^2
        for p, r in [(1, 2), (2, 3), (3, 1)]:
            f = family_char_poly(FamilyParams(p, r, 0, False))
            assert eval_poly(f, p) == r * p * p

    def test_unsupported(self):
        with pytest.raises(UnsupportedRegimeError):
            family_char_poly(FamilyParams(2, 0, 0, True))


class TestSpectrumAssembly:
    def test_full_spectrum_recovered(self):
        for params in regime_grid(3):
            g = make_family(params)
            part = canonical_partition(params)
            inner = quotient_spectrum(
                quotient(g, MatrixKind.SignlessLaplacian, part)
            )
            assembled = sorted(
                list(inner.values) + list(family_spectrum_fillers(params)),
                reverse=True,
            )
            full = spectrum_of(g, MatrixKind.SignlessLaplacian)
            assert len(assembled) == len(full)
            for a, b in zip(assembled, full.values):
                assert abs(a - b) <= 2e-9, (params, assembled, full.values)
