import pytest

from kconn.abelian import (
    FgAbelianGroup,
    IntegerMatrix,
    cokernel_group,
    left_nullspace,
)
from kconn.kmods import lu_bzp_presentation, realize_degree, summand_presentation
from kconn.kunneth import (
    SummandResolution,
    decomposition_crosscheck,
    kunneth_smash_group,
    tensor_degree,
    tor1_degree,
    tor_closed_form,
    tor_summand_group,
    tensor_part,
    tor_part,
    verify_bu_decomposition,
    wedge_count,
)

C = FgAbelianGroup.cyclic
trivial = FgAbelianGroup.trivial


def elem(p, k):
    return FgAbelianGroup.from_cyclic_orders(0, [p] * k)


# --- tensor ------------------------------------------------------------------

def test_tensor_examples():
    lu2 = lu_bzp_presentation(2, 20)
    assert tensor_degree(lu2, lu2, 6) == elem(2, 3)
    lu3 = lu_bzp_presentation(3, 20)
    assert tensor_degree(lu3, lu3, 4) == elem(3, 2)


def test_tensor_odd_degrees_trivial():
    lu2 = lu_bzp_presentation(2, 30)
    lu3 = lu_bzp_presentation(3, 30)
    for n in range(1, 25, 2):
        assert tensor_degree(lu2, lu2, n) == trivial()
        assert tensor_degree(lu3, lu3, n) == trivial()


def test_tensor_dimension_count():
    # even degree 2m carries an elementary group of dimension m (one class
    # for each splitting of 2m into two odd generator degrees)
    for p in [2, 3]:
        lu = lu_bzp_presentation(p, 40)
        for m in range(1, 16):
            expected = elem(p, m)
            assert tensor_degree(lu, lu, 2 * m) == expected, (p, m)


def test_tensor_ring_mismatch_rejected():
    lu2 = lu_bzp_presentation(2, 20)
    lu3 = lu_bzp_presentation(3, 20)
    with pytest.raises(ValueError):
        tensor_degree(lu2, lu3, 4)


# --- the resolution ------------------------------------------------------------

def free_slice(res, stage_degrees, n, d):
    """Basis (j, k) of the degree-n piece of the free module on generators in
    the given degrees."""
    out = []
    for j, deg in enumerate(stage_degrees):
        rem = n - deg
        if rem >= 0 and rem % d == 0:
            out.append((j, rem // d))
    return out


@pytest.mark.parametrize("p,i", [(2, 1), (3, 1), (3, 2)])
def test_resolution_exact_and_resolves_summand(p, i):
    from kconn.abelian import _echelon, lattice_member
    from kconn.kmods import realize_slice

    d = 2 * p - 2
    res = SummandResolution(p, i)
    window = 30
    summand = summand_presentation(p, i, window + 2 * d)
    degrees = [res.gen_degree(j) for j in range(window)]
    for n in range(2 * i - 1, window):
        basis = free_slice(res, degrees, n, d)
        if not basis:
            continue
        pos = {bk: idx for idx, bk in enumerate(basis)}
        rows = []
        for j, k in basis:
            row = [0] * len(basis)
            row[pos[(j, k)]] += p
            if j >= 1:
                row[pos[(j - 1, k + 1)]] -= 1
            rows.append(row)
        # injectivity of the realised differential
        assert left_nullspace(rows, len(basis)) == []
        # its cokernel is the realised summand
        coker = cokernel_group(len(basis), IntegerMatrix(rows, cols=len(basis)))
        assert coker == realize_degree(summand, n), (p, i, n)
        # the augmentation kills the image: each image row, read through
        # v^k b_j -> v^k g_j, lies in the relation lattice of the summand
        slice_n = realize_slice(summand, n)
        spos = {bk: idx for idx, bk in enumerate(slice_n.basis)}
        ech = _echelon(
            [list(r) for r in slice_n.presentation.relations.entries],
            slice_n.presentation.n_gens,
        )
        for row in rows:
            vec = [0] * slice_n.presentation.n_gens
            for idx, coeff in enumerate(row):
                if coeff:
                    j, k = basis[idx]
                    vec[spos[(k, j)]] += coeff
            assert lattice_member(ech, vec), (p, i, n)


# --- Tor ------------------------------------------------------------------------

def test_tor_examples():
    lu2 = lu_bzp_presentation(2, 20)
    assert tor1_degree(SummandResolution(2, 1), lu2, 4) == C(4)
    lu3 = lu_bzp_presentation(3, 30)
    assert tor1_degree(SummandResolution(3, 2), lu3, 8) == C(9)


def test_tor_odd_internal_degree_trivial():
    lu2 = lu_bzp_presentation(2, 20)
    for n in range(1, 12, 2):
        assert tor1_degree(SummandResolution(2, 1), lu2, n) == trivial()


def test_tor_closed_form_values():
    assert tor_closed_form(2, 1, 4) == C(4)
    assert tor_closed_form(3, 2, 8) == C(9)
    assert tor_closed_form(2, 1, 0) == trivial()


def test_tor_engine_matches_closed_form():
    for p in [2, 3]:
        for i in range(1, p):
            for internal in range(0, 25):
                assert tor_summand_group(p, i, internal) == tor_closed_form(
                    p, i, internal
                ), (p, i, internal)


def test_tor_truncation_stability():
    # enlarging the window never changes the answer below the old safe bound
    res = SummandResolution(2, 1)
    small = lu_bzp_presentation(2, 40)
    large = lu_bzp_presentation(2, 96)
    for internal in range(0, 20, 2):
        assert tor1_degree(res, small, internal) == tor1_degree(res, large, internal)


# --- smash assembly ----------------------------------------------------------------

def test_kunneth_examples():
    assert kunneth_smash_group(2, 2) == C(2)
    assert kunneth_smash_group(2, 7) == C(8)
    assert kunneth_smash_group(3, 4) == elem(3, 3)
    assert kunneth_smash_group(2, 1) == trivial()
    assert kunneth_smash_group(2, 0) == trivial()


def test_kunneth_odd_against_shifted_classifying_space():
    # second oracle for degree 7 at p=2: the decomposition identifies it with
    # the double-suspended classifying-space group in degree 5
    from kconn.kmods import bu_bzp_group

    assert kunneth_smash_group(2, 7) == bu_bzp_group(2, 5) == C(8)


def test_order_equation_and_parity():
    for p in [2, 3]:
        for n in range(0, 22):
            tens = tensor_part(p, n)
            tor = tor_part(p, n)
            if n % 2 == 0:
                assert tor == trivial()
            else:
                assert tens == trivial()
            total = kunneth_smash_group(p, n)
            assert total.order() == tens.order() * tor.order(), (p, n)


def test_wedge_count():
    assert wedge_count(2, 2) == 1
    assert wedge_count(2, 7) == 0
    assert wedge_count(3, 4) == 3
    # p = 2: one class for each split of n + 2 into two positive even parts
    for n in range(0, 30, 2):
        assert wedge_count(2, n) == max(0, n // 2)


def test_verify_decomposition_small():
    report = verify_bu_decomposition(2, 20)
    assert report.all_ok
    report = verify_bu_decomposition(3, 14)
    assert report.all_ok
    vac = verify_bu_decomposition(2, 0)
    assert vac.all_ok and len(vac.records) == 1


def test_report_serialisation():
    report = verify_bu_decomposition(2, 6)
    data = report.to_json_dict()
    assert data["all_ok"] is True
    assert len(data["records"]) == 7
    text = report.to_text()
    assert "verdict" in text

def test_decomposition_crosscheck_values():
    assert decomposition_crosscheck(2, 2) == C(2)
    assert decomposition_crosscheck(2, 7) == C(8)
    assert decomposition_crosscheck(3, 4) == elem(3, 3)


def test_tor_insufficient_window_rejected():
    tiny = lu_bzp_presentation(2, 6)
    with pytest.raises(ValueError):
        tor1_degree(SummandResolution(2, 1), tiny, 10)


def test_kunneth_negative_degree_rejected():
    with pytest.raises(ValueError):
        kunneth_smash_group(2, -1)
