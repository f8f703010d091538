import random

import pytest

from kconn.abelian import (
    AbelianGroupMap,
    FgAbelianGroup,
    GroupPresentation,
    IntegerMatrix,
    cokernel_group,
    element_order,
    groups_isomorphic,
    kernel_generators,
    kernel_of_map,
    left_nullspace,
    parse_group,
    quotient_group,
    render_group,
    simplify_presentation,
    smith_normal_form,
)

Z = FgAbelianGroup.free
C = FgAbelianGroup.cyclic
trivial = FgAbelianGroup.trivial


# --- independent oracles -----------------------------------------------------

def det_bareiss(mat):
    """Fraction-free determinant, independent of the Smith machinery."""
    a = [list(r) for r in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def enumerate_quotient_order(rows, n, cap=5000):
    """Count Z^n modulo the row lattice by reducing vectors to canonical
    residues against a row-reduced basis (test-local, no Smith form)."""
    basis = []
    for row in rows:
        r = list(row)
        while True:
            j = next((k for k, x in enumerate(r) if x), None)
            if j is None:
                break
            hit = next((b for b in basis if next(k for k, x in enumerate(b) if x) == j), None)
            if hit is None:
                basis.append([-x for x in r] if r[j] < 0 else r)
                break
            a, b = hit[j], r[j]
            if b % a == 0:
                q = b // a
                for k in range(n):
                    r[k] -= q * hit[k]
            else:
                # gcd step
                while r[j]:
                    q = hit[j] // r[j]
                    for k in range(n):
                        hit[k] -= q * r[k]
                    hit[:], r[:] = r[:], hit[:]
        basis.sort(key=lambda b: next(k for k, x in enumerate(b) if x))
    leads = {next(k for k, x in enumerate(b) if x): b for b in basis}
    if len(leads) < n:
        return None  # infinite quotient
    # canonical residues: reduce each coordinate modulo its pivot, back to front
    def canon(vec):
        v = list(vec)
        for j in sorted(leads):
            b = leads[j]
            q = v[j] // b[j]
            for k in range(n):
                v[k] -= q * b[k]
        return tuple(v)

    seen = set()
    frontier = [canon([0] * n)]
    seen.add(frontier[0])
    while frontier:
        cur = frontier.pop()
        for j in range(n):
            for step in (1, -1):
                nxt = list(cur)
                nxt[j] += step
                cv = canon(nxt)
                if cv not in seen:
                    if len(seen) >= cap:
                        raise AssertionError("quotient larger than enumeration cap")
                    seen.add(cv)
                    frontier.append(cv)
    return len(seen)


def assert_snf_contract(mat):
    d, u, v = smith_normal_form(mat)
    assert u * mat * v == d
    assert d.is_diagonal()
    diag = [d[i, i] for i in range(min(d.rows, d.cols))]
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert diag[len(nonzero):] == [0] * (len(diag) - len(nonzero))
    assert abs(det_bareiss(u.to_lists())) == 1
    assert abs(det_bareiss(v.to_lists())) == 1
    return d


# --- smith normal form -------------------------------------------------------

def test_snf_diag_2_3():
    d = assert_snf_contract(IntegerMatrix([[2, 0], [0, 3]]))
    assert [d[0, 0], d[1, 1]] == [1, 6]


def test_snf_zero_matrix():
    d = assert_snf_contract(IntegerMatrix.zero(2, 2))
    assert d == IntegerMatrix.zero(2, 2)


def test_snf_single_entry():
    d = assert_snf_contract(IntegerMatrix([[4]]))
    assert d == IntegerMatrix([[4]])


def test_snf_idempotent_on_its_own_output():
    rng = random.Random(11)
    for _ in range(40):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        mat = IntegerMatrix([[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)])
        d = assert_snf_contract(mat)
        d2, _, _ = smith_normal_form(d)
        assert d2 == d


def test_snf_random_contract():
    rng = random.Random(7)
    for _ in range(120):
        m = rng.randrange(1, 6)
        n = rng.randrange(1, 6)
        mat = IntegerMatrix([[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)])
        assert_snf_contract(mat)


# --- cokernels ---------------------------------------------------------------

def test_cokernel_already_diagonal():
    rel = IntegerMatrix([[2, 0], [0, 4]])
    assert cokernel_group(2, rel) == FgAbelianGroup(0, (2, 4))


def test_cokernel_no_relations():
    assert cokernel_group(1, IntegerMatrix([], cols=1)) == Z(1)


def test_cokernel_mixed_free_torsion():
    rel = IntegerMatrix([[2, -2]])
    assert cokernel_group(2, rel) == FgAbelianGroup(1, (2,))


def test_cokernel_units_dropped():
    rel = IntegerMatrix([[1, 0, 0], [0, 6, 0], [0, 0, 15]])
    assert cokernel_group(3, rel) == FgAbelianGroup(0, (3, 30))


def test_cokernel_order_matches_determinant_and_enumeration():
    rng = random.Random(23)
    trials = 0
    while trials < 60:
        n = rng.randrange(1, 4)
        rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(n)]
        det = abs(det_bareiss(rows))
        if det == 0 or det > 1000:
            continue
        trials += 1
        g = cokernel_group(n, IntegerMatrix(rows, cols=n))
        assert g.order() == det
        assert enumerate_quotient_order(rows, n) == det


def test_cokernel_rectangular_vs_enumeration():
    rng = random.Random(5)
    trials = 0
    while trials < 30:
        n = rng.randrange(1, 4)
        m = rng.randrange(n, n + 3)
        rows = [[rng.randrange(-6, 7) for _ in range(n)] for _ in range(m)]
        g = cokernel_group(n, IntegerMatrix(rows, cols=n))
        if g.order() is None or g.order() > 800:
            continue
        trials += 1
        assert enumerate_quotient_order(rows, n) == g.order()


# --- canonical forms ---------------------------------------------------------

def test_isomorphic_reordering():
    a = FgAbelianGroup.from_cyclic_orders(0, [2, 4])
    b = FgAbelianGroup.from_cyclic_orders(0, [4, 2])
    assert groups_isomorphic(a, b)


def test_non_isomorphic_same_order():
    assert not groups_isomorphic(C(8), FgAbelianGroup.from_cyclic_orders(0, [2, 4]))


def test_canonical_form_from_unordered_factors():
    assert FgAbelianGroup.from_cyclic_orders(0, [9, 3]) == FgAbelianGroup(0, (3, 9))


def test_invalid_chain_rejected():
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (4, 6))


def test_isomorphism_is_equivalence_and_permutation_invariant():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randrange(1, 4)
        rows = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(rng.randrange(0, 4))]
        g = cokernel_group(n, IntegerMatrix(rows, cols=n))
        # permute generator columns: presents an isomorphic group
        perm = list(range(n))
        rng.shuffle(perm)
        prows = [[row[perm[j]] for j in range(n)] for row in rows]
        h = cokernel_group(n, IntegerMatrix(prows, cols=n))
        assert groups_isomorphic(g, g)
        assert groups_isomorphic(g, h) and groups_isomorphic(h, g)


def test_direct_sum_canonicalises():
    a = FgAbelianGroup(0, (2, 4))
    b = FgAbelianGroup(0, (3,))
    assert a.direct_sum(b) == FgAbelianGroup(0, (2, 12))


# --- kernels of maps ---------------------------------------------------------

def pres(n, rows):
    return GroupPresentation(n, IntegerMatrix(rows, cols=n))


def test_kernel_multiplication_by_2_on_z8():
    z8 = pres(1, [[8]])
    f = AbelianGroupMap(z8, z8, IntegerMatrix([[2]]))
    assert kernel_of_map(f) == C(2)


def test_kernel_injection_z2_into_z4():
    f = AbelianGroupMap(pres(1, [[2]]), pres(1, [[4]]), IntegerMatrix([[2]]))
    assert kernel_of_map(f) == trivial()


def test_kernel_projection_z_onto_z():
    # Z^2 -> Z, (a, b) -> a + b has kernel Z
    f = AbelianGroupMap(pres(2, []), pres(1, []), IntegerMatrix([[1], [1]]))
    assert kernel_of_map(f) == Z(1)


def test_malformed_map_rejected():
    # Z/2 -> Z/3 cannot send the generator to a generator
    with pytest.raises(ValueError):
        AbelianGroupMap(pres(1, [[2]]), pres(1, [[3]]), IntegerMatrix([[1]]))


def test_kernel_generators_compose_to_zero():
    rng = random.Random(17)
    for _ in range(40):
        ns, nt = rng.randrange(1, 4), rng.randrange(1, 4)
        src_rel = [[rng.randrange(-4, 5) for _ in range(ns)] for _ in range(rng.randrange(0, 3))]
        tgt_rel = [[rng.randrange(-4, 5) for _ in range(nt)] for _ in range(rng.randrange(1, 4))]
        source = pres(ns, src_rel)
        target = pres(nt, tgt_rel)
        # build a guaranteed-valid map: send every source generator to a
        # relation-lattice multiple? simpler: compose source relations are
        # respected by the zero map and by maps through target relations.
        images = []
        for _ in range(ns):
            coeffs = [rng.randrange(-2, 3) for _ in range(len(tgt_rel))]
            vec = [sum(c * tgt_rel[k][j] for k, c in enumerate(coeffs)) for j in range(nt)]
            images.append(vec)
        f = AbelianGroupMap(source, target, IntegerMatrix(images, cols=nt))
        from kconn.abelian import _echelon, lattice_member

        ech = _echelon([list(r) for r in tgt_rel], nt)
        for gen in kernel_generators(f):
            img = [sum(gen[i] * images[i][j] for i in range(ns)) for j in range(nt)]
            assert lattice_member(ech, img)


def test_left_nullspace_contract():
    rng = random.Random(29)
    for _ in range(40):
        m, n = rng.randrange(1, 5), rng.randrange(1, 5)
        rows = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(m)]
        basis = left_nullspace(rows, n)
        for z in basis:
            assert all(
                sum(z[i] * rows[i][j] for i in range(m)) == 0 for j in range(n)
            )


def test_quotient_group_z2_inside_z():
    # lattice 2Z inside Z: quotient of Z by 2Z
    assert quotient_group([[1]], [[2]], 1) == C(2)


def test_quotient_group_rejects_non_sublattice():
    with pytest.raises(ValueError):
        quotient_group([[2]], [[3]], 1)


# --- element orders and simplification ----------------------------------------

def test_element_order_cyclic():
    z12 = pres(1, [[12]])
    assert element_order(z12, [1]) == 12
    assert element_order(z12, [4]) == 3
    assert element_order(z12, [0]) == 1


def test_element_order_infinite():
    assert element_order(pres(2, [[0, 5]]), [1, 0]) is None
    assert element_order(pres(2, [[0, 5]]), [0, 1]) == 5


def test_simplify_preserves_group_and_roundtrip():
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randrange(1, 5)
        rows = [[rng.randrange(-6, 7) for _ in range(n)] for _ in range(rng.randrange(0, 5))]
        p = pres(n, rows)
        simp = simplify_presentation(p)
        assert simp.presentation.group() == p.group()
        # from_min then to_min is the identity on minimal coordinates
        comp = simp.from_min * simp.to_min
        assert comp == IntegerMatrix.identity(simp.presentation.n_gens)


# --- rendering ----------------------------------------------------------------

@pytest.mark.parametrize(
    "group,text",
    [
        (trivial(), "0"),
        (Z(1), "Z"),
        (Z(3), "Z^3"),
        (C(8), "Z/8"),
        (FgAbelianGroup(0, (2, 2, 2)), "(Z/2)^3"),
        (FgAbelianGroup(1, (2, 8)), "Z ⊕ Z/8 ⊕ Z/2"),
    ],
)
def test_render(group, text):
    assert render_group(group) == text


def test_parse_roundtrip():
    rng = random.Random(13)
    samples = [trivial(), Z(2), C(9)]
    for _ in range(30):
        orders = [rng.choice([2, 3, 4, 8, 9, 5]) for _ in range(rng.randrange(0, 4))]
        samples.append(FgAbelianGroup.from_cyclic_orders(rng.randrange(0, 3), orders))
    for g in samples:
        assert parse_group(render_group(g)) == g
