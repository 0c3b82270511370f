"""Acceptance suite: one test per primary criterion, exact arithmetic.

Each test prints a single "criterion N: PASS" line on success (visible
with -s; under plain pytest the per-test PASSED line carries the same
information). All comparisons are exact -- integers and Fractions only.
"""
import random
import time
from fractions import Fraction as Q
from pathlib import Path

from parafusion import codes as codes_mod
from parafusion.central import (
    bit_apply,
    functional_value,
    lift,
    lift_order,
    lift_power_sign,
    lift_power_sign_even_form,
    mod2_matrix,
    mu_plus_mu_g_solve,
    standard_epsilon,
    theta_lift,
)
from parafusion.fusion import (
    FusionVector,
    all_labels,
    canonical_label,
    fuse,
    fuse_vectors,
    verify_weight_one_tops,
    verify_zk_grading,
)
from parafusion.lattices import (
    Isometry,
    coxeter_nu,
    dual_quotient_invariants,
    quotient_invariants,
    r_cap_p_dual_index,
    reflection,
    root_lattice,
    rssd_involution,
    shell,
    sqrt2_a,
    tensor,
    tensor_vector,
)
from parafusion.linalg import identity, mat, mat_eq, mat_sub
from parafusion.orbifold import (
    OrbLabel,
    derive_full_table,
    generator_fuse,
    orbifold_basis,
    verify_collapse,
    verify_sigma_grading,
    verify_table,
)
from parafusion.u5a import verify_induction_tables


def kron(a, b):
    na, nb = len(a), len(b)
    return tuple(
        tuple(a[i][k] * b[j][l] for k in range(na) for l in range(nb))
        for i in range(na)
        for j in range(nb)
    )


def test_criterion_01_fusion_ring_axioms():
    start = time.monotonic()
    for k in range(2, 9):
        labels = all_labels(k)
        e = canonical_label(0, 0, k)
        for x in labels:
            assert fuse(e, x).as_dict() == {x: 1}
            for y in labels:
                assert fuse(x, y) == fuse(y, x)
        single = {x: FusionVector.from_pairs([(x, 1)]) for x in labels}

        def associative(x, y, z):
            left = fuse_vectors(fuse(x, y), single[z])
            right = fuse_vectors(single[x], fuse(y, z))
            return left == right

        if k <= 6:
            for x in labels:
                for y in labels:
                    for z in labels:
                        assert associative(x, y, z), (k, x, y, z)
        else:
            rng = random.Random(k)
            for _ in range(10_000):
                x, y, z = (rng.choice(labels) for _ in range(3))
                assert associative(x, y, z), (k, x, y, z)
    elapsed = time.monotonic() - start
    assert elapsed < 60, f"runtime {elapsed:.1f}s exceeds 60s"
    print(f"criterion 1: PASS — ring axioms for k=2..8 ({elapsed:.1f}s)")


def test_criterion_02_cyclic_grading():
    for k in range(2, 13):
        report = verify_zk_grading(k)
        assert report.passed, (k, report.violations[:3])

    k = 5
    target = (canonical_label(1, 0, k), canonical_label(2, 0, k))

    def mutant(a, b):
        out = fuse(a, b)
        if {a, b} == set(target):
            pairs = list(out)
            lab, m = pairs[0]
            bad = canonical_label(lab.i, lab.j + 1, k)
            return FusionVector.from_pairs([(bad, m)] + pairs[1:])
        return out

    mutated = verify_zk_grading(k, fuse_fn=mutant)
    assert not mutated.passed
    print("criterion 2: PASS — grading holds for k=2..12; mutation detected")


def test_criterion_03_orbifold_table():
    for k in range(3, 13):
        table = derive_full_table(k, validate=True)
        assert verify_table(table).passed, k
        assert verify_sigma_grading(table).passed, k
        assert verify_collapse(k, table).passed, k

        # generator rows verbatim, including both boundary cases
        top = k // 2
        for x in orbifold_basis(k):
            sign_row = generator_fuse(OrbLabel(0, 1, k), x).as_dict()
            assert sign_row == {OrbLabel(x.j, 1 - x.eps, k): 1}
            got = generator_fuse(OrbLabel(1, 0, k), x).as_dict()
            j, e = x.j, x.eps
            if j == 0:
                expected = {OrbLabel(1, e, k): 1}
            elif j <= top - 1:
                expected = {
                    OrbLabel(j - 1, e, k): 1,
                    OrbLabel(j, 1 - e, k): 1,
                    OrbLabel(j + 1, e, k): 1,
                }
            elif k % 2 == 1:
                expected = {OrbLabel(j - 1, e, k): 1, OrbLabel(j, 1 - e, k): 1}
            else:
                expected = {OrbLabel(j - 1, e, k): 1}
            assert got == expected, (k, x)
    print("criterion 3: PASS — orbifold tables for k=3..12, seeds verbatim")


def test_criterion_04_weight_one_tops():
    for k in range(3, 31):
        report = verify_weight_one_tops(k)
        assert report.passed, k
        assert all(total == 1 for _, total in report.sums)
    print("criterion 4: PASS — branching sums equal 1 for k=3..30")


def test_criterion_05_lattice_quotients():
    for k in range(3, 13):
        lat = sqrt2_a(k - 1)
        s = mat_sub(identity(k - 1), mat(coxeter_nu(k)))
        order = 1
        for f in quotient_invariants(lat, s):
            order *= f
        assert order == k, k
        dual_order = 1
        for f in dual_quotient_invariants(lat, s):
            dual_order *= f
        assert dual_order == k, k

    tensor_cases = [
        (3, root_lattice("A", 2), (1, 1, 3, 3)),
        (3, root_lattice("E", 6), (1, 1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3)),
        (5, root_lattice("A", 2), (1, 1, 1, 1, 1, 1, 5, 5)),
    ]
    for p, r_lat, expected in tensor_cases:
        a = root_lattice("A", p - 1)
        t = tensor(a, r_lat)
        nu_t = kron(coxeter_nu(p), identity(r_lat.rank))
        Isometry(nu_t, t)  # gram preservation
        s = mat_sub(identity(t.rank), mat(nu_t))
        inv = quotient_invariants(t, s)
        assert inv == expected, (p, inv)
        for f in inv:
            assert f == 1 or f % p == 0  # order is a power of p

    assert r_cap_p_dual_index(root_lattice("A", 4), 5) == 5
    assert r_cap_p_dual_index(root_lattice("E", 6), 3) == 3
    assert r_cap_p_dual_index(root_lattice("E", 8), 5) == 1
    print("criterion 5: PASS — quotient orders, tensor quotients, index cases")


def test_criterion_06_lift_calculus():
    for k in range(3, 10):
        lat = sqrt2_a(k - 1)
        eps = standard_epsilon(lat)
        nu_hat = lift(coxeter_nu(k), lat, eps)
        assert lift_order(nu_hat) == k, k
        if k % 2 == 0:
            # even-order route: the closed-form correction term agrees and
            # confirms no doubling
            for i in range(k - 1):
                e_i = tuple(1 if j == i else 0 for j in range(k - 1))
                delta = lift_power_sign_even_form(nu_hat, e_i, k)
                assert delta == lift_power_sign(nu_hat, e_i, k)
                assert delta == 0
        assert lift_order(theta_lift(lat, eps)) == 2, k

    for k in (5, 7):
        g = coxeter_nu(k)
        gbar = mod2_matrix(g)
        n = k - 1
        for w in range(1 << n):
            lam = tuple((w >> i) & 1 for i in range(n))
            mu = mu_plus_mu_g_solve(g, lam)
            for i in range(n):
                x = tuple(1 if j == i else 0 for j in range(n))
                got = (
                    functional_value(mu, x)
                    + functional_value(mu, bit_apply(x, gbar))
                ) % 2
                assert got == lam[i]
    print("criterion 6: PASS — lift orders (even-n route included), mu solves")


def test_criterion_07_tensor_lattices():
    cases = [
        (3, root_lattice("A", 2), 18),
        (3, root_lattice("A", 3), 36),
        (5, root_lattice("A", 2), 60),
    ]
    for p, r_lat, count in cases:
        a = root_lattice("A", p - 1)
        t = tensor(a, r_lat)
        assert shell(t, 2) == []
        vecs = shell(t, 4)
        assert len(vecs) == count
        assert count == len(shell(a, 2)) * len(shell(r_lat, 2)) // 2
        decomposables = {
            tensor_vector(x, y) for x in shell(a, 2) for y in shell(r_lat, 2)
        }
        assert {tuple(Q(e) for e in v) for v in vecs} == decomposables

    # reflection identity: the involution attached to A tensor beta is 1 (x) r_beta
    for p, r_lat, _ in cases:
        a = root_lattice("A", p - 1)
        t = tensor(a, r_lat)
        for beta in shell(r_lat, 2):
            rows = [
                tensor_vector(tuple(1 if j == i else 0 for j in range(a.rank)), beta)
                for i in range(a.rank)
            ]
            t_inv = rssd_involution(t, rows)
            expected = kron(identity(a.rank), reflection(r_lat, beta).matrix)
            assert mat_eq(t_inv.matrix, mat(expected))
    print("criterion 7: PASS — minima, decomposable shells, reflection identity")


def test_criterion_08_case_study():
    start = time.monotonic()
    code = codes_mod.builtin_code("5B")
    rep = codes_mod.code_properties(code)
    assert rep.size == 256
    assert rep.self_dual
    assert rep.totally_isotropic
    assert rep.nu_invariant
    assert rep.weight_distribution == ((0, 1), (4, 130), (6, 120), (8, 5))

    direct = codes_mod.classify_weight4(code)
    orbit = codes_mod.orbit_classification(code)
    assert direct.counts == (("I", 5), ("II", 5), ("III", 60), ("IV", 60))
    assert orbit.counts == direct.counts

    built = codes_mod.build_lattice(code)
    assert built.lattice.rank == 16
    assert built.lattice.det() == 5**4
    assert built.even and built.integral
    assert shell(built.lattice, 2) == []

    glue = codes_mod.glue_form_report(built)
    assert glue.passed
    assert glue.invariant_factors == (5, 5, 5, 5)
    assert glue.q_values == (4, 4, 4, 4)
    assert glue.q_double_values == (1, 1, 1, 1)
    for i in range(4):
        for j in range(4):
            assert glue.f_matrix[i][j] == (8 if i == j else 0)

    assert codes_mod.one_minus_nu_dual_equals_lattice(built)

    # norm-4 shell two ways: block-coset convolution vs direct enumeration
    by_cosets = codes_mod.shell4_count_by_cosets(code)
    assert by_cosets == 2640
    assert len(shell(built.lattice, 4)) == by_cosets

    ee8 = codes_mod.build_ee8_pair(built)
    assert ee8.passed, ee8.failures
    assert ee8.weight_enumerator == ((0, 1), (4, 14), (8, 1))

    elapsed = time.monotonic() - start
    assert elapsed < 120, f"runtime {elapsed:.1f}s exceeds 120s"
    print(f"criterion 8: PASS — case-study battery with enumeration ({elapsed:.1f}s)")


def test_criterion_09_nine_module_tables():
    start = time.monotonic()
    report = verify_induction_tables(check_representatives=True)
    assert report.passed, report.failures[:5]
    elapsed = time.monotonic() - start
    assert elapsed < 30, f"runtime {elapsed:.1f}s exceeds 30s"
    print(f"criterion 9: PASS — nine-module tables verified ({elapsed:.1f}s)")


def test_criterion_10_documented_scope_substitution():
    # identifications of symmetry groups with named finite groups are out
    # of scope; the README says so, and the order arithmetic that stands
    # in for them is checked here
    readme = Path(__file__).resolve().parent.parent / "README.md"
    assert readme.exists(), "README.md missing"
    text = readme.read_text()
    assert "order-arithmetic" in text, "scope substitution not documented"
    assert "not reproduced" in text, "scope substitution not documented"

    # the orbit-oracle symmetry group has order 5 * |Alt4| = 60
    from parafusion.codes import _alt4

    assert len(_alt4()) == 12
    assert 5 * len(_alt4()) == 60

    # composite of the two involutions has the full order of nu
    built = codes_mod.build_lattice(codes_mod.builtin_code("5B"))
    nu = Isometry(codes_mod.nu_in_lattice(built), built.lattice)
    assert nu.order() == 5
    lat = sqrt2_a(4)
    eps = standard_epsilon(lat)
    assert lift_order(lift(coxeter_nu(5), lat, eps)) == 5
    assert lift_order(theta_lift(lat, eps)) == 2
    print("criterion 10: PASS — substitution documented; order arithmetic holds")
