"""Central extensions: cocycle bits, lifts, orders, commuting corrections."""
import random

import pytest

from parafusion.central import (
    F2BilinearForm,
    F2QuadraticForm,
    Lift,
    b_g_form,
    bit_apply,
    commuting_lift,
    compose,
    functional_value,
    lift,
    lift_inverse,
    lift_order,
    lift_power,
    lift_power_sign,
    lift_power_sign_even_form,
    lifts_equal,
    mod2_matrix,
    mu_plus_mu_g_solve,
    quadratic_from_values,
    standard_epsilon,
    theta_lift,
)
from parafusion.lattices import coxeter_nu, root_lattice, sqrt2_a
from parafusion.linalg import identity


def all_bits(n):
    return [tuple((w >> i) & 1 for i in range(n)) for w in range(1 << n)]


def neg_identity(n):
    return tuple(tuple(-1 if i == j else 0 for j in range(n)) for i in range(n))


def test_standard_epsilon_rescaled_vanishes():
    for n in (2, 4, 6):
        eps = standard_epsilon(sqrt2_a(n))
        assert all(e == 0 for row in eps.matrix for e in row)


def test_standard_epsilon_a2_values():
    eps = standard_epsilon(root_lattice("A", 2))
    assert eps.matrix[0][0] == 1
    assert eps.matrix[1][1] == 1
    assert eps.matrix[1][0] == 1
    assert eps.matrix[0][1] == 0


def test_standard_epsilon_requires_even():
    odd = root_lattice("A", 1)
    assert odd.is_even()
    from parafusion.lattices import Lattice

    with pytest.raises(ValueError):
        standard_epsilon(Lattice([[1]]))


def test_epsilon_diagonal_is_half_norm():
    for lat in (root_lattice("A", 2), root_lattice("A", 3), root_lattice("D", 4)):
        eps = standard_epsilon(lat)
        for x in all_bits(lat.rank):
            assert eps.value(x, x) == (lat.norm(x) / 2) % 2


def test_epsilon_commutator_identity():
    for lat in (root_lattice("A", 2), root_lattice("D", 4)):
        eps = standard_epsilon(lat)
        for x in all_bits(lat.rank):
            for y in all_bits(lat.rank):
                assert (eps.value(x, y) + eps.value(y, x)) % 2 == lat.inner(x, y) % 2


def test_quadratic_form_polarization_identity():
    rng = random.Random(7)
    n = 4
    for _ in range(5):
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                b[i][j] = b[j][i] = rng.randint(0, 1)
        q = F2QuadraticForm(
            tuple(rng.randint(0, 1) for _ in range(n)),
            F2BilinearForm(tuple(tuple(r) for r in b)),
        )
        for x in all_bits(n):
            for y in all_bits(n):
                s = tuple((a + c) % 2 for a, c in zip(x, y))
                bval = sum(
                    x[i] * y[j] * b[i][j] for i in range(n) for j in range(n)
                ) % 2
                assert (q.value(s) + q.value(x) + q.value(y)) % 2 == bval


def test_quadratic_form_validation():
    with pytest.raises(ValueError):
        F2QuadraticForm((0, 0), F2BilinearForm(((1, 0), (0, 0))))  # diag not 0
    with pytest.raises(ValueError):
        F2QuadraticForm((0, 0), F2BilinearForm(((0, 1), (0, 0))))  # not symmetric
    with pytest.raises(ValueError):
        F2QuadraticForm((0,), F2BilinearForm(((0, 0), (0, 0))))  # size mismatch


def test_quadratic_from_values_round_trip():
    q = F2QuadraticForm((1, 0, 1), F2BilinearForm(((0, 1, 0), (1, 0, 1), (0, 1, 0))))
    back = quadratic_from_values(q.value, 3)
    assert back.diagonal == q.diagonal
    assert back.polarization.matrix == q.polarization.matrix


def test_quadratic_from_values_rejects_cubic():
    with pytest.raises(AssertionError):
        quadratic_from_values(lambda x: x[0] * x[1] * x[2], 3)


def test_b_g_form_symmetric_zero_diagonal():
    lat = root_lattice("A", 4)
    eps = standard_epsilon(lat)
    b = b_g_form(eps, coxeter_nu(5))
    n = lat.rank
    for i in range(n):
        assert b.matrix[i][i] == 0
        for j in range(n):
            assert b.matrix[i][j] == b.matrix[j][i]


def test_lift_validation():
    lat = sqrt2_a(4)
    eps = standard_epsilon(lat)
    with pytest.raises(ValueError):
        lift(coxeter_nu(5), lat, eps, diagonal=[1, 0])  # wrong length
    with pytest.raises(ValueError):
        lift(identity(3), lat, eps)  # wrong size: not an isometry
    # eta polarization is forced
    wrong_eta = F2QuadraticForm(
        (0, 0, 0, 0),
        F2BilinearForm(
            tuple(
                tuple(1 if (i + j) % 2 else 0 for j in range(4)) for i in range(4)
            )
        ),
    )
    with pytest.raises(ValueError):
        Lift(lat, eps, coxeter_nu(5), wrong_eta)


def test_lift_power_sign_basics():
    lat = sqrt2_a(1)
    eps = standard_epsilon(lat)
    lf = lift(identity(1), lat, eps)
    assert lift_power_sign(lf, (1,), 1) == 0
    assert lift_power_sign(lf, (1,), 5) == 0
    marked = lift(identity(1), lat, eps, diagonal=[1])
    assert lift_power_sign(marked, (1,), 1) == 1
    assert lift_power_sign(marked, (1,), 2) == 0
    with pytest.raises(ValueError):
        lift_power_sign(lf, (1,), 0)


def test_even_form_matches_orbit_sum():
    rng = random.Random(11)
    for k in (4, 6, 8):
        lat = root_lattice("A", k - 1)  # unrescaled: nonzero cocycle bits
        eps = standard_epsilon(lat)
        for trial in range(3):
            diag = [rng.randint(0, 1) for _ in range(k - 1)]
            lf = lift(coxeter_nu(k), lat, eps, diagonal=diag)
            for x in all_bits(k - 1):
                assert lift_power_sign_even_form(lf, x, k) == lift_power_sign(
                    lf, x, k
                ), (k, diag, x)
    a3 = root_lattice("A", 3)
    lf = lift(coxeter_nu(4), a3, standard_epsilon(a3))
    with pytest.raises(ValueError):
        lift_power_sign_even_form(lf, (1, 0, 0), 3)  # odd n rejected


def test_lift_order_of_nu_hat():
    for k in range(3, 10):
        lat = sqrt2_a(k - 1)
        lf = lift(coxeter_nu(k), lat, standard_epsilon(lat))
        assert lift_order(lf) == k
    for k in (3, 5, 7, 9):
        lat = root_lattice("A", k - 1)
        lf = lift(coxeter_nu(k), lat, standard_epsilon(lat))
        assert lift_order(lf) == k


def test_theta_lift_order_two():
    for lat in (sqrt2_a(4), root_lattice("A", 2), root_lattice("D", 4)):
        th = theta_lift(lat, standard_epsilon(lat))
        assert lift_order(th) == 2
        assert all(d == 0 for d in th.eta.diagonal)


def test_lift_order_doubling():
    lat = sqrt2_a(2)
    eps = standard_epsilon(lat)
    lf = lift(identity(2), lat, eps, diagonal=[1, 0])
    assert lift_order(lf) == 2  # base order 1, doubled by the marked basis sign


def test_mu_solve_round_trip():
    for k in (5, 7):
        g = coxeter_nu(k)
        gbar = mod2_matrix(g)
        n = k - 1
        for lam in all_bits(n):
            mu = mu_plus_mu_g_solve(g, lam)
            for x in all_bits(n):
                got = (
                    functional_value(mu, x) + functional_value(mu, bit_apply(x, gbar))
                ) % 2
                assert got == functional_value(lam, x)
    assert mu_plus_mu_g_solve(coxeter_nu(5), (0, 0, 0, 0)) == (0, 0, 0, 0)


def test_mu_solve_singular():
    with pytest.raises(ValueError):
        mu_plus_mu_g_solve(neg_identity(2), (1, 0))  # I + I = 0 mod 2
    with pytest.raises(ValueError):
        mu_plus_mu_g_solve(coxeter_nu(5), (1, 0))  # wrong length


def test_compose_inverse_is_identity():
    lat = root_lattice("A", 4)
    eps = standard_epsilon(lat)
    lf = lift(coxeter_nu(5), lat, eps, diagonal=[1, 0, 1, 0])
    ident = lift(identity(4), lat, eps)
    assert lifts_equal(compose(lf, lift_inverse(lf)), ident)
    assert lifts_equal(compose(lift_inverse(lf), lf), ident)


def test_lift_power_consistency():
    lat = root_lattice("A", 4)
    eps = standard_epsilon(lat)
    lf = lift(coxeter_nu(5), lat, eps, diagonal=[1, 1, 0, 0])
    p2 = lift_power(lf, 2)
    for x in all_bits(4):
        assert p2.eta_value(x) == (
            lf.eta_value(x) + lf.eta_value(bit_apply(x, lf.base_mod2()))
        ) % 2
    assert lifts_equal(lift_power(lf, 0), lift(identity(4), lat, eps))


def test_commuting_lift_with_theta():
    # the unique lift of -1 commuting with nu-hat is theta
    for k in (5, 7):
        lat = sqrt2_a(k - 1)
        eps = standard_epsilon(lat)
        nu_hat = lift(coxeter_nu(k), lat, eps)
        phi = commuting_lift(neg_identity(k - 1), nu_hat, 1)
        assert lifts_equal(phi, theta_lift(lat, eps))


def test_commuting_lift_unrescaled():
    lat = root_lattice("A", 4)
    eps = standard_epsilon(lat)
    nu_hat = lift(coxeter_nu(5), lat, eps)
    phi = commuting_lift(neg_identity(4), nu_hat, 1)
    check = compose(lift_inverse(phi), compose(nu_hat, phi))
    assert lifts_equal(check, nu_hat)


def test_commuting_lift_tau():
    from parafusion.lattices import tau_isometry

    lat = sqrt2_a(4)
    eps = standard_epsilon(lat)
    nu_hat = lift(coxeter_nu(5), lat, eps)
    phi = commuting_lift(tau_isometry(5, 2), nu_hat, 3)
    check = compose(lift_inverse(phi), compose(nu_hat, phi))
    assert lifts_equal(check, lift_power(nu_hat, 3))
    with pytest.raises(ValueError):
        commuting_lift(tau_isometry(5, 2), nu_hat, 2)  # wrong exponent
