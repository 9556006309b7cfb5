import numpy as np
import pytest

from loewner_cert import (
    BadDimensions,
    HypothesisViolated,
    NotUnitVector,
    affine,
    calc,
    certify_jensen,
    certify_order,
    dumps_canonical,
    find_order_violation,
    kantorovich,
    loewner_leq,
    min_eigenvalue,
    neglog,
    power,
    random_dominated_pair,
    random_hermitian,
    random_unital_family,
    verify_classical,
    verify_sandwich_pointwise,
)

D01 = np.diag([0.0, 1.0]).astype(complex)
D12 = np.diag([1.0, 2.0]).astype(complex)


def test_certify_order_toy_half():
    cert = certify_order(D01, D01, power(2), tol=1e-6)
    assert cert.statement == "gamma-order"
    assert abs(cert.constants["gamma"] - 0.5) < 1e-6
    # f(A) + gamma I - f(B) = diag(gamma, gamma): slack equals gamma
    assert abs(cert.slack - 0.5) < 1e-6
    assert cert.passed


def test_certify_order_toy_endpoint():
    cert = certify_order(D01, D12, power(2), tol=1e-6)
    assert abs(cert.constants["gamma"] - 4.0) < 1e-6
    assert abs(cert.slack - 1.0) < 1e-6
    assert cert.passed


def test_certify_order_affine_identity():
    cert = certify_order(D12, D12, affine(1.0, 0.0))
    assert abs(cert.constants["gamma"]) < 1e-12
    assert abs(cert.slack) < 1e-12
    assert cert.passed
    assert cert.solver["solver"] == "multistart"


def test_slack_shifts_with_constant():
    rng = np.random.default_rng(5)
    A = random_hermitian(3, 0.2, 1.5, rng)
    B = random_hermitian(3, 0.2, 1.5, rng)
    cert = certify_order(A, B, power(2))
    g = cert.constants["gamma"]
    fA, fB = calc(power(2), A), calc(power(2), B)
    for c in (0.5, 2.0):
        shifted = min_eigenvalue(fA + (g + c) * np.eye(3) - fB)
        assert abs(shifted - (cert.slack + c)) < 1e-12


def test_certificate_serializes_canonically():
    cert = certify_order(D01, D12, power(2))
    text = dumps_canonical(cert.to_dict())
    assert text == dumps_canonical(cert.to_dict())
    assert '"statement":"gamma-order"' in text
    assert cert.inputs["function"] == "power:2;dom=(-inf,inf)"
    assert cert.solver["seed"] == 0 and cert.solver["restarts"] == 64


@pytest.mark.parametrize("kind", [
    "delta_forward", "eta_choi", "theta_reverse", "vartheta_reverse",
])
def test_jensen_certificates_pass(kind):
    rng = np.random.default_rng(17)
    fam = random_unital_family(2, 3, 3, seed=23)
    a_ops = [random_hermitian(3, 0.3, 1.8, rng) for _ in range(2)]
    b_ops = None
    if kind in ("delta_forward", "theta_reverse"):
        b_ops = [random_hermitian(3, 0.3, 1.8, rng) for _ in range(2)]
    cert = certify_jensen(kind, power(2), a_ops, b_ops, family=fam,
                          restarts=24, seed=4)
    assert cert.passed, (kind, cert.slack, cert.tol)
    assert cert.statement == kind


def test_eta_matches_delta_on_equal_operands():
    rng = np.random.default_rng(29)
    fam = random_unital_family(2, 2, 2, seed=31)
    ops = [random_hermitian(2, 0.4, 1.6, rng) for _ in range(2)]
    ce = certify_jensen("eta_choi", power(2), ops, family=fam, seed=2)
    cd = certify_jensen("delta_forward", power(2), ops, ops, family=fam, seed=2)
    assert ce.constants["eta"] == cd.constants["delta"]


def test_jensen_rejects_unknown_kind():
    with pytest.raises(ValueError):
        certify_jensen("zeta", power(2), [D12])


def test_sandwich_hand_values():
    # identity map, A = B = diag(0,1), f = t^2, x = (1,1)/sqrt(2):
    # exact chain (-1/2, 0, 1/2)
    x = np.array([1.0, 1.0]) / np.sqrt(2.0)
    res = verify_sandwich_pointwise(power(2), D01, x=x)
    assert abs(res.lower - (-0.5)) < 1e-12
    assert abs(res.middle - 0.0) < 1e-12
    assert abs(res.upper - 0.5) < 1e-12
    assert res.ok
    lower, middle, upper, ok = res
    assert (lower, middle, upper, ok) == (res.lower, res.middle, res.upper, res.ok)


def test_sandwich_requires_unit_vector():
    with pytest.raises(NotUnitVector):
        verify_sandwich_pointwise(power(2), D01, x=np.array([1.0, 1.0]))
    with pytest.raises(NotUnitVector):
        verify_sandwich_pointwise(power(2), D01)


def test_sandwich_checks_operand_count():
    fam = random_unital_family(2, 2, 2, seed=1)
    with pytest.raises(BadDimensions):
        verify_sandwich_pointwise(power(2), [D01, D01], [D12],
                                  family=fam, x=np.array([1.0, 0.0]))


def test_sandwich_random_instances_ordered():
    rng = np.random.default_rng(41)
    fam = random_unital_family(3, 2, 3, seed=43)
    a_ops = [random_hermitian(2, 0.3, 1.9, rng) for _ in range(3)]
    b_ops = [random_hermitian(2, 0.3, 1.9, rng) for _ in range(3)]
    for _ in range(20):
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        x /= np.linalg.norm(x)
        res = verify_sandwich_pointwise(power(3), a_ops, b_ops,
                                        family=fam, x=x)
        assert res.ok
        assert res.lower <= res.middle + 1e-8
        assert res.middle <= res.upper + 1e-8


# -- classical statements ----------------------------------------------


FURUTA_A = np.array([[2.0, 1.0], [1.0, 1.0]])
FURUTA_B = np.array([[1.0, 1.0], [1.0, 1.0]])


def test_furuta_explicit_witness():
    cert = verify_classical("furuta", FURUTA_A, FURUTA_B, p=3.0)
    assert cert.passed
    K = cert.constants["K"]
    m, M = cert.constants["m"], cert.constants["M"]
    w = np.linalg.eigvalsh(FURUTA_A)
    assert abs(m - w[0]) < 1e-12 and abs(M - w[1]) < 1e-12
    assert abs(K - kantorovich(m, M, 3.0)) < 1e-12
    # independent route: dense matmul, no functional calculus
    bound = K * (FURUTA_A @ FURUTA_A @ FURUTA_A) - FURUTA_B @ FURUTA_B @ FURUTA_B
    assert min_eigenvalue(bound) >= -1e-8
    assert abs(min_eigenvalue(bound) - cert.slack) < 1e-10


def test_furuta_random_pairs():
    for i, p in enumerate((1.5, 2.0, 3.0)):
        A, B = random_dominated_pair(3, 0.4, 2.5, seed=100 + i)
        cert = verify_classical("furuta", A, B, p=p)
        assert cert.passed, (p, cert.slack)


def test_furuta_hypothesis_checks():
    with pytest.raises(HypothesisViolated):
        verify_classical("furuta", FURUTA_B, FURUTA_A, p=3.0)  # order flipped
    with pytest.raises(HypothesisViolated):
        verify_classical("furuta", FURUTA_A, FURUTA_B, p=0.5)  # p < 1
    sing = np.diag([0.0, 1.0])
    with pytest.raises(HypothesisViolated):
        verify_classical("furuta", sing, np.zeros((2, 2)), p=2.0)  # A not PD
    with pytest.raises(HypothesisViolated):
        verify_classical("furuta", FURUTA_A, FURUTA_B, p=2.0, m=1.0, M=1.5)


def test_lowner_heinz_passes_and_checks_exponent():
    A, B = random_dominated_pair(3, 0.3, 2.0, seed=7)
    # dominated pair gives B <= A; the statement wants A <= B
    cert = verify_classical("lowner_heinz", B, A, p=0.5)
    assert cert.passed
    assert cert.constants == {"p": 0.5}
    with pytest.raises(HypothesisViolated):
        verify_classical("lowner_heinz", B, A, p=1.5)
    with pytest.raises(HypothesisViolated):
        verify_classical("lowner_heinz", A, B, p=0.5)  # order flipped


def test_alpha_beta_both_directions():
    A, B = random_dominated_pair(3, 0.4, 2.2, seed=19)
    up = verify_classical("alpha_beta_increasing", A, B, f=power(2), alpha=1.3)
    down = verify_classical("alpha_beta_decreasing", A, B, f=neglog(), alpha=1.0)
    assert up.passed and down.passed
    assert up.constants["alpha"] == 1.3
    assert "beta" in up.constants and "beta" in down.constants


def test_alpha_beta_hypothesis_checks():
    A, B = random_dominated_pair(2, 0.4, 2.0, seed=3)
    with pytest.raises(HypothesisViolated):
        verify_classical("alpha_beta_increasing", A, B, f=neglog())
    with pytest.raises(HypothesisViolated):
        verify_classical("alpha_beta_decreasing", A, B, f=power(2))
    with pytest.raises(HypothesisViolated):
        verify_classical("alpha_beta_increasing", A, B, f=power(2), alpha=-1.0)
    with pytest.raises(HypothesisViolated):
        verify_classical("alpha_beta_increasing", A, B, f=power(2),
                         m=5.0, M=6.0)


def test_verify_classical_rejects_unknown():
    with pytest.raises(ValueError):
        verify_classical("unknown", FURUTA_A, FURUTA_B, p=2.0)


# -- order violation search --------------------------------------------


def test_cube_violation_found():
    hit = find_order_violation(power(3), 2, 10_000, seed=42)
    assert hit is not None
    assert loewner_leq(hit.A, hit.B, tol=1e-12).holds
    direct = min_eigenvalue(calc(power(3), hit.B) - calc(power(3), hit.A))
    assert direct < -1e-8
    assert abs(direct - hit.witness) < 1e-12
    assert 0 <= hit.trial < 10_000


def test_monotone_functions_never_violate():
    assert find_order_violation(affine(2.0, 1.0), 2, 300, seed=0) is None
    assert find_order_violation(power(1.0), 2, 300, seed=0) is None


def test_certify_order_identity_function_general_pair():
    rng = np.random.default_rng(51)
    A = random_hermitian(3, -1.0, 1.5, rng)
    B = random_hermitian(3, -1.0, 1.5, rng)
    cert = certify_order(A, B, affine(1.0, 0.0), tol=1e-8)
    # B <= A + lambda_max(B - A) I is tight: slack 0
    lam = float(np.linalg.eigvalsh(B - A)[-1])
    assert abs(cert.constants["gamma"] - lam) < 1e-9
    assert abs(cert.slack) < 1e-9
    assert cert.passed


def test_delta_single_identity_map_hand_value():
    from loewner_cert import identity_family
    d01 = np.diag([0.0, 1.0]).astype(complex)
    cert = certify_jensen("delta_forward", power(2), [d01], [d01],
                          family=identity_family(2))
    assert abs(cert.constants["delta"] - 0.5) < 1e-6
    assert abs(cert.slack - 0.5) < 1e-6
    assert cert.passed


def test_theta_single_identity_equal_operands_passes():
    from loewner_cert import identity_family
    rng = np.random.default_rng(53)
    A = random_hermitian(3, 0.3, 1.7, rng)
    cert = certify_jensen("theta_reverse", power(2), [A], [A],
                          family=identity_family(3))
    assert cert.passed and cert.slack >= -1e-10


def test_sandwich_collapses_for_identity_function():
    rng = np.random.default_rng(57)
    fam = random_unital_family(2, 2, 2, seed=59)
    a_ops = [random_hermitian(2, 0.3, 1.9, rng) for _ in range(2)]
    b_ops = [random_hermitian(2, 0.3, 1.9, rng) for _ in range(2)]
    x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    x /= np.linalg.norm(x)
    res = verify_sandwich_pointwise(affine(1.0, 0.0), a_ops, b_ops,
                                    family=fam, x=x)
    assert abs(res.lower - res.middle) < 1e-12
    assert abs(res.middle - res.upper) < 1e-12
    assert res.ok


def test_sandwich_scalar_case_is_two_sided_gradient_bound():
    a = np.array([[2.0]], dtype=complex)
    b = np.array([[1.0]], dtype=complex)
    res = verify_sandwich_pointwise(power(2), a, b, x=np.array([1.0]))
    # f'(b)(a-b) <= f(a)-f(b) <= f'(a)(a-b) at a=2, b=1, f=t^2
    assert abs(res.lower - 2.0) < 1e-12
    assert abs(res.middle - 3.0) < 1e-12
    assert abs(res.upper - 4.0) < 1e-12
    assert res.ok


def test_alpha_beta_explicit_window_unit_alpha():
    A, B = random_dominated_pair(3, 1.0, 3.0, seed=61)
    cert = verify_classical("alpha_beta_increasing", A, B, f=power(2),
                            alpha=1.0, m=1.0, M=3.0)
    assert cert.passed
    assert abs(cert.constants["beta"] - 1.0) < 1e-9
