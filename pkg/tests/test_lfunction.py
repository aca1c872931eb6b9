import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prime_interference.characters import DirichletCharacter, ImprimitiveCharacterError, parse_character_id
from prime_interference.lfunction import (
    EvalParams,
    MissedZeroWarning,
    PoleError,
    PrecisionWarning,
    ZeroList,
    ZeroListFormatError,
    expected_zero_count,
    export_zeros,
    find_zeros,
    hardy_z,
    hurwitz_zeta,
    import_zeros,
    l_value,
    read_zeros,
    theta,
    write_zeros,
)

from .conftest import CHARACTER_IDS, DATA

CATALAN = 0.915965594177219015


# --- Hurwitz and L values --------------------------------------------------------


def test_hurwitz_basel():
    assert hurwitz_zeta(2, 1.0) == pytest.approx(math.pi**2 / 6, rel=1e-13)
    assert hurwitz_zeta(2, 0.5) == pytest.approx(math.pi**2 / 2, rel=1e-13)


def test_hurwitz_vanishes_at_first_zeta_zero():
    assert abs(hurwitz_zeta(0.5 + 14.134725141734693j, 1.0)) < 1e-6


def test_hurwitz_pole():
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.3)
    with pytest.raises(ValueError):
        hurwitz_zeta(2, 0.0)


@pytest.mark.parametrize("key", ["1/3 at 1/2+50i", "0.2 at 1/2+150i", "0.75 at 0.5+199i"])
def test_hurwitz_against_oracle(oracle, key):
    alpha = {"1/3": 1 / 3, "0.2": 0.2, "0.75": 0.75}[key.split()[0]]
    t = float(key.split("+")[1].rstrip("i"))
    want = complex(*map(float, oracle["hurwitz"][key]))
    got = hurwitz_zeta(0.5 + 1j * t, alpha)
    assert abs(got - want) <= 1e-10 * abs(want)


def test_euler_maclaurin_converges_when_n_doubles():
    s = 0.5 + 50j
    base = hurwitz_zeta(s, 1 / 3)
    n = EvalParams().terms_for(50)
    doubled = hurwitz_zeta(s, 1 / 3, EvalParams(euler_maclaurin_terms=2 * n))
    assert abs(doubled - base) < 1e-10 * abs(base)


def test_precision_warning_when_n_too_small():
    with pytest.warns(PrecisionWarning):
        hurwitz_zeta(0.5 + 400j, 0.5, EvalParams(euler_maclaurin_terms=10, bernoulli_terms=2))


def test_hurwitz_array_matches_scalar():
    s = 0.5 + 1j * np.array([3.0, 17.5, 90.0])
    arr = hurwitz_zeta(s, 0.25)
    for v, z in zip(s, arr):
        assert z == pytest.approx(hurwitz_zeta(complex(v), 0.25), rel=1e-14)


def test_l_value_classical_constants():
    chi4 = DirichletCharacter(4, 3)
    assert l_value(2, chi4) == pytest.approx(CATALAN, rel=1e-12)
    assert l_value(1, chi4) == pytest.approx(math.pi / 4, rel=1e-12)
    assert abs(l_value(0.5 + 6.020948904697597j, chi4)) < 1e-6
    assert l_value(2, DirichletCharacter(1, 1)) == pytest.approx(math.pi**2 / 6, rel=1e-13)
    # L(1, chi_3) = pi / (3 sqrt 3)
    assert l_value(1, DirichletCharacter(3, 2)) == pytest.approx(math.pi / (3 * math.sqrt(3)), rel=1e-12)


def test_l_value_pole_for_principal():
    with pytest.raises(PoleError):
        l_value(1, DirichletCharacter(1, 1))


@pytest.mark.parametrize("cid", CHARACTER_IDS)
def test_l_value_matches_dirichlet_series_at_s3(cid):
    chi = parse_character_id(cid)
    direct = math.fsum(chi(n).real / n**3 for n in range(1, 200000)) + 1j * math.fsum(
        chi(n).imag / n**3 for n in range(1, 200000)
    )
    assert l_value(3, chi) == pytest.approx(direct, abs=1e-10)


# --- Hardy Z -----------------------------------------------------------------------


def test_hardy_z_at_zeta_zero_and_origin(oracle):
    zeta = DirichletCharacter(1, 1)
    assert abs(hardy_z(14.134725141734693, zeta)) < 1e-6
    assert abs(hardy_z(0.0, zeta)) == pytest.approx(abs(float(oracle["zeta_half"])), rel=1e-9)


@pytest.mark.parametrize("cid", CHARACTER_IDS)
def test_hardy_z_is_real_and_consistent_with_l(cid):
    chi = parse_character_id(cid)
    t = np.linspace(0.5, 200, 97)
    z = hardy_z(t, chi)
    assert np.allclose(np.abs(z), np.abs(l_value(0.5 + 1j * t, chi)), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("cid", ["3.2", "4.3", "5.4"])
def test_real_character_theta_is_odd(cid):
    chi = parse_character_id(cid)
    t = np.array([1.0, 7.5, 33.0])
    assert np.allclose(theta(-t, chi), -theta(t, chi), atol=1e-12)


def test_imprimitive_rejected():
    with pytest.raises(ImprimitiveCharacterError, match="3.2"):
        hardy_z(5.0, DirichletCharacter(6, 5))
    with pytest.raises(ImprimitiveCharacterError):
        find_zeros(DirichletCharacter(6, 5), 10)


# --- zeros ---------------------------------------------------------------------------


def test_zeta_to_50():
    zl = find_zeros(DirichletCharacter(1, 1), 50)
    assert len(zl) == 10
    assert zl.gammas[0] == pytest.approx(14.134725, abs=1e-6)
    assert zl.gammas[9] == pytest.approx(49.773832, abs=1e-6)
    assert zl.source == "computed" and zl.t_max == 50


def test_mod3_first_zero():
    assert find_zeros(DirichletCharacter(3, 2), 30).gammas[0] == pytest.approx(8.039737, abs=1e-6)


@pytest.mark.parametrize("cid", CHARACTER_IDS)
def test_no_zero_below_one(cid):
    assert len(find_zeros(parse_character_id(cid), 1.0)) == 0


@pytest.mark.parametrize("cid", CHARACTER_IDS)
def test_first_zeros_match_oracle(cid, oracle, zero_lists):
    want = [float(g) for g in oracle["zeros"][cid]]
    got = zero_lists[cid].gammas[: len(want)]
    assert np.max(np.abs(np.array(got) - want)) < 1e-6


@pytest.mark.parametrize("cid", CHARACTER_IDS)
def test_counts_to_100(cid, oracle, zeros_to_100):
    chi = parse_character_id(cid)
    n = len(zeros_to_100[cid])
    assert n == oracle["counts_T100"][cid]
    assert abs(n - expected_zero_count(chi, 100)) <= 2


def test_counting_formula_leading_term():
    # the smooth count tracks (T / 2 pi) log(q T / (2 pi e)) up to O(1)
    for q, label in [(1, 1), (3, 2), (4, 3), (5, 2)]:
        chi = DirichletCharacter(q, label)
        for T in (100, 300):
            lead = T / (2 * math.pi) * math.log(q * T / (2 * math.pi * math.e))
            assert abs(expected_zero_count(chi, T) - lead) < 2


@pytest.mark.parametrize("cid", CHARACTER_IDS)
def test_every_zero_is_a_zero(cid, zero_lists):
    chi = parse_character_id(cid)
    g = zero_lists[cid].array()
    assert np.max(np.abs(l_value(0.5 + 1j * g, chi))) < 1e-6


@pytest.mark.parametrize("cid, conj", [("5.2", "5.3"), ("5.3", "5.2")])
def test_conjugate_reflection(cid, conj, zero_lists):
    chi = parse_character_id(cid)
    g = zero_lists[conj].array()
    assert np.max(np.abs(l_value(0.5 - 1j * g, chi))) < 1e-6


def test_conjugate_lists_differ():
    a = find_zeros(DirichletCharacter(5, 2), 20)
    b = find_zeros(DirichletCharacter(5, 3), 20)
    assert a.gammas[0] != pytest.approx(b.gammas[0], abs=1e-3)


def test_coarse_scan_warns():
    # zeros of a conductor-97 L-function are too dense for a 0.5 step
    with pytest.warns(MissedZeroWarning):
        find_zeros(DirichletCharacter(97, 5), 60, EvalParams(scan_step=0.5))


def test_t_max_ceiling():
    with pytest.raises(ValueError):
        find_zeros(DirichletCharacter(1, 1), 600)


def test_tighter_tolerance_agrees():
    a = find_zeros(DirichletCharacter(4, 3), 30)
    b = find_zeros(DirichletCharacter(4, 3), 30, EvalParams(bisection_tol=1e-11, scan_step=0.02))
    assert np.allclose(a.array(), b.array(), atol=2e-9)


# --- params and ZeroList -----------------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs",
    [dict(euler_maclaurin_terms=5), dict(bernoulli_terms=0), dict(bernoulli_terms=16), dict(bisection_tol=1e-2), dict(scan_step=0.0), dict(scan_step=0.6)],
)
def test_eval_params_validation(kwargs):
    with pytest.raises(ValueError):
        EvalParams(**kwargs)


@pytest.mark.parametrize("gammas", [(2.0, 1.0), (1.0, 1.0), (-1.0,), (0.0,), (1.0, 1.0 + 1e-7)])
def test_zero_list_invariants(gammas):
    with pytest.raises(ValueError):
        ZeroList("4.3", gammas)


def test_truncate():
    zl = ZeroList("1.1", (14.1, 21.0, 25.0), t_max=30.0)
    assert zl.truncate(count=2).gammas == (14.1, 21.0)
    assert zl.truncate(height=22).gammas == (14.1, 21.0)
    assert zl.truncate(height=22).t_max == 22


# --- file format ---------------------------------------------------------------------


def test_import_example():
    zl = import_zeros("# character 4.3\n6.0209489\n10.2437703\n")
    assert zl.character_id == "4.3" and zl.source == "imported"
    assert zl.gammas == (6.0209489, 10.2437703)
    assert zl.t_max == 0.0


def test_import_empty_body():
    assert len(import_zeros("# character 5.2\n# t_max 10\n")) == 0


def test_import_ordering_violation():
    with pytest.raises(ZeroListFormatError) as err:
        import_zeros("# character 4.3\n10.2437703\n6.0209489\n")
    assert err.value.line == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("6.02\n", 1),
        ("# character 4.x\n", 1),
        ("# character 4.2\n", 1),
        ("# character 4.3\n6.02\nabc\n", 3),
        ("# character 4.3\n# t_max nope\n", 2),
        ("# character 4.3\n-1.5\n", 2),
    ],
)
def test_import_errors_carry_line(text, line):
    with pytest.raises(ZeroListFormatError) as err:
        import_zeros(text)
    assert err.value.line == line


def test_import_header_mismatch():
    with pytest.raises(ZeroListFormatError):
        import_zeros("# character 5.2\n1.0\n", expect="5.3")
    assert import_zeros("# character 5.2\n1.0\n", expect="5.2").character_id == "5.2"


def test_comments_are_skipped():
    zl = import_zeros("# character 3.2\n8.039737156\n# a note\n\n11.249206208\n")
    assert len(zl) == 2


def test_export_empty():
    assert export_zeros(ZeroList("5.4")) == "# character 5.4\n"


def test_round_trip_mod5(zero_lists, tmp_path):
    zl = zero_lists["5.2"].truncate(height=100)
    back = import_zeros(export_zeros(zl))
    assert back.character_id == zl.character_id and back.t_max == zl.t_max
    assert back.gammas == tuple(round(g, 9) for g in zl.gammas)
    assert export_zeros(back) == export_zeros(zl)
    path = tmp_path / "z.txt"
    write_zeros(zl, path)
    assert read_zeros(path, expect="5.2").gammas == back.gammas


def test_golden_zeta_file(oracle):
    golden = (DATA / "zeta_10.txt").read_text()
    assert export_zeros(find_zeros(DirichletCharacter(1, 1), 50)) == golden
    want = [float(g) for g in oracle["zeros"]["1.1"]]
    assert np.allclose(import_zeros(golden).array(), want, atol=1e-9)


@given(st.lists(st.floats(min_value=0.01, max_value=500, allow_nan=False), max_size=40))
def test_round_trip_property(values):
    g = sorted({round(v, 9) for v in values})
    g = [x for i, x in enumerate(g) if i == 0 or x - g[i - 1] > 1e-6]
    zl = ZeroList("3.2", tuple(g))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert import_zeros(export_zeros(zl)).gammas == zl.gammas
