"""The ratio certificate pipeline: searches, contractions, replay."""

import json
import math
from fractions import Fraction

import pytest
import scipy.optimize

from sawkit.bounds import LowerBoundSequence
from sawkit.certificate import (CertificateError, CheckRecord,
                                NoContractionError, RatioCertificate,
                                certify_ratio, compute_R, compute_S,
                                find_epsilon_m, verify_certificate)
from sawkit.events import build_cycle_family
from sawkit.exact import Interval
from sawkit.graphs import catalog
from sawkit.quotient import build_quotient, sublattice_action

UNIT_BOUND = LowerBoundSequence.from_constant(1, "zd(1)")
WEAK_BOUND = LowerBoundSequence.from_constant(Fraction(9, 10), "zd(1)")


@pytest.fixture(scope="module")
def golden(z1, q_z1mod3):
    fam = build_cycle_family(q_z1mod3)
    return certify_ratio(z1, q_z1mod3, fam, UNIT_BOUND, budget=10)


def test_search_golden_parameters(q_z1mod3):
    fam = build_cycle_family(q_z1mod3)
    out = find_epsilon_m(q_z1mod3, fam, UNIT_BOUND, n_budget=10)
    assert out.status == "found"
    assert (out.r, out.epsilon, out.s, out.m) == (2, Fraction(1, 2), 4, 2)
    # the series the searches consumed: the unwindowed event fires as
    # soon as all three orbits are visited, so ef dies one step early
    assert out.event_free[:4] == [1, 2, 0, 0]
    assert out.directed[:4] == [1, 2, 2, 0]
    assert out.undirected[:5] == [1, 2, 2, 2, 2]


def test_search_weakened_bound(q_z1mod3):
    # a deliberately slack constant bound pushes the agreement index out
    fam = build_cycle_family(q_z1mod3)
    out = find_epsilon_m(q_z1mod3, fam, WEAK_BOUND, n_budget=12)
    assert out.status == "found"
    assert (out.r, out.s, out.m) == (2, 10, 3)


def test_search_budget_exhaustion(q_z1mod3):
    fam = build_cycle_family(q_z1mod3)
    out = find_epsilon_m(q_z1mod3, fam, WEAK_BOUND, n_budget=5)
    assert out.status == "exhausted"
    assert out.r == 2 and out.s is None
    assert "agreement" in out.reason


def test_golden_certificate(golden):
    assert golden.status == "certified"
    p = golden.payload["parameters"]
    assert p["decay_index"] == 2 and p["margin"] == "1/2"
    assert p["agreement_index"] == 4 and p["block_length"] == 2
    assert p["mu_upper_index"] == 4
    assert 0.49 < float(p["entropy_ratio"]) < 0.51
    assert 0.24 < float(p["block_factor"]) < 0.26
    assert 67.5 < float(p["rewiring_weight"]) < 68.5
    assert float(p["ln_ratio_bound"]) < 0.0
    assert golden.ratio_bound is not None and golden.ratio_bound < 1.0
    # rewiring ratio within ulps of one: the ln field carries the verdict
    assert 0.999 < float(p["rewiring_ratio"]) <= 1.0
    assert float(p["ln_rewiring_ratio"]) < 0.0
    # mu_upper is the exact 4th root of sigma_4 = 2, rounded outward
    assert abs(float(p["mu_upper"]) - 2 ** 0.25) < 1e-12


def test_golden_certificate_replays(golden):
    rep = verify_certificate(golden)
    assert rep.ok and rep.status == "certified"
    assert rep.summary().startswith("verified: certified")
    assert not any(line.startswith("FAIL") for line in rep.lines)


def test_byte_determinism(z1, q_z1mod3, golden):
    fam = build_cycle_family(q_z1mod3)
    again = certify_ratio(z1, q_z1mod3, fam, UNIT_BOUND, budget=10)
    assert again.to_json() == golden.to_json()


def test_save_load_round_trip(golden, tmp_path):
    path = str(tmp_path / "cert.json")
    golden.save(path)
    loaded = RatioCertificate.load(path)
    assert loaded.payload == golden.payload
    assert verify_certificate(loaded).ok


def test_zero_directed_growth_gives_zero_rewiring_ratio(z1):
    q1 = build_quotient(z1, sublattice_action([[1]]))
    fam = build_cycle_family(q1)
    cert = certify_ratio(z1, q1, fam, UNIT_BOUND, budget=10)
    assert cert.status == "certified"
    p = cert.payload["parameters"]
    assert p["rewiring_ratio"] == "0"
    assert float(p["ln_rewiring_ratio"]) == float("-inf")
    assert 0.49 < float(p["ratio_bound"]) < 0.51     # entropy side dominates
    assert verify_certificate(cert).ok


def test_inconclusive_certificate(z1, q_z1mod3):
    fam = build_cycle_family(q_z1mod3)
    cert = certify_ratio(z1, q_z1mod3, fam, WEAK_BOUND, budget=5)
    assert cert.status == "inconclusive-budget"
    assert "agreement" in cert.payload["reason"]
    assert cert.ratio_bound is None
    rep = verify_certificate(cert)       # consistent, just not a proof
    assert rep.ok and rep.status == "inconclusive-budget"

    empty = certify_ratio(z1, q_z1mod3, fam, UNIT_BOUND, budget=0)
    assert empty.status == "inconclusive-budget"
    assert "budget is zero" in empty.payload["reason"]


def test_compute_R_golden_values():
    c = compute_R(Fraction(1, 2), 2)
    assert c.ln_t.hi < 0 and c.ln_R.hi < 0
    assert 0.24 < c.t < 0.26 and 0.49 < c.R < 0.51
    assert c.zeta == pytest.approx(1e-9)
    assert c.a == pytest.approx(c.zeta / 4)
    assert all(rec.holds for rec in c.checks)


def test_compute_R_no_contraction():
    # a margin so tiny that the m*ln(1-eps) shrink cannot beat the
    # binary-entropy term anywhere on the split-fraction domain
    with pytest.raises(NoContractionError) as ei:
        compute_R(Fraction(1, 10 ** 10), 1)
    records = ei.value.args[1]
    assert any(not rec.holds for rec in records)


def test_split_fraction_is_a_grid_minimum():
    # the chosen split fraction should be at least as good as a fine
    # float grid over the whole domain (the factor is endpoint-minimal)
    eps, m = Fraction(1, 2), 2
    c1 = m * math.log(float((1 + eps) / (1 - eps)))
    c2 = m * math.log(float(1 - eps))

    def ln_g(z):
        return -z * math.log(z) - (1 - z) * math.log1p(-z) + z * c1 + c2

    c = compute_R(eps, m)
    grid = [10 ** -9 + i * (1 - 2e-9) / 4096 for i in range(4097)]
    assert ln_g(c.zeta) <= min(ln_g(z) for z in grid) + 1e-12


def test_compute_S_golden_values():
    c = compute_R(Fraction(1, 2), 2)
    mu = Interval.point(2 ** 0.25)
    s = compute_S(Fraction(1, 2), 2, degree=2, ell=3,
                  a_iv=c.a_iv, dcounts=[1, 2, 2, 0, 0], mu_upper=mu)
    # Z = 6 * mu^6 * (2+2+0+0) = 24 * 2^(3/2)
    assert s.Z.lo == pytest.approx(24 * 2 ** 1.5, rel=1e-12)
    assert s.eta == pytest.approx(1 / (1 + 24 * 2 ** 1.5), rel=1e-9)
    assert s.ln_S.hi < 0 and 0 < s.S <= 1.0
    assert s.kappa.lo > 0


def test_rewiring_fraction_matches_numeric_minimizer():
    # closed-form eta = 1/(1+Z) against scipy's bounded minimizer of the
    # convex objective eta*ln(Z) + eta*ln(eta) + (1-eta)*ln(1-eta)
    Z = 24 * 2 ** 1.5
    lnZ = math.log(Z)

    def objective(eta):
        return eta * lnZ + eta * math.log(eta) + (1 - eta) * math.log1p(-eta)

    res = scipy.optimize.minimize_scalar(objective, bounds=(1e-12, 1 - 1e-12),
                                         method="bounded",
                                         options={"xatol": 1e-10})
    assert res.x == pytest.approx(1 / (1 + Z), rel=1e-5)
    assert res.fun == pytest.approx(-math.log1p(1 / Z), abs=1e-12)


def test_compute_S_misuse():
    c = compute_R(Fraction(1, 2), 2)
    mu = Interval.point(2 ** 0.25)
    with pytest.raises(CertificateError):
        compute_S(Fraction(1, 2), 2, 2, 3, c.a_iv, [1, 2], mu)   # too short
    with pytest.raises(CertificateError):
        compute_S(Fraction(1, 2), 0, 2, 3, c.a_iv, [1, 2, 2, 0, 0], mu)


def test_certify_ratio_misuse(z2, q_z1mod3):
    fam = build_cycle_family(q_z1mod3)
    with pytest.raises(CertificateError):
        certify_ratio(z2, q_z1mod3, fam, UNIT_BOUND, budget=5)
    with pytest.raises(CertificateError):
        certify_ratio(catalog("zd(1)"), q_z1mod3, fam, UNIT_BOUND, budget=-1)


# -- tamper detection --------------------------------------------------------

def _tampered(golden, mutate):
    payload = json.loads(golden.to_json())
    mutate(payload)
    return RatioCertificate(payload)


def test_tampered_count_is_caught(golden):
    def flip(p):
        p["counts"]["event_free"][2] = str(int(p["counts"]["event_free"][2]) + 1)
    rep = verify_certificate(_tampered(golden, flip))
    assert not rep.ok
    assert any("verdict mismatch" in line for line in rep.lines)


def test_tampered_verdict_is_caught(golden):
    def flip(p):
        for c in p["checks"]:
            if c["name"] == "event_decay" and not c["holds"]:
                c["holds"] = True
                return
    rep = verify_certificate(_tampered(golden, flip))
    assert not rep.ok


def test_tampered_index_is_caught(golden):
    def forge(p):
        p["parameters"]["decay_index"] = 3
    rep = verify_certificate(_tampered(golden, forge))
    assert not rep.ok
    assert any("margin" in line for line in rep.lines if "FAIL" in line)


def test_dropped_probe_is_caught(golden):
    def drop(p):
        for i, c in enumerate(p["checks"]):
            if c["name"] == "event_decay":
                del p["checks"][i]
                return
    rep = verify_certificate(_tampered(golden, drop))
    assert not rep.ok
    assert any("contiguously" in line for line in rep.lines)


def test_forged_final_bound_is_caught(golden):
    def forge(p):
        p["parameters"]["ln_ratio_bound"] = "-1"
    rep = verify_certificate(_tampered(golden, forge))
    assert not rep.ok
    assert any("drift" in line for line in rep.lines)


def test_unknown_format_is_rejected(golden):
    def forge(p):
        p["format"] = "something-else"
    rep = verify_certificate(_tampered(golden, forge))
    assert not rep.ok


def test_check_record_round_trip():
    rec = CheckRecord("event_decay", 3, "0", "2/3", True, "exact-root",
                      (("split_fraction", "0.5"),))
    assert CheckRecord.from_json(rec.to_json()) == rec
