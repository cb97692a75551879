"""End-to-end acceptance battery.

Eight independent checks, one test each, so `pytest -v` prints one
pass/fail line per criterion. Batteries use their own seeded generators
rather than hypothesis: the draw sequence is part of the contract here,
and the runtime limits are asserted alongside the numerics.
"""

import shutil
import subprocess
import time

import numpy as np
import pytest

from sldlab import (
    BlaschkeProduct,
    CoeffPoly,
    TrigPoly,
    autocorrelation,
    bundled_constellation,
    certify_bound,
    enumerate_classes,
    factor_eval,
    factor_sld,
    find_roots,
    gap_experiment,
    lift,
    numeric_magnitude_equiv,
    product_eval,
    single_class_constellation,
    struct_magnitude_equiv,
)

from oracles import lattice_ambiguity, same_class_sets

INT_LATTICE = [complex(a, b) for a in range(-2, 3) for b in (-1, 0, 1)]


def _poly(coeffs):
    coeffs = np.asarray(coeffs, dtype=complex)
    return CoeffPoly(coeffs=coeffs, n=len(coeffs) - 1)


def _draw_roots(rng, count):
    """Roots kept off the circle and clear of each other's reflections."""
    roots = []
    while len(roots) < count:
        radius = rng.uniform(0.25, 0.85) if rng.random() < 0.5 else rng.uniform(1.2, 3.0)
        z = radius * np.exp(2j * np.pi * rng.random())
        if all(
            abs(z - w) > 0.05 and abs(z - 1 / np.conj(w)) > 0.05 for w in roots
        ):
            roots.append(z)
    return roots


def _coeffs_from_roots(roots, lead):
    out = np.array([complex(lead)])
    for r in roots:
        out = np.convolve(out, np.array([-complex(r), 1.0 + 0j]))
    return out


def test_criterion_1_structural_matches_sampled_oracle():
    rng = np.random.default_rng(1001)
    start = time.perf_counter()
    for trial in range(250):
        count = int(rng.integers(1, 11))
        roots = _draw_roots(rng, count)
        lead = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.random())
        f = _poly(_coeffs_from_roots(roots, lead))

        # a related partner: reflect a random subset of roots across the
        # circle, absorb each |r| into the lead, then rescale by c
        mask = rng.random(count) < 0.5
        flipped, scale = [], lead
        for j, r in enumerate(roots):
            if mask[j]:
                flipped.append(1 / np.conj(r))
                scale *= abs(r)
            else:
                flipped.append(r)
        c = rng.uniform(0.5, 2.0)
        g = _poly(_coeffs_from_roots(flipped, scale * c * np.exp(2j * np.pi * rng.random())))

        sv = struct_magnitude_equiv(f, g)
        nv = numeric_magnitude_equiv(f, g)
        assert sv.related and nv.related
        assert abs(sv.kappa - nv.kappa) <= 1e-6 * nv.kappa
        assert abs(sv.kappa - 1 / c) <= 1e-6 / c

        # an unrelated partner: an independent draw
        other = _poly(
            _coeffs_from_roots(
                _draw_roots(rng, int(rng.integers(1, 11))),
                rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.random()),
            )
        )
        sv = struct_magnitude_equiv(f, other)
        nv = numeric_magnitude_equiv(f, other)
        assert sv.related == nv.related == False  # noqa: E712
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, "500 equivalence instances took %.2fs" % elapsed


def test_criterion_2_class_count_never_beats_the_bound():
    rng = np.random.default_rng(2002)
    start = time.perf_counter()
    generic_hits = 0
    for trial in range(200):
        m = int(rng.integers(1, 4))
        coeffs = rng.normal(size=2 * m + 1) + 1j * rng.normal(size=2 * m + 1)
        p = TrigPoly(m=m, coeffs=coeffs)
        cs = enumerate_classes(p)
        assert cs.bound == 2 ** (2 * m + 1)
        assert cs.exact_count <= cs.bound

        r = find_roots(lift(p))
        locs = [root.location for root in r.roots]
        generic = (
            r.origin_mult == 0
            and r.degree == 2 * m
            and len(locs) == 2 * m
            and all(root.multiplicity == 1 for root in r.roots)
            and all(root.label != "on_circle" for root in r.roots)
            and all(
                abs(a - 1 / np.conj(b)) > 1e-3
                for a in locs
                for b in locs
            )
            and all(
                abs(a - b) > 1e-3 for i, a in enumerate(locs) for b in locs[:i]
            )
        )
        if generic:
            generic_hits += 1
            assert cs.exact_count == 2 ** (2 * m)
    elapsed = time.perf_counter() - start
    assert generic_hits >= 150, "only %d generic draws" % generic_hits
    assert elapsed < 30.0, "200 enumerations took %.2fs" % elapsed


def test_criterion_3_factorization_inverts_enumeration():
    rng = np.random.default_rng(3003)
    for trial in range(100):
        m = int(rng.integers(1, 4))
        coeffs = rng.normal(size=2 * m + 1) + 1j * rng.normal(size=2 * m + 1)
        p = TrigPoly(m=m, coeffs=coeffs)
        forward = enumerate_classes(p)
        recovered = factor_sld(autocorrelation(p))
        assert recovered.exact_count == forward.exact_count
        assert same_class_sets(
            [rep.coeffs for rep in forward.representatives],
            [rep.coeffs for rep in recovered.representatives],
            tol=1e-5,
        )
        report = certify_bound(recovered)
        assert report.passed
        assert report.max_residual <= 1e-8 * recovered.autocorr.c0


def test_criterion_4_fixtures_match_brute_force():
    shift = TrigPoly(m=1, coeffs=[0, 1, 1])
    cs = enumerate_classes(shift)
    assert cs.exact_count == 2
    hits = lattice_ambiguity(autocorrelation(shift).coeffs, INT_LATTICE, 3)
    assert len(hits) == 2
    assert same_class_sets(hits, [rep.coeffs for rep in cs.representatives])

    tone = TrigPoly(m=1, coeffs=[0, 2, 0])  # flat intensity, only the
    flat = autocorrelation(tone)            # center lag survives
    cs = factor_sld(flat)
    assert cs.exact_count == 3
    hits = lattice_ambiguity(flat.coeffs, INT_LATTICE, 3)
    assert len(hits) == 3
    assert same_class_sets(hits, [rep.coeffs for rep in cs.representatives])


def test_criterion_5_bundled_gap_stays_under_bound():
    for m in (1, 2, 3, 4):
        r = gap_experiment(bundled_constellation(m))
        assert r.per_dim_gap <= 1 + np.log2(m) / (2 * m + 1) + 1e-9
        assert r.chain_residual <= 1e-9
        assert r.passed


def test_criterion_6_single_class_family_approaches_one_bit():
    gaps = []
    for m in (1, 2, 3, 4):
        q = 2 * m
        r = gap_experiment(single_class_constellation(m, q))
        assert r.i_xs == pytest.approx(0.0, abs=1e-12)
        assert r.per_dim_gap == pytest.approx(q / (2 * m + 1), abs=1e-12)
        assert r.per_dim_gap <= 1 + np.log2(m) / (2 * m + 1) + 1e-9
        gaps.append(r.per_dim_gap)
    assert all(b > a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] == pytest.approx(8 / 9, abs=1e-12)
    assert 1.0 - gaps[-1] < 0.12


def test_criterion_7_blaschke_products_are_unimodular():
    z = np.exp(2j * np.pi * np.arange(256) / 256)
    rng = np.random.default_rng(7007)
    worst = 0.0
    for trial in range(100):
        factors = []
        for _ in range(int(rng.integers(1, 5))):
            gamma = rng.uniform(0.05, 0.9) * np.exp(2j * np.pi * rng.random())
            factors.append((gamma, int(rng.integers(1, 3))))
        B = BlaschkeProduct(
            tau=np.exp(2j * np.pi * rng.random()),
            n0=int(rng.integers(0, 3)),
            factors=tuple(factors),
        )
        worst = max(worst, np.abs(np.abs(product_eval(B, z)) - 1.0).max())
    assert worst <= 1e-12

    alpha = 0.37 + 0.2j
    assert factor_eval(alpha, 0.0) == alpha
    assert np.array_equal(factor_eval(0.0, z), -z)


def test_criterion_8_cli_runs_are_byte_identical(tmp_path):
    exe = shutil.which("sldlab")
    assert exe, "console script not installed"
    sig = tmp_path / "sig.json"
    sig.write_text(
        '{"m": 1, "coeffs": [[6, 0], [-5, 0], [1, 0]]}', encoding="utf-8"
    )
    batteries = (
        [exe, "enumerate", str(sig), "--seed", "31415"],
        [exe, "analyze", str(sig), "--seed", "31415"],
        [exe, "gap", "--sweep", "m=1..3"],
    )
    for cmd in batteries:
        first = subprocess.run(cmd, capture_output=True, timeout=120)
        second = subprocess.run(cmd, capture_output=True, timeout=120)
        assert first.returncode == 0 and second.returncode == 0
        assert first.stdout == second.stdout
        assert first.stdout  # the report actually went somewhere
