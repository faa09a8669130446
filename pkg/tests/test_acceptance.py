"""Acceptance criteria 1-12, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""
import random
import statistics
import subprocess
import sys
import time
import warnings
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from kstab import conedeg, githm, logfano, mklambda
from kstab.forms import Form, monomials
from kstab.githm import ON_WALL, UNSTABLE, TupleConfig
from kstab.logfano import PairConfig


@contextmanager
def criterion(capsys, number, title):
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:2d} FAIL  {title}: {type(exc).__name__}: {exc}")
        raise
    extra = f"  [{detail['note']}]" if "note" in detail else ""
    with capsys.disabled():
        print(f"\nACCEPTANCE {number:2d} PASS  {title}{extra}")


def grid():
    out = []
    for n in range(1, 7):
        def rec(prefix, budget):
            if prefix:
                out.append((n, tuple(prefix)))
            if len(prefix) == 3:
                return
            for d in range(1, budget + 1):
                rec(prefix + [d], budget - d)
        rec([], n)
    return out


def timed(fn, repeat=1):
    times, result = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return result, times


def test_criterion_01_a_vector_value(capsys):
    with criterion(capsys, 1, "a_vector(4,(2,2)) = (5/6, 5/6) exactly, < 1 ms") as d:
        res, times = timed(lambda: logfano.a_vector(4, (2, 2)), repeat=21)
        assert res.values == (F(5, 6), F(5, 6))
        med = statistics.median(times)
        d["note"] = f"median {med * 1e3:.3f} ms, first call {times[0] * 1e3:.3f} ms"
        assert med < 1e-3


def test_criterion_02_formula_grid(capsys):
    with criterion(capsys, 2, "a_vector(n,(d)) = 1 - (n+1-d)/(nd), n in 2..8, 2 <= d <= n"):
        for n in range(2, 9):
            for d in range(2, n + 1):
                assert logfano.a_vector(n, (d,)).values == (1 - F(n + 1 - d, n * d),)


def test_criterion_03_beta_vanishing(capsys):
    with criterion(capsys, 3, "beta = 0 at the a-vector on the grid (integration oracle), < 10 s") as d:
        t = time.perf_counter()
        count = 0
        for n, degrees in grid():
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                a = logfano.a_vector(n, degrees, check_extremal=False)
            cfg = PairConfig(n, degrees, a.values)
            for i in range(1, len(degrees) + 1):
                s = logfano.s_invariant(cfg, i)  # term-by-term integration
                assert (1 - a.values[i - 1]) - s == 0
                count += 1
        elapsed = time.perf_counter() - t
        d["note"] = f"{count} betas in {elapsed:.2f} s"
        assert elapsed < 10


def test_criterion_04_extremality(capsys):
    with criterion(capsys, 4, "a-vector is a vertex of kss_polytope on the grid (no all-ones)") as d:
        cases = [(n, dg) for n, dg in grid() if any(x > 1 for x in dg)]
        for n, degrees in cases:
            a = logfano.a_vector(n, degrees, check_extremal=False)
            assert a.values in logfano.kss_polytope(n, degrees).vertices
        d["note"] = f"{len(cases)} cases"


def test_criterion_05_cone_chain(capsys):
    with criterion(capsys, 5, "cone_chain(4,(2,2)) radii 2/3, 1/2; checks pass on the grid"):
        ch = logfano.cone_chain(4, (2, 2))
        assert ch.radii == (F(2, 3), F(1, 2)) and ch.ok
        for n, degrees in grid():
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                assert logfano.cone_chain(n, degrees).ok


def _random_form(rng, nvars, degree):
    mons = monomials(nvars, degree)
    picks = rng.sample(mons, rng.randint(1, min(3, len(mons))))
    return Form.make([(p, rng.choice([-2, -1, 1, 2])) for p in picks], degree)


def test_criterion_06_cm_routes(capsys):
    with criterion(capsys, 6, "def31/lem32/lem41 agree up to one positive scalar per class, >= 100 samples") as d:
        rng = random.Random(2024)
        samples = 0
        scalars_seen = set()
        for _ in range(25):
            n = rng.randint(1, 3)
            k = rng.randint(1, 2)
            degrees = [rng.randint(1, 4) for _ in range(k)]
            ys = [F(rng.randint(1, 6), rng.randint(1, 6)) for _ in range(k)]
            per_class = set()
            for _ in range(4):
                forms = [_random_form(rng, n + 1, e) for e in degrees]
                w = mklambda.random_one_ps(rng, n + 1, 4)
                rep = mklambda.cm_weight(mklambda.EquivariantFamily.make(n, forms, ys), w)
                assert rep.agree
                for s in rep.scalars.values():
                    if s is not None:
                        assert s > 0
                        per_class.add(s)
                samples += 1
            assert len(per_class) <= 1
            scalars_seen |= per_class
        assert samples >= 100
        d["note"] = f"{samples} samples, scalars {sorted(map(str, scalars_seen))}"


def test_criterion_07_effective_linearization(capsys):
    with criterion(capsys, 7, "effective_linearization(1,(2,2),y) proportional to y, 10 seeded y"):
        rng = random.Random(77)
        for seed in range(10):
            y = (F(rng.randint(1, 12), rng.randint(1, 12)), F(rng.randint(1, 12), rng.randint(1, 12)))
            g = mklambda.effective_linearization(1, (2, 2), y, seed=seed)
            assert g[0] * y[1] == g[1] * y[0]


def _three_paths(t):
    v = githm.torus_semistable(t)  # barycenter membership vs candidate minimum
    box_min, _ = githm.exhaustive_min_weight(t, bound=6)
    if v.status == UNSTABLE:
        assert githm.combined_weights(t.forms, t.linearization, [v.certificate])[0] < 0
        assert box_min < 0
    else:
        assert box_min >= 0
    return v


def test_criterion_08_git_sanity(capsys):
    with criterion(capsys, 8, "cusp unstable, x0^m x1^(d-m) (m > d/2) unstable, full support semistable; < 5 s") as d:
        t0 = time.perf_counter()
        cusp = Form.make([((1, 0, 2), 1), ((0, 3, 0), -1)])
        v = _three_paths(TupleConfig.make(2, [cusp]))
        assert v.status == UNSTABLE and githm.hm_weight(cusp, v.certificate) < 0
        for deg in range(1, 7):
            for m in range(deg // 2 + 1, deg + 1):
                v = _three_paths(TupleConfig.make(1, [Form.monomial((m, deg - m))]))
                assert v.status == UNSTABLE
        statuses = set()
        for n in (1, 2):
            for deg in range(1, 5):
                full = Form.make([(a, 1) for a in monomials(n + 1, deg)], deg)
                v = _three_paths(TupleConfig.make(n, [full]))
                assert v.semistable
                statuses.add(v.status)
        elapsed = time.perf_counter() - t0
        d["note"] = f"full-support statuses {sorted(statuses)}; {elapsed:.2f} s"
        assert elapsed < 5


def test_criterion_09_vgit(capsys):
    with criterion(capsys, 9, "vgit(1,(2,2)) one wall; (x0^2,x1^2) on-wall only on it; chamber constancy"):
        ch = githm.vgit_chambers(1, (2, 2))
        assert [w.normal for w in ch.walls] == [(1, -1)]
        pair = [Form.monomial((2, 0)), Form.monomial((0, 2))]
        for c in ch.arrangement.cells:
            status = githm.torus_semistable(TupleConfig.make(1, pair, c.point)).status
            assert status == (ON_WALL if c.signs == (0,) else UNSTABLE)
        rng = random.Random(9)
        corpus = [[_random_form(rng, 2, 2), _random_form(rng, 2, 2)] for _ in range(10)]
        for forms in corpus:
            for c in ch.chambers:
                pts = githm.chamber_samples(c, 3)
                assert len(pts) == 3
                seen = {githm.git_check(TupleConfig.make(1, forms, p)).status for p in pts}
                assert len(seen) == 1


def test_criterion_10_cone_hilbert(capsys):
    with criterion(capsys, 10, "cone identities n <= 5, d <= n+1, m_max 20; ci_hilbert matches brute force"):
        for n in range(1, 6):
            for dd in range(1, n + 2):
                assert conedeg.cone_quotient_check(n, dd, 20).checks_passed
        for n in range(1, 6):
            for k in range(0, min(3, n + 1) + 1):
                for degrees in _tuples(k):
                    for m in range(31):
                        assert conedeg.ci_hilbert(n, degrees, m) == conedeg.ci_hilbert_bruteforce(n, degrees, m)


def _tuples(k):
    if k == 0:
        return [()]
    return [(x,) + rest for x in range(1, 5) for rest in _tuples(k - 1)]


def test_criterion_11_kss_interval(capsys):
    with criterion(capsys, 11, "kss_polytope(2,(2)) = [0, 3/4]"):
        p = logfano.kss_polytope(2, (2,))
        assert p.vertices == ((F(0),), (F(3, 4),))


def test_criterion_12_determinism(capsys, tmp_path):
    with criterion(capsys, 12, "report twice with the same seed is byte-identical"):
        outs = []
        for name in ("a", "b"):
            target = tmp_path / f"{name}.json"
            proc = subprocess.run(
                [sys.executable, "-m", "kstab.cli", "report", "--n", "4", "--degrees", "2,2",
                 "--seed", "7", "--json", str(target)],
                capture_output=True, check=True)
            outs.append((proc.stdout, target.read_bytes()))
        assert outs[0] == outs[1]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
