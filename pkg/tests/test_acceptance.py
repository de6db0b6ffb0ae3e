"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines as they complete.
"""

import time

import numpy as np
import pytest

from phasekit import (
    cli,
    core,
    decay,
    dynamics,
    histories,
    phasespace,
    spin_bell,
    tomography,
)
from conftest import build_corpus

GAUSSIAN_STATES = ("ground", "wide_gaussian", "displaced", "squeezed",
                   "gaussian_mixture")


def report(number: int, description: str, passed: bool) -> None:
    verdict = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {number:02d} {verdict} - {description}")
    assert passed, f"criterion {number}: {description}"


@pytest.fixture(scope="module")
def wigner_corpus(grid256, corpus):
    return {name: phasespace.wigner_from_state(state)
            for name, state in corpus.items()}


def test_criterion_01_wigner_normalization(grid256):
    start = time.perf_counter()
    corpus = build_corpus(grid256)
    worst = 0.0
    count = 0
    for state in corpus.values():
        w = phasespace.wigner_from_state(state)
        assert w.values.shape == (256, 256)
        worst = max(worst, abs(w.normalization() - 1.0))
        count += 1
    elapsed = time.perf_counter() - start
    report(1, f"Wigner normalization over {count} states: max deviation "
              f"{worst:.2e} (<= 1e-9), runtime {elapsed:.2f}s (<= 5s)",
           count == 12 and worst <= 1e-9 and elapsed <= 5.0)


def test_criterion_02_purity_law(corpus, wigner_corpus):
    start = time.perf_counter()
    worst_pure = max(
        abs(phasespace.purity(wigner_corpus[name]) - 1.0)
        for name, state in corpus.items()
        if isinstance(state, core.WaveFunction))
    expected = {
        "gaussian_mixture": None,   # components not exactly orthogonal
        "orthogonal_mixture": 0.25 ** 2 + 0.75 ** 2,
        "thermal_like": 0.5 ** 2 + 0.3 ** 2 + 0.2 ** 2,
    }
    worst_mixed = 0.0
    for name, target in expected.items():
        if target is None:
            continue
        worst_mixed = max(worst_mixed, abs(
            phasespace.purity(wigner_corpus[name]) - target))
    elapsed = time.perf_counter() - start
    report(2, f"purity: pure-state deviation {worst_pure:.2e} (<= 1e-6), "
              f"orthogonal-mixture deviation {worst_mixed:.2e} (<= 1e-6), "
              f"runtime {elapsed:.2f}s (<= 5s)",
           worst_pure <= 1e-6 and worst_mixed <= 1e-6 and elapsed <= 5.0)


def test_criterion_03_marginal_consistency(corpus, wigner_corpus):
    worst = 0.0
    for name, state in corpus.items():
        w = wigner_corpus[name]
        pos, mom = phasespace.marginals(w)
        comps = (state.components if isinstance(state, core.MixedState)
                 else [(1.0, state)])
        pos_ref = sum(wt * core.position_density(psi) for wt, psi in comps)
        mom_ref = sum(wt * np.abs(core.momentum_amplitudes(psi, w.p_grid)) ** 2
                      for wt, psi in comps)
        worst = max(worst, np.max(np.abs(pos - pos_ref)),
                    np.max(np.abs(mom - mom_ref)))
    report(3, f"marginal consistency: sup deviation {worst:.2e} (<= 1e-8)",
           worst <= 1e-8)


def test_criterion_04_negativity_witness(wigner_corpus):
    w1 = wigner_corpus["excited1"]
    center = w1.values[128, 128]
    center_dev = abs(center - (-1.0 / np.pi))
    worst_gauss = max(abs(phasespace.negativity_volume(wigner_corpus[name]))
                      for name in GAUSSIAN_STATES)
    report(4, f"negativity: excited-state W(0,0) deviation from -1/pi "
              f"{center_dev:.2e} (<= 1e-4); Gaussian-family negativity "
              f"{worst_gauss:.2e} (<= 1e-9)",
           center_dev <= 1e-4 and worst_gauss <= 1e-9)


def test_criterion_05_quadratic_equivalence():
    grid = core.GridSpec(-8.0, 8.0, 128)
    psi = core.gaussian_packet(grid, 1.0, 0.5, np.sqrt(0.5))
    w0 = phasespace.wigner_from_state(psi)
    harmonic = dynamics.PolynomialHamiltonian(1.0, (0.0, 0.0, 0.5))
    steps = 2048
    dt = 2.0 * np.pi / steps
    step_div = np.max(np.abs(
        dynamics.moyal_step(w0, harmonic, dt).values
        - dynamics.liouville_step(w0, harmonic, dt).values))
    w_m = dynamics.evolve_wigner(
        w0, harmonic, dynamics.EvolutionConfig(dt, steps, "moyal"))
    w_l = dynamics.evolve_wigner(
        w0, harmonic, dynamics.EvolutionConfig(dt, steps, "liouville"))
    period_div = np.max(np.abs(w_m.values - w_l.values))
    round_trip = np.max(np.abs(w_m.values - w0.values))
    report(5, f"quadratic equivalence: per-step divergence {step_div:.2e} "
              f"(<= 1e-12), full-period divergence {period_div:.2e} "
              f"(<= 1e-6), round-trip error {round_trip:.2e} (<= 1e-4)",
           step_div <= 1e-12 and period_div <= 1e-6 and round_trip <= 1e-4)


def test_criterion_06_quantum_correction():
    grid = core.GridSpec(-6.0, 6.0, 128)
    quartic = dynamics.PolynomialHamiltonian(1.0, (0.0, 0.0, 0.0, 0.0, 0.25))
    psi = core.gaussian_packet(grid, 1.0, 0.0, 0.5)
    w0 = phasespace.wigner_from_state(psi)
    t_final, steps = 1.0, 1800
    cfg = dynamics.EvolutionConfig(t_final / steps, steps, "moyal")
    w_quantum = dynamics.evolve_wigner(w0, quartic, cfg)
    cfg_cl = dynamics.EvolutionConfig(t_final / steps, steps, "liouville")
    w_classical = dynamics.evolve_wigner(w0, quartic, cfg_cl)
    psi_t = dynamics.evolve_wavefunction(psi, quartic, 5e-4, 2000)
    w_oracle = phasespace.wigner_from_state(psi_t)
    err_quantum = np.max(np.abs(w_quantum.values - w_oracle.values))
    err_classical = np.max(np.abs(w_classical.values - w_oracle.values))
    report(6, f"quartic benchmark at t=1: full generator error "
              f"{err_quantum:.2e} (<= 1e-3); without the hbar^2 term "
              f"{err_classical:.2e} (> 1e-2)",
           err_quantum <= 1e-3 and err_classical > 10 * 1e-3)


def test_criterion_07_packet_spreading():
    grid = core.GridSpec(-16.0, 16.0, 256)
    psi = core.gaussian_packet(grid, 0.0, 0.0, 1.0)
    free = dynamics.PolynomialHamiltonian(1.0, (0.0,))
    ts = np.linspace(0.3, 3.0, 10)
    times = np.concatenate([-ts[::-1], [0.0], ts])
    trace = dynamics.packet_width_trace(psi, free, times)
    analytic = 1.0 + times ** 2 / 4.0
    rel = np.max(np.abs(trace.sigma_q2 / analytic - 1.0))
    even = np.max(np.abs(trace.sigma_q2[:10][::-1] - trace.sigma_q2[11:]))
    report(7, f"free spreading: relative law deviation {rel:.2e} (<= 1e-3); "
              f"time-evenness {even:.2e} (<= 1e-9)",
           rel <= 1e-3 and even <= 1e-9)


def test_criterion_08_tomogram_nonnegativity_homogeneity(wigner_corpus):
    nu = np.linspace(-24.0, 24.0, 384)
    rays = tomography.uniform_rays(24)
    worst_min = 0.0
    for name, w in wigner_corpus.items():
        t = tomography.tomogram_from_wigner(w, rays, nu)
        worst_min = min(worst_min, float(t.values.min()))
    worst_disc = 0.0
    for s in (-0.5, 0.5, -2.0, 2.0, 3.0):
        for name in ("ground", "even_cat", "thermal_like"):
            disc = tomography.scaling_check(wigner_corpus[name], (0.6, 0.8),
                                            nu, s)
            worst_disc = max(worst_disc, disc)
    report(8, f"tomograms: minimum value {worst_min:.2e} (>= -1e-9); "
              f"homogeneity discrepancy {worst_disc:.2e} (<= 1e-6)",
           worst_min >= -1e-9 and worst_disc <= 1e-6)


def test_criterion_09_tomographic_round_trip(wigner_corpus):
    nu = np.linspace(-32.0, 32.0, 512)
    rays = tomography.uniform_rays(128)
    worst = 0.0
    for name, w in wigner_corpus.items():
        t = tomography.tomogram_from_wigner(w, rays, nu)
        rec = tomography.wigner_from_tomogram(t, w.q_grid, w.p_grid)
        worst = max(worst, float(np.max(np.abs(rec.values - w.values))))
    w_cat = wigner_corpus["even_cat"]
    t_cat = tomography.tomogram_from_wigner(w_cat, rays, nu)
    rec_cat = tomography.wigner_from_tomogram(t_cat, w_cat.q_grid,
                                              w_cat.p_grid)
    nv_rel = abs(phasespace.negativity_volume(rec_cat)
                 / phasespace.negativity_volume(w_cat) - 1.0)
    report(9, f"round trip at 128 angles x 512 nu: sup error {worst:.2e} "
              f"(<= 1e-3); cat negativity drift {nv_rel:.2%} (<= 5%)",
           worst <= 1e-3 and nv_rel <= 0.05)


def test_criterion_10_triangle_violation():
    start = time.perf_counter()
    mercedes = [np.array([np.cos(a), np.sin(a), 0.0])
                for a in np.deg2rad([0.0, 120.0, 240.0])]
    sym = spin_bell.symmetrized_triple(*mercedes)
    sym_dev = abs(sym - (-0.125))
    found = spin_bell.violation_search(5.0)
    restricted = spin_bell.violation_search(5.0, angle_range=(0.0, 60.0))
    elapsed = time.perf_counter() - start
    report(10, f"triangle bound: symmetrized value at 120 deg off by "
               f"{sym_dev:.2e} (<= 1e-12); search slack {found.min_slack:.5f} "
               f"(<= -0.40); restricted-region slack "
               f"{restricted.min_slack:.3f} (no violation); runtime "
               f"{elapsed:.2f}s (<= 10s)",
           sym_dev <= 1e-12 and found.min_slack <= -0.40
           and not restricted.violated and elapsed <= 10.0)


def test_criterion_11_histories():
    z = np.array([0.0, 0.0, 1.0])
    x = np.array([1.0, 0.0, 0.0])
    zp = np.array([1.0, 0.0], dtype=complex)
    zm = np.array([0.0, 1.0], dtype=complex)
    xp = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
    xm = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2)
    # orthogonal single-time family
    single = histories.decoherence_matrix(
        histories.BranchSet([[spin_bell.projector(z, 1)],
                             [spin_bell.projector(z, -1)]], xp), [zp, zm])
    single_off = histories.is_consistent(single, "strict", 1e-14)
    # 90-degree phase pair
    final = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2)
    pair = histories.decoherence_matrix(
        histories.BranchSet([[spin_bell.projector(z, 1)],
                             [spin_bell.projector(z, -1)]], xp), [final])
    pair_strict = histories.is_consistent(pair, "strict")
    pair_weak = histories.is_consistent(pair, "weak")
    # two-slit analogue
    branches = [[spin_bell.projector(z, s1), spin_bell.projector(x, s2)]
                for s1 in (1, -1) for s2 in (1, -1)]
    slit = histories.decoherence_matrix(histories.BranchSet(branches, xp),
                                        [xp, xm])
    slit_strict = histories.is_consistent(slit, "strict")
    slit_weak = histories.is_consistent(slit, "weak")
    total_dev = abs(slit.sum() - 1.0)
    ok = (single_off[0]
          and (not pair_strict[0]) and pair_weak[0]
          and (not slit_strict[0]) and (not slit_weak[0])
          and total_dev <= 1e-10)
    report(11, f"histories: single-time off-diagonal {single_off[1]:.2e} "
               f"(<= 1e-14); quarter-phase pair weak={pair_weak[0]} "
               f"strict={pair_strict[0]}; two-slit strict={slit_strict[0]} "
               f"weak={slit_weak[0]}; probability total off by "
               f"{total_dev:.2e} (<= 1e-10)", ok)


def test_criterion_12_decay():
    start = time.perf_counter()
    model = decay.flat_model(0.0, (-1.0, 1.0), 2000, 0.003)
    gamma_gr = model.golden_rule_rate()
    times = np.linspace(-4.2 / gamma_gr, 4.2 / gamma_gr, 2001)
    record = decay.survival_amplitude(model, times)
    evenness = np.max(np.abs(record.probability
                             - record.probability[::-1]))
    fitted = decay.fit_decay_rate(record, (1 / gamma_gr, 4 / gamma_gr))
    fit_dev = abs(fitted / gamma_gr - 1.0)
    pole = decay.second_sheet_pole(model)
    pole_dev = abs(pole.imag / (-gamma_gr / 2) - 1.0)
    _, var = model.energy_moments()
    tz = 0.005 / np.sqrt(var)
    zeno = decay.survival_amplitude(model,
                                    np.array([-2 * tz, -tz, 0.0, tz, 2 * tz]))
    defect = decay.semigroup_approximation_error(zeno, gamma_gr, tz, tz)
    elapsed = time.perf_counter() - start
    ok = (evenness <= 1e-12 and fit_dev <= 0.05 and pole_dev <= 0.05
          and defect.exponential <= 1e-12
          and defect.exact > 10 * max(defect.exponential, 1e-16)
          and elapsed <= 30.0)
    report(12, f"decay at 2000 modes: P evenness {evenness:.2e} (<= 1e-12); "
               f"rate fit off golden rule by {fit_dev:.2%} (<= 5%); pole "
               f"width off by {pole_dev:.2%} (<= 5%); semigroup defects "
               f"surrogate {defect.exponential:.1e} vs exact "
               f"{defect.exact:.1e}; runtime {elapsed:.1f}s (<= 30s)", ok)


def test_criterion_13_cli_determinism(tmp_path):
    import os

    scenarios_dir = os.path.join(os.path.dirname(__file__), os.pardir,
                                 "scenarios")

    def sc(name):
        return os.path.join(scenarios_dir, name)

    def tomogram_path(run_dir):
        return str(run_dir / "tom" / "tomogram.csv")

    commands = {
        "state": lambda d: ["state", "--state", sc("packet.json"),
                            "--grid", sc("grid.json"),
                            "--out", str(d / "state")],
        "wigner": lambda d: ["wigner", "--state", sc("gaussian.json"),
                             "--grid", sc("grid.json"),
                             "--out", str(d / "wigner")],
        "wigner_cat": lambda d: ["wigner", "--state", sc("cat.json"),
                                 "--grid", sc("grid.json"),
                                 "--out", str(d / "wigner_cat")],
        "evolve": lambda d: ["evolve", "--state", sc("gaussian.json"),
                             "--grid", sc("grid.json"),
                             "--hamiltonian", sc("evolve_harmonic.json"),
                             "--out", str(d / "evolve")],
        "tomogram": lambda d: ["tomogram", "--state", sc("gaussian.json"),
                               "--grid", sc("grid.json"),
                               "--out", str(d / "tom"),
                               "--angles", "64", "--nu-points", "256"],
        "reconstruct": lambda d: ["reconstruct", "--tomogram",
                                  tomogram_path(d),
                                  "--out", str(d / "rec"),
                                  "--grid", sc("grid.json")],
        "spin-search": lambda d: ["spin-search", "--resolution", "5",
                                  "--out", str(d / "spin")],
        "histories": lambda d: ["histories", "--spec",
                                sc("histories_twoslit.json"),
                                "--out", str(d / "hist")],
        "decay": lambda d: ["decay", "--model", sc("decay_flat.json"),
                            "--out", str(d / "decay")],
    }

    digests = []
    for run in range(3):
        run_dir = tmp_path / f"run{run}"
        run_dir.mkdir()
        snapshot = {}
        for name, build in commands.items():
            code = cli.run(build(run_dir))
            assert code == 0, f"{name} failed on run {run}"
        for root, _, files in os.walk(run_dir):
            for fname in sorted(files):
                path = os.path.join(root, fname)
                rel = os.path.relpath(path, run_dir)
                with open(path, "rb") as handle:
                    snapshot[rel] = handle.read()
        digests.append(snapshot)
    identical = digests[0] == digests[1] == digests[2]
    n_files = len(digests[0])
    report(13, f"CLI determinism: {len(commands)} scenarios x 3 runs, "
               f"{n_files} output files byte-identical: {identical}",
           identical and n_files >= len(commands))
