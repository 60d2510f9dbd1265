"""Oracle-adjudication suite: every acceptance check behind `dephlab verify`.

Each check pins its parameter grid and tolerance and reports the measured
deviation; the pytest acceptance module runs the same functions.  The
comparison between the closed-form input-dephasing fidelity and its sphere
oracle is informational by design: its deviation is reported verbatim,
never patched into agreement.
"""

import math
import os
import tempfile
import time
from dataclasses import dataclass, replace

import numpy as np

from . import bath, correlations, runner, teleport
from .bath import BathParams, QuadratureSpec
from .channel import ChannelVariant, VariantKind, channel_state
from .runner import RunConfig
from .teleport import NoisePlacement

QUAD = QuadratureSpec()
BETAS_3 = (0.05, 1.0, 10.0)
BETAS_2 = (0.05, 1.0)
SEPS = (0.0, 1.0, 5.0)
T50 = tuple(np.linspace(0.0, 100.0, 50))
T30 = tuple(np.linspace(0.0, 80.0, 30))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    deviation: float
    tolerance: float
    elapsed: float
    budget: float | None = None
    informational: bool = False
    detail: str = ""

    def line(self) -> str:
        status = "INFO" if self.informational else ("PASS" if self.passed else "FAIL")
        budget = f", budget {self.budget:g}s" if self.budget is not None else ""
        detail = f" | {self.detail}" if self.detail else ""
        return (
            f"[{status}] {self.name}: deviation {self.deviation:.3e} "
            f"(tolerance {self.tolerance:g}) [{self.elapsed:.2f}s{budget}]{detail}"
        )


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def check_initial_limits() -> CheckResult:
    """Criterion 1: exact t = 0 limits across the parameter grid."""
    def run():
        dev = 0.0
        for a in (0.5, 1.0, 2.0):
            for beta in BETAS_3:
                for s in SEPS:
                    p = BathParams(coupling_a=a, beta=beta, s=s)
                    d = bath.decoherence_state(p, QUAD, 0.0)
                    dev = max(
                        dev,
                        abs(d.kappa - 1.0),
                        abs(d.gamma_s),
                        abs(correlations.negativity_closed(p, d) - 1.0),
                        abs(correlations.discord_closed(d) - 1.0),
                        abs(teleport.fav_closed(NoisePlacement.CHANNEL, p, d) - 1.0),
                    )
        return dev

    dev, dt = _timed(run)
    return CheckResult("criterion-01-initial-limits", dev <= 1e-12 and dt < 1.0,
                       dev, 1e-12, dt, budget=1.0)


def check_negativity_oracle() -> CheckResult:
    """Criterion 2: closed-form negativity = 2 x PPT negativity."""
    def run():
        dev = 0.0
        v = ChannelVariant(VariantKind.CORRELATED)
        for beta in BETAS_3:
            for s in SEPS:
                p = BathParams(beta=beta, s=s)
                for t in T50:
                    d = bath.decoherence_state(p, QUAD, t)
                    state = channel_state(p, QUAD, v, t)
                    dev = max(dev, abs(correlations.negativity_closed(p, d)
                                       - 2.0 * correlations.negativity_ppt(state.rho)))
        return dev

    dev, dt = _timed(run)
    return CheckResult("criterion-02-negativity-oracle", dev <= 1e-10 and dt < 10.0,
                       dev, 1e-10, dt, budget=10.0)


def check_discord_oracle() -> CheckResult:
    """Criterion 3: closed-form discord vs measurement-optimisation oracle."""
    def run():
        dev = 0.0
        v = ChannelVariant(VariantKind.CORRELATED)
        for beta in BETAS_3:
            for s in SEPS:
                p = BathParams(beta=beta, s=s)
                for t in T50:
                    state = channel_state(p, QUAD, v, t)
                    dev = max(dev, abs(correlations.discord_closed(state)
                                       - correlations.discord_oracle(state.rho)))
        return dev

    dev, dt = _timed(run)
    return CheckResult("criterion-03-discord-oracle", dev <= 1e-6 and dt < 120.0,
                       dev, 1e-6, dt, budget=120.0)


def check_teleport_case1() -> CheckResult:
    """Criterion 4: channel-dephasing closed fidelity vs sphere oracle."""
    def run():
        dev = 0.0
        prob_defect = 0.0
        v = ChannelVariant(VariantKind.CORRELATED)
        for beta in BETAS_2:
            for s in SEPS:
                p = BathParams(beta=beta, s=s)
                for t in T30:
                    d = bath.decoherence_state(p, QUAD, t)
                    state = channel_state(p, QUAD, v, t)
                    oracle, defect, _ = teleport.average_fidelity_oracle(state, return_details=True)
                    dev = max(dev, abs(teleport.fav_closed(NoisePlacement.CHANNEL, p, d) - oracle))
                    prob_defect = max(prob_defect, defect)
        return dev, prob_defect

    (dev, prob_defect), dt = _timed(run)
    passed = dev <= 1e-8 and prob_defect <= 1e-12 and dt < 60.0
    return CheckResult("criterion-04-teleport-case1-oracle", passed, dev, 1e-8, dt,
                       budget=60.0, detail=f"max |sum Q_i - 1| = {prob_defect:.3e} (tol 1e-12)")


def check_critical_temperature() -> CheckResult:
    """Criterion 5: input-dephasing fidelity at the critical temperature."""
    def run():
        p_crit = BathParams(beta=2.0)  # beta * omega0 = 2
        dev = 0.0
        for t in T30:
            d = bath.decoherence_state(p_crit, QUAD, t)
            dev = max(dev, abs(teleport.fav_closed(NoisePlacement.INPUT_QUBIT, p_crit, d) - 2.0 / 3.0))

        p_hot = BathParams(beta=0.01)  # beta * omega0 = 0.01
        worst_sign = -math.inf
        for t in T30:
            d = bath.decoherence_state(p_hot, QUAD, t)
            damped = math.cos(d.zeta0) * math.exp(-d.gamma1)
            if damped > 0.01:
                worst_sign = max(worst_sign,
                                 teleport.fav_closed(NoisePlacement.INPUT_QUBIT, p_hot, d) - 2.0 / 3.0)
        return dev, worst_sign

    (dev, worst_sign), dt = _timed(run)
    passed = dev <= 1e-12 and worst_sign < 0.0
    return CheckResult("criterion-05-critical-temperature", passed, dev, 1e-12, dt,
                       detail=f"high-temperature max(F_av - 2/3) = {worst_sign:.3e} (must be < 0)")


def check_case3_self_consistency() -> CheckResult:
    """Criterion 6 (mandatory half): sphere-oracle order-doubling stability."""
    def run():
        dev = 0.0
        for beta in (0.5, 2.0, 6.0):  # beta * omega0 in {0.5, 2, 6}
            p = BathParams(beta=beta)
            for t in T30:
                e16 = teleport.input_dephasing_estimate(p, QUAD, t, 16)
                e32 = teleport.input_dephasing_estimate(p, QUAD, t, 32)
                dev = max(dev, abs(e32 - e16))
        return dev

    dev, dt = _timed(run)
    return CheckResult("criterion-06-case3-oracle-self-consistency", dev <= 1e-8,
                       dev, 1e-8, dt)


def check_case3_closed_form_comparison() -> CheckResult:
    """Criterion 6 (informational half): oracle vs the stated closed form.

    Reported numerically whatever the outcome; never adjusted.
    """
    def run():
        dev = 0.0
        at = ""
        for beta in (0.5, 2.0, 6.0):
            p = BathParams(beta=beta)
            for t in T30:
                d = bath.decoherence_state(p, QUAD, t)
                closed = teleport.fav_closed(NoisePlacement.INPUT_QUBIT, p, d)
                oracle = teleport.input_dephasing_oracle(p, QUAD, t)
                gap = abs(oracle - closed)
                if gap > dev:
                    dev, at = gap, f"beta*omega0={beta:g}, t={t:.3g}"
        return dev, at

    (dev, at), dt = _timed(run)
    return CheckResult("criterion-06-case3-closed-form-comparison", dev <= 1e-6, dev, 1e-6, dt,
                       informational=True,
                       detail=f"largest gap at {at}; reported as measured, not enforced")


def check_fig2_shape() -> CheckResult:
    """Criterion 7: dip-then-saturate fidelity at low T, classical at high T."""
    def run():
        p = BathParams(beta=1.0, s=1.0)
        fav = {}
        for t in T30:
            d = bath.decoherence_state(p, QUAD, t)
            fav[t] = teleport.fav_closed(NoisePlacement.CHANNEL, p, d)
        d80 = bath.decoherence_state(p, QUAD, 80.0)
        low_t_end = teleport.fav_closed(NoisePlacement.CHANNEL, p, d80)
        dip = min(fav.values())

        p_hot = replace(p, beta=0.05)
        d80h = bath.decoherence_state(p_hot, QUAD, 80.0)
        hot_end = teleport.fav_closed(NoisePlacement.CHANNEL, p_hot, d80h)
        return low_t_end, dip, fav[T30[0]], hot_end

    (low_t_end, dip, start, hot_end), dt = _timed(run)
    passed = (low_t_end > 2.0 / 3.0 + 0.01) and (dip < start) and (abs(hot_end - 2.0 / 3.0) < 0.01) and dt < 30.0
    dev = abs(hot_end - 2.0 / 3.0)
    return CheckResult("criterion-07-fig2-shape", passed, dev, 0.01, dt, budget=30.0,
                       detail=f"F_av(80)|beta=1 = {low_t_end:.4f} (> {2/3 + 0.01:.4f}), dip {dip:.4f} < start {start:.4f}")


def check_fig1_shape() -> CheckResult:
    """Criterion 8: correlated correlations persist; Markovian ones die."""
    def run():
        p = BathParams(beta=1.0, s=1.0)
        corr = channel_state(p, QUAD, ChannelVariant(VariantKind.CORRELATED), 80.0)
        mark = channel_state(p, QUAD, ChannelVariant(VariantKind.MARKOVIAN), 80.0)
        n_corr = correlations.negativity_paper(p.alpha, corr.kappa_eff)
        q_corr = correlations.discord_closed(corr)
        n_mark = correlations.negativity_paper(p.alpha, mark.kappa_eff)
        q_mark = correlations.discord_closed(mark)
        return n_corr, q_corr, n_mark, q_mark

    (n_corr, q_corr, n_mark, q_mark), dt = _timed(run)
    passed = n_corr > 0.01 and q_corr > 0.01 and n_mark < 1e-3 and q_mark < 1e-3 and dt < 30.0
    return CheckResult("criterion-08-fig1-shape", passed, min(n_corr, q_corr), 0.01, dt, budget=30.0,
                       detail=f"correlated N={n_corr:.4f}, Q={q_corr:.4f}; markovian N={n_mark:.1e}, Q={q_mark:.1e}")


def check_quadrature_robustness() -> CheckResult:
    """Criterion 9: density doubling is inert; gamma_ic identity holds."""
    def run():
        dense = replace(QUAD, panels_per_period=2 * QUAD.panels_per_period)
        dev_quad = 0.0
        for beta in BETAS_3:
            for s in SEPS:
                p = BathParams(beta=beta, s=s)
                for t in (0.1, 1.0, 10.0, 100.0):
                    for fn in (bath.gamma_s, bath.zeta, bath.zeta0, bath.gamma1):
                        dev_quad = max(dev_quad, abs(fn(p, QUAD, t) - fn(p, dense, t)))
        dev_id = 0.0
        for beta in BETAS_3:
            for s in SEPS:
                p = BathParams(beta=beta, s=s)
                for t in T50:
                    d = bath.decoherence_state(p, QUAD, t)
                    dev_id = max(dev_id, abs(math.exp(-d.gamma_ic - d.gamma_s) - abs(d.kappa)))
        return dev_quad, dev_id

    (dev_quad, dev_id), dt = _timed(run)
    passed = dev_quad <= 1e-10 and dev_id <= 1e-12
    return CheckResult("criterion-09-quadrature-robustness", passed, dev_quad, 1e-10, dt,
                       detail=f"|exp(-gamma_ic-gamma_s) - |kappa|| max = {dev_id:.3e} (tol 1e-12)")


def check_determinism() -> CheckResult:
    """Criterion 10: identical sweeps produce byte-identical CSV files."""
    def run():
        with tempfile.TemporaryDirectory() as tmp:
            paths = [os.path.join(tmp, name) for name in ("a.csv", "b.csv")]
            blobs = []
            for path in paths:
                cfg = RunConfig(t_min=0.0, t_max=5.0, n_points=6, output_path=path)
                code = runner.run_sweep(cfg)
                if code != 0:
                    raise RuntimeError(f"sweep exited with {code}")
                with open(path, "rb") as fh:
                    blobs.append(fh.read())
        return 0.0 if blobs[0] == blobs[1] else 1.0

    dev, dt = _timed(run)
    return CheckResult("criterion-10-determinism", dev == 0.0, dev, 0.0, dt,
                       detail="byte comparison of repeated sweep runs")


ALL_CHECKS = (
    check_initial_limits,
    check_negativity_oracle,
    check_discord_oracle,
    check_teleport_case1,
    check_critical_temperature,
    check_case3_self_consistency,
    check_case3_closed_form_comparison,
    check_fig2_shape,
    check_fig1_shape,
    check_quadrature_robustness,
    check_determinism,
)


def run_verification(report_path: str = "verify_report.txt", stream=None) -> int:
    """Run every check, write the report, return the exit code (0 or 1)."""
    results = []
    for fn in ALL_CHECKS:
        result = fn()
        results.append(result)
        if stream is not None:
            print(result.line(), file=stream, flush=True)
    mandatory_ok = all(r.passed for r in results if not r.informational)
    lines = [r.line() for r in results]
    lines.append(f"overall: {'PASS' if mandatory_ok else 'FAIL'} "
                 f"({sum(1 for r in results if not r.informational)} mandatory checks)")
    with open(report_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    if stream is not None:
        print(lines[-1], file=stream, flush=True)
    return 0 if mandatory_ok else 1
