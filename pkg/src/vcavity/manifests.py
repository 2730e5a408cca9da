"""Figure-reproduction manifests.

Each manifest binds one figure frame (fig2a … fig10f) to its parameter set,
the sweep or spectral grid it needs, and a list of named qualitative checks
that the produced data must satisfy.  All frames share gamma=1, g=20,
kappa=100; frequencies are in units of gamma.

Two frames carry caption/text conflicts in the source material; the bindings
below follow the running text (which matches the plotted curves), and the
conflict is recorded in the manifest's ``notes``:

* fig2d–f and fig4d–f: caption says omega21=100, text says omega21=200.
* fig6: caption says omega21=20, text says omega21=200.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dressed import (
    dressed_basis,
    dressed_populations_exact,
    dressed_populations_rate_eq,
    transition_rates,
)
from .model import SystemParams, dressed_scalars
from .output import write_csv, write_svg_polyline
from .spectra import (
    absorption_spectrum,
    default_frequency_grid,
    fluorescence_qrt,
    fluorescence_secular,
    peak_height_near,
)
from .steady import default_delta_grid, steady_state_for, sweep_populations

__all__ = [
    "CheckOutcome",
    "FigureManifest",
    "MANIFESTS",
    "ManifestRun",
    "manifest_ids",
    "run_manifest",
]

_BASE = {"gamma": 1.0, "g": 20.0, "kappa": 100.0}

_CAPTION_NOTE_FIG2 = "caption states omega21=100 for frames d-f; running text and curves use 200"
_CAPTION_NOTE_FIG6 = "caption states omega21=20; running text and decay-rate anchors use 200"
_ABSORPTION_NULL_NOTE = (
    "probe response is the odd part of the emission spectrum, which is even "
    "at delta=0, so this frame's spectrum cancels identically"
)


@dataclass(frozen=True)
class FigureManifest:
    fig_id: str
    kind: str  # populations | dressed | fluorescence | absorption
    omega21: float
    rabi: float
    delta_factor: float | None  # spectra: delta as a multiple of omega_R; None => delta sweep
    checks: tuple = ()
    notes: tuple = ()

    def params(self) -> SystemParams:
        delta = 0.0
        if self.delta_factor is not None:
            probe = SystemParams(omega21=self.omega21, rabi=self.rabi, **_BASE)
            delta = self.delta_factor * dressed_scalars(probe).omega_R
        return SystemParams(omega21=self.omega21, rabi=self.rabi, delta=delta, **_BASE)

    @property
    def sweeps_delta(self) -> bool:
        return self.delta_factor is None


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    measured: float
    bound: float
    detail: str = ""


@dataclass(frozen=True)
class ManifestRun:
    manifest: FigureManifest
    header: tuple
    columns: tuple
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def column(self, name: str) -> np.ndarray:
        return self.columns[self.header.index(name)]

    def write(self, path: str) -> None:
        write_csv(path, list(self.header), [np.asarray(c) for c in self.columns])

    def write_svg(self, path: str) -> None:
        x = np.asarray(self.columns[0])
        y = np.asarray(self.columns[1])
        m = self.manifest
        write_svg_polyline(
            path, x, y,
            title=f"{m.fig_id}: {m.kind} (omega21={m.omega21:g}, rabi={m.rabi:g})",
            x_label=self.header[0], y_label=self.header[1],
        )


def _populations_data(m: FigureManifest, variant: str, threads: int):
    p = m.params()
    sweep = sweep_populations(p, default_delta_grid(p), variant=variant, threads=threads)
    header = ("delta", "rho00", "rho11", "rho22", "re_rho10", "im_rho10",
              "re_rho20", "im_rho20", "re_rho21", "im_rho21", "residual")
    cols = (sweep.detunings, sweep.rho00, sweep.rho11, sweep.rho22,
            sweep.rho10.real, sweep.rho10.imag, sweep.rho20.real, sweep.rho20.imag,
            sweep.rho21.real, sweep.rho21.imag, sweep.residuals)
    return header, cols


def _dressed_data(m: FigureManifest, variant: str, threads: int):
    p = m.params()
    grid = default_delta_grid(p)
    basis = dressed_basis(p)
    exact = np.empty((grid.size, 3))
    rate = np.empty((grid.size, 3))
    rmat = np.empty((grid.size, 6))
    for i, d in enumerate(grid):
        pi = p.with_delta(float(d))
        ss = steady_state_for(pi, variant=variant)
        pe = dressed_populations_exact(ss, basis)
        exact[i] = (pe.p_aa, pe.p_bb, pe.p_cc)
        tr = transition_rates(pi)
        pr = dressed_populations_rate_eq(tr)
        rate[i] = (pr.p_aa, pr.p_bb, pr.p_cc)
        rmat[i] = (tr.R_ab, tr.R_ba, tr.R_ac, tr.R_ca, tr.R_bc, tr.R_cb)
    header = ("delta", "p_aa", "p_bb", "p_cc", "p_aa_rate", "p_bb_rate", "p_cc_rate",
              "R_ab", "R_ba", "R_ac", "R_ca", "R_bc", "R_cb")
    cols = (grid, exact[:, 0], exact[:, 1], exact[:, 2],
            rate[:, 0], rate[:, 1], rate[:, 2],
            rmat[:, 0], rmat[:, 1], rmat[:, 2], rmat[:, 3], rmat[:, 4], rmat[:, 5])
    return header, cols


def _spectrum_data(m: FigureManifest, variant: str, threads: int):
    p = m.params()
    grid = default_frequency_grid(p)
    if m.kind == "fluorescence":
        series = fluorescence_qrt(p, grid, variant=variant)
        return ("freq", "value"), (series.freqs, series.values)
    series = absorption_spectrum(p, grid, variant=variant)
    return ("freq", "value"), (series.freqs, series.values)


# --- named property checks ----------------------------------------------

def _outcome(name, passed, measured, bound, detail=""):
    return CheckOutcome(name=name, passed=bool(passed), measured=float(measured),
                        bound=float(bound), detail=detail)


def _peaks(run: ManifestRun):
    p = run.manifest.params()
    w_r = dressed_scalars(p).omega_R
    f = run.column("freq")
    v = run.column("value")
    win = 0.45 * w_r
    return {
        "inner_low": peak_height_near(f, v, -w_r, win),
        "inner_high": peak_height_near(f, v, w_r, win),
        "outer_low": peak_height_near(f, v, -2.0 * w_r, win),
        "outer_high": peak_height_near(f, v, 2.0 * w_r, win),
        "central": peak_height_near(f, v, 0.0, win),
    }


def _check_finite(run):
    vals = np.concatenate([np.asarray(c, dtype=float) for c in run.columns])
    bad = np.size(vals) - int(np.sum(np.isfinite(vals)))
    return _outcome("finite", bad == 0, bad, 0.0, "count of non-finite cells")


def _check_row_count_801(run):
    n = len(run.columns[0])
    return _outcome("row-count-801", n == 801, n, 801)


def _check_residual_small(run):
    r = float(np.nanmax(run.column("residual")))
    return _outcome("residual-small", r <= 1e-10, r, 1e-10, "max Liouvillian residual")


def _check_edge_ground_half(run):
    rho00 = run.column("rho00")
    dev = max(abs(rho00[0] - 0.5), abs(rho00[-1] - 0.5))
    return _outcome("edge-ground-half", dev <= 0.05, dev, 0.05,
                    "|rho00 - 0.5| at sweep edges")


def _check_inversion_exists(run):
    margin = run.column("rho22") - run.column("rho00")
    k = int(np.nanargmax(margin))
    d = run.column("delta")[k]
    return _outcome("inversion-exists", margin[k] > 0.0, margin[k], 0.0,
                    f"max rho22-rho00 at delta={d:g}")


def _check_no_inversion(run):
    margin = np.nanmax(np.maximum(run.column("rho22") - run.column("rho00"),
                                  run.column("rho11") - run.column("rho00")))
    return _outcome("no-inversion", margin <= 0.0, margin, 0.0,
                    "max excited-minus-ground population")


def _check_mirror_rate_symmetry(run):
    pa = run.column("p_aa_rate")
    pc = run.column("p_cc_rate")
    dev = float(np.nanmax(np.abs(pa - pc[::-1])))
    return _outcome("mirror-rate-symmetry", dev <= 1e-9, dev, 1e-9,
                    "max |p_aa(delta) - p_cc(-delta)|, rate-equation columns")


def _check_accumulation_outer(run):
    p = run.manifest.params()
    w_r = dressed_scalars(p).omega_R
    margins = []
    for sign in (-1.0, 1.0):
        pi = p.with_delta(sign * 2.0 * w_r)
        pops = dressed_populations_exact(steady_state_for(pi))
        margins.append((pops.p_cc - pops.p_aa) if sign < 0 else (pops.p_aa - pops.p_cc))
    worst = min(margins)
    return _outcome("accumulation-outer", worst > 0.0, worst, 0.0,
                    "min margin of the favoured outer dressed state at delta=-+2*omega_R")


def _check_symmetric_spectrum(run):
    v = run.column("value")
    peak = float(np.nanmax(np.abs(v)))
    dev = float(np.nanmax(np.abs(v - v[::-1]))) / peak
    return _outcome("symmetric-spectrum", dev <= 0.05, dev, 0.05,
                    "max |v(x)-v(-x)| / max v")


def _check_lower_outer_enhanced(run):
    pk = _peaks(run)
    ratio = pk["outer_low"] / pk["outer_high"]
    return _outcome("lower-outer-enhanced", ratio > 1.0, ratio, 1.0,
                    "outer peak ratio low/high")


def _check_lower_peaks_higher(run):
    pk = _peaks(run)
    worst = min(pk["outer_low"] / pk["outer_high"], pk["inner_low"] / pk["inner_high"])
    return _outcome("lower-peaks-higher", worst > 1.0, worst, 1.0,
                    "min of low/high peak ratios (inner and outer)")


def _check_inner_dominant(run):
    pk = _peaks(run)
    ratio = min(pk["inner_low"], pk["inner_high"]) / max(pk["outer_low"], pk["outer_high"])
    return _outcome("inner-dominant-10x", ratio > 10.0, ratio, 10.0,
                    "weakest inner peak over strongest outer peak")


def _check_higher_inner_enhanced(run):
    pk = _peaks(run)
    ratio = pk["inner_high"] / pk["inner_low"]
    return _outcome("higher-inner-enhanced", ratio > 1.0, ratio, 1.0,
                    "inner peak ratio high/low")


def _check_lower_inner_enhanced(run):
    pk = _peaks(run)
    ratio = pk["inner_low"] / pk["inner_high"]
    return _outcome("lower-inner-enhanced", ratio > 1.0, ratio, 1.0,
                    "inner peak ratio low/high")


def _check_outer_weak(run):
    pk = _peaks(run)
    ratio = max(pk["outer_low"], pk["outer_high"]) / min(pk["inner_low"], pk["inner_high"])
    return _outcome("outer-weak", ratio < 1.0, ratio, 1.0,
                    "strongest outer peak over weakest inner peak")


def _check_nonnegative_spectrum(run):
    # The cavity-filtered cross dissipator is not of Lindblad form, so the
    # regression spectrum may dip a few 1e-5 of the peak below zero at
    # detuned-cavity frames; the floor is set accordingly.
    v = run.column("value")
    floor = float(np.nanmin(v)) / float(np.nanmax(v))
    return _outcome("nonnegative-spectrum", floor >= -1e-4, floor, -1e-4,
                    "min/max of the inelastic spectrum")


def _check_absorption_antisymmetric(run):
    # A(nu) = -A(-nu) is an exact identity of the construction, so the
    # deviation is solver noise; the absolute floor keeps the check meaningful
    # on frames where the whole spectrum cancels to ~1e-16.
    v = run.column("value")
    peak = float(np.nanmax(np.abs(v)))
    dev = float(np.nanmax(np.abs(v + v[::-1])))
    bound = max(1e-8 * peak, 1e-12)
    return _outcome("absorption-antisymmetric", dev <= bound, dev, bound,
                    f"max |A(nu)+A(-nu)|, absolute; max |A| = {peak:.3e}")


def _check_absorption_null(run):
    # The probe response equals the odd part of the emission spectrum; at
    # delta=0 the emission spectrum is even, so the response vanishes
    # identically and this frame asserts the cancellation itself.
    peak = float(np.nanmax(np.abs(run.column("value"))))
    return _outcome("absorption-null-at-resonance", peak <= 1e-9, peak, 1e-9,
                    "max |A| for the cavity-on-resonance frame")


def _check_sidebands_broadened(run):
    p = run.manifest.params()
    grid = np.array([0.0])
    cav = fluorescence_secular(p, grid).linewidths
    free = fluorescence_secular(replace(p, g=0.0), grid).linewidths
    ratio = min(cav.two_gamma1_minus / free.two_gamma1_minus,
                cav.two_gamma5 / free.two_gamma5)
    return _outcome("sidebands-broadened", ratio > 1.0, ratio, 1.0,
                    "min sideband width ratio, cavity over g=0 fixture")


def _check_exceeds_delta0(run):
    m = run.manifest
    here = float(np.nanmax(np.abs(run.column("value"))))
    ref_manifest = replace(m, fig_id=m.fig_id + "-ref", delta_factor=0.0, checks=())
    _, cols = _spectrum_data(ref_manifest, "corrected", 1)
    ref = float(np.nanmax(np.abs(cols[1])))
    ratio = here / ref
    return _outcome("exceeds-delta0-absorption", ratio > 1.0, ratio, 1.0,
                    "max |A| relative to the delta=0 frame")


_CHECKS = {
    "finite": _check_finite,
    "row-count-801": _check_row_count_801,
    "residual-small": _check_residual_small,
    "edge-ground-half": _check_edge_ground_half,
    "inversion-exists": _check_inversion_exists,
    "no-inversion": _check_no_inversion,
    "mirror-rate-symmetry": _check_mirror_rate_symmetry,
    "accumulation-outer": _check_accumulation_outer,
    "symmetric-spectrum": _check_symmetric_spectrum,
    "lower-outer-enhanced": _check_lower_outer_enhanced,
    "lower-peaks-higher": _check_lower_peaks_higher,
    "inner-dominant-10x": _check_inner_dominant,
    "higher-inner-enhanced": _check_higher_inner_enhanced,
    "lower-inner-enhanced": _check_lower_inner_enhanced,
    "outer-weak": _check_outer_weak,
    "nonnegative-spectrum": _check_nonnegative_spectrum,
    "absorption-antisymmetric": _check_absorption_antisymmetric,
    "absorption-null-at-resonance": _check_absorption_null,
    "sidebands-broadened": _check_sidebands_broadened,
    "exceeds-delta0-absorption": _check_exceeds_delta0,
}


def _m(fig_id, kind, omega21, rabi, delta_factor, checks, notes=()):
    unknown = [c for c in checks if c not in _CHECKS]
    if unknown:
        raise ValueError(f"unregistered checks {unknown} on {fig_id}")
    return FigureManifest(fig_id=fig_id, kind=kind, omega21=omega21, rabi=rabi,
                          delta_factor=delta_factor, checks=tuple(checks),
                          notes=tuple(notes))


def _build_registry():
    reg = {}

    pop_common = ("finite", "row-count-801", "residual-small")
    for frame, rabi in zip("abc", (4.0, 10.0, 100.0)):
        extra = ("edge-ground-half",) if frame == "c" else ()
        reg[f"fig2{frame}"] = _m(f"fig2{frame}", "populations", 10.0, rabi, None,
                                 pop_common + extra)
    fig2_extra = {"d": ("inversion-exists",), "e": ("inversion-exists",),
                  "f": ("no-inversion",)}
    for frame, rabi in zip("def", (100.0, 200.0, 300.0)):
        reg[f"fig2{frame}"] = _m(f"fig2{frame}", "populations", 200.0, rabi, None,
                                 pop_common + fig2_extra[frame],
                                 notes=(_CAPTION_NOTE_FIG2,))

    dressed_common = ("finite", "mirror-rate-symmetry")
    for frame, rabi in zip("abc", (4.0, 10.0, 100.0)):
        extra = ("accumulation-outer",) if frame == "c" else ()
        reg[f"fig4{frame}"] = _m(f"fig4{frame}", "dressed", 10.0, rabi, None,
                                 dressed_common + extra)
    for frame, rabi in zip("def", (100.0, 200.0, 300.0)):
        reg[f"fig4{frame}"] = _m(f"fig4{frame}", "dressed", 200.0, rabi, None,
                                 dressed_common, notes=(_CAPTION_NOTE_FIG2,))

    factors = {"a": 0.0, "b": 1.0, "c": 2.0, "d": 10.0}
    fluor_common = ("finite", "nonnegative-spectrum")
    fluor_checks = {
        "fig5": {"a": ("symmetric-spectrum",), "b": ("lower-outer-enhanced",),
                 "c": ("lower-outer-enhanced",), "d": ("symmetric-spectrum",)},
        "fig6": {"a": ("inner-dominant-10x",), "b": ("higher-inner-enhanced",),
                 "c": ("higher-inner-enhanced",), "d": ()},
        "fig7": {"a": ("outer-weak",), "b": ("higher-inner-enhanced",),
                 "c": ("lower-inner-enhanced",), "d": ()},
        "fig8": {"a": ("symmetric-spectrum", "sidebands-broadened"), "b": (),
                 "c": ("lower-peaks-higher",), "d": ()},
    }
    fluor_params = {"fig5": (10.0, 100.0), "fig6": (200.0, 50.0),
                    "fig7": (200.0, 100.0), "fig8": (200.0, 200.0)}
    for fig, (w21, rabi) in fluor_params.items():
        notes = (_CAPTION_NOTE_FIG6,) if fig == "fig6" else ()
        for frame, factor in factors.items():
            reg[f"{fig}{frame}"] = _m(f"{fig}{frame}", "fluorescence", w21, rabi,
                                      factor, fluor_common + fluor_checks[fig][frame],
                                      notes=notes)

    abs_common = ("finite", "absorption-antisymmetric")
    abs_params = {
        "fig9": {"abc": (10.0, 100.0), "def": (200.0, 50.0)},
        "fig10": {"abc": (200.0, 100.0), "def": (200.0, 200.0)},
    }
    abs_factor = {"a": 0.0, "b": 1.0, "c": 2.0, "d": 0.0, "e": 1.0, "f": 2.0}
    for fig, groups in abs_params.items():
        for frames, (w21, rabi) in groups.items():
            for frame in frames:
                fid = f"{fig}{frame}"
                extra = ("exceeds-delta0-absorption",) if fid == "fig9c" else ()
                notes = ()
                if abs_factor[frame] == 0.0:
                    extra = extra + ("absorption-null-at-resonance",)
                    notes = (_ABSORPTION_NULL_NOTE,)
                reg[fid] = _m(fid, "absorption", w21, rabi,
                              abs_factor[frame], abs_common + extra, notes=notes)
    return reg


MANIFESTS = _build_registry()


def manifest_ids():
    return sorted(MANIFESTS)


def run_manifest(fig_id: str, variant: str = "corrected", threads: int = 1) -> ManifestRun:
    try:
        m = MANIFESTS[fig_id]
    except KeyError:
        raise KeyError(
            f"unknown manifest {fig_id!r}; known ids: {', '.join(manifest_ids())}"
        ) from None
    if m.kind == "populations":
        header, cols = _populations_data(m, variant, threads)
    elif m.kind == "dressed":
        header, cols = _dressed_data(m, variant, threads)
    else:
        header, cols = _spectrum_data(m, variant, threads)
    run = ManifestRun(manifest=m, header=header, columns=tuple(cols), checks=())
    outcomes = tuple(_CHECKS[name](run) for name in m.checks)
    return ManifestRun(manifest=m, header=header, columns=tuple(cols), checks=outcomes)
