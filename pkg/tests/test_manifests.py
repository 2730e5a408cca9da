"""Figure-frame manifest tests: registry integrity, parameter resolution
and a few representative frame runs with their attached checks."""
from __future__ import annotations

import numpy as np
import pytest

from vcavity import MANIFESTS, dressed_scalars, manifest_ids, run_manifest


def test_registry_is_complete():
    ids = manifest_ids()
    assert len(ids) == 40
    assert ids == sorted(ids)
    want = (
        [f"fig2{c}" for c in "abcdef"] + [f"fig4{c}" for c in "abcdef"]
        + [f"fig{n}{c}" for n in (5, 6, 7, 8) for c in "abcd"]
        + [f"fig9{c}" for c in "abcdef"] + [f"fig10{c}" for c in "abcdef"]
    )
    assert set(ids) == set(want)


def test_frame_kinds():
    assert MANIFESTS["fig2a"].kind == "populations"
    assert MANIFESTS["fig4a"].kind == "dressed"
    assert MANIFESTS["fig5a"].kind == "fluorescence"
    assert MANIFESTS["fig9a"].kind == "absorption"


def test_sweep_frames_have_no_fixed_detuning():
    for fid in ("fig2a", "fig2f", "fig4c"):
        m = MANIFESTS[fid]
        assert m.sweeps_delta
        assert m.params().delta == 0.0


def test_spectrum_detuning_resolves_to_rabi_multiples():
    m = MANIFESTS["fig5c"]
    w_r = dressed_scalars(m.params()).omega_R
    assert m.delta_factor == 2.0
    assert abs(m.params().delta - 2.0 * w_r) < 1e-12
    far = MANIFESTS["fig5d"]
    assert far.delta_factor == 10.0
    assert abs(far.params().delta - 10.0 * dressed_scalars(far.params()).omega_R) < 1e-9


def test_shared_base_parameters():
    for m in MANIFESTS.values():
        p = m.params()
        assert (p.gamma, p.g, p.kappa) == (1.0, 20.0, 100.0)
    # splitting/drive pairs for a few pinned frames
    assert (MANIFESTS["fig6a"].omega21, MANIFESTS["fig6a"].rabi) == (200.0, 50.0)
    assert (MANIFESTS["fig8a"].omega21, MANIFESTS["fig8a"].rabi) == (200.0, 200.0)


def test_explanatory_notes_present():
    assert MANIFESTS["fig6a"].notes  # splitting differs from the figure text
    assert MANIFESTS["fig9a"].notes  # identically-cancelling probe response
    assert any("cancel" in n for n in MANIFESTS["fig9a"].notes)


def test_unknown_id_lists_known_ones():
    with pytest.raises(KeyError, match="fig2a"):
        run_manifest("fig99x")


def test_dressed_frame_run(tmp_path):
    run = run_manifest("fig4a")
    assert run.all_passed, [c for c in run.checks if not c.passed]
    assert run.header[0] == "delta"
    assert run.column("p_bb").shape == (801,)
    check_names = {c.name for c in run.checks}
    assert "mirror-rate-symmetry" in check_names
    path = tmp_path / "fig4a.csv"
    run.write(str(path))
    first = path.read_text(encoding="utf-8").splitlines()[0]
    assert first == ",".join(run.header)
    run.write_svg(str(tmp_path / "fig4a.svg"))
    assert "fig4a" in (tmp_path / "fig4a.svg").read_text(encoding="utf-8")


def test_spectrum_frame_checks():
    run = run_manifest("fig5a")
    assert run.all_passed
    assert {c.name for c in run.checks} >= {"finite", "symmetric-spectrum"}
    grid = run.column("freq")
    assert grid.size == 2001
    assert np.all(np.isfinite(run.column("value")))


def test_absorption_frame_cancels_on_resonance():
    run = run_manifest("fig9a")
    null = next(c for c in run.checks if c.name == "absorption-null-at-resonance")
    assert null.passed
    assert np.max(np.abs(run.column("value"))) < 1e-9


def test_off_resonance_absorption_beats_resonant_one():
    run = run_manifest("fig9c")
    exceed = next(c for c in run.checks if c.name == "exceeds-delta0-absorption")
    assert exceed.passed
    anti = next(c for c in run.checks if c.name == "absorption-antisymmetric")
    assert anti.passed


def test_column_accessor_rejects_unknown_name():
    run = run_manifest("fig4a")
    with pytest.raises(ValueError):
        run.column("no-such-column")
