from fsgraphs import plotting


def _is_png(path):
    return path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_figure_path(tmp_path):
    assert plotting.figure_path(tmp_path / "a" / "run.csv") == tmp_path / "a" / "run.png"


def test_growth_plot(tmp_path):
    rows = [{"n": 6, "diameter": 34}, {"n": 7, "diameter": 63}, {"n": 8, "diameter": 93}]
    out = plotting.plot_growth(rows, tmp_path / "sub" / "bn.png", title="growth", ref_power=3)
    assert out.exists() and _is_png(out)


def test_other_plots(tmp_path):
    rev = [{"n": n, "distance": n * (n - 1) // 2, "solver_length": n * (n - 1) // 2,
            "binom": n * (n - 1) // 2} for n in range(3, 7)]
    assert _is_png(plotting.plot_reversal(rev, tmp_path / "rev.png"))
    comps = [{"n": 7, "component_id": i, "size": 840, "diameter": 29} for i in range(6)]
    assert _is_png(plotting.plot_components(comps, tmp_path / "c.png"))
    trials = [{"seed": 1, "outcome": "solved", "length": 120, "steps": 4},
              {"seed": 2, "outcome": "unsolved", "length": 0, "steps": 1}]
    assert _is_png(plotting.plot_trials(trials, tmp_path / "t.png"))
