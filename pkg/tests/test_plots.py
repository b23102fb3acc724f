import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pytest

from mzsim.experiments import ExperimentConfig, default_alphas, sweep
from mzsim.plots import intensity_figure, spectra_figure, visibility_figure


@pytest.fixture(autouse=True)
def close_figures():
    yield
    plt.close("all")


def test_intensity_figure_has_one_series_per_alpha():
    result = sweep(ExperimentConfig(variant="quantum_delayed", alphas=default_alphas(3)))
    fig = intensity_figure(result)
    ax = fig.axes[0]
    # one theory line plus one marker series per alpha
    assert len(ax.lines) == 2 * 3
    assert len(ax.get_legend().get_texts()) == 3


def test_visibility_figure_for_single_qubit_variant():
    fig = visibility_figure(sweep(ExperimentConfig(variant="closed")))
    assert fig.axes[0].get_ylabel().startswith("visibility")


def test_visibility_figure_rejects_wheeler():
    result = sweep(ExperimentConfig(variant="wheeler", n_shots=100, phis=(0.0, 1.0)))
    with pytest.raises(ValueError):
        visibility_figure(result)


def test_spectra_figure_panels():
    result = sweep(ExperimentConfig(variant="quantum_delayed", alphas=default_alphas(2)))
    fig = spectra_figure(result)
    assert len(fig.axes) == 2


def test_spectra_figure_needs_line_data():
    with pytest.raises(ValueError):
        spectra_figure(sweep(ExperimentConfig(variant="open")))
