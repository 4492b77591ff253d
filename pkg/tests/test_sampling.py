import pytest

from frobsplit.frobenius import CompleteIntersection, WeightedHypersurface, fsplit_anticanonical_model
from frobsplit.gfpoly import P1123, singular_point_scan
from frobsplit.sampling import model_text, random_model, sample_cell, search_counterexample


def test_random_model_shapes():
    assert isinstance(random_model(4, 3, "s"), CompleteIntersection)
    m = random_model(1, 5, "s")
    assert isinstance(m, WeightedHypersurface) and m.ambient is P1123
    assert random_model(2, 5, "s").to_dict() == random_model(2, 5, "s").to_dict()
    assert random_model(2, 5, "s").to_dict() != random_model(2, 5, "t").to_dict()
    with pytest.raises(ValueError):
        random_model(5, 3, 0)
    with pytest.raises(ValueError):
        random_model(2, 3, 0, family="normal-form")
    with pytest.raises(ValueError):
        random_model(2, 3, 0, family="sparse")


def test_normal_form_family():
    m = random_model(1, 5, 11, family="normal-form")
    text = model_text(m)
    assert "w^2" in text and "z^3" in text


def test_draws_target_counts():
    s = sample_cell(3, 5, 6, seed=1)
    assert s.n_drawn == 6
    assert s.n_fsplit == s.n_smooth_screened
    assert not s.exhausted
    assert s.cell == "guaranteed_GFR"


def test_screened_target_and_budget():
    s = sample_cell(3, 3, 4, seed=2, target="screened")
    assert s.n_smooth_screened == 4
    tight = sample_cell(3, 3, 4, seed=2, target="screened", max_draws=1)
    assert tight.n_drawn == 1 and tight.exhausted
    assert tight.to_dict()["budget_exhausted"]
    with pytest.raises(ValueError):
        sample_cell(3, 3, 1, target="models")


def test_sentinel_in_exceptional_cell():
    s = sample_cell(3, 2, 3, seed=0)
    first = s.counterexamples[0]
    assert first["trial"] == 0 and first["sentinel"]
    assert first["model"]["f"] == "x^3 + y^3 + z^3 + w^3"
    assert not any(c["sentinel"] for c in sample_cell(3, 2, 3, sentinel=False).counterexamples)


def test_no_sentinel_where_fermat_is_not_reduced():
    # the Fermat pair of quadrics is non-reduced in characteristic 2
    s = sample_cell(4, 2, 2, seed=0)
    assert all(not c["sentinel"] for c in s.counterexamples)


def test_summary_is_deterministic():
    a = sample_cell(2, 3, 5, seed=4).to_dict()
    b = sample_cell(2, 3, 5, seed=4).to_dict()
    assert a == b


def test_counterexample_search_degree_one_p5():
    s = search_counterexample(1, 5, n=100, seed=0)
    assert s.counterexamples, "no counterexample in 100 draws"
    rec = s.counterexamples[0]
    assert rec["smooth_screened"]
    from frobsplit.frobenius import model_from_dict

    model = model_from_dict(rec["model"])
    assert singular_point_scan(model.forms, k_max=2).smooth_screened
    assert fsplit_anticanonical_model(model).f_split is False
